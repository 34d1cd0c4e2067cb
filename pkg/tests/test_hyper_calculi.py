"""
Unit tests for the hypersequent calculi GA and GŁ

Tests proof search, closure synthesis, countermodels and the proof checker.
"""
import json

import pytest

from hyperprover.core.budget import SearchBudget
from hyperprover.core.constants import CalculusId, RuleId, Side
from hyperprover.core.errors import DialectError, RuleApplicationError, SearchTimeout
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import (
    check_proof,
    logical_premises,
    prove_ga,
    prove_gl,
    prove_identity,
    select_principal,
    synthesize_closure,
)
from hyperprover.core.proof import ProofTree
from hyperprover.core.semantics import eval_l, holds
from hyperprover.core.structures import Hypersequent, Sequent
from hyperprover.core.syntax import neg, parse_formula, tilde, var

PRELINEARITY = "|- (A -> B) \\/ (B -> A)"
LUKASIEWICZ_AXIOM = "|- ((A => B) => B) => ((B => A) => A)"


class TestProveGA:
    """Test suite for prove_ga"""

    def test_prelinearity(self, hs):
        verdict = prove_ga(hs(PRELINEARITY))
        assert verdict.valid
        assert verdict.proof is not None
        assert check_proof(verdict.proof, "ga")

    def test_proof_root_is_goal(self, hs):
        goal = hs(PRELINEARITY)
        verdict = prove_ga(goal)
        assert verdict.proof.conclusion == goal
        assert verdict.proof.rule is RuleId.OR_R

    def test_accepts_sequent(self):
        verdict = prove_ga(Sequent.of([], [parse_formula("p -> p")]))
        assert verdict.valid

    @pytest.mark.parametrize(
        "goal",
        [
            "|- -(p + -p)",
            "|- p /\\ q -> p",
            "|- p + q -> q + p",
            "|- ((q + q + q) /\\ (p + p + p)) -> p + q + q",
            "p |- p \\/ q",
            "|- t",
        ],
    )
    def test_valid_goals_checked(self, hs, goal):
        verdict = prove_ga(hs(goal))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GA)

    def test_countermodel(self, hs):
        goal = hs("|- p")
        verdict = prove_ga(goal)
        assert not verdict.valid
        assert verdict.countermodel["p"] < 0
        assert not holds(goal, verdict.countermodel)

    def test_countermodel_for_group_failure(self, hs):
        goal = hs("|- p -> p + p")
        verdict = prove_ga(goal)
        assert not verdict.valid
        assert not holds(goal, verdict.countermodel)

    def test_stats(self, hs):
        verdict = prove_ga(hs(PRELINEARITY))
        assert verdict.stats["steps"] == 3
        assert verdict.stats["logical"] == 3
        assert verdict.stats["leaves"] == 1

    def test_seeded_order(self, hs):
        verdict = prove_ga(hs(PRELINEARITY), order_seed=7)
        assert verdict.valid
        assert check_proof(verdict.proof, "ga")

    def test_step_budget(self, hs):
        with pytest.raises(SearchTimeout) as exc_info:
            prove_ga(hs(PRELINEARITY), budget=SearchBudget(timeout_ms=None, max_steps=1))
        assert exc_info.value.reason == "step budget"

    def test_rejects_lukasiewicz_connective(self):
        with pytest.raises(DialectError):
            prove_ga(Hypersequent.single([], [tilde(var("p"))]))

    def test_emits_events(self, hs):
        emitter = TraceEmitter(persist=False)
        prove_ga(hs(PRELINEARITY), emitter=emitter)
        assert emitter.rule_counts() == {"\\/,r": 1, "->,r": 2}

    def test_settled_component_closes_early(self, hs):
        verdict = prove_ga(hs("p |- p | |- q /\\ r"))
        assert verdict.valid
        assert verdict.proof.rule is RuleId.EW
        assert verdict.stats["early_closures"] == 1
        assert "logical" not in verdict.stats
        assert check_proof(verdict.proof, "ga")

    def test_repeated_component_contracted(self, hs):
        goal = hs("|- p -> p | |- p -> p")
        verdict = prove_ga(goal)
        assert verdict.valid
        assert verdict.proof.rule is RuleId.EW
        assert verdict.proof.conclusion == goal
        assert verdict.stats["contractions"] == 1
        assert check_proof(verdict.proof, "ga")

    def test_repeated_leaves_cached(self, hs):
        verdict = prove_ga(hs("|- (p -> p) /\\ (p -> p)"))
        assert verdict.valid
        assert verdict.stats["leaves"] == 2
        assert verdict.stats["cache_hits"] == 1
        assert check_proof(verdict.proof, "ga")

    @pytest.mark.parametrize("goal", [PRELINEARITY, "|- p + q -> q + p", "|- t"])
    def test_measures_verified_on_request(self, hs, goal):
        verdict = prove_ga(hs(goal), verify_measures=True)
        assert verdict.valid
        assert check_proof(verdict.proof, "ga")


class TestProveGL:
    """Test suite for prove_gl"""

    def test_lukasiewicz_axiom(self, hs):
        verdict = prove_gl(hs(LUKASIEWICZ_AXIOM, "l"))
        assert verdict.valid
        assert check_proof(verdict.proof, "gl")

    def test_bottom_implies_everything(self, hs):
        verdict = prove_gl(hs("|- bot => p", "l"))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GL)
        rules = verdict.proof.rules_used()
        assert rules.get("closure", 0) + rules.get("bot", 0) >= 1

    def test_excluded_middle_refuted(self, hs):
        goal = hs("|- p \\/ ~p", "l")
        verdict = prove_gl(goal)
        assert not verdict.valid
        assert eval_l(parse_formula("p \\/ ~p", "l"), verdict.countermodel) < 0

    def test_countermodel_in_unit_interval(self, hs):
        verdict = prove_gl(hs("|- p", "l"))
        assert verdict.countermodel["p"] == -1

    def test_rejects_group_connective(self):
        with pytest.raises(DialectError):
            prove_gl(Hypersequent.single([], [neg(var("p"))]))

    def test_settled_component_closes_early(self, hs):
        verdict = prove_gl(hs("bot |- p | |- p => q", "l"))
        assert verdict.valid
        assert verdict.stats["early_closures"] == 1
        assert check_proof(verdict.proof, "gl")

    def test_measures_verified_on_request(self, hs):
        verdict = prove_gl(hs(LUKASIEWICZ_AXIOM, "l"), verify_measures=True)
        assert verdict.valid


class TestRules:
    """Test suite for rule application helpers"""

    def test_implication_right(self, hs):
        h = hs("|- A -> B")
        f = parse_formula("A -> B")
        assert logical_premises(CalculusId.GA, h, 0, Side.RIGHT, f) == [hs("A |- B")]

    def test_disjunction_right_splits_component(self, hs):
        h = hs(PRELINEARITY)
        f = parse_formula("(A -> B) \\/ (B -> A)")
        assert logical_premises(CalculusId.GA, h, 0, Side.RIGHT, f) == [hs("|- A -> B | |- B -> A")]

    def test_conjunction_right_branches(self, hs):
        h = hs("|- p /\\ q")
        premises = logical_premises(CalculusId.GA, h, 0, Side.RIGHT, parse_formula("p /\\ q"))
        assert premises == [hs("|- p"), hs("|- q")]

    def test_positive_implication_left(self, hs):
        h = hs("p => q |-", "l")
        f = parse_formula("p => q", "l")
        assert logical_premises(CalculusId.GL, h, 0, Side.LEFT, f) == [hs("q |- p | |-", "l")]

    def test_absent_principal(self, hs):
        with pytest.raises(RuleApplicationError):
            logical_premises(CalculusId.GA, hs("|- p"), 0, Side.RIGHT, parse_formula("p -> p"))

    def test_no_group_rules_in_gl(self):
        h = Hypersequent.single([], [neg(var("p"))])
        with pytest.raises(RuleApplicationError):
            logical_premises(CalculusId.GL, h, 0, Side.RIGHT, neg(var("p")))

    def test_select_principal_left_first(self, hs):
        pick = select_principal(hs("p + q |- q -> p"), CalculusId.GA)
        assert pick == (0, Side.LEFT, parse_formula("p + q"))

    def test_select_principal_atomic(self, hs):
        assert select_principal(hs("p |- q"), CalculusId.GA) is None


class TestClosure:
    """Test suite for structural closure synthesis"""

    def test_identity(self, seq):
        proof = prove_identity(seq("p, q |- q, p"))
        assert proof.rule is RuleId.M
        assert check_proof(proof, "ga")

    def test_identity_rejects_mismatch(self, seq):
        with pytest.raises(RuleApplicationError):
            prove_identity(seq("p |- q"))

    def test_synthesize_prelinearity_leaf(self, hs):
        g = hs("A |- B | B |- A")
        proof = synthesize_closure(g, [1, 1])
        assert proof.rule is RuleId.S
        assert check_proof(proof, "ga")

    def test_synthesize_with_weights(self, hs):
        g = hs("p, p |- q, q | q |- p | r |- s")
        proof = synthesize_closure(g, [1, 2, 0])
        assert proof.conclusion == g
        assert check_proof(proof, "ga")
        assert {"EW", "EC", "S"} <= set(proof.rules_used())

    def test_synthesize_rejects_bad_certificate(self, hs):
        with pytest.raises(RuleApplicationError):
            synthesize_closure(hs("A |- B | B |- A"), [1, 0])


class TestCheckProof:
    """Test suite for the GA / GŁ proof checker"""

    def test_bundled_proof(self, bundled_dir):
        text = (bundled_dir / "exama.json").read_text(encoding="utf-8")
        pt = ProofTree.from_json(text, "ga")
        assert check_proof(pt, "ga").valid

    def test_corrupted_leaf(self, bundled_dir):
        data = json.loads((bundled_dir / "exama.json").read_text(encoding="utf-8"))
        leaf = data["premises"][0]["premises"][0]["premises"][0]["premises"][0]["premises"][0]
        leaf["conclusion"] = "A |- B"
        result = check_proof(ProofTree.from_dict(data, "ga"), "ga")
        assert not result.valid
        assert result.path == (0, 0, 0, 0)
        assert result.render_path() == "root.0.0.0.0"

    def test_wrong_logical_premise(self, hs):
        pt = ProofTree(
            RuleId.IMP_R,
            hs("|- A -> B"),
            [ProofTree(RuleId.ID, hs("B |- A"))],
        )
        result = check_proof(pt, "ga")
        assert not result.valid
        assert result.path == ()

    def test_rule_outside_calculus(self, hs):
        pt = ProofTree(RuleId.IW, hs("p |-"), [ProofTree(RuleId.LAMBDA, hs("|-"))])
        assert not check_proof(pt, "ga")
        assert check_proof(pt, "gl")

    def test_closure_needs_certificate(self, hs):
        pt = ProofTree(RuleId.CLOSURE, hs("bot |- p", "l"))
        assert not check_proof(pt, "gl")

    def test_round_trip_through_json(self, hs):
        verdict = prove_gl(hs(LUKASIEWICZ_AXIOM, "l"))
        again = ProofTree.from_json(verdict.proof.to_json(), "gl")
        assert check_proof(again, "gl")
        assert again.size() == verdict.proof.size()
