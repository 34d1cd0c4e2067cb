"""
Unit tests for the labelled calculi GA_l, GŁ_l and GA_i

Tests the label-regular reduction, the success check, rule application,
proof search and the labelled proof checker.
"""
import pytest

from hyperprover.core.constants import SLACK_PREFIX, CalculusId, Logic, RuleId, Side
from hyperprover.core.errors import LabelRegularityError, RuleApplicationError
from hyperprover.core.hyper_calculi import check_proof
from hyperprover.core.labelled import (
    LabelledInequation,
    LabelledProver,
    brute_force_consistent,
    check_labelled_proof,
    decide_labelled_leaf,
    labelled_premises,
    match_rule,
    prove_ga_i,
    prove_ga_l,
    prove_gl_l,
    reduce_label_regular,
    rule_bound,
    rule_weight,
    subset_star,
    success_check,
    verify_success,
)
from hyperprover.core.lp import feasible
from hyperprover.core.semantics import holds_labelled
from hyperprover.core.structures import (
    UNIT,
    LabelledFormula,
    LabelledSequent,
    LabelTree,
    Multiset,
    Sequent,
    make_label,
)
from hyperprover.core.syntax import (
    BOT,
    TOP,
    arrow,
    conj,
    parse_formula,
    parse_labelled,
    parse_sequent,
    pos_arrow,
    var,
)

p, q = var("p"), var("q")
PRELINEARITY = "(A -> B) \\/ (B -> A)"


def at(label, formula):
    return LabelledFormula(make_label(*label.split(".")) if label != "1" else UNIT, formula)


class TestReduction:
    """Test suite for the label-regular reduction"""

    def test_size_is_two_n_plus_m(self):
        ineq = LabelledInequation.of([at("x1", p)], [at("1", q), at("x1.x2", p)])
        system = reduce_label_regular([ineq])
        assert len(system) == 2 * 2 + 1

    def test_slack_variables(self):
        ineq = LabelledInequation.of([at("x1", p)], [at("1", q)])
        system = reduce_label_regular([ineq])
        names = {name for row in system.inequations for name in row.variables()}
        assert f"{SLACK_PREFIX}x1" in names

    def test_agrees_with_enumeration_when_consistent(self):
        ineq = LabelledInequation.of([at("x1", p)], [at("1", q), at("x1.x2", p)])
        assert brute_force_consistent([ineq])
        assert feasible(reduce_label_regular([ineq])).feasible

    def test_agrees_with_enumeration_when_inconsistent(self):
        ineq = LabelledInequation.of([at("x1", p)], [at("x1", p)])
        assert not brute_force_consistent([ineq])
        assert not feasible(reduce_label_regular([ineq])).feasible

    def test_unit_labels_only(self):
        ineq = LabelledInequation.of([at("1", p)], [at("1", p)], strict=False)
        system = reduce_label_regular([ineq])
        assert len(system) == 1
        assert feasible(system).feasible

    def test_bounded_in_lukasiewicz(self):
        ineq = LabelledInequation.of([at("1", BOT)], [at("1", p)])
        system = reduce_label_regular([ineq], lukasiewicz=True)
        assert not feasible(system).feasible

    def test_shared_atom_rejected(self):
        first = LabelledInequation.of([at("x1", p)], [])
        second = LabelledInequation.of([], [at("x1", q)])
        with pytest.raises(LabelRegularityError):
            reduce_label_regular([first, second])

    def test_labels_must_be_tree_paths(self):
        ineq = LabelledInequation.of([at("x1", p), at("x2", q)], [at("x1.x2", p)])
        tree = LabelTree().extend("x1", None).extend("x2", None)
        with pytest.raises(LabelRegularityError):
            reduce_label_regular([ineq], tree)

    def test_to_lin_needs_unit_labels(self):
        with pytest.raises(LabelRegularityError):
            LabelledInequation.of([at("x1", p)], []).to_lin()


class TestSubsetStar:
    """Test suite for subset_star"""

    @pytest.mark.parametrize(
        "delta,gamma,expected",
        [
            ([p], [BOT], True),
            ([p, q], [BOT], False),
            ([p], [p], True),
            ([], [p], True),
            ([p], [], False),
            ([p, q], [q, BOT], True),
        ],
    )
    def test_cases(self, delta, gamma, expected):
        assert subset_star(Multiset(delta), Multiset(gamma)) is expected


class TestSuccess:
    """Test suite for the success check"""

    def test_material_labelling_example(self):
        s = parse_labelled("x1:p, 1:q |- 1:p, x1:q")
        verdict = decide_labelled_leaf(s)
        assert verdict.valid
        assert verdict.certificate["kind"] == "labelled"
        assert verify_success(s, verdict.certificate) is None

    def test_consistent_leaf_gives_countermodel(self):
        s = parse_labelled("|- 1:p")
        verdict = decide_labelled_leaf(s)
        assert not verdict.valid
        assert not holds_labelled(s, verdict.countermodel)

    def test_lukasiewicz_subset_fast_path(self):
        s = parse_labelled("1:bot |- 1:p", "l")
        verdict = decide_labelled_leaf(s, lukasiewicz=True)
        assert verdict.certificate == {"kind": "subset", "functions": [{}]}
        assert verify_success(s, verdict.certificate, lukasiewicz=True) is None

    def test_success_check(self):
        s = parse_labelled("x1:p, 1:q |- 1:p, x1:q")
        assert success_check(s, Logic.A) is not None
        assert success_check(parse_labelled("|- 1:p"), "A") is None

    def test_rejects_tampered_certificates(self):
        s = parse_labelled("|- 1:p", "l")
        assert verify_success(s, {"kind": "subset", "functions": [{}]}, lukasiewicz=True)
        assert verify_success(s, {"kind": "bogus"}, lukasiewicz=True)
        assert verify_success(s, None)

    def test_subset_certificate_needs_lukasiewicz(self):
        s = parse_labelled("1:p |- 1:p")
        assert verify_success(s, {"kind": "subset", "functions": [{}]}) is not None

    def test_compound_leaf_rejected(self):
        with pytest.raises(RuleApplicationError):
            decide_labelled_leaf(parse_labelled("|- 1:p -> p"))


class TestRules:
    """Test suite for labelled rule application"""

    def test_positive_implication_left_introduces_label(self):
        s = parse_labelled("1:p => q |-")
        lf = at("1", pos_arrow(p, q))
        premises = labelled_premises("ga_l", s, "left", lf, "x1")
        assert premises == [parse_labelled("x1:q |- x1:p")]

    def test_missing_fresh_label(self):
        s = parse_labelled("1:p => q |-")
        with pytest.raises(RuleApplicationError):
            labelled_premises(CalculusId.GA_L, s, Side.LEFT, at("1", pos_arrow(p, q)))

    def test_reused_label_rejected(self):
        s = parse_labelled("1:p => q, x1:p |-")
        with pytest.raises(RuleApplicationError):
            labelled_premises(CalculusId.GA_L, s, Side.LEFT, at("1", pos_arrow(p, q)), "x1")

    def test_positive_implication_right_branches(self):
        s = parse_labelled("|- x1:p => q")
        premises = labelled_premises("ga_l", s, "right", at("x1", pos_arrow(p, q)))
        assert premises == [parse_labelled("x1:p |- x1:q"), parse_labelled("|-")]

    def test_store_records_implication(self):
        s = parse_labelled("1:p => q |- 1:q")
        premises = labelled_premises(CalculusId.GA_I, s, Side.LEFT, at("1", pos_arrow(p, q)), "x1")
        assert list(premises[0].store) == [pos_arrow(q, p)]

    def test_unit_constant_has_no_premise_formulas(self):
        s = parse_labelled("1:t |- 1:t")
        assert labelled_premises("ga_l", s, "left", at("1", TOP)) == [parse_labelled("|- 1:t")]
        assert labelled_premises("ga_i", s, "right", at("1", TOP)) == [parse_labelled("1:t |-")]

    def test_group_connective_not_in_lukasiewicz(self):
        s = parse_labelled("|- 1:p -> q")
        with pytest.raises(RuleApplicationError):
            labelled_premises(CalculusId.GL_L, s, Side.RIGHT, at("1", arrow(p, q)))

    def test_rule_weight(self):
        assert rule_weight(p) == 0
        assert rule_weight(conj(p, q)) == 2
        assert rule_weight(arrow(p, q)) == 1
        assert rule_weight(pos_arrow(p, conj(p, q))) == 3

    def test_rule_bound_ignores_store(self):
        s = parse_labelled("1:p -> q || p => q |- 1:q")
        assert rule_bound(s) == 1


class TestProveLabelled:
    """Test suite for labelled proof search"""

    def test_prelinearity_in_ga_l(self):
        verdict = prove_ga_l(Sequent.of([], [parse_formula(PRELINEARITY)]))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GA_L)
        assert verdict.stats["labels_introduced"] >= 1
        assert verdict.stats["max_branch"] <= verdict.stats["rule_bound"]

    def test_exchange_of_antecedents(self):
        f = parse_formula("(p => (p => r)) => ((q => (q => r)) => (p => (q => r)))")
        verdict = prove_ga_l(Sequent.of([], [f]))
        assert verdict.valid
        assert check_proof(verdict.proof, "ga_l")

    def test_ga_l_countermodel(self):
        goal = Sequent.of([], [parse_formula("p -> p + p")])
        verdict = prove_ga_l(goal)
        assert not verdict.valid
        assert not holds_labelled(LabelledSequent.lift(goal), verdict.countermodel)

    def test_gl_l_countermodel(self):
        verdict = prove_gl_l(Sequent.of([], [p]))
        assert not verdict.valid
        assert verdict.countermodel["p"] == -1

    def test_gl_l_bottom_implies_everything(self):
        verdict = prove_gl_l(Sequent.of([], [parse_formula("bot => p", "l")]))
        assert verdict.valid
        assert check_proof(verdict.proof, "gl_l")

    def test_ga_i(self):
        verdict = prove_ga_i(Sequent.of([], [parse_formula(PRELINEARITY)]))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GA_I)

    @pytest.mark.parametrize("goal", ["|- t", "t |- t", "|- t -> t", "p .> q |- p .> q"])
    @pytest.mark.parametrize("prover,calculus", [(prove_ga_l, "ga_l"), (prove_ga_i, "ga_i")])
    def test_unit_constant_goals(self, goal, prover, calculus):
        verdict = prover(parse_sequent(goal))
        assert verdict.valid
        assert check_proof(verdict.proof, calculus)

    @pytest.mark.parametrize("prover", [prove_ga_l, prove_ga_i])
    def test_material_arrow_countermodel(self, prover):
        goal = parse_sequent("p .> q |- q")
        verdict = prover(goal)
        assert not verdict.valid
        assert not holds_labelled(LabelledSequent.lift(goal), verdict.countermodel)

    def test_rejects_other_calculus(self):
        with pytest.raises(ValueError):
            LabelledProver(CalculusId.GA)


class TestCheckLabelledProof:
    """Test suite for the labelled proof checker"""

    def test_match_rule(self):
        verdict = prove_ga_l(Sequent.of([], [parse_formula("p => p")]))
        side, lf, fresh, expected = match_rule(verdict.proof, "ga_l")
        assert side is Side.RIGHT
        assert lf.formula == pos_arrow(p, p)
        assert fresh is None
        assert len(expected) == 2

    def test_tampered_leaf(self):
        verdict = prove_ga_l(Sequent.of([], [parse_formula(PRELINEARITY)]))
        leaf_path = None
        for path, node in verdict.proof.walk():
            if node.rule is RuleId.SUCCESS:
                node.certificate = {"kind": "bogus"}
                leaf_path = path
                break
        result = check_labelled_proof(verdict.proof, "ga_l")
        assert not result.valid
        assert result.path == leaf_path

    def test_unlabelled_calculus_rejected(self):
        verdict = prove_ga_l(Sequent.of([], [parse_formula("p => p")]))
        with pytest.raises(ValueError):
            check_labelled_proof(verdict.proof, "ga")
