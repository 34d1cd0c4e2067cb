"""
Unit tests for the terminating focused calculi GA_t and GŁ_t
"""
import pytest

from hyperprover.core.constants import CalculusId, Keep, RuleId
from hyperprover.core.errors import RuleApplicationError
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import check_proof, measure_less
from hyperprover.core.semantics import holds
from hyperprover.core.structures import Hypersequent, Sequent, d_measure
from hyperprover.core.syntax import parse_focused, parse_hypersequent, var
from hyperprover.core.terminating import (
    TerminatingProver,
    apply_s_prime,
    check_s_prime,
    focused_measure,
    prove_ga_t,
    prove_gl_t,
)

PRELINEARITY = "|- (A -> B) \\/ (B -> A)"


class TestSPrime:
    """Test suite for the (S') rule"""

    def test_merges_and_keeps_first(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        premise = apply_s_prime(fh, 0, 1, Keep.FIRST)
        expected = parse_hypersequent("p, p |- p, p | q |- p")
        assert premise.body == expected
        assert premise.focus == "q"

    def test_lowers_focus_imbalance(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        premise = apply_s_prime(fh, 0, 1, "first")
        assert d_measure(fh) == 3
        assert d_measure(premise) == 1
        assert measure_less(focused_measure(premise), focused_measure(fh))

    def test_keep_second(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        premise = apply_s_prime(fh, 0, 1, Keep.SECOND)
        assert premise.body == parse_hypersequent("p, p |- p, p | p, p |- q, q")

    def test_same_component_rejected(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        with pytest.raises(RuleApplicationError):
            apply_s_prime(fh, 0, 0, Keep.FIRST)

    def test_wrong_shape_rejected(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        with pytest.raises(RuleApplicationError):
            apply_s_prime(fh, 1, 0, Keep.FIRST)

    def test_two_component_body(self):
        fh = parse_focused("[p] p |- q | q |- p")
        premise = apply_s_prime(fh, 0, 1, Keep.FIRST)
        assert premise.body == parse_hypersequent("q |- q | p |- q")
        assert check_s_prime(fh, premise) is None

    def test_check_s_prime(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        premise = apply_s_prime(fh, 0, 1, Keep.FIRST)
        assert check_s_prime(fh, premise) is None
        assert check_s_prime(fh, fh) is not None


class TestProveGAT:
    """Test suite for prove_ga_t"""

    def test_prelinearity(self):
        verdict = prove_ga_t(parse_hypersequent(PRELINEARITY))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GA_T)

    def test_needs_s_prime(self):
        goal = parse_hypersequent("|- ((q + q + q) /\\ (p + p + p)) -> p + q + q")
        verdict = prove_ga_t(goal)
        assert verdict.valid
        assert check_proof(verdict.proof, "ga_t")
        assert "S'" in verdict.proof.rules_used()

    def test_explicit_focus(self):
        verdict = prove_ga_t(parse_hypersequent(PRELINEARITY), focus="B")
        assert verdict.valid
        assert verdict.proof.conclusion.focus == "B"

    def test_shift_when_focus_absent(self):
        verdict = prove_ga_t(parse_focused("[r] p |- p"))
        assert verdict.valid
        assert verdict.proof.rule is RuleId.SHIFT
        assert check_proof(verdict.proof, "ga_t")

    def test_countermodel(self):
        goal = parse_hypersequent("|- p -> p + p")
        verdict = prove_ga_t(goal)
        assert not verdict.valid
        assert not holds(goal, verdict.countermodel)

    def test_sequent_goal(self):
        verdict = prove_ga_t(Sequent.of([var("p")], [var("p")]))
        assert verdict.valid

    @pytest.mark.parametrize("text", ["p |- q | q |- p", "p |- | |- p"])
    def test_two_component_goals(self, text):
        verdict = prove_ga_t(parse_hypersequent(text))
        assert verdict.valid
        assert check_proof(verdict.proof, "ga_t")

    def test_rejects_other_calculus(self):
        with pytest.raises(ValueError):
            TerminatingProver(CalculusId.GA)


class TestProveGLT:
    """Test suite for prove_gl_t"""

    def test_bottom_implies_everything(self):
        verdict = prove_gl_t(parse_hypersequent("|- bot => p", "l"))
        assert verdict.valid
        assert check_proof(verdict.proof, CalculusId.GL_T)
        assert "bot,r" in verdict.proof.rules_used()

    def test_self_implication(self):
        verdict = prove_gl_t(parse_hypersequent("|- p => p", "l"))
        assert verdict.valid
        assert check_proof(verdict.proof, "gl_t")

    def test_countermodel(self):
        verdict = prove_gl_t(parse_hypersequent("|- p", "l"))
        assert not verdict.valid
        assert verdict.countermodel["p"] == -1

    def test_linearity_of_atoms(self):
        verdict = prove_gl_t(parse_hypersequent("p |- q | q |- p", "l"))
        assert verdict.valid
        assert check_proof(verdict.proof, "gl_t")

    def test_excluded_middle_refuted(self):
        goal = parse_hypersequent("|- p \\/ ~p", "l")
        verdict = prove_gl_t(goal)
        assert not verdict.valid
        assert not holds(goal, verdict.countermodel)


class TestMeasureEvents:
    """Test suite for measure reporting"""

    def test_events_carry_measures(self):
        emitter = TraceEmitter(persist=False)
        prove_ga_t(parse_hypersequent(PRELINEARITY), emitter=emitter)
        assert emitter.events
        for event in emitter.events:
            assert event.calculus == "ga_t"
            assert len(event.measure) == 4

    def test_stats_count_rules(self):
        verdict = prove_ga_t(parse_hypersequent(PRELINEARITY))
        assert verdict.stats["->,r"] == 2
        assert verdict.stats["steps"] > 0


def test_focused_measure_counts_focus():
    fh = parse_focused("[r] p |- p")
    assert focused_measure(fh)[1] == 2
    assert focused_measure(fh.with_focus("p"))[1] == 1


def test_empty_component_closes_by_lambda():
    verdict = prove_ga_t(Hypersequent.of([Sequent.of()]))
    assert verdict.proof.rule is RuleId.LAMBDA
