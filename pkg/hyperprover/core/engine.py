"""
Prover dispatch.

Maps a logic and a calculus surface name (as used on the command line) to a
concrete calculus, parses goals for it, runs the prover under a configured
budget and re-verifies countermodels before handing the verdict back.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Union

from hyperprover.core.budget import SearchBudget
from hyperprover.core.config import Config
from hyperprover.core.constants import CalculusId, Dialect, Logic
from hyperprover.core.errors import FormulaSyntaxError
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import countermodel_model, prove_ga, prove_gl
from hyperprover.core.labelled import prove_ga_i, prove_ga_l, prove_gl_l
from hyperprover.core.proof import Verdict
from hyperprover.core.semantics import Goal, goal_holds, random_refute
from hyperprover.core.single_sequent import elaborate_to_gas
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    LabelledSequent,
    Sequent,
)
from hyperprover.core.syntax import (
    Formula,
    parse_focused,
    parse_formula,
    parse_hypersequent,
    parse_labelled,
)
from hyperprover.core.terminating import prove_ga_t, prove_gl_t

logger = logging.getLogger(__name__)

SURFACES = ("hyper", "term", "label", "single-elab")

_CALCULI: Dict[tuple, CalculusId] = {
    (Logic.A, "hyper"): CalculusId.GA,
    (Logic.A, "term"): CalculusId.GA_T,
    (Logic.A, "label"): CalculusId.GA_L,
    (Logic.A, "single-elab"): CalculusId.GA_I,
    (Logic.L, "hyper"): CalculusId.GL,
    (Logic.L, "term"): CalculusId.GL_T,
    (Logic.L, "label"): CalculusId.GL_L,
}

_PROVERS: Dict[CalculusId, Callable[..., Verdict]] = {
    CalculusId.GA: prove_ga,
    CalculusId.GL: prove_gl,
    CalculusId.GA_T: prove_ga_t,
    CalculusId.GL_T: prove_gl_t,
    CalculusId.GA_L: prove_ga_l,
    CalculusId.GL_L: prove_gl_l,
    CalculusId.GA_I: prove_ga_i,
}

_LABELLED = frozenset({CalculusId.GA_L, CalculusId.GL_L, CalculusId.GA_I})


def as_logic(logic: Union[Logic, str]) -> Logic:
    """Accept "a", "l", "A", "Ł" or a Logic"""
    if isinstance(logic, Logic):
        return logic
    text = str(logic).strip().lower()
    if text == "a":
        return Logic.A
    if text in ("l", "ł"):
        return Logic.L
    raise ValueError(f"Unknown logic {logic!r}; expected 'a' or 'l'")


def dialect_for(logic: Union[Logic, str]) -> Dialect:
    return Dialect.ABELIAN if as_logic(logic) is Logic.A else Dialect.LUKASIEWICZ


def resolve_calculus(logic: Union[Logic, str], surface: str) -> CalculusId:
    """
    Raises:
        ValueError: Unknown surface, or single-elab requested for Ł
    """
    logic = as_logic(logic)
    if surface not in SURFACES:
        raise ValueError(f"Unknown calculus {surface!r}; expected one of {', '.join(SURFACES)}")
    try:
        return _CALCULI[(logic, surface)]
    except KeyError:
        raise ValueError("single-elab is only available for the abelian logic") from None


def parse_goal(text: str, logic: Union[Logic, str], calculus: Union[CalculusId, str]) -> Goal:
    """
    Read a goal for ``calculus``.

    A bare formula φ becomes ⊢ φ. Labelled calculi take one sequent, with or
    without labels; GA_t and GŁ_t also accept ``[p] G``.

    Raises:
        FormulaSyntaxError: The text does not parse
        ValueError: A hypersequent with several components for a labelled calculus
    """
    dialect = dialect_for(logic)
    calculus = CalculusId(calculus)
    text = text.strip()
    if "|-" not in text:
        f = parse_formula(text, dialect)
        seq = Sequent.of([], [f])
        return seq if calculus in _LABELLED else Hypersequent((seq,))
    if calculus in _LABELLED:
        if ":" in text or "||" in text:
            return parse_labelled(text, dialect)
        hs = parse_hypersequent(text, dialect)
        if len(hs) != 1:
            raise ValueError(f"{calculus.value} takes a single sequent, got {len(hs)} components")
        return hs[0]
    if text.startswith("["):
        if calculus not in (CalculusId.GA_T, CalculusId.GL_T):
            raise FormulaSyntaxError(text, 1, 1, "focused goals need a terminating calculus")
        return parse_focused(text, dialect)
    return parse_hypersequent(text, dialect)


def goal_formula(goal: Union[Goal, Formula]) -> Optional[Formula]:
    """φ when the goal is ⊢ φ"""
    if isinstance(goal, Formula):
        return goal
    if isinstance(goal, Hypersequent) and len(goal) == 1:
        goal = goal[0]
    if isinstance(goal, Sequent) and not goal.left and len(goal.right) == 1:
        return goal.right.distinct()[0]
    return None


@dataclass
class Engine:
    """Runs one goal at a time under the configured budget"""

    config: Config = field(default_factory=Config.default)
    emitter: Optional[TraceEmitter] = None

    def budget(self, timeout_ms: Optional[int] = None) -> SearchBudget:
        return SearchBudget.from_config(self.config, timeout_ms)

    def decide(
        self,
        goal: Goal,
        calculus: Union[CalculusId, str],
        seed: Optional[int] = None,
        timeout_ms: Optional[int] = None,
    ) -> Verdict:
        """
        Decide ``goal`` in ``calculus``; GA_i proofs are elaborated into GA_s.

        Raises:
            SearchTimeout: The budget ran out
            RuntimeError: A countermodel failed re-verification
        """
        calculus = CalculusId(calculus)
        if calculus not in _PROVERS:
            raise ValueError(f"No prover for {calculus.value}")
        seed = self.config.seed if seed is None else seed
        sampled = self._sample(goal, calculus, seed)
        if sampled is not None:
            return sampled
        kwargs: Dict[str, Any] = {
            "budget": self.budget(timeout_ms),
            "emitter": self.emitter,
            "order_seed": seed or None,
            "max_constraints": self.config.max_constraints,
        }
        if calculus in (CalculusId.GA, CalculusId.GL):
            kwargs["verify_measures"] = self.config.verify_measures
        if calculus in _LABELLED:
            kwargs["max_labels"] = self.config.certificate_max_labels
            if isinstance(goal, Hypersequent):
                if len(goal) != 1:
                    raise ValueError(f"{calculus.value} takes a single sequent")
                goal = goal[0]
        logger.info("search_started", extra={"search_event": {"calculus": calculus.value}})
        verdict = _PROVERS[calculus](goal, **kwargs)
        if not verdict.valid:
            self._recheck(goal, verdict)
            return verdict
        if calculus is CalculusId.GA_I:
            elaborated = elaborate_to_gas(verdict.proof)
            stats = dict(verdict.stats, ga_i_size=verdict.proof.size())
            return Verdict.proved(elaborated, **stats)
        return verdict

    def _sample(self, goal: Goal, calculus: CalculusId, seed: int) -> Optional[Verdict]:
        budget = self.config.refute_budget
        if budget <= 0 or isinstance(goal, (LabelledSequent, FocusedHypersequent)):
            return None
        v = random_refute(
            goal,
            countermodel_model(calculus),
            budget,
            seed=seed,
            numerator_range=self.config.numerator_range,
            denominators=self.config.denominators,
        )
        if v is None:
            return None
        logger.info("refuted_by_sampling", extra={"search_event": {"calculus": calculus.value}})
        return Verdict.refuted(v, refuted_by="sampling")

    @staticmethod
    def _recheck(goal: Goal, verdict: Verdict) -> None:
        if verdict.countermodel is None or goal_holds(goal, verdict.countermodel):
            raise RuntimeError(f"Countermodel does not refute {goal}")
