"""
Exact-rational semantics.

Formulas of the abelian dialect are evaluated in the rationals, formulas of
the Łukasiewicz dialect in [-1, 0]. A component Γ ⊢ Δ holds when the sum over
Γ is at most the sum over Δ; a hypersequent holds when some component does.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from hyperprover.core.constants import MBOT, Model
from hyperprover.core.errors import DialectError, EvaluationError
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    LabelledSequent,
    Multiset,
    Sequent,
    apply_labelling,
)
from hyperprover.core.syntax import Formula, Kind

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
MINUS_ONE = Fraction(-1)


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """Read "num/den", an integer, or a Fraction"""
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value).strip())


@dataclass(frozen=True)
class Valuation:
    """Rational values for propositional variables in one of the two models"""

    values: Mapping[str, Fraction] = field(default_factory=dict)
    model: Model = Model.Q

    def __post_init__(self):
        values = {name: parse_rational(val) for name, val in self.values.items()}
        if self.model is Model.UNIT:
            for name, val in values.items():
                if not MINUS_ONE <= val <= ZERO:
                    raise EvaluationError(f"v({name}) = {val} lies outside [-1, 0]", variable=name)
        object.__setattr__(self, "values", values)

    def __getitem__(self, name: str) -> Fraction:
        try:
            return self.values[name]
        except KeyError:
            raise EvaluationError(f"Variable {name} is unassigned", variable=name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def extended(self, names: Iterable[str], default: Fraction = ZERO) -> "Valuation":
        """Assign ``default`` to every missing name"""
        values = dict(self.values)
        for name in names:
            values.setdefault(name, default)
        return Valuation(values, self.model)

    def restricted(self, names: Iterable[str]) -> "Valuation":
        keep = set(names)
        return Valuation({k: v for k, v in self.values.items() if k in keep}, self.model)

    def to_dict(self) -> Dict[str, str]:
        return {name: str(val) for name, val in sorted(self.values.items())}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], model: Model = Model.Q) -> "Valuation":
        return cls({name: parse_rational(val) for name, val in data.items()}, model)

    def render(self) -> str:
        return ", ".join(f"{name}={val}" for name, val in sorted(self.values.items()))


def eval_a(f: Formula, v: Valuation) -> Fraction:
    """Value of an abelian-dialect formula in the rationals"""
    kind = f.kind
    if kind is Kind.VAR:
        return v[f.name]
    if kind is Kind.TOP:
        return ZERO
    if kind is Kind.NEG:
        return -eval_a(f.left, v)
    if kind not in (
        Kind.PLUS, Kind.ARROW, Kind.AND, Kind.OR,
        Kind.POS_ARROW, Kind.ENTH_ARROW, Kind.MAT_ARROW,
    ):
        raise DialectError(kind.value, "the rational model")
    a = eval_a(f.left, v)
    b = eval_a(f.right, v)
    if kind is Kind.PLUS:
        return a + b
    if kind is Kind.ARROW:
        return b - a
    if kind is Kind.AND:
        return min(a, b)
    if kind is Kind.OR:
        return max(a, b)
    if kind is Kind.POS_ARROW:
        return min(ZERO, b - a)
    if kind is Kind.ENTH_ARROW:
        return b - min(ZERO, a)
    return max(v[MBOT], b) - min(ZERO, a)


def eval_l(f: Formula, v: Valuation) -> Fraction:
    """Value of a Łukasiewicz-dialect formula in [-1, 0]"""
    kind = f.kind
    if kind is Kind.VAR:
        val = v[f.name]
        if not MINUS_ONE <= val <= ZERO:
            raise EvaluationError(f"v({f.name}) = {val} lies outside [-1, 0]", variable=f.name)
        return val
    if kind is Kind.TOP:
        return ZERO
    if kind is Kind.BOT:
        return MINUS_ONE
    if kind is Kind.TILDE:
        return MINUS_ONE - eval_l(f.left, v)
    if kind not in (
        Kind.OPLUS, Kind.AND, Kind.OR, Kind.POS_ARROW, Kind.MAT_ARROW, Kind.ENTH_ARROW,
    ):
        raise DialectError(kind.value, "the [-1,0] model")
    a = eval_l(f.left, v)
    b = eval_l(f.right, v)
    if kind is Kind.OPLUS:
        return min(ZERO, a + b + 1)
    if kind is Kind.AND:
        return min(a, b)
    if kind is Kind.OR:
        return max(a, b)
    return min(ZERO, b - a)


def evaluate(f: Formula, v: Valuation) -> Fraction:
    return eval_a(f, v) if v.model is Model.Q else eval_l(f, v)


def holds_component(gamma: Iterable[Formula], delta: Iterable[Formula], v: Valuation) -> bool:
    """ΣΓ ≤ ΣΔ under v"""
    left = sum((evaluate(f, v) for f in gamma), ZERO)
    right = sum((evaluate(f, v) for f in delta), ZERO)
    return left <= right


def holds(g: Union[Hypersequent, Sequent, FocusedHypersequent], v: Valuation) -> bool:
    """Some component holds under v"""
    if isinstance(g, FocusedHypersequent):
        g = g.body
    if isinstance(g, Sequent):
        return holds_component(g.left, g.right, v)
    return any(holds_component(comp.left, comp.right, v) for comp in g)


def labelling_functions(atoms: Sequence[str]) -> Iterable[Dict[str, int]]:
    """All maps from the atomic labels to {0, 1}"""
    for bits in itertools.product((0, 1), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def holds_labelled(s: LabelledSequent, v: Valuation) -> bool:
    """Some labelling function f makes f(Γ) ⊢ f(Δ) hold; the store is ignored"""
    atoms = s.atomic_labels()
    return any(holds(apply_labelling(f, s), v) for f in labelling_functions(atoms))


Goal = Union[Hypersequent, Sequent, FocusedHypersequent, LabelledSequent]


def goal_holds(goal: Goal, v: Valuation) -> bool:
    if isinstance(goal, LabelledSequent):
        return holds_labelled(goal, v)
    return holds(goal, v)


def goal_variables(goal: Goal):
    if isinstance(goal, FocusedHypersequent):
        return goal.body.variables()
    return goal.variables()


def sample_valuation(
    names: Sequence[str],
    model: Model,
    rng: random.Random,
    numerator_range: Tuple[int, int] = (-8, 8),
    denominators: Sequence[int] = (1, 2, 3, 4),
) -> Valuation:
    """Draw one valuation; Ł values are clipped to [-1, 0] by the numerator range"""
    low, high = numerator_range
    values: Dict[str, Fraction] = {}
    for name in names:
        den = rng.choice(list(denominators))
        if model is Model.UNIT:
            num = rng.randint(max(low, -den), min(high, 0))
        else:
            num = rng.randint(low, high)
        values[name] = Fraction(num, den)
    return Valuation(values, model)


def random_refute(
    goal: Goal,
    model: Model,
    budget: int,
    seed: int = 0,
    numerator_range: Tuple[int, int] = (-8, 8),
    denominators: Sequence[int] = (1, 2, 3, 4),
) -> Optional[Valuation]:
    """
    Sample valuations looking for one under which the goal fails.

    Returns:
        A refuting valuation, or None when the budget runs out
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    rng = random.Random(seed)
    names = goal_variables(goal)
    for attempt in range(budget):
        v = sample_valuation(names, model, rng, numerator_range, denominators)
        if not goal_holds(goal, v):
            logger.debug("random_refute hit after %d samples", attempt + 1)
            return v
    return None


def multiset_sum(side: Multiset[Formula], v: Valuation) -> Fraction:
    return sum((evaluate(f, v) for f in side), ZERO)
