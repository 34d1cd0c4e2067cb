"""
Exact rational linear feasibility.

Two engines share the module:

- ``feasible`` decides systems of strict and non-strict inequations by
  Fourier-Motzkin elimination in first-occurrence order and returns a witness
  found by back-substitution. Every witness is checked by substitution.
- ``solve_nonnegative`` is a phase-one simplex over Fractions (Bland's rule)
  used to find multiplier certificates: λ vectors for atomic hypersequents in
  A, Farkas multipliers for bounded Ł systems.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from hyperprover.core.constants import DEFAULT_MAX_CONSTRAINTS, Model, RuleId
from hyperprover.core.errors import LPResourceError, RuleApplicationError
from hyperprover.core.proof import Verdict
from hyperprover.core.semantics import Valuation
from hyperprover.core.structures import Hypersequent, Sequent
from hyperprover.core.syntax import Formula, Kind

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
BOT_KEY = "bot"


class Relation(str, Enum):
    GT = ">"
    GE = ">="
    EQ = "="


@dataclass(frozen=True)
class LinInequation:
    """Σ aₓ·x + c REL 0"""

    coeffs: Tuple[Tuple[str, Fraction], ...]
    relation: Relation
    constant: Fraction = ZERO

    @classmethod
    def build(
        cls,
        coeffs: Mapping[str, Union[int, Fraction]],
        relation: Union[Relation, str],
        constant: Union[int, Fraction] = 0,
    ) -> "LinInequation":
        cleaned = tuple((name, Fraction(a)) for name, a in coeffs.items() if a != 0)
        return cls(cleaned, Relation(relation), Fraction(constant))

    @property
    def coeff_map(self) -> Dict[str, Fraction]:
        return dict(self.coeffs)

    def variables(self) -> List[str]:
        return [name for name, _ in self.coeffs]

    def value(self, witness: Mapping[str, Fraction]) -> Fraction:
        return sum((a * witness.get(name, ZERO) for name, a in self.coeffs), self.constant)

    def satisfied(self, witness: Mapping[str, Fraction]) -> bool:
        val = self.value(witness)
        if self.relation is Relation.GT:
            return val > 0
        if self.relation is Relation.GE:
            return val >= 0
        return val == 0

    def render(self) -> str:
        terms = []
        for name, a in self.coeffs:
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            term = name if mag == 1 else f"{mag}*{name}"
            terms.append((sign, term))
        if self.constant != 0 or not terms:
            terms.append(("-" if self.constant < 0 else "+", str(abs(self.constant))))
        text = " ".join(f"{s} {t}" for s, t in terms)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"{text} {self.relation.value} 0"

    def __str__(self) -> str:
        return self.render()


Bounds = Dict[str, Tuple[Optional[Fraction], Optional[Fraction]]]


@dataclass
class LinSystem:
    """Inequations plus optional per-variable bounds lower ≤ x ≤ upper"""

    inequations: List[LinInequation] = field(default_factory=list)
    bounds: Bounds = field(default_factory=dict)

    def __post_init__(self):
        for name, (lo, hi) in self.bounds.items():
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"Inconsistent bounds for {name}: {lo} > {hi}")

    def __len__(self) -> int:
        return len(self.inequations)

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for ineq in self.inequations:
            for name in ineq.variables():
                seen.setdefault(name, None)
        for name in self.bounds:
            seen.setdefault(name, None)
        return list(seen)

    def bound_inequations(self) -> List[LinInequation]:
        out = []
        for name, (lo, hi) in self.bounds.items():
            if lo is not None:
                out.append(LinInequation.build({name: 1}, Relation.GE, -lo))
            if hi is not None:
                out.append(LinInequation.build({name: -1}, Relation.GE, hi))
        return out

    def constraints(self) -> List[LinInequation]:
        return list(self.inequations) + self.bound_inequations()

    def satisfied(self, witness: Mapping[str, Fraction]) -> bool:
        return all(ineq.satisfied(witness) for ineq in self.constraints())

    def dump(self) -> str:
        """Debug text, one constraint per line"""
        lines = [ineq.render() for ineq in self.inequations]
        for name, (lo, hi) in self.bounds.items():
            lines.append(f"{'-inf' if lo is None else lo} <= {name} <= {'inf' if hi is None else hi}")
        return "\n".join(lines)


@dataclass
class FeasibilityResult:
    feasible: bool
    witness: Optional[Dict[str, Fraction]] = None

    def __bool__(self) -> bool:
        return self.feasible


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

# internal constraint: (coefficient tuple over the variable order, constant, strict)
_Row = Tuple[Tuple[Fraction, ...], Fraction, bool]


def _normalize_row(coeffs: Sequence[Fraction], constant: Fraction) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """Scale by a positive factor to coprime integers"""
    values = list(coeffs) + [constant]
    denom = 1
    for val in values:
        denom = denom * val.denominator // math.gcd(denom, val.denominator)
    ints = [int(val * denom) for val in values]
    g = 0
    for val in ints:
        g = math.gcd(g, abs(val))
    if g > 1:
        ints = [val // g for val in ints]
    return tuple(Fraction(val) for val in ints[:-1]), Fraction(ints[-1])


def _tighten(rows: Iterable[_Row]) -> Optional[List[_Row]]:
    """Drop trivial rows, keep the tightest row per coefficient vector; None if a constant row fails"""
    best: Dict[Tuple[Fraction, ...], Tuple[Fraction, bool]] = {}
    for coeffs, constant, strict in rows:
        coeffs, constant = _normalize_row(coeffs, constant)
        if not any(coeffs):
            if constant < 0 or (strict and constant == 0):
                return None
            continue
        seen = best.get(coeffs)
        if seen is None or constant < seen[0] or (constant == seen[0] and strict and not seen[1]):
            best[coeffs] = (constant, strict)
    return [(coeffs, c, s) for coeffs, (c, s) in best.items()]


def feasible(sys: LinSystem, max_constraints: int = DEFAULT_MAX_CONSTRAINTS) -> FeasibilityResult:
    """
    Decide a linear system over the rationals.

    Variables are eliminated in first-occurrence order. Back-substitution
    picks, per variable: 0 when unconstrained; the bound itself when only one
    side is constrained non-strictly, one unit past it when strictly; the lower
    bound when it is non-strict and both sides exist, else the midpoint.

    Raises:
        LPResourceError: The constraint set grows beyond ``max_constraints``
    """
    order = sys.variables()
    index = {name: i for i, name in enumerate(order)}
    rows: List[_Row] = []
    for ineq in sys.constraints():
        vec = [ZERO] * len(order)
        for name, a in ineq.coeffs:
            vec[index[name]] = a
        if ineq.relation is Relation.EQ:
            rows.append((tuple(vec), ineq.constant, False))
            rows.append((tuple(-a for a in vec), -ineq.constant, False))
        else:
            rows.append((tuple(vec), ineq.constant, ineq.relation is Relation.GT))

    current = _tighten(rows)
    if current is None:
        return FeasibilityResult(False)

    levels: List[Tuple[List[_Row], List[_Row]]] = []
    for k in range(len(order)):
        lower = [row for row in current if row[0][k] > 0]
        upper = [row for row in current if row[0][k] < 0]
        rest = [row for row in current if row[0][k] == 0]
        levels.append((lower, upper))
        combined: List[_Row] = list(rest)
        for lo_coeffs, lo_c, lo_s in lower:
            for hi_coeffs, hi_c, hi_s in upper:
                a_lo = lo_coeffs[k]
                a_hi = -hi_coeffs[k]
                vec = tuple(a_hi * x + a_lo * y for x, y in zip(lo_coeffs, hi_coeffs))
                combined.append((vec, a_hi * lo_c + a_lo * hi_c, lo_s or hi_s))
        if len(combined) > max_constraints:
            raise LPResourceError(max_constraints, len(combined))
        current = _tighten(combined)
        if current is None:
            logger.debug("feasible: infeasible after eliminating %s", order[k])
            return FeasibilityResult(False)

    witness: Dict[str, Fraction] = {}
    values = [ZERO] * len(order)
    for k in reversed(range(len(order))):
        lower, upper = levels[k]
        lo, lo_strict = _extreme(lower, k, values, pick_max=True)
        hi, hi_strict = _extreme(upper, k, values, pick_max=False)
        if lo is None and hi is None:
            val = ZERO
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif not lo_strict:
            val = lo
        else:
            val = (lo + hi) / 2
        values[k] = val
        witness[order[k]] = val

    witness = {name: witness[name] for name in order}
    if not sys.satisfied(witness):
        raise RuntimeError(f"Fourier-Motzkin witness failed its check:\n{sys.dump()}")
    return FeasibilityResult(True, witness)


def _extreme(
    rows: List[_Row], k: int, values: List[Fraction], pick_max: bool
) -> Tuple[Optional[Fraction], bool]:
    """Tightest bound on variable k implied by rows, given later variables; strict wins ties"""
    best: Optional[Fraction] = None
    strict = False
    for coeffs, constant, is_strict in rows:
        rest = sum((a * values[j] for j, a in enumerate(coeffs) if j != k), constant)
        bound = -rest / coeffs[k]
        better = best is None or (bound > best if pick_max else bound < best)
        if better:
            best, strict = bound, is_strict
        elif bound == best and is_strict:
            strict = True
    return best, strict


# ---------------------------------------------------------------------------
# Phase-one simplex
# ---------------------------------------------------------------------------


def solve_nonnegative(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """
    Find x ≥ 0 with matrix·x = rhs, or None.

    Phase-one simplex with one artificial per row; entering and leaving
    variables follow Bland's rule.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [ZERO] * n
    tableau: List[List[Fraction]] = []
    for i, row in enumerate(matrix):
        sign = -1 if rhs[i] < 0 else 1
        art = [ONE if j == i else ZERO for j in range(m)]
        tableau.append([Fraction(a) * sign for a in row] + art + [Fraction(rhs[i]) * sign])
    basis = [n + i for i in range(m)]
    # reduced-cost row of the phase-one objective, artificials excluded
    objective = [sum((tableau[i][j] for i in range(m)), ZERO) for j in range(n + m + 1)]
    for j in range(n, n + m):
        objective[j] = ZERO

    while True:
        entering = next((j for j in range(n) if objective[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leaving]
                ):
                    leaving, best_ratio = i, ratio
        if leaving is None:
            break
        _pivot(tableau, objective, leaving, entering)
        basis[leaving] = entering

    if objective[-1] != 0:
        return None
    solution = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = tableau[i][-1]
    return solution


def _pivot(tableau: List[List[Fraction]], objective: List[Fraction], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [a / piv for a in tableau[row]]
    pivot_row = tableau[row]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            factor = other[col]
            tableau[i] = [a - factor * b for a, b in zip(other, pivot_row)]
    factor = objective[col]
    if factor != 0:
        objective[:] = [a - factor * b for a, b in zip(objective, pivot_row)]


def scale_to_integers(values: Sequence[Fraction]) -> List[int]:
    """Multiply by the lcm of denominators, divide by the gcd"""
    denom = 1
    for val in values:
        denom = denom * val.denominator // math.gcd(denom, val.denominator)
    ints = [int(val * denom) for val in values]
    g = 0
    for val in ints:
        g = math.gcd(g, abs(val))
    return [val // g for val in ints] if g > 1 else ints


# ---------------------------------------------------------------------------
# Atomic hypersequents
# ---------------------------------------------------------------------------


def _atom_key(f: Formula, bot_as_atom: bool, rule: str) -> str:
    if f.kind is Kind.VAR:
        return f.name
    if bot_as_atom and f.kind is Kind.BOT:
        return BOT_KEY
    raise RuleApplicationError(rule, f"{f} is not a propositional variable")


def _balance(comp: Sequent, bot_as_atom: bool, rule: str) -> Dict[str, int]:
    """count(Γ, q) − count(Δ, q) per atom"""
    out: Dict[str, int] = {}
    for f in comp.left:
        key = _atom_key(f, bot_as_atom, rule)
        out[key] = out.get(key, 0) + 1
    for f in comp.right:
        key = _atom_key(f, bot_as_atom, rule)
        out[key] = out.get(key, 0) - 1
    return out


def lambda_certificate(g: Hypersequent, bot_as_atom: bool = False) -> Optional[List[int]]:
    """
    Non-negative integers λᵢ, not all zero, with ∪λᵢΓᵢ = ∪λᵢΔᵢ.

    Raises:
        RuleApplicationError: Some formula is not a variable (or ⊥ with ``bot_as_atom``)
    """
    balances = [_balance(comp, bot_as_atom, RuleId.LAMBDA.value) for comp in g]
    atoms: Dict[str, None] = {}
    for bal in balances:
        for key in bal:
            atoms.setdefault(key, None)
    matrix = [[Fraction(bal.get(atom, 0)) for bal in balances] for atom in atoms]
    matrix.append([ONE] * len(balances))
    rhs = [ZERO] * len(atoms) + [ONE]
    solution = solve_nonnegative(matrix, rhs)
    if solution is None:
        return None
    return scale_to_integers(solution)


def check_lambda(g: Hypersequent, lam: Sequence[int], bot_as_atom: bool = False) -> bool:
    if len(lam) != len(g) or any(x < 0 for x in lam) or not any(lam):
        return False
    total: Dict[str, int] = {}
    for weight, comp in zip(lam, g):
        for key, n in _balance(comp, bot_as_atom, RuleId.LAMBDA.value).items():
            total[key] = total.get(key, 0) + weight * n
    return all(n == 0 for n in total.values())


def refutation_system(g: Hypersequent, lukasiewicz: bool = False) -> LinSystem:
    """ΣΓᵢ > ΣΔᵢ for every component; Ł adds −1 ≤ q ≤ 0 and reads ⊥ as −1"""
    rule = RuleId.CLOSURE.value
    inequations = []
    for comp in g:
        coeffs: Dict[str, Fraction] = {}
        constant = ZERO
        for f, sign in [(f, 1) for f in comp.left] + [(f, -1) for f in comp.right]:
            if lukasiewicz and f.kind is Kind.BOT:
                constant -= sign
                continue
            key = _atom_key(f, False, rule)
            coeffs[key] = coeffs.get(key, ZERO) + sign
        inequations.append(LinInequation.build(coeffs, Relation.GT, constant))
    bounds: Bounds = {}
    if lukasiewicz:
        bounds = {name: (Fraction(-1), ZERO) for name in g.variables()}
    return LinSystem(inequations, bounds)


def atomic_valid_a(g: Hypersequent, max_constraints: int = DEFAULT_MAX_CONSTRAINTS):
    """
    Validity of an atomic hypersequent in A.

    Returns:
        Verdict carrying the λ certificate, or the countermodel
    """
    lam = lambda_certificate(g)
    if lam is not None:
        return Verdict.proved(certificate={"kind": "lambda", "lambda": lam})
    result = feasible(refutation_system(g), max_constraints)
    if not result.feasible:
        raise RuntimeError(f"No λ certificate and no countermodel for {g}")
    model = Valuation(result.witness, Model.Q).extended(g.variables())
    return Verdict.refuted(model)


def farkas_certificate(g: Hypersequent) -> Optional[Dict[str, Any]]:
    """
    Multipliers proving the bounded refutation system of ``g`` infeasible.

    Unknowns are λᵢ per component, lower/upper multipliers per variable and a
    slack; rows require the variable parts to cancel, the combined constant to
    be non-positive, and Σλ = 1.
    """
    names = g.variables()
    system = refutation_system(g, lukasiewicz=True)
    k = len(system.inequations)
    nv = len(names)
    width = k + 2 * nv + 1
    matrix: List[List[Fraction]] = []
    for j, name in enumerate(names):
        row = [ZERO] * width
        for i, ineq in enumerate(system.inequations):
            row[i] = ineq.coeff_map.get(name, ZERO)
        row[k + j] = ONE
        row[k + nv + j] = -ONE
        matrix.append(row)
    const_row = [ZERO] * width
    for i, ineq in enumerate(system.inequations):
        const_row[i] = ineq.constant
    for j in range(nv):
        const_row[k + j] = ONE
    const_row[-1] = ONE
    matrix.append(const_row)
    matrix.append([ONE] * k + [ZERO] * (2 * nv + 1))
    rhs = [ZERO] * (nv + 1) + [ONE]
    solution = solve_nonnegative(matrix, rhs)
    if solution is None:
        return None
    ints = scale_to_integers(solution)
    return {
        "kind": "farkas",
        "lambda": ints[:k],
        "lower": {name: ints[k + j] for j, name in enumerate(names)},
        "upper": {name: ints[k + nv + j] for j, name in enumerate(names)},
    }


def check_farkas(g: Hypersequent, cert: Mapping[str, Any]) -> bool:
    """Re-verify Farkas multipliers against the bounded refutation system of ``g``"""
    try:
        lam = [Fraction(x) for x in cert["lambda"]]
        lower = {name: Fraction(x) for name, x in cert.get("lower", {}).items()}
        upper = {name: Fraction(x) for name, x in cert.get("upper", {}).items()}
    except (KeyError, TypeError, ValueError):
        return False
    system = refutation_system(g, lukasiewicz=True)
    if len(lam) != len(system.inequations) or any(x < 0 for x in lam) or sum(lam) <= 0:
        return False
    if any(x < 0 for x in lower.values()) or any(x < 0 for x in upper.values()):
        return False
    names = set(g.variables())
    if not set(lower) <= names or not set(upper) <= names:
        return False
    for name in names:
        total = sum((w * ineq.coeff_map.get(name, ZERO) for w, ineq in zip(lam, system.inequations)), ZERO)
        total += lower.get(name, ZERO) - upper.get(name, ZERO)
        if total != 0:
            return False
    constant = sum((w * ineq.constant for w, ineq in zip(lam, system.inequations)), ZERO)
    constant += sum(lower.values(), ZERO)
    return constant <= 0


def atomic_valid_l(g: Hypersequent, max_constraints: int = DEFAULT_MAX_CONSTRAINTS):
    """
    Validity of a hypersequent over variables and ⊥ in [-1, 0].

    Returns:
        Verdict with the Farkas certificate, or the countermodel
    """
    result = feasible(refutation_system(g, lukasiewicz=True), max_constraints)
    if result.feasible:
        model = Valuation(result.witness, Model.UNIT).extended(g.variables())
        return Verdict.refuted(model)
    cert = farkas_certificate(g)
    if cert is None:
        raise RuntimeError(f"Infeasible system without Farkas multipliers for {g}")
    return Verdict.proved(certificate=cert)
