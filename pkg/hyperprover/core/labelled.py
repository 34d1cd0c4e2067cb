"""
Labelled calculi GA_l, GŁ_l and the store calculus GA_i.

Search applies the labelled logical rules until the sequent is atomic and
then runs the success check: the labelled inequation Γ > Δ must be
inconsistent, i.e. no valuation makes f(Γ) > f(Δ) for every labelling
function f. Rather than enumerating the 2ⁿ labelling functions, the check
reduces the label-regular inequation to 2n+m unlabelled ones over fresh
slack variables and hands them to the rational feasibility kernel.

Label introductions are tracked per branch in a LabelTree; the tree's size,
the label regularity of every leaf and the branch length bound are asserted
during search.
"""
import logging
import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from hyperprover.core.budget import SearchBudget
from hyperprover.core.constants import (
    DEFAULT_CERTIFICATE_MAX_LABELS,
    DEFAULT_MAX_CONSTRAINTS,
    SLACK_PREFIX,
    CalculusId,
    Logic,
    Model,
    RuleId,
    Side,
)
from hyperprover.core.errors import LabelRegularityError, RuleApplicationError
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import A_PRINCIPALS, LOGICAL_RULES
from hyperprover.core.lp import (
    LinInequation,
    LinSystem,
    Relation,
    check_farkas,
    check_lambda,
    farkas_certificate,
    feasible,
    lambda_certificate,
)
from hyperprover.core.proof import CheckResult, ProofTree, Verdict
from hyperprover.core.semantics import Valuation, holds_labelled, labelling_functions
from hyperprover.core.structures import (
    UNIT,
    Hypersequent,
    Label,
    LabelledFormula,
    LabelledSequent,
    LabelTree,
    Multiset,
    Sequent,
    apply_labelling,
)
from hyperprover.core.syntax import BOT, Formula, Kind, natural_key, normalize, pos_arrow

logger = logging.getLogger(__name__)

LABELLED_CALCULI = frozenset({CalculusId.GA_L, CalculusId.GL_L, CalculusId.GA_I})
L_LABELLED_PRINCIPALS = frozenset({Kind.POS_ARROW})


# ---------------------------------------------------------------------------
# Labelled inequations and the label-regular reduction
# ---------------------------------------------------------------------------


def _linear(
    left: Iterable[Formula], right: Iterable[Formula], relation: Relation, lukasiewicz: bool
) -> LinInequation:
    """ΣΓ − ΣΔ REL 0; in Ł ⊥ contributes the constant −1"""
    coeffs: Dict[str, int] = {}
    constant = 0
    for f, sign in [(f, 1) for f in left] + [(f, -1) for f in right]:
        if lukasiewicz and f.kind is Kind.BOT:
            constant -= sign
        elif f.is_var:
            coeffs[f.name] = coeffs.get(f.name, 0) + sign
        else:
            raise RuleApplicationError(RuleId.SUCCESS.value, f"{f} is not atomic")
    return LinInequation.build(coeffs, relation, constant)


@dataclass(frozen=True)
class LabelledInequation:
    """Γ > Δ (strict) or Γ ≥ Δ over labelled atomic formulas"""

    left: Multiset[LabelledFormula] = field(default_factory=Multiset)
    right: Multiset[LabelledFormula] = field(default_factory=Multiset)
    strict: bool = True

    @classmethod
    def of(
        cls,
        left: Iterable[LabelledFormula] = (),
        right: Iterable[LabelledFormula] = (),
        strict: bool = True,
    ) -> "LabelledInequation":
        return cls(Multiset(left), Multiset(right), strict)

    @classmethod
    def from_sequent(cls, s: LabelledSequent) -> "LabelledInequation":
        return cls(s.left, s.right, True)

    @property
    def relation(self) -> Relation:
        return Relation.GT if self.strict else Relation.GE

    def labels(self) -> List[Label]:
        return LabelledSequent(self.left, self.right).labels()

    def atomic_labels(self) -> List[str]:
        return LabelledSequent(self.left, self.right).atomic_labels()

    def variables(self) -> List[str]:
        return LabelledSequent(self.left, self.right).variables()

    def instantiate(self, f: Mapping[str, int]) -> Sequent:
        return apply_labelling(f, LabelledSequent(self.left, self.right))

    def to_lin(self, lukasiewicz: bool = False) -> LinInequation:
        """
        Raises:
            LabelRegularityError: A formula still carries a non-unit label
        """
        for lf in self.left + self.right:
            if lf.label:
                raise LabelRegularityError(f"{lf} still carries a label")
        return _linear(
            (lf.formula for lf in self.left),
            (lf.formula for lf in self.right),
            self.relation,
            lukasiewicz,
        )

    def render(self) -> str:
        left = ", ".join(str(lf) for lf in self.left) or "0"
        right = ", ".join(str(lf) for lf in self.right) or "0"
        return f"{left} {self.relation.value} {right}"

    def __str__(self) -> str:
        return self.render()


def slack_variable(atom: str) -> Formula:
    return Formula.var(f"{SLACK_PREFIX}{atom}")


def _strip(ms: Iterable[LabelledFormula], atom: str) -> List[LabelledFormula]:
    return [LabelledFormula(lf.label - {atom}, lf.formula) for lf in ms]


def _owners(ineqs: List[LabelledInequation]) -> Dict[str, int]:
    owners: Dict[str, int] = {}
    for i, ineq in enumerate(ineqs):
        for atom in ineq.atomic_labels():
            if owners.setdefault(atom, i) != i:
                raise LabelRegularityError(f"Atomic label {atom} occurs in more than one inequation")
    return owners


def _formula_bounds(ineqs: Iterable[LabelledInequation]) -> Dict:
    names: Dict[str, None] = {}
    for ineq in ineqs:
        for name in ineq.variables():
            if not name.startswith(SLACK_PREFIX):
                names.setdefault(name, None)
    return {name: (Fraction(-1), Fraction(0)) for name in names}


def reduce_label_regular(
    ineqs: Iterable[LabelledInequation],
    tree: Optional[LabelTree] = None,
    lukasiewicz: bool = False,
) -> LinSystem:
    """
    Eliminate the atomic labels of a label-regular system one maximal label at a time.

    A maximal label x owned by S = Γ,Σ ▷ Δ,Π (Σ and Π hold the x-labelled
    formulas) is replaced by Γ,λx ▷ Δ and Σ ≥ Π,λx (x removed from their
    labels) and 0 ≥ λx. The result has 2n+m inequations for n atomic labels
    and m inputs and is consistent exactly when the input is. With
    ``lukasiewicz`` the formula variables are bounded to [-1, 0].

    Raises:
        LabelRegularityError: Labels are not paths of a tree, or an atomic label
            occurs in two inequations
    """
    work = list(ineqs)
    m = len(work)
    _owners(work)
    labels = [label for ineq in work for label in ineq.labels()]
    if tree is None:
        tree = LabelTree.infer(labels)
    present = {atom for label in labels for atom in label}
    tree = LabelTree(tuple((child, parent) for child, parent in tree.parents if child in present))
    missing = present - set(tree.nodes)
    if missing:
        raise LabelRegularityError(f"Labels {sorted(missing, key=natural_key)} are not in the tree")
    tree.validate(labels)
    n = len(tree.nodes)

    while tree.nodes:
        x = min(tree.maximal(), key=natural_key)
        i = next(k for k, ineq in enumerate(work) if x in ineq.atomic_labels())
        s = work[i]
        slack = LabelledFormula(UNIT, slack_variable(x))
        sigma = [lf for lf in s.left if x in lf.label]
        pi = [lf for lf in s.right if x in lf.label]
        gamma = [lf for lf in s.left if x not in lf.label]
        delta = [lf for lf in s.right if x not in lf.label]
        s1 = LabelledInequation.of(gamma + [slack], delta, s.strict)
        s2 = LabelledInequation.of(_strip(sigma, x), _strip(pi, x) + [slack], strict=False)
        s3 = LabelledInequation.of((), [slack], strict=False)
        work[i:i + 1] = [s1, s2]
        work.append(s3)
        tree = tree.remove_root_child(x)

    if len(work) != 2 * n + m:
        raise RuntimeError(f"Reduction produced {len(work)} inequations, expected {2 * n + m}")
    bounds = _formula_bounds(work) if lukasiewicz else {}
    logger.debug("label_reduction n=%d m=%d size=%d", n, m, len(work))
    return LinSystem([ineq.to_lin(lukasiewicz) for ineq in work], bounds)


def brute_force_consistent(
    ineqs: Iterable[LabelledInequation],
    lukasiewicz: bool = False,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> bool:
    """Consistency over all labelling functions, by explicit enumeration"""
    ineqs = list(ineqs)
    rows = []
    for ineq in ineqs:
        for f in labelling_functions(ineq.atomic_labels()):
            inst = ineq.instantiate(f)
            rows.append(_linear(inst.left, inst.right, ineq.relation, lukasiewicz))
    bounds = _formula_bounds(ineqs) if lukasiewicz else {}
    return feasible(LinSystem(rows, bounds), max_constraints).feasible


def subset_star(delta: Multiset[Formula], gamma: Multiset[Formula]) -> bool:
    """
    Δ ⊆* Γ: Δ ⊆ Γ once atoms of Δ are paired off against occurrences of ⊥ in Γ.

    Pairing an atom that Γ already holds never helps, so the relation holds
    exactly when the surplus of Δ over Γ is no larger than the unused ⊥s of Γ.
    """
    return len(delta - gamma) <= (gamma - delta).count(BOT)


# ---------------------------------------------------------------------------
# Success
# ---------------------------------------------------------------------------


def _instances(s: LabelledSequent, functions: List[Dict[str, int]]) -> Hypersequent:
    return Hypersequent(tuple(apply_labelling(f, s) for f in functions))


def labelling_certificate(
    s: LabelledSequent,
    lukasiewicz: bool = False,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
) -> Optional[Dict[str, Any]]:
    """
    Labelling functions f₁..fₖ with multipliers witnessing success.

    In A these are the λ weights with Σλᵢfᵢ(Γ) = Σλᵢfᵢ(Δ); in Ł they are
    Farkas multipliers for the bounded system. Returns None above
    ``max_labels`` atomic labels or when the enumeration finds no witness.
    """
    atoms = s.atomic_labels()
    if len(atoms) > max_labels:
        logger.warning(
            "Skipping labelling functions for %d atomic labels (limit %d)", len(atoms), max_labels
        )
        return None
    functions = list(labelling_functions(atoms))
    h = _instances(s, functions)
    if not lukasiewicz:
        lam = lambda_certificate(h)
        if lam is None:
            return None
        kept = [(f, w) for f, w in zip(functions, lam) if w > 0]
        return {"functions": [f for f, _ in kept], "lambda": [w for _, w in kept]}
    cert = farkas_certificate(h)
    if cert is None:
        return None
    kept = [(f, w) for f, w in zip(functions, cert["lambda"]) if w > 0]
    names = set(_instances(s, [f for f, _ in kept]).variables())
    return {
        "functions": [f for f, _ in kept],
        "lambda": [w for _, w in kept],
        "lower": {k: v for k, v in cert["lower"].items() if k in names},
        "upper": {k: v for k, v in cert["upper"].items() if k in names},
    }


def decide_labelled_leaf(
    s: LabelledSequent,
    lukasiewicz: bool = False,
    tree: Optional[LabelTree] = None,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Verdict:
    """
    Decide (success) on an atomic labelled sequent.

    Returns:
        Verdict with the success certificate, or a valuation under which
        f(Γ) > f(Δ) for every labelling function
    """
    if not s.is_atomic:
        raise RuleApplicationError(RuleId.SUCCESS.value, f"{s} is not atomic")
    atoms = s.atomic_labels()
    if lukasiewicz and len(atoms) <= max_labels:
        for f in labelling_functions(atoms):
            inst = apply_labelling(f, s)
            if subset_star(inst.right, inst.left):
                return Verdict.proved(certificate={"kind": "subset", "functions": [f]})
    system = reduce_label_regular([LabelledInequation.from_sequent(s)], tree, lukasiewicz)
    result = feasible(system, max_constraints)
    if result.feasible:
        names = s.variables()
        model = Model.UNIT if lukasiewicz else Model.Q
        values = {k: v for k, v in result.witness.items() if k in names}
        return Verdict.refuted(Valuation(values, model).extended(names))
    cert: Dict[str, Any] = {"kind": "labelled", "labels": len(atoms), "inequations": len(system)}
    functions = labelling_certificate(s, lukasiewicz, max_labels)
    if functions:
        cert.update(functions)
    return Verdict.proved(certificate=cert)


def success_check(
    s: LabelledSequent,
    logic: Union[Logic, str] = Logic.A,
    tree: Optional[LabelTree] = None,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Optional[Dict[str, Any]]:
    """Certificate when (success) applies to ``s``, else None"""
    verdict = decide_labelled_leaf(s, Logic(logic) is Logic.L, tree, max_labels, max_constraints)
    return verdict.certificate if verdict.valid else None


def verify_success(
    s: LabelledSequent,
    cert: Optional[Mapping[str, Any]],
    lukasiewicz: bool = False,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Optional[str]:
    """None when ``cert`` certifies (success) on ``s``, else the reason"""
    if not s.is_atomic:
        return "(success) needs an atomic sequent"
    if not cert:
        return "(success) leaf carries no certificate"
    atoms = s.atomic_labels()
    try:
        functions = [{a: int(f[a]) for a in atoms} for f in cert.get("functions", [])]
    except (KeyError, TypeError, ValueError):
        return "labelling function does not cover the atomic labels"
    kind = cert.get("kind")
    if kind == "subset":
        if not lukasiewicz or not functions:
            return "subset certificates need Ł and at least one labelling function"
        total = sum((apply_labelling(f, s) for f in functions), Sequent.of())
        return None if subset_star(total.right, total.left) else "right side is not in ⊆* the left side"
    if kind != "labelled":
        return f"unknown certificate kind {kind!r}"
    if functions:
        h = _instances(s, functions)
        ok = check_farkas(h, cert) if lukasiewicz else check_lambda(h, cert.get("lambda", []))
        if not ok:
            return "labelling functions do not certify (success)"
    try:
        system = reduce_label_regular([LabelledInequation.from_sequent(s)], lukasiewicz=lukasiewicz)
    except LabelRegularityError as exc:
        return str(exc)
    if feasible(system, max_constraints).feasible:
        return "labelled inequation is consistent"
    return None


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


def principal_kinds(calculus: CalculusId) -> frozenset:
    return L_LABELLED_PRINCIPALS if calculus is CalculusId.GL_L else A_PRINCIPALS


def introduces_label(calculus: CalculusId, kind: Kind, side: Side) -> bool:
    """(⇒,l) always; the derived (∧,l) and (∨,r) of GA_l as well"""
    if kind is Kind.POS_ARROW:
        return side is Side.LEFT
    if calculus is CalculusId.GA_L:
        return (kind, side) in ((Kind.AND, Side.LEFT), (Kind.OR, Side.RIGHT))
    return False


def _ga_i_ready(s: LabelledSequent, principal: LabelledFormula) -> bool:
    """Δ atomic and Γ atoms or ⇒-formulas, principal aside"""
    rest = s.left.remove(principal)
    return all(lf.formula.is_atomic for lf in s.right) and all(
        lf.formula.is_atomic or lf.formula.kind is Kind.POS_ARROW for lf in rest
    )


def labelled_premises(
    calculus: Union[CalculusId, str],
    s: LabelledSequent,
    side: Union[Side, str],
    lf: LabelledFormula,
    fresh: Optional[str] = None,
) -> List[LabelledSequent]:
    """
    Premises of the logical rule with principal ``lf`` on ``side``.

    Raises:
        RuleApplicationError: ``lf`` is absent or not principal in the calculus,
            the fresh label is missing or reused, or a GA_i side condition fails
    """
    calculus = CalculusId(calculus)
    side = Side(side)
    f = lf.formula
    rule = LOGICAL_RULES.get((f.kind, side))
    name = rule.value if rule else f.kind.value
    if f.kind not in principal_kinds(calculus) or rule is None:
        raise RuleApplicationError(name, f"{f} is not principal in {calculus.value}")
    if lf not in s.side(side.value):
        raise RuleApplicationError(name, f"{lf} does not occur on the {side.value} side")
    x = lf.label
    xy = x
    if introduces_label(calculus, f.kind, side):
        if fresh is None or fresh in s.atomic_labels():
            raise RuleApplicationError(name, "needs a fresh atomic label")
        xy = x | {fresh}
    if calculus is CalculusId.GA_I and (f.kind, side) == (Kind.POS_ARROW, Side.LEFT):
        if not _ga_i_ready(s, lf):
            raise RuleApplicationError(name, "GA_i needs Δ atomic and Γ of atoms and ⇒-formulas")

    left = s.left.remove(lf) if side is Side.LEFT else s.left
    right = s.right.remove(lf) if side is Side.RIGHT else s.right

    def seq(lhs=(), rhs=(), store=()) -> LabelledSequent:
        return LabelledSequent(left.add(*lhs), right.add(*rhs), s.store.add(*store))

    def at(label: Label, g: Formula) -> LabelledFormula:
        return LabelledFormula(label, g)

    kind = f.kind
    if kind is Kind.TOP:
        return [seq()]
    a, b = f.left, f.right
    store = calculus is CalculusId.GA_I
    on_left = side is Side.LEFT
    if kind is Kind.NEG:
        return [seq(rhs=[at(x, a)])] if on_left else [seq(lhs=[at(x, a)])]
    if kind is Kind.PLUS:
        pair = [at(x, a), at(x, b)]
        return [seq(lhs=pair)] if on_left else [seq(rhs=pair)]
    if kind is Kind.ARROW:
        if on_left:
            return [seq(lhs=[at(x, b)], rhs=[at(x, a)])]
        return [seq(lhs=[at(x, a)], rhs=[at(x, b)])]
    if kind is Kind.POS_ARROW:
        if on_left:
            return [seq(lhs=[at(xy, b)], rhs=[at(xy, a)], store=[pos_arrow(b, a)] if store else [])]
        return [seq(lhs=[at(x, a)], rhs=[at(x, b)]), seq()]
    if kind is Kind.AND:
        if not on_left:
            return [seq(rhs=[at(x, a)]), seq(rhs=[at(x, b)])]
        if store:
            return [seq(lhs=[at(x, a), at(x, pos_arrow(a, b))])]
        return [seq(lhs=[at(x, a), at(xy, b)], rhs=[at(xy, a)])]
    # Kind.OR
    if on_left:
        return [seq(lhs=[at(x, a)]), seq(lhs=[at(x, b)])]
    if store:
        return [seq(lhs=[at(x, pos_arrow(b, a))], rhs=[at(x, a)])]
    return [seq(lhs=[at(xy, a)], rhs=[at(x, a), at(xy, b)])]


def rule_weight(f: Formula) -> int:
    """Upper bound on the logical rules a formula can feed along one branch"""
    kind = f.kind
    if kind in (Kind.VAR, Kind.BOT):
        return 0
    if kind is Kind.TOP:
        return 1
    if kind is Kind.NEG:
        return 1 + rule_weight(f.left)
    if kind in (Kind.AND, Kind.OR):
        return 2 + 2 * rule_weight(f.left) + rule_weight(f.right)
    return 1 + rule_weight(f.left) + rule_weight(f.right)


def rule_bound(s: LabelledSequent) -> int:
    """Σ rule_weight over Γ and Δ; the store does not count"""
    return sum(rule_weight(lf.formula) for lf in s.formulas())


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


@dataclass
class LabelledProver:
    """Proof search for GA_l, GŁ_l and GA_i"""

    calculus: CalculusId = CalculusId.GA_L
    budget: SearchBudget = field(default_factory=SearchBudget.unlimited)
    emitter: Optional[TraceEmitter] = None
    order_seed: Optional[int] = None
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.calculus = CalculusId(self.calculus)
        if self.calculus not in LABELLED_CALCULI:
            raise ValueError(f"LabelledProver handles ga_l, gl_l and ga_i, not {self.calculus.value}")
        self._rng = random.Random(self.order_seed) if self.order_seed is not None else None
        self._taken: Set[str] = set()
        self._next = 0
        self._bound = 0
        self._initial_labels = 0

    @property
    def lukasiewicz(self) -> bool:
        return self.calculus is CalculusId.GL_L

    def _count(self, key: str, n: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + n

    def _fresh(self) -> str:
        while True:
            self._next += 1
            name = f"x{self._next}"
            if name not in self._taken:
                self._taken.add(name)
                return name

    def prove(self, goal: Union[Sequent, LabelledSequent]) -> Verdict:
        """
        Decide a sequent, lifted to unit labels when unlabelled.

        Raises:
            DialectError: A connective outside the calculus
            LabelRegularityError: The goal's labels are not paths of a tree
            SearchTimeout: The budget ran out
        """
        if isinstance(goal, Sequent):
            goal = LabelledSequent.lift(goal)
        normal = goal.map_formulas(lambda f: normalize(f, self.calculus))
        tree = LabelTree.infer(normal.labels())
        self._taken = set(normal.atomic_labels()) | set(normal.variables())
        self._next = 0
        self._bound = rule_bound(normal)
        self._initial_labels = len(tree.nodes)
        self.budget.start()
        result = self._search(normal, tree, 0, 0)
        self.stats["steps"] = self.budget.steps
        self.stats["rule_bound"] = self._bound
        if isinstance(result, ProofTree):
            logger.info(
                "search_finished",
                extra={"search_event": {"calculus": self.calculus.value, "verdict": "valid"}},
            )
            return Verdict.proved(result, **self.stats)
        v = result.extended(list(goal.variables()) + list(normal.variables()))
        if holds_labelled(goal, v):
            raise RuntimeError(f"Countermodel {v.render()} does not refute {goal}")
        logger.info(
            "search_finished",
            extra={"search_event": {"calculus": self.calculus.value, "verdict": "invalid"}},
        )
        return Verdict.refuted(v, **self.stats)

    def _select(self, s: LabelledSequent) -> Optional[Tuple[Side, LabelledFormula]]:
        kinds = principal_kinds(self.calculus)
        candidates = [
            (side, lf)
            for side in (Side.LEFT, Side.RIGHT)
            for lf in s.side(side.value).distinct()
            if lf.formula.kind in kinds
        ]
        if self.calculus is CalculusId.GA_I:
            eager = [
                (side, lf)
                for side, lf in candidates
                if not (side is Side.LEFT and lf.formula.kind is Kind.POS_ARROW)
            ]
            candidates = eager or candidates
        if not candidates:
            return None
        return self._rng.choice(candidates) if self._rng else candidates[0]

    def _search(
        self, s: LabelledSequent, tree: LabelTree, depth: int, intros: int
    ) -> Union[ProofTree, Valuation]:
        pick = self._select(s)
        if pick is None:
            return self._leaf(s, tree, depth, intros)
        self.budget.tick()
        side, lf = pick
        rule = LOGICAL_RULES[(lf.formula.kind, side)]
        fresh = None
        if introduces_label(self.calculus, lf.formula.kind, side):
            fresh = self._fresh()
            tree = tree.fresh_child(lf.label, fresh)
            intros += 1
            self._count("labels_introduced")
        premises = labelled_premises(self.calculus, s, side, lf, fresh)
        before = rule_bound(s)
        for premise in premises:
            if rule_bound(premise) >= before:
                raise RuntimeError(f"({rule.value}) did not decrease the rule bound of {s}")
        if depth + 1 > self._bound:
            raise RuntimeError(f"Branch longer than the rule bound {self._bound}")
        if self.emitter is not None:
            self.emitter.record(
                self.calculus,
                rule,
                measure=[before],
                depth=depth,
                metadata={"fresh": fresh} if fresh else None,
            )
        self._count("logical")
        proofs = []
        for premise in premises:
            result = self._search(premise, tree, depth + 1, intros)
            if isinstance(result, Valuation):
                return result
            proofs.append(result)
        params: Dict[str, Any] = {"side": side.value, "principal": lf.formula, "label": lf.label}
        if fresh is not None:
            params["fresh"] = fresh
        return ProofTree(rule, s, proofs, params=params)

    def _leaf(
        self, s: LabelledSequent, tree: LabelTree, depth: int, intros: int
    ) -> Union[ProofTree, Valuation]:
        self._count("leaves")
        self.stats["max_branch"] = max(self.stats.get("max_branch", 0), depth)
        if len(tree.nodes) != self._initial_labels + intros:
            raise RuntimeError("Label tree out of step with the label introductions")
        tree.validate(s.labels())
        verdict = decide_labelled_leaf(
            s, self.lukasiewicz, tree, self.max_labels, self.max_constraints
        )
        if not verdict.valid:
            return verdict.countermodel
        return ProofTree(RuleId.SUCCESS, s, certificate=verdict.certificate)


def _prove(calculus: CalculusId, s, budget, emitter, order_seed, max_constraints, max_labels) -> Verdict:
    prover = LabelledProver(
        calculus,
        budget or SearchBudget.unlimited(),
        emitter,
        order_seed,
        max_constraints,
        max_labels,
    )
    return prover.prove(s)


def prove_ga_l(
    s: Union[Sequent, LabelledSequent],
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
) -> Verdict:
    """Decide a sequent of A in GA_l"""
    return _prove(CalculusId.GA_L, s, budget, emitter, order_seed, max_constraints, max_labels)


def prove_gl_l(
    s: Union[Sequent, LabelledSequent],
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
) -> Verdict:
    """Decide a sequent of Ł in GŁ_l"""
    return _prove(CalculusId.GL_L, s, budget, emitter, order_seed, max_constraints, max_labels)


def prove_ga_i(
    s: Union[Sequent, LabelledSequent],
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    max_labels: int = DEFAULT_CERTIFICATE_MAX_LABELS,
) -> Verdict:
    """Decide a sequent of A in GA_i; proofs record the store used by elaboration"""
    return _prove(CalculusId.GA_I, s, budget, emitter, order_seed, max_constraints, max_labels)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def _same_premises(expected: List[LabelledSequent], found: List[LabelledSequent]) -> bool:
    if len(expected) != len(found):
        return False
    if len(found) == 2:
        return expected == found or expected == found[::-1]
    return expected == found


RuleMatch = Tuple[Side, LabelledFormula, Optional[str], List[LabelledSequent]]


def match_rule(node: ProofTree, calculus: Union[CalculusId, str]) -> Optional[RuleMatch]:
    """
    Principal formula, fresh label and expected premises of a logical node.

    Returns None when no principal of the conclusion yields the node's premises.
    """
    calculus = CalculusId(calculus)
    s = node.conclusion
    found = [p.conclusion for p in node.premises]
    fresh_atoms = set()
    for premise in found:
        fresh_atoms |= set(premise.atomic_labels())
    fresh_atoms -= set(s.atomic_labels())
    kinds = principal_kinds(calculus)
    for side in (Side.LEFT, Side.RIGHT):
        for lf in s.side(side.value).distinct():
            kind = lf.formula.kind
            if kind not in kinds or LOGICAL_RULES.get((kind, side)) is not node.rule:
                continue
            fresh = None
            if introduces_label(calculus, kind, side):
                if len(fresh_atoms) != 1:
                    continue
                fresh = next(iter(fresh_atoms))
            try:
                expected = labelled_premises(calculus, s, side, lf, fresh)
            except RuleApplicationError:
                continue
            if _same_premises(expected, found):
                return side, lf, fresh, expected
    return None


def _check_node(node: ProofTree, calculus: CalculusId) -> Optional[str]:
    s = node.conclusion
    if not isinstance(s, LabelledSequent) or any(
        not isinstance(p.conclusion, LabelledSequent) for p in node.premises
    ):
        return f"{calculus.value} proofs use labelled conclusions"
    if node.rule is RuleId.SUCCESS:
        if node.premises:
            return "(success) nodes are leaves"
        return verify_success(s, node.certificate, calculus is CalculusId.GL_L)
    if match_rule(node, calculus) is not None:
        return None
    if node.rule in set(LOGICAL_RULES.values()):
        return f"premises do not match ({node.rule.value}) for any principal formula"
    return f"rule {node.rule.value} is not part of {calculus.value}"


def check_labelled_proof(pt: ProofTree, calculus: Union[CalculusId, str]) -> CheckResult:
    """Check a GA_l, GŁ_l or GA_i proof; (success) leaves are re-decided"""
    calculus = CalculusId(calculus)
    if calculus not in LABELLED_CALCULI:
        raise ValueError(f"{calculus.value} is not a labelled calculus")
    for path, node in pt.walk():
        try:
            problem = _check_node(node, calculus)
        except (RuleApplicationError, LabelRegularityError, ValueError) as exc:
            problem = str(exc)
        if problem is not None:
            logger.debug("check_failed at %s: %s", path, problem)
            return CheckResult.fail(path, problem)
    return CheckResult.ok()
