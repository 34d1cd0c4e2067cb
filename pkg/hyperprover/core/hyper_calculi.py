"""
Hypersequent calculi GA and GŁ: proof search, closure synthesis and checking.

Search applies the invertible logical rules until every leaf is atomic, then
decides each leaf with the linear kernels. Valid leaves are closed by an
explicit structural derivation built from a λ certificate ((EW), (EC), (S),
(M), (ID), (Λ)); Ł leaves without one are closed by a certified semantic
closure node. The first invalid leaf yields a countermodel of the goal.

Repeated components are contracted by (EW), and a hypersequent whose atomic
components are already valid is closed by (EW) without decomposing the rest.
Leaf verdicts are cached for the length of one search.

The logical rule table in ``logical_premises`` is shared with the terminating
calculi and with the checker.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from hyperprover.core.budget import SearchBudget
from hyperprover.core.constants import (
    DEFAULT_MAX_CONSTRAINTS,
    CalculusId,
    Model,
    RuleId,
    Side,
)
from hyperprover.core.errors import RuleApplicationError
from hyperprover.core.events import TraceEmitter
from hyperprover.core.lp import (
    atomic_valid_a,
    atomic_valid_l,
    check_farkas,
    check_lambda,
    lambda_certificate,
)
from hyperprover.core.proof import CheckResult, ProofTree, Verdict
from hyperprover.core.semantics import Valuation, holds
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    Multiset,
    Sequent,
    nested_complexity,
    nested_less,
    symbol_count,
)
from hyperprover.core.syntax import BOT, Formula, Kind, normalize

logger = logging.getLogger(__name__)

LOGICAL_RULES: Dict[Tuple[Kind, Side], RuleId] = {
    (Kind.TOP, Side.LEFT): RuleId.T_L,
    (Kind.TOP, Side.RIGHT): RuleId.T_R,
    (Kind.NEG, Side.LEFT): RuleId.NEG_L,
    (Kind.NEG, Side.RIGHT): RuleId.NEG_R,
    (Kind.ARROW, Side.LEFT): RuleId.IMP_L,
    (Kind.ARROW, Side.RIGHT): RuleId.IMP_R,
    (Kind.PLUS, Side.LEFT): RuleId.PLUS_L,
    (Kind.PLUS, Side.RIGHT): RuleId.PLUS_R,
    (Kind.AND, Side.LEFT): RuleId.AND_L,
    (Kind.AND, Side.RIGHT): RuleId.AND_R,
    (Kind.OR, Side.LEFT): RuleId.OR_L,
    (Kind.OR, Side.RIGHT): RuleId.OR_R,
    (Kind.POS_ARROW, Side.LEFT): RuleId.POS_L,
    (Kind.POS_ARROW, Side.RIGHT): RuleId.POS_R,
}

A_PRINCIPALS = frozenset(
    {Kind.TOP, Kind.NEG, Kind.ARROW, Kind.PLUS, Kind.AND, Kind.OR, Kind.POS_ARROW}
)
L_PRINCIPALS = frozenset({Kind.AND, Kind.OR, Kind.POS_ARROW})

STRUCTURAL_A = frozenset({RuleId.ID, RuleId.LAMBDA, RuleId.EW, RuleId.EC, RuleId.S, RuleId.M})
STRUCTURAL_L = STRUCTURAL_A | {RuleId.BOT, RuleId.IW, RuleId.CLOSURE}
STRUCTURAL_A_T = frozenset(
    {RuleId.ID, RuleId.LAMBDA, RuleId.EW, RuleId.M, RuleId.SHIFT, RuleId.S_PRIME}
)
STRUCTURAL_L_T = STRUCTURAL_A_T | {RuleId.BOT, RuleId.IW, RuleId.BOT_R}


def is_abelian(calculus: CalculusId) -> bool:
    return calculus.value.startswith("ga")


def principal_kinds(calculus: CalculusId) -> frozenset:
    return A_PRINCIPALS if is_abelian(calculus) else L_PRINCIPALS


def is_principal(f: Formula, calculus: CalculusId) -> bool:
    return f.kind in principal_kinds(calculus)


def _with(seq: Sequent, left=(), right=()) -> Sequent:
    return Sequent(seq.left + Multiset(left), seq.right + Multiset(right))


def logical_premises(
    calculus: CalculusId, h: Hypersequent, index: int, side: Side, f: Formula
) -> List[Hypersequent]:
    """
    Premises of the logical rule with principal ``f`` on ``side`` of component ``index``.

    Raises:
        RuleApplicationError: ``f`` is not on that side or has no rule in the calculus
    """
    comp = h[index]
    if f not in comp.side(side.value):
        raise RuleApplicationError(side.value, f"{f} does not occur in component {index}")
    if not is_principal(f, calculus):
        raise RuleApplicationError(f.kind.value, f"no logical rule in {calculus.value}")
    if side is Side.LEFT:
        rest = Sequent(comp.left.remove(f), comp.right)
    else:
        rest = Sequent(comp.left, comp.right.remove(f))
    kind = f.kind
    left = side is Side.LEFT

    def one(*seqs: Sequent) -> List[Hypersequent]:
        return [h.replace(index, *seqs)]

    if kind is Kind.TOP:
        return one(rest)
    a = f.left
    if kind is Kind.NEG:
        return one(_with(rest, right=[a]) if left else _with(rest, left=[a]))
    b = f.right
    if kind is Kind.PLUS:
        return one(_with(rest, left=[a, b]) if left else _with(rest, right=[a, b]))
    if kind is Kind.ARROW:
        return one(_with(rest, left=[b], right=[a]) if left else _with(rest, left=[a], right=[b]))
    if kind is Kind.AND:
        if left:
            return one(_with(rest, left=[a]), _with(rest, left=[b]))
        return [h.replace(index, _with(rest, right=[a])), h.replace(index, _with(rest, right=[b]))]
    if kind is Kind.OR:
        if left:
            return [h.replace(index, _with(rest, left=[a])), h.replace(index, _with(rest, left=[b]))]
        return one(_with(rest, right=[a]), _with(rest, right=[b]))
    # positive implication
    if left:
        return one(_with(rest, left=[b], right=[a]), rest)
    return [h.replace(index, _with(rest, left=[a], right=[b])), h.replace(index, rest)]


def phase_measure(h: Hypersequent) -> Tuple[Multiset, int]:
    """(component complexities without atoms, symbol count)"""
    return nested_complexity_nonempty(h), symbol_count(h)


def nested_complexity_nonempty(h: Hypersequent) -> Multiset:
    return Multiset(m for m in nested_complexity(h, atoms=False) if m)


def measure_less(a: Tuple, b: Tuple) -> bool:
    """Lexicographic order whose first coordinate is the nested multiset order"""
    if nested_less(a[0], b[0]):
        return True
    if a[0] != b[0]:
        return False
    return a[1:] < b[1:]


def select_principal(
    h: Hypersequent, calculus: CalculusId, rng: Optional[random.Random] = None
) -> Optional[Tuple[int, Side, Formula]]:
    """Leftmost-outermost compound formula, left side first; random when ``rng`` is set"""
    candidates = []
    for i, comp in enumerate(h):
        for side in (Side.LEFT, Side.RIGHT):
            for f in comp.side(side.value).distinct():
                if is_principal(f, calculus):
                    if rng is None:
                        return i, side, f
                    candidates.append((i, side, f))
    if not candidates:
        return None
    return rng.choice(candidates)


# ---------------------------------------------------------------------------
# Structural closure
# ---------------------------------------------------------------------------


def prove_identity(seq: Sequent, focus: Optional[str] = None) -> ProofTree:
    """Derivation of Π ⊢ Π by (M), (ID) and (Λ)"""
    if seq.left != seq.right:
        raise RuleApplicationError(RuleId.M.value, f"{seq} is not of the form Π |- Π")
    conclusion = _wrap(Hypersequent((seq,)), focus)
    if not seq.left:
        return ProofTree(RuleId.LAMBDA, conclusion)
    if len(seq.left) == 1:
        return ProofTree(RuleId.ID, conclusion)
    first = seq.left.distinct()[0]
    atom = Sequent.of([first], [first])
    rest = Sequent(seq.left.remove(first), seq.right.remove(first))
    return ProofTree(
        RuleId.M,
        conclusion,
        [prove_identity(atom, focus), prove_identity(rest, focus)],
    )


def _wrap(h: Hypersequent, focus: Optional[str]):
    return h if focus is None else FocusedHypersequent(focus, h)


def synthesize_closure(g: Hypersequent, lam: List[int], bot_as_atom: bool = False) -> ProofTree:
    """
    Structural GA derivation of an atomic hypersequent from a λ certificate:
    (EW) drops λᵢ = 0 components, (EC) copies each component λᵢ − 1 times,
    (S) merges everything into Π ⊢ Π, and (M)/(ID)/(Λ) close it.

    Raises:
        RuleApplicationError: ``lam`` does not certify ``g``
    """
    if not check_lambda(g, lam, bot_as_atom):
        raise RuleApplicationError(RuleId.LAMBDA.value, f"{lam} is not a certificate for {g}")
    return _synthesize(g, list(lam))


def _synthesize(g: Hypersequent, lam: List[int]) -> ProofTree:
    for i, weight in enumerate(lam):
        if weight == 0:
            premise = g.without(i)
            return ProofTree(
                RuleId.EW, g, [_synthesize(premise, lam[:i] + lam[i + 1:])], params={"component": i}
            )
    for i, weight in enumerate(lam):
        if weight > 1:
            premise = g.with_components(g[i])
            rest = lam[:i] + [weight - 1] + lam[i + 1:] + [1]
            return ProofTree(RuleId.EC, g, [_synthesize(premise, rest)], params={"component": i})
    if len(g) > 1:
        premise = Hypersequent((g[0] + g[1],) + g.components[2:])
        return ProofTree(
            RuleId.S, g, [_synthesize(premise, [1] * len(premise))], params={"components": [0, 1]}
        )
    return prove_identity(g[0])


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


# A countermodel, or the closing rule with its certificate
LeafVerdict = Union[Valuation, Tuple[RuleId, Any]]


@dataclass
class HypersequentProver:
    """Proof search for GA and GŁ"""

    calculus: CalculusId = CalculusId.GA
    budget: SearchBudget = field(default_factory=SearchBudget.unlimited)
    emitter: Optional[TraceEmitter] = None
    order_seed: Optional[int] = None
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS
    verify_measures: bool = False
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.calculus = CalculusId(self.calculus)
        if self.calculus not in (CalculusId.GA, CalculusId.GL):
            raise ValueError(f"HypersequentProver handles ga and gl, not {self.calculus.value}")
        self._rng = random.Random(self.order_seed) if self.order_seed is not None else None
        self._leaf_cache: Dict[Tuple[Sequent, ...], LeafVerdict] = {}

    @property
    def abelian(self) -> bool:
        return self.calculus is CalculusId.GA

    def _count(self, key: str) -> None:
        self.stats[key] = self.stats.get(key, 0) + 1

    def prove(self, goal: Union[Hypersequent, Sequent]) -> Verdict:
        """
        Decide a hypersequent.

        Raises:
            DialectError: A connective outside the calculus
            SearchTimeout: The budget ran out
        """
        if isinstance(goal, Sequent):
            goal = Hypersequent((goal,))
        normal = goal.map_formulas(lambda f: normalize(f, self.calculus))
        self.budget.start()
        result = self._search(normal, 0)
        self.stats["steps"] = self.budget.steps
        if isinstance(result, ProofTree):
            logger.info(
                "search_finished",
                extra={"search_event": {"calculus": self.calculus.value, "verdict": "valid"}},
            )
            return Verdict.proved(result, **self.stats)
        model = self._verify_countermodel(goal, result)
        logger.info(
            "search_finished",
            extra={"search_event": {"calculus": self.calculus.value, "verdict": "invalid"}},
        )
        return Verdict.refuted(model, **self.stats)

    def _verify_countermodel(self, goal: Hypersequent, v: Valuation) -> Valuation:
        v = v.extended(goal.variables())
        if holds(goal, v):
            raise RuntimeError(f"Countermodel {v.render()} does not refute {goal}")
        return v

    def _search(self, h: Hypersequent, depth: int) -> Union[ProofTree, Valuation]:
        duplicate = duplicate_component(h)
        if duplicate is not None:
            self._count("contractions")
            result = self._search(h.without(duplicate), depth)
            if isinstance(result, Valuation):
                return result
            return ProofTree(RuleId.EW, h, [result], params={"component": duplicate})
        early = self._close_settled(h)
        if early is not None:
            return early
        pick = select_principal(h, self.calculus, self._rng)
        if pick is None:
            return self._close(h)
        self.budget.tick()
        index, side, f = pick
        rule = LOGICAL_RULES[(f.kind, side)]
        premises = logical_premises(self.calculus, h, index, side, f)
        if self.verify_measures:
            before = phase_measure(h)
            for premise in premises:
                if not measure_less(phase_measure(premise), before):
                    raise RuntimeError(f"{rule.value} did not decrease the complexity of {h}")
        if self.emitter is not None:
            self.emitter.record(self.calculus, rule, depth=depth)
        self._count("logical")
        proofs = []
        for premise in premises:
            result = self._search(premise, depth + 1)
            if isinstance(result, Valuation):
                return result
            proofs.append(result)
        params = {"component": index, "side": side.value, "principal": f}
        return ProofTree(rule, h, proofs, params=params)

    def _close_settled(self, h: Hypersequent) -> Optional[ProofTree]:
        """
        Close ``h`` by (EW) when its fully decomposed components are valid on
        their own; the remaining components are never decomposed.
        """
        settled = [
            i for i, comp in enumerate(h)
            if not any(is_principal(f, self.calculus) for f in comp.formulas())
        ]
        if not settled or len(settled) == len(h):
            return None
        closed = self._decide(Hypersequent(tuple(h[i] for i in settled)))
        if isinstance(closed, Valuation):
            return None
        self._count("early_closures")
        return weaken_to(h, settled, closed)

    def _close(self, h: Hypersequent) -> Union[ProofTree, Valuation]:
        self._count("leaves")
        return self._decide(h)

    def _decide(self, h: Hypersequent) -> Union[ProofTree, Valuation]:
        """Decide an atomic hypersequent; verdicts are cached per component tuple"""
        key = h.components
        cached = self._leaf_cache.get(key)
        if cached is None:
            cached = self._leaf_verdict(h)
            self._leaf_cache[key] = cached
        else:
            self._count("cache_hits")
        if isinstance(cached, Valuation):
            return cached
        rule, certificate = cached
        if rule is RuleId.CLOSURE:
            self._count("semantic_closures")
            return ProofTree(RuleId.CLOSURE, h, certificate=certificate)
        self._count("structural_closures")
        return synthesize_closure(h, certificate, bot_as_atom=not self.abelian)

    def _leaf_verdict(self, h: Hypersequent) -> LeafVerdict:
        if self.abelian:
            verdict = atomic_valid_a(h, self.max_constraints)
            if not verdict.valid:
                return verdict.countermodel
            return RuleId.LAMBDA, verdict.certificate["lambda"]
        lam = lambda_certificate(h, bot_as_atom=True)
        if lam is not None:
            return RuleId.LAMBDA, lam
        verdict = atomic_valid_l(h, self.max_constraints)
        if not verdict.valid:
            return verdict.countermodel
        return RuleId.CLOSURE, verdict.certificate


def duplicate_component(h: Hypersequent) -> Optional[int]:
    """Index of the first component that repeats an earlier one"""
    seen = set()
    for i, comp in enumerate(h):
        if comp in seen:
            return i
        seen.add(comp)
    return None


def weaken_to(h: Hypersequent, keep: List[int], proof: ProofTree) -> ProofTree:
    """Extend a proof of the ``keep`` components of ``h`` to ``h`` by (EW)"""
    steps = []
    current = h
    for i in sorted(set(range(len(h))) - set(keep), reverse=True):
        steps.append((current, i))
        current = current.without(i)
    for conclusion, i in reversed(steps):
        proof = ProofTree(RuleId.EW, conclusion, [proof], params={"component": i})
    return proof


def prove_ga(
    g: Union[Hypersequent, Sequent],
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    verify_measures: bool = False,
) -> Verdict:
    """Decide a hypersequent of A in GA"""
    prover = HypersequentProver(
        CalculusId.GA,
        budget or SearchBudget.unlimited(),
        emitter,
        order_seed,
        max_constraints,
        verify_measures,
    )
    return prover.prove(g)


def prove_gl(
    g: Union[Hypersequent, Sequent],
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    verify_measures: bool = False,
) -> Verdict:
    """Decide a hypersequent of Ł in GŁ"""
    prover = HypersequentProver(
        CalculusId.GL,
        budget or SearchBudget.unlimited(),
        emitter,
        order_seed,
        max_constraints,
        verify_measures,
    )
    return prover.prove(g)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def _same(a: Hypersequent, b: Hypersequent) -> bool:
    return a.as_multiset() == b.as_multiset()


def _single_extra(bigger: Multiset[Sequent], smaller: Multiset[Sequent]) -> Optional[Sequent]:
    """The one component ``bigger`` has on top of ``smaller``"""
    if len(bigger) != len(smaller) + 1 or not smaller.issubset(bigger):
        return None
    return (bigger - smaller).distinct()[0]


def _check_ew(concl: Hypersequent, prem: Hypersequent) -> bool:
    return len(concl) > 1 and _single_extra(concl.as_multiset(), prem.as_multiset()) is not None


def _check_ec(concl: Hypersequent, prem: Hypersequent) -> bool:
    extra = _single_extra(prem.as_multiset(), concl.as_multiset())
    return extra is not None and extra in concl.as_multiset()


def _check_s(concl: Hypersequent, prem: Hypersequent) -> bool:
    if len(prem) != len(concl) - 1:
        return False
    comps = concl.components
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            rest = Multiset(c for k, c in enumerate(comps) if k not in (i, j))
            if rest.add(comps[i] + comps[j]) == prem.as_multiset():
                return True
    return False


def _check_m(concl: Hypersequent, first: Hypersequent, second: Hypersequent) -> bool:
    if not (len(concl) == len(first) == len(second)):
        return False
    target = concl.as_multiset()
    for a in first.as_multiset().distinct():
        context = first.as_multiset().remove(a)
        for b in second.as_multiset().distinct():
            if second.as_multiset().remove(b) != context:
                continue
            if context.add(a + b) == target:
                return True
    return False


def _check_iw(concl: Hypersequent, prem: Hypersequent) -> bool:
    if len(concl) != len(prem):
        return False
    for i, comp in enumerate(concl):
        for f in comp.left.distinct():
            if _same(concl.replace(i, Sequent(comp.left.remove(f), comp.right)), prem):
                return True
    return False


def _check_bot_r(concl: Hypersequent, prem: Hypersequent) -> bool:
    if len(concl) != len(prem):
        return False
    for i, comp in enumerate(concl):
        for f in comp.right.distinct():
            if f.is_var:
                replaced = Sequent(comp.left, comp.right.remove(f).add(BOT))
                if _same(concl.replace(i, replaced), prem):
                    return True
    return False


def _check_logical(
    calculus: CalculusId, rule: RuleId, concl: Hypersequent, premises: List[Hypersequent]
) -> bool:
    got = Multiset(p.as_multiset() for p in premises)
    for i, comp in enumerate(concl):
        for side in (Side.LEFT, Side.RIGHT):
            for f in comp.side(side.value).distinct():
                if not is_principal(f, calculus) or LOGICAL_RULES.get((f.kind, side)) is not rule:
                    continue
                expected = logical_premises(calculus, concl, i, side, f)
                if Multiset(p.as_multiset() for p in expected) == got:
                    return True
    return False


def _single(h: Hypersequent) -> Optional[Sequent]:
    return h[0] if len(h) == 1 else None


def _check_axiom(rule: RuleId, h: Hypersequent) -> bool:
    seq = _single(h)
    if seq is None:
        return False
    if rule is RuleId.LAMBDA:
        return not seq.left and not seq.right
    if rule is RuleId.ID:
        return len(seq.left) == 1 and seq.left == seq.right
    # (⊥): ⊥ ⊢ A
    return seq.left == Multiset([BOT]) and len(seq.right) == 1


def _rule_set(calculus: CalculusId) -> frozenset:
    logical = {LOGICAL_RULES[key] for key in LOGICAL_RULES if key[0] in principal_kinds(calculus)}
    structural = {
        CalculusId.GA: STRUCTURAL_A,
        CalculusId.GL: STRUCTURAL_L,
        CalculusId.GA_T: STRUCTURAL_A_T,
        CalculusId.GL_T: STRUCTURAL_L_T,
    }[calculus]
    return frozenset(logical) | structural


def check_node(node: ProofTree, calculus: CalculusId) -> Optional[str]:
    """None when ``node`` instantiates a rule of the calculus, else the reason"""
    from hyperprover.core.terminating import check_s_prime

    focused = calculus in (CalculusId.GA_T, CalculusId.GL_T)
    rule = node.rule
    if rule not in _rule_set(calculus):
        return f"rule {rule.value} is not part of {calculus.value}"
    concl = node.conclusion
    premises = node.premises
    expected_type = FocusedHypersequent if focused else Hypersequent
    if not isinstance(concl, expected_type) or any(
        not isinstance(p.conclusion, expected_type) for p in premises
    ):
        return f"{calculus.value} proofs use {expected_type.__name__} conclusions"

    if focused:
        if rule is RuleId.SHIFT:
            if len(premises) != 1:
                return "(shift) has one premise"
            prem = premises[0].conclusion
            if not _same(prem.body, concl.body):
                return "(shift) must keep the hypersequent"
            names = concl.body.variables()
            if concl.focus in names:
                return f"(shift) needs {concl.focus} absent from the hypersequent"
            if prem.focus not in names:
                return f"(shift) needs {prem.focus} to occur in the hypersequent"
            return None
        if any(p.conclusion.focus != concl.focus for p in premises):
            return "premises must keep the focus"
        if rule is RuleId.S_PRIME:
            if len(premises) != 1:
                return "(S') has one premise"
            return check_s_prime(concl, premises[0].conclusion)
        body = concl.body
        prem_bodies = [p.conclusion.body for p in premises]
    else:
        body = concl
        prem_bodies = [p.conclusion for p in premises]

    arity = {
        RuleId.ID: 0, RuleId.LAMBDA: 0, RuleId.BOT: 0, RuleId.CLOSURE: 0,
        RuleId.EW: 1, RuleId.EC: 1, RuleId.S: 1, RuleId.IW: 1, RuleId.BOT_R: 1, RuleId.M: 2,
    }
    if rule in arity and len(prem_bodies) != arity[rule]:
        return f"({rule.value}) takes {arity[rule]} premises, found {len(prem_bodies)}"

    if rule in (RuleId.ID, RuleId.LAMBDA, RuleId.BOT):
        return None if _check_axiom(rule, body) else f"not an instance of axiom ({rule.value})"
    if rule is RuleId.CLOSURE:
        return _check_closure(node, body)
    if rule is RuleId.EW:
        return None if _check_ew(body, prem_bodies[0]) else "premise is not the conclusion minus one component"
    if rule is RuleId.EC:
        return None if _check_ec(body, prem_bodies[0]) else "premise does not duplicate a component"
    if rule is RuleId.S:
        return None if _check_s(body, prem_bodies[0]) else "premise does not merge two components"
    if rule is RuleId.M:
        ok = _check_m(body, *prem_bodies) or _check_m(body, prem_bodies[1], prem_bodies[0])
        return None if ok else "conclusion is not the mix of the premises"
    if rule is RuleId.IW:
        return None if _check_iw(body, prem_bodies[0]) else "premise does not drop one left formula"
    if rule is RuleId.BOT_R:
        return None if _check_bot_r(body, prem_bodies[0]) else "premise does not replace a right variable by bot"
    if _check_logical(calculus, rule, body, prem_bodies):
        return None
    return f"premises do not match ({rule.value}) for any principal formula"


def _check_closure(node: ProofTree, h: Hypersequent) -> Optional[str]:
    if node.premises:
        return "closure nodes are leaves"
    cert = node.certificate or {}
    if cert.get("kind") != "farkas":
        return "closure needs a farkas certificate"
    try:
        if not check_farkas(h, cert):
            return "farkas certificate does not verify"
        if atomic_valid_l(h).valid is not True:
            return "closure leaf is not valid in [-1,0]"
    except RuleApplicationError as exc:
        return str(exc)
    return None


def check_proof(pt: ProofTree, calculus: Union[CalculusId, str]) -> CheckResult:
    """
    Check every node of a proof against the rule schemas of its calculus.

    Labelled and single-sequent calculi are dispatched to their own checkers.
    """
    calculus = CalculusId(calculus)
    if calculus in (CalculusId.GA_L, CalculusId.GL_L, CalculusId.GA_I):
        from hyperprover.core.labelled import check_labelled_proof

        return check_labelled_proof(pt, calculus)
    if calculus is CalculusId.GA_S:
        from hyperprover.core.single_sequent import check_gas_proof

        return check_gas_proof(pt)
    if calculus is CalculusId.GL_S:
        from hyperprover.core.single_sequent import check_gls_proof

        return check_gls_proof(pt)
    for path, node in pt.walk():
        try:
            problem = check_node(node, calculus)
        except (RuleApplicationError, ValueError) as exc:
            problem = str(exc)
        if problem is not None:
            logger.debug("check_failed at %s: %s", path, problem)
            return CheckResult.fail(path, problem)
    return CheckResult.ok()


def countermodel_model(calculus: CalculusId) -> Model:
    return Model.Q if is_abelian(calculus) else Model.UNIT
