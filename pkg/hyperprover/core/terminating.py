"""
Terminating focused calculi GA_t and GŁ_t.

A focused hypersequent [p]G carries a variable p. Logical rules keep the focus.
Atomic leaves are closed with (M)/(ID) isolation of matched p pairs, (S')
to cancel p between a left-surplus and a right-surplus component, (EW) or
(IW)/(bot,r) to drop the remaining surplus, and (shift) once p is gone.

Every edge strictly lowers (c, n, d, s) lexicographically:

- c: nested complexity of the non-atomic formulas
- n: number of variables of G together with the focus
- d: Σ |count(Γᵢ, p) − count(Δᵢ, p)|
- s: symbol count
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from hyperprover.core.budget import SearchBudget
from hyperprover.core.constants import (
    DEFAULT_MAX_CONSTRAINTS,
    CalculusId,
    Keep,
    RuleId,
    Side,
)
from hyperprover.core.errors import RuleApplicationError
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import (
    LOGICAL_RULES,
    _same,
    logical_premises,
    measure_less,
    nested_complexity_nonempty,
    prove_identity,
    select_principal,
)
from hyperprover.core.lp import atomic_valid_a, atomic_valid_l
from hyperprover.core.proof import ProofTree, Verdict
from hyperprover.core.semantics import Valuation, holds
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    Sequent,
    d_measure,
    symbol_count,
)
from hyperprover.core.syntax import BOT, Kind, natural_key, normalize

logger = logging.getLogger(__name__)

Measure = Tuple


def focused_measure(fh: FocusedHypersequent) -> Measure:
    names = set(fh.body.variables()) | {fh.focus}
    return (
        nested_complexity_nonempty(fh.body),
        len(names),
        d_measure(fh),
        symbol_count(fh.body),
    )


def _render_measure(m: Measure) -> List:
    inner = sorted(sorted(c) for c in m[0])
    return [inner, m[1], m[2], m[3]]


def apply_s_prime(fh: FocusedHypersequent, i: int, j: int, keep: Union[Keep, str]) -> FocusedHypersequent:
    """
    (S') on components i = Γ₁, n·p ⊢ Δ₁ and j = Γ₂ ⊢ Δ₂, m·p.

    The pair is replaced by mΓ₁, nΓ₂ ⊢ mΔ₁, nΔ₂ together with component i
    (``keep=first``) or component j (``keep=second``).

    Raises:
        RuleApplicationError: The components do not have that shape
    """
    keep = Keep(keep)
    body = fh.body
    p = fh.focus_formula
    if i == j or not (0 <= i < len(body) and 0 <= j < len(body)):
        raise RuleApplicationError(RuleId.S_PRIME.value, f"bad component pair {i}, {j}")
    first, second = body[i], body[j]
    n = first.left.count(p)
    m = second.right.count(p)
    if n == 0 or first.right.count(p):
        raise RuleApplicationError(RuleId.S_PRIME.value, f"component {i} needs {fh.focus} on the left only")
    if m == 0 or second.left.count(p):
        raise RuleApplicationError(RuleId.S_PRIME.value, f"component {j} needs {fh.focus} on the right only")
    gamma1 = first.left.remove_all(p)
    delta2 = second.right.remove_all(p)
    merged = Sequent(
        gamma1.scale(m) + second.left.scale(n),
        first.right.scale(m) + delta2.scale(n),
    )
    kept = first if keep is Keep.FIRST else second
    return fh.with_body(body.swap((i, j), merged, kept))


def check_s_prime(concl: FocusedHypersequent, prem: FocusedHypersequent) -> Optional[str]:
    """None when ``prem`` follows from ``concl`` by some (S') instance"""
    p = concl.focus_formula
    body = concl.body
    lefts = [i for i, c in enumerate(body) if c.left.count(p) and not c.right.count(p)]
    rights = [j for j, c in enumerate(body) if c.right.count(p) and not c.left.count(p)]
    for i in lefts:
        for j in rights:
            for keep in Keep:
                if _same(apply_s_prime(concl, i, j, keep).body, prem.body):
                    return None
    return "premise is not an (S') instance of the conclusion"


@dataclass
class TerminatingProver:
    """Focused proof search for GA_t and GŁ_t"""

    calculus: CalculusId = CalculusId.GA_T
    budget: SearchBudget = field(default_factory=SearchBudget.unlimited)
    emitter: Optional[TraceEmitter] = None
    order_seed: Optional[int] = None
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.calculus = CalculusId(self.calculus)
        if self.calculus not in (CalculusId.GA_T, CalculusId.GL_T):
            raise ValueError(f"TerminatingProver handles ga_t and gl_t, not {self.calculus.value}")
        self._rng = random.Random(self.order_seed) if self.order_seed is not None else None

    @property
    def abelian(self) -> bool:
        return self.calculus is CalculusId.GA_T

    def prove(
        self,
        goal: Union[FocusedHypersequent, Hypersequent, Sequent],
        focus: Optional[str] = None,
    ) -> Verdict:
        """
        Decide a (focused) hypersequent. Without an explicit focus the first
        variable in natural order is used.

        Raises:
            DialectError: A connective outside the calculus
            SearchTimeout: The budget ran out
        """
        if isinstance(goal, Sequent):
            goal = Hypersequent((goal,))
        if isinstance(goal, Hypersequent):
            names = sorted(goal.variables(), key=natural_key)
            goal = FocusedHypersequent(focus or (names[0] if names else "p"), goal)
        elif focus is not None:
            goal = goal.with_focus(focus)
        normal = goal.with_body(goal.body.map_formulas(lambda f: normalize(f, self.calculus)))
        self.budget.start()
        result = self._search(normal, 0)
        self.stats["steps"] = self.budget.steps
        if isinstance(result, ProofTree):
            return Verdict.proved(result, **self.stats)
        model = result.extended(goal.body.variables())
        if holds(goal, model):
            raise RuntimeError(f"Countermodel {model.render()} does not refute {goal}")
        return Verdict.refuted(model, **self.stats)

    # -- bookkeeping --------------------------------------------------------

    def _edge(self, rule: RuleId, concl: FocusedHypersequent, premises: List[FocusedHypersequent], depth: int):
        before = focused_measure(concl)
        for premise in premises:
            if not measure_less(focused_measure(premise), before):
                raise RuntimeError(f"({rule.value}) did not decrease the measure at {concl}")
        self.stats[rule.value] = self.stats.get(rule.value, 0) + 1
        if self.emitter is not None:
            self.emitter.record(self.calculus, rule, measure=_render_measure(before), depth=depth)

    # -- logical phase ------------------------------------------------------

    def _search(self, fh: FocusedHypersequent, depth: int) -> Union[ProofTree, Valuation]:
        self.budget.tick()
        pick = select_principal(fh.body, self.calculus, self._rng)
        if pick is None:
            proof = self._atomic(fh, depth)
            if proof is not None:
                return proof
            return self._countermodel(fh)
        index, side, f = pick
        rule = LOGICAL_RULES[(f.kind, side)]
        premises = [fh.with_body(b) for b in logical_premises(self.calculus, fh.body, index, side, f)]
        self._edge(rule, fh, premises, depth)
        proofs = []
        for premise in premises:
            result = self._search(premise, depth + 1)
            if isinstance(result, Valuation):
                return result
            proofs.append(result)
        params = {"component": index, "side": side.value, "principal": f}
        return ProofTree(rule, fh, proofs, params=params)

    def _countermodel(self, fh: FocusedHypersequent) -> Valuation:
        kernel = atomic_valid_a if self.abelian else atomic_valid_l
        verdict = kernel(fh.body, self.max_constraints)
        if verdict.valid:
            raise RuntimeError(f"Focused search failed on the valid leaf {fh}")
        return verdict.countermodel

    # -- atomic phase -------------------------------------------------------

    def _step(
        self, rule: RuleId, fh: FocusedHypersequent, premises: List[FocusedHypersequent], depth: int, **params
    ) -> Optional[ProofTree]:
        self._edge(rule, fh, premises, depth)
        proofs = []
        for premise in premises:
            proof = self._atomic(premise, depth + 1)
            if proof is None:
                return None
            proofs.append(proof)
        return ProofTree(rule, fh, proofs, params=params)

    def _atomic(self, fh: FocusedHypersequent, depth: int) -> Optional[ProofTree]:
        self.budget.tick()
        body = fh.body
        p = fh.focus_formula

        for i, comp in enumerate(body):
            if not comp.left and not comp.right:
                if len(body) == 1:
                    return ProofTree(RuleId.LAMBDA, fh)
                return self._drop_other(fh, i, depth)

        for i, comp in enumerate(body):
            if comp.left.count(p) and comp.right.count(p):
                isolated = Sequent.of([p], [p])
                if comp == isolated:
                    if len(body) == 1:
                        return ProofTree(RuleId.ID, fh)
                    return self._drop_other(fh, i, depth)
                rest = Sequent(comp.left.remove(p), comp.right.remove(p))
                premises = [fh.with_body(body.replace(i, rest)), fh.with_body(body.replace(i, isolated))]
                return self._step(RuleId.M, fh, premises, depth, component=i)

        if fh.focus not in body.variables():
            names = sorted(body.variables(), key=natural_key)
            if names:
                return self._step(RuleId.SHIFT, fh, [fh.with_focus(names[0])], depth)
            return self._close_constant(fh, depth)

        lefts = [i for i, comp in enumerate(body) if comp.left.count(p)]
        rights = [j for j, comp in enumerate(body) if comp.right.count(p)]
        if lefts and rights:
            i, j = lefts[0], rights[0]
            for keep in Keep:
                premise = apply_s_prime(fh, i, j, keep)
                self.stats["s_prime_tries"] = self.stats.get("s_prime_tries", 0) + 1
                proof = self._step(RuleId.S_PRIME, fh, [premise], depth, components=[i, j], keep=keep.value)
                if proof is not None:
                    return proof
            return None
        index = (lefts or rights)[0]
        if self.abelian:
            if len(body) == 1:
                return None
            return self._step(RuleId.EW, fh, [fh.with_body(body.without(index))], depth, component=index)
        comp = body[index]
        if lefts:
            premise = fh.with_body(body.replace(index, Sequent(comp.left.remove(p), comp.right)))
            return self._step(RuleId.IW, fh, [premise], depth, component=index)
        premise = fh.with_body(body.replace(index, Sequent(comp.left, comp.right.remove(p).add(BOT))))
        return self._step(RuleId.BOT_R, fh, [premise], depth, component=index)

    def _drop_other(self, fh: FocusedHypersequent, keep: int, depth: int) -> Optional[ProofTree]:
        other = 0 if keep != 0 else 1
        return self._step(RuleId.EW, fh, [fh.with_body(fh.body.without(other))], depth, component=other)

    def _close_constant(self, fh: FocusedHypersequent, depth: int) -> Optional[ProofTree]:
        """Components ⊥^a ⊢ ⊥^b: keep one with a ≥ b, weaken it down to ⊥^b ⊢ ⊥^b"""
        body = fh.body
        target = next((i for i, comp in enumerate(body) if len(comp.left) >= len(comp.right)), None)
        if target is None:
            return None
        if len(body) > 1:
            return self._drop_other(fh, target, depth)
        comp = body[0]
        if len(comp.left) > len(comp.right):
            premise = fh.with_body(Hypersequent((Sequent(comp.left.remove(BOT), comp.right),)))
            return self._step(RuleId.IW, fh, [premise], depth, component=0)
        return prove_identity(comp, fh.focus)


def prove_ga_t(
    g: Union[FocusedHypersequent, Hypersequent, Sequent],
    focus: Optional[str] = None,
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Verdict:
    prover = TerminatingProver(
        CalculusId.GA_T, budget or SearchBudget.unlimited(), emitter, order_seed, max_constraints
    )
    return prover.prove(g, focus)


def prove_gl_t(
    g: Union[FocusedHypersequent, Hypersequent, Sequent],
    focus: Optional[str] = None,
    budget: Optional[SearchBudget] = None,
    emitter: Optional[TraceEmitter] = None,
    order_seed: Optional[int] = None,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Verdict:
    prover = TerminatingProver(
        CalculusId.GL_T, budget or SearchBudget.unlimited(), emitter, order_seed, max_constraints
    )
    return prover.prove(g, focus)
