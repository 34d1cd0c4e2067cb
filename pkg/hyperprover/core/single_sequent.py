"""
Single-sequent calculi GA_s and GŁ_s.

Neither calculus is searched directly: the (C) rule multiplies a sequent by
an unbounded n. GA_s proofs are obtained by elaborating a GA_i proof. The
logical steps are replayed rule for rule on the unlabelled sequents (the
store supplies the B ⇒ A formulas that (⇒,l) leaves behind), and every
(success) leaf is closed by (C), (M), (W) and decompositions rebuilt from
the branch that led to it.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from hyperprover.core.constants import CalculusId, RuleId, Side
from hyperprover.core.errors import ElaborationError, RuleApplicationError
from hyperprover.core.hyper_calculi import A_PRINCIPALS, LOGICAL_RULES
from hyperprover.core.labelled import check_labelled_proof, match_rule
from hyperprover.core.proof import CheckResult, ProofTree
from hyperprover.core.structures import (
    Label,
    LabelledFormula,
    LabelledSequent,
    Multiset,
    Sequent,
    apply_labelling,
)
from hyperprover.core.syntax import BOT, TOP, Formula, Kind, pos_arrow

logger = logging.getLogger(__name__)

SINGLE_CALCULI = frozenset({CalculusId.GA_S, CalculusId.GL_S})
STRUCTURAL_S = frozenset({RuleId.ID, RuleId.LAMBDA, RuleId.W, RuleId.C, RuleId.M})


def principal_kinds(calculus: CalculusId) -> frozenset:
    return A_PRINCIPALS if calculus is CalculusId.GA_S else frozenset({Kind.POS_ARROW})


def sequent_premises(
    calculus: Union[CalculusId, str], s: Sequent, side: Union[Side, str], f: Formula
) -> List[Sequent]:
    """
    Premises of the GA_s / GŁ_s logical rule with principal ``f``.

    Raises:
        RuleApplicationError: ``f`` is absent or not principal in the calculus
    """
    calculus = CalculusId(calculus)
    side = Side(side)
    rule = LOGICAL_RULES.get((f.kind, side))
    if rule is None or f.kind not in principal_kinds(calculus):
        raise RuleApplicationError(f.kind.value, f"{f} is not principal in {calculus.value}")
    if f not in s.side(side.value):
        raise RuleApplicationError(rule.value, f"{f} does not occur on the {side.value} side")
    on_left = side is Side.LEFT
    left = s.left.remove(f) if on_left else s.left
    right = s.right if on_left else s.right.remove(f)

    def seq(lhs=(), rhs=()) -> Sequent:
        return Sequent(left.add(*lhs), right.add(*rhs))

    kind = f.kind
    if kind is Kind.TOP:
        return [seq()]
    a, b = f.left, f.right
    if kind is Kind.NEG:
        return [seq(rhs=[a])] if on_left else [seq(lhs=[a])]
    if kind is Kind.PLUS:
        return [seq(lhs=[a, b])] if on_left else [seq(rhs=[a, b])]
    if kind is Kind.ARROW:
        return [seq(lhs=[b], rhs=[a])] if on_left else [seq(lhs=[a], rhs=[b])]
    if kind is Kind.POS_ARROW:
        if on_left:
            return [seq(lhs=[b, pos_arrow(b, a)], rhs=[a])]
        return [seq(), seq(lhs=[a], rhs=[b])]
    if kind is Kind.AND:
        if on_left:
            return [seq(lhs=[a, pos_arrow(a, b)])]
        return [seq(rhs=[a]), seq(rhs=[b])]
    if on_left:
        return [seq(lhs=[a]), seq(lhs=[b])]
    return [seq(lhs=[pos_arrow(b, a)], rhs=[a])]


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def _rules(calculus: CalculusId) -> frozenset:
    logical = {LOGICAL_RULES[(kind, side)] for kind in principal_kinds(calculus) for side in Side}
    extra = {RuleId.BOT} if calculus is CalculusId.GL_S else set()
    return frozenset(logical) | STRUCTURAL_S | extra


def _one_more_left(concl: Sequent, prem: Sequent) -> Optional[Formula]:
    if concl.right != prem.right or not prem.left.issubset(concl.left):
        return None
    extra = concl.left - prem.left
    return extra.distinct()[0] if len(extra) == 1 else None


def _check_c(node: ProofTree, concl: Sequent, prem: Sequent) -> Optional[str]:
    size = len(concl.left) + len(concl.right)
    if "n" in node.params:
        try:
            n = int(node.params["n"])
        except (TypeError, ValueError):
            return "(C) needs an integer n"
    elif size:
        n = (len(prem.left) + len(prem.right)) // size
    else:
        n = 1
    if n < 1:
        return "(C) needs n > 0"
    if prem != concl.scale(n):
        return f"premise is not {n} copies of the conclusion"
    return None


def check_sequent_node(node: ProofTree, calculus: CalculusId) -> Optional[str]:
    """None when ``node`` instantiates a GA_s / GŁ_s rule, else the reason"""
    rule = node.rule
    if rule not in _rules(calculus):
        return f"rule {rule.value} is not part of {calculus.value}"
    concl = node.conclusion
    if not isinstance(concl, Sequent) or any(not isinstance(p.conclusion, Sequent) for p in node.premises):
        return f"{calculus.value} proofs use sequent conclusions"
    prems = [p.conclusion for p in node.premises]
    arity = {RuleId.ID: 0, RuleId.LAMBDA: 0, RuleId.BOT: 0, RuleId.W: 1, RuleId.C: 1, RuleId.M: 2}
    if rule in arity and len(prems) != arity[rule]:
        return f"({rule.value}) takes {arity[rule]} premises, found {len(prems)}"
    if rule is RuleId.ID:
        ok = len(concl.left) == 1 and concl.left == concl.right
        return None if ok else "not an instance of A |- A"
    if rule is RuleId.LAMBDA:
        return None if not concl.left and not concl.right else "(Lambda) concludes the empty sequent"
    if rule is RuleId.BOT:
        ok = concl.left == Multiset([BOT]) and len(concl.right) == 1
        return None if ok else "not an instance of bot |- A"
    if rule is RuleId.W:
        extra = _one_more_left(concl, prems[0])
        if extra is None:
            return "(W) adds exactly one formula on the left"
        if calculus is CalculusId.GA_S and extra.kind is not Kind.POS_ARROW:
            return "(W) in ga_s only adds =>-formulas"
        return None
    if rule is RuleId.C:
        return _check_c(node, concl, prems[0])
    if rule is RuleId.M:
        return None if concl == prems[0] + prems[1] else "conclusion is not the mix of the premises"
    for side in Side:
        for f in concl.side(side.value).distinct():
            if f.kind not in principal_kinds(calculus) or LOGICAL_RULES.get((f.kind, side)) is not rule:
                continue
            expected = sequent_premises(calculus, concl, side, f)
            if len(expected) == len(prems) and (expected == prems or expected == prems[::-1]):
                return None
    return f"premises do not match ({rule.value}) for any principal formula"


def _check(pt: ProofTree, calculus: CalculusId) -> CheckResult:
    for path, node in pt.walk():
        try:
            problem = check_sequent_node(node, calculus)
        except (RuleApplicationError, ValueError) as exc:
            problem = str(exc)
        if problem is not None:
            logger.debug("check_failed at %s: %s", path, problem)
            return CheckResult.fail(path, problem)
    return CheckResult.ok()


def check_gas_proof(pt: ProofTree) -> CheckResult:
    """Check a GA_s proof node by node"""
    return _check(pt, CalculusId.GA_S)


def check_gls_proof(pt: ProofTree) -> CheckResult:
    """Check a GŁ_s proof node by node"""
    return _check(pt, CalculusId.GL_S)


# ---------------------------------------------------------------------------
# Proof builders
# ---------------------------------------------------------------------------


def _minus(ms: Multiset[Formula], items: Iterable[Formula]) -> Multiset[Formula]:
    for item in items:
        if item not in ms:
            raise ElaborationError(f"{item} is missing while building a ga_s step")
        ms = ms.remove(item)
    return ms


def _lower(
    rule: RuleId,
    premises: List[ProofTree],
    principal: Formula,
    side: Side,
    left: Iterable[Formula] = (),
    right: Iterable[Formula] = (),
) -> ProofTree:
    """Logical step whose conclusion is the first premise minus its active formulas plus the principal"""
    base = premises[0].conclusion
    lhs = _minus(base.left, left)
    rhs = _minus(base.right, right)
    if side is Side.LEFT:
        lhs = lhs.add(principal)
    else:
        rhs = rhs.add(principal)
    params = {"side": side.value, "principal": principal}
    return ProofTree(rule, Sequent(lhs, rhs), premises, params=params)


def _axiom(f: Formula) -> ProofTree:
    return ProofTree(RuleId.ID, Sequent.of([f], [f]))


def _empty() -> ProofTree:
    return ProofTree(RuleId.LAMBDA, Sequent.of())


def _weaken(p: ProofTree, f: Formula) -> ProofTree:
    s = p.conclusion
    return ProofTree(RuleId.W, Sequent(s.left.add(f), s.right), [p], params={"formula": f})


def _mix(proofs: Iterable[ProofTree]) -> ProofTree:
    """Right-nested (M) over the given proofs; empty (Λ) leaves are dropped"""
    parts = [p for p in proofs if not (p.rule is RuleId.LAMBDA and not p.premises)]
    if not parts:
        return _empty()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = ProofTree(RuleId.M, p.conclusion + out.conclusion, [p, out])
    return out


def _identity(s: Sequent) -> ProofTree:
    """Π, t.. ⊢ Π, t.. by (M), (ID), (Λ) and the t rules"""
    left = s.left.remove_all(TOP)
    right = s.right.remove_all(TOP)
    if left != right:
        raise ElaborationError(f"{s} is not of the form Pi |- Pi")
    out = _mix(_axiom(f) for f in left)
    for _ in range(s.left.count(TOP)):
        out = _lower(RuleId.T_L, [out], TOP, Side.LEFT)
    for _ in range(s.right.count(TOP)):
        out = _lower(RuleId.T_R, [out], TOP, Side.RIGHT)
    return out


# ---------------------------------------------------------------------------
# Decomposition traces
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class Trace:
    """
    One formula occurrence followed down a branch.

    ``choice`` is the premise index taken by two-premise rules and ``store``
    the formula (⇒,l) pushed on the store; children follow the order the
    twin builders expect.
    """

    formula: Formula
    side: Side
    label: Label
    rule: Optional[RuleId] = None
    children: List["Trace"] = field(default_factory=list)
    choice: int = 0
    store: Optional[Formula] = None
    fresh: Optional[str] = None

    @property
    def processed(self) -> bool:
        return self.rule is not None


def _children(t: Trace, lf: LabelledFormula, fresh: Optional[str], choice: int) -> List[Trace]:
    f = lf.formula
    kind = f.kind
    if kind is Kind.TOP:
        return []
    a, b = f.left, f.right
    x = lf.label
    left, right = Side.LEFT, Side.RIGHT
    on_left = t.side is left
    if kind is Kind.NEG:
        return [Trace(a, right if on_left else left, x)]
    if kind is Kind.PLUS:
        return [Trace(a, t.side, x), Trace(b, t.side, x)]
    if kind is Kind.ARROW:
        if on_left:
            return [Trace(b, left, x), Trace(a, right, x)]
        return [Trace(a, left, x), Trace(b, right, x)]
    if kind is Kind.POS_ARROW:
        if on_left:
            xy = x | {fresh}
            return [Trace(b, left, xy), Trace(a, right, xy)]
        return [Trace(a, left, x), Trace(b, right, x)] if choice == 0 else []
    if kind is Kind.AND:
        if on_left:
            return [Trace(a, left, x), Trace(pos_arrow(a, b), left, x)]
        return [Trace(a if choice == 0 else b, right, x)]
    if on_left:
        return [Trace(a if choice == 0 else b, left, x)]
    return [Trace(pos_arrow(b, a), left, x), Trace(a, right, x)]


def build_traces(path: List[Tuple[ProofTree, int]], root: LabelledSequent) -> List[Trace]:
    """
    Replay a root-to-leaf path of a GA_i proof, recording how each formula of
    the root decomposes on the way down.

    Raises:
        ElaborationError: A step on the path is not a GA_i rule instance
    """
    roots: List[Trace] = []
    pool: Dict[Tuple[Side, Label, Formula], List[Trace]] = {}

    def push(t: Trace) -> None:
        pool.setdefault((t.side, t.label, t.formula), []).append(t)

    for side in Side:
        for lf in root.side(side.value):
            t = Trace(lf.formula, side, lf.label)
            roots.append(t)
            push(t)
    for node, index in path:
        match = match_rule(node, CalculusId.GA_I)
        if match is None:
            raise ElaborationError(f"({node.rule.value}) at {node.conclusion} is not a ga_i step")
        side, lf, fresh, expected = match
        taken = node.premises[index].conclusion
        choice = expected.index(taken) if len(expected) > 1 else 0
        open_traces = pool.get((side, lf.label, lf.formula)) or []
        if not open_traces:
            raise ElaborationError(f"No open occurrence of {lf} on the branch")
        t = open_traces.pop(0)
        t.rule = node.rule
        t.choice = choice
        t.fresh = fresh
        if (lf.formula.kind, side) == (Kind.POS_ARROW, Side.LEFT):
            t.store = pos_arrow(lf.formula.right, lf.formula.left)
        t.children = _children(t, lf, fresh, choice)
        for child in t.children:
            push(child)
    return roots


# ---------------------------------------------------------------------------
# Twin derivations
#
# For a trace T write P(T) for the left leaves it produced plus the stores of
# its (⇒,l) steps and M(T) for its right leaves.
#   left_twin(T)  proves  P(T) ⊢ M(T), F     (T a left occurrence of F)
#   right_twin(T) proves  F, P(T) ⊢ M(T)     (T a right occurrence of F)
#   neg_left(T)   proves  P(T) ⊢ M(T)        (T a processed left ⇒-occurrence)
#   cross(L, R)   proves  P(L), P(R) ⊢ M(L), M(R)  (L left, R right, same F)
# ---------------------------------------------------------------------------


def _unprocessed(t: Trace) -> Optional[ProofTree]:
    if t.processed:
        return None
    if not t.formula.is_atomic:
        raise ElaborationError(f"{t.formula} reached a (success) leaf undecomposed")
    return _axiom(t.formula)


def left_twin(t: Trace) -> ProofTree:
    leaf = _unprocessed(t)
    if leaf is not None:
        return leaf
    f = t.formula
    kind = f.kind
    right = Side.RIGHT
    if kind is Kind.TOP:
        return _lower(RuleId.T_R, [_empty()], f, right)
    a, b = f.left, f.right
    if kind is Kind.NEG:
        return _lower(RuleId.NEG_R, [right_twin(t.children[0])], f, right, left=[a])
    if kind is Kind.PLUS:
        core = _mix([left_twin(t.children[0]), left_twin(t.children[1])])
        return _lower(RuleId.PLUS_R, [core], f, right, right=[a, b])
    if kind is Kind.ARROW:
        tb, ta = t.children
        core = _mix([right_twin(ta), left_twin(tb)])
        return _lower(RuleId.IMP_R, [core], f, right, left=[a], right=[b])
    if kind is Kind.POS_ARROW:
        tb, ta = t.children
        added = _weaken(_mix([left_twin(tb), right_twin(ta)]), t.store)
        step = _lower(RuleId.POS_R, [added, neg_left(t)], f, right, left=[a], right=[b])
        step.premises.reverse()
        return step
    if kind is Kind.AND:
        tc, td = t.children
        first = _mix([left_twin(tc), neg_left(td)])
        db, da = _processed(td).children
        second = _weaken(_mix([cross(tc, da), left_twin(db)]), td.store)
        return _lower(RuleId.AND_R, [first, second], f, right, right=[a])
    # Kind.OR, left occurrence: (∨,r) from Γ, B⇒A ⊢ Δ, A
    (tx,) = t.children
    if t.choice == 0:
        core = _weaken(left_twin(tx), pos_arrow(b, a))
    else:
        swapped = _weaken(_mix([left_twin(tx), _axiom(a)]), pos_arrow(a, b))
        core = _lower(RuleId.POS_L, [swapped], pos_arrow(b, a), Side.LEFT, left=[a, pos_arrow(a, b)], right=[b])
    return _lower(RuleId.OR_R, [core], f, right, left=[pos_arrow(b, a)], right=[a])


def right_twin(t: Trace) -> ProofTree:
    leaf = _unprocessed(t)
    if leaf is not None:
        return leaf
    f = t.formula
    kind = f.kind
    left = Side.LEFT
    if kind is Kind.TOP:
        return _lower(RuleId.T_L, [_empty()], f, left)
    a, b = f.left, f.right
    if kind is Kind.NEG:
        return _lower(RuleId.NEG_L, [left_twin(t.children[0])], f, left, right=[a])
    if kind is Kind.PLUS:
        core = _mix([right_twin(t.children[0]), right_twin(t.children[1])])
        return _lower(RuleId.PLUS_L, [core], f, left, left=[a, b])
    if kind is Kind.ARROW:
        ta, tb = t.children
        core = _mix([left_twin(ta), right_twin(tb)])
        return _lower(RuleId.IMP_L, [core], f, left, left=[b], right=[a])
    if kind is Kind.POS_ARROW:
        if t.choice != 0:
            return _weaken(_empty(), f)
        ta, tb = t.children
        core = _weaken(_mix([left_twin(ta), right_twin(tb)]), pos_arrow(b, a))
        return _lower(RuleId.POS_L, [core], f, left, left=[b, pos_arrow(b, a)], right=[a])
    if kind is Kind.AND:
        (tx,) = t.children
        if t.choice == 0:
            core = _weaken(right_twin(tx), pos_arrow(a, b))
        else:
            swapped = _weaken(_mix([right_twin(tx), _axiom(a)]), pos_arrow(b, a))
            core = _lower(
                RuleId.POS_L, [swapped], pos_arrow(a, b), left, left=[b, pos_arrow(b, a)], right=[a]
            )
        return _lower(RuleId.AND_L, [core], f, left, left=[a, pos_arrow(a, b)])
    # Kind.OR, right occurrence: (∨,l) from Γ, A ⊢ Δ and Γ, B ⊢ Δ
    td, tc = t.children
    first = _mix([right_twin(tc), neg_left(td)])
    dy, dx = _processed(td).children
    second = _weaken(_mix([right_twin(dx), cross(dy, tc)]), td.store)
    return _lower(RuleId.OR_L, [first, second], f, left, left=[a])


def _processed(t: Trace) -> Trace:
    if not t.processed or t.store is None:
        raise ElaborationError(f"{t.formula} was not decomposed by (=>,l) on the branch")
    return t


def neg_left(t: Trace) -> ProofTree:
    """P(T) ⊢ M(T) for a left ⇒-occurrence Y ⇒ X decomposed into Y (left), X (right)"""
    _processed(t)
    ty, tx = t.children
    f = t.formula
    x, y = f.left, f.right
    core = _weaken(_mix([left_twin(ty), right_twin(tx)]), pos_arrow(x, y))
    step = _lower(RuleId.POS_L, [core], t.store, Side.LEFT, left=[x, pos_arrow(x, y)], right=[y])
    return step


def cross(lt: Trace, rt: Trace) -> ProofTree:
    if lt.formula != rt.formula or lt.side is not Side.LEFT or rt.side is not Side.RIGHT:
        raise ElaborationError(f"Cannot cancel {lt.formula} against {rt.formula}")
    if not lt.processed and not rt.processed:
        return _unprocessed(lt)
    if not lt.processed:
        return right_twin(rt) if lt.formula.is_atomic else _unprocessed(lt)
    if not rt.processed:
        return left_twin(lt) if rt.formula.is_atomic else _unprocessed(rt)
    f = lt.formula
    kind = f.kind
    if kind is Kind.TOP:
        return _empty()
    a, b = f.left, f.right
    if kind is Kind.NEG:
        return cross(rt.children[0], lt.children[0])
    if kind is Kind.PLUS:
        return _mix([cross(lt.children[0], rt.children[0]), cross(lt.children[1], rt.children[1])])
    if kind is Kind.ARROW:
        lb, la = lt.children
        ra, rb = rt.children
        return _mix([cross(lb, rb), cross(ra, la)])
    if kind is Kind.POS_ARROW:
        if rt.choice != 0:
            return neg_left(lt)
        lb, la = lt.children
        ra, rb = rt.children
        return _weaken(_mix([cross(lb, rb), cross(ra, la)]), lt.store)
    if kind is Kind.AND:
        lc, ld = lt.children
        (rx,) = rt.children
        if rt.choice == 0:
            return _mix([cross(lc, rx), neg_left(ld)])
        db, da = _processed(ld).children
        return _weaken(_mix([cross(lc, da), cross(db, rx)]), ld.store)
    (lx,) = lt.children
    rd, rc = rt.children
    if lt.choice == 0:
        return _mix([cross(lx, rc), neg_left(rd)])
    dy, dx = _processed(rd).children
    return _weaken(_mix([cross(lx, dx), cross(dy, rc)]), rd.store)


# ---------------------------------------------------------------------------
# Elaboration
# ---------------------------------------------------------------------------


def unlabel(s: LabelledSequent) -> Sequent:
    """Γ^ul, Π ⊢ Δ^ul"""
    base = s.unlabelled()
    return Sequent(base.left + s.store, base.right)


def _label_value(f: Mapping[str, int], label: Label) -> int:
    return int(all(int(f[atom]) == 1 for atom in label))


def _classify(
    roots: List[Trace], f: Mapping[str, int]
) -> Tuple[List[Trace], List[Formula]]:
    """(⇒,l) steps with f(x) = 1, f(y) = 0 and the stores of steps with f(xy) = 1"""
    dead: List[Trace] = []
    alive: List[Formula] = []
    stack = list(roots)
    while stack:
        t = stack.pop()
        if t.store is not None and t.fresh is not None:
            if _label_value(f, t.label) == 1 and int(f[t.fresh]) == 0:
                dead.append(t)
                continue
            if _label_value(f, t.label | {t.fresh}) == 1:
                alive.append(t.store)
        stack.extend(t.children)
    return dead, alive


def _functions(cert: Optional[Mapping[str, Any]], atoms: List[str]) -> List[Dict[str, int]]:
    if not cert or cert.get("kind") != "labelled" or not cert.get("functions"):
        raise ElaborationError("(success) leaf carries no labelling functions")
    out: List[Dict[str, int]] = []
    try:
        for f, weight in zip(cert["functions"], cert["lambda"]):
            g = {atom: int(f[atom]) for atom in atoms}
            out.extend([g] * int(weight))
    except (KeyError, TypeError, ValueError) as exc:
        raise ElaborationError(f"Malformed labelling functions: {exc}") from exc
    if not out:
        raise ElaborationError("(success) certificate has no positive weights")
    return out


def close_success_leaf(
    leaf: ProofTree, path: List[Tuple[ProofTree, int]], root: LabelledSequent
) -> ProofTree:
    """
    GA_s proof of the unlabelled (success) leaf Γ, Π ⊢ Δ.

    With labelling functions f₁..fₙ (repeated by weight), (C) steps to n
    copies, which (M) splits into Σfᵢ(Γ) ⊢ Σfᵢ(Δ), closed by (ID), and one
    remainder per fᵢ: the stores of its live (⇒,l) steps are weakened away
    and every step it switches off is closed by ``neg_left``.
    """
    s = leaf.conclusion
    target = unlabel(s)
    functions = _functions(leaf.certificate, s.atomic_labels())
    roots = build_traces(path, root)
    atoms_left: Multiset[Formula] = Multiset()
    atoms_right: Multiset[Formula] = Multiset()
    pieces = []
    for f in functions:
        kept = apply_labelling(f, s)
        atoms_left = atoms_left + kept.left
        atoms_right = atoms_right + kept.right
        dead, alive = _classify(roots, f)
        piece = _mix(neg_left(t) for t in dead)
        for store in alive:
            piece = _weaken(piece, store)
        pieces.append(piece)
    body = _mix([_identity(Sequent(atoms_left, atoms_right))] + pieces)
    n = len(functions)
    if body.conclusion != target.scale(n):
        raise ElaborationError(f"Pieces conclude {body.conclusion}, expected {n} copies of {target}")
    if n == 1:
        return body
    return ProofTree(RuleId.C, target, [body], params={"n": n})


def _replay(node: ProofTree, path: List[Tuple[ProofTree, int]], root: LabelledSequent) -> ProofTree:
    if node.rule is RuleId.SUCCESS:
        return close_success_leaf(node, path, root)
    match = match_rule(node, CalculusId.GA_I)
    if match is None:
        raise ElaborationError(f"({node.rule.value}) at {node.conclusion} is not a ga_i step")
    side, lf, _, _ = match
    premises = [_replay(p, path + [(node, i)], root) for i, p in enumerate(node.premises)]
    params = {"side": side.value, "principal": lf.formula}
    return ProofTree(node.rule, unlabel(node.conclusion), premises, params=params)


def elaborate_to_gas(pt: ProofTree) -> ProofTree:
    """
    Turn a GA_i proof of Γ^l ∥ ∅ ⊢ Δ^l into a GA_s proof of Γ ⊢ Δ.

    Raises:
        ElaborationError: The input is not a checked GA_i proof from unit
            labels, a leaf lacks labelling functions, or the result fails the
            GA_s checker
    """
    root = pt.conclusion
    if not isinstance(root, LabelledSequent):
        raise ElaborationError("Elaboration starts from a labelled ga_i proof")
    if root.store or any(lf.label for lf in root.formulas()):
        raise ElaborationError("The ga_i root must carry unit labels and an empty store")
    checked = check_labelled_proof(pt, CalculusId.GA_I)
    if not checked:
        raise ElaborationError(f"Input is not a ga_i proof: {checked.message} at {checked.render_path()}")
    out = _replay(pt, [], root)
    result = check_gas_proof(out)
    if not result:
        raise ElaborationError(f"Elaborated proof fails at {result.render_path()}: {result.message}")
    logger.info(
        "elaboration_finished",
        extra={"search_event": {"calculus": CalculusId.GA_S.value, "size": out.size()}},
    )
    return out
