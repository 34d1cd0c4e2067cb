"""
Shared proof-state structures.

Multisets, sequents, hypersequents (plain and focused), labels and labelled
sequents, label trees, and the complexity measures the calculi use to assert
termination. Every structure is an immutable value.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Generic,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    TypeVar,
    Union,
)

from hyperprover.core.errors import EvaluationError, LabelRegularityError
from hyperprover.core.syntax import Formula, natural_key, render_formula

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


class Multiset(Generic[T]):
    """Immutable multiset over a Counter; iteration follows first insertion, equality ignores order"""

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[T] = ()):
        self._counts: Counter = Counter(items)
        self._hash: Optional[int] = None

    @classmethod
    def from_counts(cls, counts: Mapping[T, int]) -> "Multiset[T]":
        return cls._wrap(Counter({item: n for item, n in counts.items() if n > 0}))

    @classmethod
    def _wrap(cls, counts: Counter) -> "Multiset[T]":
        ms = cls()
        ms._counts = counts
        return ms

    def __iter__(self) -> Iterator[T]:
        return self._counts.elements()

    def __len__(self) -> int:
        return self._counts.total()

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __contains__(self, item: object) -> bool:
        return item in self._counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Multiset({list(self)!r})"

    def count(self, item: T) -> int:
        return self._counts[item]

    def distinct(self) -> List[T]:
        return list(self._counts)

    def items(self) -> List[Tuple[T, int]]:
        return list(self._counts.items())

    def add(self, *items: T) -> "Multiset[T]":
        counts = self._counts.copy()
        counts.update(items)
        return Multiset._wrap(counts)

    def remove(self, item: T, n: int = 1) -> "Multiset[T]":
        """Remove ``n`` copies; raises ValueError if fewer are present"""
        have = self._counts[item]
        if have < n:
            raise ValueError(f"{item!r} occurs {have} times, cannot remove {n}")
        counts = self._counts.copy()
        counts[item] = have - n
        return Multiset._wrap(+counts)

    def remove_all(self, item: T) -> "Multiset[T]":
        counts = self._counts.copy()
        del counts[item]
        return Multiset._wrap(counts)

    def __add__(self, other: "Multiset[T]") -> "Multiset[T]":
        return Multiset._wrap(self._counts + other._counts)

    def __sub__(self, other: "Multiset[T]") -> "Multiset[T]":
        """Truncated difference"""
        return Multiset._wrap(self._counts - other._counts)

    def scale(self, k: int) -> "Multiset[T]":
        return Multiset.from_counts({item: n * k for item, n in self._counts.items()})

    def issubset(self, other: "Multiset[T]") -> bool:
        return self._counts <= other._counts

    def map(self, fn: Callable[[T], Hashable]) -> "Multiset":
        return Multiset(fn(item) for item in self)


def _fmt_list(items: Iterable) -> str:
    return ", ".join(str(item) for item in items)


@dataclass(frozen=True)
class Sequent:
    """A pair of formula multisets Γ ⊢ Δ"""

    left: Multiset[Formula] = field(default_factory=Multiset)
    right: Multiset[Formula] = field(default_factory=Multiset)

    @classmethod
    def of(cls, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "Sequent":
        return cls(Multiset(left), Multiset(right))

    def side(self, side: str) -> Multiset[Formula]:
        return self.left if side == "left" else self.right

    def formulas(self) -> Iterator[Formula]:
        yield from self.left
        yield from self.right

    @property
    def is_atomic(self) -> bool:
        return all(f.is_atomic for f in self.formulas())

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for f in self.formulas():
            for name in f.variables():
                seen.setdefault(name, None)
        return list(seen)

    def map_formulas(self, fn: Callable[[Formula], Formula]) -> "Sequent":
        return Sequent(self.left.map(fn), self.right.map(fn))

    def __add__(self, other: "Sequent") -> "Sequent":
        return Sequent(self.left + other.left, self.right + other.right)

    def scale(self, k: int) -> "Sequent":
        return Sequent(self.left.scale(k), self.right.scale(k))

    def render(self) -> str:
        left = _fmt_list(self.left)
        right = _fmt_list(self.right)
        return f"{left} |- {right}".strip()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, eq=False)
class Hypersequent:
    """A nonempty multiset of components; component order is kept for rule selection"""

    components: Tuple[Sequent, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("A hypersequent has at least one component")

    @classmethod
    def of(cls, components: Iterable[Sequent]) -> "Hypersequent":
        return cls(tuple(components))

    @classmethod
    def single(cls, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "Hypersequent":
        return cls((Sequent.of(left, right),))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypersequent):
            return NotImplemented
        return Multiset(self.components) == Multiset(other.components)

    def __hash__(self) -> int:
        return hash(Multiset(self.components))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Sequent]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Sequent:
        return self.components[index]

    def as_multiset(self) -> Multiset[Sequent]:
        return Multiset(self.components)

    def replace(self, index: int, *sequents: Sequent) -> "Hypersequent":
        """Replace component ``index`` by ``sequents`` in place"""
        comps = self.components
        return Hypersequent(comps[:index] + tuple(sequents) + comps[index + 1:])

    def without(self, *indices: int) -> "Hypersequent":
        drop = set(indices)
        return Hypersequent(tuple(c for i, c in enumerate(self.components) if i not in drop))

    def with_components(self, *sequents: Sequent) -> "Hypersequent":
        return Hypersequent(self.components + tuple(sequents))

    def swap(self, indices: Iterable[int], *sequents: Sequent) -> "Hypersequent":
        """Drop the components at ``indices`` and append ``sequents``"""
        drop = set(indices)
        kept = tuple(c for i, c in enumerate(self.components) if i not in drop)
        return Hypersequent(kept + tuple(sequents))

    def formulas(self) -> Iterator[Formula]:
        for comp in self.components:
            yield from comp.formulas()

    @property
    def is_atomic(self) -> bool:
        return all(comp.is_atomic for comp in self.components)

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for comp in self.components:
            for name in comp.variables():
                seen.setdefault(name, None)
        return list(seen)

    def map_formulas(self, fn: Callable[[Formula], Formula]) -> "Hypersequent":
        return Hypersequent(tuple(comp.map_formulas(fn) for comp in self.components))

    def render(self) -> str:
        return " | ".join(comp.render() for comp in self.components)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class FocusedHypersequent:
    """[q]G: a hypersequent with a focus variable"""

    focus: str
    body: Hypersequent

    def with_body(self, body: Hypersequent) -> "FocusedHypersequent":
        return FocusedHypersequent(self.focus, body)

    def with_focus(self, focus: str) -> "FocusedHypersequent":
        return FocusedHypersequent(focus, self.body)

    @property
    def focus_formula(self) -> Formula:
        return Formula.var(self.focus)

    def render(self) -> str:
        return f"[{self.focus}] {self.body.render()}"

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------

Label = FrozenSet[str]
UNIT: Label = frozenset()


def make_label(*atoms: str) -> Label:
    return frozenset(atoms)


def render_label(label: Label) -> str:
    if not label:
        return "1"
    return ".".join(sorted(label, key=natural_key))


@dataclass(frozen=True)
class LabelledFormula:
    """x:A"""

    label: Label
    formula: Formula

    def render(self) -> str:
        return f"{render_label(self.label)}:{render_formula(self.formula)}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LabelledSequent:
    """Γ ∥ Π ⊢ Δ; the store Π is only used by GA_i"""

    left: Multiset[LabelledFormula] = field(default_factory=Multiset)
    right: Multiset[LabelledFormula] = field(default_factory=Multiset)
    store: Multiset[Formula] = field(default_factory=Multiset)

    @classmethod
    def of(
        cls,
        left: Iterable[LabelledFormula] = (),
        right: Iterable[LabelledFormula] = (),
        store: Iterable[Formula] = (),
    ) -> "LabelledSequent":
        return cls(Multiset(left), Multiset(right), Multiset(store))

    @classmethod
    def lift(cls, seq: Sequent) -> "LabelledSequent":
        """Γ^l ⊢ Δ^l: every formula under the unit label"""
        return cls.of(
            (LabelledFormula(UNIT, f) for f in seq.left),
            (LabelledFormula(UNIT, f) for f in seq.right),
        )

    def side(self, side: str) -> Multiset[LabelledFormula]:
        return self.left if side == "left" else self.right

    def formulas(self) -> Iterator[LabelledFormula]:
        yield from self.left
        yield from self.right

    def labels(self) -> List[Label]:
        seen: Dict[Label, None] = {}
        for lf in self.formulas():
            seen.setdefault(lf.label, None)
        return list(seen)

    def atomic_labels(self) -> List[str]:
        atoms = {atom for label in self.labels() for atom in label}
        return sorted(atoms, key=natural_key)

    @property
    def is_atomic(self) -> bool:
        return all(lf.formula.is_atomic for lf in self.formulas())

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for lf in self.formulas():
            for name in lf.formula.variables():
                seen.setdefault(name, None)
        for f in self.store:
            for name in f.variables():
                seen.setdefault(name, None)
        return list(seen)

    def unlabelled(self) -> Sequent:
        return Sequent(self.left.map(lambda lf: lf.formula), self.right.map(lambda lf: lf.formula))

    def map_formulas(self, fn: Callable[[Formula], Formula]) -> "LabelledSequent":
        relabel = lambda lf: LabelledFormula(lf.label, fn(lf.formula))  # noqa: E731
        return LabelledSequent(self.left.map(relabel), self.right.map(relabel), self.store.map(fn))

    def render(self) -> str:
        left = _fmt_list(self.left)
        right = _fmt_list(self.right)
        store = f" || {_fmt_list(self.store)}" if self.store else ""
        return f"{left}{store} |- {right}".strip()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LabelTree:
    """Introduction tree of atomic labels; ``None`` as parent means the root 1"""

    parents: Tuple[Tuple[str, Optional[str]], ...] = ()

    @property
    def parent_map(self) -> Dict[str, Optional[str]]:
        return dict(self.parents)

    @property
    def nodes(self) -> List[str]:
        return [node for node, _ in self.parents]

    def extend(self, child: str, parent: Optional[str]) -> "LabelTree":
        pmap = self.parent_map
        if child in pmap:
            raise LabelRegularityError(f"Label {child} is already in the tree")
        if parent is not None and parent not in pmap:
            raise LabelRegularityError(f"Parent {parent} of {child} is not in the tree")
        return LabelTree(self.parents + ((child, parent),))

    def path(self, node: Optional[str]) -> Label:
        """Nodes on the root-to-node path, root excluded"""
        pmap = self.parent_map
        out = set()
        while node is not None:
            out.add(node)
            node = pmap[node]
        return frozenset(out)

    def children(self, node: Optional[str]) -> List[str]:
        return [child for child, parent in self.parents if parent == node]

    def maximal(self) -> List[str]:
        """Child nodes of the root"""
        return self.children(None)

    def depth(self, node: str) -> int:
        return len(self.path(node))

    def deepest(self, label: Label) -> Optional[str]:
        if not label:
            return None
        return max(label, key=lambda atom: (self.depth(atom), natural_key(atom)))

    def fresh_child(self, label: Label, child: str) -> "LabelTree":
        """Attach ``child`` below the deepest atom of ``label``"""
        return self.extend(child, self.deepest(label))

    def is_path(self, label: Label) -> bool:
        return all(atom in self.parent_map for atom in label) and label == self.path(
            self.deepest(label)
        )

    def validate(self, labels: Iterable[Label]) -> None:
        for label in labels:
            if not self.is_path(label):
                raise LabelRegularityError(
                    f"Label {render_label(label)} is not a root-to-node path"
                )

    def remove_root_child(self, node: str) -> "LabelTree":
        """Drop a maximal node; its children become maximal"""
        pmap = self.parent_map
        if pmap.get(node, "missing") is not None:
            raise LabelRegularityError(f"{node} is not a maximal label")
        return LabelTree(
            tuple(
                (child, None if parent == node else parent)
                for child, parent in self.parents
                if child != node
            )
        )

    @classmethod
    def infer(cls, labels: Iterable[Label]) -> "LabelTree":
        """
        Recover a tree for which every label is a root-to-node path.

        Atom ``a`` is an ancestor of ``b`` when every label holding ``b`` also
        holds ``a``; atoms with equal label sets are chained in natural order.

        Raises:
            LabelRegularityError: No such tree exists
        """
        labels = [frozenset(label) for label in labels]
        atoms = sorted({atom for label in labels for atom in label}, key=natural_key)
        holders = {atom: [label for label in labels if atom in label] for atom in atoms}

        def above(a: str, b: str) -> bool:
            if a == b:
                return False
            if not all(a in label for label in holders[b]):
                return False
            if all(b in label for label in holders[a]):
                return natural_key(a) < natural_key(b)
            return True

        ancestors = {b: [a for a in atoms if above(a, b)] for b in atoms}
        tree = cls()
        for atom in sorted(atoms, key=lambda x: (len(ancestors[x]), natural_key(x))):
            anc = ancestors[atom]
            parent = max(anc, key=lambda a: len(ancestors[a])) if anc else None
            if parent is not None and set(ancestors[parent]) | {parent} != set(anc):
                raise LabelRegularityError(f"Ancestors of {atom} do not form a chain")
            tree = tree.extend(atom, parent)
        tree.validate(labels)
        return tree


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------


def complexity_cp(f: Formula) -> int:
    """cp: 0 on variables and constants, one per connective above"""
    if f.is_atomic:
        return 0
    return 1 + sum(complexity_cp(child) for child in f.children)


def multiset_complexity_mc(g: Union[Hypersequent, Sequent]) -> Multiset[int]:
    """Multiset of cp over every formula occurrence"""
    return Multiset(complexity_cp(f) for f in g.formulas())


def multiset_less(
    a: Multiset, b: Multiset, less: Optional[Callable[[object, object], bool]] = None
) -> bool:
    """
    Dershowitz-Manna multiset order: ``a`` is below ``b`` when it arises by
    replacing elements of ``b`` with finitely many smaller ones.
    """
    less = less or (lambda x, y: x < y)
    if a == b:
        return False
    surplus = [x for x in a.distinct() if a.count(x) > b.count(x)]
    deficit = [y for y in b.distinct() if b.count(y) > a.count(y)]
    return all(any(less(x, y) for y in deficit) for x in surplus)


def count(gamma: Multiset[Formula], p: Union[Formula, str]) -> int:
    """count(Γ, p)"""
    if isinstance(p, str):
        p = Formula.var(p)
    return gamma.count(p)


def d_measure(fg: FocusedHypersequent) -> int:
    """Σ over components of |count(Γᵢ, p) − count(Δᵢ, p)|"""
    p = fg.focus_formula
    return sum(abs(comp.left.count(p) - comp.right.count(p)) for comp in fg.body)


def apply_labelling(f: Mapping[str, int], s: LabelledSequent) -> Sequent:
    """f(Γ) ⊢ f(Δ): keep the formulas whose label evaluates to 1"""

    def value(label: Label) -> int:
        out = 1
        for atom in label:
            if atom not in f:
                raise EvaluationError(f"Labelling function misses {atom}", variable=atom)
            out *= int(f[atom])
        return out

    left = [lf.formula for lf in s.left if value(lf.label) == 1]
    right = [lf.formula for lf in s.right if value(lf.label) == 1]
    return Sequent.of(left, right)


def component_complexity(seq: Sequent, atoms: bool = True) -> Multiset[int]:
    """cp multiset of one component; ``atoms=False`` drops the zeros"""
    return Multiset(complexity_cp(f) for f in seq.formulas() if atoms or not f.is_atomic)


def nested_complexity(h: Hypersequent, atoms: bool = True) -> Multiset[Multiset[int]]:
    """Multiset over components of their cp multisets"""
    return Multiset(component_complexity(comp, atoms) for comp in h)


def nested_less(a: Multiset[Multiset[int]], b: Multiset[Multiset[int]]) -> bool:
    """Nested multiset order with multiset_less on the inner level"""
    return multiset_less(a, b, less=lambda x, y: multiset_less(x, y))


def symbol_count(h: Hypersequent) -> int:
    """AST nodes over all formulas plus the number of components"""
    return sum(f.size() for f in h.formulas()) + len(h)


__all__ = [
    "Multiset",
    "Sequent",
    "Hypersequent",
    "FocusedHypersequent",
    "Label",
    "UNIT",
    "make_label",
    "render_label",
    "LabelledFormula",
    "LabelledSequent",
    "LabelTree",
    "complexity_cp",
    "multiset_complexity_mc",
    "multiset_less",
    "count",
    "d_measure",
    "apply_labelling",
    "component_complexity",
    "nested_complexity",
    "nested_less",
    "symbol_count",
]
