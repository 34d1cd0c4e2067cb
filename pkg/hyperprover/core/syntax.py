"""
Formula syntax for the abelian and Łukasiewicz dialects.

Formulas are immutable trees. The concrete syntax is parsed with a lark LALR
grammar shared by formulas, hypersequents, focused hypersequents and labelled
sequents; ``render_formula`` prints with the minimal parentheses the grammar
needs, so parse and render round-trip.

Tokens, tightest first::

    unary     -A  ~A
    sums      A + B   A o+ B
    lattice   A /\\ B   A \\/ B
    arrows    A -> B  A => B  A .> B  A =>> B  A <-> B   (right associative)

``t`` and ``bot`` are the constants. In the abelian dialect ``bot`` is read as
the reserved propositional variable of the material fragment.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from hyperprover.core.constants import MBOT, RESERVED_PREFIX, CalculusId, Dialect
from hyperprover.core.errors import DialectError, FormulaSyntaxError

logger = logging.getLogger(__name__)


class Kind(str, Enum):
    """Node kinds of a formula tree"""
    VAR = "var"
    TOP = "t"
    BOT = "bot"
    NEG = "-"
    TILDE = "~"
    PLUS = "+"
    ARROW = "->"
    POS_ARROW = "=>"
    MAT_ARROW = ".>"
    ENTH_ARROW = "=>>"
    OPLUS = "o+"
    AND = "/\\"
    OR = "\\/"

    @property
    def arity(self) -> int:
        if self in (Kind.VAR, Kind.TOP, Kind.BOT):
            return 0
        if self in (Kind.NEG, Kind.TILDE):
            return 1
        return 2


IMPLICATIONS = frozenset({Kind.ARROW, Kind.POS_ARROW, Kind.MAT_ARROW, Kind.ENTH_ARROW})
LATTICE = frozenset({Kind.AND, Kind.OR})
SUMS = frozenset({Kind.PLUS, Kind.OPLUS})
UNARY = frozenset({Kind.NEG, Kind.TILDE})

DIALECT_KINDS: Dict[Dialect, frozenset] = {
    Dialect.ABELIAN: frozenset(
        {
            Kind.VAR, Kind.TOP, Kind.NEG, Kind.PLUS, Kind.ARROW, Kind.POS_ARROW,
            Kind.MAT_ARROW, Kind.ENTH_ARROW, Kind.AND, Kind.OR,
        }
    ),
    Dialect.LUKASIEWICZ: frozenset(
        {
            Kind.VAR, Kind.BOT, Kind.TOP, Kind.TILDE, Kind.OPLUS, Kind.MAT_ARROW,
            Kind.ENTH_ARROW, Kind.POS_ARROW, Kind.AND, Kind.OR,
        }
    ),
}


@dataclass(frozen=True)
class Formula:
    """A node of a formula tree"""

    kind: Kind
    children: Tuple["Formula", ...] = ()
    name: Optional[str] = None
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if len(self.children) != self.kind.arity:
            raise ValueError(
                f"{self.kind.name} takes {self.kind.arity} arguments, got {len(self.children)}"
            )
        if (self.kind is Kind.VAR) != (self.name is not None):
            raise ValueError("Only variables carry a name")
        object.__setattr__(self, "_hash", hash((self.kind, self.children, self.name)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def var(cls, name: str) -> "Formula":
        return cls(Kind.VAR, (), name)

    @classmethod
    def of(cls, kind: Kind, *children: "Formula") -> "Formula":
        return cls(kind, tuple(children))

    @property
    def left(self) -> "Formula":
        return self.children[0]

    @property
    def right(self) -> "Formula":
        return self.children[-1]

    @property
    def is_var(self) -> bool:
        return self.kind is Kind.VAR

    @property
    def is_atomic(self) -> bool:
        """Variables and constants"""
        return self.kind.arity == 0

    def size(self) -> int:
        """Number of AST nodes"""
        return 1 + sum(child.size() for child in self.children)

    def connectives(self) -> int:
        """Number of connective occurrences, constants excluded"""
        if self.is_atomic:
            return 0
        return 1 + sum(child.connectives() for child in self.children)

    def variables(self) -> List[str]:
        """Variable names in first-occurrence order"""
        seen: Dict[str, None] = {}
        for node in self.walk():
            if node.is_var:
                seen.setdefault(node.name, None)
        return list(seen)

    def walk(self) -> Iterator["Formula"]:
        """Pre-order traversal"""
        yield self
        for child in self.children:
            yield from child.walk()

    def substitute(self, mapping: Dict[str, "Formula"]) -> "Formula":
        """Replace variables by formulas"""
        if self.is_var:
            return mapping.get(self.name, self)
        if self.is_atomic:
            return self
        return Formula(self.kind, tuple(c.substitute(mapping) for c in self.children))

    def map_bottom_up(self, fn: Callable[["Formula"], "Formula"]) -> "Formula":
        """Rebuild the tree applying ``fn`` to every node after its children"""
        if self.is_atomic:
            return fn(self)
        return fn(Formula(self.kind, tuple(c.map_bottom_up(fn) for c in self.children)))

    def __str__(self) -> str:
        return render_formula(self)


TOP = Formula(Kind.TOP)
BOT = Formula(Kind.BOT)


def var(name: str) -> Formula:
    return Formula.var(name)


def neg(a: Formula) -> Formula:
    return Formula.of(Kind.NEG, a)


def tilde(a: Formula) -> Formula:
    return Formula.of(Kind.TILDE, a)


def plus(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.PLUS, a, b)


def arrow(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.ARROW, a, b)


def pos_arrow(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.POS_ARROW, a, b)


def mat_arrow(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.MAT_ARROW, a, b)


def enth_arrow(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.ENTH_ARROW, a, b)


def oplus(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.OPLUS, a, b)


def conj(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.AND, a, b)


def disj(a: Formula, b: Formula) -> Formula:
    return Formula.of(Kind.OR, a, b)


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------

GRAMMAR = r"""
formula_start: formula
hypersequent_start: hypersequent
focused_start: "[" NAME "]" hypersequent
labelled_start: labelled
sequent_start: component

?formula: imp

?imp: lat
    | lat "->" imp   -> arrow
    | lat "=>" imp   -> pos_arrow
    | lat ".>" imp   -> mat_arrow
    | lat "=>>" imp  -> enth_arrow
    | lat "<->" imp  -> iff

?lat: sum
    | lat "/\\" sum  -> conj
    | lat "\\/" sum  -> disj

?sum: unary
    | sum "+" unary    -> plus
    | sum _OPLUS unary -> oplus

?unary: atom
      | "-" unary -> neg
      | "~" unary -> tilde

?atom: NAME -> var
     | "(" formula ")"

hypersequent: component ("|" component)*
component: [flist] "|-" [flist]
flist: formula ("," formula)*

labelled: [lflist] store? "|-" [lflist]
store: "||" [flist]
lflist: lformula ("," lformula)*
lformula: label_ref ":" formula
label_ref: "1"                -> unit_label
         | NAME ("." NAME)*   -> label_path

_OPLUS.2: "o+"
NAME: /\$?[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""

_START = ["formula_start", "hypersequent_start", "focused_start", "labelled_start", "sequent_start"]


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", start=_START, maybe_placeholders=True)


class _Store(list):
    """Marker for the GA_i store inside a labelled sequent"""


class _SyntaxBuilder(Transformer):
    """Builds formulas and sequent structures from the parse tree"""

    def __init__(self, dialect: Dialect):
        super().__init__()
        self.dialect = dialect

    # formulas
    def var(self, children):
        name = str(children[0])
        if name == "t":
            return TOP
        if name == "bot":
            return BOT
        return Formula.var(name)

    def arrow(self, children):
        return arrow(*children)

    def pos_arrow(self, children):
        return pos_arrow(*children)

    def mat_arrow(self, children):
        return mat_arrow(*children)

    def enth_arrow(self, children):
        return enth_arrow(*children)

    def iff(self, children):
        a, b = children
        imp = arrow if self.dialect is Dialect.ABELIAN else pos_arrow
        return conj(imp(a, b), imp(b, a))

    def conj(self, children):
        return conj(*children)

    def disj(self, children):
        return disj(*children)

    def plus(self, children):
        return plus(*children)

    def oplus(self, children):
        return oplus(*children)

    def neg(self, children):
        return neg(children[0])

    def tilde(self, children):
        return tilde(children[0])

    # sequents
    def flist(self, children):
        return list(children)

    def component(self, children):
        from hyperprover.core.structures import Sequent

        left, right = children
        return Sequent.of(left or [], right or [])

    def hypersequent(self, children):
        from hyperprover.core.structures import Hypersequent

        return Hypersequent.of(children)

    def unit_label(self, children):
        return frozenset()

    def label_path(self, children):
        return frozenset(str(token) for token in children)

    def lformula(self, children):
        from hyperprover.core.structures import LabelledFormula

        label, formula = children
        return LabelledFormula(label, formula)

    def lflist(self, children):
        return list(children)

    def store(self, children):
        return _Store(children[0] or [])

    def labelled(self, children):
        from hyperprover.core.structures import LabelledSequent

        store: List[Formula] = []
        sides = []
        for child in children:
            if isinstance(child, _Store):
                store = list(child)
            else:
                sides.append(child or [])
        left, right = sides
        return LabelledSequent.of(left, right, store)

    # start symbols
    def formula_start(self, children):
        return children[0]

    def hypersequent_start(self, children):
        return children[0]

    def sequent_start(self, children):
        return children[0]

    def labelled_start(self, children):
        return children[0]

    def focused_start(self, children):
        from hyperprover.core.structures import FocusedHypersequent

        focus, body = children
        return FocusedHypersequent(str(focus), body)


def as_dialect(dialect: Union[Dialect, str]) -> Dialect:
    if isinstance(dialect, Dialect):
        return dialect
    return Dialect(str(dialect).lower())


def _parse(text: str, start: str, dialect: Dialect):
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as exc:
        line = max(getattr(exc, "line", 0) or 0, 0)
        column = max(getattr(exc, "column", 0) or 0, 0)
        raise FormulaSyntaxError(text, line, column, exc.__class__.__name__) from exc
    try:
        return _SyntaxBuilder(dialect).transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from exc


def apply_dialect(f: Formula, dialect: Dialect, allow_reserved: bool = False) -> Formula:
    """Check connectives against the dialect and map ``bot`` to its dialect reading"""
    allowed = DIALECT_KINDS[dialect]

    def visit(node: Formula) -> Formula:
        if node.is_var and node.name.startswith(RESERVED_PREFIX) and not allow_reserved:
            raise DialectError(node.name, f"{dialect.name} input (reserved namespace)")
        if node.kind is Kind.BOT and dialect is Dialect.ABELIAN:
            return Formula.var(MBOT)
        if node.kind not in allowed:
            raise DialectError(node.kind.value, dialect.name)
        return node

    return f.map_bottom_up(visit)


def parse_formula(
    text: str, dialect: Union[Dialect, str] = Dialect.ABELIAN, allow_reserved: bool = False
) -> Formula:
    """
    Parse a formula

    Args:
        text: Concrete syntax
        dialect: "a" (abelian) or "l" (Łukasiewicz)
        allow_reserved: Accept "$"-prefixed variables (used when reading proofs)

    Raises:
        FormulaSyntaxError: Text does not parse
        DialectError: Connective outside the dialect
    """
    dialect = as_dialect(dialect)
    return apply_dialect(_parse(text, "formula_start", dialect), dialect, allow_reserved)


def parse_hypersequent(
    text: str, dialect: Union[Dialect, str] = Dialect.ABELIAN, allow_reserved: bool = False
):
    """Parse ``Γ |- Δ | Γ' |- Δ' ...`` into a Hypersequent"""
    dialect = as_dialect(dialect)
    hs = _parse(text, "hypersequent_start", dialect)
    return hs.map_formulas(lambda f: apply_dialect(f, dialect, allow_reserved))


def parse_focused(
    text: str, dialect: Union[Dialect, str] = Dialect.ABELIAN, allow_reserved: bool = False
):
    """Parse ``[p] G`` into a FocusedHypersequent"""
    dialect = as_dialect(dialect)
    fh = _parse(text, "focused_start", dialect)
    return fh.with_body(fh.body.map_formulas(lambda f: apply_dialect(f, dialect, allow_reserved)))


def parse_sequent(
    text: str, dialect: Union[Dialect, str] = Dialect.ABELIAN, allow_reserved: bool = False
):
    """Parse a single ``Γ |- Δ``"""
    dialect = as_dialect(dialect)
    seq = _parse(text, "sequent_start", dialect)
    return seq.map_formulas(lambda f: apply_dialect(f, dialect, allow_reserved))


def parse_labelled(
    text: str, dialect: Union[Dialect, str] = Dialect.ABELIAN, allow_reserved: bool = False
):
    """Parse ``x.y:A, 1:B || Π |- 1:C`` into a LabelledSequent"""
    dialect = as_dialect(dialect)
    ls = _parse(text, "labelled_start", dialect)
    return ls.map_formulas(lambda f: apply_dialect(f, dialect, allow_reserved))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _level(kind: Kind) -> int:
    if kind in IMPLICATIONS:
        return 1
    if kind in LATTICE:
        return 2
    if kind in SUMS:
        return 3
    if kind in UNARY:
        return 4
    return 5


def render_formula(f: Formula) -> str:
    """Print a formula with minimal parentheses"""
    return _render(f, 0)


def _render(f: Formula, min_level: int) -> str:
    level = _level(f.kind)
    if f.kind is Kind.VAR:
        text = "bot" if f.name == MBOT else f.name
    elif f.kind is Kind.TOP:
        text = "t"
    elif f.kind is Kind.BOT:
        text = "bot"
    elif f.kind in UNARY:
        text = f.kind.value + _render(f.left, 4)
    elif f.kind in IMPLICATIONS:
        text = f"{_render(f.left, 2)} {f.kind.value} {_render(f.right, 1)}"
    elif f.kind in LATTICE:
        text = f"{_render(f.left, 2)} {f.kind.value} {_render(f.right, 3)}"
    else:
        text = f"{_render(f.left, 3)} {f.kind.value} {_render(f.right, 4)}"
    return f"({text})" if level < min_level else text


def dialect_of(f: Formula) -> Dialect:
    """The dialect a formula is written in (abelian unless it uses Ł-only nodes)"""
    for node in f.walk():
        if node.kind in (Kind.BOT, Kind.TILDE, Kind.OPLUS):
            return Dialect.LUKASIEWICZ
    return Dialect.ABELIAN


_NATURAL = re.compile(r"(\d+)")


def natural_key(name: str) -> Tuple:
    """Sort key placing x2 before x10"""
    return tuple(int(part) if part.isdigit() else part for part in _NATURAL.split(name))


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

_GA_FAMILY = frozenset(
    {CalculusId.GA, CalculusId.GA_T, CalculusId.GA_L, CalculusId.GA_S, CalculusId.GA_I}
)
_GL_FULL = frozenset({CalculusId.GL_L, CalculusId.GL_S})


def normalize(f: Formula, target: Union[CalculusId, str]) -> Formula:
    """
    Expand connectives outside the target calculus's primitive set.

    Abelian targets keep every A connective and expand the material and
    enthymematic arrows. Łukasiewicz targets work over ⇒, ⊥ and the lattice
    connectives; the labelled and single-sequent targets also expand ∧ and ∨.

    Raises:
        DialectError: A connective has no expansion into the target set
    """
    target = CalculusId(target)
    if target in _GA_FAMILY:
        return f.map_bottom_up(_normalize_a)
    full = target in _GL_FULL
    return f.map_bottom_up(lambda node: _normalize_l(node, full))


def _normalize_a(node: Formula) -> Formula:
    if node.kind is Kind.MAT_ARROW:
        return arrow(conj(TOP, node.left), disj(Formula.var(MBOT), node.right))
    if node.kind is Kind.ENTH_ARROW:
        return arrow(conj(TOP, node.left), node.right)
    if node.kind not in DIALECT_KINDS[Dialect.ABELIAN]:
        raise DialectError(node.kind.value, "abelian calculi")
    return node


def _lneg(a: Formula) -> Formula:
    return pos_arrow(a, BOT)


def _lor(a: Formula, b: Formula) -> Formula:
    return pos_arrow(pos_arrow(a, b), b)


def _normalize_l(node: Formula, full: bool) -> Formula:
    kind = node.kind
    if kind in (Kind.NEG, Kind.PLUS, Kind.ARROW):
        raise DialectError(kind.value, "Łukasiewicz calculi")
    if kind is Kind.VAR and node.name.startswith(RESERVED_PREFIX):
        raise DialectError(node.name, "Łukasiewicz calculi")
    if kind is Kind.TILDE:
        return _lneg(node.left)
    if kind is Kind.OPLUS:
        return pos_arrow(_lneg(node.left), node.right)
    if kind is Kind.TOP:
        return pos_arrow(BOT, BOT)
    if kind in (Kind.MAT_ARROW, Kind.ENTH_ARROW):
        return pos_arrow(node.left, node.right)
    if full and kind is Kind.OR:
        return _lor(node.left, node.right)
    if full and kind is Kind.AND:
        return _lneg(_lor(_lneg(node.left), _lneg(node.right)))
    return node
