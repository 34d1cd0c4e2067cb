"""
Embeddings of Łukasiewicz logic and its positive fragment into abelian logic.

- ``star`` maps Ł formulas over ⇒, ⊥ and variables into A using the
  reserved variable ``$qbot`` for falsum
- ``material`` reads A ⊃ B as (t ∧ A) → ($mbot ∨ B)
- ``enthymematic`` reads A ⊇ B as (t ∧ A) → B

All three preserve and reflect validity, so a goal of Ł can be decided by the
abelian provers and an A-countermodel of φ* carried back to [-1, 0].
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, TypeVar, Union

from hyperprover.core.constants import MBOT, QBOT, RESERVED_PREFIX, CalculusId, Model
from hyperprover.core.errors import DialectError, TranslationError
from hyperprover.core.semantics import MINUS_ONE, ZERO, Valuation, eval_a
from hyperprover.core.structures import Hypersequent, LabelledSequent, Sequent
from hyperprover.core.syntax import (
    BOT,
    TOP,
    Formula,
    Kind,
    arrow,
    conj,
    disj,
    mat_arrow,
    normalize,
)

logger = logging.getLogger(__name__)

Translatable = TypeVar("Translatable", Formula, Sequent, Hypersequent, LabelledSequent)

TRANSLATIONS = ("star", "material", "enthymematic")

QBOT_VAR = Formula.var(QBOT)
MBOT_VAR = Formula.var(MBOT)


def _lift(fn: Callable[[Formula], Formula], x: Translatable) -> Translatable:
    if isinstance(x, Formula):
        return fn(x)
    return x.map_formulas(fn)


# ---------------------------------------------------------------------------
# Star translation
# ---------------------------------------------------------------------------


def _star(f: Formula) -> Formula:
    kind = f.kind
    if kind is Kind.VAR:
        if f.name.startswith(RESERVED_PREFIX):
            raise TranslationError("star", f.name)
        return conj(disj(f, QBOT_VAR), TOP)
    if kind is Kind.BOT:
        return conj(QBOT_VAR, TOP)
    if kind is Kind.POS_ARROW:
        return conj(TOP, arrow(_star(f.left), _star(f.right)))
    raise TranslationError("star", kind.value)


def _expand_l(f: Formula) -> Formula:
    try:
        return normalize(f, CalculusId.GL_L)
    except DialectError as exc:
        raise TranslationError("star", exc.connective) from exc


def star(x: Translatable, expand: bool = True) -> Translatable:
    """
    p* = (p ∨ q⊥) ∧ t, ⊥* = q⊥ ∧ t, (A ⇒ B)* = t ∧ (A* → B*).

    Applied pointwise to sequents, components and labelled formulas (labels
    are kept). With ``expand`` the Ł definitions of t, ∼, ⊕, ∧ and ∨ are
    unfolded first.

    Raises:
        TranslationError: A connective outside {⇒, ⊥} survives expansion
    """
    if expand:
        return _lift(lambda f: _star(_expand_l(f)), x)
    return _lift(_star, x)


def transfer_countermodel(v: Valuation, phi: Union[Formula, Sequent, Hypersequent]) -> Valuation:
    """
    Ł countermodel from an A-countermodel of φ*.

    The values are scaled so that v(q⊥) = −1 and each variable p gets the
    value of p* under the scaled valuation.

    Raises:
        TranslationError: v(q⊥) ≥ 0 (such a valuation cannot refute φ*)
    """
    q = v[QBOT] if QBOT in v else ZERO
    if q >= ZERO:
        raise TranslationError("star", f"countermodel with v({QBOT}) = {q}")
    factor = MINUS_ONE / q
    scaled = Valuation({name: val * factor for name, val in v.values.items()}, Model.Q)
    names = phi.variables()
    values: Dict[str, Fraction] = {}
    for name in names:
        p = Formula.var(name)
        values[name] = eval_a(_star(p), scaled.extended([name]))
    logger.debug("countermodel_transferred", extra={"search_event": {"scale": str(factor)}})
    return Valuation(values, Model.UNIT)


# ---------------------------------------------------------------------------
# Material fragment
# ---------------------------------------------------------------------------


def material_form(f: Formula) -> Formula:
    """
    Re-express an Ł formula over ⊃, ⊥ and variables.

    ∼A = A ⊃ ⊥, A ⊕ B = ∼A ⊃ B, A ∨ B = (A ⊃ B) ⊃ B, A ∧ B = ∼(∼A ∨ ∼B),
    t = ⊥ ⊃ ⊥; ⇒ and ⊇ read as ⊃.
    """

    def lneg(a: Formula) -> Formula:
        return mat_arrow(a, BOT)

    def lor(a: Formula, b: Formula) -> Formula:
        return mat_arrow(mat_arrow(a, b), b)

    def visit(node: Formula) -> Formula:
        kind = node.kind
        if kind in (Kind.VAR, Kind.BOT, Kind.MAT_ARROW):
            return node
        if kind is Kind.TOP:
            return mat_arrow(BOT, BOT)
        if kind is Kind.TILDE:
            return lneg(node.left)
        if kind is Kind.OPLUS:
            return mat_arrow(lneg(node.left), node.right)
        if kind in (Kind.POS_ARROW, Kind.ENTH_ARROW):
            return mat_arrow(node.left, node.right)
        if kind is Kind.OR:
            return lor(node.left, node.right)
        if kind is Kind.AND:
            return lneg(lor(lneg(node.left), lneg(node.right)))
        raise TranslationError("material", kind.value)

    return f.map_bottom_up(visit)


def _material(f: Formula) -> Formula:
    kind = f.kind
    if kind is Kind.VAR:
        if f.name.startswith(RESERVED_PREFIX):
            raise TranslationError("material", f.name)
        return f
    if kind is Kind.BOT:
        return MBOT_VAR
    if kind is Kind.MAT_ARROW:
        return arrow(conj(TOP, _material(f.left)), disj(MBOT_VAR, _material(f.right)))
    raise TranslationError("material", kind.value)


def material(x: Translatable) -> Translatable:
    """
    ⊥ ↦ b and A ⊃ B ↦ (t ∧ A') → (b ∨ B'), b the reserved variable ``$mbot``.

    Raises:
        TranslationError: A connective other than ⊃ or ⊥
    """
    return _lift(_material, x)


# ---------------------------------------------------------------------------
# Enthymematic fragment
# ---------------------------------------------------------------------------

_POSITIVE = frozenset({Kind.VAR, Kind.TOP, Kind.AND, Kind.OR})


def _enthymematic(f: Formula) -> Formula:
    kind = f.kind
    if kind is Kind.ENTH_ARROW:
        return arrow(conj(TOP, _enthymematic(f.left)), _enthymematic(f.right))
    if kind not in _POSITIVE or (kind is Kind.VAR and f.name.startswith(RESERVED_PREFIX)):
        raise TranslationError("enthymematic", f.name if kind is Kind.VAR else kind.value)
    if f.is_atomic:
        return f
    return Formula.of(kind, *(_enthymematic(child) for child in f.children))


def enthymematic(x: Translatable) -> Translatable:
    """
    A ⊇ B ↦ (t ∧ A') → B'; ∧, ∨, t and variables are unchanged.

    Raises:
        TranslationError: A connective outside the positive fragment
    """
    return _lift(_enthymematic, x)


def translate(x: Translatable, translation: str) -> Translatable:
    """Apply a translation by name"""
    if translation == "star":
        return star(x)
    if translation == "material":
        return material(_lift(material_form, x))
    if translation == "enthymematic":
        return enthymematic(x)
    raise ValueError(f"Unknown translation {translation!r}; expected one of {', '.join(TRANSLATIONS)}")
