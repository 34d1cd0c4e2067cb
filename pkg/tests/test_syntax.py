"""
Unit tests for the formula language

Tests parsing, precedence, dialect checks, rendering and normalization.
"""
import pytest

from hyperprover.core.constants import MBOT, CalculusId, Dialect
from hyperprover.core.errors import DialectError, FormulaSyntaxError
from hyperprover.core.structures import Hypersequent, Sequent
from hyperprover.core.syntax import (
    BOT,
    TOP,
    Formula,
    Kind,
    arrow,
    conj,
    dialect_of,
    disj,
    enth_arrow,
    mat_arrow,
    natural_key,
    neg,
    normalize,
    oplus,
    parse_focused,
    parse_formula,
    parse_hypersequent,
    parse_labelled,
    parse_sequent,
    plus,
    pos_arrow,
    render_formula,
    tilde,
    var,
)

p, q, r = var("p"), var("q"), var("r")


class TestParsing:
    """Test suite for parse_formula"""

    def test_variable(self):
        assert parse_formula("p") == p

    def test_constants(self):
        assert parse_formula("t") == TOP
        assert parse_formula("bot", "l") == BOT

    def test_abelian_bottom_is_reserved_atom(self):
        """bot in the abelian dialect reads as the designated atom"""
        assert parse_formula("bot", "a") == Formula.var(MBOT)

    def test_implication_is_right_associative(self):
        assert parse_formula("p -> q -> r") == arrow(p, arrow(q, r))

    def test_lattice_binds_tighter_than_implication(self):
        assert parse_formula("p /\\ q -> r") == arrow(conj(p, q), r)

    def test_sum_binds_tighter_than_lattice(self):
        assert parse_formula("p + q /\\ r") == conj(plus(p, q), r)

    def test_lattice_is_left_associative(self):
        assert parse_formula("p \\/ q /\\ r") == conj(disj(p, q), r)

    def test_unary_minus(self):
        assert parse_formula("-p + q") == plus(neg(p), q)
        assert parse_formula("--p") == neg(neg(p))

    def test_prelinearity(self):
        f = parse_formula("(A -> B) \\/ (B -> A)")
        assert f.kind is Kind.OR
        assert f.left == arrow(var("A"), var("B"))
        assert f.right == arrow(var("B"), var("A"))

    def test_lukasiewicz_connectives(self):
        assert parse_formula("~p o+ q", "l") == oplus(tilde(p), q)
        assert parse_formula("p => q", "l") == pos_arrow(p, q)
        assert parse_formula("p .> q", "l") == mat_arrow(p, q)
        assert parse_formula("p =>> q", "l") == enth_arrow(p, q)

    def test_biconditional_per_dialect(self):
        assert parse_formula("p <-> q", "a") == conj(arrow(p, q), arrow(q, p))
        assert parse_formula("p <-> q", "l") == conj(pos_arrow(p, q), pos_arrow(q, p))

    def test_syntax_error(self):
        with pytest.raises(FormulaSyntaxError) as exc_info:
            parse_formula("p ->")
        assert exc_info.value.text == "p ->"

    def test_unbalanced_parenthesis(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("(p -> q")

    def test_negation_outside_lukasiewicz(self):
        with pytest.raises(DialectError) as exc_info:
            parse_formula("-p", "l")
        assert exc_info.value.connective == "-"

    def test_tilde_outside_abelian(self):
        with pytest.raises(DialectError):
            parse_formula("~p", "a")

    def test_group_arrow_outside_lukasiewicz(self):
        with pytest.raises(DialectError):
            parse_formula("p -> q", "l")

    def test_reserved_names_rejected(self):
        with pytest.raises(DialectError):
            parse_formula("$x -> p")

    def test_reserved_names_allowed_on_request(self):
        assert parse_formula("$qbot", allow_reserved=True) == Formula.var("$qbot")


class TestStructures:
    """Test suite for the sequent-level parsers"""

    def test_hypersequent(self):
        h = parse_hypersequent("A |- B | B |- A")
        assert len(h) == 2
        assert h == Hypersequent.of(
            [Sequent.of([var("B")], [var("A")]), Sequent.of([var("A")], [var("B")])]
        )

    def test_empty_sides(self):
        s = parse_sequent("|- p")
        assert len(s.left) == 0
        assert s.right.count(p) == 1
        assert parse_sequent("|-") == Sequent.of()

    def test_focused(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        assert fh.focus == "q"
        assert len(fh.body) == 2

    def test_labelled(self):
        ls = parse_labelled("x1:p, 1:q || r => p |- x1.x2:q")
        labels = {lf.label for lf in ls.formulas()}
        assert labels == {frozenset({"x1"}), frozenset(), frozenset({"x1", "x2"})}
        assert list(ls.store) == [pos_arrow(r, p)]

    def test_labelled_without_store(self):
        ls = parse_labelled("|- 1:p")
        assert len(ls.store) == 0
        assert ls.unlabelled() == Sequent.of([], [p])


class TestRendering:
    """Test suite for render_formula"""

    def test_minimal_parentheses(self):
        assert render_formula(parse_formula("(A -> B) \\/ (B -> A)")) == "(A -> B) \\/ (B -> A)"
        assert render_formula(arrow(p, arrow(q, r))) == "p -> q -> r"
        assert render_formula(arrow(arrow(p, q), r)) == "(p -> q) -> r"

    def test_reserved_atom_renders_as_bottom(self):
        assert render_formula(Formula.var(MBOT)) == "bot"

    @pytest.mark.parametrize(
        "text,dialect",
        [
            ("((q + q + q) /\\ (p + p + p)) -> p + q + q", "a"),
            ("-(p + -q) \\/ t", "a"),
            ("((A => B) => B) => (B => A) => A", "l"),
            ("~(p o+ q) /\\ bot", "l"),
        ],
    )
    def test_render_parses_back(self, text, dialect):
        f = parse_formula(text, dialect)
        assert parse_formula(render_formula(f), dialect) == f


class TestFormula:
    """Test suite for Formula helpers"""

    def test_size_and_connectives(self):
        f = parse_formula("p -> (q + t)")
        assert f.size() == 5
        assert f.connectives() == 2

    def test_variables_in_first_occurrence_order(self):
        assert parse_formula("q -> p + q").variables() == ["q", "p"]

    def test_substitute(self):
        assert arrow(p, q).substitute({"p": conj(q, r)}) == arrow(conj(q, r), q)

    def test_arity_checked(self):
        with pytest.raises(ValueError):
            Formula(Kind.ARROW, (p,))

    def test_dialect_of(self):
        assert dialect_of(parse_formula("p -> q")) is Dialect.ABELIAN
        assert dialect_of(parse_formula("~p", "l")) is Dialect.LUKASIEWICZ

    def test_natural_key(self):
        assert sorted(["x10", "x2", "x1"], key=natural_key) == ["x1", "x2", "x10"]


class TestNormalize:
    """Test suite for normalize"""

    def test_material_arrow_in_abelian_target(self):
        expected = arrow(conj(TOP, p), disj(Formula.var(MBOT), q))
        assert normalize(mat_arrow(p, q), CalculusId.GA) == expected

    def test_enthymematic_arrow_in_abelian_target(self):
        assert normalize(enth_arrow(p, q), "ga_t") == arrow(conj(TOP, p), q)

    def test_abelian_target_keeps_group_connectives(self):
        f = parse_formula("-(p + q) -> p")
        assert normalize(f, CalculusId.GA_L) == f

    def test_lukasiewicz_expansions(self):
        assert normalize(tilde(p), CalculusId.GL) == pos_arrow(p, BOT)
        assert normalize(TOP, CalculusId.GL) == pos_arrow(BOT, BOT)
        assert normalize(oplus(p, q), CalculusId.GL) == pos_arrow(pos_arrow(p, BOT), q)
        assert normalize(mat_arrow(p, q), CalculusId.GL_T) == pos_arrow(p, q)

    def test_lattice_kept_in_hypersequent_target(self):
        assert normalize(conj(p, q), CalculusId.GL) == conj(p, q)

    def test_lattice_expanded_in_labelled_target(self):
        g = normalize(parse_formula("p /\\ q \\/ r", "l"), CalculusId.GL_L)
        assert all(node.kind not in (Kind.AND, Kind.OR) for node in g.walk())
        assert normalize(disj(p, q), CalculusId.GL_S) == pos_arrow(pos_arrow(p, q), q)

    def test_group_connective_rejected_in_lukasiewicz_target(self):
        with pytest.raises(DialectError):
            normalize(neg(p), CalculusId.GL)

    def test_bottom_rejected_in_abelian_target(self):
        with pytest.raises(DialectError):
            normalize(BOT, CalculusId.GA)
