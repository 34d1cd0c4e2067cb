"""
Unit tests for multisets, hypersequents, labels and measures
"""
import pytest

from hyperprover.core.errors import EvaluationError, LabelRegularityError
from hyperprover.core.structures import (
    UNIT,
    FocusedHypersequent,
    Hypersequent,
    LabelledFormula,
    LabelledSequent,
    LabelTree,
    Multiset,
    Sequent,
    apply_labelling,
    complexity_cp,
    d_measure,
    make_label,
    multiset_complexity_mc,
    multiset_less,
    nested_complexity,
    nested_less,
    render_label,
    symbol_count,
)
from hyperprover.core.syntax import arrow, conj, parse_focused, parse_formula, plus, var

p, q = var("p"), var("q")


class TestMultiset:
    """Test suite for Multiset"""

    def test_counts(self):
        m = Multiset([1, 1, 2])
        assert m.count(1) == 2
        assert m.count(3) == 0
        assert len(m) == 3

    def test_order_insensitive_equality(self):
        assert Multiset([1, 2, 1]) == Multiset([1, 1, 2])
        assert Multiset([1, 2]) != Multiset([1, 2, 2])

    def test_remove(self):
        assert Multiset([1, 1, 2]).remove(1) == Multiset([1, 2])
        with pytest.raises(ValueError):
            Multiset([1]).remove(2)

    def test_remove_all(self):
        assert Multiset([1, 1, 2]).remove_all(1) == Multiset([2])

    def test_sum_and_truncated_difference(self):
        assert Multiset([1]) + Multiset([1, 2]) == Multiset([1, 1, 2])
        assert Multiset([1, 2]) - Multiset([2, 2, 3]) == Multiset([1])

    def test_scale(self):
        assert Multiset([1, 2]).scale(2) == Multiset([1, 1, 2, 2])

    def test_issubset(self):
        assert Multiset([1]).issubset(Multiset([1, 1]))
        assert not Multiset([1, 1]).issubset(Multiset([1]))

    def test_iteration_follows_first_insertion(self):
        assert list(Multiset([2, 1, 2])) == [2, 2, 1]
        assert Multiset([2, 1]).add(3, 1).distinct() == [2, 1, 3]

    def test_remove_last_copy_drops_item(self):
        m = Multiset([1, 2]).remove(1)
        assert 1 not in m
        assert m.items() == [(2, 1)]
        assert Multiset([1, 1]).remove(1, 2) == Multiset()
        assert not Multiset([1]).remove(1)

    def test_remove_all_absent_item(self):
        assert Multiset([1]).remove_all(2) == Multiset([1])

    def test_from_counts_drops_non_positive(self):
        m = Multiset.from_counts({1: 2, 2: 0})
        assert list(m) == [1, 1]
        assert Multiset([1, 2]).scale(0) == Multiset()

    def test_hash_ignores_order(self):
        assert hash(Multiset([1, 2, 1])) == hash(Multiset([1, 1, 2]))

    def test_immutable_operations(self):
        m = Multiset([1])
        m.add(2)
        assert m == Multiset([1])


class TestHypersequent:
    """Test suite for Sequent and Hypersequent"""

    def test_component_order_irrelevant(self):
        a = Sequent.of([p], [q])
        b = Sequent.of([q], [p])
        assert Hypersequent.of([a, b]) == Hypersequent.of([b, a])
        assert hash(Hypersequent.of([a, b])) == hash(Hypersequent.of([b, a]))

    def test_component_multiplicity_matters(self):
        a = Sequent.of([p], [q])
        assert Hypersequent.of([a, a]) != Hypersequent.of([a])

    def test_replace_and_without(self):
        a = Sequent.of([p], [q])
        b = Sequent.of([q], [p])
        h = Hypersequent.of([a, b])
        assert h.without(0) == Hypersequent.of([b])
        assert h.replace(0, b, b) == Hypersequent.of([b, b, b])

    def test_swap_replaces_every_component(self):
        a = Sequent.of([p], [q])
        b = Sequent.of([q], [p])
        merged = Sequent.of([p, q], [p, q])
        h = Hypersequent.of([a, b])
        assert h.swap((0, 1), merged, b) == Hypersequent.of([merged, b])
        assert h.swap([1], merged).components == (a, merged)

    def test_sequent_sum_and_scale(self):
        s = Sequent.of([p], [q])
        assert s + Sequent.of([q], []) == Sequent.of([p, q], [q])
        assert s.scale(2) == Sequent.of([p, p], [q, q])

    def test_render(self):
        h = Hypersequent.of([Sequent.of([p], [q])])
        assert h.render() == "p |- q"

    def test_variables(self):
        h = Hypersequent.single([arrow(p, q)], [q])
        assert h.variables() == ["p", "q"]


class TestLabels:
    """Test suite for labels and the label tree"""

    def test_render_label(self):
        assert render_label(UNIT) == "1"
        assert render_label(make_label("x2", "x10", "x1")) == "x1.x2.x10"

    def test_tree_paths(self):
        tree = LabelTree().extend("x1", None).extend("x2", "x1").extend("x3", None)
        assert tree.path("x2") == make_label("x1", "x2")
        assert tree.maximal() == ["x1", "x3"]
        assert tree.is_path(make_label("x1", "x2"))
        assert not tree.is_path(make_label("x2"))

    def test_extend_rejects_duplicates(self):
        tree = LabelTree().extend("x1", None)
        with pytest.raises(LabelRegularityError):
            tree.extend("x1", None)
        with pytest.raises(LabelRegularityError):
            tree.extend("x2", "x9")

    def test_fresh_child_attaches_below_deepest(self):
        tree = LabelTree().extend("x1", None).fresh_child(make_label("x1"), "x2")
        assert tree.parent_map["x2"] == "x1"

    def test_remove_root_child(self):
        tree = LabelTree().extend("x1", None).extend("x2", "x1")
        assert tree.remove_root_child("x1").maximal() == ["x2"]
        with pytest.raises(LabelRegularityError):
            tree.remove_root_child("x2")

    def test_infer(self):
        tree = LabelTree.infer([make_label("x1"), make_label("x1", "x2"), make_label("x3")])
        assert tree.maximal() == ["x1", "x3"]
        assert tree.parent_map["x2"] == "x1"

    def test_infer_rejects_non_paths(self):
        with pytest.raises(LabelRegularityError):
            LabelTree.infer([make_label("a"), make_label("b"), make_label("a", "b")])


class TestLabelledSequent:
    """Test suite for LabelledSequent"""

    def test_lift_puts_everything_under_unit(self):
        ls = LabelledSequent.lift(Sequent.of([p], [q]))
        assert ls.labels() == [UNIT]
        assert ls.unlabelled() == Sequent.of([p], [q])

    def test_atomic_labels_sorted(self):
        ls = LabelledSequent.of(
            [LabelledFormula(make_label("x10"), p)], [LabelledFormula(make_label("x2", "x1"), q)]
        )
        assert ls.atomic_labels() == ["x1", "x2", "x10"]

    def test_apply_labelling(self):
        ls = LabelledSequent.of(
            [LabelledFormula(UNIT, p), LabelledFormula(make_label("x1"), q)],
            [LabelledFormula(make_label("x1"), p)],
        )
        assert apply_labelling({"x1": 0}, ls) == Sequent.of([p], [])
        assert apply_labelling({"x1": 1}, ls) == Sequent.of([p, q], [p])

    def test_apply_labelling_needs_every_atom(self):
        ls = LabelledSequent.of([LabelledFormula(make_label("x1"), p)], [])
        with pytest.raises(EvaluationError):
            apply_labelling({}, ls)


class TestMeasures:
    """Test suite for the termination measures"""

    def test_complexity(self):
        assert complexity_cp(p) == 0
        assert complexity_cp(arrow(p, plus(q, p))) == 2

    def test_multiset_complexity(self):
        h = Hypersequent.single([conj(p, q)], [p])
        assert multiset_complexity_mc(h) == Multiset([1, 0])

    def test_multiset_order(self):
        assert multiset_less(Multiset([1, 1, 1]), Multiset([2]))
        assert not multiset_less(Multiset([2]), Multiset([1, 1, 1]))
        assert not multiset_less(Multiset([2]), Multiset([2]))
        assert multiset_less(Multiset([]), Multiset([0]))

    def test_nested_order(self):
        before = nested_complexity(Hypersequent.single([], [parse_formula("p /\\ q")]))
        after = nested_complexity(
            Hypersequent.of([Sequent.of([], [p]), Sequent.of([], [q])])
        )
        assert nested_less(after, before)

    def test_d_measure(self):
        fh = parse_focused("[q] q |- p | p, p |- q, q")
        assert d_measure(fh) == 3

    def test_d_measure_zero_when_balanced(self):
        fh = FocusedHypersequent("p", Hypersequent.single([p], [p]))
        assert d_measure(fh) == 0

    def test_symbol_count(self):
        h = Hypersequent.of([Sequent.of([p], [arrow(p, q)]), Sequent.of()])
        assert symbol_count(h) == 4 + 2
