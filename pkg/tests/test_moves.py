import pytest
from hypothesis import given, settings, strategies as st

from freelinks.diagram import LinkDiagram, canonicalize, parse_gauss
from freelinks.errors import FewerThanTwoComponents, InvalidSite
from freelinks.moves import (
    DEC,
    INC,
    NEUTRAL,
    R1,
    R2,
    R3,
    Budget,
    Caps,
    MoveApplication,
    apply_move,
    bounded_equiv,
    certified_no_trivial_component,
    certified_nonsplit,
    crossing_delta,
    decreasing_r1_sites,
    decreasing_r2_sites,
    enumerate_moves,
    inverse,
    r3_sites,
    reduced_form,
    relative_odd_count,
    replay,
)
from test_diagram import link_diagrams

SMALL_CAPS = Caps(max_crossings=6)


def ordered_form(d):
    return canonicalize(d, ordered=True, oriented=True)


class TestSites:
    def test_r1(self):
        (m,) = decreasing_r1_sites(parse_gauss("1 1"))
        assert m.labels == ("1",)

    def test_r2_pairs(self):
        (m,) = decreasing_r2_sites(parse_gauss("1 2 1 2"))
        assert set(m.labels) == {"1", "2"}
        assert m.pairs == (((0, 0), (0, 1)), ((0, 2), (0, 3)))

    def test_r2_same_order(self):
        assert {frozenset(m.labels) for m in decreasing_r2_sites(parse_gauss("a b c a b c"))} >= {frozenset("ab")}

    def test_no_r2_on_two_letter_component(self):
        # the two cyclic pairs of "a b" share occurrences
        assert decreasing_r2_sites(parse_gauss("a b / a c b c")) == []

    def test_r3_site(self):
        d = parse_gauss("a b x b c y c a z x y z")
        assert any(set(m.labels) == {"a", "b", "c"} for m in r3_sites(d))


class TestApply:
    def test_r2(self):
        (m,) = decreasing_r2_sites(parse_gauss("u w w u"))
        assert apply_move(parse_gauss("u w w u"), m).components == ((),)

    def test_r1(self):
        d = parse_gauss("x u u y x y")
        (m,) = decreasing_r1_sites(d)
        assert apply_move(d, m).components == (("x", "y", "x", "y"),)

    def test_r3_swaps_each_pair(self):
        d = parse_gauss("a b x b c y c a z x y z")
        m = next(m for m in r3_sites(d) if set(m.labels) == {"a", "b", "c"})
        e = apply_move(d, m)
        assert e.components == (("b", "a", "x", "c", "b", "y", "a", "c", "z", "x", "y", "z"),)

    def test_increasing(self):
        d = parse_gauss("a a")
        e = apply_move(d, MoveApplication(R2, INC, ("u", "w"), gaps=((0, 0), (0, 1))))
        assert e.components == (("u", "w", "a", "w", "u", "a"),)
        e = apply_move(d, MoveApplication(R1, INC, ("x",), gaps=((0, 1),)))
        assert e.components == (("a", "x", "x", "a"),)

    def test_invalid_sites(self):
        d = parse_gauss("1 2 1 2")
        with pytest.raises(InvalidSite):
            apply_move(d, MoveApplication(R1, DEC, ("1",), (((0, 0), (0, 1)),)))
        with pytest.raises(InvalidSite):
            apply_move(d, MoveApplication(R2, DEC, ("1", "2"), (((0, 0), (0, 1)), ((0, 1), (0, 2)))))
        with pytest.raises(InvalidSite):
            apply_move(d, MoveApplication(R1, INC, ("1",), gaps=((0, 0),)))
        with pytest.raises(InvalidSite):
            apply_move(d, MoveApplication(R3, NEUTRAL, ("1", "2", "3"), (((0, 0), (0, 1)),)))

    @settings(max_examples=40, deadline=None)
    @given(link_diagrams(4), st.data())
    def test_move_laws(self, d, data):
        moves = enumerate_moves(d, SMALL_CAPS)
        m = data.draw(st.sampled_from(moves)) if moves else None
        if m is None:
            return
        e = apply_move(d, m)
        assert len(e.components) == len(d.components)
        assert e.n_crossings == d.n_crossings + crossing_delta(m)
        back = apply_move(e, inverse(d, m))
        assert ordered_form(back) == ordered_form(d)

    @settings(max_examples=30, deadline=None)
    @given(link_diagrams(5))
    def test_r3_twice_is_identity(self, d):
        for m in r3_sites(d)[:4]:
            e = apply_move(d, m)
            again = [x for x in r3_sites(e) if set(x.labels) == set(m.labels)]
            assert any(ordered_form(apply_move(e, x)) == ordered_form(d) for x in again)


class TestEquivalence:
    def test_r1_path(self):
        v = bounded_equiv(parse_gauss("1 1"), parse_gauss("()"))
        assert v.outcome == "Equivalent"
        assert ordered_form(replay(parse_gauss("1 1"), v.path)) == "()"

    def test_mixed_parity(self):
        v = bounded_equiv(parse_gauss("1 / 1"), parse_gauss("() / ()"))
        assert (v.outcome, v.invariant) == ("Distinct", "mixed-parity")

    def test_r2_pin(self):
        v = bounded_equiv(parse_gauss("1 2 1 2"), parse_gauss("()"), Budget(max_depth=1))
        assert v.outcome == "Equivalent" and len(v.path) == 1

    def test_component_bracket(self):
        odd = parse_gauss("a b a c d b e c e f d f")
        assert bounded_equiv(odd, parse_gauss("()")).invariant == "component-bracket"

    @pytest.mark.parametrize(
        "a, b",
        [
            ("1 1", "()"),
            ("1 / 1", "() / ()"),
            ("a b a c b c", "()"),
            ("a b / a b", "() / ()"),
        ],
    )
    def test_symmetric(self, a, b):
        budget = Budget(max_depth=2, max_states=3000)
        assert bounded_equiv(parse_gauss(a), parse_gauss(b), budget).outcome == \
            bounded_equiv(parse_gauss(b), parse_gauss(a), budget).outcome

    def test_paths_replay(self):
        start = parse_gauss("a b c a b c")
        v = bounded_equiv(start, parse_gauss("()"), Budget(max_depth=3))
        assert v.outcome == "Equivalent"
        assert ordered_form(replay(start, v.path)) == "()"


class TestSplit:
    def test_examples(self):
        assert certified_nonsplit(parse_gauss("1 / 1")).outcome == "Nonsplit"
        v = certified_nonsplit(parse_gauss("a b / b a"))
        assert v.outcome == "Split" and len(v.path) == 1
        assert certified_nonsplit(parse_gauss("() / ()")).outcome == "Split"
        with pytest.raises(FewerThanTwoComponents):
            certified_nonsplit(parse_gauss("a a"))

    def test_relative_parity_certificate(self):
        # even linking, but v is odd relative to the other component
        d = parse_gauss("O A1 O A2 / A1 A2")
        assert relative_odd_count(d, 0, [1]) == 1
        assert certified_nonsplit(d).certificate == "relative-parity"

    def test_relative_count_needs_even_linking(self):
        assert relative_odd_count(parse_gauss("a x a / x"), 0, [1]) is None

    def test_trivial_component(self):
        assert certified_no_trivial_component(parse_gauss("a a / ()")).outcome == "Split"
        assert certified_no_trivial_component(parse_gauss("1 / 1")).outcome == "Nonsplit"
        # the second component is a nontrivial knot on its own
        d = parse_gauss("() / a b a c d b e c e f d f")
        assert certified_no_trivial_component(d).outcome == "Split"
        d = parse_gauss("x y / a b a c d b e c e f d f x y")
        assert certified_no_trivial_component(d).outcome == "Split"


class TestReducedForm:
    def test_unknots(self):
        assert reduced_form(parse_gauss("1 2 1 2")) == "()"
        assert reduced_form(parse_gauss("a b c a b c")) == "()"

    def test_irreducible(self):
        d = parse_gauss("a b a c d b e c e f d f")
        assert reduced_form(d) == canonicalize(d)
