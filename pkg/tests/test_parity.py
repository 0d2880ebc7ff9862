import pytest
from hypothesis import given, settings, strategies as st

import oracles
from freelinks.diagram import LinkDiagram, halves, parse_gauss
from freelinks.errors import InvalidCycle, NotPure, OddComponentLength, OddMixedCount
from freelinks.moves import INC, R2, Caps, MoveApplication, decreasing_r1_sites, decreasing_r2_sites, enumerate_moves
from freelinks.parity import (
    GAUSSIAN,
    P_L,
    check_parity_axioms,
    cycle_basis,
    gaussian_parities,
    gaussian_parity,
    homology_parity,
    p_L,
)
from test_diagram import knot_words


class TestGaussian:
    def test_examples(self):
        assert gaussian_parity(parse_gauss("1 1"), "1") == 0
        assert gaussian_parities(parse_gauss("1 2 1 2")).values == {"1": 1, "2": 1}
        assert gaussian_parities(parse_gauss("1 2 1 3 2 3")).values == {"1": 1, "2": 0, "3": 1}

    def test_errors(self):
        with pytest.raises(NotPure):
            gaussian_parity(parse_gauss("1 / 1"), "1")
        with pytest.raises(OddComponentLength):
            gaussian_parity(parse_gauss("a x a / x"), "a")

    @given(knot_words(7))
    def test_matches_linking_oracle(self, word):
        d = LinkDiagram((word,))
        ours = gaussian_parities(d).values
        assert ours == {v: oracles.linking_parity(list(word), v) for v in set(word)}
        assert sum(ours.values()) % 2 == 0

    @given(knot_words(7))
    def test_half_independence(self, word):
        d = LinkDiagram((word,))
        for v in d.crossings():
            h1, h2 = halves(d, v)
            assert len(h1) % 2 == len(h2) % 2


class TestPL:
    def test_examples(self):
        assert p_L(parse_gauss("O A1 O A2 / A1 A2"), "O") == 1
        assert p_L(parse_gauss("v A1 A2 v / A1 A2"), "v") == 0
        assert p_L(parse_gauss("v v / ()"), "v") == 0

    def test_odd_mixed(self):
        with pytest.raises(OddMixedCount):
            p_L(parse_gauss("v x v / x"), "v")

    def test_half_independence(self):
        d = parse_gauss("v A1 w A2 v A3 w A4 / A1 A3 A2 A4")
        mixed = set(d.mixed_crossings(0, 1))
        for v in ("v", "w"):
            h1, h2 = halves(d, v)
            assert sum(x in mixed for x in h1) % 2 == sum(x in mixed for x in h2) % 2


class TestHomology:
    def test_basis_invalid_loops(self):
        basis = cycle_basis(parse_gauss("v A1 v A2 / x A1 x A2"), 1)
        assert basis.rank == 2
        assert [c.valid for c in basis.cycles] == [False, False]

    def test_basis_valid_loops(self):
        basis = cycle_basis(parse_gauss("v A1 v A2 A3 A4 / x A1 A2 x A3 A4"), 1)
        assert basis.rank == 2 and all(c.valid for c in basis.cycles)

    def test_empty_basis(self):
        assert cycle_basis(parse_gauss("v v / ()"), 1).rank == 0

    def test_values(self):
        d = parse_gauss("v A1 v A2 A3 A4 / x A1 A2 x A3 A4")
        cycles = {c.markers: c for c in cycle_basis(d, 1).cycles}
        assert homology_parity(d, "v", cycles[frozenset({"A1", "A2"})]) == 1
        assert homology_parity(d, "v", cycles[frozenset({"A3", "A4"})]) == 0

    def test_invalid_cycle(self):
        d = parse_gauss("v A1 v A2 / x A1 x A2")
        with pytest.raises(InvalidCycle):
            homology_parity(d, "v", cycle_basis(d, 1).cycles[0])

    def test_rank_formula(self):
        # k = E - V + 1 for a connected component graph
        d = parse_gauss("v A1 v A2 / x y A1 x z y A2 z")
        basis = cycle_basis(d, 1)
        assert basis.rank == len(basis.edges) - len(basis.vertices) + 1


class TestAxioms:
    def test_examples(self):
        d = parse_gauss("1 1")
        assert check_parity_axioms(GAUSSIAN, d, decreasing_r1_sites(d)[0]).ok
        d = parse_gauss("1 2 1 2")
        assert check_parity_axioms(GAUSSIAN, d, decreasing_r2_sites(d)[0]).ok

    def test_pL_mixed_r2(self):
        d = parse_gauss("O A1 O A2 / A1 A2")
        for g1 in [(0, i) for i in range(4)]:
            for g2 in [(1, 0), (1, 1)]:
                for same in (False, True):
                    m = MoveApplication(R2, INC, ("u", "w"), gaps=(g1, g2), same=same)
                    r = check_parity_axioms(P_L, d, m)
                    assert r.applicable and r.ok

    @settings(max_examples=40, deadline=None)
    @given(knot_words(5))
    def test_gaussian_all_moves(self, word):
        d = LinkDiagram((word,))
        for m in enumerate_moves(d, Caps(max_crossings=7)):
            assert check_parity_axioms(GAUSSIAN, d, m).ok

    @pytest.mark.parametrize(
        "code", ["O A1 O A2 / A1 A2", "a b a c A1 c A2 b / A1 d A2 d", "v A1 w A2 v A3 w A4 / A1 A3 A2 A4"]
    )
    def test_pL_all_moves(self, code):
        d = parse_gauss(code)
        for m in enumerate_moves(d, Caps(max_crossings=d.n_crossings + 2)):
            r = check_parity_axioms(P_L, d, m)
            assert r.ok, r.violations
