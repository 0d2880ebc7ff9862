import random

import pytest

from freelinks.diagram import canonical_knots, parse_gauss
from freelinks.errors import MalformedToken, OccurrenceCountNotTwo
from freelinks.harness import (
    PRNG,
    CorpusEntry,
    enumerate_knots,
    enumeration_summary,
    orbit,
    parse_corpus,
    random_move,
)
from freelinks.moves import Caps, apply_move


class TestCorpus:
    def test_parse(self):
        entries = parse_corpus("# header\n\nhopf [link, small]: 1 / 1\ntrefoil: 1 2 3 1 2 3\n")
        assert entries == [CorpusEntry("hopf", "1 / 1", ("link", "small")), CorpusEntry("trefoil", "1 2 3 1 2 3")]
        assert entries[0].diagram.components == (("1",), ("1",))

    @pytest.mark.parametrize("text", ["a: 1 1\na: 2 2", "no colon here", ": 1 1"])
    def test_malformed(self, text):
        with pytest.raises(MalformedToken):
            parse_corpus(text)

    def test_bad_code(self):
        with pytest.raises(OccurrenceCountNotTwo):
            parse_corpus("x: 1 1 1")


class TestOrbit:
    def test_unknot(self):
        for seed in range(5):
            assert orbit(parse_gauss("()"), seed, 10, ["bracket"]).ok

    def test_two_chord_knot(self):
        r = orbit(CorpusEntry("k", "1 2 1 2"), 7, 8, ["gaussian-parity-axioms", "bracket", "delta"])
        assert r.ok and r.to_json()["verdict"] == "all-equal"

    def test_pL_example(self):
        r = orbit(parse_gauss("O A1 O A2 / A1 A2"), 3, 10, ["pL-axioms", "odd-crossing-existence"])
        assert r.ok
        assert all(row["odd-crossing-existence"] is True for row in r.values)

    def test_replayable(self):
        d = parse_gauss("a b a c b c")
        a = orbit(d, 11, 8, ["bracket", "components"]).to_json()
        b = orbit(d, 11, 8, ["bracket", "components"]).to_json()
        assert a == b and a["prng"] == PRNG and a["seed"] == 11

    def test_path_replays(self):
        d = parse_gauss("a b a c b c")
        r = orbit(d, 4, 6, ["components"])
        assert len(r.path) == len(r.values) - 1 == 6

    def test_unknown_invariant(self):
        with pytest.raises(ValueError):
            orbit(parse_gauss("()"), 0, 1, ["colour"])

    def test_violation_reported(self, monkeypatch):
        # crossing count is not an invariant, so the first move breaks it
        from freelinks import harness

        monkeypatch.setitem(harness.VALUE_INVARIANTS, "size", lambda e: e.n_crossings)
        monkeypatch.setattr(harness, "INVARIANTS", harness.INVARIANTS + ["size"])
        r = orbit(parse_gauss("1 2 1 2"), 0, 3, ["size"])
        assert r.to_json()["verdict"] == {"violation": {"step": 1, "invariant": "size"}}
        assert r.violation is not None and r.violation[1] == "size"

    def test_random_move_respects_caps(self):
        rng = random.Random(0)
        d = parse_gauss("1 1")
        for _ in range(20):
            m = random_move(d, rng, Caps(max_crossings=3))
            d = apply_move(d, m)
            assert d.n_crossings <= 3


class TestEnumerate:
    def test_one_chord(self):
        assert [r.code for r in enumerate_knots(1)] == ["a a"]

    def test_two_chords(self):
        records = list(enumerate_knots(2))
        assert [r.code for r in records] == ["a a", "a a b b", "a b a b"]
        assert [r.all_odd for r in records] == [False, False, True]

    def test_no_duplicates(self):
        codes = [r.code for r in enumerate_knots(5)]
        assert len(codes) == len(set(codes)) == sum(len(canonical_knots(n)) for n in range(1, 6))

    def test_minimal_fixed_point_size(self):
        summary = enumeration_summary(list(enumerate_knots(6)))
        assert summary["min_irreducibly_odd_chords"] == 6
        assert len(summary["irreducibly_odd"]) == 3

    def test_limit(self):
        with pytest.raises(ValueError):
            list(enumerate_knots(9))
