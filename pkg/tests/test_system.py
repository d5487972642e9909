from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest

from tensormoments import fixtures
from tensormoments.system import (
    Moment,
    SplitError,
    Verdict,
    build_system,
    counterexamples,
    solve_system,
    sweep_patterns,
    system_json,
)
from tensormoments.words import Word, WordError, partitions, pattern_word


@pytest.mark.parametrize("fx", fixtures.SYSTEMS, ids=lambda fx: fx.name)
def test_worked_systems(fx):
    sys = build_system(Word.parse(fx.word), fx.k)
    assert fixtures.rows_match(fx, sys)
    assert solve_system(sys).nullity == 0


def test_abcde_is_ten_by_ten():
    sys = build_system(Word.parse("abcde"), 2)
    assert sys.shape == (10, 10)
    assert sys.row_terms(sys.row_index(Word.parse("abc"))) == {
        Moment(Word.parse("ab"), Word.parse("cde")): 1,
        Moment(Word.parse("ac"), Word.parse("bde")): 1,
        Moment(Word.parse("bc"), Word.parse("ade")): 1,
    }


def test_row_and_moment_labels():
    sys = build_system(Word.parse("aab"), 1)
    assert [sys.row_label(i) for i in range(2)] == ["<aa|b>", "<ab|a>"]
    assert [m.label() for m in sys.unknowns] == ["(a;ab)", "(b;aa)"]
    assert Moment.parse("(a;ab)") == sys.unknowns[0]


def test_split_errors():
    with pytest.raises(SplitError, match="split too large"):
        build_system(Word.parse("ab"), 5)
    with pytest.raises(WordError, match="right word empty"):
        build_system(Word.parse("ab"), 2)
    with pytest.raises(WordError, match="negative split"):
        build_system(Word.parse("ab"), -1)


@pytest.mark.parametrize("length", range(1, 10))
def test_column_sums_and_row_sums(length):
    for k in range(0, length):
        for pat in partitions(length):
            sys = build_system(pattern_word(pat), k)
            hits = Counter(col for _, col, _ in sys.triplets)
            for j, m in enumerate(sys.unknowns):
                assert hits[j] == len(m.right.letters)
            for i in range(len(sys.rows)):
                assert sum(sys.row_terms(i).values()) == k + 1


@pytest.mark.parametrize("pat", [(3, 1, 1), (2, 2, 1), (2, 1, 1, 1)])
def test_relabeling_equivariance(pat):
    W = pattern_word(pat)
    base = solve_system(build_system(W, 2))
    for perm in permutations(range(len(pat))):
        v = solve_system(build_system(W.relabel(perm), 2))
        assert (v.rank, v.nullity) == (base.rank, base.nullity)


@pytest.mark.parametrize("length,k", [(3, 1), (5, 2), (7, 3)])
def test_sweeps_force_zero(length, k):
    res = sweep_patterns(length, k)
    assert len(res) == len(list(partitions(length)))
    assert counterexamples(res) == []


def test_equal_split_keeps_free_moments():
    res = dict(sweep_patterns(4, 2))
    assert res[(2, 2)].nullity == 1
    assert not res[(2, 2)].conjecture_applicable
    assert res[(2, 2)].nullspace == [[1, Fraction(-1, 2), 1]]


def test_verdict_json_round_trip():
    sys = build_system(Word.parse("aabb"), 2)
    v = solve_system(sys)
    doc = json.loads(json.dumps(v.to_json()))
    assert Verdict.from_json(doc) == v
    full = json.loads(json.dumps(system_json(sys, v)))
    assert full["nullity"] == 1 and full["unknowns"] == ["(aa;bb)", "(ab;ab)", "(bb;aa)"]


def test_sweep_nine_letters_split_four():
    # one level beyond the acceptance sweeps: all 30 patterns of length 9
    res = sweep_patterns(9, 4)
    assert len(res) == 30 and counterexamples(res) == []
