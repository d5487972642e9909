from __future__ import annotations

import pytest

from tensormoments import boundary
from tensormoments.system import build_system, solve_system
from tensormoments.words import Word, WordError


def test_rank2_a2b2():
    rep = boundary.rank2_a2b2()
    assert rep["verdict"]["nullity"] == 1
    assert rep["relation (aa;bb) + 2(ab;ab) = 0"]
    assert rep["moments not forced to zero"]
    assert rep["null vector solves system"]
    assert rep["holds"]


def test_rank_mismatch_rejected():
    with pytest.raises(WordError):
        boundary.rank_limited_system(Word.parse("aabb"), 2, tensor_rank=3)


def test_antisymmetric_abc():
    rep = boundary.antisym_abc()
    assert rep["verdict"]["nullity"] == 1
    assert rep["verdict"]["unknowns"] == ["(a;bc)", "(b;ac)", "(c;ab)"]
    assert rep["verdict"]["nullspace"] == [["1", "-1", "1"]]
    assert rep["cyclic equality (a;bc) = (b;ca) = (c;ab)"]
    assert rep["symmetric control nullity"] == 0


def test_antisymmetric_null_vector_solves_rows():
    sys = boundary.build_antisymmetric(Word.parse("abc"))
    v = boundary.antisymmetric_system(Word.parse("abc"))
    assert boundary.satisfies(sys.matrix, v.nullspace[0])


def test_antisymmetric_repeated_letter():
    # (a;aa) vanishes identically, leaving only (a;ab)
    sys = boundary.build_antisymmetric(Word.parse("aab"))
    assert [m.label() for m in sys.unknowns] == ["(a;ab)"]
    assert boundary.antisymmetric_system(Word.parse("aab")).nullity == 0


def test_canonical_signs():
    w = Word.parse("a")
    assert boundary.canonical_antisymmetric(w, 1, 1) is None
    assert boundary.canonical_antisymmetric(w, 2, 1).sign == -1
    assert boundary.canonical_antisymmetric(w, 1, 2).sign == 1
    assert boundary.canonical_antisymmetric(w, 2, 1).base == boundary.canonical_antisymmetric(w, 1, 2).base


def test_symmetric_and_antisymmetric_differ_only_in_signs():
    W = Word.parse("abc")
    sym = build_system(W, 1)
    anti = boundary.build_antisymmetric(W)
    assert [abs(x) for row in anti.matrix for x in row] == [abs(x) for row in sym.dense() for x in row]
    assert solve_system(sym).nullity == 0


def test_antisymmetric_needs_length_three():
    with pytest.raises(WordError):
        boundary.build_antisymmetric(Word.parse("abcd"))
