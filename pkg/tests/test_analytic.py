from __future__ import annotations

from fractions import Fraction

import pytest

from tensormoments import analytic
from tensormoments.words import Word, WordError


@pytest.mark.parametrize("k", range(1, 6))
def test_two_letter_chain(k):
    for m in range(k + 1):
        rep = analytic.two_letter_chain(k, m)
        assert rep["rows match"] and rep["chain forces zero"] and rep["nullity"] == 0


def test_two_letter_range():
    with pytest.raises(WordError, match="parameter out of range"):
        analytic.two_letter_chain(2, 3)


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("kind", ["distinct", "repeated", "mixed"])
def test_induction_case(k, kind):
    letters = {"distinct": "bcdef"[:k], "repeated": "b" * k, "mixed": ("bb" + "cde")[:k]}[kind]
    rep = analytic.induction_case(k, Word.parse(letters))
    assert rep["holds"], rep


def test_closed_forms_by_hand():
    # k = 2: P = (1, -1/2, 1) P0 and Q1 = P0/2 - Q0
    assert [analytic.closed_P(2, r)[0] for r in range(3)] == [1, Fraction(-1, 2), 1]
    assert analytic.closed_Q(2, 1) == (Fraction(1, 2), Fraction(-1))


@pytest.mark.parametrize("k", range(1, 7))
def test_akbkc(k):
    rep = analytic.akbkc_closed_forms(k)
    assert rep["rows match"]
    assert rep["closed forms satisfy recurrences"]
    assert rep["P0 = Q0 = 0 forced"]
    assert rep["nullity"] == 0
    assert rep["holds"]


def test_boundary_determinants():
    dets = [int(analytic.akbkc_closed_forms(k)["boundary determinant"]) for k in range(1, 6)]
    # -(-1)^k k(k+1)
    assert dets == [2, -6, 12, -20, 30]
