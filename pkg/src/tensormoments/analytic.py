"""Closed-form solutions of three structured families of moment systems.

Each family is solved by hand-style recurrences read off the generated
rows, then cross-checked against the generic rational solver on the very
same system.  Letter a is id 0, b is id 1, c is id 2.

* two-letter chain: W = a^(2k+1-m) b^m, split k, 0 <= m <= k.
* induction case:   W = a^(k+1) x_k with x_k any k-letter word free of a.
* a^k b^k c:        split k, values P_r and Q_r carried as exact linear
  combinations of the two free parameters (P_0, Q_0).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .system import EquationSystem, Moment, build_system, solve_system
from .words import Word, WordError, quotient

A, B, C = 0, 1, 2


def ab(i: int, j: int, c: int = 0) -> Word:
    return Word((i, j, c))


def _row_for(sys: EquationSystem, w1: Word) -> dict[Moment, int]:
    return sys.row_terms(sys.row_index(w1))


def _moment(W: Word, left: Word) -> Moment:
    return Moment(left, quotient(W, left))


def two_letter_chain(k: int, m: int) -> dict:
    """Rows <a^(k+1-r) b^r | ...> give (k+1-r) Q(r) + r Q(r-1) = 0, so Q = 0."""
    if not 0 <= m <= k:
        raise WordError("parameter out of range")
    W = ab(2 * k + 1 - m, m)
    sys = build_system(W, k)
    rows_ok = True
    coefficients = []
    for r in range(m + 1):
        row = _row_for(sys, ab(k + 1 - r, r))
        expect = {_moment(W, ab(k - r, r)): k + 1 - r}
        if r:
            expect[_moment(W, ab(k + 1 - r, r - 1))] = r
        rows_ok &= row == expect
        coefficients.append((k + 1 - r, r))
    # forward solve of the chain: Q(r) = -r Q(r-1) / (k+1-r), seeded by Q(0) = 0
    q = [Fraction(0)]
    for r in range(1, m + 1):
        q.append(-r * q[r - 1] / (k + 1 - r))
    verdict = solve_system(sys)
    return {
        "case": "two-letter",
        "k": k,
        "m": m,
        "word": str(W),
        "coefficients": [list(c) for c in coefficients],
        "rows match": rows_ok,
        "chain values": [str(v) for v in q],
        "chain forces zero": all(v == 0 for v in q) and len(q) == len(sys.unknowns),
        "nullity": verdict.nullity,
        "holds": rows_ok and verdict.nullity == 0 and all(v == 0 for v in q),
    }


def induction_case(k: int, x: Word) -> dict:
    """W = a^(k+1) x: unknowns graded by how many letters of x sit on the left.

    The row a^(k+1-r) y (y a sub-word of x with r letters) contains the
    level-r unknown (a^(k-r) y; ...) with coefficient k+1-r and otherwise
    only level r-1 unknowns, so vanishing propagates level by level.
    """
    if len(x) != k:
        raise WordError("x must have length k")
    if x.count(A):
        raise WordError("letter a occurs in x")
    W = Word((k + 1,)) + x
    sys = build_system(W, k)
    top = _row_for(sys, Word((k + 1,)))
    base = _moment(W, Word((k,)))
    r0_ok = top == {base: k + 1}
    r1_ok = True
    for b in x.letters:
        y = Word.from_letters([b])
        row = _row_for(sys, Word((k,)) + y)
        want = {_moment(W, Word((k - 1,)) + y): k, base: 1}
        r1_ok &= row == want

    # level-by-level elimination, independent of the generic solver
    level = {m: len(m.left) - m.left.count(A) for m in sys.unknowns}
    zero: set[Moment] = set()
    for r in range(k + 1):
        for u in (m for m in sys.unknowns if level[m] == r):
            w1 = u.left + Word((1,))
            row = _row_for(sys, w1)
            others = [m for m in row if m != u]
            if row.get(u, 0) and all(m in zero for m in others):
                zero.add(u)
    verdict = solve_system(sys)
    inductive = len(zero) == len(sys.unknowns)
    return {
        "case": "induction",
        "k": k,
        "x": x.text(),
        "word": str(W),
        "r=0 row": {m.label(): c for m, c in top.items()},
        "r=0 coefficient k+1": r0_ok,
        "r=1 coefficients (k, 1)": r1_ok,
        "induction forces zero": inductive,
        "nullity": verdict.nullity,
        "holds": r0_ok and r1_ok and inductive and verdict.nullity == 0,
    }


# -- a^k b^k c ---------------------------------------------------------------

Lin = tuple[Fraction, Fraction]  # coefficients of (P_0, Q_0)


def _lin(p0=0, q0=0) -> Lin:
    return (Fraction(p0), Fraction(q0))


def _add(*terms: tuple[Fraction | int, Lin]) -> Lin:
    return (sum((c * v[0] for c, v in terms), Fraction(0)), sum((c * v[1] for c, v in terms), Fraction(0)))


def closed_P(k: int, r: int) -> Lin:
    return _lin(Fraction((-1) ** r * factorial(r) * factorial(k - r), factorial(k)))


def closed_Q(k: int, r: int) -> Lin:
    f = Fraction((-1) ** r * factorial(r) * factorial(k - r - 1), factorial(k - 1))
    return (f * Fraction(-r, k), f)


def akbkc_closed_forms(k: int) -> dict:
    """Solve the a^k b^k c recurrences and verify the closed forms.

    P_r = (a^(k-r) b^r; a^r b^(k-r) c),  Q_r = (a^(k-r-1) b^r c; a^(r+1) b^(k-r)).
    """
    if k < 1:
        raise WordError("k must be at least 1")
    W = ab(k, k, 1)
    sys = build_system(W, k)
    P_m = [_moment(W, ab(k - r, r)) for r in range(k + 1)]
    Q_m = [_moment(W, ab(k - r - 1, r, 1)) for r in range(k)]

    # coefficients read from the generated rows
    rows_ok = True
    p_rows = []
    for r in range(k):
        row = _row_for(sys, ab(k - r, r + 1))
        rows_ok &= row == {P_m[r + 1]: k - r, P_m[r]: r + 1}
        p_rows.append(row)
    q_rows = []
    for r in range(k + 1):
        row = _row_for(sys, ab(k - r, r, 1))
        want = {P_m[r]: 1}
        if r < k:
            want[Q_m[r]] = k - r
        if r > 0:
            want[Q_m[r - 1]] = r
        rows_ok &= row == want
        q_rows.append(row)
    rows_ok &= len(sys.rows) == 2 * k + 1 and len(sys.unknowns) == 2 * k + 1

    # recurrences solved forward from the free parameters
    P = [_lin(1, 0)]
    for r in range(k):
        row = p_rows[r]
        P.append(_add((-Fraction(row[P_m[r]], row[P_m[r + 1]]), P[r])))
    Q = [_lin(0, 1)]
    for r in range(1, k):
        row = q_rows[r]
        c = Fraction(1, row[Q_m[r]])
        Q.append(_add((-c * row[Q_m[r - 1]], Q[r - 1]), (-c * row[P_m[r]], P[r])))

    P_closed = all(P[r] == closed_P(k, r) for r in range(k + 1))
    Q_closed = all(Q[r] == closed_Q(k, r) for r in range(k))

    # substitute the closed forms back into every recurrence
    residual_P = [_add((k - r, closed_P(k, r + 1)), (r + 1, closed_P(k, r))) for r in range(k)]
    residual_Q = [
        _add((k - r, closed_Q(k, r)), (r, closed_Q(k, r - 1)), (1, closed_P(k, r))) for r in range(1, k)
    ]
    substitution_ok = all(v == _lin() for v in residual_P + residual_Q)

    # boundary rows r = 0 and r = k evaluated on the solved values
    value = dict(zip(P_m, P)) | dict(zip(Q_m, Q))
    first = _add(*((c, value[m]) for m, c in q_rows[0].items()))
    last = _add(*((c, value[m]) for m, c in q_rows[k].items()))
    sgn = (-1) ** k
    first_ok = first == _lin(1, k)
    last_ok = last == _lin(sgn * k, -sgn * k)
    det2 = first[0] * last[1] - first[1] * last[0]
    verdict = solve_system(sys)
    return {
        "case": "akbkc",
        "k": k,
        "word": str(W),
        "rows match": rows_ok,
        "P_r": [[str(v[0]), str(v[1])] for v in P],
        "Q_r": [[str(v[0]), str(v[1])] for v in Q],
        "P closed form": P_closed,
        "Q closed form": Q_closed,
        "closed forms satisfy recurrences": substitution_ok,
        "r=0 boundary kQ0 + P0": first_ok,
        "r=k boundary (-1)^k (kP0 - kQ0)": last_ok,
        "boundary determinant": str(det2),
        "P0 = Q0 = 0 forced": det2 != 0,
        "nullity": verdict.nullity,
        "holds": all(
            [rows_ok, P_closed, Q_closed, substitution_ok, first_ok, last_ok, det2 != 0, verdict.nullity == 0]
        ),
    }
