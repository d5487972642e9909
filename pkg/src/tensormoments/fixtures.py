"""Worked systems and published spectral values used as regression fixtures.

Each system fixture lists its rows as ``"w1|w2": {left: coefficient}``;
the right word of every moment is the complement of ``left`` in W.
"""

from __future__ import annotations

from dataclasses import dataclass

from .system import EquationSystem, Moment
from .words import Word, quotient


@dataclass(frozen=True)
class SystemFixture:
    name: str
    word: str
    k: int
    rows: dict[str, dict[str, int]]
    # rows listed are only a sample of the system (the rest follow by symmetry)
    partial: bool = False


SYSTEMS = (
    SystemFixture("a, k=0", "a", 0, {"a|0": {"0": 1}}),
    SystemFixture("a2b, k=1", "aab", 1, {"aa|b": {"a": 2}, "ab|a": {"a": 1, "b": 1}}),
    SystemFixture(
        "abc, k=1",
        "abc",
        1,
        {"ab|c": {"a": 1, "b": 1}, "bc|a": {"b": 1, "c": 1}, "ac|b": {"c": 1, "a": 1}},
    ),
    SystemFixture("a5, k=2", "aaaaa", 2, {"aaa|aa": {"aa": 3}}),
    SystemFixture("a4b, k=2", "aaaab", 2, {"aaa|ab": {"aa": 3}, "aab|aa": {"ab": 2, "aa": 1}}),
    SystemFixture(
        "a3b2, k=2",
        "aaabb",
        2,
        {"aaa|bb": {"aa": 3}, "aab|ab": {"ab": 2, "aa": 1}, "abb|aa": {"bb": 1, "ab": 2}},
    ),
    SystemFixture(
        "a3bc, k=2",
        "aaabc",
        2,
        {
            "aaa|bc": {"aa": 3},
            "aab|ac": {"ab": 2, "aa": 1},
            "aac|ab": {"ac": 2, "aa": 1},
            "abc|aa": {"ab": 1, "ac": 1, "bc": 1},
        },
    ),
    SystemFixture(
        "a2b2c, k=2",
        "aabbc",
        2,
        {
            "aab|bc": {"ab": 2, "aa": 1},
            "abb|ac": {"ab": 2, "bb": 1},
            "bbc|aa": {"bc": 2, "bb": 1},
            "abc|ab": {"ab": 1, "ac": 1, "bc": 1},
            "aac|bb": {"ac": 2, "aa": 1},
        },
    ),
    SystemFixture(
        "a2bcd, k=2",
        "aabcd",
        2,
        {
            "aab|cd": {"ab": 2, "aa": 1},
            "aac|bd": {"ac": 2, "aa": 1},
            "aad|bc": {"ad": 2, "aa": 1},
            "abc|ad": {"ab": 1, "ac": 1, "bc": 1},
            "acd|ab": {"ac": 1, "ad": 1, "cd": 1},
            "abd|ac": {"ab": 1, "ad": 1, "bd": 1},
            "bcd|aa": {"bc": 1, "bd": 1, "cd": 1},
        },
    ),
    SystemFixture("abcde, k=2", "abcde", 2, {"abc|de": {"ab": 1, "bc": 1, "ac": 1}}, partial=True),
)

# k: (N, exact determinant or None, log10 |det| as printed, eigenvalue list or None)
TABLE = {
    1: (3, 2, None, [(2, 1), (-1, 2)]),
    2: (10, 48, None, [(3, 1), (-2, 4), (1, 5)]),
    3: (35, 47775744, None, [(4, 1), (-3, 6), (2, 14), (-1, 14)]),
    4: (126, None, 32.8, [(5, 1), (-4, 8), (3, 27), (-2, 48), (1, 42)]),
    5: (462, None, 136.4, [(6, 1), (-5, 10), (4, 44), (-3, 110), (2, 165), (-1, 132)]),
    6: (1716, None, 557.7, None),
    7: (6435, None, 2259.5, None),
}
LOG10_TOL = {4: 0.1, 5: 0.2, 6: 0.1, 7: 0.1}


def fixture_rows(fx: SystemFixture) -> dict[Word, dict[Moment, int]]:
    W = Word.parse(fx.word)
    out = {}
    for label, terms in fx.rows.items():
        w1, w2 = (Word.parse(s) for s in label.split("|"))
        if w1 + w2 != W:
            raise ValueError(f"fixture row {label} does not recombine to {fx.word}")
        out[w1] = {Moment(Word.parse(u), quotient(W, Word.parse(u))): c for u, c in terms.items()}
    return out


def rows_match(fx: SystemFixture, sys: EquationSystem) -> bool:
    """Every listed row appears verbatim; for complete fixtures no other rows exist."""
    expected = fixture_rows(fx)
    if not fx.partial and len(expected) != len(sys.rows):
        return False
    for w1, terms in expected.items():
        if w1 not in sys.rows or sys.row_terms(sys.row_index(w1)) != terms:
            return False
    return True
