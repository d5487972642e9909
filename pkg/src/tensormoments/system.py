"""Linear systems relating the integral moments of a conserved symmetric tensor.

For a combined word W and a split length k, every (k+1)-letter sub-multiset
w1 of W with complement w2 = W/w1 gives one identity

    <w1|w2> = sum over distinct letters a of w1 of  mult(a, w1) * (w1/a; a w2) = 0,

where the unknown ``(u; v)`` is the moment of the monomial x^u against the
tensor component T_v.  ``solve_system`` decides whether these identities
force every moment with a left word of length k to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import linalg
from .words import (
    Pattern,
    Word,
    WordError,
    canonical_pattern,
    letter,
    partitions,
    pattern_word,
    quotient,
    remove_one,
    sub_multisets,
)


class SplitError(WordError):
    pass


@dataclass(frozen=True)
class Moment:
    left: Word
    right: Word

    @property
    def combined(self) -> Word:
        return self.left + self.right

    def label(self) -> str:
        return f"({self.left.text()};{self.right.text()})"

    __str__ = label

    @classmethod
    def parse(cls, text: str) -> "Moment":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or ";" not in body:
            raise WordError(f"cannot parse moment {text!r}")
        left, right = body[1:-1].split(";")
        return cls(Word.parse(left), Word.parse(right))


@dataclass(frozen=True)
class EquationSystem:
    W: Word
    k: int
    unknowns: tuple[Moment, ...]
    rows: tuple[Word, ...]
    triplets: tuple[tuple[int, int, int], ...]

    @property
    def pattern(self) -> Pattern:
        return canonical_pattern(self.W)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.unknowns)

    def dense(self) -> list[list[int]]:
        return linalg.dense_from_triplets(len(self.rows), len(self.unknowns), self.triplets)

    def row_terms(self, i: int) -> dict[Moment, int]:
        """Nonzero coefficients of row ``i`` keyed by moment."""
        return {self.unknowns[j]: c for r, j, c in self.triplets if r == i}

    def row_index(self, w1: Word) -> int:
        return self.rows.index(w1)

    def row_label(self, i: int) -> str:
        w1 = self.rows[i]
        return f"<{w1.text()}|{quotient(self.W, w1).text()}>"


@dataclass
class Verdict:
    rank: int
    nullity: int
    nullspace: list[list[Fraction]]
    conjecture_applicable: bool
    unknowns: list[str] = field(default_factory=list)

    @property
    def all_moments_zero(self) -> bool:
        return self.nullity == 0

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "nullity": self.nullity,
            "nullspace": [[str(x) for x in v] for v in self.nullspace],
            "conjecture_applicable": self.conjecture_applicable,
            "all_moments_zero": self.all_moments_zero,
            "unknowns": list(self.unknowns),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Verdict":
        return cls(
            rank=doc["rank"],
            nullity=doc["nullity"],
            nullspace=[[Fraction(x) for x in v] for v in doc["nullspace"]],
            conjecture_applicable=doc["conjecture_applicable"],
            unknowns=list(doc["unknowns"]),
        )


def build_system(W: Word, k: int) -> EquationSystem:
    """Identities for combined word ``W`` with left words of length ``k``."""
    n = len(W)
    if k < 0:
        raise SplitError("negative split")
    if k == n:
        raise SplitError("right word empty")
    if k + 1 > n:
        raise SplitError("split too large")
    unknowns = tuple(Moment(u, quotient(W, u)) for u in sub_multisets(W, k))
    column = {m: j for j, m in enumerate(unknowns)}
    rows = tuple(sub_multisets(W, k + 1))
    triplets = []
    for i, w1 in enumerate(rows):
        w2 = quotient(W, w1)
        for a in w1.letters:
            left, mult = remove_one(w1, a)
            triplets.append((i, column[Moment(left, w2 + letter(a))], mult))
    return EquationSystem(W, k, unknowns, rows, tuple(triplets))


def solve_system(sys: EquationSystem) -> Verdict:
    basis = linalg.rational_nullspace(sys.dense(), ncols=len(sys.unknowns))
    nullity = len(basis)
    return Verdict(
        rank=len(sys.unknowns) - nullity,
        nullity=nullity,
        nullspace=basis,
        conjecture_applicable=len(sys.W) - sys.k > sys.k,
        unknowns=[m.label() for m in sys.unknowns],
    )


def system_json(sys: EquationSystem, verdict: Verdict | None = None) -> dict:
    if verdict is None:
        verdict = solve_system(sys)
    doc = {
        "word": str(sys.W),
        "pattern": list(sys.pattern),
        "k": sys.k,
        "unknowns": [m.label() for m in sys.unknowns],
        "rows": [sys.row_label(i) for i in range(len(sys.rows))],
        "triplets": [list(t) for t in sys.triplets],
    }
    doc.update(verdict.to_json())
    return doc


def iter_patterns(total_length: int) -> Iterator[Pattern]:
    return partitions(total_length)


def sweep_patterns(total_length: int, k: int) -> list[tuple[Pattern, Verdict]]:
    """Solve the split-``k`` system for one word of every pattern of the given length."""
    if total_length < k + 1:
        raise SplitError("split too large")
    return [(pat, solve_system(build_system(pattern_word(pat), k))) for pat in partitions(total_length)]


def sweep_holds(results: list[tuple[Pattern, Verdict]]) -> bool:
    """True when every conjecture-applicable pattern forces all moments to zero."""
    return all(v.nullity == 0 for _, v in results if v.conjecture_applicable)


def counterexamples(results: list[tuple[Pattern, Verdict]]) -> list[Pattern]:
    return [pat for pat, v in results if v.conjecture_applicable and v.nullity]
