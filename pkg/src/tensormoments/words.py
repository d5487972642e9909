"""Multiset words over small integer letters.

A word such as ``a^3 b^2 c`` is stored as its count vector ``(3, 2, 1)``;
letter ``a`` is id 0, ``b`` is id 1 and so on.  Letter order never matters,
so two words with the same counts are the same word.  The empty (null) word
has the empty count vector.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator

LETTERS = string.ascii_lowercase

_TOKEN = re.compile(r"([a-z])(\d*)")


class WordError(ValueError):
    """Raised for malformed words or impossible word operations."""


@dataclass(frozen=True, order=False)
class Word:
    counts: tuple[int, ...] = ()

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise WordError(f"negative multiplicity in {counts}")
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        counts: list[int] = []
        for a in letters:
            if a < 0:
                raise WordError(f"negative letter id {a}")
            if a >= len(counts):
                counts.extend([0] * (a + 1 - len(counts)))
            counts[a] += 1
        return cls(tuple(counts))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"aab"``, ``"a2b1"``, ``"a2b"`` or the null word ``"0"``/``""``."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        pos = 0
        counts: list[int] = []
        for m in _TOKEN.finditer(text):
            if m.start() != pos:
                break
            a = LETTERS.index(m.group(1))
            n = int(m.group(2)) if m.group(2) else 1
            if a >= len(counts):
                counts.extend([0] * (a + 1 - len(counts)))
            counts[a] += n
            pos = m.end()
        if pos != len(text):
            raise WordError(f"cannot parse word {text!r}")
        return cls(tuple(counts))

    def __len__(self) -> int:
        return sum(self.counts)

    def __bool__(self) -> bool:
        return bool(self.counts)

    def count(self, a: int) -> int:
        return self.counts[a] if 0 <= a < len(self.counts) else 0

    @property
    def letters(self) -> tuple[int, ...]:
        """Distinct letters present, ascending."""
        return tuple(a for a, c in enumerate(self.counts) if c)

    def expand(self) -> tuple[int, ...]:
        """Letters with repetition, ascending."""
        return tuple(a for a, c in enumerate(self.counts) for _ in range(c))

    def __add__(self, other: "Word") -> "Word":
        n = max(len(self.counts), len(other.counts))
        return Word(tuple(self.count(a) + other.count(a) for a in range(n)))

    def contains(self, other: "Word") -> bool:
        return all(self.count(a) >= c for a, c in enumerate(other.counts))

    def padded(self, n: int) -> tuple[int, ...]:
        return self.counts + (0,) * (n - len(self.counts))

    def relabel(self, perm) -> "Word":
        """Apply a letter map ``a -> perm[a]``."""
        return Word.from_letters(perm[a] for a in self.expand())

    def text(self) -> str:
        """Letter-run form, e.g. ``"aab"``; the null word is ``"0"``."""
        if not self.counts:
            return "0"
        return "".join(LETTERS[a] * c for a, c in enumerate(self.counts))

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        return "".join(f"{LETTERS[a]}{c}" for a, c in enumerate(self.counts) if c)

    def __repr__(self) -> str:
        return f"Word({self.text()!r})"


def word(text: str) -> Word:
    return Word.parse(text)


def letter(a: int) -> Word:
    return Word.from_letters([a])


Pattern = tuple[int, ...]


def canonical_pattern(w: Word) -> Pattern:
    """Exponent signature of ``w`` sorted non-increasing, e.g. a3b2cd -> (3, 2, 1, 1)."""
    if not w:
        raise WordError("empty word")
    return tuple(sorted((c for c in w.counts if c), reverse=True))


def pattern_word(pattern: Iterable[int]) -> Word:
    """Representative word for a pattern; letter a gets the largest exponent."""
    exps = sorted((int(e) for e in pattern), reverse=True)
    if not exps or exps[-1] <= 0:
        raise WordError(f"invalid pattern {pattern!r}")
    return Word(tuple(exps))


def partitions(n: int, largest: int | None = None) -> Iterator[Pattern]:
    """Integer partitions of ``n`` in reverse lexicographic order: (n), (n-1, 1), ..."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def sub_multisets(w: Word, r: int) -> list[Word]:
    """All distinct sub-multisets of ``w`` of size ``r``.

    Ordered descending on count vectors, which coincides with ascending
    alphabetical order of the letter-run form (aa < ab < ac < bb ...).
    """
    if r < 0:
        raise WordError("negative subset size")
    if r > len(w):
        raise WordError("subset size exceeds word")
    counts = w.counts
    # suffix capacities let the recursion prune dead branches
    tail = [0] * (len(counts) + 1)
    for i in range(len(counts) - 1, -1, -1):
        tail[i] = tail[i + 1] + counts[i]
    out: list[Word] = []
    chosen = [0] * len(counts)

    def rec(i: int, left: int) -> None:
        if left == 0:
            out.append(Word(tuple(chosen)))
            return
        if i == len(counts) or tail[i] < left:
            return
        for c in range(min(counts[i], left), -1, -1):
            chosen[i] = c
            rec(i + 1, left - c)
        chosen[i] = 0

    rec(0, r)
    return out


def quotient(w: Word, s: Word) -> Word:
    """``w`` with the letters of ``s`` removed (count-wise)."""
    if not w.contains(s):
        raise WordError("not a sub-multiset")
    return Word(tuple(c - s.count(a) for a, c in enumerate(w.counts)))


def remove_one(w: Word, a: int) -> tuple[Word, int]:
    """Remove one copy of letter ``a``; also return its original multiplicity."""
    m = w.count(a)
    if m == 0:
        raise WordError("letter not present")
    counts = list(w.counts)
    counts[a] -= 1
    return Word(tuple(counts)), m


def order_key(w: Word, width: int) -> tuple[int, ...]:
    """Sort key giving the descending count-vector order used for all layouts."""
    return tuple(-c for c in w.padded(width))
