"""Where the identities stop forcing moments to vanish.

Two controlled failures: a symmetric tensor whose rank equals the left
word length (so [w_L] < [w_R] is violated), and an antisymmetric rank-2
tensor.  For the antisymmetric case each moment (u; ij) is stored with its
right word sorted ascending and a sign; (u; ii) is identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .system import Moment, Verdict, build_system, solve_system
from .words import Word, WordError, quotient, remove_one, sub_multisets


@dataclass(frozen=True)
class SignedMoment:
    base: Moment
    sign: int


def canonical_antisymmetric(left: Word, first: int, second: int) -> SignedMoment | None:
    """Moment (left; first second) of an antisymmetric T, or None when it vanishes."""
    if first == second:
        return None
    lo, hi = sorted((first, second))
    return SignedMoment(Moment(left, Word.from_letters([lo, hi])), 1 if first < second else -1)


def rank_limited_system(W: Word, k: int, tensor_rank: int | None = None) -> Verdict:
    """Symmetric system for a tensor of rank [W] - k; moments may survive when rank <= k."""
    if tensor_rank is not None and len(W) - k != tensor_rank:
        raise WordError(f"[W] - k = {len(W) - k} does not match tensor rank {tensor_rank}")
    return solve_system(build_system(W, k))


@dataclass(frozen=True)
class SignedSystem:
    W: Word
    unknowns: tuple[Moment, ...]
    rows: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]


def build_antisymmetric(W: Word) -> SignedSystem:
    """Rows <w1|w2> for [W] = 3, split 1, with T antisymmetric.

    The divergence acts on the first index: row w1 collects
    mult(i, w1) * (w1/i; i w2) with the component T_{i w2} in that order.
    """
    if len(W) != 3:
        raise WordError("antisymmetric mode needs a combined word of length 3")
    entries: list[dict[Moment, int]] = []
    labels = []
    for w1 in sub_multisets(W, 2):
        (second,) = quotient(W, w1).expand()
        row: dict[Moment, int] = {}
        for i in w1.letters:
            left, mult = remove_one(w1, i)
            sm = canonical_antisymmetric(left, i, second)
            if sm is not None:
                row[sm.base] = row.get(sm.base, 0) + sm.sign * mult
        entries.append(row)
        labels.append(f"<{w1.text()}|{quotient(W, w1).text()}>")
    unknowns = sorted(
        {m for row in entries for m in row},
        key=lambda m: (tuple(-c for c in m.left.padded(len(W.counts))), m.right.counts),
    )
    matrix = tuple(tuple(row.get(m, 0) for m in unknowns) for row in entries)
    return SignedSystem(W, tuple(unknowns), tuple(labels), matrix)


def antisymmetric_system(W: Word) -> Verdict:
    sys = build_antisymmetric(W)
    basis = linalg.rational_nullspace(sys.matrix, ncols=len(sys.unknowns)) if sys.unknowns else []
    return Verdict(
        rank=len(sys.unknowns) - len(basis),
        nullity=len(basis),
        nullspace=basis,
        conjecture_applicable=True,
        unknowns=[m.label() for m in sys.unknowns],
    )


def satisfies(matrix, vector) -> bool:
    return all(sum(c * v for c, v in zip(row, vector)) == 0 for row in matrix)


def rank2_a2b2() -> dict:
    W = Word((2, 2))
    sys = build_system(W, 2)
    v = rank_limited_system(W, 2, tensor_rank=2)
    aabb = sys.unknowns.index(Moment(Word((2,)), Word((0, 2))))
    abab = sys.unknowns.index(Moment(Word((1, 1)), Word((1, 1))))
    bbaa = sys.unknowns.index(Moment(Word((0, 2)), Word((2,))))
    (vec,) = v.nullspace if v.nullity == 1 else ([0, 0, 0],)
    relation = vec[aabb] + 2 * vec[abab] == 0 and vec[aabb] == vec[bbaa]
    return {
        "case": "rank2-a2b2",
        "word": str(W),
        "verdict": v.to_json(),
        "relation (aa;bb) + 2(ab;ab) = 0": relation,
        "moments not forced to zero": v.nullity == 1 and vec[aabb] != 0 and vec[abab] != 0,
        "null vector solves system": satisfies(sys.dense(), vec),
        "holds": v.nullity == 1 and relation and vec[abab] != 0,
    }


def antisym_abc() -> dict:
    W = Word((1, 1, 1))
    sys = build_antisymmetric(W)
    v = antisymmetric_system(W)
    control = solve_system(build_system(W, 1))
    labels = [m.label() for m in sys.unknowns]
    cyclic = False
    if v.nullity == 1:
        vec = dict(zip(labels, v.nullspace[0]))
        # (b;ca) = -(b;ac) after sorting the antisymmetric pair
        cyclic = vec["(a;bc)"] == -vec["(b;ac)"] == vec["(c;ab)"] != 0
    return {
        "case": "antisym-abc",
        "word": str(W),
        "verdict": v.to_json(),
        "cyclic equality (a;bc) = (b;ca) = (c;ab)": cyclic,
        "symmetric control nullity": control.nullity,
        "holds": v.nullity == 1 and cyclic and control.nullity == 0,
    }


CASES = {"rank2-a2b2": rank2_a2b2, "antisym-abc": antisym_abc}
