"""Exact linear algebra kernels.

* ``bareiss_det``: fraction-free integer determinant.
* ``det_modular``: determinant by residues modulo word-size primes and CRT,
  with the prime count fixed by the Hadamard bound.
* ``rank_mod_p``: rank over GF(p).  Large matrices go through a blocked
  elimination whose trailing updates are float64 matrix products kept exact
  by splitting one operand into 16-bit halves (valid for any p < 2**31).
* ``rational_nullspace``: exact nullspace over Q with Fractions.

Matrices are accepted as nested lists or numpy arrays of integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import isprime, prevprime

# Two fixed primes above 2**30 for rank confirmation.
RANK_PRIMES = (2147483647, 2147483629)

# float64 represents every integer below this exactly
_EXACT = 2**53
_SPLIT = 65536.0
_MAX_FLOAT_PRIME = 2**31


class LinalgError(ValueError):
    pass


class UnluckyPrimeError(ArithmeticError):
    """Two primes disagree on a rank, so at least one of them is unlucky."""


@dataclass(frozen=True)
class DetResult:
    exact: int | None
    log10_abs: float
    sign: int
    method: str

    def __post_init__(self):
        if self.exact is not None:
            s = (self.exact > 0) - (self.exact < 0)
            if s != self.sign:
                raise LinalgError("sign does not match exact determinant")
            if s and abs(math.log10(abs(self.exact)) - self.log10_abs) > 1e-9:
                raise LinalgError("log10 does not match exact determinant")

    @classmethod
    def from_exact(cls, value: int, method: str) -> "DetResult":
        sign = (value > 0) - (value < 0)
        log10 = math.log10(abs(value)) if value else -math.inf
        return cls(value, log10, sign, method)

    def to_json(self) -> dict:
        return {
            "exact": None if self.exact is None else str(self.exact),
            "log10_abs": None if math.isinf(self.log10_abs) else self.log10_abs,
            "sign": self.sign,
            "method": self.method,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DetResult":
        exact = None if doc["exact"] is None else int(doc["exact"])
        log10 = -math.inf if doc["log10_abs"] is None else doc["log10_abs"]
        return cls(exact, log10, doc["sign"], doc["method"])


def _int_rows(m) -> list[list[int]]:
    rows = [[int(v) for v in row] for row in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise LinalgError("ragged matrix")
    return rows


def _square(rows: list[list[int]]) -> int:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise LinalgError("matrix is not square")
    return n


def dense_from_triplets(nrows: int, ncols: int, triplets) -> list[list[int]]:
    out = [[0] * ncols for _ in range(nrows)]
    for i, j, c in triplets:
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise LinalgError(f"triplet index ({i}, {j}) out of range")
        out[i][j] += c
    return out


# -- determinants -----------------------------------------------------------


def bareiss_det(m) -> DetResult:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = _int_rows(m)
    n = _square(a)
    if n == 0:
        return DetResult.from_exact(1, "bareiss")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return DetResult.from_exact(0, "bareiss")
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            # exact division is guaranteed by Sylvester's identity
            a[i] = ri[: k + 1] + [(ri[j] * piv - f * rk[j]) // prev for j in range(k + 1, n)]
        prev = piv
    return DetResult.from_exact(sign * a[n - 1][n - 1], "bareiss")


def _int_array(m) -> np.ndarray:
    """int64 array when every entry fits comfortably, else an object array."""
    if isinstance(m, np.ndarray) and m.dtype != object:
        return m.astype(np.int64)
    rows = _int_rows(m)
    if all(abs(v) < 2**62 for r in rows for v in r):
        return np.array(rows, dtype=np.int64).reshape(len(rows), -1)
    return np.array(rows, dtype=object).reshape(len(rows), -1)


def hadamard_log2(m) -> float:
    """log2 of the Hadamard bound prod_i ||row_i||."""
    total = 0.0
    for row in m:
        s = sum(int(v) * int(v) for v in row)
        if s == 0:
            return -math.inf
        total += 0.5 * math.log2(s)
    return total


@lru_cache(maxsize=None)
def crt_primes(count: int, below: int = _MAX_FLOAT_PRIME) -> tuple[int, ...]:
    """The ``count`` largest primes below ``below``, descending."""
    out = []
    p = below
    for _ in range(count):
        p = prevprime(p)
        out.append(p)
    return tuple(out)


def det_mod_p(m, p: int) -> int:
    """Determinant modulo ``p`` in [0, p)."""
    _check_prime(p)
    arr = _as_residues(m, p)
    if arr.shape[0] != arr.shape[1]:
        raise LinalgError("matrix is not square")
    _, det = _echelon(arr, p)
    return det


def det_modular(m, primes: Sequence[int] | None = None) -> DetResult:
    """Exact determinant from residues modulo enough primes (Hadamard bound)."""
    arr = _int_array(m)
    if arr.shape[0] != arr.shape[1]:
        raise LinalgError("matrix is not square")
    bits = hadamard_log2(arr)
    if bits == -math.inf:
        return DetResult.from_exact(0, "modular_crt")
    need = bits + 2.0  # symmetric residue range needs product > 2 * bound
    if primes is None:
        count = 1
        while sum(math.log2(p) for p in crt_primes(count)) <= need:
            count += 1
        primes = crt_primes(count)
    elif sum(math.log2(p) for p in primes) <= need:
        raise LinalgError("prime product below the Hadamard bound")
    modulus = 1
    value = 0
    for p in primes:
        r = det_mod_p(arr, p)
        # incremental CRT: lift value mod modulus to mod modulus*p
        t = ((r - value) * pow(modulus, -1, p)) % p
        value += modulus * t
        modulus *= p
    if value > modulus // 2:
        value -= modulus
    return DetResult.from_exact(value, "modular_crt")


def det_float(m) -> DetResult:
    """log10 |det| from a floating LU factorisation; no exact value."""
    arr = np.asarray(m, dtype=np.float64)
    sign, logabs = np.linalg.slogdet(arr)
    if sign == 0:
        return DetResult(None, -math.inf, 0, "float_lu")
    return DetResult(None, float(logabs / math.log(10.0)), int(sign), "float_lu")


def det_log10(m, method: str = "auto", primes: Sequence[int] | None = None) -> DetResult:
    """Determinant with a guaranteed ``log10_abs``.

    ``auto`` picks Bareiss up to order 200, modular CRT up to 1716 and a
    floating LU beyond that.  ``primes`` fixes the CRT moduli.
    """
    n = len(m)
    if method == "auto":
        method = "bareiss" if n <= 200 else "modular_crt" if n <= 1716 else "float_lu"
    if method == "bareiss":
        return bareiss_det(m)
    if method == "modular_crt":
        return det_modular(m, primes)
    if method == "float_lu":
        return det_float(m)
    raise LinalgError(f"unknown determinant method {method!r}")


# -- GF(p) elimination -------------------------------------------------------


def _check_prime(p: int) -> None:
    if p < 2 or not isprime(p):
        raise LinalgError(f"{p} is not prime")


def _as_residues(m, p: int):
    if isinstance(m, np.ndarray) and m.dtype != object:
        arr = np.mod(m.astype(np.int64), p)
    else:
        arr = np.array([[int(v) % p for v in row] for row in m], dtype=np.int64)
    if arr.ndim != 2:
        arr = arr.reshape(len(m), -1)
    return arr


def _reduce(x: np.ndarray, p: int) -> np.ndarray:
    """In-place ``x mod p`` for float64 integers with |x| < 2**53.

    The float quotient can be off by one, so the remainder is computed
    exactly and then nudged into [0, p).  Much faster than ``np.mod``.
    """
    q = np.floor(x * (1.0 / p))
    q *= p
    x -= q
    np.add(x, p, out=x, where=x < 0)
    np.subtract(x, p, out=x, where=x >= p)
    return x


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Exact ``x @ y mod p`` for float64 operands holding residues."""
    inner = x.shape[1]
    if inner * (p - 1) ** 2 < _EXACT:
        return _reduce(x @ y, p)
    if inner * (p - 1) * (_SPLIT - 1) >= _EXACT:
        raise LinalgError("inner dimension too large for exact float products")
    hi = np.floor(y / _SPLIT)
    lo = y - hi * _SPLIT
    out = _reduce(x @ hi, p)
    out *= _SPLIT
    out += _reduce(x @ lo, p)
    return _reduce(out, p)


def _block_width(p: int) -> int:
    if 256 * (p - 1) ** 2 < _EXACT:
        return 256
    return int(min(64, (_EXACT - 1) // ((p - 1) * (int(_SPLIT) - 1))))


def _unit_lower_inverse(low: np.ndarray, p: int) -> np.ndarray:
    """Inverse mod p of the unit lower triangle whose strict part is ``low``."""
    r = low.shape[0]
    inv = np.eye(r, dtype=np.int64)
    for i in range(1, r):
        row = inv[i]
        for t in range(i):
            c = int(low[i, t])
            if c:
                row = (row - c * inv[t]) % p
        inv[i] = row
    return inv


def _echelon(arr: np.ndarray, p: int, block: int | None = None) -> tuple[int, int]:
    """Row-reduce ``arr`` (residues mod p) and return ``(rank, det mod p)``.

    The determinant residue is meaningful for square input only and is 0
    when the matrix is singular mod p.  Deterministic: the first nonzero
    entry of each column is taken as pivot.
    """
    if p >= _MAX_FLOAT_PRIME:
        return _echelon_reference(arr.tolist(), p)
    n, m = arr.shape
    M = arr.astype(np.float64)
    if block is None:
        block = _block_width(p)
    rank = 0
    det = 1
    sign = 1
    col = 0
    while col < m and rank < n:
        c1 = min(col + block, m)
        w = c1 - col
        panel = M[rank:, col:c1].astype(np.int64)
        mult = np.zeros((n - rank, w), dtype=np.int64)
        r = 0
        for j in range(w):
            if rank + r == n:
                break
            nz = np.flatnonzero(panel[r:, j])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                panel[[r, i]] = panel[[i, r]]
                mult[[r, i], :r] = mult[[i, r], :r]
                M[[rank + r, rank + i]] = M[[rank + i, rank + r]]
                sign = -sign
            piv = int(panel[r, j])
            det = det * piv % p
            below = r + 1 + np.flatnonzero(panel[r + 1 :, j])
            if below.size:
                f = panel[below, j] * pow(piv, p - 2, p) % p
                mult[below, r] = f
                if j + 1 < w:
                    panel[below, j + 1 :] = (panel[below, j + 1 :] - f[:, None] * panel[r, j + 1 :]) % p
                panel[below, j] = 0
            r += 1
        M[rank:, col:c1] = panel
        if r and c1 < m:
            low = mult[:r, :r]
            if r > 1 and low.any():
                inv = _unit_lower_inverse(low, p).astype(np.float64)
                M[rank : rank + r, c1:] = _matmul_mod(inv, M[rank : rank + r, c1:], p)
            top = M[rank : rank + r, c1:]
            lower = mult[r:, :r]
            hit = np.flatnonzero(lower.any(axis=1))
            if hit.size:
                rows = rank + r + hit
                prod = _matmul_mod(lower[hit].astype(np.float64), top, p)
                if hit.size == n - rank - r:
                    tail = M[rank + r :, c1:]
                    tail -= prod
                    _reduce(tail, p)
                else:
                    M[rows, c1:] = _reduce(M[rows, c1:] - prod, p)
        rank += r
        col = c1
    if rank < n or n != m:
        return rank, 0
    return rank, (det * sign) % p


def _echelon_reference(rows: list[list[int]], p: int) -> tuple[int, int]:
    """Unblocked elimination over Python ints; the oracle for ``_echelon``."""
    a = [[int(v) % p for v in row] for row in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    rank = 0
    det = 1
    for c in range(m):
        if rank == n:
            break
        piv = next((i for i in range(rank, n) if a[i][c]), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            det = -det
        pr = a[rank]
        det = det * pr[c] % p
        inv = pow(pr[c], p - 2, p)
        for i in range(rank + 1, n):
            f = a[i][c]
            if f:
                f = f * inv % p
                ri = a[i]
                a[i] = [(ri[j] - f * pr[j]) % p for j in range(m)]
        rank += 1
    if rank < n or n != m:
        return rank, 0
    return rank, det % p


def rank_mod_p(m, p: int) -> int:
    """Rank of an integer matrix over GF(p)."""
    _check_prime(p)
    arr = _as_residues(m, p)
    if arr.size == 0:
        return 0
    return _echelon(arr, p)[0]


def rank_confirmed(m, primes: Sequence[int] = RANK_PRIMES) -> int:
    """Rank over GF(p) for several primes; they must all agree."""
    ranks = {p: rank_mod_p(m, p) for p in primes}
    if len(set(ranks.values())) != 1:
        raise UnluckyPrimeError(f"rank disagrees across primes: {ranks}")
    return next(iter(ranks.values()))


# -- rationals ---------------------------------------------------------------


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return a, pivots


def rational_nullspace(m, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : m v = 0} over Q.

    Each vector is scaled so its first nonzero coordinate is 1.  ``ncols``
    is needed only when ``m`` has no rows.
    """
    rows = _int_rows(m) if not _has_fractions(m) else [list(r) for r in m]
    if ncols is None:
        if not rows:
            raise LinalgError("column count unknown for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        lead = next(x for x in v if x != 0)
        basis.append([x / lead for x in v])
    return basis


def rational_rank(m) -> int:
    return len(rref(m)[1])


def _has_fractions(m) -> bool:
    return any(isinstance(v, Fraction) for row in m for v in row)
