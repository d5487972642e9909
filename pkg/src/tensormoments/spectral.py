"""The 0/1 matrix A for a combined word of 2k+1 distinct letters.

Rows and columns are indexed by the (k+1)-letter subwords x of W.  With
xbar = W/x, row x has a one in column y = a.xbar for each letter a of x,
so every row holds exactly k+1 ones.  Also builds the one-swap and
two-swap matrices D2 and D4 that express the low powers of A, checks the
trace sum rules, and extracts the (integer) spectrum exactly as nullities
of A - E I over GF(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg
from .words import Word, sub_multisets

MAX_N = 6435
MAX_DENSE_K = 5
POWERS = range(1, 9)
STRUCTURAL = ("symmetric", "zero diagonal", "row sums k+1", "column sums k+1", "entries 0/1")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AMatrix:
    k: int
    index: tuple[Word, ...]
    masks: np.ndarray
    matrix: np.ndarray

    @property
    def N(self) -> int:
        return len(self.index)

    @property
    def W(self) -> Word:
        return Word((1,) * (2 * self.k + 1))

    def label(self, i: int) -> str:
        return self.index[i].text()


def size(k: int) -> int:
    return math.comb(2 * k + 1, k)


def _check_budget(k: int, max_n: int) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")
    n = size(k)
    if n > max_n:
        raise BudgetExceeded(f"k={k} needs N={n} (a {n}x{n} matrix) but the budget is N<={max_n}")


def _layout(k: int):
    W = Word((1,) * (2 * k + 1))
    index = tuple(sub_multisets(W, k + 1))
    masks = np.array([sum(1 << a for a in x.letters) for x in index], dtype=np.int64)
    where = {int(m): i for i, m in enumerate(masks)}
    return index, masks, where, (1 << (2 * k + 1)) - 1


def build_A(k: int, max_n: int = MAX_N) -> AMatrix:
    _check_budget(k, max_n)
    index, masks, where, full = _layout(k)
    n = len(index)
    A = np.zeros((n, n), dtype=np.int8)
    for i, x in enumerate(masks.tolist()):
        comp = full & ~x
        for a in range(2 * k + 1):
            if x >> a & 1:
                A[i, where[comp | 1 << a]] = 1
    return AMatrix(k, index, masks, A)


def build_deltas(k: int, max_n: int = MAX_N) -> tuple[np.ndarray, np.ndarray]:
    """(D2, D4): words reached by swapping one / two letters of x with letters of xbar."""
    _check_budget(k, max_n)
    index, masks, where, full = _layout(k)
    n = len(index)
    d2 = np.zeros((n, n), dtype=np.int8)
    d4 = np.zeros((n, n), dtype=np.int8)
    for i, x in enumerate(masks.tolist()):
        inside = [a for a in range(2 * k + 1) if x >> a & 1]
        outside = [b for b in range(2 * k + 1) if not x >> b & 1]
        for a in inside:
            for b in outside:
                d2[i, where[x ^ (1 << a) ^ (1 << b)]] = 1
        for a1, a2 in combinations(inside, 2):
            for b1, b2 in combinations(outside, 2):
                d4[i, where[x ^ (1 << a1) ^ (1 << a2) ^ (1 << b1) ^ (1 << b2)]] = 1
    return d2, d4


def structural_checks(am: AMatrix) -> dict[str, bool]:
    A = am.matrix
    k = am.k
    sums = A.sum(axis=1, dtype=np.int64)
    return {
        "symmetric": bool(np.array_equal(A, A.T)),
        "zero diagonal": not A.diagonal().any(),
        "row sums k+1": bool(np.all(sums == k + 1)),
        "column sums k+1": bool(np.all(A.sum(axis=0, dtype=np.int64) == k + 1)),
        "entries 0/1": bool(np.all((A == 0) | (A == 1))),
    }


def _mul(x: np.ndarray, y: np.ndarray, bound: int) -> np.ndarray:
    """Product of nonnegative int64 matrices whose entries are known to be <= bound."""
    if bound >= 2**63:
        raise OverflowError(f"entries up to {bound} do not fit in 64 bits")
    return x @ y


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray, am: AMatrix):
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    i, j = (int(v) for v in bad[0])
    return {"x": am.label(i), "z": am.label(j), "lhs": int(lhs[i, j]), "rhs": int(rhs[i, j])}


def verify_delta_algebra(k: int, max_k: int = MAX_DENSE_K) -> dict:
    """Entrywise check of the expressions for A^2, D2^2 and A^4."""
    if k > max_k:
        raise BudgetExceeded(f"dense products limited to k<={max_k}")
    am = build_A(k)
    A = am.matrix.astype(np.int64)
    d2, d4 = (d.astype(np.int64) for d in build_deltas(k))
    eye = np.eye(am.N, dtype=np.int64)
    A2 = _mul(A, A, (k + 1) ** 2)
    D2sq = _mul(d2, d2, (k * (k + 1)) ** 2)
    A4 = _mul(A2, A2, (k + 1) ** 4)
    c0, c2, c4 = k * (k + 1), 2 * k - 1, 4
    identities = {
        "A^2 = (k+1)I + D2": (A2, (k + 1) * eye + d2),
        "D2^2 = k(k+1)I + (2k-1)D2 + 4D4": (D2sq, c0 * eye + c2 * d2 + c4 * d4),
        "A^4 = (k+1)(2k+1)I + (4k+1)D2 + 4D4": (A4, (k + 1) * (2 * k + 1) * eye + (4 * k + 1) * d2 + 4 * d4),
    }
    report = {"k": k, "N": am.N, "identities": {}}
    for name, (lhs, rhs) in identities.items():
        bad = _first_mismatch(lhs, rhs, am)
        report["identities"][name] = {"holds": bad is None, "first_mismatch": bad}
    report["traces zero"] = {
        "D2": int(np.trace(d2)) == 0,
        "D4": int(np.trace(d4)) == 0,
        "D2 D4": int(np.trace(d2 @ d4)) == 0,
    }
    report["row sums"] = {
        "D2": sorted(set(d2.sum(axis=1).tolist())),
        "D4": sorted(set(d4.sum(axis=1).tolist())),
    }
    report["holds"] = all(v["holds"] for v in report["identities"].values()) and all(
        report["traces zero"].values()
    )
    return report


def closed_form_traces(k: int) -> dict[int, int]:
    """Trace(A^r) predicted for r = 2, 4, 6, 8 (and Trace(A) = 0)."""
    n = size(k)
    return {
        1: 0,
        2: n * (k + 1),
        4: n * (k + 1) * (2 * k + 1),
        6: n * ((k + 1) ** 2 * (2 * k + 1) + (4 * k + 1) * k * (k + 1)),
        8: n
        * ((k + 1) ** 2 * (2 * k + 1) ** 2 + (4 * k + 1) ** 2 * k * (k + 1) + 4 * (k + 1) * k**2 * (k - 1)),
    }


def trace_powers(am: AMatrix, powers=POWERS, max_k: int = MAX_DENSE_K) -> dict[int, int]:
    """Trace(A^r) by direct products; beyond ``max_k`` only r <= 2 is computed."""
    A = am.matrix.astype(np.int64)
    k = am.k
    out = {}
    top = max(powers)
    if am.k > max_k:
        top = min(top, 2)
    if top >= 1:
        out[1] = int(np.trace(A))
    if top >= 2:
        # A is symmetric, so Trace(A^2) is the sum of squared entries
        out[2] = int(np.sum(A * A))
    if top > 2:
        P = _mul(A, A, (k + 1) ** 2)
        for r in range(3, top + 1):
            P = _mul(P, A, (k + 1) ** r)
            out[r] = int(np.trace(P))
    return {r: out[r] for r in powers if r in out}


def trace_sum_rules(k: int, max_k: int = MAX_DENSE_K) -> dict:
    if k > max_k:
        raise BudgetExceeded(f"matrix powers limited to k<={max_k}")
    am = build_A(k)
    traces = trace_powers(am, POWERS, max_k)
    expected = closed_form_traces(k)
    rules = {}
    for r, got in traces.items():
        if r in expected:
            rules[f"Sigma_{r}"] = {"computed": got, "expected": expected[r], "holds": got == expected[r]}
        elif r % 2 and r < 2 * k + 1:
            rules[f"Sigma_{r}"] = {"computed": got, "expected": 0, "holds": got == 0}
        else:
            rules[f"Sigma_{r}"] = {"computed": got, "expected": None, "holds": None}
    return {
        "k": k,
        "N": am.N,
        "rules": rules,
        "holds": all(v["holds"] is not False for v in rules.values()),
    }


def eigen_multiplicity(am: AMatrix, E: int, primes=linalg.RANK_PRIMES) -> int:
    """Multiplicity of integer eigenvalue E as the nullity of A - E I.

    The nullity over GF(p) bounds the rational nullity from above, so a
    zero from the first prime is final; anything else is confirmed with
    the remaining primes.  A is symmetric, hence geometric and algebraic
    multiplicities coincide.
    """
    n = am.N
    M = am.matrix.astype(np.int64) - E * np.eye(n, dtype=np.int64)
    first = n - linalg.rank_mod_p(M, primes[0])
    if first == 0:
        return 0
    others = {n - linalg.rank_mod_p(M, p) for p in primes[1:]}
    if others and others != {first}:
        raise linalg.UnluckyPrimeError(f"nullity of A - {E}I disagrees across primes")
    return first


def candidates(k: int) -> list[int]:
    """Integers in [-(k+1), k+1] ordered by |E| descending, positive first."""
    return sorted(range(-(k + 1), k + 2), key=lambda e: (-abs(e), -e))


@dataclass
class SpectralReport:
    k: int
    N: int
    det: linalg.DetResult
    trace_powers: dict[int, int]
    eigenvalues: list[tuple[int, int]]
    complete: bool
    checks: dict[str, bool | None] = field(default_factory=dict)
    observed: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def eigen_text(self) -> str:
        parts = [f"({E:+d})^{m}" for E, m in self.eigenvalues]
        if not self.complete:
            parts.append("...")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "det": self.det.to_json(),
            "trace_powers": {str(r): v for r, v in self.trace_powers.items()},
            "eigenvalues": [[E, m] for E, m in self.eigenvalues],
            "complete": self.complete,
            "checks": dict(self.checks),
            "observed": dict(self.observed),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SpectralReport":
        return cls(
            k=doc["k"],
            N=doc["N"],
            det=linalg.DetResult.from_json(doc["det"]),
            trace_powers={int(r): v for r, v in doc["trace_powers"].items()},
            eigenvalues=[(E, m) for E, m in doc["eigenvalues"]],
            complete=doc["complete"],
            checks=dict(doc["checks"]),
            observed=dict(doc["observed"]),
        )


def spectrum(
    k: int,
    full: bool | None = None,
    det_method: str = "auto",
    primes=linalg.RANK_PRIMES,
    max_n: int = MAX_N,
    max_k: int = MAX_DENSE_K,
    crt_primes=None,
) -> SpectralReport:
    """Spectral report for A at split k.

    With ``full`` (default for k <= 5) every candidate integer eigenvalue is
    scanned until the multiplicities account for all N eigenvalues;
    otherwise only the top eigenvalue k+1 is located.
    """
    am = build_A(k, max_n)
    n = am.N
    if full is None:
        full = k <= max_k
    checks: dict[str, bool | None] = dict(structural_checks(am))
    A = am.matrix.astype(np.int64)
    checks["all-ones eigenvector, eigenvalue k+1"] = bool(np.all(A.sum(axis=1) == k + 1))

    det = linalg.det_log10(A, det_method, crt_primes)
    traces = trace_powers(am, POWERS, max_k)
    expected = closed_form_traces(k)
    checks["Tr(A) = 0"] = traces[1] == 0
    checks["Tr(A^2) = N(k+1)"] = traces[2] == expected[2]

    eig: list[tuple[int, int]] = []
    found = 0
    for E in candidates(k) if full else [k + 1]:
        if found == n:
            break
        m = eigen_multiplicity(am, E, primes)
        if m:
            eig.append((E, m))
            found += m
    complete = found == n
    if full and not complete:
        raise ArithmeticError(f"spectrum incomplete: non-integer eigenvalues present (found {found} of {n})")
    mult = dict(eig)
    checks["eigenvalue k+1 simple"] = mult.get(k + 1) == 1

    if complete:
        checks["multiplicities sum to N"] = True
        checks["no zero eigenvalue"] = 0 not in mult
        for r, t in traces.items():
            checks[f"sum m E^{r} = Tr(A^{r})"] = sum(m * E**r for E, m in eig) == t
        log_prod = sum(m * math.log10(abs(E)) for E, m in eig)
        checks["log10 det = log10 prod E^m"] = abs(log_prod - det.log10_abs) <= 0.1
        if det.exact is not None:
            checks["det = prod E^m"] = det.exact == math.prod(E**m for E, m in eig)
    elif det.exact is not None:
        checks["no zero eigenvalue"] = det.exact != 0
    else:
        checks["no zero eigenvalue"] = linalg.rank_mod_p(A, primes[0]) == n

    observed = {}
    if complete:
        observed["mult(-k)"] = mult.get(-k, 0)
        observed["mult(k-1)"] = mult.get(k - 1, 0)
        # asserted up to k = 5, reported beyond
        if k <= MAX_DENSE_K:
            checks["mult(-k) = 2k"] = observed["mult(-k)"] == 2 * k
            checks["mult(k-1) = (2k+1)(k-1)"] = observed["mult(k-1)"] == (2 * k + 1) * (k - 1)
    return SpectralReport(k, n, det, traces, eig, complete, checks, observed)


def table_rows(kmax: int, **kw) -> list[SpectralReport]:
    return [spectrum(k, **kw) for k in range(1, kmax + 1)]


def table_text(reports: list[SpectralReport]) -> str:
    head = f"{'k':>2}  {'N':>5}  {'Det':>20}  {'log10|Det|':>10}  Eigenvalues ~ (E)^m"
    lines = [head]
    for r in reports:
        exact = "" if r.det.exact is None else str(r.det.exact)
        if len(exact) > 20:
            exact = f"10^{r.det.log10_abs:.1f}"
        lines.append(f"{r.k:>2}  {r.N:>5}  {exact:>20}  {r.det.log10_abs:>10.1f}  {r.eigen_text()}")
    return "\n".join(lines) + "\n"


def table_csv(reports: list[SpectralReport]) -> str:
    import csv
    import io

    width = max((len(r.eigenvalues) for r in reports), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["k", "N", "det_exact", "det_log10"]
    for i in range(1, width + 1):
        header += [f"eig_{i}", f"mult_{i}"]
    w.writerow(header)
    for r in reports:
        row = [r.k, r.N, "" if r.det.exact is None else r.det.exact, f"{r.det.log10_abs:.4f}"]
        for E, m in r.eigenvalues:
            row += [E, m]
        row += [""] * (len(header) - len(row))
        w.writerow(row)
    return buf.getvalue()
