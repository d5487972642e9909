"""One-shot reproduction of every worked result as a pass/fail ledger."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import analytic, boundary, fixtures, oracle, spectral
from .system import build_system, solve_system, sweep_patterns
from .words import Word


@dataclass
class Ledger:
    entries: list[tuple[str, bool]] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> bool:
        self.entries.append((name, bool(ok)))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.entries)

    def text(self) -> str:
        lines = [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in self.entries]
        n_fail = sum(not ok for _, ok in self.entries)
        lines.append(f"{len(self.entries) - n_fail}/{len(self.entries)} checks passed")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "entries": [{"check": name, "passed": ok} for name, ok in self.entries],
            "passed": self.passed,
        }


def fixture_checks(ledger: Ledger) -> None:
    for fx in fixtures.SYSTEMS:
        sys = build_system(Word.parse(fx.word), fx.k)
        v = solve_system(sys)
        ledger.check(f"system {fx.name}: rows match worked equations", fixtures.rows_match(fx, sys))
        ledger.check(
            f"system {fx.name}: {len(sys.rows)} equations, {len(sys.unknowns)} unknowns, nullity 0",
            v.nullity == 0,
        )
    abcde = build_system(Word.parse("abcde"), 2)
    ledger.check(
        "system abcde, k=2: every row has three unit coefficients",
        all(sorted(abcde.row_terms(i).values()) == [1, 1, 1] for i in range(len(abcde.rows))),
    )


def sweep_checks(ledger: Ledger) -> None:
    for length, k in ((3, 1), (5, 2), (7, 3)):
        res = sweep_patterns(length, k)
        bad = [p for p, v in res if v.nullity]
        name = f"sweep length={length} k={k}: nullity 0 for all {len(res)} patterns"
        if bad:
            name += f" (counterexamples: {bad})"
        ledger.check(name, not bad)
    res = sweep_patterns(4, 2)
    ledger.check("sweep length=4 k=2: some pattern keeps a free moment", any(v.nullity for _, v in res))


def analytic_checks(ledger: Ledger, kmax: int = 4, kmax_akbkc: int = 6) -> None:
    for k in range(1, kmax + 1):
        ok = all(analytic.two_letter_chain(k, m)["holds"] for m in range(k + 1))
        ledger.check(f"two-letter chain k={k}, m=0..{k}: coefficients and nullity 0", ok)
    letters = "bcdefgh"
    for k in range(1, kmax + 1):
        distinct = analytic.induction_case(k, Word.parse(letters[:k]))["holds"]
        repeated = analytic.induction_case(k, Word.parse("b" * k))["holds"]
        ledger.check(f"induction case k={k}: r=0,1 coefficients and nullity 0", distinct and repeated)
    for k in range(1, kmax_akbkc + 1):
        r = analytic.akbkc_closed_forms(k)
        ledger.check(f"a^k b^k c k={k}: closed forms satisfy recurrences", r["closed forms satisfy recurrences"])
        ledger.check(f"a^k b^k c k={k}: boundary rows force P0 = Q0 = 0", r["P0 = Q0 = 0 forced"])
        ledger.check(f"a^k b^k c k={k}: analytic and generic verdicts agree", r["holds"])


def spectral_checks(ledger: Ledger, kmax_full: int = 5, kmax: int = 7, **budget) -> None:
    for k in range(1, kmax + 1):
        full = k <= kmax_full
        rep = spectral.spectrum(k, full=full, **budget)
        n, det, log10, eig = fixtures.TABLE[k]
        ledger.check(f"Table k={k} N = {n}", rep.N == n)
        if det is not None:
            ledger.check(f"Table k={k} Det = {det}", rep.det.exact == det)
        if log10 is not None:
            tol = fixtures.LOG10_TOL[k]
            ledger.check(
                f"Table k={k} log10 Det = {log10} (+-{tol})",
                abs(rep.det.log10_abs - log10) <= tol,
            )
        if full and eig is not None:
            ledger.check(f"Table k={k} eigenvalues {spectral_text(eig)}", rep.eigenvalues == eig)
        structural = all(rep.checks[c] for c in spectral.STRUCTURAL)
        ledger.check(f"matrix k={k}: symmetric, zero diagonal, k+1 ones per row and column", structural)
        ledger.check(f"matrix k={k}: Tr(A^2) = N(k+1)", rep.checks["Tr(A^2) = N(k+1)"])
        ledger.check(f"matrix k={k}: eigenvalue {k + 1:+d} has multiplicity 1", rep.checks["eigenvalue k+1 simple"])
        ledger.check(f"matrix k={k}: no zero eigenvalue", rep.checks["no zero eigenvalue"])
        if full:
            ledger.check(f"matrix k={k}: all spectral checks", rep.passed)
    for k in range(1, kmax_full + 1):
        ledger.check(f"swap algebra k={k}: A^2, D2^2, A^4 identities", spectral.verify_delta_algebra(k)["holds"])
        ledger.check(f"trace sum rules k={k}", spectral.trace_sum_rules(k)["holds"])


def spectral_text(eig) -> str:
    return " ".join(f"({E:+d})^{m}" for E, m in eig)


def boundary_checks(ledger: Ledger) -> None:
    r = boundary.rank2_a2b2()
    ledger.check("rank-2 a2b2: nullity 1, (aa;bb) + 2(ab;ab) = 0, moments survive", r["holds"])
    a = boundary.antisym_abc()
    cyclic = a["cyclic equality (a;bc) = (b;ca) = (c;ab)"]
    ledger.check("antisymmetric abc: nullity 1 with (a;bc) = (b;ca) = (c;ab)", cyclic)
    ledger.check("symmetric abc control: nullity 0", a["symmetric control nullity"] == 0)


def oracle_checks(ledger: Ledger) -> None:
    rep = oracle.oracle_report(oracle.make_field(oracle.ScalarProfile()))
    ledger.check(
        f"gaussian field: quadrature calibration below {oracle.CALIBRATION_TOL:g}",
        rep["calibration error"] < oracle.CALIBRATION_TOL,
    )
    ledger.check(f"gaussian field: moments with |w_L| <= 1 vanish (rel {oracle.VANISH_TOL:g})", rep["vanishing holds"])
    ledger.check(
        f"gaussian field: (aa;bb) + 2(ab;ab) = 0 (rel {oracle.RELATION_TOL:g}), terms nonzero",
        rep["relation holds"] and rep["relation terms nonzero"],
    )
    shifted = oracle.oracle_report(oracle.make_field(oracle.ScalarProfile(center=(0.5, -0.25, 0.125))))
    ledger.check("off-centre gaussian field: same vanishing and relations", shifted["holds"])


def reproduce(kmax_full: int = 5, kmax: int = 7, **budget) -> Ledger:
    """All checks in a fixed order; ``budget`` is passed on to the spectral runs."""
    ledger = Ledger()
    fixture_checks(ledger)
    sweep_checks(ledger)
    analytic_checks(ledger)
    spectral_checks(ledger, kmax_full, kmax, **budget)
    boundary_checks(ledger)
    oracle_checks(ledger)
    return ledger

