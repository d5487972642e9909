from __future__ import annotations

import json

import pytest

from tensormoments import spectral
from tensormoments.fixtures import TABLE


def test_A_for_k1():
    am = spectral.build_A(1)
    assert [am.label(i) for i in range(am.N)] == ["ab", "ac", "bc"]
    # ab -> a.c = ac and b.c = bc
    assert am.matrix.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


@pytest.mark.parametrize("k", range(1, 6))
def test_structure(k):
    am = spectral.build_A(k)
    assert am.N == TABLE[k][0] == spectral.size(k)
    assert all(spectral.structural_checks(am).values())


@pytest.mark.parametrize("k", range(1, 6))
def test_delta_algebra(k):
    rep = spectral.verify_delta_algebra(k)
    assert rep["holds"], rep
    assert rep["row sums"]["D2"] == [(k + 1) * k]
    assert rep["row sums"]["D4"] == [(k + 1) * k // 2 * k * (k - 1) // 2]


@pytest.mark.parametrize("k", range(1, 6))
def test_trace_rules(k):
    rep = spectral.trace_sum_rules(k)
    assert rep["holds"], rep
    for r in (2, 4, 6, 8):
        assert rep["rules"][f"Sigma_{r}"]["holds"]


def test_odd_trace_at_k1():
    assert spectral.trace_powers(spectral.build_A(1), [3])[3] == 6


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exact_rows(k):
    n, det, _, eig = TABLE[k]
    rep = spectral.spectrum(k)
    assert (rep.N, rep.det.exact, rep.eigenvalues) == (n, det, eig)
    assert rep.passed, rep.checks


def test_eigen_multiplicity_zero_is_final():
    am = spectral.build_A(2)
    assert spectral.eigen_multiplicity(am, 0) == 0
    assert spectral.eigen_multiplicity(am, -2) == 4


def test_candidates_order():
    assert spectral.candidates(2) == [3, -3, 2, -2, 1, -1, 0]


def test_budget():
    with pytest.raises(spectral.BudgetExceeded):
        spectral.build_A(7, max_n=2000)
    with pytest.raises(spectral.BudgetExceeded):
        spectral.verify_delta_algebra(6)
    with pytest.raises(ValueError):
        spectral.build_A(0)


def test_partial_spectrum_k6_skips_dense_powers():
    am = spectral.build_A(6)
    assert set(spectral.trace_powers(am)) == {1, 2}


def test_report_json_round_trip():
    rep = spectral.spectrum(3)
    back = spectral.SpectralReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert back == rep


def test_table_formats():
    reps = spectral.table_rows(2)
    csv = spectral.table_csv(reps).splitlines()
    assert csv[0] == "k,N,det_exact,det_log10,eig_1,mult_1,eig_2,mult_2,eig_3,mult_3"
    assert csv[2].startswith("2,10,48,1.6812,3,1,-2,4,1,5")
    assert "(+3)^1 (-2)^4 (+1)^5" in spectral.table_text(reps)

