"""Smoke tests for the python bindings."""

from pathlib import Path

import numpy as np
import pytest

import semicircle_lab as scl

GOLDEN = Path(__file__).resolve().parent.parent / "data" / "expand_A_k1_lone2_q1.golden"


def test_msc_fixed_point():
    for E, eta in [(0.0, 1.0), (1.5, 0.01), (-3.0, 0.2)]:
        z = scl.SpectralPoint(E, eta)
        m = scl.msc(z)
        assert abs(m + 1.0 / (complex(E, eta) + m)) < 1e-12
        assert m.imag > 0.0
    assert abs(scl.msc(scl.SpectralPoint(0.0, 1.0)).imag - (5**0.5 - 1) / 2) < 1e-14


def test_spectral_point_validation():
    with pytest.raises(ValueError):
        scl.SpectralPoint(0.0, 0.0)
    assert scl.SpectralPoint(1.5, 0.3).kappa == pytest.approx(0.5)


def test_semicircle_cdf_and_locations():
    assert scl.n_sc_cdf(0.0) == pytest.approx(0.5)
    assert scl.n_sc_cdf(-2.0) == 0.0
    assert scl.n_sc_cdf(2.0) == 1.0
    assert scl.rho_sc(0.0) == pytest.approx(1.0 / np.pi)
    gammas = scl.classical_locations(10)
    assert len(gammas) == 10
    assert all(b > a for a, b in zip(gammas, gammas[1:]))
    assert scl.classical_location(4, 4) == 2.0


def test_sampling_determinism_and_symmetry():
    a = scl.sample_wigner(8, "gaussian", 42)
    b = scl.sample_wigner(8, "gaussian", 42)
    assert np.array_equal(a.entries, b.entries)
    assert np.allclose(a.entries, a.entries.conj().T, rtol=0, atol=0)
    assert a.labels == list(range(1, 9))

    m = scl.matrix_minor(a, [2, 5])
    assert m.labels == [1, 3, 4, 6, 7, 8]
    assert m.entries.shape == (6, 6)


def test_resolvent_and_identities():
    H = scl.sample_wigner(8, "gaussian", 7)
    z = scl.SpectralPoint(0.3, 0.5)
    G = scl.resolvent(H, z)
    shifted = H.entries - complex(0.3, 0.5) * np.eye(8)
    assert np.abs(shifted @ G.values - np.eye(8)).max() < 1e-10

    report = scl.identity_suite(H, z)
    assert report.max_residual < 1e-10


def test_stieltjes_and_error_terms():
    H = scl.sample_wigner(16, "rademacher", 3)
    z = scl.SpectralPoint(0.2, 0.6)
    d = scl.eigendecompose(H, False)
    m = scl.stieltjes(d, z)
    assert m.imag > 0.0

    decomposition = scl.error_terms(H, z)
    msc = scl.msc(z)
    residual = abs(
        decomposition.lambda_**2 + (2 * msc + complex(0.2, 0.6)) * decomposition.lambda_
        + decomposition.R
    )
    assert residual < 1e-9
    assert abs(scl.lambda_from_R(z, decomposition.R) - decomposition.lambda_) < 1e-9


def test_expansion_golden():
    terms = scl.expand("A", 1, [2], 1)
    assert [t.sigma for t in terms] == ["0", "10", "11"]
    assert [t.monomial.sign for t in terms] == [1, -1, 1]
    assert scl.dump_terms(terms) == GOLDEN.read_bytes().decode()

    H = scl.sample_wigner(6, "gaussian", 11)
    z = scl.SpectralPoint(0.4, 0.6)
    assert scl.verify_reconstruction("B", 1, [2, 3], 1, H, z) < 1e-9


def test_lone_labels():
    positions, coords = scl.lone_labels([1, 2, 1, 3])
    assert positions == [2, 4]
    assert coords == [2, 3]


def test_fit_and_tails():
    fit = scl.loglog_fit([1.0, 2.0, 4.0, 8.0], [1.0, 0.5, 0.25, 0.125])
    assert fit.slope == pytest.approx(-1.0)
    assert fit.r_squared == pytest.approx(1.0)

    tails = scl.hanson_wright_tail(np.zeros((4, 4), dtype=complex), [1.0], 50, 1)
    assert tails[0].tail == 0.0

    value = scl.control_parameter(100, scl.SpectralPoint(0.0, 0.5), 1, 0.0)
    assert value >= (100 * 0.5) ** -2


def test_scan_records():
    records = scl.fluctuation_scan([16], [0.5], [0.0], samples=2, seed=5, threads=2)
    assert len(records) == 2
    assert all(r.abs_lambda >= abs(r.im_lambda) for r in records)
    with pytest.raises(ValueError):
        scl.fluctuation_scan([16], [0.1], [0.0], samples=1)
