import math

import numpy as np
import pytest
from scipy import integrate

from conftest import fd_spectrum
from horizonspec import (
    ConvergenceFailure,
    ModeSpectrum,
    NonPositiveEigenvalue,
    SmarrShape,
    TailModelRejected,
    assemble,
    eigenvalues,
    profile,
    s1_trace_integral,
    trace_numeric,
)


def _sphere_levels(first, n, eta2=1.0):
    return np.array([l * (l + 1) for l in range(first, first + n)]) / eta2


# -- assembly -----------------------------------------------------------------


@pytest.mark.parametrize("k,first", [(0, 1), (1, 1), (2, 2), (-3, 3), (5, 5)])
@pytest.mark.parametrize("eta2", [1.0, 4.0])
def test_sphere_matrix_is_diagonal(k, first, eta2):
    a = assemble(k, SmarrShape(eta2, 0.0), 10).entries
    np.testing.assert_allclose(np.diag(a), _sphere_levels(first, 10, eta2), rtol=0, atol=1e-12)
    off = a - np.diag(np.diag(a))
    assert np.abs(off).max() < 1e-12


def test_assembly_depends_on_k_squared():
    s = SmarrShape(1.7, 0.35)
    np.testing.assert_array_equal(assemble(3, s, 20).entries, assemble(-3, s, 20).entries)


def test_assembly_rejects_small_basis():
    with pytest.raises(ValueError):
        assemble(0, SmarrShape(1.0, 0.1), 7)


def test_lowest_eigenvalue_matches_finite_differences():
    shape = SmarrShape(1.0, 0.1)
    galerkin = eigenvalues(0, shape, 1, 40).eigenvalues[0]
    assert galerkin == pytest.approx(fd_spectrum(0, shape)[0], rel=1e-6)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("beta2", [0.25, 0.5])
def test_equivariant_modes_match_finite_differences(k, beta2):
    shape = SmarrShape(2.0, beta2)
    got = eigenvalues(k, shape, 3).eigenvalues
    # k^2/f sampled at the cell next to a pole costs the oracle an O(h) term
    coarse = fd_spectrum(k, shape, cells=2000, count=3)
    fine = fd_spectrum(k, shape, cells=4000, count=3)
    np.testing.assert_allclose(got, 2 * fine - coarse, rtol=1e-5)


# -- eigenvalues --------------------------------------------------------------


def test_sphere_invariant_levels():
    np.testing.assert_allclose(eigenvalues(0, SmarrShape(1.0, 0.0), 5).eigenvalues, [2, 6, 12, 20, 30], rtol=1e-13)


def test_schwarzschild_levels():
    np.testing.assert_allclose(eigenvalues(0, SmarrShape(4.0, 0.0), 3).eigenvalues, [0.5, 1.5, 3.0], rtol=1e-13)


def test_equivariant_sphere_levels():
    np.testing.assert_allclose(eigenvalues(2, SmarrShape(1.0, 0.0), 3).eigenvalues, [6, 12, 20], rtol=1e-13)


def test_basis_margin_enforced():
    with pytest.raises(ValueError):
        eigenvalues(0, SmarrShape(1.0, 0.0), 10, basis_size=20)


def test_doubling_detects_unconverged(monkeypatch):
    import horizonspec.spectral as sp

    real = sp._lowest

    def perturbed(k, shape, count, n):
        out = real(k, shape, count, n)
        return out * (1 + 1e-6) if n > 30 else out

    monkeypatch.setattr(sp, "_lowest", perturbed)
    with pytest.raises(ConvergenceFailure):
        sp.eigenvalues(0, SmarrShape(1.0, 0.2), 5, 20)


@pytest.mark.parametrize("beta2", [0.0, 0.2, 0.5])
def test_spectrum_positive_and_increasing(beta2):
    for k in range(4):
        ev = eigenvalues(k, SmarrShape(1.0, beta2), 30).eigenvalues
        assert ev[0] > 0
        assert np.all(np.diff(ev) > 0)


@pytest.mark.parametrize("beta2", [0.0, 0.25, 0.5])
def test_ground_state_monotone_in_k(beta2):
    # k = 0 lives on the complement of the constants and is not comparable
    firsts = [eigenvalues(k, SmarrShape(1.0, beta2), 1).eigenvalues[0] for k in range(1, 5)]
    assert all(b >= a * (1 - 1e-14) for a, b in zip(firsts, firsts[1:]))


def test_invariant_ground_state_can_exceed_first_equivariant():
    s = SmarrShape(1.0, 0.25)
    assert eigenvalues(0, s, 1).eigenvalues[0] > eigenvalues(1, s, 1).eigenvalues[0]


@pytest.mark.parametrize("k", [1, 2, 4])
def test_plus_minus_k_spectra_identical(k):
    s = SmarrShape(1.0, 0.3)
    np.testing.assert_array_equal(eigenvalues(k, s, 10).eigenvalues, eigenvalues(-k, s, 10).eigenvalues)


@pytest.mark.parametrize("c", [0.5, 2.0, 90.0])
def test_homothety_scaling(c):
    base = SmarrShape(1.0, 0.4)
    for k in (0, 2):
        ref = eigenvalues(k, base, 10).eigenvalues
        scaled = eigenvalues(k, base.scaled(c), 10).eigenvalues
        np.testing.assert_allclose(scaled, ref / c, rtol=1e-12)


def test_sphere_multiplicity():
    # l(l+1) lies in Spec L_k exactly when |k| <= l
    levels = {k: set(np.rint(eigenvalues(k, SmarrShape(1.0, 0.0), 12).eigenvalues).astype(int)) for k in range(6)}
    for l in range(1, 8):
        value = l * (l + 1)
        for k in range(6):
            assert (value in levels[k]) == (k <= l)


# -- traces -------------------------------------------------------------------


def _quadrature_gamma0(beta2):
    f = profile(SmarrShape(1.0, beta2))
    val, _ = integrate.quad(lambda x: (1 - x * x) / f(x), -1, 1, epsabs=1e-13, epsrel=1e-13)
    return 0.5 * val


@pytest.mark.parametrize("k", [0, 1])
def test_sphere_trace_is_one(k):
    est = trace_numeric(eigenvalues(k, SmarrShape(1.0, 0.0), 60), 12)
    assert est.value == pytest.approx(1.0, abs=1e-5)
    assert est.value == est.partial_sum + est.tail_correction
    assert 0 <= est.tail_correction < est.partial_sum
    assert est.modes_used == 60


def test_invariant_trace_distorted():
    assert _quadrature_gamma0(0.3) == pytest.approx(0.8, rel=1e-12)
    est = trace_numeric(eigenvalues(0, SmarrShape(1.0, 0.3), 60), 12)
    assert est.value == pytest.approx(0.8, abs=1e-4)


@pytest.mark.parametrize("beta2", [0.0, 0.1, 0.3, 0.5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_equivariant_trace_identity(beta2, k):
    eta2 = 2.0
    est = trace_numeric(eigenvalues(k, SmarrShape(eta2, beta2), 60), 12)
    assert est.value == pytest.approx(eta2 / k, rel=1e-4)


def test_tail_model_rejects_rough_window():
    eigs = np.arange(1, 41, dtype=float) ** 2
    eigs[-3] *= 1.01
    with pytest.raises(TailModelRejected):
        trace_numeric(ModeSpectrum(0, eigs, 100, SmarrShape(1.0, 0.0)), 12)


def test_tail_rejects_non_positive():
    eigs = np.arange(0, 40, dtype=float) ** 2
    with pytest.raises(NonPositiveEigenvalue):
        trace_numeric(ModeSpectrum(0, eigs, 100, SmarrShape(1.0, 0.0)), 12)


def test_tail_window_requirements():
    spec = eigenvalues(0, SmarrShape(1.0, 0.0), 30)
    with pytest.raises(ValueError):
        trace_numeric(spec, 12)
    with pytest.raises(ValueError):
        trace_numeric(spec, 4)


@pytest.mark.parametrize(
    "eta2,beta2,expected",
    [(1.0, 0.0, 1.0), (2.0, 0.5, 4 / 3), (90.0, 0.1, 84.0)],
)
def test_s1_trace_integral(eta2, beta2, expected):
    assert s1_trace_integral(SmarrShape(eta2, beta2)) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("beta2", np.linspace(0, 0.5, 11))
def test_s1_trace_integral_against_adaptive_quadrature(beta2):
    assert s1_trace_integral(SmarrShape(1.0, beta2)) == pytest.approx(_quadrature_gamma0(beta2), rel=1e-12)
