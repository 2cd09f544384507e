"""Cross-checks for the three integral representations and the Fourier data.

Reference constants were frozen from 25-digit mpmath evaluations of the
classical special-function forms (modified Bessel K, Gamma products).
"""

import numpy as np
import pytest

from whitlab import cgamma
from whitlab.errors import DomainError, GammaArgumentViolation, RankUnsupported
from whitlab.quadrature import (
    Contour,
    QuadSpec,
    fourier_transform,
    integrate_line,
    integrate_tensor,
)
from whitlab.realizations import SpectralParams
from whitlab.whittaker import (
    bessel_k_oracle,
    phi_hat_closed_form,
    phi_hat_mb_integral,
    phi_normalized,
    psi_givental,
    psi_mb,
    psi_modified,
)

TWO_PI = 2.0 * np.pi

K0_2 = 0.1138938727495334356527196         # K_0(2)
TWO_K0_2 = 0.2277877454990668713054391     # 2 K_0(2)
K_HALF_1 = 0.4610685044478945584395759     # K_{1/2}(1) = sqrt(pi/2)/e
TWO_K_06I_2 = 0.2113532030379002932223663  # 2 K_{0.6i}(2), real
INV_TWO_PI = 0.1591549430918953357688838
ROOT_HALF_PI = 1.253314137315500251207883  # Gamma(1/2)^2 / sqrt(2 pi)
# 2 e^{i(g1+g2)(x1+x2)/2} K_{i(g1-g2)}(2 e^{(x1-x2)/2}) at
# g = (0.3, -0.1), x = (0.5, -0.3):
PSI_GL2_REF = 0.06915130006828138141006726 + 0.001383210434341808776679926j

# Rank-2 tensor integrals are the expensive pieces; the pairwise targets are
# 1e-6, so a 1e-7 quadrature request leaves an order of margin while keeping
# the suite quick.
FAST3 = QuadSpec(rel_tol=1e-7, abs_tol=1e-11)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def params1(g1, g2):
    return SpectralParams.from_gamma(1, (g1, g2))


def params2(g1, g2, g3):
    return SpectralParams.from_gamma(2, (g1, g2, g3))


# -- rank 1 ----------------------------------------------------------------


def test_rank1_triple_equality_at_origin():
    p = params1(0.0, 0.0)
    for fn in (psi_mb, psi_givental, psi_modified):
        v = fn(p, (0.0, 0.0))
        assert v.rep in ("MB", "Givental", "Modified")
        assert rel(v.value, TWO_K0_2) < 1e-10, fn.__name__


def test_rank1_weyl_symmetry():
    a = psi_mb(params1(0.4, -0.7), (0.25, -0.4)).value
    b = psi_mb(params1(-0.7, 0.4), (0.25, -0.4)).value
    assert abs(a - b) < 1e-10


def test_rank1_bessel_reduction_general():
    g1, g2 = 0.3, -0.1
    x1, x2 = 0.5, -0.3
    v = psi_mb(params1(g1, g2), (x1, x2)).value
    assert rel(v, PSI_GL2_REF) < 1e-8
    # fully independent route: the cosh-integral Bessel oracle
    k = bessel_k_oracle(1j * (g1 - g2), 2.0 * np.exp(0.5 * (x1 - x2)))
    oracle = 2.0 * np.exp(0.5j * (g1 + g2) * (x1 + x2)) * k
    assert rel(v, oracle) < 1e-8


def test_rank1_givental_purely_imaginary_order():
    v = psi_givental(params1(0.3, -0.3), (0.0, 0.0)).value
    assert abs(v.imag) < 1e-10
    assert rel(v, TWO_K_06I_2) < 1e-9


def test_rank1_translation_covariance():
    g1, g2, c = 0.2, -0.5, 0.35
    p = params1(g1, g2)
    base = psi_givental(p, (0.3, -0.2)).value
    shifted = psi_givental(p, (0.3 + c, -0.2 + c)).value
    assert rel(shifted, np.exp(1j * (g1 + g2) * c) * base) < 1e-9


def test_rank1_modified_matches_mb():
    # regularized spectrum
    p = SpectralParams.from_lambda(1, (0.3, -0.2), eps=0.25)
    x = (0.4, -0.1)
    assert rel(psi_modified(p, x).value, psi_mb(p, x).value) < 1e-8
    # plain real spectrum
    q = params1(0.45, -0.15)
    assert rel(psi_modified(q, x).value, psi_mb(q, x).value) < 1e-8


def test_rank1_modified_gamma_gate():
    p = params1(-0.4j, 0.4j)  # Im(g1 - g2) = -0.8 kills the Gamma argument
    with pytest.raises(GammaArgumentViolation):
        psi_modified(p, (0.0, 0.0))


def test_rank1_cross_rep_within_error_budget():
    spec = QuadSpec(rel_tol=1e-8, abs_tol=1e-12)
    p = params1(0.35, -0.2)
    x = (0.3, -0.45)
    vals = [fn(p, x, spec) for fn in (psi_mb, psi_givental, psi_modified)]

    def scaled_err(w):
        if w.quad.value == 0:
            return w.quad.err_estimate
        return w.quad.err_estimate * abs(w.value) / abs(w.quad.value)

    mb = vals[0]
    for other in vals[1:]:
        budget = 10.0 * (scaled_err(mb) + scaled_err(other)) + 1e-13
        assert abs(mb.value - other.value) <= budget, other.rep


# -- rank 2 ----------------------------------------------------------------


def test_rank2_triple_equality_at_origin():
    p = params2(0.0, 0.0, 0.0)
    x = (0.0, 0.0, 0.0)
    a = psi_mb(p, x, FAST3).value
    b = psi_givental(p, x, FAST3).value
    c = psi_modified(p, x, FAST3).value
    assert rel(a, b) < 1e-6
    assert rel(a, c) < 1e-6
    assert rel(b, c) < 1e-6


def test_rank2_mb_vs_givental_generic():
    p = params2(0.2, 0.0, -0.2)
    x = (0.3, 0.0, -0.3)
    a = psi_mb(p, x, FAST3).value
    b = psi_givental(p, x, FAST3).value
    assert rel(a, b) < 1e-6


def test_rank2_modified_matches_mb_regularized():
    p = SpectralParams.from_lambda(2, (0.3, -0.2, -0.1), eps=0.2)
    x = (0.2, 0.0, -0.1)
    a = psi_mb(p, x, FAST3).value
    c = psi_modified(p, x, FAST3).value
    assert rel(a, c) < 1e-6


def test_rank2_modified_gamma_gate():
    p = params2(-0.45j, 0.45j, 0.0)  # Im(g1 - g2) = -0.9
    with pytest.raises(GammaArgumentViolation):
        psi_modified(p, (0.0, 0.0, 0.0))


def test_rank2_weyl_symmetry_givental():
    x = (0.2, -0.1, 0.1)
    base = psi_givental(params2(0.25, -0.05, -0.2), x).value
    swap = psi_givental(params2(-0.05, 0.25, -0.2), x).value
    cyc = psi_givental(params2(-0.2, 0.25, -0.05), x).value
    assert rel(base, swap) < 1e-9
    assert rel(base, cyc) < 1e-9


# -- normalized u-dependent value ------------------------------------------


def test_phi_rank1_representative_invariance():
    g1, g2 = 0.3, -0.1
    p = params1(g1, g2)

    def phi_from(x1, x2):
        v = psi_mb(p, (x1, x2)).value
        return np.exp(-1j * (g1 + g2) * x2 + 0.5 * (x1 - x2)) * v

    a = phi_from(1.0, 0.0)
    b = phi_from(2.0, 1.0)
    assert abs(a - b) < 1e-9
    assert abs(phi_normalized(p, (1.0,), "MB") - a) < 1e-12


def test_phi_rank2_matches_direct_tau_form():
    g = (0.2, 0.0, -0.2)
    u1, u2 = 0.3, 0.3
    p = params2(*g)

    def f(t11, t21, t22):
        lg = (
            cgamma.log_gamma_many(1j * (t21 - t11) + 0.5)
            + cgamma.log_gamma_many(1j * (t22 - t11) + 0.5)
            + 1j * (t11 * u1 + (t21 + t22) * u2)
        )
        for gi in g:
            lg = lg + cgamma.log_gamma_many(
                1j * (gi - t21) + 0.5
            ) + cgamma.log_gamma_many(1j * (gi - t22) + 0.5)
        return cgamma.inv_gamma_pair(t21 - t22) * np.exp(lg)

    res = integrate_tensor(f, Contour.real_line(3), FAST3)
    # half of the plane integral: the integrand is t21 <-> t22 symmetric and
    # covers the ordered spectrum twice
    direct = 0.5 * res.value / TWO_PI**3
    via_psi = phi_normalized(p, (u1, u2), "MB", FAST3)
    assert rel(direct, via_psi) < 1e-8


def test_phi_rank2_matches_shifted_t_form():
    # independent variable change of the T-integral: all six exponential
    # walls anchored at the origin, u entering three of them
    g = (0.2, -0.05, -0.15)
    u1, u2 = 0.4, 0.2
    p = params2(*g)

    def f(t11, t21, t22):
        w = (
            1j * (g[0] - g[1]) * t11
            + 1j * (g[1] - g[2]) * t21
            + 1j * (g[0] - g[2]) * t22
            - np.exp(u1 - t21)
            - np.exp(t21)
            - np.exp(u2 - t22)
            - np.exp(t22)
            - np.exp(u2 + t21 - t22 - t11)
            - np.exp(t11)
        )
        return np.exp(w)

    res = integrate_tensor(f, Contour.real_line(3), FAST3)
    direct = np.exp((1j * g[2] + 1.0) * u1 + (1j * (g[1] + g[2]) + 1.0) * u2) * res.value
    via_psi = phi_normalized(p, (u1, u2), "Givental", FAST3)
    assert rel(direct, via_psi) < 1e-7


def test_phi_unknown_rep_and_bad_u():
    p = params1(0.0, 0.0)
    with pytest.raises(ValueError):
        phi_normalized(p, (0.0,), "saddle")
    with pytest.raises(DomainError):
        phi_normalized(p, (0.0, 0.0), "MB")


# -- Fourier side ----------------------------------------------------------


def test_phi_hat_closed_form_reference_values():
    assert rel(phi_hat_closed_form(params1(0.0, 0.0), 0.0), ROOT_HALF_PI) < 1e-12
    assert rel(phi_hat_closed_form(params2(0.0, 0.0, 0.0), (0.0, 0.0)), INV_TWO_PI) < 1e-12


def test_phi_hat_rank1_fourier_consistency():
    g = (0.4, -0.1)
    p = params1(*g)
    inner = QuadSpec(rel_tol=1e-9, abs_tol=1e-13)

    def phi_scalar(u):
        def h(t):
            return np.exp(1j * (g[0] - g[1]) * t - np.exp(u - t) - np.exp(t))

        res = integrate_line(h, Contour.real_line(1), inner)
        return np.exp((1j * g[1] + 0.5) * u) * res.value

    # the reduced one-wall form agrees with the normalized matrix element
    for u in (0.7, -1.2):
        assert rel(phi_scalar(u), phi_normalized(p, (u,), "Givental")) < 1e-9

    def phi_vec(u):
        flat = np.real(np.atleast_1d(np.asarray(u))).ravel()
        vals = np.array([phi_scalar(float(v)) for v in flat], dtype=complex)
        return vals[0] if np.ndim(u) == 0 else vals.reshape(np.shape(u))

    pt = 0.3
    ft = fourier_transform(phi_vec, pt, QuadSpec(rel_tol=1e-7, abs_tol=1e-11))
    assert rel(ft.value, phi_hat_closed_form(p, pt)) < 1e-6


def test_phi_hat_rank2_fourier_consistency():
    # Fourier transform of the rank-2 normalized value, with the u- and
    # T22-integrations done exactly by the Euler formula; what remains is a
    # genuinely 2-d numerical check against the closed Gamma-product form.
    g = (0.2, -0.1, 0.05)
    p1, p2 = 0.15, -0.2
    z = 1j * (g[1] + g[2] - p2) + 1.0

    def f(t11, t21):
        d = t21 - t11
        soft = np.where(d > 30.0, d, np.log1p(np.exp(np.minimum(d, 30.0))))
        w = (
            (1j * (g[1] - p1) + 1.0) * t21
            + 1j * (g[0] - g[1]) * t11
            - np.exp(t21)
            - np.exp(t11)
            - z * soft
        )
        return np.exp(w)

    res = integrate_tensor(f, Contour.real_line(2), QuadSpec(rel_tol=1e-8, abs_tol=1e-12))
    pref = np.exp(
        cgamma.log_gamma(1j * (g[0] + g[1] - p2) + 1.0)
        + cgamma.log_gamma(1j * (g[2] - p1) + 1.0)
        + cgamma.log_gamma(z)
    ) / TWO_PI
    closed = phi_hat_closed_form(params2(*g), (p1, p2))
    assert rel(pref * res.value, closed) < 1e-6


def test_phi_hat_mb_integral_reference():
    v = phi_hat_mb_integral(params2(0.0, 0.0, 0.0), (0.0, 0.0))
    assert rel(v, INV_TWO_PI) < 1e-8


def test_phi_hat_mb_integral_generic():
    p = params2(0.4, 0.1, -0.5)
    pt = (0.2, -0.3)
    assert rel(phi_hat_mb_integral(p, pt), phi_hat_closed_form(p, pt)) < 1e-7


def test_phi_hat_mb_integral_rank_guard():
    with pytest.raises(RankUnsupported):
        phi_hat_mb_integral(params1(0.0, 0.0), 0.0)


# -- Bessel oracle and guards ----------------------------------------------


def test_bessel_oracle_reference_values():
    assert rel(bessel_k_oracle(0.0, 2.0), K0_2) < 1e-12
    assert rel(bessel_k_oracle(0.5, 1.0), K_HALF_1) < 1e-12


def test_bessel_oracle_order_symmetry():
    nu = 0.3 + 0.2j
    a = bessel_k_oracle(nu, 1.7)
    b = bessel_k_oracle(-nu, 1.7)
    assert abs(a - b) < 1e-12


def test_bessel_oracle_domain():
    with pytest.raises(DomainError):
        bessel_k_oracle(0.0, 0.0)
    with pytest.raises(DomainError):
        bessel_k_oracle(0.0, -1.0)


def test_argument_guards():
    p = params1(0.0, 0.0)
    with pytest.raises(DomainError):
        psi_mb(p, (11.0, 0.0))
    with pytest.raises(DomainError):
        psi_mb(p, (0.0, 0.0, 0.0))
    big = SpectralParams(3, (0.0,) * 4, (0.0,) * 4, 0.0, 0.0)
    with pytest.raises(RankUnsupported):
        psi_mb(big, (0.0,) * 4)
