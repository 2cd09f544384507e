"""Gamma-integral identity certification: known values and symmetries."""

import math

import numpy as np
import pytest

from whitlab import cgamma
from whitlab.errors import PreconditionViolated
from whitlab.identities import (
    barnes_first,
    beta_integral,
    contour_shift_residual,
    euler_gamma,
    glo11,
    gustafson_n1,
    residue_at,
)
from whitlab.quadrature import QuadSpec

SQRT_PI = 1.772453850905516027298167


def test_barnes_half_quadruple():
    rep = barnes_first((0.5, 0.5), (0.5, 0.5))
    assert abs(rep.rhs - 1.0) < 1e-14
    assert rep.rel_residual < 1e-10


def test_barnes_pi_over_8():
    rep = barnes_first((1.0, 0.5), (0.5, 1.0))
    assert abs(rep.rhs - math.pi / 8.0) < 1e-14
    assert rep.rel_residual < 1e-10


def test_barnes_complex_draws():
    rng = np.random.default_rng(4242)
    for _ in range(3):
        a = rng.uniform(0.1, 1.2, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        b = rng.uniform(0.1, 1.2, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        rep = barnes_first(tuple(a), tuple(b))
        assert rep.rel_residual < 1e-8, rep


def test_barnes_precondition():
    with pytest.raises(PreconditionViolated):
        barnes_first((0.04, 0.5), (0.5, 0.5))


def test_barnes_swap_symmetry():
    a, b = (0.4 + 0.2j, 0.9), (0.7, 0.3 - 0.1j)
    r1 = barnes_first(a, b)
    r2 = barnes_first((a[1], a[0]), (b[1], b[0]))
    assert abs(r1.lhs - r2.lhs) / abs(r1.lhs) < 1e-9
    assert abs(r1.rhs - r2.rhs) / abs(r1.rhs) < 1e-12


def test_gustafson_half_values():
    rep = gustafson_n1((0.5, 0.5, 0.5, 0.5))
    assert abs(rep.rhs - 2.0) < 1e-14
    assert rep.rel_residual < 1e-9


def test_gustafson_generic_and_permutation():
    rep = gustafson_n1((0.3, 0.5, 0.7, 0.9))
    assert rep.rel_residual < 1e-7
    perm = gustafson_n1((0.9, 0.3, 0.7, 0.5))
    assert abs(rep.lhs - perm.lhs) / abs(rep.lhs) < 1e-9


def test_gustafson_integrand_finite_at_origin():
    # the reciprocal-Gamma measure has a double zero at t = 0
    assert cgamma.inv_gamma_pair(0.0) == 0.0


def test_glo11_values():
    rep = glo11((0.5, 0.5, 0.5))
    assert abs(rep.rhs - 1.0) < 1e-14
    assert rep.rel_residual < 1e-9
    rep2 = glo11((0.6, 0.8, 1.1))
    assert rep2.rel_residual < 1e-7


def test_euler_gamma():
    assert euler_gamma(1.0).rel_residual < 1e-11
    rep = euler_gamma(0.5)
    assert abs(rep.rhs - SQRT_PI) < 1e-14
    assert rep.rel_residual < 1e-11
    assert euler_gamma(2.0 + 1.0j).rel_residual < 1e-10


def test_beta_integral():
    assert beta_integral(1.0, 1.0).rel_residual < 1e-11
    rep = beta_integral(0.5, 0.5)
    assert abs(rep.rhs - math.pi) < 1e-13
    assert rep.rel_residual < 1e-10
    assert beta_integral(0.7, 1.3 + 0.2j).rel_residual < 1e-9


def test_residue_small_circle():
    # f(z) = e^z / (z - 0.3): residue e^{0.3} at z = 0.3
    def f(z):
        return np.exp(z) / (z - 0.3)

    r = residue_at(f, 0.3)
    assert abs(r - math.exp(0.3)) < 1e-12


def _gl2_pairing_integrand(lam=(0.3, -0.1), eps=0.2, dx=0.4):
    g1 = lam[0] + 1j * eps
    g2 = lam[1] - 1j * eps

    def f(t):
        return np.exp(
            1j * t * dx
            + cgamma.log_gamma_many(1j * (g1 - t) + 0.5)
            + cgamma.log_gamma_many(1j * (g2 - t) + 0.5)
        )

    poles = [g1 - 0.5j, g2 - 0.5j, g1 - 1.5j]
    return f, poles


def test_contour_shift_admissible():
    f, poles = _gl2_pairing_integrand()
    rep = contour_shift_residual(f, poles, 0.25)
    assert rep.rel_residual < 1e-8, rep


def test_contour_shift_crossing_pole():
    # first pole sits at Im t = eps - 1/2 = -0.3; kappa = 0.35 crosses it
    f, poles = _gl2_pairing_integrand()
    rep = contour_shift_residual(f, poles, 0.35)
    assert rep.params_echo["crossed"], "expected a crossed pole"
    assert rep.rel_residual < 1e-4, rep
    assert abs(rep.lhs) > 1e-6  # the jump itself is not small


def test_contour_shift_entire():
    rep = contour_shift_residual(lambda z: np.exp(-z * z), [], 1.0)
    assert rep.abs_residual < 1e-10


def test_rel_tol_halving_sane():
    base = QuadSpec(rel_tol=1e-9)
    fine = QuadSpec(rel_tol=5e-10)
    r1 = barnes_first((0.6, 0.8), (0.5, 0.9), base)
    r2 = barnes_first((0.6, 0.8), (0.5, 0.9), fine)
    assert r2.rel_residual <= max(2.0 * r1.rel_residual, 1e-12)
