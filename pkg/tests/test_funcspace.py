"""Shift/differential operator algebra: composition, commutators, strips."""

import math

import numpy as np
import pytest

from whitlab import cgamma
from whitlab.errors import ArityMismatch, StepInvalid, StripExhausted
from whitlab.funcspace import (
    AnalyticFn,
    DiffOp,
    ShiftOp,
    commutator,
    conjugated,
    diff_apply,
    gaussian_test_fn,
    ops_agree,
    shift_apply,
    shift_compose,
    transported,
)

RNG = np.random.default_rng(20240811)

GAMMA = (0.3, -0.2)


def gt_gl2_ops(gamma=GAMMA):
    """Shift-operator realization of gl2 on functions of one variable."""
    g1, g2 = gamma
    e11 = ShiftOp.single(lambda t: -1j * t, (0,))
    e22 = ShiftOp.single(lambda t: -1j * (g1 + g2 - t), (0,))
    e12 = ShiftOp.single(lambda t: 1j * (t - g1 - 0.5j) * (t - g2 - 0.5j), (1,))
    e21 = ShiftOp.single(-1j, (-1,))
    return e11, e22, e12, e21


def psi_r_gl2(gamma=GAMMA):
    g1, g2 = gamma

    def fn(t):
        return np.exp(
            0.5 * math.pi * t
            + cgamma.log_gamma_many(1j * (g1 - t) + 0.5)
            + cgamma.log_gamma_many(1j * (g2 - t) + 0.5)
        )

    return AnalyticFn.make(1, fn)


def test_arity_and_strip_checks():
    f = AnalyticFn.make(1, lambda t: np.exp(t), strip=[(-0.5, 0.5)])
    assert abs(f(0.2) - math.exp(0.2)) < 1e-14
    with pytest.raises(ArityMismatch):
        f(0.1, 0.2)
    with pytest.raises(StripExhausted):
        f(0.1 + 0.8j)
    assert f.eval is f.fn


def test_shift_on_exponential():
    op = ShiftOp.single(1.0, (1,))  # e^{-i d/dtau}
    f = AnalyticFn.make(1, lambda t: np.exp(0.5 * math.pi * t))
    g = shift_apply(op, f)
    for t in (0.0, 0.7, -1.3 + 0.2j):
        assert abs(g(t) - (-1j) * f(t)) < 1e-12 * abs(f(t))


def test_identity_and_zero():
    f = gaussian_test_fn([0.4 + 0.1j])
    ident = shift_apply(ShiftOp.identity(1), f)
    zero = shift_apply(ShiftOp.zero(1), f)
    for t in (0.0, 1.1, -0.6):
        assert abs(ident(t) - f(t)) < 1e-15
        assert abs(zero(t)) == 0.0


def test_gl2_raising_annihilates_right_vector():
    _, _, e12, _ = gt_gl2_ops()
    psi = psi_r_gl2()
    out = shift_apply(e12, psi)
    for t in (-1.4, -0.5, 0.1, 0.8, 1.7):
        v, w = complex(out(t)), complex(psi(t))
        assert abs(v + w) < 1e-12 * abs(w)


def test_compose_inverse_shifts():
    up = ShiftOp.single(1.0, (1,))
    down = ShiftOp.single(1.0, (-1,))
    agree, resid = ops_agree(shift_compose(up, down), ShiftOp.identity(1), RNG)
    assert agree, resid


def test_compose_multiplication_vs_shift():
    mult = ShiftOp.single(lambda t: t, (0,))
    up = ShiftOp.single(1.0, (1,))
    ab = shift_compose(mult, up)
    ba = shift_compose(up, mult)
    # direct-evaluation oracle on f(tau) = tau at tau = 0
    f = AnalyticFn.make(1, lambda t: t)
    assert abs(shift_apply(ab, f)(0.0)) < 1e-15
    assert abs(shift_apply(ba, f)(0.0) - (-1.0)) < 1e-15
    # hence [tau, S] = +i S
    agree, resid = ops_agree(commutator(mult, up), up.scaled(1j), RNG)
    assert agree, resid


def test_compose_with_zero():
    up = ShiftOp.single(lambda t: t * t, (1,))
    z = shift_compose(up, ShiftOp.zero(1))
    assert z.terms == ()
    z2 = shift_compose(ShiftOp.zero(1), up)
    assert z2.terms == ()


def test_gl2_commutators():
    e11, e22, e12, e21 = gt_gl2_ops()
    agree, resid = ops_agree(commutator(e12, e21), e11 - e22, RNG, n_points=5, tol=1e-11)
    assert agree, resid
    agree, resid = ops_agree(commutator(e11, e12), e12, RNG, n_points=5, tol=1e-11)
    assert agree, resid


def fourier_gl2_lowering(gamma=GAMMA):
    g1, g2 = gamma
    e12 = ShiftOp.single(lambda s: 1j * s + 0.5, (1,))
    e21 = ShiftOp.single(lambda s: 1j * (g2 - g1 - s) + 0.5, (-1,))
    return e12, e21


def test_opposite_commutation_relations():
    e12, e21 = fourier_gl2_lowering()
    p12, p21 = transported(e12), transported(e21)
    lhs = commutator(p12, p21)
    rhs = transported(commutator(e12, e21)).scaled(-1.0)
    agree, resid = ops_agree(lhs, rhs, RNG, tol=1e-11)
    assert agree, resid
    # explicit printed form of the transported lowering operator
    explicit = ShiftOp.single(lambda s: 1j * s - 0.5, (-1,))
    agree, resid = ops_agree(p12, explicit, RNG, tol=1e-12)
    assert agree, resid


def test_canonicalization_merges_terms():
    a = ShiftOp.from_terms(1, [(1.0, (1,)), (lambda t: t, (0,)), (1.0, (1,))])
    b = ShiftOp.from_terms(1, [(lambda t: t, (0,)), (2.0, (1,))])
    assert len(a.terms) == 2
    agree, resid = ops_agree(a, b, RNG)
    assert agree, resid


def test_strip_exhaustion_on_shift():
    f = AnalyticFn.make(1, lambda t: 1.0 / np.cosh(t), strip=[(-0.4, 0.4)])
    g = shift_apply(ShiftOp.single(1.0, (1,)), f)
    with pytest.raises(StripExhausted):
        g(0.0)
    # opposite shifts leave no common strip at all
    both = ShiftOp.from_terms(1, [(1.0, (1,)), (1.0, (-1,))])
    with pytest.raises(StripExhausted):
        shift_apply(both, f)


def test_diff_exponential():
    op = DiffOp.make(1, [(1.0, 0)])
    f = AnalyticFn.make(1, lambda t: np.exp(2.0 * t))
    g = diff_apply(op, f, 1e-3)
    assert abs(g(0.0) - 2.0) < 1e-9


def test_first_order_whittaker_annihilation():
    g1, g2 = GAMMA
    # lowering operator e^{-T}(d/dT - 1/2) on exp(T/2 - e^T)
    low = DiffOp.make(1, [(lambda t: np.exp(-t), 0)], scalar=lambda t: -0.5 * np.exp(-t))
    phi_r = AnalyticFn.make(1, lambda t: np.exp(0.5 * t - np.exp(t)))
    out = diff_apply(low, phi_r, 1e-3)
    for t in (-1.0, -0.3, 0.0, 0.4, 1.0):
        v, w = complex(out(t)), complex(phi_r(t))
        assert abs(v + w) < 1e-7 * max(1.0, abs(w))

    # dual raising operator e^{T}(i(g2-g1) - 1/2 - d/dT) on the left vector
    dual = DiffOp.make(
        1,
        [(lambda t: -np.exp(t), 0)],
        scalar=lambda t: (1j * (g2 - g1) - 0.5) * np.exp(t),
    )
    phi_l = AnalyticFn.make(1, lambda t: np.exp((1j * (g2 - g1) - 0.5) * t - np.exp(-t)))
    out_l = diff_apply(dual, phi_l, 1e-3)
    for t in (-1.0, 0.0, 0.8):
        v, w = complex(out_l(t)), complex(phi_l(t))
        assert abs(v + w) < 1e-7 * max(1.0, abs(w))


def test_diff_zero_and_step_validation():
    zero = DiffOp.make(1, [])
    f = AnalyticFn.make(1, lambda t: np.exp(t))
    assert abs(diff_apply(zero, f, 1e-3)(0.3)) == 0.0
    with pytest.raises(StepInvalid):
        diff_apply(zero, f, 1e-6)
    with pytest.raises(StepInvalid):
        diff_apply(zero, f, 0.02)


def test_diff_convergence_order():
    op = DiffOp.make(1, [(1.0, 0)])
    f = AnalyticFn.make(1, lambda t: np.exp(np.sin(t)))
    exact = math.cos(0.4) * math.exp(math.sin(0.4))
    errs = []
    for h in (4e-3, 2e-3):
        errs.append(abs(complex(diff_apply(op, f, h)(0.4)) - exact))
    order = math.log2(errs[0] / errs[1])
    assert order >= 3.5, (errs, order)


def _random_op(rng, arity, n_terms=2):
    coeff_pool = [
        lambda *a: sum(a) * 0 + 1.0,
        lambda *a: a[0],
        lambda *a: np.exp(0.5j * a[-1]),
        lambda *a: a[0] * a[-1] + 0.3,
    ]
    terms = []
    for _ in range(n_terms):
        c = coeff_pool[rng.integers(len(coeff_pool))]
        shift = tuple(int(s) for s in rng.integers(-1, 2, size=arity))
        terms.append((c, shift))
    return ShiftOp.from_terms(arity, terms)


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_composition_associates_with_action(arity):
    rng = np.random.default_rng(77 + arity)
    for _ in range(4):
        a = _random_op(rng, arity)
        b = _random_op(rng, arity)
        f = gaussian_test_fn(rng.uniform(-1, 1, arity) + 1j * rng.uniform(-1, 1, arity))
        composed = shift_apply(shift_compose(a, b), f)
        nested = shift_apply(a, shift_apply(b, f))
        for _ in range(5):
            pt = rng.uniform(-2, 2, arity)
            v, w = complex(composed(*pt)), complex(nested(*pt))
            assert abs(v - w) <= 1e-12 * max(1.0, abs(v), abs(w))


def test_transported_is_involutive_and_reverses_products():
    rng = np.random.default_rng(11)
    a = _random_op(rng, 2)
    b = _random_op(rng, 2)
    agree, resid = ops_agree(transported(transported(a)), a, rng, tol=1e-11)
    assert agree, resid
    lhs = transported(shift_compose(a, b))
    rhs = shift_compose(transported(b), transported(a))
    agree, resid = ops_agree(lhs, rhs, rng, tol=1e-10)
    assert agree, resid


def test_conjugated_shift_by_exponential_weight():
    alpha = 0.7
    op = ShiftOp.single(1.0, (1,))
    conj = conjugated(op, lambda t: np.exp(alpha * t))
    # w(tau)/w(tau - i) = e^{i alpha}: conjugation scales the shift term
    expected = op.scaled(np.exp(1j * alpha))
    agree, resid = ops_agree(conj, expected, RNG, tol=1e-12)
    assert agree, resid
