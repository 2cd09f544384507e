"""Kernel maps between the shift-lattice and Fourier-side realizations.

The rank-1 maps reduce to pointwise substitution (one delta constraint); the
rank-2 right/left maps leave a single Barnes-type line integral once the two
delta constraints are solved.  Deltas are therefore never represented as
values: every kernel is stored pre-reduced as (constraint solve, prefactor,
residual integrand), and the operator-commutation checks evaluate both actions
on the reduced kernel factor at points of the (shifted) delta supports.

Conventions.  A kernel map named BR sends Fourier-side functions of s to
lattice-side functions of tau; BL does the same with conjugated spectral
parameters; BLdag is the adjoint of BL and acts in the opposite direction.
The scalar N (rank 1, eps = 0) is the unitary dressing of BR.  The dressed
lattice vectors carry one factor (2 pi)^{-1/2} per integration variable, which
makes the three statements "BR maps phi_R to psi_R", "BLdag o BR fixes phi_R"
and "BLdag = weight x BR" hold simultaneously and exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import cgamma
from .errors import (
    DegenerateSample,
    ParameterConstraintViolated,
    PreconditionViolated,
    RankUnsupported,
)
from .funcspace import AnalyticFn, transported
from .identities import IdentityReport, _report, glo11
from .quadrature import Contour, QuadSpec, integrate_line, integrate_tensor
from .realizations import gg_modified, gt_realization, whittaker_vectors
from .whittaker import psi_modified

__all__ = [
    "ReducedKernel",
    "gl2_reduced_kernel",
    "gl2_apply_kernel",
    "gl2_sigma",
    "gl2_whittaker_images",
    "psi_tilde_L",
    "psi_tilde_R",
    "gl3_reduced_kernel",
    "gl3_BR_apply",
    "gl3_BL_apply",
    "fixedpoint_a_params",
    "gl3_BLdag_BR_fixedpoint",
    "draw_scalar_sample",
    "check_scalar_identity",
    "KernelSample",
    "draw_kernel_sample",
    "check_kernel_intertwining",
    "check_matrix_element_chain",
]

_LG = cgamma.log_gamma_many
_TWO_PI = 2.0 * math.pi
_SQRT_2PI = math.sqrt(_TWO_PI)
_HALF_PI = 0.5 * math.pi
_POLE_MARGIN = 0.05
_SPLIT_MARGIN = 0.1
_WINDOW = 1.2


def _pcv(ok, msg):
    if not ok:
        raise ParameterConstraintViolated(msg)


def _gammas(params, dual=False):
    g = params.gamma
    if dual:
        g = tuple(complex(np.conj(v)) for v in g)
    return g


@dataclass(frozen=True)
class ReducedKernel:
    """A delta-eliminated integral kernel.

    constraint_map sends (tau, free s-variables) to the full s-point fixed by
    the delta supports; prefactor is the s-independent film over tau;
    integrand_factory(f, tau) builds the residual 1-d integrand in the free
    variable (None when free_count == 0, in which case applying the kernel is
    prefactor(tau) * f(constraint_map(tau))).
    """

    name: str
    constraint_map: object
    prefactor: AnalyticFn
    integrand_factory: object
    free_count: int


# --- rank 1 ---------------------------------------------------------------

def gl2_reduced_kernel(which, params):
    if params.ell != 1:
        raise RankUnsupported("rank-1 kernels need ell=1 parameters")
    g1, g2 = _gammas(params)
    gb1, gb2 = _gammas(params, dual=True)

    if which == "BR":
        def pref(t):
            return np.exp(_HALF_PI * t + _LG(1j * (g2 - t) + 0.5))

        return ReducedKernel("BR", lambda t: t - g1, AnalyticFn.make(1, pref), None, 0)

    if which == "BL":
        def pref(t):
            return np.exp(-_HALF_PI * t - _LG(1j * (t - gb2) + 0.5))

        return ReducedKernel("BL", lambda t: t - gb1, AnalyticFn.make(1, pref), None, 0)

    if which == "BLdag":
        # Adjoint direction: the argument is the Fourier-side variable s and
        # the substitution recovers tau = gamma_1 + s.
        def pref(s):
            return np.exp(-_HALF_PI * (g1 + s) - _LG(1j * (g2 - g1 - s) + 0.5))

        return ReducedKernel("BLdag", lambda s: g1 + s, AnalyticFn.make(1, pref), None, 0)

    if which == "N":
        _pcv(params.eps == 0.0, "N is defined at eps = 0")
        lam1, lam2 = params.lam

        def pref(t):
            z = _LG(1j * (lam2 - t) + 0.5)
            return np.exp(1j * np.imag(z))

        return ReducedKernel("N", lambda t: t - lam1, AnalyticFn.make(1, pref), None, 0)

    raise ValueError(f"unknown rank-1 kernel {which!r}")


def gl2_apply_kernel(which, f, params, tau):
    """Apply a rank-1 kernel map to f at the point tau.

    A single delta makes this pure substitution: prefactor(tau) times f at the
    constraint-solved argument.  f's strip of analyticity is enforced by the
    AnalyticFn call itself (StripExhausted when the solved point leaves it).
    """
    ker = gl2_reduced_kernel(which, params)
    tau = complex(tau)
    return complex(ker.prefactor(tau) * f(ker.constraint_map(tau)))


def gl2_sigma(params, tau, form="closed"):
    """The i-periodic rank-1 dressing; both branches agree at real tau."""
    if params.ell != 1:
        raise RankUnsupported("sigma is a rank-1 object")
    _pcv(params.eps == 0.0, "sigma is defined at eps = 0")
    lam2 = params.lam[1]
    tau = complex(tau)
    if form == "closed":
        return complex(
            math.exp(-_HALF_PI * lam2)
            / _SQRT_2PI
            * np.sqrt(1.0 + np.exp(_TWO_PI * (lam2 - tau)))
        )
    if form == "direct":
        if abs(tau.imag) > 1e-12:
            raise PreconditionViolated("direct form needs real tau")
        mod = math.exp(np.real(_LG(1j * (lam2 - tau) + 0.5)))
        return complex(math.exp(-_HALF_PI * tau.real) / mod)
    raise ValueError(f"unknown sigma form {form!r}")


def gl2_whittaker_images(params):
    """Closed forms of the images of the rank-1 Fourier-side vectors.

    These are the lattice vectors dressed by (2 pi)^{-1/2}, the normalization
    under which BR phi_R, BL phi_L and the BLdag o BR round trip are all exact
    (the undressed printed pair differs by that constant on the single
    applications while the round trip is insensitive to it).
    """
    if params.ell != 1:
        raise RankUnsupported("rank-1 images need ell=1 parameters")
    g1, g2 = _gammas(params)

    def left(t):
        return np.exp(-_HALF_PI * t) / _SQRT_2PI

    def right(t):
        return np.exp(
            _HALF_PI * t + _LG(1j * (g1 - t) + 0.5) + _LG(1j * (g2 - t) + 0.5)
        ) / _SQRT_2PI

    return AnalyticFn.make(1, left), AnalyticFn.make(1, right)


# --- rank 2 closed-form targets ------------------------------------------

def psi_tilde_L(params, tau):
    """Dressed left lattice vector at a (possibly complex) tau-point."""
    if params.ell != 2:
        raise RankUnsupported("psi_tilde is a rank-2 object")
    t11, t21, t22 = (complex(v) for v in tau)
    lg = -_HALF_PI * t11 - _LG(1j * (t21 - t22))
    return complex(_TWO_PI ** -1.5 * np.exp(lg))


def psi_tilde_R(params, tau):
    """Dressed right lattice vector at a (possibly complex) tau-point."""
    if params.ell != 2:
        raise RankUnsupported("psi_tilde is a rank-2 object")
    g = _gammas(params)
    t11, t21, t22 = (complex(v) for v in tau)
    lg = _HALF_PI * t11 - _LG(1j * (t21 - t22))
    for t2j in (t21, t22):
        lg = lg + _LG(1j * (t2j - t11) + 0.5)
        for gi in g:
            lg = lg + _LG(1j * (gi - t2j) + 0.5)
    return complex(_TWO_PI ** -1.5 * np.exp(lg))


# --- rank 2 kernel maps ---------------------------------------------------

def gl3_reduced_kernel(which, params):
    """Rank-2 BR/BL with both deltas solved; one free variable remains.

    BR integrates over s21 with s11, s22 fixed by the supports; BL integrates
    over s11 with s21, s22 fixed.  Prefactors collect every factor independent
    of the free variable.
    """
    if params.ell != 2:
        raise RankUnsupported("rank-2 kernels need ell=2 parameters")
    g1, g2, g3 = _gammas(params)
    gb1, gb2, gb3 = _gammas(params, dual=True)
    kap = params.kappa

    if which == "BR":
        def cmap(tau, s21):
            t11, t21, t22 = tau
            s11 = t11 - 1j * kap - g1 - s21
            s22 = t21 + t22 - g1 - g2 - s11
            return (s11, s21, s22)

        def pref(t11, t21, t22):
            lg = _HALF_PI * (t11 - 1j * kap) - _LG(1j * (t21 - t22))
            for t2j in (t21, t22):
                lg = lg + _LG(1j * (t2j - t11) - kap + 0.5)
                lg = lg + _LG(1j * (g3 - t2j) + 0.5)
            return np.exp(lg) / _TWO_PI

        def factory(f, tau):
            t11, t21, t22 = (complex(v) for v in tau)

            def integrand(s21):
                s11 = t11 - 1j * kap - g1 - s21
                s22 = t21 + t22 - g1 - g2 - s11
                lg = _LG(1j * (g2 - g1 - s11) + 0.5) - _LG(-1j * s21 + 0.5)
                for t2j in (t21, t22):
                    lg = lg + _LG(1j * (t11 - t2j - s21) + kap)
                return np.exp(lg) * f(s11, s21, s22)

            return integrand

        return ReducedKernel("BR", cmap, AnalyticFn.make(3, pref), factory, 1)

    if which == "BL":
        def cmap(tau, s11):
            t11, t21, t22 = tau
            s21 = t11 - 1j * kap - gb1 - s11
            s22 = t21 + t22 - gb1 - gb2 - s11
            return (s11, s21, s22)

        def pref(t11, t21, t22):
            lg = -_HALF_PI * (t11 - 1j * kap) - _LG(1j * (t21 - t22))
            for t2j in (t21, t22):
                lg = lg - _LG(1j * (t11 - t2j) + kap + 0.5)
                lg = lg - _LG(1j * (t2j - g3) + 0.5)
            return np.exp(lg) / _TWO_PI

        def factory(f, tau):
            t11, t21, t22 = (complex(v) for v in tau)

            def integrand(s11):
                s21 = t11 - 1j * kap - gb1 - s11
                s22 = t21 + t22 - gb1 - gb2 - s11
                lg = _LG(1j * s21 + 0.5) - _LG(1j * (gb1 - gb2 + s11) + 0.5)
                for t2j in (t21, t22):
                    lg = lg + _LG(1j * (t11 - t2j - s21) + kap)
                return np.exp(lg) * f(s11, s21, s22)

            return integrand

        return ReducedKernel("BL", cmap, AnalyticFn.make(3, pref), factory, 1)

    raise ValueError(f"unknown rank-2 kernel {which!r}")


def gl3_BR_apply(f, params, tau, spec=None):
    """Right kernel map applied to f, evaluated at the lattice point tau.

    Requires 1/2 - kappa - eps > 0 (pole-free contour for the residual Barnes
    integral) and kappa > 0 (the shift that moves the remaining pole family
    off the integration line).
    """
    if params.ell != 2:
        raise RankUnsupported("gl3_BR_apply needs ell=2 parameters")
    _pcv(0.5 - params.kappa - params.eps > 0.0, "need 1/2 - kappa - eps > 0")
    _pcv(params.kappa > 0.0, "need kappa > 0")
    spec = spec or QuadSpec()
    ker = gl3_reduced_kernel("BR", params)
    tau = tuple(complex(v) for v in tau)
    res = integrate_line(ker.integrand_factory(f, tau), Contour.real_line(1), spec)
    return complex(ker.prefactor(*tau) * res.value)


def gl3_BL_apply(f, params, tau, spec=None):
    """Left kernel map (conjugated spectral parameters) applied to f at tau.

    Requires 0 < eps < 1/2 and real third parameter; the residual Barnes
    parameters i(lam_1 - tau_{2j}) + eps must stay right of the poles.
    """
    if params.ell != 2:
        raise RankUnsupported("gl3_BL_apply needs ell=2 parameters")
    _pcv(0.0 < params.eps < 0.5, "need 0 < eps < 1/2")
    _pcv(abs(params.gamma[2].imag) < 1e-12, "need real third spectral parameter")
    tau = tuple(complex(v) for v in tau)
    lam1 = params.lam[0]
    for t2j in tau[1:]:
        b = 1j * (lam1 - t2j) + params.eps
        _pcv(b.real > 0.0, "Barnes parameter left of the pole line")
    spec = spec or QuadSpec()
    ker = gl3_reduced_kernel("BL", params)
    res = integrate_line(ker.integrand_factory(f, tau), Contour.real_line(1), spec)
    return complex(ker.prefactor(*tau) * res.value)


# --- rank 2 fixed point ---------------------------------------------------

def fixedpoint_a_params(params, s):
    """The three-parameter vector of the inner even integral of the round trip."""
    g1, g2, _ = _gammas(params)
    s11, s21, s22 = (complex(v) for v in s)
    tp0 = 0.5 * (g1 + g2 + s11 + s22)
    return (
        1j * (g1 - tp0) + 0.5,
        1j * (g2 - tp0) + 0.5,
        1j * (tp0 - g1 - s11),
    )


def gl3_BLdag_BR_fixedpoint(params, s, spec=None):
    """Round trip BLdag o BR on the right Fourier-side vector, against itself.

    After the delta solves, the center-of-mass variable is fixed and the
    relative variable leaves an even three-parameter integral; its closed form
    collapses the left side to exactly phi_R(s).  The report's quad is the
    inner full-line result (the even integral is half of it).
    """
    if params.ell != 2:
        raise RankUnsupported("fixed point needs ell=2 parameters")
    _pcv(0.0 < params.eps < 0.5, "need 0 < eps < 1/2")
    s = tuple(complex(v) for v in s)
    s11, s21, s22 = s
    a = fixedpoint_a_params(params, s)
    inner = glo11(a, spec)
    gfac = np.exp(_LG(0.5 - 1j * s21) - _LG(a[1] + a[2]))
    lhs = _TWO_PI ** -1.5 * gfac * inner.lhs
    rhs = _TWO_PI ** -1.5 * np.exp(
        _LG(0.5 - 1j * s21) + _LG(0.5 - 1j * s11) + _LG(1.0 - 1j * (s11 + s22))
    )
    return _report(
        "gl3_fixedpoint",
        lhs,
        rhs,
        inner.quad,
        lam=params.lam,
        eps=params.eps,
        kappa=params.kappa,
        s=s,
        a=a,
    )


# --- scalar shift identities ----------------------------------------------

_E23_KEYS = ("a1", "a2", "s", "t", "g1", "g2")
_E21_KEYS = ("g1", "g2", "s11", "s21", "s22", "t21", "t22")


def draw_scalar_sample(which, rng, scale=1.4):
    """Random complex assignment with the degeneracy margins enforced."""
    if which not in ("E21", "E23"):
        raise ValueError(f"unknown scalar identity {which!r}")
    keys = _E23_KEYS if which == "E23" else _E21_KEYS
    while True:
        smp = {
            k: complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
            for k in keys
        }
        if which != "E23":
            return smp
        if abs(smp["a1"] - smp["a2"]) <= _SPLIT_MARGIN:
            continue
        d = smp["t"] - smp["s"]
        if min(abs(d - smp["a1"]), abs(d - smp["a2"])) <= _SPLIT_MARGIN:
            continue
        return smp


def check_scalar_identity(which, sample):
    """The two scalar identities behind the first-order kernel commutations.

    E21 holds on the shifted support t11 = g1 + s11 + s21 - i (the constraint
    is substituted here, so only the remaining variables are free).  E23 is
    the partial-fraction form in the variables (a1, a2, s, t); it degenerates
    when a1 = a2 or when t - s hits either a_i.
    """
    if which == "E21":
        g1, g2, s11, s21, s22, t21, t22 = (complex(sample[k]) for k in _E21_KEYS)
        t11 = g1 + s11 + s21 - 1j
        a = 1j * s21 + 0.5
        lhs = -(1j * (g2 - g1 - s11 - s21 + s22) - 0.5) * a
        lhs = lhs + (1j * (t11 - t21 - s21) - 1.0) * (1j * (t11 - t22 - s21) - 1.0)
        rhs = (1j * (t11 - t21) - 0.5) * (1j * (t11 - t22) - 0.5)
        rhs = rhs - 1j * (g1 + g2 + s11 + s22 - t21 - t22) * a
        return _report("scalar_E21", lhs, rhs, None, **{k: sample[k] for k in _E21_KEYS})

    if which == "E23":
        a1, a2, s, t, g1, g2 = (complex(sample[k]) for k in _E23_KEYS)
        if abs(a1 - a2) <= 1e-8:
            raise DegenerateSample("a1 = a2 within tolerance")
        d = t - s
        if min(abs(d - a1), abs(d - a2)) <= 1e-8:
            raise DegenerateSample("t - s hits a pole of the partial fractions")
        lhs = (
            (a1 - t) / (d - a1) * (a1 - 1j * g1) * (a1 - 1j * g2)
            - (a2 - t) / (d - a2) * (a2 - 1j * g1) * (a2 - 1j * g2)
        ) / (a1 - a2)
        rhs = -(a1 + a2 - 1j * (g1 + g2) - s)
        rhs = rhs - s * (1j * g1 - d) * (1j * g2 - d) / ((d - a1) * (d - a2))
        return _report("scalar_E23", lhs, rhs, None, **{k: sample[k] for k in _E23_KEYS})

    raise ValueError(f"unknown scalar identity {which!r}")


# --- kernel intertwining checks -------------------------------------------

@dataclass(frozen=True)
class KernelSample:
    """Free real coordinates of a point on the (class-shifted) delta support.

    Rank-2 sides use (tau21, tau22, s11, s21); rank-1 sides use s only.  The
    constrained variables (tau11 and s22, or tau) are solved per shift class
    inside the check.
    """

    params: object
    tau21: float = 0.0
    tau22: float = 0.0
    s11: float = 0.0
    s21: float = 0.0
    s: float = 0.0


def _nonpos_int_distance(z):
    z = complex(z)
    m = min(0.0, round(z.real))
    return abs(z - m)


def _cr_factor_parts(params):
    g1, g2, g3 = _gammas(params)

    def parts(t11, t21, t22, s11, s21, s22):
        logpref = 0.5 * math.log(_TWO_PI) + _HALF_PI * (t11 - t21 - t22)
        num = [1j * (g2 - g1 - s11) + 0.5]
        den = [-1j * s21 + 0.5]
        for t2j in (t21, t22):
            num.append(1j * (t11 - t2j - s21))
            num.append(1j * (t2j - t11) + 0.5)
            num.append(1j * (g3 - t2j) + 0.5)
        return logpref, num, den

    return parts


def _cl_factor_parts(params):
    g1, g2, g3 = _gammas(params)

    def parts(t11, t21, t22, s11, s21, s22):
        # The exponential film over tau21 + tau22 is essential: without it the
        # second-row shift terms acquire a spurious phase +-i and the (2,3),
        # (3,2) commutations fail by exactly that factor.
        logpref = 0.5 * math.log(_TWO_PI) - _HALF_PI * t11 + _HALF_PI * (t21 + t22)
        num = [-1j * s21 + 0.5]
        den = [
            1j * (t21 - t22),
            1j * (t22 - t21),
            -1j * (g1 - g2 + s11) + 0.5,
        ]
        for t2j in (t21, t22):
            num.append(-1j * (t11 - t2j - s21))
            den.append(1j * (t2j - t11) + 0.5)
            den.append(1j * (g3 - t2j) + 0.5)
        return logpref, num, den

    return parts


def _br1_factor_parts(params):
    g1, g2 = _gammas(params)

    def parts(t, s):
        return _HALF_PI * t, [1j * (g2 - g1 - s) + 0.5], []

    return parts


def _bl1_factor_parts(params):
    gb1, gb2 = _gammas(params, dual=True)

    def parts(t, s):
        return -_HALF_PI * t, [], [1j * (gb1 - gb2 + s) + 0.5]

    return parts


def _eval_parts(parts, point):
    logpref, num, den = parts(*point)
    lg = logpref
    for z in num:
        lg = lg + cgamma.log_gamma(z)
    for z in den:
        lg = lg - cgamma.log_gamma(z)
    return complex(np.exp(lg))


def _parts_ok(parts, point):
    _, num, den = parts(*point)
    return all(_nonpos_int_distance(z) > _POLE_MARGIN for z in num + den)


def _solve_gl3(sample, g, d1, d2):
    t21, t22 = sample.tau21, sample.tau22
    s11, s21 = sample.s11, sample.s21
    t11 = g[0] + s11 + s21 + 1j * d1
    s22 = t21 + t22 - g[0] - g[1] - s11 - 1j * d2
    return (t11, complex(t21), complex(t22), complex(s11), complex(s21), s22)

def _solve_gl2(sample, g, d1, d2):
    s = sample.s
    return (g[0] + s + 1j * d1, complex(s))


# Side tables: which realization feeds each variable block of the kernel
# factor, and whether its generators act transported (formal transpose under
# the pairing integral) or plainly.  tau_block/s_block index into the solved
# point tuple.
def _sides():
    def r3_tau(p):
        return gt_realization(p).generators

    def r3_s(p):
        return {k: transported(v) for k, v in gg_modified(p).generators.items()}

    def l3_tau(p):
        return {k: transported(v) for k, v in gt_realization(p).generators.items()}

    def l3_s(p):
        return gg_modified(p).generators

    def r2_tau(p):
        return gt_realization(p).generators

    def r2_s(p):
        return {k: transported(v) for k, v in gg_modified(p).generators.items()}

    def l2_tau(p):
        return gt_realization(p, dual=True).generators

    def l2_s(p):
        return {k: transported(v) for k, v in gg_modified(p, dual=True).generators.items()}

    return {
        "R_gl3": dict(
            ell=2, factor=_cr_factor_parts, solve=_solve_gl3,
            lhs_ops=r3_tau, lhs_block=(0, 1, 2), rhs_ops=r3_s, rhs_block=(3, 4, 5),
            dual_constraint=False,
        ),
        "Ldag_gl3": dict(
            ell=2, factor=_cl_factor_parts, solve=_solve_gl3,
            lhs_ops=l3_s, lhs_block=(3, 4, 5), rhs_ops=l3_tau, rhs_block=(0, 1, 2),
            dual_constraint=False,
        ),
        "R_gl2": dict(
            ell=1, factor=_br1_factor_parts, solve=_solve_gl2,
            lhs_ops=r2_tau, lhs_block=(0,), rhs_ops=r2_s, rhs_block=(1,),
            dual_constraint=False,
        ),
        "L_gl2": dict(
            ell=1, factor=_bl1_factor_parts, solve=_solve_gl2,
            lhs_ops=l2_tau, lhs_block=(0,), rhs_ops=l2_s, rhs_block=(1,),
            dual_constraint=True,
        ),
    }


_SIDE_TABLE = _sides()


def _term_class(shift, block, ell):
    # tau-block terms shift the supports by +i per unit; s-block terms by -i.
    if ell == 1:
        n = shift[0]
        return (n, 0) if block[0] == 0 else (-n, 0)
    if block[0] == 0:
        return (shift[0], shift[1] + shift[2])
    return (-shift[0] - shift[1], -shift[0] - shift[2])


def _side_terms(op, block, ell):
    out = {}
    for t in op.terms:
        out.setdefault(_term_class(t.shift, block, ell), []).append(t)
    return out


def _accumulate(terms, block, parts, point):
    total = 0.0 + 0.0j
    for t in terms:
        args = [point[i] for i in block]
        moved = list(point)
        for k, n in zip(block, t.shift):
            if n:
                moved[k] = point[k] - 1j * n
        total += complex(t.coeff(*args)) * _eval_parts(parts, moved)
    return total


def draw_kernel_sample(side, params, rng, window=_WINDOW, max_tries=200):
    """Draw free support coordinates keeping clear of Gamma poles and of the
    tau21 = tau22 coefficient line."""
    cfg = _SIDE_TABLE[side]
    g = _gammas(params, dual=cfg["dual_constraint"])
    for _ in range(max_tries):
        if cfg["ell"] == 1:
            smp = KernelSample(params, s=rng.uniform(-window, window))
        else:
            t21 = rng.uniform(-window, window)
            t22 = rng.uniform(-window, window)
            if abs(t21 - t22) <= _SPLIT_MARGIN:
                continue
            smp = KernelSample(
                params,
                tau21=t21,
                tau22=t22,
                s11=rng.uniform(-window, window),
                s21=rng.uniform(-window, window),
            )
        parts = cfg["factor"](params)
        ok = all(
            _parts_ok(parts, cfg["solve"](smp, g, d1, d2))
            for d1 in (-1, 0, 1)
            for d2 in (-1, 0, 1)
        )
        if ok:
            return smp
    raise DegenerateSample("could not find a pole-clear sample")


def check_kernel_intertwining(side, pair, sample):
    """First-order generators commute through the kernel, shift class by class.

    Both operator actions on the reduced kernel factor are evaluated at a
    point of each shifted delta support (terms whose shifts move the supports
    identically must balance independently, since distinct supports are
    linearly independent).  The residual is the worst class imbalance relative
    to the kernel magnitude at the unshifted support.
    """
    cfg = _SIDE_TABLE[side]
    params = sample.params
    if cfg["ell"] != params.ell:
        raise RankUnsupported(f"side {side} needs ell={cfg['ell']} parameters")
    if cfg["ell"] == 2 and abs(sample.tau21 - sample.tau22) <= _SPLIT_MARGIN:
        raise DegenerateSample("tau21 too close to tau22")

    g = _gammas(params, dual=cfg["dual_constraint"])
    parts = cfg["factor"](params)
    lhs_groups = _side_terms(cfg["lhs_ops"](params)[pair], cfg["lhs_block"], cfg["ell"])
    rhs_groups = _side_terms(cfg["rhs_ops"](params)[pair], cfg["rhs_block"], cfg["ell"])

    base = _eval_parts(parts, cfg["solve"](sample, g, 0, 0))
    scale = max(abs(base), 1e-300)

    lhs_sum = 0.0 + 0.0j
    rhs_sum = 0.0 + 0.0j
    worst = 0.0
    for cls in sorted(set(lhs_groups) | set(rhs_groups)):
        point = cfg["solve"](sample, g, *cls)
        lc = _accumulate(lhs_groups.get(cls, ()), cfg["lhs_block"], parts, point)
        rc = _accumulate(rhs_groups.get(cls, ()), cfg["rhs_block"], parts, point)
        lhs_sum += lc
        rhs_sum += rc
        worst = max(worst, abs(lc - rc))

    return IdentityReport(
        name=f"kernel_{side}_{pair[0]}{pair[1]}",
        lhs=lhs_sum,
        rhs=rhs_sum,
        abs_residual=worst,
        rel_residual=worst / scale,
        quad=None,
        params_echo={
            "side": side,
            "pair": list(pair),
            "tau21": sample.tau21,
            "tau22": sample.tau22,
            "s11": sample.s11,
            "s21": sample.s21,
            "s": sample.s,
        },
    )


# --- full matrix-element chain --------------------------------------------

def check_matrix_element_chain(params, x, spec=None):
    """The composed lattice-side matrix element against the Fourier-side one.

    The left side is the contour-shifted lattice integral assembled from the
    kernel images (the exponential films of the left and right images cancel,
    leaving the shifted Gamma kernel); the right side is the Fourier-side
    evaluator.  Agreement ties together the two single-kernel maps and the
    round trip in one number.
    """
    if params.ell != 2:
        raise RankUnsupported("chain check needs ell=2 parameters")
    _pcv(0.0 < params.eps < 0.5, "need 0 < eps < 1/2")
    _pcv(0.5 - params.kappa - params.eps > 0.0, "need 1/2 - kappa - eps > 0")
    spec = spec or QuadSpec()
    x1, x2, x3 = (float(v) for v in x)
    g = _gammas(params)
    kap = params.kappa

    def f(t11, t21, t22):
        lg = 1j * (t11 * (x1 - x2) + (t21 + t22) * (x2 - x3))
        for t2j in (t21, t22):
            lg = lg + _LG(1j * (t2j - t11) - kap + 0.5)
            for gi in g:
                lg = lg + _LG(1j * (gi - t2j) + 0.5)
        return cgamma.inv_gamma_pair(t21 - t22) * np.exp(lg)

    res = integrate_tensor(f, Contour.real_line(3), spec)
    pref = np.exp(1j * sum(g) * x3 + kap * (x1 - x2) - x1 + x3)
    lhs = 0.5 * pref * res.value / _TWO_PI ** 3
    rhs = psi_modified(params, (x1, x2, x3), spec).value
    return _report(
        "matrix_element_chain",
        lhs,
        rhs,
        res,
        lam=params.lam,
        eps=params.eps,
        kappa=params.kappa,
        x=(x1, x2, x3),
    )
