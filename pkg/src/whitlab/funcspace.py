"""Analytic function handles and imaginary-shift / differential operator algebra.

`AnalyticFn` wraps a vectorized callable of one to three complex variables
together with a per-axis strip of admissible imaginary parts.  `ShiftOp` is a
finite sum of terms c(tau) * S_n where S_n displaces the argument by -i*n
(n an integer vector); composition and commutators stay inside this class,
which is all the generator algebra here ever needs.  `DiffOp` covers the
first-order differential realizations; derivatives are evaluated by 5-point
central differences (one Richardson step, O(h^4)).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ArityMismatch, StepInvalid, StripExhausted

__all__ = [
    "AnalyticFn",
    "ShiftTerm",
    "ShiftOp",
    "DiffOp",
    "shift_apply",
    "shift_compose",
    "commutator",
    "diff_apply",
    "transported",
    "conjugated",
    "gaussian_test_fn",
    "ops_agree",
]

_UNBOUNDED = (-math.inf, math.inf)
_STRIP_SLACK = 1e-9


def _norm_strip(strip, arity):
    if strip is None:
        return (_UNBOUNDED,) * arity
    out = []
    for s in strip:
        if s is None:
            out.append(_UNBOUNDED)
        else:
            lo, hi = float(s[0]), float(s[1])
            out.append((lo, hi))
    if len(out) != arity:
        raise ArityMismatch(f"strip has {len(out)} axes, arity is {arity}")
    return tuple(out)


@dataclass(frozen=True)
class AnalyticFn:
    """Vectorized function of `arity` complex variables, analytic on `strip`."""

    arity: int
    fn: Callable
    strip: tuple

    @classmethod
    def make(cls, arity, fn, strip=None):
        return cls(arity, fn, _norm_strip(strip, arity))

    @classmethod
    def constant(cls, value, arity):
        value = complex(value)
        return cls(arity, lambda *a: sum(x * 0 for x in a) + value, (_UNBOUNDED,) * arity)

    @property
    def eval(self):
        return self.fn

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        arrs = [np.asarray(a, dtype=np.complex128) for a in args]
        for k, a in enumerate(arrs):
            lo, hi = self.strip[k]
            if lo == -math.inf and hi == math.inf:
                continue
            im = a.imag
            lo_v = float(im.min()) if im.size else 0.0
            hi_v = float(im.max()) if im.size else 0.0
            if lo_v < lo - _STRIP_SLACK or hi_v > hi + _STRIP_SLACK:
                raise StripExhausted(
                    f"axis {k}: Im in [{lo_v:.6g}, {hi_v:.6g}] outside [{lo:.6g}, {hi:.6g}]"
                )
        out = self.fn(*arrs)
        if np.ndim(out) == 0 and arrs and arrs[0].ndim == 0:
            return complex(out)
        return np.asarray(out, dtype=np.complex128)


def _as_coeff(coeff, arity):
    if isinstance(coeff, AnalyticFn):
        if coeff.arity != arity:
            raise ArityMismatch("coefficient arity mismatch")
        return coeff
    if callable(coeff):
        return AnalyticFn(arity, coeff, (_UNBOUNDED,) * arity)
    return AnalyticFn.constant(coeff, arity)


@dataclass(frozen=True)
class ShiftTerm:
    coeff: AnalyticFn
    shift: tuple

    def __post_init__(self):
        if self.coeff.arity != len(self.shift):
            raise ArityMismatch("coeff arity must equal shift length")


@dataclass(frozen=True)
class ShiftOp:
    """Finite sum of terms coeff(tau) * S_shift with S_n f(tau) = f(tau - i n)."""

    arity: int
    terms: tuple

    @classmethod
    def from_terms(cls, arity, terms):
        """terms: iterable of (coeff, shift); merges equal shifts."""
        grouped = {}
        order = []
        for coeff, shift in terms:
            shift = tuple(int(n) for n in shift)
            if len(shift) != arity:
                raise ArityMismatch("shift length must equal arity")
            c = _as_coeff(coeff, arity)
            if shift not in grouped:
                grouped[shift] = []
                order.append(shift)
            grouped[shift].append(c)
        canon = []
        for shift in sorted(order):
            cs = grouped[shift]
            if len(cs) == 1:
                merged = cs[0]
            else:
                strip = _intersect_strips([c.strip for c in cs])
                merged = AnalyticFn(
                    arity,
                    lambda *a, _cs=tuple(cs): sum(c(*a) for c in _cs),
                    strip,
                )
            canon.append(ShiftTerm(merged, shift))
        return cls(arity, tuple(canon))

    @classmethod
    def single(cls, coeff, shift):
        shift = tuple(int(n) for n in shift)
        return cls.from_terms(len(shift), [(coeff, shift)])

    @classmethod
    def identity(cls, arity):
        return cls.single(1.0, (0,) * arity)

    @classmethod
    def zero(cls, arity):
        return cls(arity, ())

    def scaled(self, factor):
        factor = complex(factor)
        return ShiftOp.from_terms(
            self.arity,
            [
                (
                    AnalyticFn(self.arity, lambda *a, _c=t.coeff: factor * _c(*a), t.coeff.strip),
                    t.shift,
                )
                for t in self.terms
            ],
        )

    def __add__(self, other):
        if not isinstance(other, ShiftOp):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityMismatch("operator arity mismatch")
        return ShiftOp.from_terms(
            self.arity,
            [(t.coeff, t.shift) for t in self.terms] + [(t.coeff, t.shift) for t in other.terms],
        )

    def __sub__(self, other):
        if not isinstance(other, ShiftOp):
            return NotImplemented
        return self + other.scaled(-1.0)


def _intersect_strips(strips):
    axes = len(strips[0])
    out = []
    for k in range(axes):
        lo = max(s[k][0] for s in strips)
        hi = min(s[k][1] for s in strips)
        out.append((lo, hi))
    return tuple(out)


def _shifted_strip(strip, shift):
    """Strip on which f(tau - i*shift) is admissible, given f's strip."""
    return tuple((lo + n, hi + n) for (lo, hi), n in zip(strip, shift))


def shift_apply(op: ShiftOp, f: AnalyticFn) -> AnalyticFn:
    """(op f)(tau) = sum_m c_m(tau) f(tau - i*m)."""
    if op.arity != f.arity:
        raise ArityMismatch("operator and function arity differ")
    if not op.terms:
        return AnalyticFn(f.arity, lambda *a: np.zeros(np.broadcast(*a).shape or (), dtype=np.complex128), (_UNBOUNDED,) * f.arity)
    strips = [f.strip]
    for t in op.terms:
        strips.append(_shifted_strip(f.strip, t.shift))
        strips.append(t.coeff.strip)
    strip = _intersect_strips(strips[1:])
    for lo, hi in strip:
        if lo > hi + _STRIP_SLACK:
            raise StripExhausted("shifts leave no common analyticity strip")

    terms = op.terms

    def g(*args):
        out = None
        for t in terms:
            shifted = [a - 1j * n if n else a for a, n in zip(args, t.shift)]
            piece = t.coeff(*args) * f(*shifted)
            out = piece if out is None else out + piece
        return out

    return AnalyticFn(f.arity, g, strip)


def shift_compose(a: ShiftOp, b: ShiftOp) -> ShiftOp:
    """Operator a after b: coefficients of b get argument-shifted by a's shifts."""
    if a.arity != b.arity:
        raise ArityMismatch("operator arity mismatch")
    terms = []
    for ta in a.terms:
        for tb in b.terms:
            def coeff(*args, _ca=ta.coeff, _cb=tb.coeff, _m=ta.shift):
                inner = [x - 1j * n if n else x for x, n in zip(args, _m)]
                return _ca(*args) * _cb(*inner)

            strip = _intersect_strips([ta.coeff.strip, _shifted_strip(tb.coeff.strip, ta.shift)])
            shift = tuple(na + nb for na, nb in zip(ta.shift, tb.shift))
            terms.append((AnalyticFn(a.arity, coeff, strip), shift))
    return ShiftOp.from_terms(a.arity, terms)


def commutator(a: ShiftOp, b: ShiftOp) -> ShiftOp:
    return shift_compose(a, b) - shift_compose(b, a)


def transported(op: ShiftOp) -> ShiftOp:
    """The anti-homomorphism c(tau) S_m  ->  c(tau + i m) S_{-m}.

    Applying it twice is the identity, and transported(a o b) =
    transported(b) o transported(a); commutators therefore flip sign.
    """
    terms = []
    for t in op.terms:
        def coeff(*args, _c=t.coeff, _m=t.shift):
            moved = [x + 1j * n if n else x for x, n in zip(args, _m)]
            return _c(*moved)

        strip = _shifted_strip(t.coeff.strip, tuple(-n for n in t.shift))
        terms.append((AnalyticFn(op.arity, coeff, strip), tuple(-n for n in t.shift)))
    return ShiftOp.from_terms(op.arity, terms)


def conjugated(op: ShiftOp, weight) -> ShiftOp:
    """w o op o w^{-1} for a multiplication weight w(tau)."""
    w = _as_coeff(weight, op.arity)
    terms = []
    for t in op.terms:
        def coeff(*args, _c=t.coeff, _m=t.shift):
            moved = [x - 1j * n if n else x for x, n in zip(args, _m)]
            return w(*args) * _c(*args) / w(*moved)

        terms.append((AnalyticFn(op.arity, coeff, t.coeff.strip), t.shift))
    return ShiftOp.from_terms(op.arity, terms)


# -- first-order differential operators -----------------------------------


@dataclass(frozen=True)
class DiffOp:
    """sum_k c_k(T) d/dT_k + c_0(T)."""

    arity: int
    first_order: tuple  # of (AnalyticFn, axis)
    scalar: AnalyticFn = None

    @classmethod
    def make(cls, arity, first_order, scalar=None):
        fo = []
        for coeff, axis in first_order:
            axis = int(axis)
            if not 0 <= axis < arity:
                raise ArityMismatch(f"axis {axis} outside arity {arity}")
            fo.append((_as_coeff(coeff, arity), axis))
        sc = _as_coeff(scalar, arity) if scalar is not None else None
        return cls(arity, tuple(fo), sc)


def diff_apply(op: DiffOp, f: AnalyticFn, h: float) -> AnalyticFn:
    """Evaluate op f with 5-point central differences, O(h^4)."""
    if not 1e-6 < h < 1e-2:
        raise StepInvalid(f"h={h:g} outside (1e-6, 1e-2)")
    if op.arity != f.arity:
        raise ArityMismatch("operator and function arity differ")

    def g(*args):
        out = None
        if op.scalar is not None:
            out = op.scalar(*args) * f(*args)
        for coeff, axis in op.first_order:
            def at(delta):
                moved = [a + delta if k == axis else a for k, a in enumerate(args)]
                return f(*moved)

            d = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h)
            piece = coeff(*args) * d
            out = piece if out is None else out + piece
        if out is None:
            out = np.zeros(np.broadcast(*args).shape or (), dtype=np.complex128)
        return out

    return AnalyticFn(f.arity, g, f.strip)


# -- sampled operator equality --------------------------------------------


def gaussian_test_fn(centers):
    """exp(-sum (tau_k - c_k)^2 / 2): entire, decaying, strip-unlimited."""
    cs = tuple(complex(c) for c in centers)
    arity = len(cs)

    def fn(*args):
        q = None
        for a, c in zip(args, cs):
            piece = (a - c) ** 2
            q = piece if q is None else q + piece
        return np.exp(-q / 2.0)

    return AnalyticFn(arity, fn, (_UNBOUNDED,) * arity)


def ops_agree(a: ShiftOp, b: ShiftOp, rng, n_points=20, n_fns=2, tol=1e-10, im_span=0.0):
    """Max normalized residual of (a-b) on Gaussian test functions.

    Points have real parts in [-2, 2] and imaginary parts up to im_span;
    centers have |Im c| <= 1.  Returns (agree, max_residual).
    """
    if a.arity != b.arity:
        raise ArityMismatch("operator arity mismatch")
    d = a.arity
    worst = 0.0
    for _ in range(n_fns):
        centers = rng.uniform(-1.5, 1.5, size=d) + 1j * rng.uniform(-1.0, 1.0, size=d)
        f = gaussian_test_fn(centers)
        af = shift_apply(a, f)
        bf = shift_apply(b, f)
        pts = rng.uniform(-2.0, 2.0, size=(n_points, d)) + 1j * rng.uniform(
            -im_span, im_span, size=(n_points, d)
        )
        for row in pts:
            va = complex(af(*row))
            vb = complex(bf(*row))
            scale = max(1.0, abs(va), abs(vb))
            worst = max(worst, abs(va - vb) / scale)
    return worst <= tol, worst
