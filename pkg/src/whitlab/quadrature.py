"""Adaptive quadrature on horizontal complex contours.

Design
------
All integrals here are over lines Im(t_k) = -kappa_k (products of them for
tensor integrands).  The workflow is:

  1. probe the integrand outward from the origin at geometrically growing
     radii until it has decayed, giving a finite truncation interval plus a
     tail-size estimate;
  2. cover the interval with order-16 Gauss-Legendre panels;
  3. refine dyadically: a panel is accepted when the 16-point value agrees
     with the sum of its two half-panel values (that difference is the error
     estimate), otherwise it is split.

For 2-3 axes the same panels are used in a tensor product; the error estimate
compares the full rank-16 grid against a rank-8 grid on identical panels, and
the whole grid doubles until the target is met.  Tensor integrands are called
with broadcastable open-mesh axes, so factors depending on one or two axes are
evaluated on 1-d/2-d subgrids only; callables that cannot handle arrays are
detected once and looped over transparently.

Everything is deterministic: fixed node tables, no randomness, accumulation
order independent of tolerances met.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DecayProbeFailed, DimensionUnsupported, NonConvergence

__all__ = [
    "QuadSpec",
    "Contour",
    "QuadResult",
    "integrate_line",
    "integrate_tensor",
    "fourier_transform",
    "FrozenPlan",
    "freeze_plan",
]

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)
_GL8_X, _GL8_W = np.polynomial.legendre.leggauss(8)

_PROBE_OFFSET = 0.37  # second probe point, dodges symmetric zeros
_PROBE_ANCHOR_OFFSET = 0.61803  # off-anchor probe line, dodges zero slices
_PROBE_GROWTH = 1.5
_PROBE_RMAX = 1.0e7
_MIN_PANEL = 1e-7
_PANEL_WIDTH = 2.0


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and budgets for one integration request."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_panels: int = 2048
    initial_radius: float = 4.0
    decay_rate_hint: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_panels < 4:
            raise ValueError("max_panels must be at least 4")
        if not self.initial_radius > 0:
            raise ValueError("initial_radius must be positive")
        if not self.decay_rate_hint > 0:
            raise ValueError("decay_rate_hint must be positive")


@dataclass(frozen=True)
class Contour:
    """Product of horizontal lines Im(t_k) = -shifts[k]."""

    dim: int
    shifts: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if len(self.shifts) != self.dim:
            raise ValueError("need one shift per axis")

    @classmethod
    def real_line(cls, dim=1):
        return cls(dim, (0.0,) * dim)


@dataclass(frozen=True)
class QuadResult:
    """Value plus bookkeeping of one integration."""

    value: complex
    err_estimate: float
    n_evals: int
    truncation_radius: float


class _LineCaller:
    """Calls f on arrays of contour points, looping if f is scalar-only."""

    def __init__(self, f, shift):
        self.f = f
        self.shift = shift
        self.n_evals = 0
        self._vectorized = None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        z = t - 1j * self.shift
        self.n_evals += z.size
        if self._vectorized is None:
            try:
                out = np.asarray(self.f(z), dtype=np.complex128)
                if out.shape != z.shape:
                    raise ValueError
                self._vectorized = True
                return out
            except Exception:
                self._vectorized = False
        if self._vectorized:
            return np.asarray(self.f(z), dtype=np.complex128)
        return np.array([self.f(zi) for zi in z.ravel()], dtype=np.complex128).reshape(z.shape)


def _probe_direction(g, sign, tail_target, spec):
    """Walk outward until |g| has decayed; return (radius, tail_estimate)."""
    lam = spec.decay_rate_hint
    r = spec.initial_radius
    r_prev = None
    p_prev = None
    tiny = 1e-300
    for _ in range(64):
        vals = g(np.array([sign * r, sign * (r + _PROBE_OFFSET)]))
        p = float(np.max(np.abs(vals)))
        if p_prev is not None and p < p_prev and r_prev is not None:
            lam = max(math.log((p_prev + tiny) / (p + tiny)) / (r - r_prev), 0.05)
        tail = p / lam
        if tail <= tail_target:
            return r + _PROBE_OFFSET, tail
        r_prev, p_prev = r, p
        r *= _PROBE_GROWTH
        if r > _PROBE_RMAX:
            break
    raise DecayProbeFailed(
        f"no decay within radius {_PROBE_RMAX:g} (last probe magnitude {p:.3g})"
    )


def _probe_interval(g, spec):
    """Truncation interval [-R_left, R_right] and total tail estimate."""
    r0 = spec.initial_radius
    scale_pts = np.linspace(-r0, r0, 9)
    m0 = float(np.max(np.abs(g(scale_pts))))
    tail_target = 0.25 * max(spec.abs_tol, spec.rel_tol * m0)
    right, tail_r = _probe_direction(g, +1.0, tail_target, spec)
    left, tail_l = _probe_direction(g, -1.0, tail_target, spec)
    return left, right, tail_l + tail_r


def _gl_panel(g, a, b, rule):
    x, w = rule
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return complex(np.sum(g(mid + half * x) * (half * w)))


def integrate_line(f, contour=None, spec=None):
    """Integrate f along a single horizontal contour."""
    contour = contour or Contour.real_line(1)
    spec = spec or QuadSpec()
    if contour.dim != 1:
        raise DimensionUnsupported("integrate_line is one-dimensional")
    g = _LineCaller(f, contour.shifts[0])

    left, right, tail = _probe_interval(g, spec)
    width = left + right
    n0 = max(4, int(math.ceil(width / _PANEL_WIDTH)))
    edges = np.linspace(-left, right, n0 + 1)

    stack = [
        (edges[i], edges[i + 1], _gl_panel(g, edges[i], edges[i + 1], (_GL16_X, _GL16_W)))
        for i in range(n0)
    ]
    coarse = complex(sum(v for _, _, v in stack))
    tol = max(spec.abs_tol, spec.rel_tol * abs(coarse))

    value = 0.0 + 0.0j
    err = 0.0
    processed = 0
    while stack:
        a, b, i_coarse = stack.pop()
        processed += 1
        if processed > spec.max_panels:
            raise NonConvergence(f"panel budget {spec.max_panels} exhausted")
        m = 0.5 * (a + b)
        i_l = _gl_panel(g, a, m, (_GL16_X, _GL16_W))
        i_r = _gl_panel(g, m, b, (_GL16_X, _GL16_W))
        fine = i_l + i_r
        e = abs(i_coarse - fine)
        if e <= tol * (b - a) / width or (b - a) <= _MIN_PANEL:
            value += fine
            err += e
        else:
            stack.append((m, b, i_r))
            stack.append((a, m, i_l))
    return QuadResult(value, err + tail, g.n_evals, max(left, right))


# -- tensor product -------------------------------------------------------


class _TensorCaller:
    """Calls f on open-mesh axes; falls back to a scalar loop if needed."""

    def __init__(self, f, dim):
        self.f = f
        self.dim = dim
        self.n_evals = 0
        self._vectorized = None

    def _mesh(self, axes):
        d = self.dim
        return [ax.reshape((1,) * k + (-1,) + (1,) * (d - k - 1)) for k, ax in enumerate(axes)]

    def __call__(self, axes):
        """axes: d complex 1-d arrays; returns the full-grid array."""
        shape = tuple(len(a) for a in axes)
        self.n_evals += int(np.prod(shape))
        mesh = self._mesh(axes)
        if self._vectorized is None:
            try:
                out = np.asarray(self.f(*mesh), dtype=np.complex128)
                out = np.broadcast_to(out, shape)
                self._vectorized = True
                return out
            except Exception:
                self._vectorized = False
        if self._vectorized:
            return np.broadcast_to(np.asarray(self.f(*mesh), dtype=np.complex128), shape)
        grids = np.meshgrid(*axes, indexing="ij")
        flat = np.array(
            [self.f(*pt) for pt in zip(*(gr.ravel() for gr in grids))],
            dtype=np.complex128,
        )
        return flat.reshape(shape)


def _axis_nodes(edges, rule):
    x, w = rule
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    nodes = (mids[:, None] + halves[:, None] * x[None, :]).ravel()
    weights = (halves[:, None] * w[None, :]).ravel()
    return nodes, weights


def _tensor_sum(caller, axes_nodes, axes_weights, shifts):
    """Chunked weighted sum of f over the tensor grid."""
    d = len(axes_nodes)
    zs = [axes_nodes[k] - 1j * shifts[k] for k in range(d)]
    if d == 2:
        total = 0.0 + 0.0j
        n1 = len(zs[1])
        chunk = max(1, (1 << 21) // max(n1, 1))
        for i0 in range(0, len(zs[0]), chunk):
            grid = caller([zs[0][i0 : i0 + chunk], zs[1]])
            total += complex(np.einsum("i,j,ij->", axes_weights[0][i0 : i0 + chunk], axes_weights[1], grid))
        return total
    total = 0.0 + 0.0j
    n12 = len(zs[1]) * len(zs[2])
    chunk = max(1, (1 << 21) // max(n12, 1))
    for i0 in range(0, len(zs[0]), chunk):
        grid = caller([zs[0][i0 : i0 + chunk], zs[1], zs[2]])
        total += complex(
            np.einsum(
                "i,j,k,ijk->",
                axes_weights[0][i0 : i0 + chunk],
                axes_weights[1],
                axes_weights[2],
                grid,
            )
        )
    return total


def _line_probe(caller, contour, k, base, spec):
    """Probe decay along the line parallel to axis k through `base`."""
    d = contour.dim

    def g(t):
        # straight line parallel to axis k: all axes same length, so
        # vectorized integrands see aligned (not open-mesh) arrays
        t = np.asarray(t, dtype=float)
        axes = [
            t - 1j * contour.shifts[j]
            if j == k
            else np.full_like(t, base[j]) - 1j * contour.shifts[j]
            for j in range(d)
        ]
        caller.n_evals += len(t)
        try:
            out = np.asarray(caller.f(*axes), dtype=np.complex128)
            if out.shape != (len(t),):
                raise ValueError
            return out
        except Exception:
            return np.array([caller.f(*pt) for pt in zip(*axes)], dtype=np.complex128)

    return _probe_interval(g, spec)


# fractions of the current box radii at which corner probe lines are placed
_CORNER_FRACTIONS = (0.5, 1.0)


def _tensor_probe(caller, contour, spec, pad=0.0):
    """Per-axis truncation via probes along lines parallel to each axis.

    Pass one probes each axis twice: once through the anchor point and once
    through a generic offset of the remaining coordinates.  Integrands may
    vanish identically on the special axis lines (e.g. via a measure factor
    that is zero on a diagonal), so a single anchored probe can report an
    arbitrarily small radius; the offset line breaks such coincidences.

    Later passes re-probe through corners of the current box (at a couple
    of radial fractions, since walls often kill the exact corner).  Mass
    that survives only when several coordinates are large together --
    exponential walls with cross terms do this -- is invisible from the
    anchor lines, and would otherwise be truncated away without showing up
    in the error estimate.  Passes repeat while the box keeps growing.
    """
    d = contour.dim
    lefts = [0.0] * d
    rights = [0.0] * d
    tails_k = [0.0] * d
    for k in range(d):
        for offset in (0.0, _PROBE_ANCHOR_OFFSET):
            base = [offset * (1 + j) for j in range(d)]
            left, right, tail = _line_probe(caller, contour, k, base, spec)
            lefts[k] = max(lefts[k], left)
            rights[k] = max(rights[k], right)
            tails_k[k] = max(tails_k[k], tail)

    for _ in range(3):
        grew = False
        for k in range(d):
            others = [j for j in range(d) if j != k]
            for signs in itertools.product((-1.0, 1.0), repeat=d - 1):
                for frac in _CORNER_FRACTIONS:
                    base = [0.0] * d
                    for j, s in zip(others, signs):
                        base[j] = frac * (rights[j] if s > 0 else -lefts[j])
                    left, right, tail = _line_probe(caller, contour, k, base, spec)
                    if left > lefts[k] + 0.25:
                        lefts[k] = left
                        grew = True
                    if right > rights[k] + 0.25:
                        rights[k] = right
                        grew = True
                    tails_k[k] = max(tails_k[k], tail)
        if not grew:
            break

    intervals = [(lefts[k] + pad, rights[k] + pad) for k in range(d)]
    return intervals, sum(tails_k)


def _tensor_axes(intervals, splits):
    axes16, axes8, w16, w8 = [], [], [], []
    for (left, right), n in zip(intervals, splits):
        edges = np.linspace(-left, right, n + 1)
        x16, ww16 = _axis_nodes(edges, (_GL16_X, _GL16_W))
        x8, ww8 = _axis_nodes(edges, (_GL8_X, _GL8_W))
        axes16.append(x16)
        w16.append(ww16)
        axes8.append(x8)
        w8.append(ww8)
    return axes16, w16, axes8, w8


def integrate_tensor(f, contour, spec=None):
    """Integrate f over a product of 1-3 horizontal contours.

    f receives one broadcastable array per axis (open mesh) and must return
    the full-grid array; scalar-only callables are looped over automatically.
    """
    spec = spec or QuadSpec()
    d = contour.dim
    if d > 3:
        raise DimensionUnsupported("tensor quadrature supports at most 3 axes")
    if d == 1:
        return integrate_line(lambda z: f(z), contour, spec)

    caller = _TensorCaller(f, d)
    intervals, tails = _tensor_probe(caller, contour, spec)
    splits = [max(3, int(math.ceil((l + r) / _PANEL_WIDTH))) for l, r in intervals]

    prev = None
    while True:
        if any(n > spec.max_panels for n in splits):
            raise NonConvergence(f"per-axis panel budget {spec.max_panels} exhausted")
        axes16, w16, axes8, w8 = _tensor_axes(intervals, splits)
        val16 = _tensor_sum(caller, axes16, w16, contour.shifts)
        val8 = _tensor_sum(caller, axes8, w8, contour.shifts)
        err = abs(val16 - val8)
        target = max(spec.abs_tol, spec.rel_tol * abs(val16))
        if err <= target or (prev is not None and abs(val16 - prev) <= target):
            radius = max(max(l, r) for l, r in intervals)
            return QuadResult(val16, err + tails, caller.n_evals, radius)
        prev = val16
        splits = [2 * n for n in splits]


def fourier_transform(f, p, spec=None):
    """(2 pi)^{-d/2} int f(xi) e^{-i p.xi} d xi over the real plane."""
    spec = spec or QuadSpec()
    if np.ndim(p) == 0:
        pv = (complex(p),)
    else:
        pv = tuple(complex(c) for c in p)
    d = len(pv)
    norm = (2.0 * np.pi) ** (-0.5 * d)
    if d == 1:

        def g(t):
            return np.asarray(f(t), dtype=np.complex128) * np.exp(-1j * pv[0] * t)

        res = integrate_line(g, Contour.real_line(1), spec)
    else:

        def g(*axes):
            phase = sum(pv[k] * axes[k] for k in range(d))
            return np.asarray(f(*axes), dtype=np.complex128) * np.exp(-1j * phase)

        res = integrate_tensor(g, Contour.real_line(d), spec)
    return QuadResult(res.value * norm, res.err_estimate * norm, res.n_evals, res.truncation_radius)


# -- frozen plans ---------------------------------------------------------


@dataclass(frozen=True)
class FrozenPlan:
    """Reusable node/weight tables for batch evaluation of similar integrands.

    Built once from a representative integrand; re-evaluating a family of
    integrands on identical nodes makes their quadrature errors strongly
    correlated, which is exactly what finite-difference consumers want.
    """

    axes_nodes: tuple
    axes_weights: tuple
    shifts: tuple
    err_hint: float

    @property
    def dim(self):
        return len(self.axes_nodes)

    def evaluate(self, f):
        if self.dim == 1:
            g = _LineCaller(f, self.shifts[0])
            return complex(np.sum(g(self.axes_nodes[0]) * self.axes_weights[0]))
        caller = _TensorCaller(f, self.dim)
        return _tensor_sum(caller, self.axes_nodes, self.axes_weights, self.shifts)


def freeze_plan(f, contour, spec=None, pad=2.0, extra_splits=0):
    """Run the sizing phase on f and freeze the resulting grid (padded)."""
    spec = spec or QuadSpec()
    d = contour.dim
    if d > 3:
        raise DimensionUnsupported("tensor quadrature supports at most 3 axes")
    if d == 1:
        g = _LineCaller(f, contour.shifts[0])
        left, right, tails = _probe_interval(g, spec)
        left, right = left + pad, right + pad
        n = max(4, int(math.ceil((left + right) / _PANEL_WIDTH))) * (1 + extra_splits)
        edges = np.linspace(-left, right, n + 1)
        nodes, weights = _axis_nodes(edges, (_GL16_X, _GL16_W))
        return FrozenPlan((nodes,), (weights,), tuple(contour.shifts), tails)
    caller = _TensorCaller(f, d)
    intervals, tails = _tensor_probe(caller, contour, spec, pad=pad)
    splits = [
        max(3, int(math.ceil((l + r) / _PANEL_WIDTH))) * (1 + extra_splits)
        for l, r in intervals
    ]
    axes16, w16, _, _ = _tensor_axes(intervals, splits)
    return FrozenPlan(tuple(axes16), tuple(w16), tuple(contour.shifts), tails)
