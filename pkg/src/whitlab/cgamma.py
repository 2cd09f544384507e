"""Complex Gamma function: principal-branch log, exp, and decay envelope.

The evaluation strategy is shift-and-asymptotic: arguments are pushed to
Re w >= 10 by the recursion and finished with a fixed asymptotic series.
Everything is double precision; there is no arbitrary-precision fallback.
Relative accuracy of exp(log_gamma(z)) is ~1e-14 for |z| <= 50 and
|Im z| <= 200, comfortably inside the 1e-13 budget used by the checks here.

Two interchangeable kernels exist: a compiled one (`whitlab._gammacore`) and a
numpy one (`whitlab._gammacore_py`).  The compiled kernel is preferred when
importable; set WHITLAB_BACKEND=py (or =c) to force a choice.
"""

import os

import numpy as np

from .errors import DomainError, PoleError, RangeError

__all__ = [
    "BACKEND",
    "log_gamma",
    "gamma",
    "log_gamma_many",
    "stirling_envelope",
    "inv_gamma_pair",
]

_choice = os.environ.get("WHITLAB_BACKEND", "").strip().lower()
if _choice not in ("", "c", "py"):
    raise DomainError(f"WHITLAB_BACKEND must be 'c' or 'py', got {_choice!r}")

if _choice == "py":
    from . import _gammacore_py as _core

    _kernel = _core.loggamma
else:
    try:
        from . import _gammacore as _core

        _kernel = _core.loggamma_arr
    except ImportError:
        if _choice == "c":
            raise DomainError("WHITLAB_BACKEND=c but the compiled backend is unavailable")
        from . import _gammacore_py as _core

        _kernel = _core.loggamma

#: Which kernel is active: "c" (compiled) or "py" (numpy).
BACKEND = _core.BACKEND

_POLE_TOL = 1e-12
_EXP_OVERFLOW = 709.0  # log(max double) ~ 709.78, with margin

_LOG_2PI = 1.8378770664093454835606594728
_HALF_LOG_2PI = 0.5 * _LOG_2PI


def _check_poles(z):
    z = np.asarray(z)
    near = z.real < 0.5
    if not near.any():
        return
    zr = np.where(near, z, 1.0)
    k = np.round(zr.real)
    dist = np.abs(zr - k)
    bad = near & (k <= 0.0) & (dist <= _POLE_TOL)
    if bad.any():
        offender = np.atleast_1d(np.asarray(z)[bad])[0]
        raise PoleError(
            f"log_gamma argument {offender} is within {_POLE_TOL} of a non-positive integer"
        )


def log_gamma(z):
    """Principal branch of log Gamma(z).

    Accepts a complex scalar or a numpy array (elementwise).  Raises
    PoleError when any entry is within 1e-12 of a non-positive integer.
    """
    arr = np.asarray(z, dtype=np.complex128)
    _check_poles(arr)
    out = _kernel(arr)
    if arr.ndim == 0:
        return complex(out)
    return out


def log_gamma_many(z):
    """Elementwise log-Gamma without the pole precheck.

    Hot path for integrands: at a pole it returns +inf (so exp gives inf and
    1/Gamma gives an exact 0) instead of raising.  Integrand factories in this
    package guarantee their contours keep clear of poles.
    """
    return _kernel(np.asarray(z, dtype=np.complex128))


def gamma(z):
    """Gamma(z) as exp(log_gamma(z)); raises RangeError on overflow."""
    lg = log_gamma(z)
    mag = np.asarray(lg).real
    if np.any(mag > _EXP_OVERFLOW):
        raise RangeError("Gamma magnitude exceeds double-precision range")
    out = np.exp(lg)
    if np.ndim(z) == 0:
        return complex(out)
    return out


def inv_gamma_pair(d):
    """1 / (Gamma(i*d) * Gamma(-i*d)) evaluated stably as d*sinh(pi*d)/pi.

    The right-hand form is entire, so tensor grids may hit d == 0 (where the
    value is an honest 0) without manufacturing inf/nan pairs.
    """
    d = np.asarray(d, dtype=np.complex128)
    out = d * np.sinh(np.pi * d) / np.pi
    if out.ndim == 0:
        return complex(out)
    return out


def stirling_envelope(sigma, t):
    """Leading-order magnitude sqrt(2 pi) e^{-pi |t|/2} |t|^{sigma - 1/2}.

    Valid as an envelope for |Gamma(sigma + i t)| once |t| >= 5; below that the
    approximation degrades, so smaller |t| raises DomainError.  For |t| >= 10
    the true-to-envelope ratio stays within a factor of 2.
    """
    t_abs = np.abs(np.asarray(t, dtype=float))
    if np.any(t_abs < 5.0):
        raise DomainError("stirling_envelope needs |t| >= 5")
    out = np.sqrt(2.0 * np.pi) * np.exp(-0.5 * np.pi * t_abs) * t_abs ** (np.asarray(sigma, float) - 0.5)
    if np.ndim(t) == 0 and np.ndim(sigma) == 0:
        return float(out)
    return out
