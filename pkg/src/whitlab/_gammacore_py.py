"""Pure-numpy backend for the complex log-Gamma kernel.

Same algorithm as the C backend (`_gammacore.pyx`): push the argument to
Re w >= 10 with the recursion log G(z) = log G(z+1) - log z, then apply the
asymptotic series

    log G(w) ~ (w - 1/2) log w - w + log(2 pi)/2 + sum_n c_n / w^{2n-1},

with 13 fixed series coefficients.  Because every shifted factor stays in the
same (closed upper or lower) half-plane as z itself, accumulating principal
logs yields the principal branch of log-Gamma on all of C minus the cut
(-inf, 0].  At a pole of Gamma the result is +inf (callers that must reject
poles check before calling).  Double precision only.
"""

import numpy as np

BACKEND = "py"

_SHIFT_LIMIT = 10.0
_HALF_LOG_2PI = 0.9189385332046727417803297364

# c_n = B_{2n} / (2n (2n-1)) for n = 1..13
_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    854513.0 / 63756.0,
    -236364091.0 / 1506960.0,
    8553103.0 / 3900.0,
)


def loggamma(z):
    """Principal-branch log-Gamma of a complex array (or scalar).

    Returns +inf at poles and propagates nan for non-finite input; never
    raises.  Shape of the output matches the input.
    """
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    w = np.atleast_1d(z).astype(np.complex128).reshape(-1).copy()
    acc = np.zeros_like(w)

    finite = np.isfinite(w.real) & np.isfinite(w.imag)
    with np.errstate(divide="ignore", invalid="ignore"):
        mask = finite & (w.real < _SHIFT_LIMIT)
        while mask.any():
            wm = w[mask]
            acc[mask] -= np.log(wm)
            w[mask] = wm + 1.0
            mask = finite & (w.real < _SHIFT_LIMIT)

        u = np.where(finite, 1.0 / w, 0.0)
        u2 = u * u
        s = np.full_like(w, _COEF[-1])
        for c in _COEF[-2::-1]:
            s = s * u2 + c
        out = (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + s * u + acc

    bad = ~finite
    if bad.any():
        # Gamma -> +inf as Re z -> +inf; otherwise undefined.
        out[bad] = np.where(np.atleast_1d(z).reshape(-1)[bad].real == np.inf, np.inf, np.nan)

    out = out.reshape(np.atleast_1d(z).shape)
    if scalar:
        return complex(out[()].item() if out.ndim == 0 else out[0])
    return out
