# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""C backend for the complex log-Gamma kernel.

Scalar algorithm identical to `_gammacore_py`: recursion shift to Re w >= 10,
then the 13-term asymptotic series.  Exposes an array entry point
(`loggamma_arr`) and a scalar one (`loggamma1`).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

from libc.math cimport INFINITY, NAN, isfinite

cdef extern from "complex.h" nogil:
    double complex clog(double complex)

cdef double _SHIFT_LIMIT = 10.0
cdef double _HALF_LOG_2PI = 0.9189385332046727417803297364

cdef double[13] _COEF
_COEF[0] = 1.0 / 12.0
_COEF[1] = -1.0 / 360.0
_COEF[2] = 1.0 / 1260.0
_COEF[3] = -1.0 / 1680.0
_COEF[4] = 1.0 / 1188.0
_COEF[5] = -691.0 / 360360.0
_COEF[6] = 1.0 / 156.0
_COEF[7] = -3617.0 / 122400.0
_COEF[8] = 43867.0 / 244188.0
_COEF[9] = -174611.0 / 125400.0
_COEF[10] = 854513.0 / 63756.0
_COEF[11] = -236364091.0 / 1506960.0
_COEF[12] = 8553103.0 / 3900.0

BACKEND = "c"


cdef inline double complex _lg(double complex z) noexcept nogil:
    cdef double complex acc = 0.0
    cdef double complex w = z
    cdef double complex u, u2, s
    cdef int k
    if not (isfinite(z.real) and isfinite(z.imag)):
        if z.real == INFINITY and z.imag == z.imag:
            return INFINITY
        return NAN
    while w.real < _SHIFT_LIMIT:
        acc = acc - clog(w)
        w = w + 1.0
    u = 1.0 / w
    u2 = u * u
    s = _COEF[12]
    for k in range(11, -1, -1):
        s = s * u2 + _COEF[k]
    return (w - 0.5) * clog(w) - w + _HALF_LOG_2PI + s * u + acc


def loggamma1(double complex z):
    """Principal-branch log-Gamma of a single complex number."""
    return _lg(z)


def loggamma_arr(object zs):
    """Elementwise principal-branch log-Gamma of a complex128 array."""
    cdef cnp.ndarray z = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef cnp.ndarray out = np.empty_like(z)
    cdef double complex[::1] zv = z.reshape(-1)
    cdef double complex[::1] ov = out.reshape(-1)
    cdef Py_ssize_t i, n = zv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _lg(zv[i])
    return out.reshape(np.shape(zs))
