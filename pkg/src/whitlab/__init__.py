"""whitlab: numerical cross-verification of rank-2/3 Whittaker functions.

The package evaluates the same special function through three unrelated
integral representations (spectral/Mellin-Barnes, superpotential, and a
Fourier-dual form), realizes the underlying operator algebras, and certifies
numerically that every printed identity tying the three together holds.
"""

from . import (
    cgamma,
    errors,
    funcspace,
    identities,
    intertwiners,
    quadrature,
    realizations,
    toda,
    whittaker,
)
from .quadrature import QuadSpec
from .realizations import SpectralParams
from .whittaker import psi_givental, psi_mb, psi_modified

__version__ = "0.1.0"

__all__ = [
    "cgamma",
    "errors",
    "funcspace",
    "identities",
    "intertwiners",
    "quadrature",
    "realizations",
    "toda",
    "whittaker",
    "QuadSpec",
    "SpectralParams",
    "psi_givental",
    "psi_mb",
    "psi_modified",
    "__version__",
]
