"""Exception types shared across whitlab."""


class WhitlabError(Exception):
    """Base class for all whitlab errors."""


# --- special functions ---------------------------------------------------

class PoleError(WhitlabError):
    """Gamma evaluated at (or within tolerance of) a non-positive integer."""


class RangeError(WhitlabError):
    """Result magnitude exceeds double-precision range."""


class DomainError(WhitlabError):
    """Argument outside the supported domain of an approximation."""


# --- quadrature ----------------------------------------------------------

class NonConvergence(WhitlabError):
    """Panel budget exhausted before the error target was met."""


class DecayProbeFailed(WhitlabError):
    """Could not locate a truncation radius where the integrand has decayed."""


class DimensionUnsupported(WhitlabError):
    """Tensor quadrature supports at most three axes."""


# --- function spaces / operators ----------------------------------------

class StripExhausted(WhitlabError):
    """A shift moves evaluation outside the function's strip of analyticity."""


class ArityMismatch(WhitlabError):
    """Operator and operand disagree on the number of variables."""


class StepInvalid(WhitlabError):
    """Finite-difference step outside the supported window."""


# --- realizations / evaluators -------------------------------------------

class RankUnsupported(WhitlabError):
    """Construction only available for the implemented ranks."""


class KappaOutOfRange(WhitlabError):
    """Contour shift parameter outside its admissible interval."""


class NoPrintedVector(WhitlabError):
    """The requested realization has no closed-form distinguished vectors."""


class GammaArgumentViolation(WhitlabError):
    """A Gamma factor in an integrand would have non-positive real part."""


# --- checks --------------------------------------------------------------

class PreconditionViolated(WhitlabError):
    """Parameters violate a stated precondition of an identity or kernel."""


class ParameterConstraintViolated(WhitlabError):
    """Spectral parameters fail a convergence constraint of a kernel map."""


class DegenerateSample(WhitlabError):
    """Sampled parameters hit a removable-singularity configuration."""
