"""Exception types raised by the solver pipeline."""


class KerrcoolError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(KerrcoolError, ValueError):
    """A physical parameter is outside its admissible domain."""


class NoSqueezingError(KerrcoolError, ValueError):
    """Squeezing was requested but the self-Kerr coefficient is zero."""


class NoCouplingError(KerrcoolError, ValueError):
    """A finite magnon-mechanical coupling was requested with g = 0."""


class FrameUndefinedError(KerrcoolError, ValueError):
    """The Bogoliubov frame does not exist (squeeze rate >= effective detuning)."""


class DesignSingularityError(KerrcoolError, ValueError):
    """The mechanical response is singular (drive tone resonant with an
    undamped mechanical sideband)."""


class ConvergenceError(KerrcoolError, RuntimeError):
    """The nonlinear steady-state iteration did not converge.

    Carries the final residual; a persistent large residual usually signals
    Kerr bistability rather than a solver defect.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class NoSteadyStateError(KerrcoolError, RuntimeError):
    """The moment drift matrix is singular, so no steady state exists."""


class InstabilityError(KerrcoolError, RuntimeError):
    """The moment drift matrix has an eigenvalue with non-negative real part."""

    def __init__(self, message: str, eigenvalue: complex):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class StepSizeError(KerrcoolError, ValueError):
    """The requested integrator step exceeds the linear stability bound."""


class ConfigError(KerrcoolError, ValueError):
    """A parameter file could not be parsed or is missing required fields."""
