"""Exception types shared across the package."""


class JetsolveError(Exception):
    """Base class for all package-specific errors."""


class ZeroPrimal(JetsolveError):
    """Primal value too close to zero for a reciprocal/division rule."""


class DomainError(JetsolveError):
    """Primal value outside the domain of an elementary function."""


class SingularMatrix(JetsolveError):
    """A pivot column had no usable entry during LU factorization."""


class InsufficientData(JetsolveError):
    """Not enough usable iterates to estimate a convergence order."""


class InnerSolveFailed(JetsolveError):
    """The nonlinear solver inside an implicit ODE step did not converge."""


class StepSizeUnderflow(JetsolveError):
    """Adaptive step control pushed the step size below the configured minimum."""


class ZeroReference(JetsolveError):
    """Reference solution has zero norm; relative error undefined."""
