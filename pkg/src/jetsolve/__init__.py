"""Higher-order nonlinear solvers backed by truncated Taylor-series AD."""

from . import generic
from .errors import (
    DomainError,
    InnerSolveFailed,
    InsufficientData,
    JetsolveError,
    SingularMatrix,
    StepSizeUnderflow,
    ZeroPrimal,
    ZeroReference,
)
from .linalg import CsMatrix, LuFactors, dense_jacobian, lu_factor, lu_solve
from .mvsolve import (
    MvSolveConfig,
    NonlinearProblem,
    halley_step,
    second_directional,
    solve,
)
from .ode import (
    StepperConfig,
    WorkPrecisionRecord,
    implicit_step,
    integrate,
    relative_l2_error,
)
from .problems import (
    BrusselatorConfig,
    ChandrasekharConfig,
    OdeProblem,
    UnivariateCase,
    brusselator_rhs,
    brusselator_steady,
    chandrasekhar,
    univariate_suite,
)
from .report import Counters, SolveReport, Status
from .scalar import (
    ScalarSolveConfig,
    empirical_order,
    householder_solve,
    householder_step,
)
from .sparsity import (
    Coloring,
    SparsityPattern,
    color_columns,
    compressed_jacobian,
    detect_pattern,
    validate_coloring,
)
from .taylor import TaylorBundle, derivative, reciprocal, seed
from .tracer import IndexSet

__all__ = [name for name in dir() if not name.startswith("_")]
