"""Commuting-part decompositions and closed-form SU(3) maps.

Any diagonalizable matrix splits into at most three commuting parts
whose squares are scalar; for su(3) this turns the exponential, the
factorization of a group element into three generalized Euler factors,
and the principal/branch logarithms into short closed-form expressions.
The package implements that machinery with explicit tolerances,
independent reference routes for validation, and a JSON CLI.
"""

from .errors import (
    AmbiguousDirection,
    DegenerateLambdas,
    DimensionMismatch,
    DocumentError,
    EigenFailure,
    FactorizationFailed,
    InputError,
    InvalidAlgebraElement,
    MissingDirection,
    NonCommutingParts,
    NotDiagonalizable,
    NotNormal,
    NotSimpleFactor,
    NotUnitary,
    NumericalError,
    Singular,
    Su3KitError,
    ZeroMatrix,
)
from .tolerances import DEFAULT_TOL, Tolerances, with_overrides
from .smallmat import ComplexMat, commutator, eigen_general, eigen_normal3, scalar_residual
from .invdec import (
    AlgebraElement,
    InvariantDecomposition,
    SimplePart,
    decompose_closed_form,
    decompose_nxn,
    decompose_via_eigen,
    lambda_roots,
)
from .expmap import (
    EulerFactor,
    GroupElement,
    exp_simple,
    exp_su3,
    family_element,
    invariant_combination,
)
from .grades import (
    GradeDecomposition,
    ccos_ssin,
    grade0,
    grade2,
    grade4,
    grade6,
    split_HS,
    traceless_projection,
)
from .factorlog import (
    Factorization,
    LogBranch,
    branch_log,
    factorize,
    normalize,
    principal_log,
    principal_log_factor,
    rms_norm,
)
from .gellmann import (
    BASIS,
    GellMannBasis,
    equilibrium_point,
    exp_gellmann,
    exp_gellmann8,
    lam,
    reconstruct_lambda,
    rho,
)
from .oracle import (
    compare,
    exp_reference,
    log_reference,
    random_algebra,
    random_group,
)
from .bench import BenchReport, render_table, run_bench

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AmbiguousDirection",
    "BASIS",
    "BenchReport",
    "ComplexMat",
    "DEFAULT_TOL",
    "DegenerateLambdas",
    "DimensionMismatch",
    "DocumentError",
    "EigenFailure",
    "EulerFactor",
    "Factorization",
    "FactorizationFailed",
    "GellMannBasis",
    "GradeDecomposition",
    "GroupElement",
    "InputError",
    "InvalidAlgebraElement",
    "InvariantDecomposition",
    "LogBranch",
    "MissingDirection",
    "NonCommutingParts",
    "NotDiagonalizable",
    "NotNormal",
    "NotSimpleFactor",
    "NotUnitary",
    "NumericalError",
    "SimplePart",
    "Singular",
    "Su3KitError",
    "Tolerances",
    "ZeroMatrix",
    "branch_log",
    "ccos_ssin",
    "commutator",
    "compare",
    "decompose_closed_form",
    "decompose_nxn",
    "decompose_via_eigen",
    "eigen_general",
    "eigen_normal3",
    "equilibrium_point",
    "exp_gellmann",
    "exp_gellmann8",
    "exp_reference",
    "exp_simple",
    "exp_su3",
    "factorize",
    "family_element",
    "grade0",
    "grade2",
    "grade4",
    "grade6",
    "invariant_combination",
    "lam",
    "lambda_roots",
    "log_reference",
    "normalize",
    "principal_log",
    "principal_log_factor",
    "random_algebra",
    "random_group",
    "reconstruct_lambda",
    "render_table",
    "rho",
    "rms_norm",
    "run_bench",
    "scalar_residual",
    "split_HS",
    "traceless_projection",
    "with_overrides",
]
