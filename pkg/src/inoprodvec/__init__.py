from .util_helper import InoUtilHelper, ProdVecError, ino_ok, ino_err, ino_is_err
from .config_helper import InoConfigHelper, Tolerances
from .log_helper import InoLogHelper, LogType
from .json_helper import InoJsonHelper
from .numeric_helper import (
    EXACT,
    FLOAT,
    DomainError,
    GaussianRational,
    InoNumericHelper,
    ScalarOverflowError,
)
from .matrix_helper import InoMatrixHelper
from .poly_helper import BiPoly, DegenerateSylvesterError, InoPolyHelper, UniPoly
from .subspace_helper import (
    InoSubspaceHelper,
    LinearFormMatrix,
    MultiPoly,
    PairValidationError,
    RegimeError,
    SubspacePair,
)
from .root_helper import InoRootHelper, RootCluster
from .classify_helper import (
    ClassificationReport,
    IndeterminateError,
    InoClassifyHelper,
    RangeObstruction,
    Regime,
    Verdict,
)
from .solve_helper import CountCertificate, InoSolveHelper, ProductVectorSolution, RankError
from .fixture_helper import InoFixtureHelper

__all__ = [
    "InoUtilHelper",
    "InoConfigHelper",
    "InoLogHelper",
    "LogType",
    "InoJsonHelper",
    "InoNumericHelper",
    "InoMatrixHelper",
    "InoPolyHelper",
    "InoSubspaceHelper",
    "InoRootHelper",
    "InoClassifyHelper",
    "InoSolveHelper",
    "InoFixtureHelper",
    "Tolerances",
    "GaussianRational",
    "EXACT",
    "FLOAT",
    "UniPoly",
    "BiPoly",
    "SubspacePair",
    "LinearFormMatrix",
    "MultiPoly",
    "RootCluster",
    "Regime",
    "Verdict",
    "ClassificationReport",
    "RangeObstruction",
    "CountCertificate",
    "ProductVectorSolution",
    "ProdVecError",
    "ScalarOverflowError",
    "DomainError",
    "DegenerateSylvesterError",
    "PairValidationError",
    "RegimeError",
    "IndeterminateError",
    "RankError",
    "ino_ok",
    "ino_err",
    "ino_is_err"
]
