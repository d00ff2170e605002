"""Hyperbolicity analysis for compressible flow with objective Cattaneo heat flux.

The package assembles the first-order symbol of the coupled
density/velocity/temperature/heat-flux system for a two-parameter family
of flux transport laws, factors its characteristic polynomial, and
classifies each state as HYPERBOLIC, WEAKLY_HYPERBOLIC or
NON_HYPERBOLIC.  An HTTP service (hypflux.service) and a CLI wrap the
same core.
"""

__version__ = "0.1.0"

from .assembly import (
    Direction,
    State,
    SystemMatrices,
    a0_matrix,
    assemble,
    assemble_1d,
    assemble_3d,
    q_block,
    source_vector,
    symbol,
    symbol_3d,
    symbol_ccj,
)
from .charpoly import (
    CcjSpeeds,
    DepressedQuartic,
    DiscriminantBreakdown,
    QuarticRootReport,
    WitnessReport,
    block_det,
    ccj_speeds,
    discriminant,
    factored_determinant,
    h_value,
    p_factor_3d,
    quartic_from_state_1d,
    quartic_from_state_3d,
    quartic_roots,
    witness_q,
)
from .constitutive import (
    LAMBDA_NU_PRESETS,
    ConstitutiveEvaluation,
    ConstitutiveModel,
    ThermoPoint,
    builtin_models,
    evaluate,
    ideal_gas,
    make_model,
    resolve_lambda_nu,
    stiffened_gas,
)
from .errors import (
    ConfigError,
    ConstitutiveViolation,
    DomainError,
    GammaZero,
    HypfluxError,
    NotApplicable,
    SingularA0,
    SingularBlock,
    UnknownModel,
    WrongLambdaNu,
)
from .modal import ModeGrowth, mode_growth, source_jacobian
from .reproduce import RECIPES, ReproduceReport, run_reproduction
from .spectral import (
    DEFAULT_TOL,
    DefectWitness,
    EigenCluster,
    Eta0Basis,
    SpectrumReport,
    ToleranceProfile,
    Verdict,
    classify_state,
    defect_witness,
    eigenvector_matrix,
    eta0_basis,
    pencil_spectrum,
)
from .sweep import (
    ClassificationRecord,
    SweepConfig,
    SweepResult,
    csv_text,
    jsonl_text,
    run_sweep,
    verdict_map_text,
)

__all__ = [
    "__version__",
    "CcjSpeeds",
    "ClassificationRecord",
    "ConfigError",
    "ConstitutiveEvaluation",
    "ConstitutiveModel",
    "ConstitutiveViolation",
    "DEFAULT_TOL",
    "DefectWitness",
    "DepressedQuartic",
    "Direction",
    "DiscriminantBreakdown",
    "DomainError",
    "EigenCluster",
    "Eta0Basis",
    "GammaZero",
    "HypfluxError",
    "LAMBDA_NU_PRESETS",
    "ModeGrowth",
    "NotApplicable",
    "QuarticRootReport",
    "RECIPES",
    "ReproduceReport",
    "SingularA0",
    "SingularBlock",
    "SpectrumReport",
    "State",
    "SweepConfig",
    "SweepResult",
    "SystemMatrices",
    "ThermoPoint",
    "ToleranceProfile",
    "UnknownModel",
    "Verdict",
    "WitnessReport",
    "WrongLambdaNu",
    "a0_matrix",
    "assemble",
    "assemble_1d",
    "assemble_3d",
    "block_det",
    "builtin_models",
    "ccj_speeds",
    "classify_state",
    "csv_text",
    "defect_witness",
    "discriminant",
    "eigenvector_matrix",
    "eta0_basis",
    "evaluate",
    "factored_determinant",
    "h_value",
    "ideal_gas",
    "jsonl_text",
    "make_model",
    "mode_growth",
    "p_factor_3d",
    "pencil_spectrum",
    "q_block",
    "quartic_from_state_1d",
    "quartic_from_state_3d",
    "quartic_roots",
    "resolve_lambda_nu",
    "run_reproduction",
    "run_sweep",
    "source_jacobian",
    "source_vector",
    "stiffened_gas",
    "symbol",
    "symbol_3d",
    "symbol_ccj",
    "verdict_map_text",
    "witness_q",
]
