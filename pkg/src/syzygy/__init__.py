__version__ = "1.0.0"

__all__ = [
    # Tables
    "JointTable",
    "MarginalPair",
    "TriTable",
    "TableError",
    "TableFormatError",
    "TableSource",
    "from_counts",
    "from_probs",
    "marginals",
    "independence_product",
    "transpose",
    "permute",
    "read_table",
    # Hellinger geometry
    "FlatDistribution",
    "DistributionError",
    "hellinger",
    "bhattacharyya_coefficient",
    "max_distanced",
    # rho^M
    "CandidateSet",
    "RhoMResult",
    "MeasureError",
    "CandidateLimitError",
    "UndefinedMeasureError",
    "full_dep_candidates",
    "rho_m",
    "phi_style_component_distance",
    # Classical measures
    "NumericSupport",
    "PairedSample",
    "TwoProportionInput",
    "PreconditionError",
    "phi_coefficient",
    "pearson_rho",
    "spearman",
    "mutual_information",
    "conditional_mi",
    "chi_squared",
    "degree_of_dependence_EA",
    "cramers_v",
    "tschuprow_t",
    "two_proportion",
    # Reports
    "AnalysisOptions",
    "analyze_source",
    "MeasureReport",
    "OracleDocument",
    "SchemaRegistry",
    "SchemaValidationError",
    # Configuration
    "Settings",
    "load_settings",
]

from .pinax.table import (
    JointTable,
    MarginalPair,
    TableError,
    TriTable,
    from_counts,
    from_probs,
    independence_product,
    marginals,
    permute,
    transpose,
)
from .pinax.io import TableFormatError, TableSource, read_table
from .metron.hellinger import (
    DistributionError,
    FlatDistribution,
    bhattacharyya_coefficient,
    hellinger,
    max_distanced,
)
from .metron.dependence import (
    CandidateLimitError,
    CandidateSet,
    MeasureError,
    RhoMResult,
    UndefinedMeasureError,
    full_dep_candidates,
    phi_style_component_distance,
    rho_m,
)
from .mensura.classical import (
    NumericSupport,
    PairedSample,
    PreconditionError,
    TwoProportionInput,
    chi_squared,
    conditional_mi,
    cramers_v,
    degree_of_dependence_EA,
    mutual_information,
    pearson_rho,
    phi_coefficient,
    spearman,
    tschuprow_t,
    two_proportion,
)
from .analysis import AnalysisOptions, analyze_source
from .spec.models import MeasureReport, OracleDocument
from .spec.schemas import SchemaRegistry, SchemaValidationError
from .settings import Settings, load_settings
