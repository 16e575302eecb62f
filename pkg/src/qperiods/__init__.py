"""Exact quantum periods of Fano fourfolds, their differential operators
and the singularity analysis of those operators."""

from .series import TruncatedSeries, exp_linear_normalize
from .periods import (
    BundleData,
    CatalogEntry,
    DegreeAccumulator,
    ManifoldSpec,
    ToricData,
    WpsCiData,
    catalog_entry,
    catalog_names,
    enumerate_beta,
    period_closed_form,
    period_flag_extraction,
    period_product,
    period_strangeway,
    period_toric,
    period_toric_ci,
    period_wps_ci,
    resolve,
)
from .qde import (
    AmbiguousOperatorError,
    DiffOperator,
    ReconstructionResult,
    apply,
    canonicalize,
    reconstruct,
)
from .monodromy import (
    FuchsianReport,
    LocalMonodromy,
    RamificationEntry,
    RamificationReport,
    SingularPoint,
    ThetaForm,
    UnsupportedExponentError,
    is_fuchsian,
    local_log_monodromy,
    localize,
    ramification,
    singular_points,
    verify_frobenius,
)

__version__ = "0.1.0"
