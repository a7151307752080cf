"""Weighted functional inequalities on homogeneous groups.

Dilation-equipped groups (Euclidean spaces, anisotropic spaces, the
Heisenberg group), quasi-norms, the radial derivative along the dilation
flow, and numerical verification of the associated Hardy-type
inequalities, uncertainty principles, and exact L^2 remainder identities.
"""

from .calculus import (
    SphereMeasure,
    clear_sphere_measure_cache,
    haar_integral,
    nth_radial_derivative,
    radial_derivative,
    sphere_measure,
    weighted_combo_l2,
    weighted_lp_norm,
)
from .constants import (
    ckn_constant,
    combined_first_constant,
    combined_high_constant,
    constant_table,
    hardy_step_constant,
    iterated_hardy_constant,
    l2_iterated_constant,
    ladder_constant_alpha,
    ladder_constant_beta,
    uncertainty_constant,
    validate_p,
)
from .corpus import CorpusSpec, make_corpus
from .errors import (
    ConfigError,
    DegenerateConstantError,
    HgineqError,
    IncompatibleNormError,
    InvalidParameterError,
    MissingDerivativeError,
    OutsidePureRegionError,
    SingularPointError,
    SingularSupportError,
    UnsupportedDomainError,
    UnsupportedGroupError,
)
from .extremizers import (
    DEFAULT_SCHEDULE,
    ExtremizerFamily,
    SharpnessScan,
    attained_quotient,
    extremizer_field,
    extremizer_profile,
    hoelder_residual,
    sharpness_scan,
)
from .fields import PolyFactor, ScalarField, dilate_field, generic_field, product_field, radial_field
from .groups import GroupSpec, apply_vector_field, dilate, make_group, parse_group
from .io import (
    SCHEMA_VERSION,
    document_reports,
    load_config_file,
    render_csv,
    render_json,
    report_from_dict,
    report_to_dict,
    reports_document,
    write_reports,
)
from .norms import QuasiNormSpec, default_norm, homogeneity_deviation, make_norm
from .profiles import (
    RadialProfile,
    annulus_cutoff,
    constant_profile,
    exp_power_profile,
    gaussian_profile,
    log_gaussian_profile,
    power_profile,
    smooth_step_profile,
)
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    integrate_box,
    integrate_mc,
    integrate_radial,
)
from .reports import (
    InequalityReport,
    ckn_report,
    combined_report,
    hardy_report,
    higher_order_pair_report,
    higher_order_report,
    l2_identity_report,
    l2_sharp_report,
    uncertainty_report,
)

__version__ = "0.1.0"

__all__ = [
    "CorpusSpec",
    "ConfigError",
    "DEFAULT_CONFIG",
    "DEFAULT_SCHEDULE",
    "DegenerateConstantError",
    "ExtremizerFamily",
    "GroupSpec",
    "HgineqError",
    "IncompatibleNormError",
    "InequalityReport",
    "InvalidParameterError",
    "MissingDerivativeError",
    "OutsidePureRegionError",
    "PolyFactor",
    "QuadratureConfig",
    "QuasiNormSpec",
    "RadialProfile",
    "SCHEMA_VERSION",
    "ScalarField",
    "SharpnessScan",
    "SingularPointError",
    "SingularSupportError",
    "SphereMeasure",
    "UnsupportedDomainError",
    "UnsupportedGroupError",
    "annulus_cutoff",
    "apply_vector_field",
    "attained_quotient",
    "ckn_constant",
    "ckn_report",
    "clear_sphere_measure_cache",
    "combined_first_constant",
    "combined_high_constant",
    "combined_report",
    "constant_profile",
    "constant_table",
    "default_norm",
    "dilate",
    "dilate_field",
    "document_reports",
    "exp_power_profile",
    "extremizer_field",
    "extremizer_profile",
    "gaussian_profile",
    "generic_field",
    "haar_integral",
    "hardy_report",
    "hardy_step_constant",
    "higher_order_pair_report",
    "higher_order_report",
    "hoelder_residual",
    "homogeneity_deviation",
    "integrate_box",
    "integrate_mc",
    "integrate_radial",
    "iterated_hardy_constant",
    "l2_identity_report",
    "l2_iterated_constant",
    "l2_sharp_report",
    "ladder_constant_alpha",
    "ladder_constant_beta",
    "load_config_file",
    "log_gaussian_profile",
    "make_corpus",
    "make_group",
    "make_norm",
    "nth_radial_derivative",
    "parse_group",
    "power_profile",
    "product_field",
    "radial_derivative",
    "radial_field",
    "render_csv",
    "render_json",
    "report_from_dict",
    "report_to_dict",
    "reports_document",
    "sharpness_scan",
    "smooth_step_profile",
    "sphere_measure",
    "uncertainty_constant",
    "uncertainty_report",
    "validate_p",
    "weighted_combo_l2",
    "weighted_lp_norm",
    "write_reports",
    "__version__",
]
