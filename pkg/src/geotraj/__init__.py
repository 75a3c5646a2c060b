"""The space of geodesics of flat pseudo-Euclidean space, its quotient by affine
reparametrization, and exact-arithmetic checks of the structures it carries."""

from .action import AffineElement, VerificationError, act, orbit_frame, orbit_gram, orbit_pullback
from .audit import DimensionAudit, reduction_dimension_audit
from .contact import contact_data, contact_exterior_derivative, contact_form, contact_volume, contact_volume_squared
from .linalg import LinAlgError, Rational, Subspace, float_mode
from .minkowski import MINKOWSKI, CausalKind, Metric, classify, inner
from .phase import CartanPoint, Geodesic, PhaseTangent, cartan_kernel, omega_eval, omega_matrix
from .quotient import ChartPoint, GaugeChart, atlas, compute_F, compute_sigma, gauge_fix
from .verify import RunConfig, inspect_point, run_suites

__version__ = "0.1.0"

__all__ = [
    "AffineElement",
    "CartanPoint",
    "CausalKind",
    "ChartPoint",
    "DimensionAudit",
    "GaugeChart",
    "Geodesic",
    "LinAlgError",
    "MINKOWSKI",
    "Metric",
    "PhaseTangent",
    "Rational",
    "RunConfig",
    "Subspace",
    "VerificationError",
    "act",
    "atlas",
    "cartan_kernel",
    "classify",
    "compute_F",
    "compute_sigma",
    "contact_data",
    "contact_exterior_derivative",
    "contact_form",
    "contact_volume",
    "contact_volume_squared",
    "float_mode",
    "gauge_fix",
    "inner",
    "inspect_point",
    "omega_eval",
    "omega_matrix",
    "orbit_frame",
    "orbit_gram",
    "orbit_pullback",
    "reduction_dimension_audit",
    "run_suites",
]
