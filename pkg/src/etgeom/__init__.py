"""etgeom - Geometry and elliptic solutions of the discrete-time Euler top."""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("etgeom")
except PackageNotFoundError:
    __version__ = "unknown"

from etgeom.complex_curve import coplanarity_det, complex_involution, phi, real_coplanarity
from etgeom.curve import (
    Component,
    CurveChart,
    Orbit,
    chart_from_state,
    curve_point,
    elliptic_solution,
    elliptic_time_step,
    mirror_state,
    tau_phase,
)
from etgeom.dynamics import (
    CaseLabel,
    ConservedTriple,
    Delta,
    DiagonalQuadric,
    TopContext,
    classify_case,
    conserved,
    cylinders,
    euler_top_field,
    hk_inverse,
    hk_map,
    hk_residual,
)
from etgeom.elliptic import (
    JacobiTriple,
    Modulus,
    QuarterPeriods,
    arcsn,
    carlson_rf,
    complete_K,
    jacobi_add,
    jacobi_complex,
    jacobi_real,
    ns,
    quarter_periods,
)
from etgeom.errors import EulerTopError
from etgeom.involution import (
    Branch,
    DegenerateKind,
    DeltaSign,
    InvolutionSpec,
    compose_dEt,
    degenerate_map,
    involution_spec,
    involution_step,
    iota_dEt,
    iota_generic,
    ruling_directions,
    second_intersection,
    sqrt_map,
)
from etgeom.pencil import (
    PencilKind,
    PencilQuadric,
    lambda_from_nu,
    pencil_quadric,
    tangency_coefficients,
    tangency_residual,
)

__all__ = [
    "Branch",
    "CaseLabel",
    "Component",
    "ConservedTriple",
    "CurveChart",
    "DegenerateKind",
    "Delta",
    "DeltaSign",
    "DiagonalQuadric",
    "EulerTopError",
    "InvolutionSpec",
    "JacobiTriple",
    "Modulus",
    "Orbit",
    "PencilKind",
    "PencilQuadric",
    "QuarterPeriods",
    "TopContext",
    "arcsn",
    "carlson_rf",
    "chart_from_state",
    "classify_case",
    "complete_K",
    "complex_involution",
    "compose_dEt",
    "conserved",
    "coplanarity_det",
    "curve_point",
    "cylinders",
    "degenerate_map",
    "elliptic_solution",
    "elliptic_time_step",
    "euler_top_field",
    "hk_inverse",
    "hk_map",
    "hk_residual",
    "involution_spec",
    "involution_step",
    "iota_dEt",
    "iota_generic",
    "jacobi_add",
    "jacobi_complex",
    "jacobi_real",
    "lambda_from_nu",
    "mirror_state",
    "ns",
    "pencil_quadric",
    "phi",
    "quarter_periods",
    "real_coplanarity",
    "ruling_directions",
    "second_intersection",
    "sqrt_map",
    "tangency_coefficients",
    "tangency_residual",
    "tau_phase",
]
