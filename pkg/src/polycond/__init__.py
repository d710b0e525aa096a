"""polycond: basis-dependent conditioning of polynomial evaluation and
rootfinding, with weighted pseudozero sets, at arbitrary precision."""

from .bases import (
    BernsteinBasis,
    LagrangeBasis,
    MonomialBasis,
    NodeSet,
    barycentric_weights,
    bernstein_basis_value,
    chebyshev_nodes,
    equispaced_nodes,
    lagrange_basis_value,
    lagrange_values,
)
from .conditioning import (
    ConditionCurve,
    PerturbationModel,
    condition_curve,
    condition_number,
    eval_perturbation,
    input_condition,
    lebesgue_bound,
    lebesgue_function,
    root_condition,
    root_condition_absolute,
    root_condition_curve,
    root_condition_relative,
)
from .errors import (
    ArgumentError,
    DegenerateInputError,
    DomainError,
    ModelViolationError,
    PolycondError,
    PrecisionError,
    SingularityError,
    UnsupportedBasisError,
)
from .poly import (
    Polynomial,
    clustered_at_one,
    clustered_at_zero,
    from_roots_monomial,
    interpolate_lagrange,
    named_polynomial,
    runge_function,
    runge_interpolant,
    scaled_wilkinson,
    wilkinson,
)
from .emitters import RenderSpec, emit_csv, emit_json, emit_svg, report_to_dict
from .pseudozeros import (
    PseudozeroField,
    WeightVector,
    indicator,
    pseudozero_field,
    witness_perturbation,
)
from .scalars import (
    ComplexScalar,
    Scalar,
    default_digits,
    get_default_digits,
    log10_abs,
    set_default_digits,
)
from .scenarios import (
    ScenarioReport,
    runge_chebyshev,
    runge_equispaced,
    wilkinson_first,
    wilkinson_scaled,
    wilkinson_second,
)

__version__ = "0.1.0"
