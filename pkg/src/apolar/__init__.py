"""Exact inverse-system computations for forms and pencils of forms."""
from .apolarity import (
    CONTRACTION,
    DIFFERENTIATION,
    ActionKind,
    FormSpace,
    annihilator_component,
    apply,
    catalecticant,
    catalecticant_matrix,
    derivative_space,
    from_divided_powers,
    to_divided_powers,
)
from .config import RunConfig
from .errors import *  # noqa: F401,F403
from .forms import Form, Operator, dim_component, monomial_basis, multiply, parse_form, parse_operator
from .hilbert import (
    HilbertSeq,
    check_level_condition,
    compressed_bound,
    hilbert_of_form,
    hilbert_of_space,
    hplus_sum,
    is_o_sequence,
    macaulay_bound,
    overlap_dimension,
    overlap_profile,
    socle_type,
    t_dimension,
)
from .pencil import (
    INFINITY,
    PencilReport,
    ghms_check,
    ghms_decomposition,
    sweep,
    theorem2_bound,
    verify_corollary_partials,
    verify_theorem1,
)
from .scalars import QQ, ExactMatrix, FieldSpec, kernel_basis, rank, subspace_dims

__version__ = "0.1.0"
