"""Pointwise curvature operators [i Theta, Lambda] of Hermitian vector bundles.

Closed-form assembly on bundle-valued (p,q)-forms, Hodge star and duality
maps, positivity classification, and a brute-force exterior-algebra oracle.
"""
__version__ = "0.1.0"

from .errors import InputError, ValidationError
from .multiindex import MultiIndex, alpha, complement, enumerate_indices, epsilon, sgn_complement
from .forms import (
    BundleForm,
    hodge_star,
    inner_product,
    interior_product,
    lambda_closed_form,
    lefschetz,
    star_inverse,
    tilde_map,
)
from .curvature import (
    CurvatureTensor,
    OperatorMatrix,
    apply_operator,
    dual_tensor,
    nakano_matrix,
    operator_matrix,
    quadratic_form,
    validate,
)
from .positivity import (
    PositivityReport,
    classify,
    dual_nakano_class,
    griffiths_min,
    hermitian_spectrum,
    nakano_class,
    theorem_chain_report,
)
from .generators import fubini_study_tensor, random_tensor
from .tensorfile import emit_tensor, parse_tensor_file
