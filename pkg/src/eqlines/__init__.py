"""Certified upper bounds for equiangular line systems.

Closed-form relative bounds, an exact triangle-LP relaxation of the
three-point semidefinite bound, and checks on explicit configurations.
"""

from .bounds import (
    BoundReport,
    NonexistenceCertificate,
    corollary_bound,
    gerzon_bound,
    lemmens_seidel_bound,
    okuda_yu_bound,
    okuda_yu_integer_l_bound,
)
from .designs import (
    GramSet,
    PointSet,
    gram_profile,
    harmonic_index_design_test,
    load_configuration,
    profile,
    tightness_check,
)
from .exact import Polynomial, Rational, rational_from_string
from .gegenbauer import gegenbauer, gegenbauer_eval
from .lp import (
    build_instance,
    feasibility_at_level,
    minimal_instance,
    triangle_bound,
    verify_proposition_33,
)
from .threepoint import (
    lemma32_reference,
    s_combination_diagonal,
    unnormalized_entry,
    w_det,
    w_matrix,
)

__version__ = "0.1.0"
