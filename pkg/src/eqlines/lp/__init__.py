from .simplex import (
    LinearConstraint,
    LpResult,
    PivotLimitExceeded,
    find_feasible_point,
    maximize,
    verify_farkas,
    verify_point,
)
from .triangle import (
    TriangleBound,
    TriangleLpInstance,
    build_instance,
    feasibility_at_level,
    infeasibility_polynomial,
    minimal_instance,
    triangle_bound,
    verify_proposition_33,
    verify_upper_certificate,
)
