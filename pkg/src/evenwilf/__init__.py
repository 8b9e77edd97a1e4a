"""Parity-refined pattern avoidance for permutations and shape transversals."""

__version__ = "0.1.0"

from .counting import (  # noqa: F401
    AvoidanceVector,
    BudgetError,
    CountTriple,
    avoidance_vector,
    count_avoiders,
    count_avoiders_shape,
)
from .perms import (  # noqa: F401
    Perm,
    apply_symmetry,
    avoids,
    check_perm,
    contains,
    decreasing,
    decreasing_max_last,
    direct_sum,
    increasing,
    inverse,
    inversions,
    is_even,
    parse_perm,
    sign,
)
from .shapes import (  # noqa: F401
    Shape,
    admits_transversal,
    check_shape,
    is_transversal,
    parse_shape,
    shapes_in_box,
    square_shape,
    transversal_contains,
    transversals,
)
