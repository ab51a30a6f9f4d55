"""Permutation group polynomials over finite fields: construction, companions, counts."""
from .errors import *  # noqa: F401,F403
from .ffield import (
    FieldElement,
    FieldParams,
    ff_add,
    ff_inv,
    ff_mul,
    ff_pow,
    ff_sub,
    make_field,
)
from .perm import Permutation, compose, conjugate, fixed_points, from_cycles, inverse, power
from .groups import (
    KlenianParams,
    OrderedGroup,
    T31Params,
    ValidationReport,
    enumerate_group,
    group_invariants,
    klenian_generators,
    klenian_group,
    t31_generators,
    t31_group,
    validate_pgp_group,
)
from .lpp import (
    LatinSquare,
    PermTuple,
    are_orthogonal,
    companion_h,
    companion_tuple,
    intersects_lpp_simply,
    intersects_simply,
    mate_search,
    square_to_tuple,
    tuple_to_square,
)
from .poly import BivariatePoly, eval_poly, eval_table, interpolate_bivariate, is_lpp_poly
from .counting import (
    centralizer_bruteforce,
    count_equivalents,
    count_klenian,
    count_t31,
    det_mod_p,
    matrix_A,
    normalizer_bruteforce,
    nset_bruteforce,
    nset_nonempty_klenian,
    nset_nonempty_t31,
)
from .kernels import get_backend, set_backend

__version__ = "0.1.0"
