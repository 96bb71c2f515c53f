"""Exact evaluation and orthogonality certification of multivariate Krawtchouk polynomials."""
from .combinatorics import enumerate_compositions, multinomial, pochhammer, verify_lemma31
from .constructors import (
    InstanceSpec,
    classical_krawtchouk,
    dft_character,
    grunbaum_rahman,
    kronecker,
)
from .krawtchouk import ParameterMatrix, PhiTable, phi_generating, phi_hypergeometric, phi_table
from .orthogonality import (
    OrthogonalityCertificate,
    SolveError,
    check_condition_a,
    check_condition_b,
    gram_sum,
    solve_weights,
    weight,
)
from .scalars import COMPLEX, GAUSSIAN, RATIONAL, EqualityPolicy, GaussianRational

__version__ = "0.1.0"
