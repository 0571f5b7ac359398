"""Exact Ehrhart delta-polynomials of chain polytopes, with zig-zag fast paths."""

__version__ = "0.1.0"

from .poset import (  # noqa: E402
    Labeling,
    Poset,
    all_chains,
    is_natural,
    linear_extensions,
    maximal_chains,
    natural_labeling,
    rank_function,
    zigzag_poset,
)
from .lattice import HPolytope, chain_polytope, count_lattice_points, count_zigzag_fast, kirillov_polytope  # noqa: E402
from .ehrhart import IntPolynomial, DeltaVector, counts_from_delta, delta_from_counts, ehrhart_polynomial  # noqa: E402
from .pp import count_order_preserving, count_p_omega_partitions, w_polynomial_descents, w_tilde_polynomial  # noqa: E402
from .analysis import cross_verify, is_symmetric, is_unimodal, verify_gasharov, verify_kirillov  # noqa: E402
