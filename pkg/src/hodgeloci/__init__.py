"""Exact computations for Hodge loci of cycles on hypersurfaces."""
from .exactnum import RatMatrix, UniPoly, to_rational, rank, determinant, univariate_det
from .polyring import RingCtx, Polynomial, ring, indexed_ring, parse, DEGREVLEX, LEX, block_order
from .groebner import Ideal, GroebnerBasis, compute_basis, ideal_sum, ideal_intersection
from .quotient import GradedQuotient, ci_hilbert_series, largest_ideal_with_top
from .pairing import gram_matrix, subquotient_pairing, pencil_analysis, fermat_kernel_dim
from .cycles import (PlanePairDatum, plane_pair_ideals, classify_regime, excess_criterion_ci,
                     smoothness_codim_report, fermat_plane_ideals, is_smooth)

__version__ = "0.1.0"

__all__ = [
    "RatMatrix", "UniPoly", "to_rational", "rank", "determinant", "univariate_det",
    "RingCtx", "Polynomial", "ring", "indexed_ring", "parse", "DEGREVLEX", "LEX", "block_order",
    "Ideal", "GroebnerBasis", "compute_basis", "ideal_sum", "ideal_intersection",
    "GradedQuotient", "ci_hilbert_series", "largest_ideal_with_top",
    "gram_matrix", "subquotient_pairing", "pencil_analysis", "fermat_kernel_dim",
    "PlanePairDatum", "plane_pair_ideals", "classify_regime", "excess_criterion_ci",
    "smoothness_codim_report", "fermat_plane_ideals", "is_smooth",
]
