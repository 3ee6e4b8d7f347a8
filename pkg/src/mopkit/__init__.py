"""Exact averages of characteristic polynomials for multiple orthogonal
polynomial ensembles on discrete measures."""

from .averages import (avg_balanced, avg_char, avg_general, avg_inv_char, avg_inv_products,
                       avg_products, avg_ratio, char_poly_coeffs, corollary_scalar_relation)
from .errors import *  # noqa: F401,F403
from .kernels import kernel_rh, kernel_scalar, kernel_schur, matrix_L, matrix_R
from .linalg import EXACT, ComplexFloat, ExactRational, det, schur_complement, solve
from .measures import (DiscreteMeasure, GeneralWeightMatrix, Polynomial, Weight, WeightMatrix,
                       WeightSystem, modified_weight, quadrature_preset)
from .mop import (EnsembleSpec, MultiIndexPair, PolyVector, RHBlocks, biorthogonal_bases, block_hankel,
                  chain_indices, dual_spec, is_normal, rh_blocks, rh_inverse, vector_op_type1,
                  vector_op_type2)
from .oracles import cauchy_vandermonde, normalization_Z, oracle_andreief, oracle_enumerate
from .transforms import (TransformReport, certify, christoffel_Y11, mixed_christoffel_Y11,
                         mixed_uvarov_blocks, partial_fractions, uvarov_Y21, uvarov_Y22)

__version__ = "0.1.0"
