"""Exact branched continued fractions: path-sum polynomials, production
matrices, closed-form families, hypergeometric ratios and total positivity
certificates."""

from .bcf import (Triangle, compute_partial, compute_sequence, compute_triangle,
                  embed_weights, euler_gauss_verify, validate_good_set)
from .errors import *  # noqa: F401,F403
from .exactalg import MPoly, PolyMatrix, SeriesTrunc, poly, var
from .hyper import HyperParams, contiguous_verify, hyper_series, ratio_verify, ratio_weights
from .prodmat import ProductionSpec, build_production, contract, output_matrix
from .totalpos import TPReport, check_tp, check_tp_numeric, hankel_matrix
from .weights import WeightSystem, generic_J, generic_S, generic_T
from .weightspec import parse_weight_spec

__version__ = "0.1.0"
