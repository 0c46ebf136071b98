"""Toroidal dimer models, Mahler measures and determinant densities of biperiodic
alternating links."""

from .errors import (
    ConfigError, ConvergenceError, DimerlabError, GraphFormatError, GraphValidationError,
    PolynomialError, RoundingError, SigningError, SizeCapError,
)
from .kasteleyn import (
    KasteleynSystem, SignCombination, calibrate_signs, char_poly, kasteleyn_signs,
    partition_planar, partition_toroidal,
)
from .laurent import LaurentPoly2, format_poly, lp_det, lp_eval, lp_normalize, parse_poly
from .mahler import MahlerResult, det_density, mahler_1d, mahler_2d
from .oracle import EnumerationReport, enum_dimers, enum_spanning_trees
from .torus import (
    BipartiteTorusGraph, PlanarPatch, ToroidalGraph, builtin, dual, faces, folner_stats,
    load_graph, overlay, parse_torus_graph, patch, quotient,
)
from .treecount import DensityRow, density_sweep, knot_determinant, log_tree_count, tree_count_exact

V_OCT = 3.66386237670887606021
V_TET = 1.01494160640965362502

__version__ = "0.1.0"
