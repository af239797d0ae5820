"""Determinant-method hypersurface covers of rational points of bounded height."""

from .cover import run_cover, verify_cover
from .detmethod import certify_padic_divisibility, evaluation_matrix, fd_basis, find_hypersurface
from .enumeration import enumerate_points, regular_points
from .exactla import IntMatrix, determinant, kernel_basis, p_valuation, rank
from .heights import ProjectivePoint, canonicalize, height, height_le
from .polyform import Form, eval_form, parse_form, reduce_form
from .residue import Q_value, hs_function, q_value, reduce_point, residue_classes
from .variety import Variety, ideal_contains, is_regular_point, make_variety, projective_space

__version__ = "0.1.0"
