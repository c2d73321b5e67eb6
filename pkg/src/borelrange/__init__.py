"""Exact computation of stable-range constants for classical groups."""

from .errors import (BudgetExceeded, CacheError, DimensionError, InvalidRankError,
                     InvariantError)
from .root_system import (Kind, RootDatum, eps_to_simple, is_dominant,
                          is_dominant_regular, make_root_datum, rho_simple_coeffs,
                          simple_to_eps)
from .stable_range import (HighestWeight, RangeReport, c_big, c_small,
                           fundamental_weights, highest_weight_vector, range_report,
                           sandwich_check, sl_remark_check, weights_of_irrep,
                           witness_non_dominant)
from .weyl import (LengthStratification, WeylElement, apply, compose,
                   enumerate_strata, inversion_length, simple_reflection, word)

__version__ = "0.1.0"
