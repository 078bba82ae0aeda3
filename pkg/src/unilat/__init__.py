"""Exact computations with integral lattices, codes, automorphism types and
cyclotomic ideal lattices."""

from .errors import BudgetExceeded, InputError, LatticeError, ParseError
from .exact import ExactMatrix
from .lattice import Lattice, classify, discriminant_group, dual, lll
from .enumeration import minimum, short_vectors, count_slice
from .codes import LinearCode, construction_a, dual_code, frame_extract, min_weight
from .neighbor import koch_lambda, two_neighbor

__version__ = "0.1.0"
