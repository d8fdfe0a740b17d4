"""Exact computations with s-homogeneous algebras and their two-relation classification."""

from .classify import (ClassificationOutcome, classify_two_relations, construct_condition_algebra,
                       nkoz_coefficient)
from .duality import s_dual, tensor_power_degree1, veronese_bimodule, veronese_ring
from .errors import InputError, MathError, ShomogError
from .freealg import GeneratorSet, NcPolynomial, Presentation, format_poly, parse_poly
from .groebner import normal_form, truncated_groebner
from .hilbert import RationalSeries, Series, count_normal_words, expand_rational
from .koszul import koszulity_verdict
from .linalg import GF, QQ, Field
from .potential import gen_potential_diag, gen_potential_jordan, potential_exclusion_check
from .quadclass import classify_quadratic

__version__ = "0.1.0"
