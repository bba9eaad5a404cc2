"""Exact-arithmetic toolkit for the degenerate affine Hecke-Clifford algebra.

Everything is computed over the field Q(i, sqrt(2), sqrt(3), ...) with no
floating point anywhere; identity checks are exact equalities of scalars,
algebra elements, or matrices.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 20240
