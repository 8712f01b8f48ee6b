"""Exact linear and quadratic algebra over Q(p) for quantized matrix spaces.

Everything is computed in the rational-function field Q(p) with q = p^(2n),
so fractional powers of q that show up in R-matrices and coproducts stay
inside one commutative field and every identity is checked exactly.
"""

from qreflect.scalars import Scalar, SessionParams, PoleError, ScalarParseError

__all__ = ["Scalar", "SessionParams", "PoleError", "ScalarParseError"]
