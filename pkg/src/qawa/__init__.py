"""
Exact arithmetic in quantum affine wreath algebras ``H_n^aff(A, z)``, their
finite parts ``H_n(A, z)`` and cyclotomic quotients ``H_n^f(A, z)`` over a
finite-dimensional symmetric superalgebra ``A``.

All scalars are :class:`fractions.Fraction`; nothing is floating point.
"""

from .affine import AffineAlgebra, AffineElement, GeneratorTag, SymmetryError
from .combinatorics import parse_scalar
from .cyclotomic import CyclotomicAlgebra, CyclotomicElement, CyclotomicPoly, load_f, parse_f_json
from .expressions import evaluate
from .laurent import LaurentElement, demazure, twisted_demazure, x_monomial
from .superalgebra import (
    PRESETS, SpecError, SymmetricSuperalgebra, TensorElement, load_spec, preset, teleporter,
)

__all__ = [
    "AffineAlgebra", "AffineElement", "GeneratorTag", "SymmetryError",
    "CyclotomicAlgebra", "CyclotomicElement", "CyclotomicPoly", "load_f", "parse_f_json",
    "LaurentElement", "demazure", "twisted_demazure", "x_monomial",
    "PRESETS", "SpecError", "SymmetricSuperalgebra", "TensorElement", "load_spec", "preset",
    "teleporter", "evaluate", "parse_scalar",
]
