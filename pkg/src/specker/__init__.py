"""Boolean powers of commutative rings, computed exactly on finite instances."""

from .boolean_algebra import BAElement, BoolHom, FiniteBooleanAlgebra, coproduct, enumerate_homs
from .core import (
    FosterFunction,
    OrthogonalForm,
    SpeckerAlgebra,
    SpeckerElement,
    from_pointwise,
    normalize,
    to_pointwise,
)
from .errors import SpeckerError
from .functors import AlgebraHom, enumerate_algebra_homs, equivalence_report, ump_lift
from .rings import QQ, ZZ, Integers, Modular, Product, Rationals, classify

__all__ = [
    "BAElement",
    "BoolHom",
    "FiniteBooleanAlgebra",
    "coproduct",
    "enumerate_homs",
    "FosterFunction",
    "OrthogonalForm",
    "SpeckerAlgebra",
    "SpeckerElement",
    "from_pointwise",
    "normalize",
    "to_pointwise",
    "SpeckerError",
    "AlgebraHom",
    "enumerate_algebra_homs",
    "equivalence_report",
    "ump_lift",
    "QQ",
    "ZZ",
    "Integers",
    "Modular",
    "Product",
    "Rationals",
    "classify",
]
