"""ruminalg: exact Rumin-complex calculator on Heisenberg models.

Polynomial-coefficient differential forms on H^{2n+1} with exact rational
arithmetic, the contact-invariant operator gamma and projection pi onto the
Rumin subcomplex, the closed-form transferred products m1/m2/m3 and morphism
f1/f2, a generic homotopy-transfer engine with full relation checking, and
exact cohomology of finite graded algebras.
"""

from ._version import __version__
from .errors import ConstructionError, DimensionError, DomainError
from .forms import (
    ContactModel,
    Form,
    exterior_d,
    is_vertical,
    lefschetz,
    lefschetz_power_matrix,
    random_form,
    wedge,
)
from .poly import Poly, kernel_name
from .rumin import (
    RuminElement,
    certify,
    f1,
    f2,
    gamma,
    gamma_invariance_check,
    in_rumin,
    is_primitive,
    m1,
    m2,
    m3,
    pi,
)

__all__ = [
    "__version__",
    "ConstructionError",
    "DimensionError",
    "DomainError",
    "ContactModel",
    "Form",
    "Poly",
    "RuminElement",
    "certify",
    "exterior_d",
    "f1",
    "f2",
    "gamma",
    "gamma_invariance_check",
    "in_rumin",
    "is_primitive",
    "is_vertical",
    "kernel_name",
    "lefschetz",
    "lefschetz_power_matrix",
    "m1",
    "m2",
    "m3",
    "pi",
    "random_form",
    "wedge",
]
