"""Differential and symbolic powers over the integers.

Polynomial rings over Z and F_p, strong Groebner bases, divided-power
differential operators, p-derivations, graded direct summands with their
splitting, and instance checks of uniform Chevalley containments.
"""

from .errors import AlgebraError
from .groebner import IdealHandle, MonomialOrder, member, normal_form, saturate
from .pderiv import delta, mixed_power_member
from .poly import Domain, Polynomial, Ring, parse
from .summand import SummandSpec, dq_power_member, presentation
from .symbolic import PrimeSpec, symbolic_power, symbolic_power_generators

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "Domain",
    "IdealHandle",
    "MonomialOrder",
    "Polynomial",
    "PrimeSpec",
    "Ring",
    "SummandSpec",
    "delta",
    "dq_power_member",
    "member",
    "mixed_power_member",
    "normal_form",
    "parse",
    "presentation",
    "saturate",
    "symbolic_power",
    "symbolic_power_generators",
]
