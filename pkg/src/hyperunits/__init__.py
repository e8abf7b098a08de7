"""Exact computations with unit groups of group rings.

Hypercentrality of U_1(ZG), enumeration of V(KG) over finite fields,
bounded unit searches in ZG, and hyperbolicity verdicts for V(KG) and
U(KG) in positive characteristic with explicit Z^2 witnesses.
"""

from .coeff import FieldDescriptor, ZZ, RationalFunctionField, ff_make, field_traits
from .groups import FiniteGroup, StructuredGroup, builtin, group_from_table
from .groupring import GroupRingElement, format_element, parse_element, try_invert
from .analysis import (
    InfiniteGroup,
    bounded_unit_search_zg,
    classify_hyperbolic,
    classify_hypercentral_finite,
    classify_hypercentral_structured,
    construct_z2_witness,
    enumerate_v_kg,
    verify_dedekind_conditions,
    verify_z2_witness,
)

__version__ = "0.1.0"
