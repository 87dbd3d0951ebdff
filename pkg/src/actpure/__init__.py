"""Finite monoid acts: purity, pure closures, act classes and preenvelopes."""

from .classes import (
    ActClass,
    InclusionInstance,
    check_class_closure,
    class_contains,
    cyclic_acts,
    is_relatively_injective,
    right_ideal_acts,
)
from .core import (
    Act,
    ActHom,
    Monoid,
    SubactHandle,
    enumerate_homs,
    generated_subact,
    is_isomorphic,
    product_act,
    trivial_act,
    validate_act,
    validate_monoid,
)
from .enumeration import build_catalog, enumerate_acts, enumerate_extensions, enumerate_monoids, enumerate_subacts
from .equations import ConstTerm, EquationSystem, VarTerm, diagram_system, solve_system
from .kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .preenvelope import (
    extract_retraction,
    find_min_preenvelope,
    product_preenvelope,
    reduce_via_pure_closure,
    verify_envelope,
    verify_preenvelope,
)
from .purity import (
    PurityVerdict,
    is_pure,
    is_pure_bounded,
    is_pure_via_diagram,
    minimal_pure_superact_oracle,
    pure_closure,
    purity_witness,
)

__version__ = "0.1.0"
