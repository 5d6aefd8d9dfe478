"""Finite n-ary semigroups: verification, classification, reduction, construction and enumeration."""
from ._accel import BACKEND
from .construct import (
    NAMED_EXAMPLES,
    ConstructionSpec,
    assemble,
    make_cyclic,
    make_direct_sum,
    make_quasitrivial,
    named_example,
    witness_strict_inclusion,
)
from .core import (
    Carrier,
    NaryOp,
    NeutralSet,
    TupleFamily,
    Witness,
    associativity_violation,
    in_class_F,
    in_class_G,
    is_associative,
    is_idempotent,
    is_quasitrivial,
    is_quasitrivial_on,
    neutral_elements,
)
from .enumerate import census, enumerate_nary_exhaustive, enumerate_semigroups, universe
from .errors import (
    CapacityError,
    ConstructionError,
    InputError,
    ParseError,
    PolysemiError,
    PreconditionError,
    PropertyFailure,
    TheoremViolation,
)
from .io import parse_construct, parse_optab, serialize_construct, serialize_optab
from .reduction import (
    conjugating_map,
    extend_binary,
    find_isomorphism,
    iterate_nary,
    reduce,
    reduce_any,
    reduce_idempotent,
    reduce_quasitrivial,
    reduce_via_neutral,
)
from .structure import classify, group_info

__version__ = "0.1.0"
