from .groups import (
    ConnectionSetError,
    Element,
    GroupSpec,
    IdentityInSet,
    InvalidElement,
    NotGenerating,
    NotInverseClosed,
    UnsupportedValency,
    element_order,
    generated_subgroup,
    in_cyclic_subgroup,
    is_involution,
    multiple_of,
    normalize_connection,
    validate_connection_set,
)
from .classify import StructureClass, classify, verify_certificate

__all__ = [
    "ConnectionSetError",
    "Element",
    "GroupSpec",
    "IdentityInSet",
    "InvalidElement",
    "NotGenerating",
    "NotInverseClosed",
    "StructureClass",
    "UnsupportedValency",
    "classify",
    "element_order",
    "generated_subgroup",
    "in_cyclic_subgroup",
    "is_involution",
    "multiple_of",
    "normalize_connection",
    "validate_connection_set",
    "verify_certificate",
]
