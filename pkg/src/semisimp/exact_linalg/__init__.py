from .fields import (
    CyclotomicField,
    ExactField,
    FieldElem,
    FiniteField,
    GF,
    RationalFunctionField,
    Rationals,
    field_make,
    is_prime,
)

__all__ = [
    "CyclotomicField",
    "ExactField",
    "FieldElem",
    "FiniteField",
    "GF",
    "RationalFunctionField",
    "Rationals",
    "field_make",
    "is_prime",
]
