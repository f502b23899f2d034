"""linesing: exact linear algebra for perverse sheaves on a line and
Le-number invariants of polynomial line singularities."""

from .fields import QQ, PrimeField, field_from_tag
from .linalg import (Matrix, Subspace, image_basis, induced_on_quotient,
                     kernel_basis, rank, restrict_to_invariant,
                     subspace_contains)

__all__ = [
    "QQ", "PrimeField", "field_from_tag",
    "Matrix", "Subspace", "rank", "kernel_basis", "image_basis",
    "subspace_contains", "restrict_to_invariant", "induced_on_quotient",
]
