"""dgkoszul: exact computation of Koszul duality data for dg (co)algebras.

Builds convolution algebras, twisting cochains, bar/cobar constructions,
twisted tensor products and Hochschild-type cohomology with its
Gerstenhaber structure, entirely in exact arithmetic over Q or F_p.
"""

from .linalg import QQ, PrimeField, SparseMatrix, field_from_name

__all__ = ["QQ", "PrimeField", "SparseMatrix", "field_from_name"]
