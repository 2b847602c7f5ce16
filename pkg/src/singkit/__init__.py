"""singkit: exact local algebra for hypersurface singularities."""

__version__ = "0.1.0"

from .numbers import QQ, NumberField, RadicalAlgebra, mpq  # noqa: E402
from .polynomial import Ideal, PolyRing, jacobian_ideal, tjurina_ideal  # noqa: E402
from .local_algebra import (LocalAlgebra, milnor_number, minimal_embedding,  # noqa: E402
                            tjurina_number)
from .standard_basis import standard_basis  # noqa: E402

__all__ = ["QQ", "NumberField", "RadicalAlgebra", "mpq", "Ideal", "PolyRing", "jacobian_ideal",
           "tjurina_ideal", "LocalAlgebra", "milnor_number", "tjurina_number", "minimal_embedding",
           "standard_basis", "__version__"]
