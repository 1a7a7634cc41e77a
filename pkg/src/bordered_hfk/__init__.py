"""Combinatorial knot Floer homology computed by folding bordered bimodules.

Submodules:

* :mod:`.algebra` - the boundary algebras C(n)
* :mod:`.dstructures` - curved type D structures, DA bimodules, box products
* :mod:`.bimodules` - caps, crossing, minimum and identity bimodules
* :mod:`.kauffman` - Kauffman state enumeration and gluing
* :mod:`.knots` - presentations: parsing, validation, normalization, built-ins
* :mod:`.engine` - assembly and hat homology; :mod:`.cli` wraps it
"""

from .algebra import (
    AlgebraElement,
    LocalState,
    Matching,
    algebra,
    local_state,
    matching,
    plat_matching,
    transfer_vector,
)
from .dstructures import DABimodule, DStructure, box_da_d, box_da_da, verify_d_structure, verify_da_bimodule
from .bimodules import (
    maxima_d_structure,
    minimum_bimodule,
    minimum_context,
    negative_crossing,
    positive_crossing,
    trivial_bimodule,
)
from .engine import compute, hat_matrix, hat_rank
from .kernels import BACKEND
from .knots import SlicePresentation, builtin, builtin_names, normalize, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "LocalState", "Matching", "algebra", "local_state", "matching",
    "plat_matching", "transfer_vector", "DABimodule", "DStructure", "box_da_d", "box_da_da",
    "verify_d_structure", "verify_da_bimodule", "maxima_d_structure", "minimum_bimodule",
    "minimum_context", "negative_crossing", "positive_crossing", "trivial_bimodule",
    "compute", "hat_matrix", "hat_rank", "BACKEND", "SlicePresentation", "builtin",
    "builtin_names", "normalize", "parse", "serialize",
]
