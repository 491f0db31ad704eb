"""Contracting self-similar group actions at desk scale.

Build a group from a wreath recursion, run its selfsimilarity complex, and
measure the coarse geometry and boundary dynamics of the shift map on it.
"""

__version__ = "0.1.0"

from .automaton import Action, Element, GeneratorSpec, Nucleus, WreathRecursion
from .complexes import SelfSimilarityComplex
from .groups import (BUILTIN_NAMES, builtin_action, builtin_recursion,
                     load_recursion)
from .params import derive_params

__all__ = [
    "Action",
    "Element",
    "GeneratorSpec",
    "Nucleus",
    "WreathRecursion",
    "SelfSimilarityComplex",
    "BUILTIN_NAMES",
    "builtin_action",
    "builtin_recursion",
    "load_recursion",
    "derive_params",
    "__version__",
]
