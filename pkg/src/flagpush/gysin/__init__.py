"""Push-forwards along Flag(E) -> X and Gr(s, E) -> X."""

from .context import (ConsistencyError, NotSymmetricError, RootContext,
                      SymmetricClass, UnsupportedInput)
from .divdiff import (apply_word, dd_pushforward, divided_difference,
                      gr_pushforward, grassmann_word, plucker_class)
from .formula import VARIANTS, DegreeError, FormulaResult, coefficient_formula
from .perm import reduced_word
from .symmetric import symmetric_reduce
from .tower import segre_class, tower_pushforward

__all__ = [
    "ConsistencyError", "DegreeError", "FormulaResult", "NotSymmetricError",
    "RootContext", "SymmetricClass", "UnsupportedInput", "VARIANTS",
    "apply_word", "dd_pushforward", "divided_difference", "gr_pushforward",
    "grassmann_word", "coefficient_formula", "plucker_class",
    "reduced_word", "segre_class", "symmetric_reduce", "tower_pushforward",
]
