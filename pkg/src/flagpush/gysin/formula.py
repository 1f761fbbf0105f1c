"""Coefficient-extraction formulas for the top push-forward.

Three variants are available; none is assumed correct, they are compared
against the push-forward oracles by the audit.

* ``printed-minus``: ``[prod t_i^{r-1}] (f * prod_{i<j} (t_i - t_j))``
* ``plus``: the same with ``prod_{i<j} (t_i + t_j)``
* ``staircase-monomial``: ``[t_1^{r-1} t_2^{r-2} ... t_{r-1}] f``
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Tuple

from ..polyring import Degree, MultiPoly, Rational

VARIANTS = ("printed-minus", "plus", "staircase-monomial")

_FACTORS: Dict[Tuple[int, str], MultiPoly] = {}


class DegreeError(ValueError):
    def __init__(self, degree, expected):
        super().__init__(
            f"coefficient formula needs a homogeneous polynomial of degree "
            f"{expected[0]} or {expected[1]}; got degree {getattr(degree, 'value', degree)}")
        self.degree = degree
        self.expected = expected


@dataclass(frozen=True)
class FormulaResult:
    variant: str
    degree: int
    value: Rational
    # "constant" for degree C(r,2); for C(r,2)+1 the asserted shape of the class
    verdict: str


def _factor(r: int, variant: str) -> MultiPoly:
    key = (r, variant)
    if key not in _FACTORS:
        n = r - 1
        t = MultiPoly.gens(n)
        out = MultiPoly.constant(n, 1)
        if variant in ("printed-minus", "plus"):
            for i in range(n):
                for j in range(i + 1, n):
                    out = out * (t[i] - t[j] if variant == "printed-minus" else t[i] + t[j])
        elif variant != "staircase-monomial":
            raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
        _FACTORS[key] = out
    return _FACTORS[key]


def _target(r: int, variant: str) -> Tuple[int, ...]:
    if variant == "staircase-monomial":
        return tuple(r - i for i in range(1, r))
    return (r - 1,) * (r - 1)


def coefficient_formula(f: MultiPoly, r: int, variant: str = "printed-minus") -> FormulaResult:
    """Evaluate one coefficient-extraction variant on ``f(t_1, ..., t_{r-1})``."""
    if r < 2:
        raise ValueError("rank must be at least 2")
    if f.nvars != r - 1:
        raise ValueError(f"expected a polynomial in t_1..t_{r - 1}, got {f.nvars} variables")
    factor = _factor(r, variant)
    top = comb(r, 2)
    deg = f.homogeneous_degree()
    if deg is Degree.ZERO:
        deg = top  # the zero polynomial is homogeneous of every degree
    if deg not in (top, top + 1):
        raise DegreeError(deg, (top, top + 1))
    value = (f * factor).coefficient(_target(r, variant))
    return FormulaResult(variant, deg, value,
                         "constant" if deg == top else "multiple-of-c1")
