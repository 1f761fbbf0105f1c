"""Variable dictionaries for the full flag bundle of a rank-r bundle.

Four polynomial rings are used, all sharing the trailing block ``e_1..e_r, a``:

* roots:  ``y_1..y_r, e_1..e_r, a`` with ``y_j = c_1(S_j/S_{j-1})``
* tower:  ``h_1..h_{r-1}, e_1..e_r, a`` with ``h_k = y_{r-k+1}``
* xi:     ``xi_1..xi_{r-1}, e_1..e_r, a`` with ``xi_i = -y_{r-i}``
* base:   ``e_1..e_r, a`` -- classes pulled back from X

``a`` is the first Chern class of the ample twist and squares to zero;
``e_i`` are the Chern classes of E.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional

from ..polyring import Degree, MultiPoly, Rational


class UnsupportedInput(ValueError):
    """Input outside the supported class (e.g. a-degree above 1)."""


class NotSymmetricError(ValueError):
    def __init__(self, message: str, transposition: Optional[int] = None):
        super().__init__(message)
        self.transposition = transposition


class ConsistencyError(RuntimeError):
    """Two independent computations disagree; results cannot be trusted."""


@dataclass(eq=False)
class RootContext:
    r: int
    _memo: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError(f"rank must be an integer >= 2, got {self.r!r}")

    # -- ring layouts -----------------------------------------------------

    @property
    def fiber_dim(self) -> int:
        return comb(self.r, 2)

    @property
    def n_tower(self) -> int:
        return 2 * self.r

    n_xi = n_tower

    @property
    def n_roots(self) -> int:
        return 2 * self.r + 1

    @property
    def n_base(self) -> int:
        return self.r + 1

    def tower_names(self) -> List[str]:
        r = self.r
        return [f"h{k}" for k in range(1, r)] + [f"e{i}" for i in range(1, r + 1)] + ["a"]

    def xi_names(self) -> List[str]:
        r = self.r
        return [f"t{k}" for k in range(1, r)] + [f"e{i}" for i in range(1, r + 1)] + ["a"]

    def root_names(self) -> List[str]:
        r = self.r
        return [f"y{j}" for j in range(1, r + 1)] + [f"e{i}" for i in range(1, r + 1)] + ["a"]

    def base_names(self) -> List[str]:
        return [f"e{i}" for i in range(1, self.r + 1)] + ["a"]

    def weights(self, ring: str) -> List[int]:
        """Cohomological degrees of the variables of ``ring``."""
        r = self.r
        tail = list(range(1, r + 1)) + [1]
        if ring in ("tower", "xi"):
            return [1] * (r - 1) + tail
        if ring == "roots":
            return [1] * r + tail
        if ring == "base":
            return tail
        raise ValueError(f"unknown ring {ring!r}")

    # -- generators -------------------------------------------------------

    def h(self, k: int) -> MultiPoly:
        self._check(k, 1, self.r - 1, "h")
        return MultiPoly.variable(self.n_tower, k - 1)

    def xi(self, i: int) -> MultiPoly:
        self._check(i, 1, self.r - 1, "xi")
        return MultiPoly.variable(self.n_xi, i - 1)

    def y(self, j: int) -> MultiPoly:
        self._check(j, 1, self.r, "y")
        return MultiPoly.variable(self.n_roots, j - 1)

    def e(self, i: int, ring: str = "base") -> MultiPoly:
        self._check(i, 1, self.r, "e")
        offset = {"tower": self.r - 1, "xi": self.r - 1, "roots": self.r, "base": 0}[ring]
        return MultiPoly.variable(self._size(ring), offset + i - 1)

    def a(self, ring: str = "base") -> MultiPoly:
        return MultiPoly.variable(self._size(ring), self._size(ring) - 1)

    def _size(self, ring: str) -> int:
        return {"tower": self.n_tower, "xi": self.n_xi,
                "roots": self.n_roots, "base": self.n_base}[ring]

    @staticmethod
    def _check(i, lo, hi, name):
        if not lo <= i <= hi:
            raise IndexError(f"{name}_{i} out of range {lo}..{hi}")

    # -- dictionaries -----------------------------------------------------

    def _tail_images(self, ring: str) -> List[MultiPoly]:
        return [self.e(i, ring) for i in range(1, self.r + 1)] + [self.a(ring)]

    def xi_to_roots(self, f: MultiPoly) -> MultiPoly:
        """Apply ``xi_i -> -y_{r-i}``."""
        self._expect(f, self.n_xi)
        images = [-self.y(self.r - i) for i in range(1, self.r)] + self._tail_images("roots")
        return f.substitute(images)

    def roots_to_tower(self, f: MultiPoly) -> MultiPoly:
        """Apply ``y_j -> h_{r-j+1}`` for j >= 2 and ``y_1 -> e_1 - (h_1 + ... + h_{r-1})``."""
        self._expect(f, self.n_roots)
        return f.substitute([self.root_in_tower(j) for j in range(1, self.r + 1)]
                            + self._tail_images("tower"))

    def tower_to_roots(self, f: MultiPoly) -> MultiPoly:
        self._expect(f, self.n_tower)
        images = [self.y(self.r - k + 1) for k in range(1, self.r)] + self._tail_images("roots")
        return f.substitute(images)

    def xi_to_tower(self, f: MultiPoly) -> MultiPoly:
        """``xi_i -> -h_{i+1}`` for i <= r-2 and ``xi_{r-1} -> h_1 + ... + h_{r-1} - e_1``."""
        self._expect(f, self.n_xi)
        images = [-self.root_in_tower(self.r - i) for i in range(1, self.r)]
        return f.substitute(images + self._tail_images("tower"))

    def root_in_tower(self, j: int) -> MultiPoly:
        if j == 1:
            out = self.e(1, "tower")
            for k in range(1, self.r):
                out = out - self.h(k)
            return out
        return self.h(self.r - j + 1)

    def base_to(self, f: MultiPoly, ring: str) -> MultiPoly:
        """Pull a base class back to ``ring``."""
        self._expect(f, self.n_base)
        return f.substitute(self._tail_images(ring))

    def embed_t(self, f: MultiPoly) -> MultiPoly:
        """Embed a polynomial in ``t_1..t_{r-1}`` into the xi ring (``t_i = xi_i``)."""
        self._expect(f, self.r - 1)
        return f.map_exponents(self.n_xi, lambda e: e + (0,) * (self.r + 1))

    def tau(self, s: int, ring: str = "tower") -> MultiPoly:
        """``c_1(Q_s) = y_{r-s+1} + ... + y_r = h_1 + ... + h_s``; ``tau_r = 0``."""
        self._check(s, 1, self.r, "tau")
        if ring == "tower":
            out = MultiPoly.zero(self.n_tower)
            for k in range(1, min(s, self.r - 1) + 1):
                out = out + self.h(k)
            return out if s < self.r else MultiPoly.zero(self.n_tower)
        if ring == "roots":
            if s == self.r:
                return MultiPoly.zero(self.n_roots)
            out = MultiPoly.zero(self.n_roots)
            for j in range(self.r - s + 1, self.r + 1):
                out = out + self.y(j)
            return out
        raise ValueError(f"tau is defined in the tower or roots ring, not {ring!r}")

    def tau_from_xi(self, s: int) -> MultiPoly:
        """The xi-sum ``xi_{r-1} + ... + xi_s`` (equal to ``tau_s`` modulo ``e_1``)."""
        self._check(s, 1, self.r, "tau")
        out = MultiPoly.zero(self.n_xi)
        for i in range(1, self.r - s + 1):
            out = out + self.xi(self.r - i)
        return out

    def elementary_in_roots(self, i: int) -> MultiPoly:
        """``e_i(y_1..y_r)`` written in the roots ring (y variables only)."""
        key = ("elem", i)
        if key not in self._memo:
            r = self.r
            poly = {0: MultiPoly.constant(self.n_roots, 1)}
            # coefficients of prod (1 + y_j T)
            for j in range(1, r + 1):
                new = dict(poly)
                for d, p in poly.items():
                    new[d + 1] = new.get(d + 1, MultiPoly.zero(self.n_roots)) + p * self.y(j)
                poly = new
            for d in range(r + 1):
                self._memo[("elem", d)] = poly.get(d, MultiPoly.zero(self.n_roots))
        return self._memo[key]

    def a_degree(self, f: MultiPoly) -> int:
        return f.degree_in(f.nvars - 1)

    def _expect(self, f: MultiPoly, n: int):
        if f.nvars != n:
            raise ValueError(f"expected a polynomial in {n} variables, got {f.nvars}")

    def total_degree(self, f: MultiPoly, ring: str):
        return f.homogeneous_degree(self.weights(ring))

    def sigma(self) -> int:
        """Orientation sign of the divided-difference push-forward (calibrated)."""
        from .divdiff import calibrate_sigma
        if "sigma" not in self._memo:
            self._memo["sigma"] = calibrate_sigma(self)
        return self._memo["sigma"]


@dataclass(frozen=True)
class SymmetricClass:
    """A push-forward to the base: polynomial in ``e_1..e_r, a``."""

    value: MultiPoly
    fiber_codrop: Optional[int]
    r: int

    def __post_init__(self):
        if self.value.nvars != self.r + 1:
            raise ValueError("value must live in the base ring e_1..e_r, a")
        if self.value.degree_in(self.r) > 1:
            raise ValueError("a-degree of a symmetric class is at most 1")

    def at_zero_c1(self) -> MultiPoly:
        """The value with ``e_1 = 0`` imposed."""
        return self.value.filter_terms(lambda e: e[0] == 0)

    def a_part(self) -> MultiPoly:
        """Coefficient of ``a`` (in the e variables)."""
        r = self.r
        return self.value.filter_terms(lambda e: e[r] == 1).map_exponents(
            r + 1, lambda e: e[:r] + (0,))

    def a_free_part(self) -> MultiPoly:
        return self.value.filter_terms(lambda e: e[self.r] == 0)

    def constant(self) -> Rational:
        if not self.value.is_constant():
            raise ValueError(f"class {self.to_text()} is not a constant")
        return self.value.constant_term()

    def e1_multiple(self) -> Optional[Rational]:
        """``lambda`` if the value equals ``lambda * e_1``, else None."""
        exp = (1,) + (0,) * self.r
        if all(e == exp for e in self.value.terms):
            return self.value.coefficient(exp)
        return None

    def to_text(self) -> str:
        return self.value.to_text([f"e{i}" for i in range(1, self.r + 1)] + ["a"])

    def __eq__(self, other):
        if isinstance(other, SymmetricClass):
            return self.r == other.r and self.value == other.value
        return NotImplemented

    __hash__ = None


def fiber_codrop(ctx: RootContext, f: MultiPoly, ring: str) -> Optional[int]:
    deg = ctx.total_degree(f, ring)
    if deg is Degree.INHOMOGENEOUS:
        return None
    if deg is Degree.ZERO:
        return None
    return deg - ctx.fiber_dim
