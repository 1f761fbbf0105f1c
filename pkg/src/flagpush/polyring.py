"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is a mapping from exponent tuples to nonzero rationals.
Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise, which keeps the common integer case fast.

    >>> t1, t2 = MultiPoly.gens(2)
    >>> (t1 + t2) * (t1 - t2) == t1**2 - t2**2
    True
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Exponent = Tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class Degree(enum.Enum):
    ZERO = "zero"
    INHOMOGENEOUS = "inhomogeneous"


def normalize(c) -> Rational:
    """Coerce to int/Fraction, collapsing integral fractions to int."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and friends
        return int(c)
    if isinstance(c, str):
        return normalize(Fraction(c))
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return normalize(Fraction(c))


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` indeterminates."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Union[Mapping, Iterable]] = None):
        if nvars < 0:
            raise DimensionError("number of variables must be nonnegative")
        self.nvars = nvars
        acc: Dict[Exponent, Rational] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, c in items:
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise DimensionError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = normalize(c)
                if c:
                    s = acc.get(exp, 0) + c
                    if s:
                        acc[exp] = normalize(s)
                    else:
                        acc.pop(exp, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: Dict[Exponent, Rational]) -> "MultiPoly":
        # trusted constructor: terms already normalized and zero-free
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = normalize(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._wrap(nvars, {tuple(exp): 1})

    @classmethod
    def gens(cls, nvars: int):
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Rational]:
        """A copy of the term dictionary."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Rational]]:
        """Terms in canonical (descending graded-lex) order."""
        for exp in sorted(self._terms, key=_grlex_key, reverse=True):
            yield exp, self._terms[exp]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = normalize(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_text()!r})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for exp, c in small.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = normalize(s)
            else:
                out.pop(exp, None)
        return MultiPoly._wrap(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = normalize(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._wrap(self.nvars, {e: normalize(v * c) for e, v in self._terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        other = self._coerce(other)
        out: Dict[Exponent, Rational] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._wrap(
            self.nvars, {e: normalize(c) for e, c in out.items() if c})

    def __rmul__(self, other) -> "MultiPoly":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- queries ----------------------------------------------------------

    def coefficient(self, monomial: Sequence[int]) -> Rational:
        monomial = tuple(monomial)
        if len(monomial) != self.nvars:
            raise DimensionError(
                f"monomial of length {len(monomial)} in a ring of {self.nvars} variables")
        return self._terms.get(monomial, 0)

    def homogeneous_degree(self, weights: Optional[Sequence[int]] = None):
        """Common (weighted) degree of all terms.

        Returns :attr:`Degree.ZERO` for the zero polynomial and
        :attr:`Degree.INHOMOGENEOUS` when the terms disagree.
        """
        if not self._terms:
            return Degree.ZERO
        if weights is None:
            weights = (1,) * self.nvars
        degs = {sum(w * e for w, e in zip(weights, exp)) for exp in self._terms}
        if len(degs) != 1:
            return Degree.INHOMOGENEOUS
        return degs.pop()

    def degree_in(self, i: int) -> int:
        """Largest exponent of variable ``i`` (-1 for the zero polynomial)."""
        return max((exp[i] for exp in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_term(self) -> Rational:
        return self._terms.get((0,) * self.nvars, 0)

    # -- transformations --------------------------------------------------

    def swap(self, i: int, j: int) -> "MultiPoly":
        """Exchange variables ``i`` and ``j``."""
        if i == j:
            raise ValueError("transposition needs two distinct indices")
        for k in (i, j):
            if not 0 <= k < self.nvars:
                raise IndexError(f"variable index {k} out of range for {self.nvars} variables")
        out = {}
        for exp, c in self._terms.items():
            e = list(exp)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MultiPoly._wrap(self.nvars, out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: variable ``k`` is replaced by ``images[k]``.

        All images must share one target ring; powers are cached per variable.
        """
        if len(images) != self.nvars:
            raise ValueError(
                f"assignment covers {len(images)} of {self.nvars} variables")
        if not images:
            return MultiPoly(0, self._terms)
        target = images[0].nvars
        if any(im.nvars != target for im in images):
            raise DimensionError("substitution images live in different rings")
        powers = [{0: MultiPoly.constant(target, 1), 1: im} for im in images]

        def power(k, e):
            cache = powers[k]
            if e not in cache:
                cache[e] = power(k, e - 1) * images[k]
            return cache[e]

        out = MultiPoly.zero(target)
        for exp, c in self._terms.items():
            term = MultiPoly.constant(target, c)
            for k, e in enumerate(exp):
                if e:
                    term = term * power(k, e)
            out = out + term
        return out

    def map_exponents(self, nvars: int, fn) -> "MultiPoly":
        """Re-index terms through ``fn(exp) -> new exp`` (collisions are summed)."""
        return MultiPoly(nvars, ((fn(exp), c) for exp, c in self._terms.items()))

    def filter_terms(self, pred) -> "MultiPoly":
        return MultiPoly._wrap(self.nvars, {e: c for e, c in self._terms.items() if pred(e)})

    # -- text form --------------------------------------------------------

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        """Canonical text: ``c * x1^a1*x2^a2`` terms in descending grlex order."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                names[k] if e == 1 else f"{names[k]}^{e}"
                for k, e in enumerate(exp) if e)
            sign = "-" if c < 0 else "+"
            body = str(abs(c)) + (f" * {mono}" if mono else "")
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def coefficient_of(p: MultiPoly, monomial: Sequence[int]) -> Rational:
    return p.coefficient(monomial)


def homogeneous_degree(p: MultiPoly, weights: Optional[Sequence[int]] = None):
    return p.homogeneous_degree(weights)


def apply_transposition(p: MultiPoly, i: int, j: int) -> MultiPoly:
    return p.swap(i, j)


def substitute(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    return p.substitute(images)


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if p.nvars != q.nvars:
        raise DimensionError(f"{p.nvars} vs {q.nvars} variables")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")
