"""Numeric checks on filtration certificates and related slope bookkeeping.

A certificate records, for a sequence of covers ``f_m``, the degree of the
cover and the H-degrees of the line-bundle quotients of a full filtration of
``f_m^* E``. All values are exact rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple


class CertificateError(ValueError):
    """Malformed or inconsistent certificate data."""


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"`` (or an integer). Decimal notation is refused."""
    if isinstance(value, bool):
        raise CertificateError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise CertificateError(f"rationals must be written as p/q, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise CertificateError(f"bad rational {value!r}: {exc}") from None
    raise CertificateError(f"not a rational: {value!r}")


def format_rational(x) -> str:
    return str(Fraction(x))


def gap_threshold(r: int) -> Fraction:
    """Minimal slope excess of a destabilising subsheaf on a curve: 1/(r(r-1))."""
    return Fraction(1, r * (r - 1))


@dataclass(frozen=True)
class CertificateEntry:
    deg_f: Fraction
    qdeg: Tuple[Fraction, ...]
    m: int


@dataclass(frozen=True)
class FiltrationCertificate:
    r: int
    d: int
    mu: Fraction
    entries: Tuple[CertificateEntry, ...]

    def __post_init__(self):
        if self.r < 2:
            raise CertificateError(f"rank must be at least 2, got {self.r}")
        if self.d < 1:
            raise CertificateError(f"dimension must be positive, got {self.d}")
        for k, entry in enumerate(self.entries):
            if len(entry.qdeg) != self.r:
                raise CertificateError(
                    f"entry {k}: expected {self.r} quotient degrees, got {len(entry.qdeg)}")
            if entry.deg_f <= 0:
                raise CertificateError(f"entry {k}: deg_f must be positive, got {entry.deg_f}")
            if sum(entry.qdeg) != entry.deg_f * self.r * self.mu:
                raise CertificateError(
                    f"entry {k}: quotient degrees sum to {sum(entry.qdeg)}, "
                    f"expected deg_f * r * mu = {entry.deg_f * self.r * self.mu}")
        ms = [e.m for e in self.entries]
        if any(m < 1 for m in ms) or ms != sorted(set(ms)):
            raise CertificateError("entry indices m must be positive and strictly increasing")

    @classmethod
    def build(cls, r: int, d: int, mu, entries: Sequence[Tuple[object, Sequence[object]]],
              ms: Optional[Sequence[int]] = None) -> "FiltrationCertificate":
        ms = list(ms) if ms is not None else list(range(1, len(entries) + 1))
        return cls(r, d, parse_rational(mu), tuple(
            CertificateEntry(parse_rational(deg), tuple(parse_rational(q) for q in qs), m)
            for (deg, qs), m in zip(entries, ms)))

    @classmethod
    def from_dict(cls, data: Dict) -> "FiltrationCertificate":
        try:
            r, d, mu, raw = data["r"], data["d"], data["mu"], data["entries"]
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"missing certificate field: {exc}") from None
        if not isinstance(r, int) or not isinstance(d, int):
            raise CertificateError("r and d must be integers")
        if not isinstance(raw, list):
            raise CertificateError("entries must be a list")
        entries, ms = [], []
        for k, item in enumerate(raw):
            if not isinstance(item, dict) or "deg_f" not in item or "qdeg" not in item:
                raise CertificateError(f"entry {k} needs deg_f and qdeg")
            if not isinstance(item["qdeg"], list):
                raise CertificateError(f"entry {k}: qdeg must be a list")
            entries.append((item["deg_f"], item["qdeg"]))
            ms.append(item.get("m", k + 1))
        return cls.build(r, d, mu, entries, ms)

    @classmethod
    def from_json(cls, text: str) -> "FiltrationCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"malformed JSON: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> Dict:
        return {
            "r": self.r,
            "d": self.d,
            "mu": format_rational(self.mu),
            "entries": [{"m": e.m, "deg_f": format_rational(e.deg_f),
                         "qdeg": [format_rational(q) for q in e.qdeg]}
                        for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class LimitVerdict:
    holds: bool
    gaps: Tuple[Fraction, ...]
    constant: Optional[Fraction]
    violating_index: Optional[int] = None
    reason: str = ""


def check_limit_hypothesis(cert: FiltrationCertificate) -> LimitVerdict:
    """Check ``0 <= max_i qdeg_i / deg_f - mu <= C / m`` on every entry.

    ``C`` is fitted on the first entry and must bound all later ones, so a
    sequence that does not decay at least like ``1/m`` is refused.
    """
    if not cert.entries:
        raise CertificateError("certificate has no entries")
    gaps = tuple(max(e.qdeg) / e.deg_f - cert.mu for e in cert.entries)
    for k, g in enumerate(gaps):
        if g < 0:
            return LimitVerdict(False, gaps, None, k,
                                "largest quotient slope below mu: inconsistent data")
    first = cert.entries[0]
    C = gaps[0] * first.m
    for k, (g, e) in enumerate(zip(gaps, cert.entries)):
        if g * e.m > C:
            return LimitVerdict(False, gaps, C, k, f"gap {g} exceeds {C}/{e.m}")
    return LimitVerdict(True, gaps, C)


@dataclass(frozen=True)
class GapVerdict:
    epsilon: Fraction
    threshold: Fraction
    accepted: bool


def gap_check(epsilon, r: int) -> GapVerdict:
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if r < 2:
        raise ValueError("rank must be at least 2")
    threshold = gap_threshold(r)
    return GapVerdict(epsilon, threshold, epsilon < threshold)


@dataclass(frozen=True)
class FormalClass:
    """Rational combination of ``c_1(A)`` and ``c_1(E)``."""

    c1A: Fraction = Fraction(0)
    c1E: Fraction = Fraction(0)

    def __add__(self, other: "FormalClass") -> "FormalClass":
        return FormalClass(self.c1A + other.c1A, self.c1E + other.c1E)

    def is_zero(self) -> bool:
        return self.c1A == 0 and self.c1E == 0


def compose_cover(a, s: int, r: int) -> FormalClass:
    """Class of ``c_1(S (x) M)`` per unit degree after untwisting a Bloch-Gieseker cover."""
    if not 1 <= s <= r:
        raise ValueError(f"need 1 <= s <= r, got s={s}, r={r}")
    return FormalClass(parse_rational(a), Fraction(s, r))


def frobenius_scale(cert: FiltrationCertificate, p: int, n: int) -> FiltrationCertificate:
    """Certificate for ``(F^n)^* E``: every line-bundle degree gets multiplied by ``p^n``."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = p ** n
    return FiltrationCertificate(
        cert.r, cert.d, cert.mu * k,
        tuple(CertificateEntry(e.deg_f, tuple(q * k for q in e.qdeg), e.m)
              for e in cert.entries))


@dataclass(frozen=True)
class SurfaceInvariants:
    c1: Fraction  # coefficient of L
    c2: Fraction
    discriminant: Fraction
    numerically_flat: bool
    violations: Tuple[str, ...] = field(default_factory=tuple)


def example_surface_invariants(L_sq, L_dot_H) -> SurfaceInvariants:
    """Chern data of ``L + L^{-1}`` on a surface, given ``L^2`` and ``L.H``."""
    L_sq = parse_rational(L_sq)
    L_dot_H = parse_rational(L_dot_H)
    r = 2
    c1 = Fraction(0)  # L + (-L)
    c2 = -L_sq  # c(L + L^-1) = (1 + L)(1 - L)
    disc = 2 * r * c2 - (r - 1) * c1 * c1
    violations: List[str] = []
    if L_dot_H != 0:
        violations.append("L.H != 0")
    if L_sq == 0:
        violations.append("L^2 == 0")
    # L.H = 0 forces L^2 <= 0 (Hodge index), with equality only for L == 0
    if L_dot_H == 0 and L_sq > 0:
        violations.append("Hodge index: L.H = 0 but L^2 > 0")
    flat = L_sq == 0 and L_dot_H == 0
    return SurfaceInvariants(c1, c2, disc, flat, tuple(violations))
