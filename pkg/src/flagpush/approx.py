"""Degrees and slope ratios of complete-intersection covers of flag bundles.

A cover ``f_m: X_m -> X`` is cut out of ``Flag(E)`` by ``C(r,2)`` sections of
``L = n * (sum_s m * m_s tau_s + (r - 1) a)``. Everything is computed with
``e_1 = 0`` imposed at the very end.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .gysin import (RootContext, dd_pushforward, gr_pushforward,
                    plucker_class, tower_pushforward)
from .polyring import MultiPoly, Rational, normalize


class DegenerateConfigurationError(ZeroDivisionError):
    """The cover has degree zero, so slope ratios are undefined."""


@functools.lru_cache(maxsize=None)
def context(r: int) -> RootContext:
    return RootContext(r)


@dataclass(frozen=True)
class WeightVector:
    r: int
    m_weights: Tuple[int, ...]
    n: int = 1
    m_scale: int = 1

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("rank must be at least 2")
        if len(self.m_weights) != self.r - 1:
            raise ValueError(f"need {self.r - 1} weights, got {len(self.m_weights)}")
        if any(w < 0 for w in self.m_weights) or not any(self.m_weights):
            raise ValueError("weights must be nonnegative and not all zero")
        if self.n < 1 or self.m_scale < 1:
            raise ValueError("n and m_scale must be positive")

    @classmethod
    def ones(cls, r: int, m_scale: int = 1, n: int = 1) -> "WeightVector":
        return cls(r, (1,) * (r - 1), n, m_scale)

    @classmethod
    def literal(cls, r: int, m_scale: int = 1, n: int = 1) -> "WeightVector":
        """Only the first weight is nonzero."""
        return cls(r, (1,) + (0,) * (r - 2), n, m_scale)

    def rescaled(self, m_scale: int, n: int) -> "WeightVector":
        return WeightVector(self.r, self.m_weights, n, m_scale)

    @property
    def label(self) -> str:
        if all(w == 1 for w in self.m_weights):
            return "ones"
        if self.m_weights[0] == 1 and not any(self.m_weights[1:]):
            return "literal"
        return "(" + ",".join(map(str, self.m_weights)) + ")"


def weighted_tau_sum(ctx: RootContext, weights: Sequence[int]) -> MultiPoly:
    out = MultiPoly.zero(ctx.n_tower)
    for s, w in enumerate(weights, start=1):
        if w:
            out = out + ctx.tau(s).scale(w)
    return out


def _constant_at_zero_c1(cls) -> Rational:
    v = cls.at_zero_c1()
    if not v.is_constant():
        raise ValueError(f"expected a number after e1 = 0, got {cls.to_text()}")
    return v.constant_term()


def weighted_degree(w: WeightVector) -> Rational:
    """``pi_*(sum m_s tau_s)^{C(r,2)}`` with ``e_1 = 0``."""
    ctx = context(w.r)
    top = weighted_tau_sum(ctx, w.m_weights) ** ctx.fiber_dim
    return _constant_at_zero_c1(tower_pushforward(top, ctx))


def quotient_coefficients(w: WeightVector) -> List[Rational]:
    """``kappa_i = (r-1) C(r,2) pi_*((sum m_s tau_s)^{C(r,2)-1} y_i)`` for i = 1..r."""
    ctx = context(w.r)
    N = ctx.fiber_dim
    base = weighted_tau_sum(ctx, w.m_weights) ** (N - 1)
    factor = (w.r - 1) * N
    return [normalize(factor * _constant_at_zero_c1(
        tower_pushforward(base * ctx.root_in_tower(i), ctx)))
        for i in range(1, w.r + 1)]


def _square_zero_power(p: MultiPoly, k: int, a_index: int) -> MultiPoly:
    out = MultiPoly.constant(p.nvars, 1)
    for _ in range(k):
        out = (out * p).filter_terms(lambda e: e[a_index] <= 1)
    return out


def line_bundle_class(w: WeightVector) -> MultiPoly:
    """``c_1(L_{m,n}) = n (m sum_s m_s tau_s + (r-1) a)`` in the tower ring."""
    ctx = context(w.r)
    return (weighted_tau_sum(ctx, w.m_weights).scale(w.m_scale)
            + ctx.a("tower").scale(w.r - 1)).scale(w.n)


def cover_degree(w: WeightVector) -> Rational:
    """``deg f_m`` computed directly from ``pi_* c_1(L)^{C(r,2)}``."""
    ctx = context(w.r)
    L = line_bundle_class(w)
    pushed = tower_pushforward(_square_zero_power(L, ctx.fiber_dim, ctx.n_tower - 1), ctx)
    return pushed.at_zero_c1().constant_term()


def quotient_pushforwards(w: WeightVector) -> List[Rational]:
    """A^1-coefficients (of ``a``) of ``(f_m)_* c_1(S_i/S_{i-1})`` for i = 1..r."""
    ctx = context(w.r)
    L_top = _square_zero_power(line_bundle_class(w), ctx.fiber_dim, ctx.n_tower - 1)
    out = []
    for i in range(1, w.r + 1):
        pushed = tower_pushforward(L_top * ctx.root_in_tower(i), ctx)
        a_coeff = pushed.a_part().filter_terms(lambda e: e[0] == 0)
        if not a_coeff.is_constant():
            raise ValueError(f"unexpected A^1 class {pushed.to_text()}")
        out.append(a_coeff.constant_term())
    return out


def am_value(r: int, alpha, beta, m_scale: int) -> Fraction:
    """``(r-1) C(r,2) beta / (m alpha)``."""
    if alpha == 0:
        raise DegenerateConfigurationError("alpha = 0: the covers have degree zero")
    return Fraction((r - 1) * comb(r, 2)) * Fraction(beta) / (m_scale * Fraction(alpha))


class CoverDegree(NamedTuple):
    value: Rational
    degenerate: bool


def deg_fm_value(r: int, alpha, m_scale: int, n: int) -> CoverDegree:
    """``(n m)^{C(r,2)} alpha``; zero is flagged as degenerate."""
    value = normalize((n * m_scale) ** comb(r, 2) * Fraction(alpha))
    return CoverDegree(value, value == 0)


def grassmann_ratio(r: int, s: int, m_scale: int, n: int) -> Rational:
    """Coefficient of ``a`` in ``(f_m)_* c_1(Q) / deg f_m`` for the Grassmann cover."""
    if not 1 <= s < r:
        raise ValueError(f"need 1 <= s < r, got s={s}, r={r}")
    ctx = context(r)
    N = s * (r - s)
    xi = plucker_class(ctx, s)
    L = (xi.scale(m_scale) + ctx.a("roots")).scale(n)
    L_top = _square_zero_power(L, N, ctx.n_roots - 1)
    degree = gr_pushforward(L_top, ctx, s).at_zero_c1()
    numerator = gr_pushforward(L_top * xi, ctx, s)
    a_coeff = numerator.a_part().filter_terms(lambda e: e[0] == 0)
    if not degree.is_constant() or not a_coeff.is_constant():
        raise ValueError("Grassmann push-forwards did not reduce to numbers")
    if degree.constant_term() == 0:
        raise DegenerateConfigurationError("Grassmann cover of degree zero")
    return normalize(Fraction(a_coeff.constant_term()) / degree.constant_term())


@dataclass(frozen=True)
class ApproxRow:
    weights: WeightVector
    degree_coefficient: Rational
    kappa: Tuple[Rational, ...]
    ratio: Optional[Tuple[Rational, ...]]
    cover_degree: Rational

    @property
    def degenerate(self) -> bool:
        return self.degree_coefficient == 0


def approx_row(w: WeightVector) -> ApproxRow:
    alpha = weighted_degree(w)
    kappa = tuple(quotient_coefficients(w))
    degree = cover_degree(w)
    ratio = None
    if degree != 0:
        ratio = tuple(normalize(Fraction(q) / degree) for q in quotient_pushforwards(w))
    return ApproxRow(w, alpha, kappa, ratio, degree)


def approx_table(r: int, weights: str, m_values: Sequence[int], n_values: Sequence[int]) -> List[ApproxRow]:
    rows = []
    for n in n_values:
        for m in m_values:
            w = (WeightVector.ones if weights == "ones" else WeightVector.literal)(r, m, n)
            rows.append(approx_row(w))
    return rows


def rows_to_certificate(rows: Sequence[ApproxRow], d: int = 1):
    """Filtration certificate with ``deg_f`` the cover degree and ``qdeg_i = ratio_i * deg_f``.

    The A^1 class is paired with ``H^{d-1}`` as ``a.H^{d-1} = 1`` and ``e_1 = 0``
    gives ``mu = 0``. All rows must share r and n and have distinct m.
    """
    from .certify import FiltrationCertificate
    if not rows:
        raise ValueError("no rows to certify")
    r, n = rows[0].weights.r, rows[0].weights.n
    if any(row.weights.r != r or row.weights.n != n for row in rows):
        raise ValueError("rows must share r and n")
    if any(row.degenerate for row in rows):
        raise DegenerateConfigurationError("degree-zero rows cannot be certified")
    rows = sorted(rows, key=lambda row: row.weights.m_scale)
    return FiltrationCertificate.build(
        r, d, 0, [(row.cover_degree, [q * row.cover_degree for q in row.ratio]) for row in rows],
        [row.weights.m_scale for row in rows])


# -- constants of the flag construction ---------------------------------------

def _t_sum(r: int) -> MultiPoly:
    out = MultiPoly.zero(r - 1)
    for t in MultiPoly.gens(r - 1):
        out = out + t
    return out


def alpha_polynomial(r: int) -> MultiPoly:
    return _t_sum(r) ** comb(r, 2)


def beta_polynomial(r: int, s: int) -> MultiPoly:
    return _t_sum(r) ** (comb(r, 2) - 1) * MultiPoly.variable(r - 1, s - 1)


def push_t_polynomial(f: MultiPoly, r: int) -> Dict[str, object]:
    """Push ``f(xi_1..xi_{r-1})`` with both oracles; returns the two classes."""
    ctx = context(r)
    fx = ctx.embed_t(f)
    return {"tower": tower_pushforward(ctx.xi_to_tower(fx), ctx),
            "dd": dd_pushforward(ctx.xi_to_roots(fx), ctx)}


@dataclass(frozen=True)
class ConstantsRecord:
    r: int
    alpha_by_variant: Dict[str, Rational]
    beta_by_variant: Dict[str, Tuple[Rational, ...]]
    alpha_oracle: Dict[str, Rational]
    beta_oracle: Dict[str, Tuple[Rational, ...]]

    @property
    def oracles_agree(self) -> bool:
        return (len(set(self.alpha_oracle.values())) == 1
                and len(set(self.beta_oracle.values())) == 1)


def constants_record(r: int) -> ConstantsRecord:
    from .gysin import VARIANTS, coefficient_formula
    alpha_f = alpha_polynomial(r)
    betas = [beta_polynomial(r, s) for s in range(1, r)]
    alpha_by_variant = {v: coefficient_formula(alpha_f, r, v).value for v in VARIANTS}
    beta_by_variant = {v: tuple(coefficient_formula(b, r, v).value for b in betas)
                       for v in VARIANTS}
    pushed_alpha = push_t_polynomial(alpha_f, r)
    pushed_betas = [push_t_polynomial(b, r) for b in betas]
    alpha_oracle = {k: _constant_at_zero_c1(c) for k, c in pushed_alpha.items()}
    beta_oracle = {k: tuple(_constant_at_zero_c1(p[k]) for p in pushed_betas)
                   for k in ("tower", "dd")}
    return ConstantsRecord(r, alpha_by_variant, beta_by_variant, alpha_oracle, beta_oracle)
