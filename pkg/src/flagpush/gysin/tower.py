"""Push-forward along the tower of projective bundles.

``Flag(E) = P(F_{r-2}) -> ... -> P(F_0) = P(E)`` where ``P(F)`` parametrises
rank-one quotients of F, ``h_{k+1} = c_1(O_{P(F_k)}(1))`` and
``F_{k+1} = ker(F_k -> O(1))``. On ``P(F_k)`` (rank ``rho = r - k``)

    sum_i (-1)^i c_i(F_k) h^(rho - i) = 0,    pi_* h^(rho - 1 + j) = s_j(F_k),

with ``s_j = sum_{i=1}^{j} (-1)^(i-1) c_i s_{j-i}``.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..polyring import MultiPoly
from .context import RootContext, SymmetricClass, UnsupportedInput, fiber_codrop


def chern_classes(ctx: RootContext, k: int) -> List[MultiPoly]:
    """``[c_0, ..., c_{r-k}]`` of ``F_k`` in the tower ring."""
    key = ("chern", k)
    memo = ctx._memo
    if key not in memo:
        if k == 0:
            memo[key] = [MultiPoly.constant(ctx.n_tower, 1)] + [
                ctx.e(i, "tower") for i in range(1, ctx.r + 1)]
        else:
            prev = chern_classes(ctx, k - 1)
            minus_h = -ctx.h(k)
            rank = ctx.r - k
            cur = [MultiPoly.constant(ctx.n_tower, 1)]
            # c(F_k) = c(F_{k-1}) / (1 + h_k), truncated at the rank
            for j in range(1, rank + 1):
                cur.append(prev[j] + cur[j - 1] * minus_h)
            memo[key] = cur
    return memo[key]


def segre_class(ctx: RootContext, k: int, j: int) -> MultiPoly:
    key = ("segre", k)
    seq = ctx._memo.setdefault(key, [MultiPoly.constant(ctx.n_tower, 1)])
    c = chern_classes(ctx, k)
    rank = len(c) - 1
    while len(seq) <= j:
        n = len(seq)
        s = MultiPoly.zero(ctx.n_tower)
        for i in range(1, min(n, rank) + 1):
            term = c[i] * seq[n - i]
            s = s + term if i % 2 == 1 else s - term
        seq.append(s)
    return seq[j]


def _push_levels(ctx: RootContext, hexp: Tuple[int, ...]) -> MultiPoly:
    """Push ``h_1^{hexp_0} ... h_{k+1}^{hexp_k}`` through levels k..0; returns a base class."""
    memo = ctx._memo
    key = ("tower", hexp)
    if key in memo:
        return memo[key]
    r = ctx.r
    k = len(hexp) - 1
    if k < 0:
        result = MultiPoly.constant(ctx.n_base, 1)
    else:
        rank = r - k
        j = hexp[k] - (rank - 1)
        result = MultiPoly.zero(ctx.n_base)
        if j >= 0:
            lower = hexp[:k]
            for exp, c in segre_class(ctx, k, j).terms.items():
                h_part = tuple(a + b for a, b in zip(exp[:k], lower))
                e_part = exp[r - 1:2 * r - 1] + (0,)
                below = _push_levels(ctx, h_part)
                if below:
                    result = result + below * MultiPoly.monomial(e_part, c)
    memo[key] = result
    return result


def _check_input(ctx: RootContext, f: MultiPoly, n: int):
    if not isinstance(f, MultiPoly):
        raise TypeError(f"expected a MultiPoly, got {type(f).__name__}")
    if f.nvars != n:
        raise ValueError(f"expected {n} variables, got {f.nvars}")
    if ctx.a_degree(f) > 1:
        raise UnsupportedInput("a-degree above 1 is not supported (a squares to zero)")


def tower_pushforward(f: MultiPoly, ctx: RootContext) -> SymmetricClass:
    """Push a tower-ring polynomial down to the base, one projective bundle at a time."""
    _check_input(ctx, f, ctx.n_tower)
    r = ctx.r
    by_fiber: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for exp, c in f.terms.items():
        by_fiber.setdefault(exp[:r - 1], {})[exp[r - 1:]] = c
    out = MultiPoly.zero(ctx.n_base)
    for hexp, coeffs in by_fiber.items():
        pushed = _push_levels(ctx, hexp)
        if pushed:
            # projection formula: base classes pass through
            out = out + pushed * MultiPoly(ctx.n_base, coeffs)
    return SymmetricClass(out, fiber_codrop(ctx, f, "tower"), r)
