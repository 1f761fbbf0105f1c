"""Rewriting symmetric polynomials in the elementary symmetric basis."""

from __future__ import annotations

from typing import Dict, Tuple

from ..polyring import MultiPoly
from .context import NotSymmetricError, RootContext


def check_symmetric(p: MultiPoly, ctx: RootContext) -> None:
    for i in range(ctx.r - 1):
        if p.swap(i, i + 1) != p:
            raise NotSymmetricError(
                f"not symmetric under y{i + 1} <-> y{i + 2}", transposition=i + 1)


def _elementary_product(ctx: RootContext, gaps: Tuple[int, ...]) -> MultiPoly:
    key = ("eprod", gaps)
    memo = ctx._memo
    if key not in memo:
        out = MultiPoly.constant(ctx.n_roots, 1)
        for i, g in enumerate(gaps, start=1):
            if g:
                pkey = ("epow", i, g)
                if pkey not in memo:
                    memo[pkey] = ctx.elementary_in_roots(i) ** g
                out = out * memo[pkey]
        memo[key] = out
    return memo[key]


def symmetric_reduce(p: MultiPoly, ctx: RootContext) -> MultiPoly:
    """Express a y-symmetric polynomial of the roots ring in the base ring.

    The e and a variables of the roots ring ride along as scalars; the result
    merges both sources of ``e_i`` into the base ring ``e_1..e_r, a``.
    """
    r = ctx.r
    if p.nvars != ctx.n_roots:
        raise ValueError(f"expected a roots-ring polynomial ({ctx.n_roots} variables)")
    check_symmetric(p, ctx)

    # group by scalar part
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for exp, c in p.terms.items():
        groups.setdefault(exp[r:], {})[exp[:r]] = c

    out = MultiPoly.zero(ctx.n_base)
    for scalar, yterms in groups.items():
        rest = MultiPoly(ctx.n_roots, {y + (0,) * (r + 1): c for y, c in yterms.items()})
        reduced: Dict[Tuple[int, ...], object] = {}
        while rest:
            lead = max(rest.terms)  # lex order on y_1 > y_2 > ...
            lam = lead[:r]
            if any(lam[i] < lam[i + 1] for i in range(r - 1)):
                raise NotSymmetricError(f"leading exponent {lam} is not a partition")
            gaps = tuple(lam[i] - (lam[i + 1] if i + 1 < r else 0) for i in range(r))
            c = rest.coefficient(lead)
            rest = rest - _elementary_product(ctx, gaps).scale(c)
            reduced[gaps] = reduced.get(gaps, 0) + c
        for gaps, c in reduced.items():
            exp = tuple(g + s for g, s in zip(gaps, scalar[:r])) + (scalar[r],)
            out = out + MultiPoly.monomial(exp, c)
    return out
