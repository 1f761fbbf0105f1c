"""Divided-difference realisation of the flag and Grassmann push-forwards."""

from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

from ..polyring import MultiPoly
from . import perm
from .context import (ConsistencyError, NotSymmetricError, RootContext,
                      SymmetricClass, UnsupportedInput, fiber_codrop)
from .symmetric import symmetric_reduce


def _exact_divide_by_difference(g: MultiPoly, p: int, q: int) -> MultiPoly:
    """Synthetic division of ``g`` by ``x_p - x_q``; the remainder must vanish.

    ``g`` is viewed as a polynomial in ``x_p`` whose coefficients may involve
    ``x_q``; Horner's scheme divides by the monic linear factor.
    """
    n = g.nvars
    by_power: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for exp, c in g.terms.items():
        rest = list(exp)
        rest[p] = 0
        by_power.setdefault(exp[p], {})[tuple(rest)] = c
    if not by_power:
        return MultiPoly.zero(n)
    top = max(by_power)

    def times_xq(terms):
        out = {}
        for exp, c in terms.items():
            e = list(exp)
            e[q] += 1
            out[tuple(e)] = c
        return out

    quotient: Dict[Tuple[int, ...], object] = {}
    carry: Dict[Tuple[int, ...], object] = {}
    # q_{k-1} = g_k + x_q * q_k, walking k from the top down
    for k in range(top, 0, -1):
        coeff = dict(by_power.get(k, {}))
        for exp, c in times_xq(carry).items():
            s = coeff.get(exp, 0) + c
            if s:
                coeff[exp] = s
            else:
                coeff.pop(exp, None)
        carry = coeff
        for exp, c in coeff.items():
            e = list(exp)
            e[p] = k - 1
            quotient[tuple(e)] = c
    remainder = dict(by_power.get(0, {}))
    for exp, c in times_xq(carry).items():
        s = remainder.get(exp, 0) + c
        if s:
            remainder[exp] = s
        else:
            remainder.pop(exp, None)
    if remainder:
        raise ConsistencyError(
            f"division by x{p + 1} - x{q + 1} left a nonzero remainder")
    return MultiPoly(n, quotient)


def divided_difference(f: MultiPoly, i: int, nroots: Optional[int] = None) -> MultiPoly:
    """``(f - s_i f) / (y_i - y_{i+1})`` with ``y_1..y_nroots`` the leading variables."""
    if nroots is None:
        nroots = f.nvars
    if not 1 <= i <= nroots - 1:
        raise IndexError(f"divided difference index {i} outside 1..{nroots - 1}")
    numerator = f - f.swap(i - 1, i)
    return _exact_divide_by_difference(numerator, i - 1, i)


def apply_word(f: MultiPoly, word: Sequence[int], nroots: int) -> MultiPoly:
    """``d_{i_1} d_{i_2} ... d_{i_l} f`` (rightmost operator first)."""
    for i in reversed(word):
        f = divided_difference(f, i, nroots)
        if not f:
            break
    return f


def _word_on_monomial(ctx: RootContext, word: Tuple[int, ...], yexp: Tuple[int, ...]) -> MultiPoly:
    """Memoised ``d_word`` of a pure y-monomial, reduced to the base ring."""
    key = ("dd", word, yexp)
    memo = ctx._memo
    if key not in memo:
        mono = MultiPoly.monomial(yexp + (0,) * (ctx.r + 1))
        image = _apply_prefix(ctx, word, len(word), mono)
        try:
            memo[key] = symmetric_reduce(image, ctx)
        except NotSymmetricError as exc:
            raise ConsistencyError(f"divided differences produced a non-symmetric class: {exc}")
    return memo[key]


def _apply_prefix(ctx: RootContext, word, j, poly: MultiPoly) -> MultiPoly:
    # d_{i_1} ... d_{i_j} applied to poly, memoised per monomial
    if j == 0 or not poly:
        return poly
    memo = ctx._memo
    out = MultiPoly.zero(poly.nvars)
    for exp, c in poly.terms.items():
        key = ("ddp", word[:j], exp)
        if key not in memo:
            step = divided_difference(MultiPoly.monomial(exp), word[j - 1], ctx.r)
            memo[key] = _apply_prefix(ctx, word, j - 1, step)
        out = out + memo[key].scale(c)
    return out


def _unsigned_push(f: MultiPoly, ctx: RootContext, word: Tuple[int, ...]) -> MultiPoly:
    r = ctx.r
    out = MultiPoly.zero(ctx.n_base)
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for exp, c in f.terms.items():
        groups.setdefault(exp[:r], {})[exp[r:]] = c
    for yexp, scalars in groups.items():
        pushed = _word_on_monomial(ctx, word, yexp)
        if pushed:
            out = out + pushed * MultiPoly(ctx.n_base, scalars)
    return out


def calibrate_sigma(ctx: RootContext) -> int:
    """Sign making ``d_{w0}`` agree with the tower on the top tower monomial.

    ``h_1^{r-1} h_2^{r-2} ... h_{r-1}`` pushes to 1 along the tower.
    """
    from .tower import tower_pushforward
    r = ctx.r
    top = MultiPoly.monomial(tuple(r - k for k in range(1, r)) + (0,) * (r + 1))
    expected = tower_pushforward(top, ctx).value
    raw = _unsigned_push(ctx.tower_to_roots(top), ctx, default_word(r))
    for sign in (1, -1):
        if raw.scale(sign) == expected:
            return sign
    raise ConsistencyError(
        f"cannot calibrate divided differences at r={r}: tower gives "
        f"{expected.to_text()}, divided differences give {raw.to_text()}")


def default_word(r: int) -> Tuple[int, ...]:
    return perm.reduced_word(perm.longest(r))


def dd_pushforward(f: MultiPoly, ctx: RootContext,
                   word: Optional[Sequence[int]] = None) -> SymmetricClass:
    """Push a roots-ring polynomial via ``sigma(r) * d_{w0}``."""
    r = ctx.r
    if f.nvars != ctx.n_roots:
        raise ValueError(f"expected a roots-ring polynomial ({ctx.n_roots} variables)")
    if ctx.a_degree(f) > 1:
        raise UnsupportedInput("a-degree above 1 is not supported (a squares to zero)")
    if word is None:
        word = default_word(r)
    word = tuple(word)
    if perm.word_to_permutation(word, r) != perm.longest(r) or not perm.is_reduced(word, r):
        raise ValueError(f"{word} is not a reduced word for the longest element of S_{r}")
    value = _unsigned_push(f, ctx, word).scale(ctx.sigma())
    return SymmetricClass(value, fiber_codrop(ctx, f, "roots"), r)


def grassmann_word(r: int, s: int) -> Tuple[int, ...]:
    """Reduced word of ``u = w0 * w0_P`` for the parabolic ``S_s x S_{r-s}``."""
    u = perm.compose(perm.longest(r), perm.inverse(perm.block_longest((s, r - s))))
    return perm.reduced_word(u)


_CONTEXTS: Dict[int, RootContext] = {}


def _sigma_of_rank(k: int) -> int:
    if k < 2:
        return 1
    if k not in _CONTEXTS:
        _CONTEXTS[k] = RootContext(k)
    return _CONTEXTS[k].sigma()


def check_block_symmetric(F: MultiPoly, ctx: RootContext, s: int) -> None:
    for i in range(1, ctx.r):
        if i == s:
            continue
        if F.swap(i - 1, i) != F:
            raise NotSymmetricError(
                f"not symmetric under y{i} <-> y{i + 1} inside its block", transposition=i)


def gr_pushforward(F: MultiPoly, ctx: RootContext, s: int) -> SymmetricClass:
    """Push along ``Gr(s, E) -> X`` (rank-s subbundles, quotient roots ``y_{s+1}..y_r``).

    Uses ``d_u`` with ``u`` the minimal coset representative of ``w0``; the sign
    is the product of the flag orientations of E, the sub block and the quotient
    block, since ``d_{w0} = d_u d_{w0,P}``.
    """
    r = ctx.r
    if not 1 <= s < r:
        raise ValueError(f"need 1 <= s < r, got s={s}, r={r}")
    if F.nvars != ctx.n_roots:
        raise ValueError(f"expected a roots-ring polynomial ({ctx.n_roots} variables)")
    if ctx.a_degree(F) > 1:
        raise UnsupportedInput("a-degree above 1 is not supported (a squares to zero)")
    check_block_symmetric(F, ctx, s)
    word = grassmann_word(r, s)
    sign = ctx.sigma() * _sigma_of_rank(s) * _sigma_of_rank(r - s)
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for exp, c in F.terms.items():
        groups.setdefault(exp[r:], {})[exp[:r] + (0,) * (r + 1)] = c
    out = MultiPoly.zero(ctx.n_base)
    for scalar, yterms in groups.items():
        image = apply_word(MultiPoly(ctx.n_roots, yterms), word, r)
        try:
            reduced = symmetric_reduce(image, ctx)
        except NotSymmetricError as exc:
            raise ConsistencyError(f"Grassmann push-forward is not symmetric: {exc}")
        out = out + reduced * MultiPoly.monomial(scalar)
    deg = ctx.total_degree(F, "roots")
    codrop = deg - s * (r - s) if isinstance(deg, int) else None
    return SymmetricClass(out.scale(sign), codrop, r)


def plucker_class(ctx: RootContext, s: int) -> MultiPoly:
    """``c_1`` of the universal quotient of ``Gr(s, E)``: ``y_{s+1} + ... + y_r``."""
    out = MultiPoly.zero(ctx.n_roots)
    for j in range(s + 1, ctx.r + 1):
        out = out + ctx.y(j)
    return out
