import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagpush.gysin import (ConsistencyError, DegreeError, NotSymmetricError, RootContext,
                            UnsupportedInput, apply_word, coefficient_formula, dd_pushforward,
                            divided_difference, gr_pushforward, plucker_class, reduced_word,
                            segre_class, symmetric_reduce, tower_pushforward)
from flagpush.gysin import perm
from flagpush.gysin.divdiff import _exact_divide_by_difference
from flagpush.audit import random_xi_input
from flagpush.polyring import MultiPoly

CTX = {r: RootContext(r) for r in range(2, 7)}


def both(f, ctx):
    """Push an xi-ring polynomial with both oracles, asserting agreement."""
    t = tower_pushforward(ctx.xi_to_tower(f), ctx)
    d = dd_pushforward(ctx.xi_to_roots(f), ctx)
    assert t == d, (t.to_text(), d.to_text())
    return t


def base(ctx, text_terms):
    return MultiPoly(ctx.n_base, text_terms)


# -- fixtures --------------------------------------------------------------------

def test_rank2_xi():
    ctx = CTX[2]
    assert both(ctx.xi(1), ctx).value == MultiPoly.constant(3, 1)
    e1, e2 = ctx.e(1), ctx.e(2)
    assert both(ctx.xi(1) ** 3, ctx).value == e1**2 - e2
    assert tower_pushforward(ctx.h(1) ** 3, ctx).value == e1**2 - e2


def test_rank3_full_flag_degree():
    ctx = CTX[3]
    f = (ctx.tau(1) + ctx.tau(2)) ** 3
    assert tower_pushforward(f, ctx).value == MultiPoly.constant(ctx.n_base, 6)
    assert dd_pushforward(ctx.tower_to_roots(f), ctx).constant() == 6


def test_rank3_xi_sum_cube_vanishes_at_zero_c1():
    ctx = CTX[3]
    cls = both((ctx.xi(1) + ctx.xi(2)) ** 3, ctx)
    assert not cls.at_zero_c1()


def test_segre_classes_rank2():
    ctx = CTX[2]
    e1, e2 = (ctx.e(i, "tower") for i in (1, 2))
    assert segre_class(ctx, 0, 1) == e1
    assert segre_class(ctx, 0, 2) == e1**2 - e2


def test_divided_difference_examples():
    y1, y2 = MultiPoly.gens(2)
    assert divided_difference(y1, 1) == MultiPoly.constant(2, 1)
    assert not divided_difference(y1 * y2, 1)
    assert divided_difference(y1**2, 1) == y1 + y2
    with pytest.raises(IndexError):
        divided_difference(y1, 2)


def test_nonzero_remainder_is_fatal():
    y1, y2 = MultiPoly.gens(2)
    with pytest.raises(ConsistencyError):
        _exact_divide_by_difference(y1, 0, 1)


def test_reduced_word_examples():
    assert tuple(reduced_word(perm.identity(3))) == ()
    assert tuple(reduced_word((2, 1))) == (1,)
    w = reduced_word(perm.longest(3))
    assert len(w) == 3 and perm.word_to_permutation(w, 3) == perm.longest(3)


@pytest.mark.parametrize("r", range(2, 7))
def test_reduced_word_length_is_inversions(r):
    rng = random.Random(r)
    for _ in range(20):
        w = list(range(1, r + 1))
        rng.shuffle(w)
        word = reduced_word(w)
        assert len(word) == perm.inversions(w)
        assert perm.word_to_permutation(word, r) == tuple(w)


def test_symmetric_reduce_examples():
    ctx = CTX[2]
    y1, y2 = ctx.y(1), ctx.y(2)
    e1, e2 = ctx.e(1), ctx.e(2)
    assert symmetric_reduce(y1 + y2, ctx) == e1
    assert symmetric_reduce(y1**2 + y2**2, ctx) == e1**2 - e2.scale(2)
    with pytest.raises(NotSymmetricError) as info:
        symmetric_reduce(y1, ctx)
    assert info.value.transposition == 1


def test_calibration_sign():
    assert [CTX[r].sigma() for r in range(2, 7)] == [(-1) ** comb(r, 2) for r in range(2, 7)]


# -- divided-difference algebra ------------------------------------------------------

def _random_y_poly(rng, n, deg):
    out = MultiPoly.zero(n)
    for _ in range(rng.randint(1, 4)):
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        out = out + MultiPoly.monomial(e, rng.randint(-4, 4))
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 5), st.integers(0, 6))
def test_dd_squares_to_zero_and_braids(seed, n, deg):
    rng = random.Random(seed)
    f = _random_y_poly(rng, n, deg)
    for i in range(1, n):
        assert not divided_difference(divided_difference(f, i), i)
    for i in range(1, n - 1):
        assert apply_word(f, [i, i + 1, i], n) == apply_word(f, [i + 1, i, i + 1], n)
    if n >= 4:
        assert apply_word(f, [1, 3], n) == apply_word(f, [3, 1], n)


@pytest.mark.parametrize("r", range(2, 6))
def test_word_independence(r):
    ctx = CTX[r]
    rng = random.Random(100 + r)
    words = {tuple(reduced_word(perm.longest(r)))}
    words.add(tuple(reduced_word(perm.longest(r), rightmost=True)))
    # S_2 and S_3 have one and two reduced words for w0; from r = 4 on use three or more
    target = {2: 1, 3: 2}.get(r, 4)
    while len(words) < target:
        words.add(tuple(reduced_word(perm.longest(r), rng=rng)))
    inputs = [random_xi_input(r, ctx.fiber_dim + k % 3, rng) for k in range(6)]
    for f in inputs:
        roots = ctx.xi_to_roots(f)
        results = [dd_pushforward(roots, ctx, word=w) for w in sorted(words)]
        assert all(res == results[0] for res in results)


def test_rank3_has_two_reduced_words():
    # S_3 has exactly two reduced words for w0, so three is impossible there
    assert {tuple(reduced_word(perm.longest(3))),
            tuple(reduced_word(perm.longest(3), rightmost=True))} == {(1, 2, 1), (2, 1, 2)}


def test_non_reduced_word_rejected():
    ctx = CTX[3]
    with pytest.raises(ValueError):
        dd_pushforward(ctx.y(1) ** 3, ctx, word=(1, 2, 1, 1, 1))
    with pytest.raises(ValueError):
        dd_pushforward(ctx.y(1) ** 3, ctx, word=(1, 2))


# -- degree bookkeeping ----------------------------------------------------------------

@pytest.mark.parametrize("r", range(2, 6))
def test_low_degree_vanishes(r):
    ctx = CTX[r]
    rng = random.Random(r)
    for deg in range(1, ctx.fiber_dim):
        cls = both(random_xi_input(r, deg, rng), ctx)
        assert not cls.value


@pytest.mark.parametrize("r", range(2, 6))
def test_top_degree_is_constant_and_codrop(r):
    ctx = CTX[r]
    rng = random.Random(7 * r)
    for k in range(10):
        f = ctx.embed_t(_random_t(rng, r, ctx.fiber_dim))
        cls = both(f, ctx)
        assert cls.fiber_codrop == 0
        assert cls.value.is_constant()
        g = ctx.embed_t(_random_t(rng, r, ctx.fiber_dim + 1))
        cls = both(g, ctx)
        assert cls.fiber_codrop == 1
        assert cls.e1_multiple() is not None or not cls.value
        assert not cls.at_zero_c1()


def _random_t(rng, r, deg):
    from flagpush.audit import random_t_polynomial
    return random_t_polynomial(r, deg, rng)


@pytest.mark.parametrize("r", range(2, 6))
def test_projection_formula(r):
    ctx = CTX[r]
    rng = random.Random(31 * r)
    for _ in range(8):
        g = ctx.embed_t(_random_t(rng, r, ctx.fiber_dim + rng.randrange(2)))
        a = ctx.a("xi")
        assert both(a * g, ctx).value == both(g, ctx).value * ctx.a("base")
        e2 = ctx.e(2, "xi")
        assert both(e2 * g, ctx).value == both(g, ctx).value * ctx.e(2)


def test_square_of_a_unsupported():
    ctx = CTX[2]
    with pytest.raises(UnsupportedInput):
        tower_pushforward(ctx.a("tower") ** 2, ctx)
    with pytest.raises(UnsupportedInput):
        dd_pushforward(ctx.a("roots") ** 2, ctx)


def test_tau_dictionary():
    for r in range(2, 7):
        ctx = CTX[r]
        for s in range(1, r + 1):
            lhs = ctx.xi_to_tower(ctx.tau_from_xi(s)) - ctx.tau(s) + ctx.e(1, "tower")
            if s == r:
                # empty xi sum and tau_r = 0
                assert lhs == ctx.e(1, "tower")
            else:
                assert not lhs
            assert ctx.roots_to_tower(ctx.tau(s, "roots")) == ctx.tau(s)


# -- Grassmann bundles ------------------------------------------------------------------

def grassmann_degree(r, s):
    k = s * (r - s)
    out = Fraction(factorial(k))
    for i in range(s):
        out *= Fraction(factorial(i), factorial(r - s + i))
    return out


@pytest.mark.parametrize("r", range(2, 6))
def test_plucker_degree(r):
    ctx = CTX[r]
    for s in range(1, r):
        xi = plucker_class(ctx, s)
        cls = gr_pushforward(xi ** (s * (r - s)), ctx, s)
        assert cls.value.is_constant()
        assert cls.constant() == grassmann_degree(r, s)


@pytest.mark.parametrize("r", range(2, 6))
def test_grassmann_dimension_vanishing(r):
    ctx = CTX[r]
    for s in range(1, r):
        xi = plucker_class(ctx, s)
        for k in range(s * (r - s)):
            assert not gr_pushforward(xi ** k * ctx.a("roots"), ctx, s).value
            assert not gr_pushforward(xi ** k, ctx, s).value


@pytest.mark.parametrize("r", range(2, 7))
def test_segre_anchors(r):
    ctx = CTX[r]
    xi = plucker_class(ctx, r - 1)
    assert gr_pushforward(xi ** (r - 1), ctx, r - 1).value == MultiPoly.constant(ctx.n_base, 1)
    assert gr_pushforward(xi ** r, ctx, r - 1).value == ctx.e(1)


def _block_top(ctx, s):
    out = MultiPoly.constant(ctx.n_roots, 1)
    for j in range(2, s + 1):
        out = out * ctx.y(j) ** (j - 1)
    for j in range(s + 2, ctx.r + 1):
        out = out * ctx.y(j) ** (j - s - 1)
    return out


@pytest.mark.parametrize("r", range(2, 6))
def test_grassmann_matches_full_flag(r):
    ctx = CTX[r]
    for s in range(1, r):
        xi = plucker_class(ctx, s)
        top = _block_top(ctx, s)
        for k in range(s * (r - s), s * (r - s) + 3):
            F = xi ** k + xi ** (k - 1) * ctx.a("roots")
            via_flag = tower_pushforward(ctx.roots_to_tower(F * top), ctx)
            assert gr_pushforward(F, ctx, s) == via_flag


def test_grassmann_rejects_non_block_symmetric():
    ctx = CTX[3]
    with pytest.raises(NotSymmetricError):
        gr_pushforward(ctx.y(2) ** 2, ctx, 2)
    with pytest.raises(ValueError):
        gr_pushforward(ctx.y(1), ctx, 3)


# -- coefficient formula ------------------------------------------------------------------

def test_formula_examples():
    t = MultiPoly.gens(1)[0]
    assert coefficient_formula(t, 2).value == 1
    t1, t2 = MultiPoly.gens(2)
    assert coefficient_formula((t1 + t2) ** 3, 3).value == 0
    assert coefficient_formula((t1 + t2) ** 2 * t1, 3).value == -1
    assert coefficient_formula((t1 + t2) ** 2 * t2, 3).value == 1
    res = coefficient_formula((t1 + t2) ** 4, 3)
    assert res.verdict == "multiple-of-c1" and res.value == 0


def test_formula_degree_rejection():
    t1, t2 = MultiPoly.gens(2)
    with pytest.raises(DegreeError) as info:
        coefficient_formula(t1 ** 2, 3)
    assert info.value.degree == 2
    with pytest.raises(DegreeError):
        coefficient_formula(t1 + t2 ** 3, 3)
