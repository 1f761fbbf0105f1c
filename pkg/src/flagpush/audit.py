"""Cross-check printed push-forward claims against the two oracles.

Every record is a plain dict with the keys ``r, variant, claim_id,
anchor, computed, expected, verdict``. Verdicts are ``MATCH``,
``MISMATCH`` or ``INFO`` (values reported without a claim to test).
Oracle self-disagreement is the only condition that makes ``oracles_agree`` false.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List

from . import approx
from .approx import (WeightVector, alpha_polynomial, beta_polynomial,
                     constants_record, context, grassmann_ratio,
                     push_t_polynomial, quotient_coefficients, weighted_degree)
from .certify import format_rational
from .gysin import VARIANTS, dd_pushforward, coefficient_formula, tower_pushforward
from .polyring import MultiPoly

MATCH, MISMATCH, INFO = "MATCH", "MISMATCH", "INFO"

GRASSMANN_M = (1, 2, 5, 10)
GRASSMANN_N = (1, 2)


def _fmt(x):
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in sorted(x.items())}
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return format_rational(x)
    return x


def _record(r, variant, claim_id, anchor, computed, expected, verdict) -> Dict:
    return {"r": r, "variant": variant, "claim_id": claim_id, "anchor": anchor,
            "computed": _fmt(computed), "expected": _fmt(expected), "verdict": verdict}


def random_t_polynomial(r: int, degree: int, rng: random.Random, max_terms: int = 4) -> MultiPoly:
    """Random homogeneous polynomial in ``t_1..t_{r-1}`` with small integer coefficients."""
    f = MultiPoly.zero(r - 1)
    while not f:
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * (r - 1)
            for _ in range(degree):
                exps[rng.randrange(r - 1)] += 1
            f = f + MultiPoly.monomial(exps, rng.choice([-3, -2, -1, 1, 2, 3]))
    return f


def random_xi_input(r: int, degree: int, rng: random.Random) -> MultiPoly:
    """Random xi-ring input: fiber part of the given degree times e/a scalars."""
    ctx = context(r)
    f = ctx.embed_t(random_t_polynomial(r, degree, rng))
    scalar = rng.randrange(4)
    if scalar == 1:
        f = f * ctx.e(rng.randint(1, r), "xi")
    elif scalar == 2:
        f = f * ctx.a("xi")
    elif scalar == 3:
        f = f + ctx.embed_t(random_t_polynomial(r, degree - 1, rng)) * ctx.e(1, "xi")
    return f


def oracle_agreement(r: int, inputs: Iterable[MultiPoly]) -> Dict:
    ctx = context(r)
    count, bad = 0, []
    for f in inputs:
        count += 1
        if tower_pushforward(ctx.xi_to_tower(f), ctx) != dd_pushforward(ctx.xi_to_roots(f), ctx):
            bad.append(f.to_text(ctx.xi_names()))
    return {"inputs": count, "disagreements": len(bad), "first_disagreement": bad[:1]}


def audit_rank(r: int, seed: int, samples: int = 12) -> List[Dict]:
    rng = random.Random(f"{seed}:{r}")
    ctx = context(r)
    N = ctx.fiber_dim
    out: List[Dict] = []

    # (i) tower versus divided differences
    inputs = [random_xi_input(r, N - 1 + k % 4, rng) for k in range(4 * samples)]
    inputs += [ctx.embed_t(alpha_polynomial(r))]
    inputs += [ctx.embed_t(beta_polynomial(r, s)) for s in range(1, r)]
    agreement = oracle_agreement(r, inputs)
    out.append(_record(r, "tower-vs-dd", "oracle-agreement", "pi_* on Flag(E)",
                       agreement, {"disagreements": 0},
                       MATCH if agreement["disagreements"] == 0 else MISMATCH))

    # (ii) coefficient formula versus oracle in degree C(r,2)
    tests = [alpha_polynomial(r)] + [beta_polynomial(r, s) for s in range(1, r)]
    tests += [random_t_polynomial(r, N, rng) for _ in range(samples)]
    oracle_values = [push_t_polynomial(f, r)["tower"].constant() for f in tests]
    for v in VARIANTS:
        values = [coefficient_formula(f, r, v).value for f in tests]
        diffs = [i for i, (a, b) in enumerate(zip(values, oracle_values)) if a != b]
        flipped = all(a == -b for a, b in zip(values, oracle_values))
        computed = {"checked": len(tests), "mismatches": len(diffs),
                    "matches_negated_oracle": flipped}
        if diffs:
            i = diffs[0]
            computed["first_mismatch"] = {"f": tests[i].to_text([f"t{k}" for k in range(1, r)]),
                                          "formula": values[i], "oracle": oracle_values[i]}
        out.append(_record(r, v, "coefficient-formula-degree-top",
                           "pi_* f(xi) = [prod t_i^(r-1)](f * prod_{i<j}(t_i - t_j)) [X]",
                           computed, {"mismatches": 0}, MATCH if not diffs else MISMATCH))

    # degree C(r,2)+1: a multiple of c_1(E), vanishing when c_1(E) = 0
    shapes = []
    for _ in range(samples):
        cls = push_t_polynomial(random_t_polynomial(r, N + 1, rng), r)["tower"]
        shapes.append(cls.e1_multiple())
    ok = all(s is not None for s in shapes)
    out.append(_record(r, "tower", "top-plus-one-is-c1-multiple",
                       "pi_* f(xi) = 0 for deg f = C(r,2)+1 when c_1(E) = 0",
                       {"checked": len(shapes), "e1_multiples": [s for s in shapes if s is not None]},
                       "lambda * e1", MATCH if ok else MISMATCH))

    # (iii) alpha > 0 for each variant, and positivity of cover degrees per weight choice
    consts = constants_record(r)
    for v in VARIANTS:
        alpha = consts.alpha_by_variant[v]
        out.append(_record(r, v, "alpha-positive", "alpha > 0", alpha, "> 0",
                           MATCH if alpha > 0 else MISMATCH))
    for k, alpha in sorted(consts.alpha_oracle.items()):
        out.append(_record(r, k, "alpha-positive", "alpha > 0", alpha, "> 0",
                           MATCH if alpha > 0 else MISMATCH))
    out.append(_record(r, "tower-vs-dd", "constants-oracle-agreement", "alpha, beta_s",
                       {"alpha": consts.alpha_oracle, "beta": consts.beta_oracle}, "equal",
                       MATCH if consts.oracles_agree else MISMATCH))
    for label, w in (("literal", WeightVector.literal(r)), ("ones", WeightVector.ones(r))):
        deg = weighted_degree(w)
        out.append(_record(r, f"weights-{label}", "degree-positive",
                           "deg f_m = (nm)^C(r,2) alpha > 0", deg, "> 0",
                           MATCH if deg > 0 else MISMATCH))

    # (iv) beta_s independent of s
    for v in VARIANTS:
        betas = consts.beta_by_variant[v]
        out.append(_record(r, v, "beta-independent-of-s", "beta_s independent of s",
                           list(betas), "all equal", MATCH if len(set(betas)) == 1 else MISMATCH))
    for k, betas in sorted(consts.beta_oracle.items()):
        out.append(_record(r, k, "beta-independent-of-s", "beta_s independent of s",
                           list(betas), "all equal", MATCH if len(set(betas)) == 1 else MISMATCH))

    # a_m for the literal weights: defined only when alpha != 0
    alpha = consts.alpha_by_variant["printed-minus"]
    beta1 = consts.beta_by_variant["printed-minus"][0]
    if alpha != 0:
        a1 = approx.am_value(r, alpha, beta1, 1)
        out.append(_record(r, "printed-minus", "a_m-sequence", "a_m = (r-1) C(r,2) beta / (m alpha)",
                           {"a_1": a1}, "decays like 1/m", INFO))
    else:
        out.append(_record(r, "printed-minus", "a_m-sequence", "a_m = (r-1) C(r,2) beta / (m alpha)",
                           {"alpha": alpha}, "alpha != 0", MISMATCH))

    # Q_s coefficient: the displayed factor s versus the count r-s of xi's in tau_s
    lit = WeightVector.literal(r)
    for s in range(1, r):
        tau_s = ctx.tau(s)
        base = approx.weighted_tau_sum(ctx, lit.m_weights) ** (N - 1)
        q = tower_pushforward(base * tau_s, ctx).at_zero_c1().constant_term()
        q = (r - 1) * N * q
        for name, factor in (("s", s), ("r-s", r - s)):
            expected = factor * (r - 1) * N * beta1
            out.append(_record(r, "printed-minus", f"Q_s-factor-{name}",
                               "(f_m)_* c_1(Q_s) = n^C(r,2) m^(C(r,2)-1) s (r-1) C(r,2) beta c_1(A)",
                               {"s": s, "oracle": q}, expected,
                               MATCH if q == expected else MISMATCH))

    # (v) per-quotient coefficients
    for label, w in (("ones", WeightVector.ones(r)), ("literal", WeightVector.literal(r))):
        kappa = quotient_coefficients(w)
        out.append(_record(r, f"weights-{label}", "kappa-sum-zero",
                           "sum_i c_1(S_i/S_{i-1}) = c_1(f_m^* E)", kappa, 0,
                           MATCH if sum(kappa) == 0 else MISMATCH))
        out.append(_record(r, f"weights-{label}", "kappa-table",
                           "(f_m)_* c_1(S_i/S_{i-1}) / deg f_m = a_m c_1(A)", kappa, None, INFO))

    # (vi) Grassmann ratio s(r-s)/m
    bad = []
    for s in range(1, r):
        for m in GRASSMANN_M:
            for n in GRASSMANN_N:
                got = grassmann_ratio(r, s, m, n)
                if got != Fraction(s * (r - s), m):
                    bad.append({"s": s, "m": m, "n": n, "ratio": got})
    out.append(_record(r, "gr-pushforward", "grassmann-ratio", "s(r-s) c_1(A) / m",
                       {"cells": (r - 1) * len(GRASSMANN_M) * len(GRASSMANN_N),
                        "mismatches": bad}, "s(r-s)/m", MATCH if not bad else MISMATCH))

    # xi/tau dictionary
    for s in range(1, r):
        # compared in the tower ring modulo e_1, where tau_r = 0 holds
        lhs = _mod_e1(ctx.xi_to_tower(ctx.xi(s)))
        rhs = _mod_e1(ctx.tau(r - s) - ctx.tau(r - s + 1))
        out.append(_record(r, "tower", "xi-as-tau-difference", "xi_s = tau_{r-s} - tau_{r-s+1}",
                           {"s": s, "xi_s": lhs.to_text(ctx.tower_names()),
                            "tau_diff": rhs.to_text(ctx.tower_names())},
                           "equal modulo e1", MATCH if lhs == rhs else MISMATCH))
        diff = ctx.xi_to_tower(ctx.tau_from_xi(s)) - ctx.tau(s) + ctx.e(1, "tower")
        out.append(_record(r, "tower", "tau-as-xi-sum", "c_1(Q_s) = sum_{i=1}^{r-s} xi_{r-i} mod e_1",
                           {"s": s}, "equal modulo e1", MATCH if not diff else MISMATCH))
    return out


def _mod_e1(f: MultiPoly) -> MultiPoly:
    e1 = f.nvars // 2 - 1  # tower/xi layout: r-1 fiber variables first
    return f.filter_terms(lambda e: e[e1] == 0)


def run_audit(r_values: Iterable[int], seed: int = 0, samples: int = 12) -> Dict:
    records: List[Dict] = []
    for r in sorted(set(r_values)):
        if r < 2:
            raise ValueError("rank must be at least 2")
        records.extend(audit_rank(r, seed, samples))
    oracle_ids = {"oracle-agreement", "constants-oracle-agreement"}
    ok = all(rec["verdict"] == MATCH for rec in records if rec["claim_id"] in oracle_ids)
    summary = {MATCH: 0, MISMATCH: 0, INFO: 0}
    for rec in records:
        summary[rec["verdict"]] += 1
    return {"seed": seed, "r_values": sorted(set(r_values)), "oracles_agree": ok,
            "summary": summary, "records": records}
