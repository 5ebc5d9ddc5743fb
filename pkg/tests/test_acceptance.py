"""Acceptance suite.

Each test implements one numbered acceptance criterion at its stated
tolerance and prints one PASS/FAIL line (run with -s to see them inline).
Everything asserted here is computed exactly; no tolerances are floating.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import polygon_oracle
from returnsets.cli import main as cli_main
from returnsets.constructions import (
    _try_parameters,
    behrend_lambda,
    build_small_intersection_counterexample,
    interval_family,
    lambda_fourier,
    lambda_levels,
    modulus_counterexample,
    verify_solution_free,
    DphjInstance,
    dphj_search,
    dphj_validate,
)
from returnsets.exactnum import IntervalSet
from returnsets.ipcomb import (
    VipSample,
    eta_decompose,
    eta_set_function,
    ip_r_set,
    ip_r_star_witness_search,
    vip_degree_check,
)
from returnsets.polyring import IntPoly, joint_intersectivity
from returnsets.systems import SkewSystem, skew_correlation

P = IntPoly.parse


@contextmanager
def criterion(number, label):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} {label}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {number:02d} {label}: PASS ({elapsed:.2f}s)")


def test_01_behrend_soundness():
    # every constructible set for b in {2,3}, N <= 500 is solution-free for
    # all weighted equations with weight sum <= b, exhaustively
    with criterion(1, "behrend-soundness"):
        checked = 0
        for b in (2, 3):
            for N in range(2, 501):
                if _try_parameters(b, N) is None:
                    continue
                lam = behrend_lambda(b, N)
                ok, bad = verify_solution_free(lam.elements, b)
                assert ok, f"b={b} N={N}: violation {bad}"
                checked += 1
        assert checked > 400  # b=2 alone covers [16,22] and [64,500]


def test_02_level_partition_identity():
    with criterion(2, "level-partition"):
        for b in (2, 3):
            for d in range(2, 6):
                for n in range(2, 7):
                    levels = lambda_levels(b, d, n)
                    assert sum(len(v) for v in levels.values()) == d**n - 1


def test_03_structured_solutions():
    # integer reduction exhaustive over Lambda^3, then 10^4 random rational
    # triples satisfying (b-a)x1 + a x2 = b x3 mod 1 all land in one block
    with criterion(3, "structured-solutions"):
        b, a, c = 2, 1, 2
        fam = interval_family(16, c, b)
        lam = fam.lambda_set.elements
        assert len(lam) >= 2
        for n1, n2, n3 in itertools.product(lam, repeat=3):
            if (b - a) * n1 + a * n2 == b * n3:
                assert n1 == n2 == n3
        rng = random.Random(3)
        den = 10**6
        valid_triples = 0
        while valid_triples < 10**4:
            same_block = rng.random() < 0.9
            j1 = rng.choice(lam)
            j2 = j1 if same_block else rng.choice(lam)
            x1 = fam.block(j1)[0] + F(rng.randrange(den), den) * fam.block_length
            x2 = fam.block(j2)[0] + F(rng.randrange(den), den) * fam.block_length
            combo = (b - a) * x1 + a * x2
            for z in range(b):
                x3 = ((combo + z) / b) % 1
                j3 = fam.locate(x3)
                if j3 is None:
                    continue
                # a triple from the family satisfying the mod-1 equation
                assert ((b - a) * x1 + a * x2 - b * x3) % 1 == 0
                assert fam.locate(x1) == fam.locate(x2) == j3, \
                    f"triple split across blocks: {x1}, {x2}, {x3}"
                valid_triples += 1


def test_04_theorem_window_certification():
    # polys (n^2, 2n^2), r=2, window [-30,30]: certified member set is
    # exactly {0}; every n != 0 carries hi <= |Lambda|/(8m(c+1)^2)^2 <= thr
    with criterion(4, "small-intersection-window"):
        bundle = build_small_intersection_counterexample(
            [P("n^2"), P("2*n^2")], 2, [(-30, 30)], grid=64)
        fam = bundle.family
        m, c = fam.m, fam.c
        bound_formula = F(fam.lambda_set.size, (8 * m * (c + 1) ** 2) ** 2)
        assert bundle.upper_bound == bound_formula
        assert bundle.report.members == ((0,),)
        assert bundle.report.inconclusive == ()
        for dec in bundle.report.decisions:
            assert dec.grid <= 2**14
            if dec.point == (0,):
                assert dec.decision == "member"
            else:
                assert dec.decision == "nonmember"
                assert dec.hi <= bound_formula <= bundle.threshold


def test_05_modulus_counterexamples():
    with criterion(5, "modulus-counterexample"):
        system, report = modulus_counterexample([P("2*n + 1")], 2, [(-50, 50)])
        assert system.modulus == 2
        assert report.epsilon == F(1, 8)
        assert report.members == () and report.exactness == "exact"

        pair = [P("n^2 - n"), P("3*n + 3")]
        verdict = joint_intersectivity(pair, 10)
        assert verdict.witness_modulus == 4
        _, report = modulus_counterexample(pair, verdict.witness_modulus, [(-50, 50)])
        assert report.members == () and report.exactness == "exact"


def test_06_enclosure_convergence_and_oracle():
    # independent polygon-arrangement oracle value sits inside every
    # enclosure for N = 2^4 .. 2^12 and the certified width bound halves
    with criterion(6, "enclosure-vs-oracle"):
        base = IntervalSet.from_pairs([(0, F(1, 2))])
        oracle = polygon_oracle.correlation(base.intervals, [1, 2])
        assert oracle == F(1, 8)  # hand case analysis over x
        sys = SkewSystem(base, (1, 2))
        prev_bound = None
        for exp in range(4, 13):
            N = 2**exp
            enc = skew_correlation(sys, (1, 1), N)
            assert enc.lo <= oracle <= enc.hi
            bound = enc.lipschitz_bound / N
            assert enc.width <= bound == F(3, N)
            if prev_bound is not None:
                assert 2 * bound <= prev_bound
            prev_bound = bound


def test_07_vip_identities():
    with criterion(7, "vip-identities"):
        rng = random.Random(7)
        pairs_checked = 0
        for sample in range(50):
            d = rng.randint(1, 2)
            deg = rng.randint(1, 3)
            terms = {}
            for exps in itertools.product(range(deg + 1), repeat=d):
                if 0 < sum(exps) <= deg and rng.random() < 0.6:
                    terms[exps] = rng.choice([-3, -2, -1, 1, 2, 3])
            top = tuple(deg if i == 0 else 0 for i in range(d))
            terms.setdefault(top, 1)
            p = IntPoly.from_terms(d, terms)
            gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(6)]
            phi = VipSample.from_polynomial(p, gens)
            D = p.total_degree
            assert vip_degree_check(phi, D)
            decomp = eta_decompose(phi, D)     # verifies all 2^6 subsets
            for size in range(7):
                for alpha in itertools.combinations(phi.ground, size):
                    cube = list(itertools.product(alpha, repeat=D))
                    assert eta_set_function(decomp, cube) == phi.value(alpha)
            grid = list(itertools.product(phi.ground, repeat=D))
            for _ in range(4):
                A = {t for t in grid if rng.random() < 0.25}
                B = {t for t in grid if rng.random() < 0.25} - A
                left = eta_set_function(decomp, A | B)
                right = tuple(x + y for x, y in zip(
                    eta_set_function(decomp, A), eta_set_function(decomp, B)))
                assert left == right
                pairs_checked += 1
        assert pairs_checked == 200


def test_08_ip_r_star_refutation():
    with criterion(8, "ipr-witness"):
        odd = lambda v: v[0] % 2 != 0
        witness = ip_r_star_witness_search(odd, 3, 10, [(-100, 100)])
        assert witness is not None
        assert all(g[0] % 2 == 0 for g in witness)
        sums = ip_r_set(witness)
        assert len(sums) <= 7
        assert all(s[0] % 2 == 0 for s in sums)
        assert not any(odd(s) for s in sums)


# -- exact root-of-unity evaluation for criterion 9 -----------------------------


def _poly_divmod(num, den):
    """Exact division of integer coefficient lists (low-to-high), den monic."""
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 1)
    for i in range(len(num) - 1, deg_d - 1, -1):
        q = num[i]
        quot[i - deg_d] = q
        if q:
            for k, coeff in enumerate(den):
                num[i - deg_d + k] -= q * coeff
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _cyclotomic(M, cache={}):
    """Coefficients of the M-th cyclotomic polynomial via exact division of
    x^M - 1 by the cyclotomics of the proper divisors."""
    if M in cache:
        return cache[M]
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly, rem = _poly_divmod(poly, _cyclotomic(d))
            assert rem == [0]
    cache[M] = poly
    return poly


def _root_of_unity_sum_is(M, a, expected_times_M):
    """Exactly decide sum_j omega^(a j) == expected, with omega = e^(2 pi i/M):
    form the counting polynomial of the exponent multiset minus the expected
    constant and check divisibility by the M-th cyclotomic polynomial."""
    counts = [0] * M
    for j in range(M):
        counts[(a * j) % M] += 1
    counts[0] -= expected_times_M
    _, rem = _poly_divmod(counts, _cyclotomic(M))
    return all(c == 0 for c in rem)


def test_09_fourier_table():
    with criterion(9, "lambda-fourier-table"):
        for M in range(1, 21):
            for a in range(-100, 101):
                value = lambda_fourier(M, a)
                assert value == (1 if a % M == 0 else 0)
                # independent exact evaluation of the root-of-unity sum
                assert _root_of_unity_sum_is(M, a, int(value * M))


def test_10_dphj_examples():
    with criterion(10, "dphj-search"):
        inst = DphjInstance.full_space(1, 1, 1)
        found = dphj_search(inst)
        assert found == (frozenset({1}), (frozenset(),))
        assert dphj_validate(inst, *found)

        inst = DphjInstance.from_lists(1, 1, 1, [(frozenset(),)])
        assert dphj_search(inst) is None

        inst = DphjInstance.full_space(2, 1, 2)
        found = dphj_search(inst)
        assert found == (frozenset({1}), (frozenset(), frozenset()))
        assert dphj_validate(inst, *found)


CLI_JOBS = [
    ["behrend", "--b", "2", "--N", "100"],
    ["verify-free", "--elements", "1,2,3", "--b", "2"],
    ["family", "--m", "16", "--c", "2", "--b", "2"],
    ["counterexample", "--polys", "n^2", "2*n^2", "--r", "2", "--window=-30,30"],
    ["modulus", "--polys", "2*n+1", "--window=-50,50"],
    ["modulus", "--polys", "n^2-n", "3*n+3", "--window=-50,50"],
    ["return-set", "--type", "cyclic", "--modulus", "2", "--subset", "0",
     "--polys", "2*n+1", "--epsilon", "1/8", "--window=-50,50"],
    ["return-set", "--type", "skew", "--base-set", '[["0/1", "1/2"]]',
     "--exponents", "1,2", "--polys", "n", "n", "--epsilon", "1/2",
     "--window", "0,3", "--grid", "16"],
    ["diophantine", "--polys", "n^2", "--alphas", "1/3", "--epsilon", "1/4",
     "--window", "0,6", "--shift-box", "3"],
    ["vip-check", "--poly", "n^2", "--generators", "1;2;3;4;5", "--t", "2"],
    ["eta", "--poly", "n^2", "--generators", "1;1;1;1", "--D", "2"],
    ["ipr-witness", "--target", "odds", "--r", "3", "--box", "10",
     "--window=-100,100"],
    ["dphj", "--q", "1", "--D", "1", "--N", "1", "--S", "full"],
    ["constants", "--ell", "1", "--D", "1", "--delta", "1/2", "--C", "1"],
]


def test_11_cli_determinism(tmp_path):
    # every acceptance-relevant CLI invocation, re-executed, must reproduce
    # its JSON payload byte for byte
    with criterion(11, "cli-determinism"):
        for idx, job in enumerate(CLI_JOBS):
            out1 = tmp_path / f"{idx}_a.json"
            out2 = tmp_path / f"{idx}_b.json"
            code1 = cli_main(job + ["--out", str(out1)])
            code2 = cli_main(job + ["--out", str(out2)])
            assert code1 == code2
            assert code1 in (0, 2)
            first, second = out1.read_bytes(), out2.read_bytes()
            assert first == second, f"non-deterministic payload for {job}"
            json.loads(first)  # payload is well-formed JSON
