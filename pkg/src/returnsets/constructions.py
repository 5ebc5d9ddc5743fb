"""Explicit constructions and their machine verification.

Contents: Behrend-variant solution-free sets built from digit vectors with a
fixed squared norm; the derived families of short intervals on the circle;
skew-product systems whose large-return sets collapse to polynomial zero
sets (with exact certified bounds); finite cyclic counterexamples from
non-intersective moduli; Diophantine return sets over rational multipliers;
Fourier coefficients of uniform measures on {j/M}; the wildcard search over
explicit tuple families; and the conditional constants plumbing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import IntervalSet, frac_str
from .ipcomb import normalize_window
from .polyring import IntPoly, has_common_root_mod, q_linear_independence
from .systems import (
    FiniteCyclicSystem,
    ReturnSetReport,
    SkewSystem,
    return_set_window,
    window_points,
)


# -- Behrend-variant solution-free sets -----------------------------------------


@dataclass(frozen=True)
class BehrendSet:
    """Solution-free subset of {1..N} for weighted equations
    a_1 x_1 + ... + a_t x_t = (a_1 + ... + a_t) x_{t+1} with positive weights
    summing to at most b: only constant tuples solve them.

    Elements are the integers with digit vectors gamma in {0..d-1}^n, written
    in base b*d - 1, whose squared norm sum(gamma_i^2) equals k.
    """

    b: int
    N: int
    n: int
    d: int
    k: int
    elements: tuple

    @property
    def size(self) -> int:
        return len(self.elements)


def _try_parameters(b: int, N: int):
    """(n, d) when constructible, else None.  n is the largest m with
    b^(m*m) <= N^b (the exact-integer form of floor(sqrt(b log N / log b)))
    and d is the largest integer with (d*b)^n <= N; construction needs
    n >= 2 and d >= 2."""
    n = 1
    target = N**b
    while b ** ((n + 1) * (n + 1)) <= target:
        n += 1
    d = 1
    while ((d + 1) * b) ** n <= N:
        d += 1
    return (n, d) if n >= 2 and d >= 2 else None


def behrend_parameters(b: int, N: int):
    """Exact construction parameters (n, d); raises when N does not admit a
    digit range d >= 2.  Admissibility is not monotone in N (bumping n can
    push d back under 2), so the error reports both the minimal admissible N
    and the next admissible bound at or above the one requested."""
    if b < 2:
        raise ValueError("weight cap b must be >= 2")
    if N < 1:
        raise ValueError("N must be positive")
    params = _try_parameters(b, N)
    if params is None:
        raise ValueError(
            f"N={N} does not admit digit range d >= 2 for weight cap b={b} "
            f"(minimal admissible N is {minimal_admissible_N(b)}; next admissible "
            f"N >= {N} is {next_admissible_N(b, N)})"
        )
    return params


def minimal_admissible_N(b: int) -> int:
    if b < 2:
        raise ValueError("weight cap b must be >= 2")
    N = 2
    while _try_parameters(b, N) is None:
        N += 1
    return N


def next_admissible_N(b: int, start: int) -> int:
    """Smallest admissible N at or above ``start``.  The scan terminates:
    n grows only like sqrt(log N), so the digit-range requirement
    (2b)^n <= N holds for all sufficiently large N."""
    N = max(start, 2)
    while _try_parameters(b, N) is None:
        N += 1
    return N


def lambda_levels(b: int, d: int, n: int) -> dict:
    """Partition of the nonzero digit-vector values by squared norm k.
    Returns {k: sorted elements}; the union has exactly d^n - 1 elements."""
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    base = b * d - 1
    levels = {}
    for digits in itertools.product(range(d), repeat=n):
        k = sum(g * g for g in digits)
        if k == 0:
            continue
        value = sum(g * base**i for i, g in enumerate(digits))
        levels.setdefault(k, []).append(value)
    return {k: tuple(sorted(vs)) for k, vs in sorted(levels.items())}


def behrend_lambda(b: int, N: int) -> BehrendSet:
    """Construct the densest level set for the given weight cap and bound.
    The norm level k is chosen to maximize the set size (ties: smallest k)."""
    n, d = behrend_parameters(b, N)
    levels = lambda_levels(b, d, n)
    k = max(levels, key=lambda kk: (len(levels[kk]), -kk))
    elements = levels[k]
    if elements and elements[-1] > N:
        raise AssertionError("constructed element exceeds N")  # impossible: (db)^n <= N
    return BehrendSet(b=b, N=N, n=n, d=d, k=k, elements=elements)


def verify_solution_free(elements, b: int):
    """Exhaustively check every weighted equation with positive weights
    summing to at most b over all tuples from the set.

    Returns (True, None) if only constant tuples solve, otherwise
    (False, (tuple, weights)) with the first violation in scan order
    (t ascending, weights lexicographic, tuples lexicographic).
    """
    elements = sorted(set(elements))
    if b < 2:
        raise ValueError("b must be >= 2")
    for t in range(1, b + 1):
        for weights in itertools.product(range(1, b + 1), repeat=t):
            if sum(weights) > b:
                continue
            total = sum(weights)
            for xs in itertools.product(elements, repeat=t + 1):
                if len(set(xs)) == 1:
                    continue
                if sum(a * x for a, x in zip(weights, xs)) == total * xs[t]:
                    return False, (xs, weights)
    return True, None


# -- interval families -----------------------------------------------------------


@dataclass(frozen=True)
class IntervalFamily:
    """Union over j in a solution-free index set of the intervals
    [j*step, j*step + length) with step = 1/(2m(c+1)) and
    length = 1/(8m(c+1)^2); disjoint by construction since 4(c+1) > 1."""

    m: int
    c: int
    b: int
    lambda_set: BehrendSet
    result: IntervalSet

    @property
    def step(self) -> Fraction:
        return Fraction(1, 2 * self.m * (self.c + 1))

    @property
    def block_length(self) -> Fraction:
        return Fraction(1, 8 * self.m * (self.c + 1) ** 2)

    def block(self, j: int) -> tuple:
        lo = j * self.step
        return (lo, lo + self.block_length)

    def locate(self, point) -> int | None:
        """Index j of the block containing the point, or None."""
        x = Fraction(point) % 1
        for j in self.lambda_set.elements:
            lo, hi = self.block(j)
            if lo <= x < hi:
                return j
        return None


def interval_family(m: int, c: int, b: int) -> IntervalFamily:
    if c < 1:
        raise ValueError("c must be >= 1")
    lam = behrend_lambda(b, m)
    step = Fraction(1, 2 * m * (c + 1))
    length = Fraction(1, 8 * m * (c + 1) ** 2)
    pairs = [(j * step, j * step + length) for j in lam.elements]
    result = IntervalSet.from_pairs(pairs)
    if result.interval_count != lam.size:
        raise AssertionError("blocks must be pairwise disjoint")  # spacing > length
    return IntervalFamily(m=m, c=c, b=b, lambda_set=lam, result=result)


# -- the small-intersection skew counterexample ----------------------------------


@dataclass(frozen=True)
class CounterexampleBundle:
    system: SkewSystem
    family: IntervalFamily
    dependency: tuple
    support: tuple          # 1-based indices with nonzero dependency entry
    r: int
    set_measure: Fraction
    threshold: Fraction
    upper_bound: Fraction   # certified bound off the zero set
    target: tuple           # zero set of the supported polynomials in window
    report: ReturnSetReport

    def to_json_obj(self):
        return {
            "m": self.family.m,
            "c": self.family.c,
            "b": self.family.b,
            "lambda": list(self.family.lambda_set.elements),
            "base_set": self.system.base_set.to_json_obj(),
            "exponents": list(self.system.exponents),
            "dependency": list(self.dependency),
            "support": list(self.support),
            "r": self.r,
            "set_measure": frac_str(self.set_measure),
            "threshold": frac_str(self.threshold),
            "upper_bound": frac_str(self.upper_bound),
            "target": [list(p) for p in self.target],
            "report": self.report.to_json_obj(),
        }


def choose_admissible_m(ell: int, r: int, m_cap: int = 100000) -> int:
    """Smallest constructible m with 2*(8m(ell+1)^2)^(r-2) <= |Lambda_m|^(r-1).

    This is the exact-cardinality form of the size condition the bound chain
    needs: with it, |Lambda|*len^2 <= (|Lambda|*len)^r / 2 for the block
    length len = 1/(8m(ell+1)^2)."""
    best = None
    m = minimal_admissible_N(ell)
    while m <= m_cap:
        params = _try_parameters(ell, m)
        if params is None:
            m += 1
            continue
        lhs = 2 * (8 * m * (ell + 1) ** 2) ** (r - 2)
        n, d = params
        if (d**n - 1) ** (r - 1) >= lhs:
            # only enumerate levels when even the whole digit range d^n - 1
            # would not obviously fall short
            lam = behrend_lambda(ell, m)
            rhs = lam.size ** (r - 1)
            if lhs <= rhs:
                return m
            gap = Fraction(lhs, rhs)
        else:
            gap = Fraction(lhs, (d**n - 1) ** (r - 1))  # lower bound on the miss
        if best is None or gap < best[1]:
            best = (m, gap)
        m += 1
    detail = f"; closest m={best[0]} misses by factor >= {best[1]}" if best else ""
    raise ValueError(f"no admissible m <= {m_cap} for ell={ell}, r={r}{detail}")


def block_upper_bound(family: IntervalFamily, dependency, polys) -> Fraction:
    """Certified exact upper bound |Lambda| * len^2 for the correlation at any
    shift tuple with a nonzero entry, valid because every tuple of points of
    the family solving x_1+...+x_t = t*x_{t+1} mod 1 lies in a single block.

    All premises are re-checked here: the weighted combination of the
    polynomials over the support vanishes identically, the index set is
    solution-free at weight cap b, and the geometry keeps every mod-1
    solution an exact integer relation of block indices.
    """
    ell = len(dependency)
    combo = IntPoly.zero(polys[0].num_vars)
    for a, p in zip(dependency, polys):
        combo = combo + p.scale(a)
    if combo.terms:
        raise ValueError("dependency combination does not vanish")
    if sum(1 for a in dependency if a) > family.b:
        raise ValueError("dependency support exceeds the family's weight cap")
    ok, bad = verify_solution_free(family.lambda_set.elements, family.b)
    if not ok:
        raise ValueError(f"index set not solution-free: {bad}")
    sup = max(hi for _, hi in family.result.intervals)
    if not ell * sup <= 1:
        raise ValueError("blocks too long: mod-1 solutions need not be exact")
    if not ell * family.block_length * 2 * family.m * (family.c + 1) < 1:
        raise ValueError("block length too coarse for index forcing")
    return family.lambda_set.size * family.block_length**2


def build_small_intersection_counterexample(polys, r: int, window, *,
                                            dependency=None,
                                            m_cap: int = 100000,
                                            grid: int = 64) -> CounterexampleBundle:
    """Build the skew-product system whose large-return set at threshold
    mu^r(A)/2 is exactly the common zero set of the dependent polynomials,
    and certify that equality over the window.

    Points in the zero set get the exact correlation mu(A) (every shift is
    zero; identity factors elsewhere).  At any other point some supported
    shift is nonzero and the certified block bound |Lambda|*len^2, which the
    admissible m keeps at or below the threshold, rules membership out.

    A specific integer dependency vector may be passed in; by default the
    canonical one found by exact elimination is used.
    """
    polys = list(polys)
    ell = len(polys)
    if r < 2:
        raise ValueError("r must be >= 2")
    if any(p.is_constant for p in polys):
        raise ValueError("polynomials must be non-constant")
    if dependency is None:
        independent, dependency = q_linear_independence(polys)
        if independent:
            raise ValueError("polynomials are linearly independent; no dependency to exploit")
    else:
        dependency = tuple(int(a) for a in dependency)
        if len(dependency) != ell or not any(dependency):
            raise ValueError("dependency vector must be nonzero of the family's length")
    support = tuple(j + 1 for j, a in enumerate(dependency) if a)
    m = choose_admissible_m(ell, r, m_cap)
    family = interval_family(m, ell, ell)
    upper = block_upper_bound(family, dependency, polys)
    mu = family.result.measure()
    threshold = mu**r / 2
    if not upper <= threshold:
        raise AssertionError("admissibility did not push the bound under the threshold")
    system = SkewSystem(base_set=family.result, exponents=dependency)

    def shift_upper(speeds):
        return upper if any(speeds) else None

    report = return_set_window(system, polys, 0, window, grid,
                               threshold=threshold, shift_upper_bound=shift_upper)
    d = polys[0].num_vars
    target = tuple(
        n for n in window_points(tuple(normalize_window(window, d)))
        if all(polys[j - 1].evaluate(n) == 0 for j in support)
    )
    if report.members != target or report.inconclusive:
        raise RuntimeError("certified return set does not match the polynomial zero set")
    return CounterexampleBundle(
        system=system,
        family=family,
        dependency=dependency,
        support=support,
        r=r,
        set_measure=mu,
        threshold=threshold,
        upper_bound=upper,
        target=target,
        report=report,
    )


# -- modulus counterexample -------------------------------------------------------


def modulus_counterexample(polys, witness_m: int, window):
    """Finite cyclic counterexample from a modulus with no common root.

    Re-verifies the witness (raises if a common residue root exists), then
    certifies exactly that the return set of A = {0} in Z/MZ at
    epsilon = 1/(2 M^(l+1)) meets the window nowhere.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial family")
    if witness_m < 2:
        raise ValueError("witness modulus must be >= 2")
    root = has_common_root_mod(polys, witness_m)
    if root is not None:
        raise ValueError(f"not a witness: common root {root} mod {witness_m}")
    M = witness_m
    system = FiniteCyclicSystem(modulus=M, subset=frozenset({0}))
    epsilon = Fraction(1, 2 * M ** (len(polys) + 1))
    report = return_set_window(system, polys, epsilon, window)
    return system, report


# -- Diophantine return sets -------------------------------------------------------


def dist_to_nearest_int(x) -> Fraction:
    frac = Fraction(x) % 1
    return min(frac, 1 - frac)


def diophantine_set(polys, alphas, epsilon, window) -> tuple:
    """Exact members n of the window with ||p_j(n) * alpha_s|| < epsilon for
    every polynomial and every rational multiplier."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial family")
    alphas = [Fraction(a) for a in alphas]
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    d = polys[0].num_vars
    window = tuple(normalize_window(window, d))
    out = []
    for n in window_points(window):
        values = [p.evaluate(n) for p in polys]
        if all(dist_to_nearest_int(v * a) < epsilon for v in values for a in alphas):
            out.append(n)
    return tuple(out)


def find_diophantine_shift(polys, alphas, epsilon, search_box: int):
    """Least u (by sup-norm shell, then lexicographic) in [-box, box]^d with
    ||p_j(u) * alpha_s|| < epsilon/2 for all j, s; None when the box has no
    such point (a bounded-search result, not a nonexistence proof).

    The zero vector sits in the innermost shell, so families with zero
    constant terms always return u = 0.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial family")
    alphas = [Fraction(a) for a in alphas]
    half = Fraction(epsilon) / 2
    d = polys[0].num_vars
    for radius in range(search_box + 1):
        for u in itertools.product(range(-radius, radius + 1), repeat=d):
            if max(abs(x) for x in u) != radius and radius > 0:
                continue
            values = [p.evaluate(u) for p in polys]
            if all(dist_to_nearest_int(v * a) < half for v in values for a in alphas):
                return u
    return None


# -- Fourier coefficients of the uniform measure on {j/M} --------------------------


def lambda_fourier(M: int, a: int) -> Fraction:
    """(1/M) * sum over j of e^(2 pi i a j / M), which is 1 exactly when M
    divides a and 0 otherwise (the root-of-unity sum telescopes)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return Fraction(1) if a % M == 0 else Fraction(0)


# -- wildcard search over explicit tuple families ----------------------------------


@dataclass(frozen=True)
class DphjInstance:
    """Explicit family S of q-tuples of subsets of {1..N}^D."""

    q: int
    D: int
    N: int
    S: tuple    # sorted tuple of q-tuples of frozensets of D-tuples

    @classmethod
    def from_lists(cls, q: int, D: int, N: int, tuples) -> "DphjInstance":
        if q * N**D > 20:
            raise ValueError("instance beyond the exhaustive cap q*N^D <= 20")
        grid = set(itertools.product(range(1, N + 1), repeat=D))
        normalized = set()
        for tup in tuples:
            if len(tup) != q:
                raise ValueError(f"tuple of length {len(tup)}, expected {q}")
            parts = []
            for part in tup:
                part = frozenset((p,) if isinstance(p, int) else tuple(p) for p in part)
                if not part <= grid:
                    raise ValueError("subset outside {1..N}^D")
                parts.append(part)
            normalized.add(tuple(parts))
        return cls(q, D, N, tuple(sorted(normalized, key=_tuple_key)))

    @classmethod
    def full_space(cls, q: int, D: int, N: int) -> "DphjInstance":
        if q * N**D > 16:
            raise ValueError("full space too large to enumerate")
        grid = sorted(itertools.product(range(1, N + 1), repeat=D))
        subsets = []
        for size in range(len(grid) + 1):
            subsets.extend(frozenset(c) for c in itertools.combinations(grid, size))
        return cls.from_lists(q, D, N, itertools.product(subsets, repeat=q))

    def member(self, tup) -> bool:
        return tuple(tup) in set(self.S)


def _tuple_key(tup):
    return tuple(tuple(sorted(part)) for part in tup)


def dphj_validate(inst: DphjInstance, gamma, tup) -> bool:
    """Re-check the wildcard conditions by direct membership."""
    gamma = frozenset(gamma)
    cube = frozenset(itertools.product(sorted(gamma), repeat=inst.D))
    tup = tuple(tup)
    if not gamma or not inst.member(tup):
        return False
    if any(part & cube for part in tup):
        return False
    for j in range(inst.q):
        shifted = tup[:j] + (tup[j] | cube,) + tup[j + 1:]
        if not inst.member(shifted):
            return False
    return True


def dphj_search(inst: DphjInstance):
    """First (canonical order: gamma by size then lexicographic, then tuples
    in S) pair of a nonempty wildcard set and a base tuple such that the base
    and all q single-coordinate unions with gamma^D stay in S and gamma^D is
    disjoint from every coordinate."""
    members = set(inst.S)
    gammas = []
    for size in range(1, inst.N + 1):
        gammas.extend(itertools.combinations(range(1, inst.N + 1), size))
    for gamma in gammas:
        cube = frozenset(itertools.product(gamma, repeat=inst.D))
        for tup in inst.S:
            if any(part & cube for part in tup):
                continue
            if all(tup[:j] + (tup[j] | cube,) + tup[j + 1:] in members
                   for j in range(inst.q)):
                return frozenset(gamma), tup
    return None


# -- conditional constants -----------------------------------------------------------


@dataclass(frozen=True)
class ConditionalConstants:
    r: int
    c: Fraction
    degenerate: bool


def conditional_constants(ell: int, D: int, delta, C_value: int) -> ConditionalConstants:
    """r = C and c = delta / 2^(ell * r^D + r + 1), exactly.

    The constant C is an input (it comes from an unproven statement and has
    no known value); delta = 0 is allowed and flagged degenerate."""
    if ell < 1 or D < 1 or C_value < 1:
        raise ValueError("ell, D, C must be positive")
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    r = C_value
    exponent = ell * r**D + r + 1
    c = delta / 2**exponent
    return ConditionalConstants(r=r, c=c, degenerate=(delta == 0))
