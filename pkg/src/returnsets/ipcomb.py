"""Finite IP/VIP combinatorics.

Samples are tables mapping every subset of a finite ground set (labels,
usually {1..r}) to an integer vector.  The operations here are the discrete
derivative calculus on such tables, the alternating-difference degree check,
the level decomposition with its additive set-function extension, and
brute-force searches for IP_r-set witnesses.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

MAX_GROUND = 16       # full tables stored explicitly: 2^r entries
DEGREE_CHECK_CAP = 8  # exhaustive derivative check beyond this refuses


def _vec(value, dim=None):
    v = (value,) if isinstance(value, int) else tuple(int(x) for x in value)
    if dim is not None and len(v) != dim:
        raise ValueError(f"vector of length {len(v)}, expected {dim}")
    return v


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def subset_sum(generators, alpha) -> tuple:
    """Sum of generators[k-1] over k in alpha; the empty sum is 0."""
    gens = [_vec(g) for g in generators]
    if not gens:
        raise ValueError("no generators")
    dim = len(gens[0])
    total = (0,) * dim
    for k in alpha:
        if not 1 <= k <= len(gens):
            raise ValueError(f"index {k} outside 1..{len(gens)}")
        total = _vadd(total, gens[k - 1])
    return total


def ip_r_set(generators) -> set:
    """All 2^r - 1 nonempty subset sums, collapsed to a set."""
    gens = [_vec(g) for g in generators]
    r = len(gens)
    out = set()
    for mask in range(1, 1 << r):
        out.add(subset_sum(gens, [k + 1 for k in range(r) if mask >> k & 1]))
    return out


@dataclass(frozen=True)
class VipSample:
    """Integer-vector-valued table over all subsets of a finite ground set."""

    ground: tuple          # sorted distinct labels
    dim: int
    values: tuple          # ((frozenset, vector), ...) sorted; full table

    @classmethod
    def from_map(cls, ground, mapping, dim=None) -> "VipSample":
        ground = tuple(sorted(set(ground)))
        if len(ground) > MAX_GROUND:
            raise ValueError(f"ground set larger than {MAX_GROUND}")
        table = {frozenset(k): v for k, v in mapping.items()}
        if dim is None:
            dim = len(_vec(next(iter(table.values())))) if table else 1
        items = []
        for size in range(len(ground) + 1):
            for combo in itertools.combinations(ground, size):
                key = frozenset(combo)
                if key not in table:
                    raise ValueError(f"missing value for subset {sorted(key)}")
                items.append((key, _vec(table[key], dim)))
        return cls(ground, dim, tuple(items))

    @classmethod
    def from_polynomial(cls, poly, generators, labels=None) -> "VipSample":
        """The sample alpha -> p(sum of generators over alpha) (scalar, dim 1)."""
        gens = [_vec(g) for g in generators]
        labels = tuple(range(1, len(gens) + 1)) if labels is None else tuple(labels)
        mapping = {}
        for size in range(len(labels) + 1):
            for combo in itertools.combinations(range(len(gens)), size):
                key = frozenset(labels[i] for i in combo)
                point = subset_sum(gens, [i + 1 for i in combo])
                mapping[key] = (poly.evaluate(point),)
        return cls.from_map(labels, mapping, dim=1)

    def _table(self):
        return dict(self.values)

    def value(self, alpha) -> tuple:
        return self._table()[frozenset(alpha)]

    def scalar(self, alpha) -> int:
        v = self.value(alpha)
        if len(v) != 1:
            raise ValueError("scalar() on a sample of dim != 1")
        return v[0]

    @property
    def r(self) -> int:
        return len(self.ground)

    @property
    def anchored(self) -> bool:
        return self.value(()) == (0,) * self.dim


def discrete_derivative(phi: VipSample, beta) -> VipSample:
    """The table alpha -> phi(alpha | beta) - phi(alpha) over subsets of
    ground \\ beta.  beta may be empty (giving the zero map)."""
    beta = frozenset(beta)
    if not beta <= set(phi.ground):
        raise ValueError("beta not inside the ground set")
    rest = tuple(x for x in phi.ground if x not in beta)
    table = phi._table()
    mapping = {}
    for size in range(len(rest) + 1):
        for combo in itertools.combinations(rest, size):
            key = frozenset(combo)
            mapping[key] = _vsub(table[key | beta], table[key])
    return VipSample.from_map(rest, mapping, dim=phi.dim)


def vip_degree_check(phi: VipSample, t: int) -> bool:
    """True iff every composition of t+1 derivatives along pairwise disjoint
    nonempty subsets annihilates phi.

    Derivatives along sets reduce to derivatives along singletons: with the
    shift operator E_i f(a) = f(a | {i}) one has D_beta = prod(1 + D_i) - 1
    over i in beta, so every (t+1)-disjoint-set composition expands into
    singleton compositions with at least t+1 distinct indices.  It therefore
    suffices to check all (t+1)-element index subsets, which is what is done
    here; the naive disjoint-tuple enumeration is kept in the test suite as a
    cross-check.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if phi.r > DEGREE_CHECK_CAP:
        raise ValueError(f"exhaustive degree check capped at ground size {DEGREE_CHECK_CAP}")
    table = phi._table()
    zero = (0,) * phi.dim
    for indices in itertools.combinations(phi.ground, t + 1):
        rest = [x for x in phi.ground if x not in indices]
        for size in range(len(rest) + 1):
            for alpha in itertools.combinations(rest, size):
                base = frozenset(alpha)
                total = zero
                for k in range(t + 2):
                    sign = (-1) ** (t + 1 - k)
                    for chosen in itertools.combinations(indices, k):
                        term = table[base | frozenset(chosen)]
                        total = _vadd(total, term) if sign > 0 else _vsub(total, term)
                if total != zero:
                    return False
    return True


@dataclass(frozen=True)
class EtaDecomposition:
    """Level functions eta_t on t-element subsets reconstructing a sample via
    phi(alpha) = sum over t <= min(|alpha|, D) and t-subsets gamma of alpha
    of eta_t(gamma)."""

    ground: tuple
    dim: int
    D: int
    levels: tuple  # ((t, ((frozenset, vector), ...)), ...)

    def level(self, t: int) -> dict:
        for lt, items in self.levels:
            if lt == t:
                return dict(items)
        raise KeyError(t)

    def reconstruct(self, alpha) -> tuple:
        alpha = sorted(set(alpha))
        total = (0,) * self.dim
        for t in range(1, min(len(alpha), self.D) + 1):
            lvl = self.level(t)
            for gamma in itertools.combinations(alpha, t):
                total = _vadd(total, lvl[frozenset(gamma)])
        return total


def eta_decompose(phi: VipSample, D: int) -> EtaDecomposition:
    """Invert the level decomposition bottom-up and verify it reconstructs phi
    on every subset of the ground set.

    Requires phi anchored (value 0 on the empty set).  Reconstruction failure
    on some subset (necessarily of size > D) means phi does not have degree
    <= D and raises ValueError.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    if not phi.anchored:
        raise ValueError("sample is not anchored: phi(empty) != 0")
    table = phi._table()
    levels = {}
    for t in range(1, min(D, phi.r) + 1):
        lvl = {}
        for gamma in itertools.combinations(phi.ground, t):
            value = table[frozenset(gamma)]
            for tp in range(1, t):
                for sub in itertools.combinations(gamma, tp):
                    value = _vsub(value, levels[tp][frozenset(sub)])
            lvl[frozenset(gamma)] = value
        levels[t] = lvl
    decomp = EtaDecomposition(
        phi.ground, phi.dim, D,
        tuple((t, tuple(sorted(lvl.items(), key=lambda kv: sorted(kv[0]))))
              for t, lvl in levels.items()),
    )
    for key, expected in table.items():
        if decomp.reconstruct(key) != expected:
            raise ValueError(
                f"reconstruction fails on {sorted(key)}: sample does not have degree <= {D}"
            )
    return decomp


def eta_set_function(decomp: EtaDecomposition, A) -> tuple:
    """Additive extension of the decomposition to finite subsets of ground^D.

    A tuple (i_1, ..., i_D) contributes eta_t of its element set exactly when
    it is strictly increasing for its first t coordinates and constant from
    coordinate t on; every other tuple contributes nothing.  The empty set
    maps to 0, and disjoint unions add.
    """
    zero = (0,) * decomp.dim
    total = zero
    ground = set(decomp.ground)
    levels = {t: dict(items) for t, items in decomp.levels}
    for tup in A:
        tup = tuple(tup)
        if len(tup) != decomp.D or not set(tup) <= ground:
            raise ValueError(f"tuple {tup} not in ground^{decomp.D}")
        t = 1
        while t < decomp.D and tup[t] > tup[t - 1]:
            t += 1
        if all(x == tup[t - 1] for x in tup[t:]):
            total = _vadd(total, levels[t][frozenset(tup[:t])])
    return total


# -- IP_r* refutation search ---------------------------------------------------


def ip_r_star_witness_search(target, r: int, generator_box: int, window, dim: int = 1):
    """Search for r distinct generators whose whole IP_r set avoids the target.

    target: membership predicate on integer vectors, defined at least on the
    window (a list of per-axis (lo, hi) inclusive bounds).  Only generator
    tuples whose 2^r - 1 subset sums all stay inside the window are admitted;
    the lexicographically least witness is returned, or None ("no witness in
    box", which is inconclusive and never a proof that the target meets every IP_r set).
    """
    if r < 1 or r > 5:
        raise ValueError("r must be in 1..5 (exhaustive regime)")
    window = normalize_window(window, dim)
    domain = list(itertools.product(*(range(-generator_box, generator_box + 1)
                                      for _ in range(dim))))
    admissible_seen = False
    for combo in itertools.combinations(domain, r):
        sums = ip_r_set(combo)
        if not all(_in_window(s, window) for s in sums):
            continue
        admissible_seen = True
        if not any(target(s) for s in sums):
            return combo
    if not admissible_seen:
        raise ValueError("window too small to contain any admissible IP_r set")
    return None


def witness_certificate(generators, target_id: str = "target") -> str:
    """JSON certificate for a successful witness search."""
    sums = sorted(ip_r_set(generators))
    payload = {
        "generators": [list(g) for g in generators],
        "subset_sums": [list(s) for s in sums],
        "avoided_set_id": target_id,
    }
    return json.dumps(payload, sort_keys=True)


def normalize_window(window, dim: int):
    window = list(window)
    if window and isinstance(window[0], int):
        window = [tuple(window)]
    window = [(int(lo), int(hi)) for lo, hi in window]
    if len(window) != dim:
        raise ValueError(f"window has {len(window)} axes, expected {dim}")
    for lo, hi in window:
        if lo > hi:
            raise ValueError("empty window axis")
    return window


def _in_window(point, window) -> bool:
    return all(lo <= x <= hi for x, (lo, hi) in zip(point, window))
