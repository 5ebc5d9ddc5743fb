"""Multivariate integer polynomials and the predicates the toolkit cares about:
rational linear independence, essential distinctness, bounded joint
intersectivity, and degree-preserving restriction to lines.

Text format for polynomials: a sum of terms "c*x1^e1*...*xd^ed", with "n"
accepted as an alias for x1 (handy for one-variable input like "n^2 - n").
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd, prod


@dataclass(frozen=True)
class IntPoly:
    """Integer-coefficient polynomial in x1..xd, stored as sorted (exps, coeff) terms."""

    num_vars: int
    terms: tuple  # tuple of (exponent-tuple, nonzero int coeff), sorted

    @classmethod
    def from_terms(cls, num_vars: int, mapping) -> "IntPoly":
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        clean = {}
        for exps, coeff in dict(mapping).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {num_vars} variables")
            if coeff:
                clean[exps] = clean.get(exps, 0) + int(coeff)
        items = tuple(sorted((e, c) for e, c in clean.items() if c))
        return cls(num_vars, items)

    @classmethod
    def zero(cls, num_vars: int = 1) -> "IntPoly":
        return cls.from_terms(num_vars, {})

    @classmethod
    def parse(cls, text: str, num_vars: int | None = None) -> "IntPoly":
        """Parse "2*x1^2*x2 - 3*x2 + 1"; "n" is an alias for x1."""
        tokens = _tokenize(text)
        terms = {}
        max_var = 1
        sign = 1
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else None

        if peek() in ("+", "-"):
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
        if peek() is None:
            raise ValueError(f"empty polynomial text: {text!r}")
        while True:
            coeff = sign
            exps = {}
            saw_factor = False
            expect_factor = False
            while True:
                tok = peek()
                if tok is None or tok in ("+", "-"):
                    break
                if tok == "*":
                    if not saw_factor or expect_factor:
                        raise ValueError(f"misplaced '*' in {text!r}")
                    expect_factor = True
                    pos += 1
                    continue
                expect_factor = False
                if re.fullmatch(r"-?\d+", tok):
                    coeff *= int(tok)
                    pos += 1
                else:
                    if not (tok == "n" or re.fullmatch(r"x[1-9]\d*", tok)):
                        raise ValueError(f"unexpected token {tok!r} in {text!r}")
                    idx = 1 if tok == "n" else int(tok[1:])
                    max_var = max(max_var, idx)
                    pos += 1
                    power = 1
                    if peek() == "^":
                        pos += 1
                        exp_tok = peek()
                        if exp_tok is None or not re.fullmatch(r"\d+", exp_tok):
                            raise ValueError(f"bad exponent after '^' in {text!r}")
                        power = int(exp_tok)
                        pos += 1
                    exps[idx] = exps.get(idx, 0) + power
                saw_factor = True
            if not saw_factor or expect_factor:
                raise ValueError(f"dangling operator in {text!r}")
            terms.setdefault(tuple(sorted(exps.items())), 0)
            terms[tuple(sorted(exps.items()))] += coeff
            tok = peek()
            if tok is None:
                break
            sign = -1 if tok == "-" else 1
            pos += 1
        d = max_var if num_vars is None else num_vars
        if d < max_var:
            raise ValueError(f"polynomial uses x{max_var} but num_vars={d}")
        out = {}
        for items, coeff in terms.items():
            vec = [0] * d
            for idx, power in items:
                vec[idx - 1] = power
            out[tuple(vec)] = out.get(tuple(vec), 0) + coeff
        return cls.from_terms(d, out)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = ["n"] if self.num_vars == 1 else [f"x{i+1}" for i in range(self.num_vars)]
        parts = []
        for exps, coeff in sorted(self.terms, key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            factors = []
            if abs(coeff) != 1 or not any(exps):
                factors.append(str(abs(coeff)))
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            monomial = "*".join(factors)
            if not parts:
                parts.append(monomial if coeff > 0 else f"-{monomial}")
            else:
                parts.append(f"+ {monomial}" if coeff > 0 else f"- {monomial}")
        return " ".join(parts)

    # -- algebra -------------------------------------------------------------

    def _term_dict(self):
        return dict(self.terms)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("dimension mismatch")
        out = self._term_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return IntPoly.from_terms(self.num_vars, out)

    def __neg__(self) -> "IntPoly":
        return IntPoly.from_terms(self.num_vars, {e: -c for e, c in self.terms})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("dimension mismatch")
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly.from_terms(self.num_vars, out)

    def scale(self, c: int) -> "IntPoly":
        return IntPoly.from_terms(self.num_vars, {e: c * v for e, v in self.terms})

    def evaluate(self, point) -> int:
        point = _as_point(point, self.num_vars)
        total = 0
        for exps, coeff in self.terms:
            total += coeff * prod(x**e for x, e in zip(point, exps))
        return total

    def evaluate_mod(self, point, m: int) -> int:
        point = _as_point(point, self.num_vars)
        total = 0
        for exps, coeff in self.terms:
            v = coeff % m
            for x, e in zip(point, exps):
                v = v * pow(x % m, e, m) % m
            total = (total + v) % m
        return total

    @property
    def total_degree(self) -> int:
        """Max exponent sum over terms; the zero polynomial gets -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    @property
    def is_constant(self) -> bool:
        return self.total_degree <= 0

    def constant_term(self) -> int:
        for exps, coeff in self.terms:
            if not any(exps):
                return coeff
        return 0

    def top_form(self) -> "IntPoly":
        """The homogeneous part of highest total degree."""
        deg = self.total_degree
        return IntPoly.from_terms(
            self.num_vars, {e: c for e, c in self.terms if sum(e) == deg}
        )

    def restrict_to_line(self, direction) -> "IntPoly":
        """The univariate polynomial x -> p(a1*x, ..., ad*x)."""
        direction = _as_point(direction, self.num_vars)
        out = {}
        for exps, coeff in self.terms:
            s = sum(exps)
            value = coeff * prod(a**e for a, e in zip(direction, exps))
            if value:
                out[(s,)] = out.get((s,), 0) + value
        return IntPoly.from_terms(1, out)


def _tokenize(text: str):
    token_re = re.compile(r"\s*(x\d+|n|\d+|\^|\*|\+|-)")
    pos = 0
    tokens = []
    while pos < len(text):
        m = token_re.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos+10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _as_point(point, d: int):
    if isinstance(point, int):
        point = (point,)
    point = tuple(int(x) for x in point)
    if len(point) != d:
        raise ValueError(f"point of length {len(point)} for {d} variables")
    return point


# -- linear independence over Q ----------------------------------------------


def q_linear_independence(family):
    """Decide Q-linear independence of a polynomial family.

    Returns (True, None) when independent.  When dependent, returns
    (False, v) where v is a nonzero integer vector with sum(v[j]*p[j]) = 0,
    normalized primitive with first nonzero entry positive.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    d = family[0].num_vars
    if any(p.num_vars != d for p in family):
        raise ValueError("mixed num_vars in family")
    monomials = sorted({e for p in family for e, _ in p.terms},
                       key=lambda e: (sum(e), e), reverse=True)
    width = len(monomials)
    # Fraction-free elimination on [coeff-matrix | identity]; a row whose
    # coefficient part vanishes certifies a dependency via its identity part.
    rows = []
    for i, p in enumerate(family):
        td = dict(p.terms)
        rows.append([td.get(e, 0) for e in monomials] + [int(i == j) for j in range(len(family))])
    pivot_row = 0
    for col in range(width):
        src = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if src is None:
            continue
        rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        pv = rows[pivot_row][col]
        for r in range(pivot_row + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col]
                rows[r] = [pv * a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
                g = 0
                for v in rows[r]:
                    g = gcd(g, v)
                if g > 1:
                    rows[r] = [v // g for v in rows[r]]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    for r in range(len(rows)):
        if not any(rows[r][:width]):
            return False, _normalize_primitive(rows[r][width:])
    return True, None


def _normalize_primitive(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    vec = [v // g for v in vec]
    lead = next(v for v in vec if v)
    if lead < 0:
        vec = [-v for v in vec]
    return tuple(vec)


def essentially_distinct(family) -> bool:
    """True iff every pairwise difference p_j - p_i is non-constant."""
    family = list(family)
    if not family:
        raise ValueError("empty family")
    for p, q in itertools.combinations(family, 2):
        if (p - q).is_constant:
            return False
    return True


# -- joint intersectivity (bounded verdicts) ----------------------------------


@dataclass(frozen=True)
class IntersectivityVerdict:
    """Outcome of a bounded common-root search.

    A verdict never claims intersectivity beyond the tested bound; it records
    either a witness modulus with no common root (a refutation, exhaustively
    verified) or a common root for every prime power up to the bound.
    """

    jointly_intersective_up_to: int
    witness_modulus: int | None = None
    witness_roots: dict = field(default_factory=dict)

    @property
    def is_intersective(self) -> bool:
        return self.witness_modulus is None


def has_common_root_mod(family, m: int):
    """Lexicographically least common root of the family mod m, or None."""
    family = list(family)
    d = family[0].num_vars
    for point in itertools.product(range(m), repeat=d):
        if all(p.evaluate_mod(point, m) == 0 for p in family):
            return point
    return None


def prime_powers_upto(bound: int):
    out = []
    for q in range(2, bound + 1):
        p = _least_prime_factor(q)
        n = q
        while n % p == 0:
            n //= p
        if n == 1:
            out.append(q)
    return out


def _least_prime_factor(q: int) -> int:
    f = 2
    while f * f <= q:
        if q % f == 0:
            return f
        f += 1
    return q


def joint_intersectivity(family, modulus_bound: int) -> IntersectivityVerdict:
    """Search prime powers <= modulus_bound for a modulus with no common root.

    Composite moduli are covered by the Chinese Remainder Theorem: the family
    has a common root mod m1*m2 (coprime) iff it has one mod each factor, so
    only prime powers are searched.  The first failing prime power (ascending)
    becomes the witness modulus.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    if modulus_bound < 2:
        raise ValueError("modulus_bound must be >= 2")
    d = family[0].num_vars
    if any(p.num_vars != d for p in family):
        raise ValueError("mixed num_vars in family")
    roots = {}
    for q in prime_powers_upto(modulus_bound):
        root = has_common_root_mod(family, q)
        if root is None:
            return IntersectivityVerdict(modulus_bound, witness_modulus=q, witness_roots=roots)
        roots[q] = root
    return IntersectivityVerdict(modulus_bound, witness_modulus=None, witness_roots=roots)


# -- restriction to lines ------------------------------------------------------


def restrict_to_line(p: IntPoly, direction) -> IntPoly:
    return p.restrict_to_line(direction)


def find_degree_preserving_direction(p: IntPoly, search_box: int):
    """Lexicographically least a in [-box, box]^d, a != 0, with
    deg(p(a1*x, ..., ad*x)) equal to the total degree of p.

    Works by avoiding the zero set of the top-degree form: the leading
    coefficient of the restriction is exactly that form evaluated at a.
    """
    if p.is_constant:
        raise ValueError("polynomial must be non-constant")
    if search_box < 1:
        raise ValueError("search_box must be >= 1")
    top = p.top_form()
    for a in itertools.product(range(-search_box, search_box + 1), repeat=p.num_vars):
        if any(a) and top.evaluate(a) != 0:
            return a
    raise ValueError(
        f"no degree-preserving direction in [-{search_box}, {search_box}]^{p.num_vars}; "
        "enlarge the box"
    )
