"""Ideal-class-group algebra for small base fields.

Class groups are finite abelian groups presented by invariant factors;
subgroups are kept in a canonical Hermite-style normal form over the
ambient relations, so two subgroups are equal iff their basis matrices
are literally equal.  Imaginary-quadratic class groups are computed from
reduced binary quadratic forms under Gaussian composition, and the
norm-class subgroups W(k, E) are generated from streams of prime norms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from sympy import primerange
from sympy.ntheory import sqrt_mod

from .cyclo import (
    DeclaredDataError,
    EFieldDescriptor,
    FieldSpec,
    field_discriminant,
    gal_subgroup,
)

__all__ = [
    "FiniteAbelianGroup",
    "ClassSubgroup",
    "ClassGroupData",
    "WReport",
    "DEFAULT_STREAM_BOUND",
    "class_group_ambient",
    "class_group_imag_quadratic",
    "power_subgroup",
    "prime_norm_class_stream",
    "principal_descriptor",
    "w_subgroup",
    "check_26acta",
    "qf_reduce",
    "qf_compose",
    "qf_principal",
    "reduced_forms",
]

DEFAULT_STREAM_BOUND = 1000
STABLE_TAIL = 50


# -- ambient groups ------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of Z/d_i with d_1 | d_2 | ... ; elements are vectors."""

    divisors: tuple

    def __post_init__(self):
        for d in self.divisors:
            if d < 1:
                raise ValueError(f"divisors must be >= 1, got {self.divisors}")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise ValueError(f"divisors must form a chain: {self.divisors}")

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def order(self) -> int:
        return prod(self.divisors)

    def zero(self) -> tuple:
        return (0,) * self.rank

    def reduce(self, vec) -> tuple:
        if len(vec) != self.rank:
            raise ValueError(f"vector {vec} has wrong length for {self.divisors}")
        return tuple(int(v) % d for v, d in zip(vec, self.divisors))

    def add(self, x, y) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.divisors))

    def neg(self, x) -> tuple:
        return tuple((-a) % d for a, d in zip(x, self.divisors))

    def scale(self, k: int, x) -> tuple:
        return tuple((k * a) % d for a, d in zip(x, self.divisors))

    def elements(self):
        return (tuple(v) for v in itertools.product(*[range(d) for d in self.divisors]))


# -- canonical subgroup bases (row HNF over the ambient relations) --------

def _hnf_rows(rows, r: int) -> tuple:
    """Canonical upper-triangular basis of the lattice spanned by rows.

    Assumes full rank (callers always include the ambient relation rows),
    so the result is r x r with positive diagonal and entries above each
    pivot reduced into [0, pivot).
    """
    pool = [list(map(int, row)) for row in rows if any(row)]
    pivots: list[list[int]] = []
    for col in range(r):
        while True:
            cand = [row for row in pool if row[col] != 0]
            if len(cand) <= 1:
                break
            cand.sort(key=lambda row: abs(row[col]))
            p = cand[0]
            for row in cand[1:]:
                q = row[col] // p[col]
                for i in range(col, r):
                    row[i] -= q * p[i]
            pool = [row for row in pool if any(row)]
        cand = [row for row in pool if row[col] != 0]
        if not cand:
            raise ValueError("lattice is not of full rank")
        p = cand[0]
        pool.remove(p)
        if p[col] < 0:
            p = [-x for x in p]
        pivots.append(p)
    for i in range(r):
        for k in range(i):
            q = pivots[k][i] // pivots[i][i]
            if q:
                for j in range(r):
                    pivots[k][j] -= q * pivots[i][j]
    return tuple(tuple(row) for row in pivots)


@dataclass(frozen=True)
class ClassSubgroup:
    """Subgroup of a FiniteAbelianGroup with a canonical basis matrix."""

    ambient: FiniteAbelianGroup
    basis: tuple  # full-rank HNF rows, ambient relations included

    @staticmethod
    def from_generators(ambient: FiniteAbelianGroup, vectors) -> "ClassSubgroup":
        r = ambient.rank
        rows = [list(ambient.reduce(v)) for v in vectors]
        rows += [[ambient.divisors[i] if j == i else 0 for j in range(r)]
                 for i in range(r)]
        return ClassSubgroup(ambient, _hnf_rows(rows, r))

    @staticmethod
    def trivial(ambient: FiniteAbelianGroup) -> "ClassSubgroup":
        return ClassSubgroup.from_generators(ambient, [])

    @staticmethod
    def full(ambient: FiniteAbelianGroup) -> "ClassSubgroup":
        r = ambient.rank
        eye = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
        return ClassSubgroup.from_generators(ambient, eye)

    @property
    def order(self) -> int:
        det = prod(self.basis[i][i] for i in range(self.ambient.rank))
        return self.ambient.order // det

    def contains(self, vec) -> bool:
        x = list(self.ambient.reduce(vec))
        for i in range(self.ambient.rank):
            p = self.basis[i][i]
            if x[i] % p != 0:
                return False
            q = x[i] // p
            for j in range(i, self.ambient.rank):
                x[j] -= q * self.basis[i][j]
        return True

    def includes(self, other: "ClassSubgroup") -> bool:
        if self.ambient != other.ambient:
            raise ValueError("subgroups live in different ambient groups")
        return all(self.contains(row) for row in other.basis)

    def join(self, other: "ClassSubgroup") -> "ClassSubgroup":
        if self.ambient != other.ambient:
            raise ValueError("subgroups live in different ambient groups")
        return ClassSubgroup.from_generators(self.ambient, self.basis + other.basis)

    def meet(self, other: "ClassSubgroup") -> "ClassSubgroup":
        if self.ambient != other.ambient:
            raise ValueError("subgroups live in different ambient groups")
        common = self.element_set() & other.element_set()
        return ClassSubgroup.from_generators(self.ambient, sorted(common))

    def index_in(self, other: "ClassSubgroup") -> int:
        if not other.includes(self):
            raise ValueError("index undefined: not a subgroup")
        return other.order // self.order

    def element_set(self) -> frozenset:
        amb = self.ambient
        gens = [amb.reduce(row) for row in self.basis]
        seen = {amb.zero()}
        frontier = [amb.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = amb.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generator_rows(self) -> list:
        """Nonzero basis rows reduced mod the ambient divisors (for display)."""
        out = []
        for row in self.basis:
            red = self.ambient.reduce(row)
            if any(red):
                out.append(list(red))
        return out

    def as_json(self) -> dict:
        return {"divisors": list(self.ambient.divisors),
                "generators": self.generator_rows(),
                "order": self.order}


def power_subgroup(a: ClassSubgroup, t, ambient: FiniteAbelianGroup | None = None
                   ) -> ClassSubgroup:
    """A^t for t a non-negative integer or half-integer.

    Integer t gives the image of the t-th power map.  For half-integer t
    the result is { x : x^2 in A^(2t) }, which depends on the ambient
    group; the ambient must then be passed explicitly.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError(f"exponent must be non-negative, got {t}")
    amb = a.ambient
    r = amb.rank
    if t.denominator == 1:
        k = int(t)
        rows = [[k * v for v in row] for row in a.basis]
        rows += [[amb.divisors[i] if j == i else 0 for j in range(r)]
                 for i in range(r)]
        return ClassSubgroup(amb, _hnf_rows(rows, r))
    if t.denominator != 2:
        raise ValueError(f"exponent must be integer or half-integer, got {t}")
    if ambient is None:
        raise ValueError("half-integer powers require the ambient group explicitly")
    if ambient != amb:
        raise ValueError("ambient group does not match the subgroup's ambient")
    doubled = power_subgroup(a, t * 2)
    h = doubled.basis
    rows = [list(row) for row in h]
    for bits in itertools.product((0, 1), repeat=r):
        if not any(bits):
            continue
        comb = [sum(bits[i] * h[i][j] for i in range(r)) for j in range(r)]
        if all(v % 2 == 0 for v in comb):
            rows.append([v // 2 for v in comb])
    return ClassSubgroup(amb, _hnf_rows(rows, r))


# -- binary quadratic forms ----------------------------------------------

def _solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    """Solutions of ax = b (mod m) as u + v Z."""
    g, d = _gcdext(a, m)
    if b % g != 0:
        raise ValueError("no solution")
    return (b // g) * d % m, m // g


def _gcdext(a: int, m: int) -> tuple[int, int]:
    old_r, r = a, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r < 0:
        old_r, old_s = -old_r, -old_s
    return old_r, old_s


def qf_principal(disc: int) -> tuple:
    k = disc % 2
    return (1, k, (k * k - disc) // 4)


def qf_normalize(f: tuple) -> tuple:
    a, b, c = f
    r = (a - b) // (2 * a)
    return (a, b + 2 * r * a, a * r * r + b * r + c)


def qf_reduce(f: tuple) -> tuple:
    a, b, c = qf_normalize(f)
    while not (a < c or (a == c and b >= 0)):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return (a, b, c)


def qf_compose(f1: tuple, f2: tuple) -> tuple:
    """Gaussian composition of primitive forms of the same discriminant."""
    if f1 == f2:
        a, b, c = f1
        mu = _solve_linmod(b, c, a)[0]
        return qf_reduce((a * a, b - 2 * a * mu, mu * mu - (b * mu - c) // a))
    a, b, c = f1
    al, be, ga = f2
    g = (b + be) // 2
    h = -(b - be) // 2
    w = gcd(gcd(a, al), g)
    j = w
    s = a // w
    t = al // w
    u = g // w
    mu, nu = _solve_linmod(t * u, h * u + s * c, s * t)
    lam = _solve_linmod(t * nu, h - t * mu, s)[0]
    k = mu + nu * lam
    lo = (k * t - h) // s
    m = (t * u * k - h * u - c * s) // (s * t)
    return qf_reduce((s * t, j * u - (k * t + lo * s), k * lo - j * m))


def reduced_forms(disc: int) -> list:
    """All primitive reduced forms of negative discriminant, sorted."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"not a negative quadratic discriminant: {disc}")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2 != 0:
                continue
            num = b * b - disc
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
    return sorted(out)


@dataclass(frozen=True)
class ClassGroupData:
    """Class group of an imaginary quadratic field in invariant factors."""

    disc: int
    ambient: FiniteAbelianGroup
    forms: tuple                  # reduced forms, sorted
    vector_of: tuple              # vector_of[i] = class vector of forms[i]

    def vector(self, form: tuple) -> tuple:
        red = qf_reduce(form)
        try:
            return self.vector_of[self.forms.index(red)]
        except ValueError:
            raise ValueError(f"form {form} has discriminant != {self.disc}") from None


def _partition_from_counts(forms, pow_of, ell: int) -> list:
    """Exponent partition of the ell-part, from |{x : x^(ell^j) = 1}|."""
    ident = forms[0]
    counts = [1]
    j = 0
    while True:
        j += 1
        m = ell ** j
        n_j = sum(1 for f in forms if pow_of(f, m) == ident)
        counts.append(n_j)
        if n_j == counts[-2]:
            break
    ranks = []
    for i in range(1, len(counts)):
        q, rem = divmod(counts[i], counts[i - 1])
        assert rem == 0
        r = 0
        while q > 1:
            q //= ell
            r += 1
        ranks.append(r)
    parts = []
    for jj in range(len(ranks)):
        nxt = ranks[jj + 1] if jj + 1 < len(ranks) else 0
        parts.extend([jj + 1] * (ranks[jj] - nxt))
    return sorted(parts, reverse=True)


@lru_cache(maxsize=None)
def class_group_imag_quadratic(d: int) -> ClassGroupData:
    """Class group of Q(sqrt(-d)) from reduced-form composition."""
    disc = field_discriminant(d)
    forms = reduced_forms(disc)
    ident = qf_principal(disc)
    assert forms[0] == ident
    h = len(forms)

    def pow_of(f, n):
        acc, base = ident, f
        while n:
            if n & 1:
                acc = qf_compose(acc, base)
            n >>= 1
            if n:
                base = qf_compose(base, base)
        return acc

    factors = {}
    hh = h
    for p in primerange(2, h + 1):
        while hh % p == 0:
            hh //= p
            factors[p] = factors.get(p, 0) + 1
    parts_by_p = {p: _partition_from_counts(forms, pow_of, p) for p in factors}
    width = max((len(v) for v in parts_by_p.values()), default=0)
    divisors = []
    for i in range(width):
        dd = 1
        for p, parts in parts_by_p.items():
            if i < len(parts):
                dd *= p ** parts[i]
        divisors.append(dd)
    divisors = tuple(reversed(divisors))  # ascending chain d_1 | d_2 | ...
    ambient = FiniteAbelianGroup(divisors)

    order_of = {}
    for f in forms:
        o, acc = 1, f
        while acc != ident:
            acc = qf_compose(acc, f)
            o += 1
        order_of[f] = o

    targets = sorted(divisors, reverse=True)
    basis: list[tuple] = []

    def extend(i, span):
        if i == len(targets):
            return True
        dd = targets[i]
        for f in forms:
            if order_of[f] != dd:
                continue
            new_span = set()
            acc = ident
            for _ in range(dd):
                new_span.update(qf_compose(s, acc) for s in span)
                acc = qf_compose(acc, f)
            if len(new_span) == len(span) * dd:
                basis.append(f)
                if extend(i + 1, new_span):
                    return True
                basis.pop()
        return False

    if not extend(0, {ident}):
        raise AssertionError(f"no basis found for class group of disc {disc}")
    basis_asc = list(reversed(basis))  # align with ascending divisors

    vec_of = {}
    for exps in itertools.product(*[range(dd) for dd in divisors]):
        f = ident
        for g, e in zip(basis_asc, exps):
            f = qf_compose(f, pow_of(g, e))
        vec_of.setdefault(f, exps)
    assert len(vec_of) == h
    return ClassGroupData(disc, ambient, tuple(forms),
                          tuple(vec_of[f] for f in forms))


# -- prime norm streams and W subgroups -----------------------------------

def class_group_ambient(k: FieldSpec) -> FiniteAbelianGroup:
    if k.kind == "rationals":
        return FiniteAbelianGroup(())
    if k.kind == "imag_quadratic":
        return class_group_imag_quadratic(k.d).ambient
    if k.kind == "declared":
        return FiniteAbelianGroup(k.class_group)
    raise ValueError(f"unknown field kind {k.kind!r}")


def _split_prime_form(disc: int, p: int) -> tuple:
    if p == 2:
        return (2, 1, (1 - disc) // 8)
    r = min(sqrt_mod(disc % p, p, all_roots=True))
    b = r if (r - disc) % 2 == 0 else p - r
    return (p, b, (b * b - disc) // (4 * p))


def prime_norm_class_stream(k: FieldSpec, bound: int) -> list:
    """(norm, class vector) for primes over the rational primes <= bound.

    Ramified primes are skipped; split primes contribute two entries
    (conjugate classes), inert primes one principal entry of norm p^2.
    """
    if k.kind == "rationals":
        return [(p, ()) for p in primerange(2, bound + 1)]
    if k.kind == "imag_quadratic":
        data = class_group_imag_quadratic(k.d)
        amb = data.ambient
        out = []
        from sympy.functions.combinatorial.numbers import kronecker_symbol
        for p in primerange(2, bound + 1):
            if data.disc % p == 0:
                continue
            chi = kronecker_symbol(data.disc, p)
            if chi == 1:
                vec = data.vector(_split_prime_form(data.disc, p))
                out.append((p, vec))
                out.append((p, amb.neg(vec)))
            else:
                out.append((p * p, amb.zero()))
        return out
    if k.kind == "declared":
        out = []
        for norm, vec in k.prime_norm_classes:
            p = min(factorint_first(norm))
            if p <= bound:
                out.append((norm, vec))
        if not out:
            raise ValueError(f"declared prime table is empty below bound {bound}")
        return out
    raise ValueError(f"unknown field kind {k.kind!r}")


def factorint_first(n: int) -> dict:
    from sympy import factorint
    f = factorint(n)
    if len(f) != 1:
        raise DeclaredDataError(f"declared norm {n} is not a prime power")
    return f


def principal_descriptor(m: int) -> EFieldDescriptor:
    """Descriptor of the full cyclotomic extension k(zeta_m)."""
    return EFieldDescriptor(m, (1 % m,))


@dataclass(frozen=True)
class WReport:
    m: int
    s: tuple
    order: int
    stable_after: int | None     # largest prime that last enlarged the subgroup
    tail: int                    # contributing primes since the last enlargement
    heuristic: bool              # False when the value came from a declared table
    declared_agrees: bool | None

    @property
    def heuristically_complete(self) -> bool:
        return not self.heuristic or self.tail >= STABLE_TAIL

    def as_json(self, subgroup: ClassSubgroup) -> dict:
        out = {"m": self.m, "s": list(self.s),
               "generators": subgroup.generator_rows(),
               "order": self.order,
               "stable_after": self.stable_after,
               "heuristic": self.heuristic,
               "heuristically_complete": self.heuristically_complete}
        if self.declared_agrees is not None:
            out["declared_agrees"] = self.declared_agrees
        return out


def _stream_w(k: FieldSpec, desc: EFieldDescriptor, bound: int
              ) -> tuple[ClassSubgroup, int | None, int]:
    amb = class_group_ambient(k)
    t = gal_subgroup(k, desc.m)
    s_set = frozenset(desc.s)
    if s_set - t.member_set():
        raise ValueError(f"descriptor S {desc.s} is not inside T_{desc.m}")
    sub = ClassSubgroup.trivial(amb)
    last_enlarged = None
    tail = 0
    current_p = None
    contributed = enlarged = False
    for norm, vec in prime_norm_class_stream(k, bound):
        p = min(factorint_first(norm))
        if p != current_p:
            if current_p is not None and contributed:
                tail = 0 if enlarged else tail + 1
                if enlarged:
                    last_enlarged = current_p
            current_p = p
            contributed = enlarged = False
        if gcd(norm, desc.m) != 1:
            continue
        coset = norm % desc.m
        if coset not in t:
            raise DeclaredDataError(
                f"prime norm {norm} falls outside T_{desc.m} = {t.members}")
        f = 1
        acc = coset
        while acc not in s_set:
            acc = (acc * coset) % desc.m
            f += 1
        contributed = True
        contrib = amb.scale(f, amb.reduce(vec))
        if not sub.contains(contrib):
            sub = sub.join(ClassSubgroup.from_generators(amb, [contrib]))
            enlarged = True
    if current_p is not None and contributed:
        tail = 0 if enlarged else tail + 1
        if enlarged:
            last_enlarged = current_p
    return sub, last_enlarged, tail


@lru_cache(maxsize=None)
def w_subgroup(k: FieldSpec, desc: EFieldDescriptor, bound: int = DEFAULT_STREAM_BOUND
               ) -> tuple[ClassSubgroup, WReport]:
    """W(k, E): norm classes from E, as a subgroup of the class group of k.

    Every ideal class of E contains unramified degree-one primes, so the
    subgroup is generated by cls(p)^f over unramified primes p of k with
    norm coprime to m, where f is the order of the norm's residue class
    in T_m / S.  Declared tables take precedence; disagreement between a
    declared value and a nonempty stream is an error.
    """
    amb = class_group_ambient(k)
    declared = None
    if k.kind == "declared":
        for m, s, rows in k.declared_w:
            if m == desc.m and s == tuple(desc.s):
                declared = ClassSubgroup.from_generators(amb, rows)
                break
    try:
        streamed, last_enlarged, tail = _stream_w(k, desc, bound)
    except ValueError as exc:
        if declared is None or isinstance(exc, DeclaredDataError):
            raise
        streamed = None
        last_enlarged, tail = None, 0
    if declared is not None:
        agrees = None
        if streamed is not None:
            agrees = streamed == declared
            if not agrees:
                raise DeclaredDataError(
                    f"declared W for (m={desc.m}, s={desc.s}) has order "
                    f"{declared.order}, but the prime stream generates order "
                    f"{streamed.order}")
        report = WReport(desc.m, tuple(desc.s), declared.order,
                         last_enlarged, tail, False, agrees)
        return declared, report
    report = WReport(desc.m, tuple(desc.s), streamed.order,
                     last_enlarged, tail, True, None)
    return streamed, report


def check_26acta(k: FieldSpec, m: int, n: int,
                 bound: int = DEFAULT_STREAM_BOUND) -> bool:
    """W(k,m)^n inside W(k,mn), for rad(n) dividing m."""
    rad = prod(factorint_first_all(n))
    if m % rad != 0:
        raise ValueError(f"rad({n}) = {rad} does not divide m = {m}")
    w_m, _ = w_subgroup(k, principal_descriptor(m), bound)
    w_mn, _ = w_subgroup(k, principal_descriptor(m * n), bound)
    return w_mn.includes(power_subgroup(w_m, n))


def factorint_first_all(n: int) -> list:
    from sympy import factorint
    return list(factorint(n))
