"""Exact finite-group engine on explicit Cayley tables.

Groups live on the carrier ``0..order-1`` with a full multiplication
table, so orders, normalizers, complements and subgroup searches are all
answered exhaustively.  The intended scale is prime-power orders up to a
few thousand; ``DEFAULT_ORDER_CAP`` guards against materializing more.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

__all__ = [
    "DEFAULT_ORDER_CAP",
    "GroupConstructionError",
    "FiniteGroup",
    "Subgroup",
    "GroupHom",
    "build_group",
    "cyclic_group",
    "perm_group",
    "direct_product",
    "semidirect_product",
    "heisenberg_group",
    "modular_group",
    "two_generator_l2_group",
    "conjugation_action",
    "find_complement",
    "normal_abelian_subgroups",
    "quotient_group",
]

DEFAULT_ORDER_CAP = 2500


class GroupConstructionError(ValueError):
    """A group spec could not be realized as stated."""


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise GroupConstructionError(f"group order {order} exceeds cap {cap}")


class FiniteGroup:
    """Finite group on indices 0..order-1 with an explicit Cayley table."""

    def __init__(self, table, identity: int = 0, name: str = "G",
                 labels=None, check: bool = True):
        tbl = np.asarray(table, dtype=np.int64)
        if tbl.ndim != 2 or tbl.shape[0] != tbl.shape[1]:
            raise GroupConstructionError("Cayley table must be square")
        self.table = tbl
        self.table.setflags(write=False)
        self.order = int(tbl.shape[0])
        self.identity = int(identity)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        self._cache: dict = {}
        if check:
            self._check_axioms_light()
        inv = np.argmax(self.table == self.identity, axis=1)
        self._inv = inv
        self._inv.setflags(write=False)

    # -- construction-time checks -------------------------------------

    def _check_axioms_light(self) -> None:
        n = self.order
        t = self.table
        if t.min() < 0 or t.max() >= n:
            raise GroupConstructionError("table entries out of range")
        e = self.identity
        if not (np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))):
            raise GroupConstructionError("identity is not two-sided")
        # latin square: every row and column is a permutation
        full = np.arange(n)
        if not (np.array_equal(np.sort(t, axis=1), np.tile(full, (n, 1)))
                and np.array_equal(np.sort(t, axis=0), np.tile(full[:, None], (1, n)))):
            raise GroupConstructionError("table is not a latin square")
        if not (t == e).any(axis=1).all():
            raise GroupConstructionError("some element has no inverse")

    def check_associativity(self) -> None:
        """Exhaustive associativity scan; O(order^3), use on demand."""
        t = self.table
        for a in range(self.order):
            if not np.array_equal(t[t[a], :], np.take(t[a], t)):
                raise GroupConstructionError(f"associativity fails at element {a}")

    # -- elementary operations ----------------------------------------

    def mult(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self._inv[g]])

    def elements(self) -> range:
        return range(self.order)

    def power(self, g: int, k: int):
        pw = self.powers(g)
        return pw[k % len(pw)]

    def powers(self, g: int) -> tuple:
        """(1, g, g^2, ..., g^(o-1)) for o the order of g."""
        key = ("powers", g)
        if key not in self._cache:
            out = [self.identity]
            x = g
            while x != self.identity:
                out.append(x)
                x = int(self.table[x, g])
            self._cache[key] = tuple(out)
        return self._cache[key]

    def element_order(self, g: int) -> int:
        return int(self.orders[g])

    @property
    def orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            ords = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            base = np.arange(n)
            k = 1
            while (ords == 0).any():
                ords[(cur == self.identity) & (ords == 0)] = k
                cur = self.table[cur, base]
                k += 1
            ords.setflags(write=False)
            self._cache["orders"] = ords
        return self._cache["orders"]

    def exponent(self) -> int:
        return int(lcm(*{int(o) for o in self.orders}))

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool(np.array_equal(self.table, self.table.T))
        return self._cache["abelian"]

    @property
    def conj_table(self) -> np.ndarray:
        """conj_table[g, x] = g x g^-1."""
        if "conj" not in self._cache:
            c = self.table[self.table, self._inv[:, None]]
            c.setflags(write=False)
            self._cache["conj"] = c
        return self._cache["conj"]

    def center(self) -> "Subgroup":
        if "center" not in self._cache:
            mask = (self.table == self.table.T).all(axis=1)
            self._cache["center"] = Subgroup(self, tuple(np.flatnonzero(mask)))
        return self._cache["center"]

    def conjugacy_class(self, x: int) -> frozenset:
        return frozenset(int(v) for v in np.unique(self.conj_table[:, x]))

    # -- subgroups -----------------------------------------------------

    def cyclic_subgroup(self, g: int) -> frozenset:
        return frozenset(self.powers(g))

    def closure(self, gens) -> frozenset:
        """Subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = sorted(set(gens))
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(t[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, tuple(sorted(self.closure(gens))))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    # -- torsion bookkeeping --------------------------------------------

    def ell_part(self, g: int, ell: int) -> int:
        """The ell-primary component of g inside <g>."""
        o = self.element_order(g)
        o_ell = 1
        while o % ell == 0:
            o //= ell
            o_ell *= ell
        return self.power(g, o)

    def ell_power_elements(self, ell: int) -> tuple:
        """All elements of ell-power order (identity included)."""
        ords = self.orders
        out = []
        for g in range(self.order):
            o = int(ords[g])
            while o % ell == 0:
                o //= ell
            if o == 1:
                out.append(g)
        return tuple(out)

    # -- normalizer / centralizer of a cyclic subgroup -------------------

    def normalizer_centralizer(self, tau: int) -> tuple["Subgroup", "Subgroup"]:
        """(N, C) for the cyclic subgroup <tau>: N normalizes, C centralizes."""
        pw = set(self.powers(tau))
        col = self.conj_table[:, tau]
        n_members = tuple(int(g) for g in range(self.order) if int(col[g]) in pw)
        c_members = tuple(int(g) for g in np.flatnonzero(col == tau))
        return Subgroup(self, n_members), Subgroup(self, c_members)

    def phi_image(self, tau: int) -> frozenset:
        """Image of the conjugation character on N(<tau>), mod o(tau).

        For g normalizing <tau>, g tau g^-1 = tau^a with a invertible
        mod o(tau); the set of all such a forms a subgroup of the unit
        group.  Undefined for the identity element.
        """
        if tau == self.identity:
            raise ValueError("conjugation character undefined for the identity")
        o = self.element_order(tau)
        pw = self.powers(tau)
        dlog = {x: i for i, x in enumerate(pw)}
        col = self.conj_table[:, tau]
        image = set()
        for g in range(self.order):
            a = dlog.get(int(col[g]))
            if a is not None:
                image.add(a % o)
        return frozenset(image)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FiniteGroup, stored as a sorted member tuple."""

    group: FiniteGroup
    members: tuple

    def __post_init__(self):
        if tuple(sorted(set(self.members))) != self.members:
            raise ValueError("subgroup members must be sorted and unique")

    @property
    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set()

    def is_normal(self) -> bool:
        mem = self.member_set()
        conj = self.group.conj_table
        sub = conj[:, self.members]
        return all(int(v) in mem for v in np.unique(sub))

    def is_abelian(self) -> bool:
        t = self.group.table
        idx = np.array(self.members)
        block = t[np.ix_(idx, idx)]
        return bool(np.array_equal(block, block.T))

    def exponent(self) -> int:
        ords = self.group.orders
        return int(lcm(*{int(ords[g]) for g in self.members}))

    def conjugate_by(self, g: int) -> "Subgroup":
        conj = self.group.conj_table
        return Subgroup(self.group, tuple(sorted(int(conj[g, x]) for x in self.members)))

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, dict, tuple]:
        """Standalone group on this carrier.

        Returns (group, to_sub, from_sub): ``to_sub`` maps parent index ->
        subgroup index, ``from_sub`` the inverse as a tuple.
        """
        idx = {g: i for i, g in enumerate(self.members)}
        t = self.group.table
        n = self.order
        tbl = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(self.members):
            row = t[a, list(self.members)]
            tbl[i] = [idx[int(x)] for x in row]
        g = FiniteGroup(tbl, identity=idx[self.group.identity],
                        name=name or f"{self.group.name}|sub{self.order}")
        return g, idx, self.members


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between finite groups, stored as a full image table."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise ValueError("mapping must cover the source carrier")

    def __call__(self, g: int) -> int:
        return self.mapping[g]

    def verify(self) -> None:
        """Exhaustive check of the homomorphism property on all pairs."""
        m = np.asarray(self.mapping)
        ts, tt = self.source.table, self.target.table
        if not np.array_equal(m[ts], tt[np.ix_(m, m)]):
            raise ValueError("mapping is not a homomorphism")
        if m[self.source.identity] != self.target.identity:
            raise ValueError("mapping does not preserve the identity")

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.mapping))))

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source,
                        tuple(g for g in self.source.elements() if self.mapping[g] == e))

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order


# -- constructions -----------------------------------------------------


def cyclic_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C(n), additive on 0..n-1."""
    if n < 1:
        raise GroupConstructionError(f"cyclic order must be positive, got {n}")
    _check_cap(n, cap)
    base = np.arange(n)
    table = (base[:, None] + base[None, :]) % n
    return FiniteGroup(table, name=f"C{n}")


def perm_group(degree: int, generators, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Permutation group generated by one-line images on 0..degree-1."""
    gens = []
    ident = tuple(range(degree))
    for g in generators:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(degree)):
            raise GroupConstructionError(f"not a permutation of 0..{degree - 1}: {g}")
        gens.append(g)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    if len(seen) >= cap:
                        raise GroupConstructionError(f"permutation group exceeds cap {cap}")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    carrier = sorted(seen)
    index = {p: i for i, p in enumerate(carrier)}
    n = len(carrier)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(carrier):
        for j, q in enumerate(carrier):
            table[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    return FiniteGroup(table, identity=index[ident], name=f"Perm{degree}:{n}")


def direct_product(factors, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Direct product; index encodes factor indices most-significant-first."""
    factors = list(factors)
    if not factors:
        raise GroupConstructionError("direct product needs at least one factor")
    order = 1
    for f in factors:
        order *= f.order
    _check_cap(order, cap)
    sizes = [f.order for f in factors]

    def encode(parts):
        idx = 0
        for p, s in zip(parts, sizes):
            idx = idx * s + p
        return idx

    def decode(idx):
        parts = []
        for s in reversed(sizes):
            parts.append(idx % s)
            idx //= s
        return list(reversed(parts))

    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        pa = decode(a)
        for b in range(order):
            pb = decode(b)
            table[a, b] = encode([f.mult(x, y) for f, x, y in zip(factors, pa, pb)])
    ident = encode([f.identity for f in factors])
    name = "x".join(f.name for f in factors)
    return FiniteGroup(table, identity=ident, name=name)


def _check_automorphism(h: FiniteGroup, perm) -> None:
    p = np.asarray(perm, dtype=np.int64)
    if sorted(int(x) for x in p) != list(range(h.order)):
        raise GroupConstructionError("action entry is not a permutation of H")
    if not np.array_equal(p[h.table], h.table[np.ix_(p, p)]):
        raise GroupConstructionError("action entry is not an automorphism of H")


def semidirect_product(h: FiniteGroup, g: FiniteGroup, action,
                       cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> FiniteGroup:
    """H x| G with (h1,g1)(h2,g2) = (h1 * action[g1](h2), g1 g2).

    ``action`` lists, for every element of G, an automorphism of H as a
    permutation of H's carrier; it must itself be a homomorphism G -> Aut(H).
    """
    order = h.order * g.order
    _check_cap(order, cap)
    act = [np.asarray(a, dtype=np.int64) for a in action]
    if len(act) != g.order:
        raise GroupConstructionError(
            f"action table has {len(act)} entries, expected {g.order}")
    for a in act:
        _check_automorphism(h, a)
    if not np.array_equal(act[g.identity], np.arange(h.order)):
        raise GroupConstructionError("action of the identity must be trivial")
    for x in range(g.order):
        for y in range(g.order):
            if not np.array_equal(act[g.mult(x, y)], act[x][act[y]]):
                raise GroupConstructionError(
                    "action table is not a homomorphism into Aut(H)")
    ng = g.order
    table = np.empty((order, order), dtype=np.int64)
    for h1 in range(h.order):
        for g1 in range(ng):
            a = h1 * ng + g1
            hs = h.table[h1, act[g1]]          # h1 * act[g1](h2) for all h2
            for h2 in range(h.order):
                table[a, h2 * ng:(h2 + 1) * ng] = int(hs[h2]) * ng + g.table[g1]
    ident = h.identity * ng + g.identity
    return FiniteGroup(table, identity=ident,
                       name=name or f"({h.name})x|({g.name})")


def heisenberg_group(ell: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Unitriangular 3x3 group over Z/ell: order ell^3, exponent ell (ell odd)."""
    if ell < 3 or ell % 2 == 0:
        raise GroupConstructionError(f"heisenberg template needs an odd prime, got {ell}")
    n = ell ** 3
    _check_cap(n, cap)

    def encode(a, b, c):
        return (a * ell + b) * ell + c

    table = np.empty((n, n), dtype=np.int64)
    for a1, b1, c1 in itertools.product(range(ell), repeat=3):
        i = encode(a1, b1, c1)
        for a2, b2, c2 in itertools.product(range(ell), repeat=3):
            table[i, encode(a2, b2, c2)] = encode(
                (a1 + a2) % ell, (b1 + b2) % ell, (c1 + c2 + a1 * b2) % ell)
    g = FiniteGroup(table, name=f"Heis{ell}")
    if g.exponent() != ell:
        raise GroupConstructionError("heisenberg template has wrong exponent")
    return g


def modular_group(ell: int, n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C(ell^(n-1)) x| C(ell) with tau -> tau^(1+ell^(n-2)); order ell^n."""
    if ell < 3 or ell % 2 == 0:
        raise GroupConstructionError(f"modular template needs an odd prime, got {ell}")
    if n < 3:
        raise GroupConstructionError(f"modular template needs n >= 3, got {n}")
    m = ell ** (n - 1)
    _check_cap(ell ** n, cap)
    h = cyclic_group(m, cap=cap)
    k = cyclic_group(ell, cap=cap)
    r = 1 + ell ** (n - 2)
    action = []
    for j in range(ell):
        rj = pow(r, j, m)
        action.append([(rj * x) % m for x in range(m)])
    g = semidirect_product(h, k, action, cap=cap, name=f"Mod({ell},{n})")
    tau, sigma = 1 * ell + 0, 0 * ell + 1
    if g.element_order(tau) != m or g.element_order(sigma) != ell:
        raise GroupConstructionError("modular template generators have wrong orders")
    if g.conj(sigma, tau) != g.power(tau, r):
        raise GroupConstructionError("modular template relation fails")
    return g


def two_generator_l2_group(ell: int, a: int, c: int,
                           cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Group of order ell^3 with tau^(ell^2)=1, sigma^ell=tau^(c*ell),
    sigma tau sigma^-1 = tau^(1+a*ell).

    Elements are tau^i sigma^j with i mod ell^2, j mod ell, encoded as
    i*ell + j.
    """
    if ell < 3 or ell % 2 == 0:
        raise GroupConstructionError(f"two-generator template needs an odd prime, got {ell}")
    m = ell * ell
    n = ell ** 3
    _check_cap(n, cap)
    a %= ell
    c %= ell
    r = (1 + a * ell) % m
    rpow = [pow(r, j, m) for j in range(ell)]
    table = np.empty((n, n), dtype=np.int64)
    for i1 in range(m):
        for j1 in range(ell):
            x = i1 * ell + j1
            for i2 in range(m):
                for j2 in range(ell):
                    wrap = (j1 + j2) // ell
                    i = (i1 + i2 * rpow[j1] + c * ell * wrap) % m
                    table[x, i2 * ell + j2] = i * ell + (j1 + j2) % ell
    g = FiniteGroup(table, name=f"TwoGen({ell},a={a},c={c})")
    g.check_associativity()
    tau, sigma = 1 * ell + 0, 0 * ell + 1
    if g.element_order(tau) != m:
        raise GroupConstructionError("relations inconsistent: tau order wrong")
    if g.power(sigma, ell) != g.power(tau, c * ell):
        raise GroupConstructionError("relations inconsistent: sigma^ell != tau^(c ell)")
    if g.conj(sigma, tau) != g.power(tau, 1 + a * ell):
        raise GroupConstructionError("relations inconsistent: conjugation relation fails")
    return g


def build_group(spec, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from a JSON-style spec dict."""
    if not isinstance(spec, dict):
        raise GroupConstructionError(f"group spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]), cap=cap)
    if kind == "perm":
        return perm_group(int(spec["degree"]), spec["generators"], cap=cap)
    if kind == "direct":
        return direct_product([build_group(s, cap=cap) for s in spec["factors"]], cap=cap)
    if kind == "semidirect":
        h = build_group(spec["h"], cap=cap)
        g = build_group(spec["g"], cap=cap)
        return semidirect_product(h, g, spec["action"], cap=cap)
    if kind == "heisenberg":
        return heisenberg_group(int(spec["ell"]), cap=cap)
    if kind == "modular":
        return modular_group(int(spec["ell"]), int(spec["n"]), cap=cap)
    if kind == "two_gen_l2":
        return two_generator_l2_group(int(spec["ell"]), int(spec["a"]), int(spec["c"]), cap=cap)
    raise GroupConstructionError(f"unknown group spec kind: {kind!r}")


# -- derived structure -------------------------------------------------


def conjugation_action(g: FiniteGroup, h: Subgroup, k: Subgroup) -> list:
    """Action of the subgroup k on the normal subgroup h by conjugation.

    Returns one permutation of h's carrier (in h's own indexing, via
    ``h.as_group``) per element of k, suitable for ``semidirect_product``.
    """
    idx = {x: i for i, x in enumerate(h.members)}
    conj = g.conj_table
    out = []
    for kk in k.members:
        row = [idx[int(conj[kk, x])] for x in h.members]
        out.append(row)
    return out


def _minimal_generators(g: FiniteGroup) -> list:
    gens: list[int] = []
    span = {g.identity}
    while len(span) < g.order:
        nxt = min(x for x in range(g.order) if x not in span)
        gens.append(nxt)
        span = g.closure(gens)
    return gens


def quotient_group(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N with the projection homomorphism; N must be normal."""
    if not n.is_normal():
        raise ValueError("quotient requires a normal subgroup")
    mem = list(n.members)
    rep_of = {}
    reps = []
    for x in range(g.order):
        if x in rep_of:
            continue
        coset = sorted(int(g.table[x, m]) for m in mem)
        r = coset[0]
        reps.append(r)
        for y in coset:
            rep_of[y] = r
    reps.sort()
    index = {r: i for i, r in enumerate(reps)}
    q = len(reps)
    table = np.empty((q, q), dtype=np.int64)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i, j] = index[rep_of[int(g.table[x, y])]]
    quo = FiniteGroup(table, identity=index[rep_of[g.identity]], name=f"{g.name}/N{n.order}")
    proj = GroupHom(g, quo, tuple(index[rep_of[x]] for x in range(g.order)))
    proj.verify()
    return quo, proj


def find_complement(g: FiniteGroup, h: Subgroup) -> Subgroup | None:
    """Subgroup K with K n H = 1 and |K||H| = |G|, or None.

    Exhaustive search over lifts of a minimal generating sequence of G/H;
    deterministic (lowest-index representatives first).
    """
    if not h.is_normal():
        raise ValueError("complement search requires a normal subgroup")
    if h.order == g.order:
        return g.trivial_subgroup()
    quo, proj = quotient_group(g, h)
    qgens = _minimal_generators(quo)
    target = quo.order
    hset = h.member_set()
    fibers = []
    for qg in qgens:
        fibers.append([x for x in range(g.order) if proj(x) == qg])
    for choice in itertools.product(*fibers):
        k = g.closure(choice)
        if len(k) == target and len(k & hset) == 1:
            return Subgroup(g, tuple(sorted(k)))
    return None


def normal_abelian_subgroups(g: FiniteGroup, order: int) -> list[Subgroup]:
    """All normal abelian subgroups of exactly the given order.

    BFS over abelian subgroups (extending by centralizing elements whose
    order divides the target), then a normality filter.
    """
    if order < 1 or g.order % order != 0:
        return []
    if order == 1:
        return [g.trivial_subgroup()]
    ords = g.orders
    commuting = (g.table == g.table.T)  # commuting[a, b] iff ab = ba
    candidates = [x for x in range(g.order) if order % int(ords[x]) == 0]
    seen: set[frozenset] = set()
    out: set[frozenset] = set()
    frontier: list[frozenset] = []
    triv = frozenset({g.identity})
    seen.add(triv)
    frontier.append(triv)
    while frontier:
        nxt = []
        for s in frontier:
            if len(s) == order:
                out.add(s)
                continue
            slist = list(s)
            cen = np.ones(g.order, dtype=bool)
            for x in slist:
                cen &= commuting[x]
            for y in candidates:
                if y in s or not cen[y]:
                    continue
                # relative order of y over s
                r = 1
                z = y
                while z not in s:
                    z = int(g.table[z, y])
                    r += 1
                size = len(s) * r
                if size > order or order % size != 0:
                    continue
                new = frozenset(int(g.table[a, p]) for a in s for p in g.powers(y))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    subs = [Subgroup(g, tuple(sorted(s))) for s in out]
    return sorted((s for s in subs if s.is_normal()), key=lambda s: s.members)
