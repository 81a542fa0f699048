"""Galois data of cyclotomic extensions over small base fields.

For a base field k we track, per modulus m, the subgroup
``T_m(k) <= (Z/mZ)^x`` cut out by Gal(k(zeta_m)/k) under the cyclotomic
character.  Supported base fields: the rationals, imaginary quadratic
fields Q(sqrt(-d)), and "declared" fields given by explicit tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from sympy import factorint
from sympy.functions.combinatorial.numbers import kronecker_symbol

from .groups import FiniteGroup

__all__ = [
    "DeclaredDataError",
    "ResidueSubgroup",
    "FieldSpec",
    "EFieldDescriptor",
    "parse_field_spec",
    "rationals",
    "imag_quadratic",
    "field_discriminant",
    "gal_subgroup",
    "e_field",
    "e_field_compare",
    "e_tau_ell_group",
]


class DeclaredDataError(ValueError):
    """Declared field data is missing, malformed, or self-inconsistent."""


def _units(m: int) -> frozenset:
    if m == 1:
        return frozenset({0})
    return frozenset(a for a in range(1, m) if gcd(a, m) == 1)


@dataclass(frozen=True)
class ResidueSubgroup:
    """Subgroup of (Z/mZ)^x as a sorted residue tuple."""

    modulus: int
    members: tuple

    def __post_init__(self):
        m = self.modulus
        mem = frozenset(self.members)
        if tuple(sorted(mem)) != self.members:
            raise ValueError("members must be sorted and unique")
        if mem - _units(m):
            raise ValueError(f"members must be units mod {m}")
        if m == 1:
            if mem != {0}:
                raise ValueError("modulus 1 admits only the residue 0")
            return
        if 1 not in mem or any((a * b) % m not in mem for a in mem for b in mem):
            raise ValueError(f"not a subgroup of (Z/{m})^x: {sorted(mem)}")

    @property
    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, a: int) -> bool:
        return a % self.modulus in self.member_set()

    def reduce(self, m: int) -> "ResidueSubgroup":
        """Image under reduction mod m (m must divide the modulus)."""
        if self.modulus % m != 0:
            raise ValueError(f"{m} does not divide modulus {self.modulus}")
        return ResidueSubgroup(m, tuple(sorted({a % m for a in self.members})))


def field_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(-d)) for squarefree d >= 1."""
    if d < 1:
        raise ValueError(f"imag_quadratic parameter must be positive, got {d}")
    if any(e > 1 for e in factorint(d).values()):
        raise ValueError(f"imag_quadratic parameter must be squarefree, got {d}")
    return -d if d % 4 == 3 else -4 * d


@dataclass(frozen=True)
class FieldSpec:
    """Base-field description; declared payloads are normalized tuples."""

    kind: str
    d: int = 0
    gal: tuple = ()                  # ((m, (residues...)), ...)
    class_group: tuple = ()          # invariant factors d1 | d2 | ...
    prime_norm_classes: tuple = ()   # ((norm, (vector...)), ...)
    declared_w: tuple = ()           # ((m, (s...), ((row...), ...)), ...)

    def label(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "imag_quadratic":
            return f"Q(sqrt(-{self.d}))"
        return "declared"


def rationals() -> FieldSpec:
    return FieldSpec(kind="rationals")


def imag_quadratic(d: int) -> FieldSpec:
    field_discriminant(d)
    return FieldSpec(kind="imag_quadratic", d=d)


def parse_field_spec(obj: dict) -> FieldSpec:
    """Parse and eagerly validate a JSON-style field spec."""
    if not isinstance(obj, dict):
        raise ValueError(f"field spec must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "rationals":
        return rationals()
    if kind == "imag_quadratic":
        return imag_quadratic(int(obj["d"]))
    if kind == "declared":
        gal_raw = obj.get("gal", {})
        gal = []
        for key in sorted(gal_raw, key=int):
            m = int(key)
            members = tuple(sorted(int(a) % m for a in gal_raw[key]))
            gal.append((m, members))
        divisors = tuple(int(x) for x in obj.get("class_group", []))
        pnc = tuple((int(n), tuple(int(v) for v in vec))
                    for n, vec in obj.get("prime_norm_classes", []))
        dw = tuple((int(e["m"]), tuple(sorted(int(s) for s in e["s"])),
                    tuple(tuple(int(x) for x in row) for row in e.get("w", [])))
                   for e in obj.get("declared_w", []))
        spec = FieldSpec(kind="declared", gal=tuple(gal), class_group=divisors,
                         prime_norm_classes=pnc, declared_w=dw)
        _validate_declared(spec)
        return spec
    raise ValueError(f"unknown field spec kind: {kind!r}")


def _validate_declared(spec: FieldSpec) -> None:
    tables = dict(spec.gal)
    for m, members in tables.items():
        try:
            ResidueSubgroup(m, members)
        except ValueError as exc:
            raise DeclaredDataError(f"gal table for modulus {m}: {exc}") from exc
    for m1 in tables:
        for m2 in tables:
            if m1 != m2 and m2 % m1 == 0:
                reduced = ResidueSubgroup(m2, tables[m2]).reduce(m1)
                if reduced.members != tables[m1]:
                    raise DeclaredDataError(
                        f"gal tables for moduli {m1} and {m2} are not tower-consistent")
    div = spec.class_group
    if any(d < 1 for d in div):
        raise DeclaredDataError("class_group divisors must be >= 1")
    for a, b in zip(div, div[1:]):
        if b % a != 0:
            raise DeclaredDataError(f"class_group divisors must form a chain: {div}")
    for norm, vec in spec.prime_norm_classes:
        if norm < 2:
            raise DeclaredDataError(f"prime norm must be >= 2, got {norm}")
        if len(vec) != len(div):
            raise DeclaredDataError(f"class vector {vec} has wrong length for {div}")
    for m, s, _rows in spec.declared_w:
        t = _declared_gal(spec, m)
        if frozenset(s) - t.member_set():
            raise DeclaredDataError(
                f"declared_w entry for modulus {m} uses residues outside T_{m}")


def _declared_gal(spec: FieldSpec, m: int) -> ResidueSubgroup:
    tables = dict(spec.gal)
    if m in tables:
        return ResidueSubgroup(m, tables[m])
    multiples = sorted(mm for mm in tables if mm % m == 0)
    if not multiples:
        raise DeclaredDataError(f"declared field spec lacks Galois data for modulus {m}")
    return ResidueSubgroup(multiples[0], tables[multiples[0]]).reduce(m)


@lru_cache(maxsize=None)
def _gal_subgroup_cached(spec: FieldSpec, m: int) -> ResidueSubgroup:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if spec.kind == "rationals":
        return ResidueSubgroup(m, tuple(sorted(_units(m))))
    if spec.kind == "imag_quadratic":
        disc = field_discriminant(spec.d)
        big = lcm(abs(disc), m)
        kept = {a % m for a in _units(big) if a != 0 and kronecker_symbol(disc, a) == 1}
        if m == 1:
            kept = {0}
        return ResidueSubgroup(m, tuple(sorted(kept)))
    if spec.kind == "declared":
        return _declared_gal(spec, m)
    raise ValueError(f"unknown field kind {spec.kind!r}")


def gal_subgroup(k: FieldSpec, m: int) -> ResidueSubgroup:
    """T_m(k): the image of Gal(k(zeta_m)/k) in (Z/mZ)^x."""
    return _gal_subgroup_cached(k, m)


@dataclass(frozen=True)
class EFieldDescriptor:
    """Subfield of k(zeta_m) fixed by the residue subgroup S <= T_m(k).

    Descriptors are never conductor-minimized; comparisons lift both
    sides to the lcm modulus.
    """

    m: int
    s: tuple

    def residue_subgroup(self) -> ResidueSubgroup:
        return ResidueSubgroup(self.m, self.s)

    def as_json(self) -> dict:
        return {"m": self.m, "s": list(self.s)}


def e_field(k: FieldSpec, g: FiniteGroup, tau: int) -> EFieldDescriptor:
    """Descriptor of E_(k,G,tau): m = o(tau), S = T_m(k) n Phi_tau."""
    if tau == g.identity:
        raise ValueError("e_field undefined for the identity element")
    m = g.element_order(tau)
    phi = g.phi_image(tau)
    t = gal_subgroup(k, m)
    s = tuple(sorted(t.member_set() & phi))
    return EFieldDescriptor(m, s)


def _lift(k: FieldSpec, e: EFieldDescriptor, big: int) -> frozenset:
    """Preimage of S under T_big(k) -> T_m(k)."""
    t_big = gal_subgroup(k, big)
    s = frozenset(e.s)
    return frozenset(a for a in t_big.members if a % e.m in s)


def e_field_compare(e1: EFieldDescriptor, e2: EFieldDescriptor, k: FieldSpec) -> str:
    """One of 'equal' | 'subfield' (E1 < E2) | 'superfield' | 'incomparable'."""
    big = lcm(e1.m, e2.m)
    s1 = _lift(k, e1, big)
    s2 = _lift(k, e2, big)
    if s1 == s2:
        return "equal"
    if s1 > s2:
        return "subfield"
    if s1 < s2:
        return "superfield"
    return "incomparable"


def e_tau_ell_group(g: FiniteGroup, tau: int) -> int:
    """e_tau = o(tau) / #(N/C) for an ell-group; checks the closed form.

    In an ell-group the conjugation character image is exactly the
    residues 1 mod e_tau, so E_(k,G,tau) = k(zeta_(e_tau)); the divisor
    e_tau is returned.
    """
    if tau == g.identity:
        raise ValueError("e_tau undefined for the identity element")
    factors = factorint(g.order)
    if len(factors) != 1:
        raise ValueError(f"group of order {g.order} is not an ell-group")
    (ell,) = factors
    o = g.element_order(tau)
    n, c = g.normalizer_centralizer(tau)
    e_tau = o // (n.order // c.order)
    if e_tau % ell != 0:
        raise AssertionError(f"e_tau = {e_tau} not divisible by {ell}")
    expected = frozenset(a for a in range(o) if gcd(a, o) == 1 and a % e_tau == 1)
    if g.phi_image(tau) != expected:
        raise AssertionError("conjugation image is not the 1 mod e_tau subgroup")
    return e_tau
