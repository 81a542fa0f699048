"""Group engine tests; expected values come from independent table scans."""

from __future__ import annotations

import numpy as np
import pytest

from steinitz.groups import (
    GroupConstructionError,
    Subgroup,
    build_group,
    conjugation_action,
    cyclic_group,
    direct_product,
    find_complement,
    heisenberg_group,
    modular_group,
    normal_abelian_subgroups,
    perm_group,
    quotient_group,
    semidirect_product,
    two_generator_l2_group,
)


def scan_order(g, x):
    """Element order by raw table walking (oracle)."""
    k, y = 1, x
    while y != g.identity:
        y = int(g.table[y, x])
        k += 1
    return k


def scan_exponent(g):
    return int(np.lcm.reduce([scan_order(g, x) for x in range(g.order)]))


def scan_center(g):
    return sorted(x for x in range(g.order)
                  if all(g.mult(x, y) == g.mult(y, x) for y in range(g.order)))


def mod33():
    """C(9) x| C(3) with tau -> tau^4, via a literal action table."""
    h, k = cyclic_group(9), cyclic_group(3)
    action = [[(pow(4, j, 9) * x) % 9 for x in range(9)] for j in range(3)]
    return semidirect_product(h, k, action)


# -- construction ------------------------------------------------------

def test_cyclic_basics():
    g = cyclic_group(8)
    g.check_associativity()
    assert g.order == 8
    assert scan_exponent(g) == 8
    assert g.element_order(1) == 8
    assert g.element_order(0) == 1


def test_heisenberg_invariants():
    g = heisenberg_group(3)
    g.check_associativity()
    assert g.order == 27
    assert scan_exponent(g) == 3
    assert len(scan_center(g)) == 3
    assert g.exponent() == 3
    assert g.center().order == 3
    assert not g.is_abelian


def test_modular_3_3_matches_explicit_semidirect():
    g = modular_group(3, 3)
    g.check_associativity()
    m = mod33()
    assert np.array_equal(g.table, m.table)
    assert scan_exponent(g) == 9
    assert not g.is_abelian


def test_modular_3_3_sigma_tau_order():
    g = modular_group(3, 3)
    tau, sigma = 3, 1  # encoding (h,g) -> h*3+g
    st = g.mult(sigma, tau)
    assert scan_order(g, st) == 9
    # (sigma tau)^3 = tau^3 by direct table computation
    cube = g.mult(g.mult(st, st), st)
    assert cube == g.power(tau, 3)
    assert cube != g.identity


def test_modular_3_4():
    g = modular_group(3, 4)
    assert g.order == 81
    assert scan_exponent(g) == 27


def test_two_generator_template():
    g = two_generator_l2_group(3, a=1, c=0)
    assert g.order == 27
    assert scan_exponent(g) == 9
    # a=1, c=0 gives the modular group relations
    tau, sigma = 3, 1
    assert g.conj(sigma, tau) == g.power(tau, 4)
    assert g.power(sigma, 3) == g.identity
    g2 = two_generator_l2_group(3, a=0, c=1)
    g2.check_associativity()
    assert g2.order == 27
    tau, sigma = 3, 1
    assert g2.power(sigma, 3) == g2.power(tau, 3)
    assert g2.conj(sigma, tau) == tau  # a=0: abelian
    assert g2.is_abelian


def test_direct_product_and_trivial_action_semidirect_agree():
    h, k = cyclic_group(9), cyclic_group(3)
    d = direct_product([h, k])
    s = semidirect_product(h, k, [list(range(9))] * 3)
    assert np.array_equal(d.table, s.table)
    assert d.is_abelian


def test_perm_group():
    g = perm_group(3, [(1, 2, 0), (1, 0, 2)])  # S3
    g.check_associativity()
    assert g.order == 6
    assert not g.is_abelian
    assert scan_exponent(g) == 6


def test_build_group_specs():
    assert build_group({"kind": "cyclic", "n": 8}).order == 8
    assert build_group({"kind": "heisenberg", "ell": 3}).order == 27
    assert build_group({"kind": "modular", "ell": 3, "n": 4}).order == 81
    assert build_group({"kind": "two_gen_l2", "ell": 3, "a": 1, "c": 1}).order == 27
    assert build_group({"kind": "direct", "factors": [
        {"kind": "cyclic", "n": 3}, {"kind": "cyclic", "n": 9}]}).order == 27
    g = build_group({"kind": "semidirect", "h": {"kind": "cyclic", "n": 7},
                     "g": {"kind": "cyclic", "n": 3},
                     "action": [[(pow(2, j, 7) * x) % 7 for x in range(7)]
                                for j in range(3)]})
    assert g.order == 21 and not g.is_abelian


def test_build_group_errors():
    with pytest.raises(GroupConstructionError):
        build_group({"kind": "cyclic", "n": 5000})
    with pytest.raises(GroupConstructionError):
        build_group({"kind": "nope"})
    with pytest.raises(GroupConstructionError):
        # x -> 2x is not an order-3 action on C(9): 2^3 = 8 != 1 mod 9
        build_group({"kind": "semidirect", "h": {"kind": "cyclic", "n": 9},
                     "g": {"kind": "cyclic", "n": 3},
                     "action": [[(pow(2, j, 9) * x) % 9 for x in range(9)]
                                for j in range(3)]})
    with pytest.raises(GroupConstructionError):
        semidirect_product(cyclic_group(3), cyclic_group(3),
                           [[0, 2, 1]] * 3)  # identity must act trivially


# -- torsion pieces ----------------------------------------------------

def test_ell_part():
    g = cyclic_group(6)
    assert g.ell_part(1, 3) == 2   # g^(6/3) = g^2 has order 3
    assert g.ell_part(1, 2) == 3
    assert g.ell_part(g.identity, 3) == g.identity
    assert scan_order(g, g.ell_part(1, 3)) == 3


def test_ell_power_elements():
    g = cyclic_group(27)
    assert len(g.ell_power_elements(3)) == 27
    d = direct_product([cyclic_group(3), cyclic_group(7)])
    e3 = d.ell_power_elements(3)
    assert len(e3) == 3
    assert all(scan_order(d, x) in (1, 3) for x in e3)


# -- normalizer / centralizer / conjugation character -------------------

def test_normalizer_centralizer_abelian():
    g = cyclic_group(9)
    n, c = g.normalizer_centralizer(1)
    assert n.order == 9 and c.order == 9


def test_normalizer_centralizer_modular():
    g = modular_group(3, 3)
    tau = 3
    n, c = g.normalizer_centralizer(tau)
    # oracle: exhaustive scan
    pw = {g.identity}
    x = tau
    while x != g.identity:
        pw.add(x)
        x = g.mult(x, tau)
    n_scan = [y for y in range(27) if g.conj(y, tau) in pw]
    c_scan = [y for y in range(27) if g.conj(y, tau) == tau]
    assert list(n.members) == n_scan
    assert list(c.members) == c_scan
    assert g.order // n.order == 1 and g.order // c.order == 3


def test_normalizer_centralizer_heisenberg():
    g = heisenberg_group(3)
    z = scan_center(g)
    tau = min(x for x in range(27) if x not in z)
    n, c = g.normalizer_centralizer(tau)
    assert n.order == 9 and c.order == 9
    assert n.members == c.members
    assert set(z) <= set(n.members)


def test_phi_image():
    g = modular_group(3, 3)
    assert g.phi_image(3) == frozenset({1, 4, 7})
    assert cyclic_group(9).phi_image(1) == frozenset({1})
    h = heisenberg_group(3)
    z = scan_center(h)
    tau = min(x for x in range(27) if x not in z)
    assert h.phi_image(tau) == frozenset({1})
    with pytest.raises(ValueError):
        g.phi_image(g.identity)


def test_phi_image_is_unit_subgroup_and_kernel_is_centralizer():
    for g in (modular_group(3, 3), heisenberg_group(3), modular_group(3, 4)):
        for tau in range(1, g.order):
            if tau == g.identity:
                continue
            o = g.element_order(tau)
            phi = g.phi_image(tau)
            n, c = g.normalizer_centralizer(tau)
            assert len(phi) == n.order // c.order
            assert all(pow(a, len(phi), o) == 1 and np.gcd(a, o) == 1 for a in phi)
            # closure under multiplication mod o
            assert all((a * b) % o in phi for a in phi for b in phi)


def test_phi_power_compatibility():
    """Phi_sigma mod o(sigma^n) lands inside Phi_(sigma^n)."""
    g = modular_group(3, 4)
    for sigma in range(1, g.order):
        for n in (2, 3, 9):
            t = g.power(sigma, n)
            if t == g.identity or sigma == g.identity:
                continue
            ot = g.element_order(t)
            big = g.phi_image(sigma)
            small = g.phi_image(t)
            assert {a % ot for a in big} <= small


# -- complements / quotients / subgroup enumeration ---------------------

def test_find_complement_direct_factor():
    g = direct_product([cyclic_group(3), cyclic_group(3)])
    h = g.subgroup([3])  # first factor (encoding a*3+b)
    k = find_complement(g, h)
    assert k is not None and k.order == 3
    assert len(k.member_set() & h.member_set()) == 1


def test_find_complement_modular():
    g = modular_group(3, 3)
    h = g.subgroup([3])
    assert h.order == 9
    k = find_complement(g, h)
    assert k is not None and k.order == 3


def test_find_complement_none_in_c9():
    g = cyclic_group(9)
    h = g.subgroup([3])
    assert find_complement(g, h) is None


def test_quotient():
    g = cyclic_group(9)
    q, proj = quotient_group(g, g.subgroup([3]))
    assert q.order == 3
    proj.verify()
    assert proj.is_surjective()
    assert sorted(proj.kernel().members) == [0, 3, 6]


def test_normal_abelian_subgroups():
    h = heisenberg_group(3)
    found = normal_abelian_subgroups(h, 9)
    assert found
    z = scan_center(h)
    tau = min(x for x in range(27) if x not in z)
    target = h.subgroup([tau] + z)
    assert target.members in [s.members for s in found]
    for s in found:
        assert s.order == 9 and s.is_abelian() and s.is_normal()

    c27 = cyclic_group(27)
    assert [s.members for s in normal_abelian_subgroups(c27, 27)] == [tuple(range(27))]
    assert normal_abelian_subgroups(modular_group(3, 4), 27)


def test_subgroup_ops():
    g = modular_group(3, 4)
    assert g.center().order == 9
    assert g.exponent() == 27
    tau_sub = g.subgroup([3])
    assert tau_sub.order == 27 and tau_sub.is_normal() and tau_sub.is_abelian()
    sub_g, idx, members = tau_sub.as_group()
    assert sub_g.order == 27 and sub_g.exponent() == 27


def test_conjugation_action_roundtrip():
    g = modular_group(3, 3)
    h = g.subgroup([3])
    k = find_complement(g, h)
    act = conjugation_action(g, h, k)
    hg, _, _ = h.as_group()
    kg, _, _ = k.as_group()
    rebuilt = semidirect_product(hg, kg, act)
    assert rebuilt.order == g.order
    assert sorted(rebuilt.orders.tolist()) == sorted(g.orders.tolist())
    assert rebuilt.exponent() == g.exponent()
