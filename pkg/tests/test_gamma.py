import random

import pytest

from fusionforge.biset import Biset, canonical_stable_biset, regular_biset
from fusionforge.fusion import full_fusion, fusion_of_group
from fusionforge.gamma import (GammaGroup, IncompatibleError, NoWitnessError,
                               build_compatible_family, verify_fusion_containment)
from fusionforge.groups import (Hom, automorphisms, center, conjugation_hom, first_monomorphism,
                                monomorphisms, parse_group, subgroups)

CASES = [("C4", 4), ("C8", 8), ("C9", 9), ("Q8", 2), ("Q16", 2), ("C2^2", 4), ("C3^2", 9)]


def package(desc, k_order):
    G = parse_group(desc)
    S = G.whole
    F = full_fusion(S)
    K = S if k_order == S.order else next(H for H in subgroups(S) if H.order == k_order)
    om = canonical_stable_biset(S, F, K)
    return S, F, om, GammaGroup(om)


def test_regular_gamma_is_s():
    S = parse_group("Q8").whole
    gam = GammaGroup(regular_biset(S))
    assert gam.n == 1 and gam.order == 8


def test_orders():
    assert package("C4", 4)[3].order == 32
    S, F, om, gam = package("Q8", 2)
    assert gam.n == 4 and gam.order == 8 ** 4 * 24
    assert gam.transversal == tuple(min(o) for o in sorted(om.right_orbits()))


@pytest.mark.parametrize("desc,k", CASES)
def test_iota_is_monomorphism(desc, k):
    S, F, om, gam = package(desc, k)
    assert gam.verify_iota() == []
    assert gam.iota(0) == gam.identity


def test_iota_cyclic_shape():
    S, F, om, gam = package("C8", 8)
    phis = om.summands
    for s in S.elements:
        g = gam.iota(s)
        assert g.perm == tuple(range(gam.n))
        assert g.twists == tuple(phi(s) for phi in phis)


def test_iota_quaternion_permutes_cosets():
    S, F, om, gam = package("Q8", 2)
    G = S.parent
    C2 = next(H for H in subgroups(S) if H.order == 2)
    # the right-orbit of x_i = [(s_i, e)] corresponds to the coset s_i C2
    cosets = [frozenset(G.mul(om.points[x][1][0], c) for c in C2.elements) for x in gam.transversal]
    for s in S.elements:
        perm = gam.iota(s).perm
        for i, c in enumerate(cosets):
            assert frozenset(G.mul(s, y) for y in c) == cosets[perm[i]]


@pytest.mark.parametrize("desc,k", [("C4", 4), ("Q8", 2), ("C3^2", 9)])
def test_wreath_law_random(desc, k):
    S, F, om, gam = package(desc, k)
    rng = random.Random(5)
    for _ in range(40):
        f, g = gam.random_element(rng), gam.random_element(rng)
        fg = gam.mul(f, g)
        assert gam.to_bijection(fg) == tuple(gam.act(f, gam.act(g, x)) for x in range(om.size))
        assert gam.commutes_with_right_action(fg)
        assert gam.mul(f, gam.inv(f)) == gam.identity
        assert gam.from_bijection(gam.to_bijection(f)) == f
    assert gam.wreath_coordinates(gam.identity) == ((0,) * gam.n, tuple(range(gam.n)))


def test_from_bijection_rejects_non_equivariant():
    S, F, om, gam = package("C4", 4)
    bij = list(range(om.size))
    bij[0], bij[1] = bij[1], bij[0]
    with pytest.raises(ValueError):
        gam.from_bijection(bij)


def test_non_free_right_action_rejected():
    S, F, om, gam = package("C4", 4)
    fixed = Biset(S, S, [0], {s: [0] for s in S.elements}, {s: [0] for s in S.elements})
    with pytest.raises(ValueError):
        GammaGroup(fixed)


def test_park_examples():
    S, F, om, gam = package("C4", 4)
    for s in S.elements:
        c = conjugation_hom(s, S, S)
        assert gam.realizes(gam.iota(s), c)
    inv = next(f for f in automorphisms(S) if f(1) == 3)
    eta = gam.park_witness(inv)
    assert gam.realizes(eta, inv)
    assert eta.perm == (1, 0)
    C2 = subgroups(S)[1]
    mono = monomorphisms(C2, S)[0]
    assert gam.realizes(gam.park_witness(mono), mono)


@pytest.mark.parametrize("desc,k", CASES)
def test_containment(desc, k):
    S, F, om, gam = package(desc, k)
    rep = verify_fusion_containment(gam, F)
    assert rep.contained
    for e in rep.entries:
        assert gam.realizes(e.witness, e.phi)


def test_containment_every_subgroup_small():
    S, F, om, gam = package("Q8", 2)
    assert verify_fusion_containment(gam, F, all_subgroups=True).contained


def test_regular_c4_not_contained():
    S = parse_group("C4").whole
    gam = GammaGroup(regular_biset(S))
    rep = verify_fusion_containment(gam, full_fusion(S))
    assert not rep.contained
    bad = next(e for e in rep.entries if e.witness is None)
    assert bad.discrepancy is not None
    with pytest.raises(NoWitnessError):
        gam.park_witness(bad.phi)


@pytest.mark.parametrize("desc,k", [("Q8", 2), ("C3^2", 9), ("Q16", 2)])
def test_witness_with_inner_correction(desc, k):
    S, F, om, gam = package(desc, k)
    for Q in F.objects:
        for phi in F.hom(Q, S)[:4]:
            assert gam.realizes(gam.witness(phi), phi)


def test_compatible_family_trivial():
    G = parse_group("Q8")
    S, F, om, gam = package("C4", 4)
    fam = build_compatible_family(G, [G.trivial], gam, {G.trivial: Hom(G.trivial, S, [0])})
    assert fam.verify() == []


def test_compatible_family_extraspecial():
    G = parse_group("ES(27,exp_p)")
    S, F, om, gam = package("C3", 3)
    z = center(G)
    family = [H for H in subgroups(G) if H.order <= 3 and H != z]
    emb = {H: first_monomorphism(H, S) for H in family}
    fam = build_compatible_family(G, family, gam, emb, fusion=F)
    assert fam.verify() == []
    assert len(fam.witnesses) > len(family)
    for w in fam.witnesses:
        for h in w.H.elements:
            lhs = gam.conj(w.gamma, fam.alpha(w.H, h))
            assert lhs == fam.alpha(w.K, G.conj(w.g, h))


def test_compatible_family_rejects_maps_outside_fusion():
    G = parse_group("Q8")
    A = G.generate([G.index((1, 0))])
    S = parse_group("C4").whole
    gam = GammaGroup(regular_biset(S))
    emb = {A: first_monomorphism(A, S)}
    with pytest.raises(IncompatibleError) as err:
        build_compatible_family(G, [A], gam, emb, fusion=fusion_of_group(S))
    f = err.value.f
    assert f(1) == 3


def test_gamma_element_json():
    S, F, om, gam = package("C4", 4)
    assert gam.iota(1).to_json() == {"perm": [0, 1], "twists": list(gam.iota(1).twists)}
