import random

import pytest

from fusionforge.biset import canonical_stable_biset, regular_biset
from fusionforge.cyclo import ONE, ZERO, Cyclotomic, root_of_unity
from fusionforge.fusion import full_fusion
from fusionforge.gamma import GammaElement
from fusionforge.groups import Hom, Subgroup, automorphisms, center, parse_group, subgroups
from fusionforge.pipeline import default_base_character
from fusionforge.repcalc import (Character, NonIntegralDimension, TildeModule,
                                 augmented_regular_character, cyclic_linear_character,
                                 double_coset_reps, fixed_dim, fixed_dim_subgroup, free_on_sphere,
                                 induce, isogate, mackey_check, multiple_of, regular_character,
                                 restrict, tilde_character, trivial_character)

import oracles

CASES = [("C4", 4), ("C8", 8), ("C9", 9), ("Q8", 2), ("Q16", 2), ("C2^2", 4), ("C3^2", 9)]


def module(desc, k_order):
    G = parse_group(desc)
    S = G.whole
    F = full_fusion(S)
    K = S if k_order == S.order else next(H for H in subgroups(S) if H.order == k_order)
    om = canonical_stable_biset(S, F, K)
    return S, om, TildeModule(om, default_base_character(S))


def faithful_center_char(G):
    Z = center(G)
    z = next(x for x in Z.elements if G.order_of(x) == Z.order)
    return cyclic_linear_character(Z, z)


def test_character_basics():
    S = parse_group("C4").whole
    chi = cyclic_linear_character(S, 1)
    assert chi(1) == root_of_unity(4) and chi(3) == root_of_unity(4, 3)
    assert chi.degree == 1 and chi.check() == []
    assert chi.inner(chi) == ONE
    assert chi.inner(trivial_character(S)) == ZERO
    with pytest.raises(ValueError):
        Character(S, [ONE])


def test_from_function_detects_non_class_functions():
    G = parse_group("Sym3")
    with pytest.raises(ValueError):
        Character.from_function(G.whole, lambda g: Cyclotomic(1, {0: g}), check=True)


def test_induce_trivial_is_permutation_character():
    G = parse_group("Sym3")
    H = next(K for K in subgroups(G) if K.order == 2)
    ind = induce(trivial_character(H), G.whole)
    assert ind.degree == 3
    for g in range(G.order):
        cosets = {frozenset(G.mul(x, h) for h in H.elements) for x in range(G.order)}
        fixed = sum(1 for c in cosets if frozenset(G.mul(g, y) for y in c) == c)
        assert ind(g).as_integer() == fixed


def test_induced_faithful_center_of_q8():
    G = parse_group("Q8")
    chi = faithful_center_char(G)
    theta = induce(chi, G.whole)
    z = center(G).elements[1]
    assert theta.degree == 4 and theta(z) == -4
    assert all(theta(g) == 0 for g in G.whole.elements if g not in center(G))
    numeric = oracles.numeric_induce({x: complex(chi(x)) for x in chi.group.elements},
                                     chi.group.members, G)
    assert all(abs(numeric[g] - complex(theta(g))) < 1e-9 for g in range(G.order))
    cert = free_on_sphere(theta)
    assert cert.free and len(cert.fixed_dims) == 4


def test_induce_degree_and_identity():
    G = parse_group("D8")
    for H in subgroups(G):
        chi = regular_character(H)
        ind = induce(chi, G.whole)
        assert ind.degree == G.order // H.order * chi.degree
    chi = augmented_regular_character(G.whole)
    assert induce(chi, G.whole) == chi


def test_induce_along_embedding():
    G = parse_group("Q8")
    C4 = parse_group("C4")
    A = G.generate([G.index((1, 0))])
    chi = cyclic_linear_character(C4.whole, 1)
    e = Hom(C4.whole, G.whole, [A.elements[0], G.index((1, 0)), G.index((2, 0)), G.index((3, 0))])
    assert induce(chi, e) == induce(cyclic_linear_character(A, G.index((1, 0))), G.whole)


def test_restrict_examples():
    G = parse_group("Q16")
    reg = regular_character(G.whole)
    assert restrict(reg, G.whole) == reg
    for H in subgroups(G):
        assert restrict(reg, H) == regular_character(H).multiple(G.order // H.order)


@pytest.mark.parametrize("desc", ["C4", "Q8", "D8", "C3^2", "Sym3", "ES(27,exp_p)"])
def test_frobenius_reciprocity(desc):
    G = parse_group(desc)
    rng = random.Random(desc)
    subs = subgroups(G)
    for _ in range(6):
        H = rng.choice(subs)
        # random virtual characters built from permutation characters
        chi = sum((induce(trivial_character(rng.choice(subgroups(H))), H).multiple(rng.randint(1, 2))
                   for _ in range(2)), start=Character(H, [ZERO] * len(H.conjugacy_classes)))
        psi = induce(trivial_character(rng.choice(subs)), G.whole) + regular_character(G.whole)
        assert induce(chi, G.whole).inner(psi) == chi.inner(restrict(psi, H))


def test_frobenius_on_c4_with_linear_characters():
    S = parse_group("C4").whole
    C2 = subgroups(S)[1]
    for k in range(4):
        psi = cyclic_linear_character(S, 1, k)
        chi = cyclic_linear_character(C2, 2)
        assert induce(chi, S).inner(psi) == chi.inner(restrict(psi, C2))
    assert induce(restrict(cyclic_linear_character(S, 1), C2), S).degree == 2


def test_isogate_examples():
    S = parse_group("C4").whole
    chi = cyclic_linear_character(S, 1)
    ident = Hom.identity(S)
    assert isogate(chi, ident) == chi
    inv = next(f for f in automorphisms(S) if f(1) == 3)
    tw = isogate(chi, inv)
    assert tw(1) == root_of_unity(4, 3)
    assert isogate(tw, inv.inverse().with_codomain(S)) == chi


def test_fixed_dim_examples():
    S = parse_group("C2^2").whole
    assert all(fixed_dim(trivial_character(S), h) == 1 for h in S.elements)
    reg = regular_character(S)
    for H in subgroups(S):
        assert fixed_dim_subgroup(reg, H) == S.order // H.order
    assert fixed_dim_subgroup(augmented_regular_character(S), S) == 0


def test_fixed_dim_is_conjugation_invariant():
    G = parse_group("Q16")
    theta = induce(faithful_center_char(G), G.whole) + regular_character(G.whole)
    for h in range(G.order):
        for g in range(0, G.order, 3):
            assert fixed_dim(theta, h) == fixed_dim(theta, G.conj(g, h))


def test_non_integral_average_is_an_error():
    S = parse_group("C4").whole
    bogus = Character(S, [ONE, ZERO, ZERO, ZERO])
    with pytest.raises(NonIntegralDimension):
        fixed_dim_subgroup(bogus, S)


def test_free_on_sphere_examples():
    S = parse_group("C9").whole
    assert free_on_sphere(cyclic_linear_character(S, 1)).free
    cert = free_on_sphere(trivial_character(S))
    assert not cert.free and cert.witness is not None
    assert cert.to_json()["free"] is False


def test_tilde_examples():
    S, om, T = module("C4", 4)
    gam = T.gamma
    assert tilde_character(T, gam.identity) == T.degree == 2
    assert tilde_character(T, gam.iota(1)) == root_of_unity(4) + root_of_unity(4, 3) == ZERO
    swap = GammaElement((1, 0), (0, 0))
    assert tilde_character(T, swap) == ZERO


@pytest.mark.parametrize("desc,k", CASES)
def test_tilde_is_class_function(desc, k):
    S, om, T = module(desc, k)
    gam = T.gamma
    rng = random.Random(desc)
    for _ in range(25):
        g, eta = gam.random_element(rng), gam.random_element(rng)
        assert tilde_character(T, gam.conj(eta, g)) == tilde_character(T, g)


@pytest.mark.parametrize("desc,k", [("C4", 4), ("Q8", 2), ("C2^2", 4), ("C9", 9)])
def test_tilde_of_regular_is_permutation_character(desc, k):
    # C[Omega] (x)_{CS} CS = C[Omega], so the trace counts fixed points
    S, om, _ = module(desc, k)
    T = TildeModule(om, regular_character(S))
    rng = random.Random(0)
    gam = T.gamma
    for _ in range(20):
        g = gam.random_element(rng)
        assert tilde_character(T, g).as_integer() == oracles.perm_fixed_points(gam.to_bijection(g))


def test_double_cosets_partition():
    G = parse_group("Q16")
    S = G.whole
    subs = subgroups(S)
    for Q in subs[::3]:
        for H in subs[::4]:
            reps = double_coset_reps(S, Q, H)
            cells = [frozenset(G.mul(G.mul(q, x), h) for q in Q.elements for h in H.elements)
                     for x in reps]
            assert sum(len(c) for c in cells) == S.order
            assert all(x == min(c) for x, c in zip(reps, cells))


@pytest.mark.parametrize("desc,k", CASES)
def test_mackey_all_subgroups(desc, k):
    S, om, T = module(desc, k)
    for H in subgroups(S):
        rep = mackey_check(T, H)
        assert rep.equal, (H.elements, rep.first_difference)
        assert rep.level == "character"


def test_mackey_examples():
    S, om, T = module("C4", 4)
    triv = mackey_check(T, S.parent.trivial)
    assert triv.direct.degree == triv.assembled.degree == T.degree
    C2 = subgroups(S)[1]
    rep = mackey_check(T, C2)
    assert rep.equal and rep.direct.degree == 2
    # with V faithful, -1 acts as -1 on both summands
    assert rep.direct(2) == -2


@pytest.mark.parametrize("desc", ["Q8", "Q16"])
def test_quaternion_assembled_side_is_a_multiple(desc):
    S, om, T = module(desc, 2)
    C2 = next(H for H in subgroups(S) if H.order == 2)
    for H in subgroups(S):
        rep = mackey_check(T, H)
        D = Subgroup(S.parent, H.members & C2.members)
        k = multiple_of(rep.assembled, induce(restrict(T.base_char, D), H))
        # C2 is central, so the double cosets are the cosets of C2 H
        assert k == S.order * D.order // (2 * H.order)


def test_mackey_detects_a_wrong_module():
    # a Mackey assembly for one biset does not match the restriction of another
    S = parse_group("C4").whole
    F = full_fusion(S)
    om = canonical_stable_biset(S, F, S)
    V = cyclic_linear_character(S, 1)
    T = TildeModule(om, V)
    T_reg = TildeModule(regular_biset(S), V)
    rep = mackey_check(T, S)
    assert rep.equal
    assert T_reg.pulled_back(S) != rep.assembled


def test_character_json():
    S = parse_group("C4").whole
    data = cyclic_linear_character(S, 1).to_json()
    assert data["group"] == "C4" and data["classes"] == [0, 1, 2, 3]
    assert data["values"][1] == {"m": 4, "coeffs": [[0, 1], [1, 1], [0, 1], [0, 1]]}
