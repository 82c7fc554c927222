"""Random (Omega1, Omega2, Q, psi) instances for the isomorphism oracle."""

from fusionforge.biset import disjoint_union, restrict_left, twist_left
from fusionforge.groups import Hom, conjugation_hom, monomorphisms, parse_group, subgroups

POOL = ["C2", "C3", "C4", "C2^2", "C5", "C6", "Sym3", "C8", "Q8", "D8", "C4xC2", "C9", "C3^2",
        "C2^3", "Q16", "D16", "C16"]

_groups = {}


def _group(desc):
    if desc not in _groups:
        _groups[desc] = parse_group(desc)
    return _groups[desc]


def random_summands(rng, S, count):
    subs = subgroups(S)
    out = []
    for _ in range(count):
        Q = rng.choice(subs)
        out.append(rng.choice(monomorphisms(Q, S)))
    return out


def isomorphic_variant(rng, S, phis):
    """Summands c_a o phi o c_b in shuffled order: an isomorphic biset."""
    G = S.parent
    out = []
    for phi in phis:
        Q = phi.domain
        b = rng.choice(S.elements)
        a = rng.choice(S.elements)
        Qb = Q.conjugate(b)
        cb = conjugation_hom(G.inv(b), Qb, Q)
        f = phi.compose(cb)
        out.append(Hom(Qb, S, [G.conj(a, y) for y in f.images]))
    rng.shuffle(out)
    return out


def random_instance(rng):
    """((a, b), description) with a = _Q(Omega1) and b = _psi(Omega2), same size and acting pair."""
    S = _group(rng.choice(POOL)).whole
    k = rng.randint(1, 3 if S.order <= 8 else 2)
    phis = random_summands(rng, S, k)
    mode = rng.choice(["variant", "random", "same-size", "twist"])
    if mode == "variant":
        phis2 = isomorphic_variant(rng, S, phis)
    elif mode == "same-size":
        # different summands of the same total size
        phis2 = [rng.choice([f for f in monomorphisms(P, S)])
                 for P in (rng.choice([H for H in subgroups(S) if H.order == phi.domain.order])
                           for phi in phis)]
    else:
        phis2 = list(phis)
    if mode == "random":
        phis2 = random_summands(rng, S, k)
    O1 = disjoint_union(S, phis)
    O2 = disjoint_union(S, phis2)
    Q = rng.choice(subgroups(S))
    psi = Hom.inclusion(Q, S) if mode == "variant" else rng.choice(monomorphisms(Q, S))
    a = restrict_left(O1, Q)
    b = twist_left(O2, psi)
    return a, b, {"S": S.parent.label, "mode": mode, "Q": Q.order, "size": (a.size, b.size)}
