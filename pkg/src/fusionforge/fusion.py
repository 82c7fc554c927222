"""Fusion systems on a finite group S, stored as explicit morphism tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import get_limits
from .groups import (Group, Hom, Subgroup, _ambient, conjugation_hom, monomorphisms,
                     subgroup_classes, subgroups)


class FusionSystem:
    """Morphism sets Hom_F(P, Q) for all subgroups P, Q of ``base``.

    ``into[P]`` lists the morphisms P -> base; ``hom(P, Q)`` selects those with
    image inside Q. Saturation is neither assumed nor checked.
    """

    def __init__(self, base: Subgroup, into: dict[Subgroup, list[Hom]], label: str = "F"):
        self.base = base
        self.label = label
        self.objects = subgroups(base)
        self._into = {P: tuple(sorted(set(into.get(P, ())), key=lambda f: f.images))
                      for P in self.objects}
        self._hom_cache: dict = {}

    def __repr__(self):
        return f"FusionSystem({self.label} on {self.base.parent.label}[{self.base.order}])"

    def hom(self, P: Subgroup, Q: Subgroup) -> tuple[Hom, ...]:
        key = (P, Q)
        if key not in self._hom_cache:
            self._hom_cache[key] = tuple(f.with_codomain(Q) for f in self._into[P]
                                         if set(f.images) <= Q.members)
        return self._hom_cache[key]

    def aut(self, P: Subgroup) -> tuple[Hom, ...]:
        return self.hom(P, P)

    def contains(self, f: Hom) -> bool:
        return f.domain in self._into and f in self._into[f.domain]

    def __le__(self, other: "FusionSystem") -> bool:
        return all(other.contains(f) for P in self.objects for f in self._into[P])

    def morphism_count(self) -> int:
        return sum(len(v) for v in self._into.values())

    def conjugacy_reps(self) -> list[Subgroup]:
        """One subgroup per S-conjugacy class."""
        return [cls[0] for cls in subgroup_classes(self.base)]

    def check_axioms(self) -> list[str]:
        """Exhaustive check of the fusion-system axioms, plus closure properties."""
        problems = []
        S = self.base
        G = S.parent
        sub_by_members = {P.members: P for P in self.objects}
        for P in self.objects:
            for f in self._into[P]:
                if not (f.is_injective() and f.is_homomorphism()):
                    problems.append(f"non-injective or non-homomorphic morphism {f!r}")
        for P in self.objects:
            for s in S.elements:
                c = Hom(P, S, [G.conj(s, x) for x in P.elements])
                if not self.contains(c):
                    problems.append(f"missing S-conjugation by {s} on {P.elements}")
        for P in self.objects:
            for f in self._into[P]:
                img = sub_by_members.get(frozenset(f.images))
                if img is None:
                    problems.append(f"image of {f!r} is not a subgroup")
                    continue
                if not self.contains(f.inverse()):
                    problems.append(f"inverse of {f!r} missing")
                for R in self.objects:
                    if R <= P and not self.contains(f.restrict(R)):
                        problems.append(f"restriction of {f!r} to {R.elements} missing")
                for g in self._into[img]:
                    if not self.contains(g.compose(f.with_codomain(img))):
                        problems.append(f"composite {g!r} o {f!r} missing")
        return problems

    def to_json(self) -> dict:
        table = []
        for P in self.objects:
            for Q in self.objects:
                n = len(self.hom(P, Q))
                if n:
                    table.append({"P": list(P.elements), "Q": list(Q.elements), "count": n})
        return {"base": self.base.parent.label, "hom_counts": table}


def _as_subgroup(S) -> Subgroup:
    return _ambient(S)


def fusion_of_group(S, G: Group | None = None) -> FusionSystem:
    """F_S(G): morphisms are the conjugations by elements of G between subgroups of S."""
    S = _as_subgroup(S)
    G = G or S.parent
    if S.parent is not G:
        raise ValueError("S must be a subgroup of G")
    limits = get_limits()
    limits.check("max_g_order", G.order)
    limits.check("max_s_order", S.order)
    into = {}
    for P in subgroups(S):
        maps = set()
        for g in range(G.order):
            images = [G.conj(g, x) for x in P.elements]
            if set(images) <= S.members:
                maps.add(Hom(P, S, images))
        into[P] = list(maps)
    return FusionSystem(S, into, label=f"F_S({G.label})")


def full_fusion(S) -> FusionSystem:
    """The fusion system containing every monomorphism between subgroups of S."""
    S = _as_subgroup(S)
    get_limits().check("max_s_order", S.order)
    into = {P: monomorphisms(P, S) for P in subgroups(S)}
    return FusionSystem(S, into, label="full")


@dataclass
class CharacteristicCertificate:
    holds: bool
    extensions: dict = field(default_factory=dict)   # (L, phi) -> extension K -> K
    witness: tuple | None = None                     # offending (L, phi)

    def __bool__(self):
        return self.holds


def is_characteristic(F: FusionSystem, K: Subgroup) -> CharacteristicCertificate:
    """Does every F-morphism L -> S with L <= K extend to an F-morphism K -> K?"""
    auts = F.aut(K)
    ext = {}
    for L in F.objects:
        if not L <= K:
            continue
        for phi in F.hom(L, F.base):
            found = next((a for a in auts if all(a(x) == phi(x) for x in L.elements)), None)
            if found is None:
                return CharacteristicCertificate(False, ext, (L, phi))
            ext[(L, phi)] = found
    return CharacteristicCertificate(True, ext)


def inner_automorphisms(K: Subgroup) -> list[Hom]:
    return sorted({conjugation_hom(k, K, K) for k in K.elements}, key=lambda f: f.images)


def outer_automorphism_reps(F: FusionSystem, K: Subgroup) -> list[Hom]:
    """One representative (the least image tuple) per left coset phi Inn(K) in Aut_F(K)."""
    inner = inner_automorphisms(K)
    remaining = set(F.aut(K))
    reps = []
    for phi in sorted(remaining, key=lambda f: f.images):
        if phi not in remaining:
            continue
        coset = {phi.compose(c) for c in inner}
        remaining -= coset
        reps.append(phi)
    return reps
