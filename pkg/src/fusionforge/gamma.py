"""The group of right-S-equivariant permutations of a biset, in wreath coordinates.

With a transversal x_1..x_n of the right S-orbits, an element acts by
x_i s -> x_{perm[i]} (twists[i] s). Elements are never enumerated; every claim
(Park witnesses, compatible families) is checked on explicit witnesses.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .biset import Biset, MarkDiscrepancy, compare_bisets, restrict_left, twist_left
from .fusion import FusionSystem
from .groups import Group, Hom, Subgroup, conjugation_hom, subgroup_classes


class NoWitnessError(ValueError):
    """phi is not realized by conjugation in Gamma (the twisted bisets differ)."""

    def __init__(self, phi: Hom, discrepancy: MarkDiscrepancy | None):
        super().__init__(f"no Park witness for {phi!r}")
        self.phi = phi
        self.discrepancy = discrepancy


@dataclass(frozen=True)
class GammaElement:
    perm: tuple[int, ...]
    twists: tuple[int, ...]

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "twists": list(self.twists)}


class GammaGroup:
    """Gamma_Omega for a biset whose right action is free."""

    def __init__(self, omega: Biset):
        if omega.size == 0:
            raise ValueError("empty biset")
        if not omega.is_right_free():
            raise ValueError("Gamma_Omega needs a free right action")
        self.omega = omega
        self.S: Subgroup = omega.right
        orbits = sorted(omega.right_orbits(), key=lambda o: o[0])
        self.transversal = tuple(o[0] for o in orbits)
        self.n = len(orbits)
        self._orbit = [0] * omega.size
        self._twist = [0] * omega.size
        for i, x in enumerate(self.transversal):
            for s in self.S.elements:
                y = omega.right_perm[s][x]
                self._orbit[y] = i
                self._twist[y] = s
        self._witness_cache: dict = {}

    def __repr__(self):
        return f"GammaGroup(n={self.n}, S={self.S.parent.label}[{self.S.order}])"

    @property
    def order(self) -> int:
        return self.S.order ** self.n * math.factorial(self.n)

    @property
    def _G(self) -> Group:
        return self.S.parent

    def coordinates(self, x: int) -> tuple[int, int]:
        """(i, s) with x = x_i s."""
        return self._orbit[x], self._twist[x]

    def point(self, i: int, s: int) -> int:
        return self.omega.right_perm[s][self.transversal[i]]

    @property
    def identity(self) -> GammaElement:
        return GammaElement(tuple(range(self.n)), (0,) * self.n)

    def mul(self, f: GammaElement, g: GammaElement) -> GammaElement:
        """f after g."""
        G = self._G
        perm = tuple(f.perm[j] for j in g.perm)
        twists = tuple(G.mul(f.twists[g.perm[i]], g.twists[i]) for i in range(self.n))
        return GammaElement(perm, twists)

    def inv(self, f: GammaElement) -> GammaElement:
        G = self._G
        perm = [0] * self.n
        twists = [0] * self.n
        for i, j in enumerate(f.perm):
            perm[j] = i
            twists[j] = G.inv(f.twists[i])
        return GammaElement(tuple(perm), tuple(twists))

    def conj(self, g: GammaElement, f: GammaElement) -> GammaElement:
        """g f g^-1."""
        return self.mul(self.mul(g, f), self.inv(g))

    def act(self, f: GammaElement, x: int) -> int:
        i, s = self.coordinates(x)
        return self.point(f.perm[i], self._G.mul(f.twists[i], s))

    def to_bijection(self, f: GammaElement) -> tuple[int, ...]:
        return tuple(self.act(f, x) for x in range(self.omega.size))

    def from_bijection(self, bij: Sequence[int]) -> GammaElement:
        """Wreath coordinates of a right-equivariant bijection (verified pointwise)."""
        perm, twists = [], []
        for x in self.transversal:
            j, t = self.coordinates(bij[x])
            perm.append(j)
            twists.append(t)
        f = GammaElement(tuple(perm), tuple(twists))
        if sorted(perm) != list(range(self.n)) or self.to_bijection(f) != tuple(bij):
            raise ValueError("bijection does not commute with the right S-action")
        return f

    def commutes_with_right_action(self, f: GammaElement) -> bool:
        R = self.omega.right_perm
        return all(self.act(f, R[s][x]) == R[s][self.act(f, x)]
                   for s in self.S.generators for x in range(self.omega.size))

    def iota(self, s: int) -> GammaElement:
        """Left translation x -> s x."""
        return self.from_bijection(self.omega.left_perm[s])

    def verify_iota(self) -> list[str]:
        """Exhaustive homomorphism and injectivity check of iota on S."""
        problems = []
        images = {s: self.iota(s) for s in self.omega.left.elements}
        G = self.omega.left.parent
        for a in images:
            for b in images:
                if images[G.mul(a, b)] != self.mul(images[a], images[b]):
                    problems.append(f"iota({a}*{b}) != iota({a}) iota({b})")
        if len(set(images.values())) != len(images):
            problems.append("iota is not injective")
        return problems

    def random_element(self, rng: random.Random) -> GammaElement:
        perm = list(range(self.n))
        rng.shuffle(perm)
        return GammaElement(tuple(perm), tuple(rng.choice(self.S.elements) for _ in range(self.n)))

    def wreath_coordinates(self, f: GammaElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return f.twists, f.perm

    def to_json(self) -> dict:
        return {"n": self.n, "S": self.S.parent.label, "transversal": list(self.transversal),
                "order": str(self.order)}

    # -- Park witnesses --------------------------------------------------------

    def park_witness(self, phi: Hom) -> GammaElement:
        """eta with eta iota(q) eta^-1 = iota(phi(q)) for all q, from _Q(omega) ~= _phi(omega)."""
        Q = phi.domain
        res = compare_bisets(restrict_left(self.omega, Q), twist_left(self.omega, phi))
        if res.bijection is None:
            raise NoWitnessError(phi, res.discrepancy)
        eta = self.from_bijection(res.bijection)
        if not self.realizes(eta, phi):
            raise AssertionError("Park witness fails its conjugation identity")
        return eta

    def realizes(self, gamma: GammaElement, phi: Hom) -> bool:
        """c_gamma o iota = iota o phi on the domain of phi, elementwise."""
        return all(self.conj(gamma, self.iota(q)) == self.iota(phi(q)) for q in phi.domain.elements)

    def witness(self, phi: Hom) -> GammaElement:
        """A realizing element for phi, built from a cached witness on a conjugacy representative.

        For Q = x Q0 x^-1 the witness of phi o c_x on Q0 is corrected by iota(x^-1).
        """
        Q = phi.domain
        G = self._G
        for cls in subgroup_classes(self.S):
            if Q in cls:
                Q0 = cls[0]
                break
        x = next(x for x in self.S.elements if Q0.conjugate(x) == Q)
        phi0 = phi.compose(conjugation_hom(x, Q0, Q))
        key = (Q0, phi0)
        if key not in self._witness_cache:
            self._witness_cache[key] = self.park_witness(phi0)
        gamma = self.mul(self._witness_cache[key], self.iota(G.inv(x)))
        if not self.realizes(gamma, phi):
            raise AssertionError("corrected witness fails its conjugation identity")
        return gamma


def gamma_group(omega: Biset) -> GammaGroup:
    return GammaGroup(omega)


def iota(gamma: GammaGroup, s: int) -> GammaElement:
    return gamma.iota(s)


def park_witness(gamma: GammaGroup, phi: Hom) -> GammaElement:
    return gamma.park_witness(phi)


def wreath_coordinates(gamma: GammaGroup, f: GammaElement):
    return gamma.wreath_coordinates(f)


@dataclass
class ContainmentEntry:
    Q: Subgroup
    phi: Hom
    witness: GammaElement | None
    discrepancy: MarkDiscrepancy | None = None

    def to_json(self) -> dict:
        out = {"Q": list(self.Q.elements), "phi": list(self.phi.images),
               "witness": self.witness.to_json() if self.witness else None}
        if self.discrepancy is not None:
            out["discrepancy"] = self.discrepancy.to_json()
        return out


@dataclass
class ContainmentReport:
    entries: list[ContainmentEntry] = field(default_factory=list)

    @property
    def contained(self) -> bool:
        return all(e.witness is not None for e in self.entries)

    def __bool__(self):
        return self.contained


def verify_fusion_containment(gamma: GammaGroup, F: FusionSystem,
                              all_subgroups: bool = False) -> ContainmentReport:
    """F <= F_S(Gamma): a realizing element for every (Q, phi), Q up to conjugacy by default."""
    report = ContainmentReport()
    Qs = F.objects if all_subgroups else F.conjugacy_reps()
    for Q in Qs:
        for phi in F.hom(Q, F.base):
            try:
                eta = gamma.park_witness(phi)
                report.entries.append(ContainmentEntry(Q, phi, eta))
            except NoWitnessError as err:
                report.entries.append(ContainmentEntry(Q, phi, None, err.discrepancy))
    return report


# -- compatible families --------------------------------------------------------


@dataclass
class FamilyWitness:
    g: int
    H: Subgroup
    K: Subgroup
    connecting: Hom
    gamma: GammaElement

    def to_json(self) -> dict:
        return {"g": self.g, "H": list(self.H.elements), "K": list(self.K.elements),
                "f": self.connecting.to_json(), "gamma": self.gamma.to_json()}


@dataclass
class CompatibleFamily:
    gamma: GammaGroup
    family: list[Subgroup]
    embeddings: dict
    witnesses: list[FamilyWitness] = field(default_factory=list)

    def alpha(self, H: Subgroup, h: int) -> GammaElement:
        return self.gamma.iota(self.embeddings[H](h))

    def verify(self) -> list[str]:
        """Recheck gamma alpha_H(h) gamma^-1 = alpha_K(g h g^-1) for every witness and h."""
        problems = []
        Gamma = self.gamma
        for w in self.witnesses:
            G = w.H.parent
            for h in w.H.elements:
                lhs = Gamma.conj(w.gamma, self.alpha(w.H, h))
                rhs = self.alpha(w.K, G.conj(w.g, h))
                if lhs != rhs:
                    problems.append(f"square fails for g={w.g}, h={h}")
        return problems


class IncompatibleError(ValueError):
    """A connecting map is not a morphism of the certifying fusion system."""

    def __init__(self, g, H, K, f):
        super().__init__(f"connecting map for g={g}, H={list(H.elements)} -> "
                         f"K={list(K.elements)} is not in the fusion system: {f!r}")
        self.g, self.H, self.K, self.f = g, H, K, f


def build_compatible_family(G: Group, family: Sequence[Subgroup], gamma: GammaGroup,
                            embeddings: dict, fusion: FusionSystem | None = None) -> CompatibleFamily:
    """alpha_H = iota o iota_H, with a verified gamma for every conjugation c_g: H -> K."""
    S = gamma.S
    for H in family:
        e = embeddings[H]
        if not e.is_injective() or not set(e.images) <= S.members:
            raise ValueError(f"embedding of {list(H.elements)} is not injective into S")
    fam = CompatibleFamily(gamma, list(family), dict(embeddings))
    sub_of_S = {}
    for H in family:
        img = frozenset(embeddings[H].images)
        sub_of_S[H] = Subgroup(S.parent, img)
    for H in family:
        inv_H = {b: a for a, b in zip(H.elements, embeddings[H].images)}
        for K in family:
            if K.order < H.order:
                continue
            iK = embeddings[K]
            for g in range(G.order):
                conj = [G.conj(g, h) for h in H.elements]
                if not set(conj) <= K.members:
                    continue
                dom = sub_of_S[H]
                f = Hom(dom, S, {y: iK(G.conj(g, inv_H[y])) for y in dom.elements})
                if fusion is not None and not fusion.contains(f):
                    raise IncompatibleError(g, H, K, f)
                w = gamma.witness(f)
                fam.witnesses.append(FamilyWitness(g, H, K, f, w))
    problems = fam.verify()
    if problems:
        raise AssertionError("; ".join(problems[:3]))
    return fam
