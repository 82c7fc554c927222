"""Bisets: finite sets with commuting left and right group actions.

A Q-S-biset is treated as a left (Q x S)-set through (q, s) x = q x s^-1, so
isomorphism classes are decided by stabilizer classes (equivalently, by marks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .config import get_limits
from .fusion import FusionSystem, is_characteristic, outer_automorphism_reps
from .groups import Group, Hom, Subgroup, _ambient, direct_product, monomorphisms, subgroups


class NotCharacteristicError(ValueError):
    """The subgroup handed to the stable-biset construction is not F-characteristic."""


class Biset:
    """Points 0..n-1 with ``left_perm[q][x] = q x`` and ``right_perm[s][x] = x s``.

    ``summands`` records the maps phi: Q -> S of the transitive pieces
    S x_{Delta(phi)} S when the biset was assembled from them.
    """

    def __init__(self, left: Subgroup, right: Subgroup, points: Sequence,
                 left_perm: dict, right_perm: dict, summands: Sequence[Hom] | None = None):
        self.left = left
        self.right = right
        self.points = tuple(points)
        self.left_perm = {q: tuple(left_perm[q]) for q in left.elements}
        self.right_perm = {s: tuple(right_perm[s]) for s in right.elements}
        self.summands = tuple(summands) if summands is not None else None

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return (f"Biset({self.left.parent.label}[{self.left.order}]-"
                f"{self.right.parent.label}[{self.right.order}], {len(self)} points)")

    @property
    def size(self) -> int:
        return len(self.points)

    def act(self, q: int, s: int, x: int) -> int:
        """(q, s) x = q x s^-1."""
        R = self.right.parent
        return self.right_perm[R.inv(s)][self.left_perm[q][x]]

    def commuting_violations(self) -> list[tuple]:
        out = []
        for q in self.left.generators:
            lq = self.left_perm[q]
            for s in self.right.generators:
                rs = self.right_perm[s]
                for x in range(self.size):
                    if rs[lq[x]] != lq[rs[x]]:
                        out.append((q, s, x))
        return out

    def check_actions(self) -> list[str]:
        """Both maps are actions and they commute; exhaustive."""
        problems = []
        L, R = self.left.parent, self.right.parent
        n = self.size
        if self.left_perm[0] != tuple(range(n)) or self.right_perm[0] != tuple(range(n)):
            problems.append("identity does not act trivially")
        for a in self.left.elements:
            for b in self.left.elements:
                ab = self.left_perm[L.mul(a, b)]
                pa, pb = self.left_perm[a], self.left_perm[b]
                if any(ab[x] != pa[pb[x]] for x in range(n)):
                    problems.append(f"left action fails for {(a, b)}")
        for a in self.right.elements:
            for b in self.right.elements:
                ab = self.right_perm[R.mul(a, b)]
                pa, pb = self.right_perm[a], self.right_perm[b]
                if any(ab[x] != pb[pa[x]] for x in range(n)):
                    problems.append(f"right action fails for {(a, b)}")
        if self.commuting_violations():
            problems.append("left and right actions do not commute")
        return problems

    def is_left_free(self) -> bool:
        return all(all(p[x] != x for x in range(self.size))
                   for q, p in self.left_perm.items() if q != 0)

    def is_right_free(self) -> bool:
        return all(all(p[x] != x for x in range(self.size))
                   for s, p in self.right_perm.items() if s != 0)

    def is_bifree(self) -> bool:
        return self.is_left_free() and self.is_right_free()

    def right_orbits(self) -> list[list[int]]:
        seen = set()
        orbits = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = sorted({self.right_perm[s][x] for s in self.right.elements})
            seen.update(orb)
            orbits.append(orb)
        return orbits

    def orbits(self) -> list[list[int]]:
        """Orbits of the combined (left x right) action, each sorted, by least point."""
        left_gens = [self.left_perm[q] for q in self.left.generators]
        right_gens = [self.right_perm[s] for s in self.right.generators]
        moves = left_gens + right_gens
        seen = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for mv in moves:
                        z = mv[y]
                        if z not in orb:
                            orb.add(z)
                            nxt.append(z)
                frontier = nxt
            seen |= orb
            out.append(sorted(orb))
        return out

    def stabilizer(self, x: int) -> frozenset:
        """{(q, s) : q x = x s}."""
        by_image: dict[int, list[int]] = {}
        for s in self.right.elements:
            by_image.setdefault(self.right_perm[s][x], []).append(s)
        return frozenset((q, s) for q in self.left.elements
                         for s in by_image.get(self.left_perm[q][x], ()))

    def to_json(self) -> dict:
        if self.summands is None:
            raise ValueError("only bisets assembled from summands serialize")
        return {"base": self.right.parent.label,
                "summands": [{"domain_order": f.domain.order,
                              "phi": [[a, b] for a, b in zip(f.domain.elements, f.images)]}
                             for f in self.summands]}


def _base(S) -> Subgroup:
    return _ambient(S)


def transitive_biset(S, phi: Hom) -> Biset:
    """S x_{Delta(phi)} S: pairs (s1, s2) modulo (s1 q, s2) ~ (s1, phi(q) s2).

    Each point is the lexicographically least pair of its class.
    """
    S = _base(S)
    return disjoint_union(S, [phi])


def _summand_points(S: Subgroup, phi: Hom):
    G = S.parent
    if not phi.is_injective():
        raise ValueError("transitive biset needs an injective phi")
    Q = phi.domain
    inv_imgs = [(q, G.inv(phi(q))) for q in Q.elements]
    rep = {}
    reps = []
    for s1 in S.elements:
        for s2 in S.elements:
            if (s1, s2) in rep:
                continue
            cls = [(G.mul(s1, q), G.mul(fi, s2)) for q, fi in inv_imgs]
            r = min(cls)
            for pair in cls:
                rep[pair] = r
            reps.append(r)
    reps.sort()
    return reps, rep


def disjoint_union(S, phis: Sequence[Hom]) -> Biset:
    """The S-S-biset obtained as the disjoint union of S x_{Delta(phi)} S over ``phis``."""
    S = _base(S)
    G = S.parent
    points = []
    index = {}
    blocks = []
    for i, phi in enumerate(phis):
        reps, rep = _summand_points(S, phi)
        blocks.append((reps, rep))
        for r in reps:
            index[(i, r)] = len(points)
            points.append((i, r))
    left_perm = {}
    right_perm = {}
    for s in S.elements:
        lp = [0] * len(points)
        rp = [0] * len(points)
        for x, (i, (s1, s2)) in enumerate(points):
            rep = blocks[i][1]
            lp[x] = index[(i, rep[(G.mul(s, s1), s2)])]
            rp[x] = index[(i, rep[(s1, G.mul(s2, s))])]
        left_perm[s] = lp
        right_perm[s] = rp
    return Biset(S, S, points, left_perm, right_perm, summands=list(phis))


def canonical_stable_biset(S, F: FusionSystem, K: Subgroup) -> Biset:
    """The union of S x_{Delta(phi)} S over phi in Out_F(K), for F-characteristic K."""
    S = _base(S)
    cert = is_characteristic(F, K)
    if not cert:
        L, phi = cert.witness
        raise NotCharacteristicError(
            f"K={list(K.elements)} is not F-characteristic: {phi!r} on {list(L.elements)} "
            "has no extension to Aut_F(K)")
    reps = outer_automorphism_reps(F, K)
    return disjoint_union(S, [phi.with_codomain(S) for phi in reps])


def twist_left(omega: Biset, psi: Hom) -> Biset:
    """The biset whose left action is q . x = psi(q) x; the right action is unchanged."""
    if not psi.is_injective():
        raise ValueError("twisting needs an injective map")
    if not set(psi.images) <= omega.left.members:
        raise ValueError("psi does not land in the left acting group")
    left_perm = {q: omega.left_perm[psi(q)] for q in psi.domain.elements}
    return Biset(psi.domain, omega.right, omega.points, left_perm, omega.right_perm,
                 summands=None)


def restrict_left(omega: Biset, Q: Subgroup) -> Biset:
    return twist_left(omega, Hom.inclusion(Q, omega.left))


# -- pair subgroups and marks -------------------------------------------------


@dataclass(frozen=True)
class PairSubgroup:
    """A subgroup of L x R stored as a set of pairs, with its graph form when it has one."""

    pairs: frozenset
    graph: Hom | None = None

    @classmethod
    def from_graph(cls, theta: Hom) -> "PairSubgroup":
        return cls(frozenset(zip(theta.domain.elements, theta.images)), theta)

    @classmethod
    def trivial(cls) -> "PairSubgroup":
        return cls(frozenset([(0, 0)]))

    @property
    def order(self) -> int:
        return len(self.pairs)

    def twisted(self, psi: Hom) -> "PairSubgroup":
        """H_psi = {(psi(x), y) : (x, y) in H}."""
        return PairSubgroup(frozenset((psi(x), y) for x, y in self.pairs))

    def goursat(self, left: Subgroup, right: Subgroup) -> Hom | None:
        """The injective theta with H = Delta(theta), if H is such a graph."""
        firsts = [x for x, _ in self.pairs]
        seconds = [y for _, y in self.pairs]
        if len(set(firsts)) != len(self.pairs) or len(set(seconds)) != len(self.pairs):
            return None
        dom = Subgroup(left.parent, firsts)
        return Hom(dom, right, dict(self.pairs))


def fixed_count(omega: Biset, H) -> int:
    """|{x : q x s^-1 = x for all (q, s) in H}|."""
    pairs = H.pairs if isinstance(H, PairSubgroup) else H
    perms = [(omega.left_perm[q], omega.right_perm[s]) for q, s in pairs if (q, s) != (0, 0)]
    return sum(1 for x in range(omega.size) if all(lp[x] == rp[x] for lp, rp in perms))


def pair_group(left: Subgroup, right: Subgroup) -> tuple[Group, list[tuple[int, int]]]:
    """left x right as a standalone group, with its index -> (q, s) table."""
    get_limits().check("max_pair_order", left.order * right.order)
    P = direct_product(left.as_group("Q"), right.as_group("S"))
    nr = right.order
    pairs = [(left.elements[i // nr], right.elements[i % nr]) for i in range(P.order)]
    return P, pairs


def pair_subgroups(left: Subgroup, right: Subgroup) -> list[PairSubgroup]:
    """Every subgroup of left x right."""
    P, pairs = pair_group(left, right)
    return [PairSubgroup(frozenset(pairs[i] for i in H.elements)) for H in subgroups(P)]


def _orbit_key(omega: Biset, orbit: Sequence[int]) -> tuple:
    """The least stabilizer (as a sorted pair tuple) over the orbit; a conjugacy-class label."""
    return min(tuple(sorted(omega.stabilizer(y))) for y in orbit)


def orbit_types(omega: Biset) -> dict[tuple, int]:
    """Multiplicity of each stabilizer conjugacy class among the orbits."""
    counts: dict[tuple, int] = {}
    for orb in omega.orbits():
        k = _orbit_key(omega, orb)
        counts[k] = counts.get(k, 0) + 1
    return counts


@dataclass
class MarkDiscrepancy:
    subgroup: PairSubgroup
    count_first: int
    count_second: int

    def to_json(self) -> dict:
        return {"subgroup": sorted([list(p) for p in self.subgroup.pairs]),
                "first": self.count_first, "second": self.count_second}


@dataclass
class IsoResult:
    bijection: tuple[int, ...] | None
    discrepancy: MarkDiscrepancy | None = None
    checked_types: int = 0

    def __bool__(self):
        return self.bijection is not None


def _same_acting_groups(a: Biset, b: Biset) -> bool:
    return a.left == b.left and a.right == b.right


def is_equivariant(a: Biset, b: Biset, f: Sequence[int]) -> bool:
    """Pointwise check that f: a -> b commutes with both actions, for every group element."""
    if sorted(f) != list(range(b.size)) or a.size != b.size:
        return False
    for q in a.left.elements:
        pa, pb = a.left_perm[q], b.left_perm[q]
        if any(f[pa[x]] != pb[f[x]] for x in range(a.size)):
            return False
    for s in a.right.elements:
        pa, pb = a.right_perm[s], b.right_perm[s]
        if any(f[pa[x]] != pb[f[x]] for x in range(a.size)):
            return False
    return True


def compare_bisets(a: Biset, b: Biset) -> IsoResult:
    """Decide a ~= b; returns an explicit bijection or a mark discrepancy.

    Orbits are matched by stabilizer class. Burnside's triangularity makes the
    largest mismatched stabilizer class a subgroup with unequal marks.
    """
    if not _same_acting_groups(a, b):
        raise ValueError("bisets over different acting groups")
    get_limits().check("max_pair_order", a.left.order * a.right.order)
    orbs_a = [(o, _orbit_key(a, o)) for o in a.orbits()]
    orbs_b = [(o, _orbit_key(b, o)) for o in b.orbits()]
    pool: dict[tuple, list] = {}
    for o, k in orbs_b:
        pool.setdefault(k, []).append(o)
    types_a: dict[tuple, int] = {}
    for _, k in orbs_a:
        types_a[k] = types_a.get(k, 0) + 1
    types_b = {k: len(v) for k, v in pool.items()}
    if types_a != types_b:
        diff = [k for k in set(types_a) | set(types_b) if types_a.get(k, 0) != types_b.get(k, 0)]
        worst = max(diff, key=lambda k: (len(k), k))
        H = PairSubgroup(frozenset(worst))
        disc = MarkDiscrepancy(H, fixed_count(a, H), fixed_count(b, H))
        assert disc.count_first != disc.count_second
        return IsoResult(None, disc, len(types_a))
    f = [None] * a.size
    moves = ([(a.left_perm[q], b.left_perm[q]) for q in a.left.generators]
             + [(a.right_perm[s], b.right_perm[s]) for s in a.right.generators])
    for o, k in orbs_a:
        x = o[0]
        stab = a.stabilizer(x)
        target = pool[k].pop()
        y = next(y for y in target if b.stabilizer(y) == stab)
        f[x] = y
        frontier = [x]
        while frontier:
            nxt = []
            for u in frontier:
                for ma, mb in moves:
                    v = ma[u]
                    if f[v] is None:
                        f[v] = mb[f[u]]
                        nxt.append(v)
            frontier = nxt
    f = tuple(f)
    if not is_equivariant(a, b, f):
        raise AssertionError("constructed bijection is not equivariant")
    return IsoResult(f, None, len(types_a))


def biset_isomorphism(a: Biset, b: Biset) -> tuple[int, ...] | None:
    """An explicit equivariant bijection a -> b, or None when the bisets differ."""
    return compare_bisets(a, b).bijection


def mark_vector(omega: Biset, reps: Sequence[PairSubgroup]) -> tuple[int, ...]:
    return tuple(fixed_count(omega, H) for H in reps)


def pair_subgroup_class_reps(left: Subgroup, right: Subgroup) -> list[PairSubgroup]:
    """One subgroup of left x right per conjugacy class."""
    L, R = left.parent, right.parent
    reps = []
    seen = set()
    for H in pair_subgroups(left, right):
        if H.pairs in seen:
            continue
        for a in left.elements:
            for b in right.elements:
                seen.add(frozenset((L.conj(a, q), R.conj(b, s)) for q, s in H.pairs))
        reps.append(H)
    return reps


def marks_agree(a: Biset, b: Biset) -> bool:
    """Full mark-vector comparison over every subgroup class of left x right."""
    reps = pair_subgroup_class_reps(a.left, a.right)
    return mark_vector(a, reps) == mark_vector(b, reps)


def twisted_diagonal_reps(left: Subgroup, right: Subgroup) -> list[PairSubgroup]:
    """Delta(theta) for L <= left and injective theta: L -> right, one per (left x right)-class."""
    L, R = left.parent, right.parent
    reps = []
    seen = set()
    for D in subgroups(left):
        for theta in monomorphisms(D, right):
            H = PairSubgroup.from_graph(theta)
            if H.pairs in seen:
                continue
            for a in left.elements:
                for b in right.elements:
                    seen.add(frozenset((L.conj(a, q), R.conj(b, s)) for q, s in H.pairs))
            reps.append(H)
    return reps


def bifree_marks_agree(a: Biset, b: Biset) -> bool:
    """Mark comparison for bifree bisets.

    Point stabilizers of a bifree biset are twisted diagonals, so every other
    subgroup has mark zero on both sides and the twisted-diagonal classes carry
    the whole mark vector.
    """
    if not (a.is_bifree() and b.is_bifree()):
        raise ValueError("both bisets must be bifree")
    reps = twisted_diagonal_reps(a.left, a.right)
    return mark_vector(a, reps) == mark_vector(b, reps)


# -- stability ------------------------------------------------------------------


@dataclass
class StabilityEntry:
    Q: Subgroup
    phi: Hom
    bijection: tuple[int, ...] | None
    discrepancy: MarkDiscrepancy | None

    @property
    def ok(self) -> bool:
        return self.bijection is not None

    def to_json(self) -> dict:
        out = {"Q": list(self.Q.elements), "phi": list(self.phi.images), "isomorphic": self.ok}
        if self.discrepancy is not None:
            out["discrepancy"] = self.discrepancy.to_json()
        return out


@dataclass
class StabilityReport:
    entries: list[StabilityEntry] = field(default_factory=list)

    @property
    def stable(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def first_failure(self) -> StabilityEntry | None:
        return next((e for e in self.entries if not e.ok), None)

    def __bool__(self):
        return self.stable


def is_left_stable(omega: Biset, F: FusionSystem, all_subgroups: bool = False,
                   stop_at_failure: bool = False) -> StabilityReport:
    """Check _Q(omega) ~= _phi(omega) for Q up to S-conjugacy and every phi in Hom_F(Q, S)."""
    if not omega.is_left_free():
        raise ValueError("left stability is defined for left-free bisets")
    report = StabilityReport()
    Qs = F.objects if all_subgroups else F.conjugacy_reps()
    for Q in Qs:
        plain = restrict_left(omega, Q)
        for phi in F.hom(Q, F.base):
            res = compare_bisets(plain, twist_left(omega, phi))
            report.entries.append(StabilityEntry(Q, phi, res.bijection, res.discrepancy))
            if stop_at_failure and not res:
                return report
    return report


@dataclass
class MarkAudit:
    """Fixed-point comparison |omega^H| = |omega^{H_psi}| over all H <= Q x S."""
    subgroups_checked: int = 0
    graph_subgroups: int = 0
    zero_nongraph: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def stability_mark_audit(omega: Biset, F: FusionSystem, K: Subgroup, psi: Hom) -> MarkAudit:
    """Compare marks of _Q(omega) and _psi(omega) on every subgroup of Q x S.

    Subgroups that are not graphs of F-morphisms L -> S with L <= K must have
    no fixed points on either side.
    """
    S = omega.right
    Q = psi.domain
    audit = MarkAudit()
    for H in pair_subgroups(Q, S):
        audit.subgroups_checked += 1
        a = fixed_count(omega, H)
        b = fixed_count(omega, H.twisted(psi))
        theta = H.goursat(Q, S)
        is_f_graph = theta is not None and theta.domain <= K and F.contains(theta)
        if is_f_graph:
            audit.graph_subgroups += 1
        elif a == 0 and b == 0:
            audit.zero_nongraph += 1
        else:
            audit.failures.append((H, a, b, "non-graph subgroup with fixed points"))
            continue
        if a != b:
            audit.failures.append((H, a, b, "marks differ"))
    return audit


# -- isotropy -----------------------------------------------------------------------


def isotropy(omega: Biset) -> list[Hom]:
    """Isot(omega): one normalized phi: Q -> S per transitive summand, sorted.

    Within a summand the stabilizers of all points are the conjugates of one
    Delta(phi); the least (domain, images) graph among them is reported.
    """
    if omega.left != omega.right:
        raise ValueError("isotropy is defined here for S-S-bisets")
    if not omega.is_bifree():
        raise ValueError("isotropy needs a bifree biset")
    S = omega.right
    out = []
    for orb in omega.orbits():
        best = None
        for y in orb:
            theta = PairSubgroup(omega.stabilizer(y)).goursat(S, S)
            if theta is None:
                raise AssertionError("bifree biset with a non-graph stabilizer")
            if best is None or theta.key < best.key:
                best = theta
        out.append(best)
    out.sort(key=lambda f: f.key)
    return out


def rebuild_from_isotropy(omega: Biset) -> Biset:
    return disjoint_union(omega.right, isotropy(omega))


def regular_biset(S) -> Biset:
    S = _base(S)
    return transitive_biset(S, Hom.identity(S))
