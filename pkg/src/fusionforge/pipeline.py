"""End-to-end scenarios: the big-center blueprint, the three example packages and
the rank-reduction recursion. Every scenario returns a VerificationReport whose
claims carry a witness or a counterexample locator.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any

from .biset import Biset, canonical_stable_biset, is_left_stable
from .fusion import FusionSystem, full_fusion, is_characteristic
from .gamma import CompatibleFamily, GammaGroup, build_compatible_family, verify_fusion_containment
from .groups import (Group, Subgroup, _ambient, automorphisms, center, closure, cyclic,
                     elem_abelian, elementary_abelian_rank, first_monomorphism,
                     is_cyclic, is_generalized_quaternion, quaternion, rank, subgroups)
from .repcalc import (Character, TildeModule, abelian_linear_character,
                      augmented_regular_character, cyclic_linear_character, fixed_dim,
                      fixed_dim_subgroup, free_on_sphere, induce, mackey_check, multiple_of,
                      regular_character, restrict)

NOT_COMPUTED = "existence only: the topological realization is not computed"


# -- reports --------------------------------------------------------------------


@dataclass
class Claim:
    id: str
    paper_ref: str       # name of the statement being checked
    passed: bool
    witness: Any = None

    def to_json(self) -> dict:
        return {"id": self.id, "paper_ref": self.paper_ref,
                "verdict": "pass" if self.passed else "fail", "witness": self.witness}


@dataclass
class VerificationReport:
    scenario: str
    inputs: dict
    claims: list[Claim] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, id: str) -> Claim:
        return next(c for c in self.claims if c.id == id)

    def add(self, id: str, paper_ref: str, passed: bool, witness=None) -> Claim:
        c = Claim(id, paper_ref, bool(passed), witness)
        self.claims.append(c)
        return c

    def to_json(self, timing: bool = False) -> dict:
        return {"scenario": self.scenario, "inputs": self.inputs,
                "claims": [c.to_json() for c in self.claims],
                "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0}


def _elements(H: Subgroup) -> list[int]:
    return list(H.elements)


def _label(G: Group, x: int) -> str:
    return str(G.labels[x])


# -- center decomposition and the blueprint -----------------------------------------------


def cyclic_decomposition(Z) -> list[int]:
    """Elements a_1..a_k of non-increasing order with Z = <a_1> x ... x <a_k>.

    Depth-first search over elements of maximal admissible order; an abelian
    p-group always admits such a basis, the search only guards against bad picks.
    """
    Z = _ambient(Z)
    G = Z.parent
    if not Z.is_abelian:
        raise ValueError("cyclic decomposition needs an abelian group")

    def extend(current: frozenset, basis: tuple):
        if len(current) == Z.order:
            return basis
        bound = G.order_of(basis[-1]) if basis else Z.order
        cands = sorted((x for x in Z.elements if x not in current and G.order_of(x) <= bound),
                       key=lambda x: (-G.order_of(x), x))
        tried = set()
        for x in cands:
            cyc = closure(G, [x])
            if cyc in tried or len(cyc & current) != 1:
                continue
            tried.add(cyc)
            joined = frozenset(G.mul(a, b) for a in current for b in cyc)
            found = extend(joined, basis + (x,))
            if found is not None:
                return found
        return None

    basis = extend(frozenset([0]), ())
    if basis is None:
        raise AssertionError("no cyclic decomposition found")
    return list(basis)


@dataclass
class ActionBlueprint:
    group: Group
    center: Subgroup
    basis: list[int]
    chis: list[Character]
    spheres: list[Character]
    isotropy_family: list[Subgroup]
    rank_bound: int

    @property
    def k(self) -> int:
        return len(self.spheres)

    @property
    def sphere_dimensions(self) -> list[int]:
        return [2 * th.degree - 1 for th in self.spheres]

    def is_free(self) -> bool:
        return all(H.order == 1 for H in self.isotropy_family)

    def claims(self) -> list[Claim]:
        G = self.group
        Z = self.center
        out = []
        free_witness = {}
        bad = None
        for z in Z.elements[1:]:
            j = next((j for j, th in enumerate(self.spheres) if fixed_dim(th, z) == 0), None)
            if j is None:
                bad = z
                break
            free_witness[_label(G, z)] = j
        out.append(Claim("center-acts-freely", "big center: Z(G) acts freely on the product",
                         bad is None, {"sphere_killing": free_witness} if bad is None
                         else {"counterexample": _label(G, bad)}))
        meets = [H for H in self.isotropy_family if H.members & Z.members != {0}]
        out.append(Claim("isotropy-meets-center-trivially",
                         "big center: isotropy intersects the center trivially",
                         not meets, {"family_size": len(self.isotropy_family)} if not meets
                         else {"counterexample": _elements(meets[0])}))
        ranks = {H: rank(H) for H in self.isotropy_family}
        over = [H for H, r in ranks.items() if r > self.rank_bound]
        out.append(Claim("isotropy-rank-bound", "big center: isotropy rank at most r - k",
                         not over, {"bound": self.rank_bound,
                                    "max_rank": max(ranks.values(), default=0)} if not over
                         else {"counterexample": _elements(over[0]), "rank": ranks[over[0]]}))
        fam = set(self.isotropy_family)
        hole = None
        for H in self.isotropy_family:
            for L in subgroups(H):
                L = Subgroup(G, L.members)
                if L not in fam:
                    hole = ("subgroup", H, L)
                    break
            for g in range(G.order):
                if H.conjugate(g) not in fam:
                    hole = ("conjugate", H, H.conjugate(g))
                    break
            if hole:
                break
        out.append(Claim("family-closed", "blueprint family closed under subgroups and conjugation",
                         hole is None, {"members": len(fam)} if hole is None
                         else {"kind": hole[0], "member": _elements(hole[1]), "missing": _elements(hole[2])}))
        return out

    def to_json(self) -> dict:
        G = self.group
        return {"group": G.label, "center_order": self.center.order,
                "basis": [_label(G, a) for a in self.basis],
                "basis_orders": [G.order_of(a) for a in self.basis],
                "sphere_degrees": [th.degree for th in self.spheres],
                "sphere_dimensions": self.sphere_dimensions,
                "isotropy_family": [_elements(H) for H in self.isotropy_family],
                "rank_bound": self.rank_bound}


def bigcenter_blueprint(G: Group) -> ActionBlueprint:
    """theta_j = Ind_Z^G chi_j for a cyclic decomposition of Z(G); family = {H : all dim theta_j^H > 0}."""
    W = G.whole
    if G.order > 1 and W.prime is None:
        raise ValueError(f"{G.label} is not a p-group")
    Z = center(W)
    basis = cyclic_decomposition(Z)
    chis, spheres = [], []
    for j in range(len(basis)):
        exps = [1 if i == j else 0 for i in range(len(basis))]
        chi = abelian_linear_character(Z, basis, exps)
        chis.append(chi)
        spheres.append(induce(chi, W))
    family = [H for H in subgroups(W) if all(fixed_dim_subgroup(th, H) > 0 for th in spheres)]
    bound = rank(W) - rank(Z)
    return ActionBlueprint(G, Z, basis, chis, spheres, family, bound)


def blueprint_report(G: Group) -> VerificationReport:
    t0 = time.perf_counter()
    bp = bigcenter_blueprint(G)
    rep = VerificationReport("bigcenter", {"group": G.label, "order": G.order})
    rep.claims.extend(bp.claims())
    rep.add("blueprint", "big-center construction", True, bp.to_json())
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep


# -- example packages -------------------------------------------------------------------


@dataclass
class ExamplePackage:
    kind: str
    p: int
    N: int
    S: Subgroup
    F: FusionSystem
    K: Subgroup
    omega: Biset
    gamma: GammaGroup
    V: Character
    T: TildeModule

    def to_json(self) -> dict:
        G = self.S.parent
        return {"kind": self.kind, "p": self.p, "N": self.N, "S": G.label, "S_order": self.S.order,
                "K": _elements(self.K), "summands": len(self.omega.summands or ()),
                "omega_size": self.omega.size, "n": self.gamma.n, "V_degree": self.V.degree,
                "transversal": list(self.gamma.transversal)}


def _quaternion_base(S: Subgroup) -> Character:
    """Ind from <a> of a faithful linear character: the degree-2 faithful character."""
    G = S.parent
    a = G.index((1, 0))
    A = Subgroup(G, closure(G, [a]))
    return induce(cyclic_linear_character(A, a), S)


def faithful_cyclic_character(S: Subgroup) -> Character:
    G = S.parent
    gen = min(x for x in S.elements if G.order_of(x) == S.order)
    return cyclic_linear_character(S, gen)


def default_base_character(S: Subgroup) -> Character:
    """Faithful linear (cyclic), degree-2 faithful (quaternion), augmented regular (elementary abelian)."""
    if is_cyclic(S):
        return faithful_cyclic_character(S)
    if is_generalized_quaternion(S) and S == S.parent.whole and S.parent.label.startswith("Q"):
        return _quaternion_base(S)
    if elementary_abelian_rank(S) is not None:
        return augmented_regular_character(S)
    return regular_character(S)


def build_package(kind: str, p: int, N: int) -> ExamplePackage:
    if N < 1 or p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError(f"need a prime p and N >= 1, got p={p}, N={N}")
    if kind == "cyclic":
        G = cyclic(p ** N)
    elif kind == "quaternion":
        if p != 2 or N < 3:
            raise ValueError("the quaternion example needs p = 2 and N >= 3")
        G = quaternion(2 ** N)
    elif kind == "elem_abelian":
        G = elem_abelian(p, N)
    else:
        raise ValueError(f"unknown example kind {kind!r}")
    S = G.whole
    F = full_fusion(S)
    if kind == "quaternion":
        K = next(H for H in subgroups(S) if H.order == 2)
        V = _quaternion_base(S)
    else:
        K = S
        V = faithful_cyclic_character(S) if kind == "cyclic" else augmented_regular_character(S)
    omega = canonical_stable_biset(S, F, K)
    gamma = GammaGroup(omega)
    return ExamplePackage(kind, p, N, S, F, K, omega, gamma, V, TildeModule(omega, V, gamma))


REFS = {
    "characteristic": "F-characteristic subgroup hypothesis",
    "stability": "left F-stability of the canonical biset",
    "containment": "F contained in F_S(Gamma_Omega)",
    "iota": "iota is a monomorphism",
    "gamma-order": "Gamma_Omega as a wreath product",
    "mackey": "Mackey decomposition of the restricted module",
    "mackey-multiple": "quaternion restriction is a multiple of Ind_C2 Res_C2 V",
    "cyclic": "cyclic example: H acts freely on the sphere",
    "quaternion": "quaternion example: the restriction is free",
    "elem_abelian": "elementary abelian example: no fixed points for maximal rank",
    "elem-identity": "elementary abelian example: restriction is iota_H^*(V^n)",
}


def package_claims(pkg: ExamplePackage, rep: VerificationReport) -> None:
    S, F, K, omega, gamma, T = pkg.S, pkg.F, pkg.K, pkg.omega, pkg.gamma, pkg.T
    G = S.parent
    cert = is_characteristic(F, K)
    rep.add("characteristic", REFS["characteristic"], cert.holds,
            {"K": _elements(K), "extensions": len(cert.extensions)} if cert
            else {"L": _elements(cert.witness[0]), "phi": list(cert.witness[1].images)})
    st = is_left_stable(omega, F)
    bad = st.first_failure
    rep.add("left-stable", REFS["stability"], st.stable,
            {"pairs_checked": len(st.entries)} if bad is None else bad.to_json())
    cont = verify_fusion_containment(gamma, F)
    miss = next((e for e in cont.entries if e.witness is None), None)
    rep.add("fusion-containment", REFS["containment"], cont.contained,
            {"witnesses": [e.to_json() for e in cont.entries]} if miss is None else miss.to_json())
    problems = gamma.verify_iota()
    rep.add("iota-monomorphism", REFS["iota"], not problems,
            {"checked_pairs": S.order ** 2} if not problems else {"problems": problems[:5]})
    rep.add("gamma-order", REFS["gamma-order"], gamma.order == S.order ** gamma.n * math.factorial(gamma.n)
            and omega.size == gamma.n * S.order,
            {"n": gamma.n, "order": str(gamma.order)})
    failures = []
    multiples = {}
    C2 = K if pkg.kind == "quaternion" else None
    for H in subgroups(S):
        m = mackey_check(T, H)
        if not m.equal:
            failures.append({"H": _elements(H), "class": m.first_difference})
        if C2 is not None:
            D = Subgroup(G, H.members & C2.members)
            base = induce(restrict(pkg.V, D), H)
            k = multiple_of(m.assembled, base)
            multiples[str(_elements(H))] = k
            if k is None:
                failures.append({"H": _elements(H), "not_a_multiple": True})
    rep.add("mackey", REFS["mackey"], not failures,
            {"subgroups": len(subgroups(S)), "level": "character"} if not failures
            else {"failures": failures[:5]})
    if C2 is not None:
        rep.add("mackey-multiple", REFS["mackey-multiple"], all(v is not None for v in multiples.values()),
                {"multiples": multiples})
    if pkg.kind in ("cyclic", "quaternion"):
        bad = None
        for H in subgroups(S):
            if H.order == 1:
                continue
            cert = free_on_sphere(T.pulled_back(H))
            if not cert:
                bad = (H, cert.witness)
                break
        rep.add("freeness", REFS[pkg.kind], bad is None,
                {"subgroups": len(subgroups(S)) - 1} if bad is None
                else {"H": _elements(bad[0]), "h": bad[1]})
    else:
        n_aut = len(automorphisms(S))
        mismatch = None
        for H in subgroups(S):
            if T.pulled_back(H) != restrict(pkg.V, H).multiple(n_aut):
                mismatch = H
                break
        rep.add("elem-identity", REFS["elem-identity"], mismatch is None and gamma.n == n_aut,
                {"n": gamma.n, "aut_order": n_aut} if mismatch is None else {"H": _elements(mismatch)})
        r = rank(S)
        maximal = [H for H in subgroups(S) if H.order > 1 and rank(H) == r]
        dims = {str(_elements(H)): fixed_dim_subgroup(T.pulled_back(H), H) for H in maximal}
        rep.add("freeness", REFS["elem_abelian"], all(v == 0 for v in dims.values()),
                {"fixed_dims": dims})


def run_example(kind: str, p: int, N: int) -> VerificationReport:
    t0 = time.perf_counter()
    pkg = build_package(kind, p, N)
    rep = VerificationReport(f"run-example:{kind}", {"kind": kind, "p": p, "N": N})
    rep.add("package", "example construction", True, pkg.to_json())
    package_claims(pkg, rep)
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep


# -- rank reduction ---------------------------------------------------------------------


class UnsupportedShapeError(ValueError):
    """The residual isotropy family is not all-cyclic, all rank-one 2-groups or all elementary abelian."""


def family_shape(family) -> tuple[str, int, int]:
    """(kind, p, N) of the smallest example group embedding every member."""
    nontrivial = [H for H in family if H.order > 1]
    if not nontrivial:
        raise ValueError("nothing to embed")
    primes = {H.prime for H in nontrivial}
    if len(primes) != 1:
        raise UnsupportedShapeError("family members are not all p-groups for one p")
    p = primes.pop()
    if all(is_cyclic(H) for H in nontrivial):
        m = max(H.order for H in nontrivial)
        return "cyclic", p, round(math.log(m, p))
    if p == 2 and all(is_cyclic(H) or is_generalized_quaternion(H) for H in nontrivial):
        need = max(H.order if not is_cyclic(H) else 2 * H.order for H in nontrivial)
        return "quaternion", 2, max(3, round(math.log2(need)))
    ranks = [elementary_abelian_rank(H) for H in nontrivial]
    if all(r is not None for r in ranks):
        return "elem_abelian", p, max(ranks)
    raise UnsupportedShapeError("family is not of a supported shape")


@dataclass
class Stage:
    index: int
    family: list[Subgroup]
    package: ExamplePackage
    embeddings: dict
    compatible: CompatibleFamily
    characters: dict                  # H -> rho o alpha_H as a character of H
    residual: list[Subgroup]

    def to_json(self) -> dict:
        G = self.family[0].parent
        return {"stage": self.index, "shape": self.package.kind, "S": self.package.S.parent.label,
                "family": [_elements(H) for H in self.family],
                "embeddings": [{"H": _elements(H), "images": list(e.images)}
                               for H, e in self.embeddings.items()],
                "witnesses": len(self.compatible.witnesses),
                "fixed_dims": {str(_elements(H)): fixed_dim_subgroup(c, H)
                               for H, c in self.characters.items()},
                "residual": [_elements(H) for H in self.residual],
                "sphere_degree": self.package.T.degree,
                "group": G.label}


@dataclass
class Plan:
    group: Group
    blueprint: ActionBlueprint
    stages: list[Stage]
    certificate: dict                 # element label -> where its fixed dimension vanishes
    free: bool


def rank_reduction_plan(G: Group, max_stages: int = 8) -> Plan:
    bp = bigcenter_blueprint(G)
    stages = []
    family = list(bp.isotropy_family)
    while any(H.order > 1 for H in family):
        if len(stages) >= max_stages:
            raise RuntimeError("rank reduction did not terminate")
        kind, p, N = family_shape(family)
        pkg = build_package(kind, p, N)
        S = pkg.S
        emb = {}
        for H in family:
            e = first_monomorphism(H, S)
            if e is None:
                raise UnsupportedShapeError(f"{list(H.elements)} does not embed in {S.parent.label}")
            emb[H] = e
        compat = build_compatible_family(G, family, pkg.gamma, emb, fusion=pkg.F)
        chars = {H: pkg.T.pulled_back(H, emb[H]) for H in family}
        residual = [H for H in family if fixed_dim_subgroup(chars[H], H) > 0]
        stages.append(Stage(len(stages) + 2, family, pkg, emb, compat, chars, residual))
        if len(residual) >= len(family):
            raise RuntimeError("stage made no progress")
        family = residual

    cert = {}
    free = True
    for g in range(1, G.order):
        where = next((f"sphere {j} of stage 1" for j, th in enumerate(bp.spheres)
                      if fixed_dim(th, g) == 0), None)
        if where is None:
            for st in stages:
                holders = [H for H in st.family if g in H.members]
                if holders and all(fixed_dim(st.characters[H], g) == 0 for H in holders):
                    where = f"stage {st.index}"
                    break
        if where is None:
            free = False
            where = "uncertified"
        cert[_label(G, g)] = where
    return Plan(G, bp, stages, cert, free)


def plan_report(G: Group) -> VerificationReport:
    t0 = time.perf_counter()
    plan = rank_reduction_plan(G)
    rep = VerificationReport("plan", {"group": G.label, "order": G.order})
    rep.claims.extend(plan.blueprint.claims())
    rep.add("stage-1", "big-center construction", True, plan.blueprint.to_json())
    for st in plan.stages:
        problems = st.compatible.verify()
        rep.add(f"stage-{st.index}-compatible", "compatible family from a left-stable biset",
                not problems, st.to_json() if not problems else {"problems": problems[:5]})
        shrink = all(H in st.family for H in st.residual) and len(st.residual) < len(st.family)
        rep.add(f"stage-{st.index}-rank-drop", "recursive rank reduction", shrink,
                {"before": len(st.family), "after": len(st.residual)})
    rep.add("freeness-certificate", "final action is free", plan.free,
            {"stages": 1 + len(plan.stages), "elements": plan.certificate,
             "topology": NOT_COMPUTED})
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep
