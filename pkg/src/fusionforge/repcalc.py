"""Exact character calculus over cyclotomic values.

Characters live on a Subgroup and store one value per conjugacy class. The
Gamma_Omega-module built from an S-character is evaluated through its
block-monomial trace, without ever listing Gamma_Omega.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .biset import Biset, isotropy
from .cyclo import ONE, ZERO, Cyclotomic, root_of_unity
from .gamma import GammaElement, GammaGroup
from .groups import Hom, Subgroup, _ambient


class NonIntegralDimension(ArithmeticError):
    """A fixed-point average came out non-integral; the character is corrupt."""


class Character:
    """A class function on ``group`` with values per conjugacy class."""

    def __init__(self, group, values: Sequence[Cyclotomic], build: tuple = ("given",)):
        self.group: Subgroup = _ambient(group)
        self.values = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic(1, {0: v})
                            for v in values)
        if len(self.values) != len(self.group.conjugacy_classes):
            raise ValueError("need one value per conjugacy class")
        self.build = build

    @classmethod
    def from_function(cls, group, f: Callable[[int], Cyclotomic], build: tuple = ("given",),
                      check: bool = False) -> "Character":
        group = _ambient(group)
        classes = group.conjugacy_classes
        values = [f(c[0]) for c in classes]
        if check:
            for c, v in zip(classes, values):
                if any(f(x) != v for x in c[1:]):
                    raise ValueError("function is not constant on conjugacy classes")
        return cls(group, values, build)

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_index[g]]

    def __repr__(self):
        return f"Character({self.build[0]}, order={self.group.order}, degree={self.degree})"

    @property
    def degree(self) -> int:
        d = self.values[0].as_integer()
        if d is None:
            raise ValueError("character degree is not an integer")
        return d

    def __eq__(self, other):
        return (isinstance(other, Character) and self.group == other.group
                and self.values == other.values)

    def __hash__(self):
        return hash((self.group, self.values))

    def __add__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise ValueError("characters on different groups")
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)],
                         ("sum", self.build, other.build))

    def __sub__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise ValueError("characters on different groups")
        return Character(self.group, [a - b for a, b in zip(self.values, other.values)],
                         ("difference", self.build, other.build))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.multiple(other)
        if self.group != other.group:
            raise ValueError("characters on different groups")
        return Character(self.group, [a * b for a, b in zip(self.values, other.values)],
                         ("tensor", self.build, other.build))

    __rmul__ = __mul__

    def multiple(self, k: int) -> "Character":
        return Character(self.group, [v * k for v in self.values], ("multiple", k, self.build))

    def conjugate(self) -> "Character":
        return Character(self.group, [v.conjugate() for v in self.values], ("conj", self.build))

    def inner(self, other: "Character") -> Cyclotomic:
        """<self, other> = |G|^-1 sum_g self(g) conj(other(g))."""
        if self.group != other.group:
            raise ValueError("characters on different groups")
        total = ZERO
        for cls, a, b in zip(self.group.conjugacy_classes, self.values, other.values):
            total = total + a * b.conjugate() * len(cls)
        return total / self.group.order

    def check(self) -> list[str]:
        problems = []
        if self.group.conjugacy_classes[0] != (0,):
            problems.append("identity class is not first")
        d = self.values[0].as_integer()
        if d is None or d < 0:
            problems.append("degree is not a nonnegative integer")
        return problems

    def to_json(self) -> dict:
        return {"group": self.group.parent.label,
                "classes": [c[0] for c in self.group.conjugacy_classes],
                "values": [v.to_json() for v in self.values]}


# -- basic characters ----------------------------------------------------------------


def trivial_character(H) -> Character:
    H = _ambient(H)
    return Character(H, [ONE] * len(H.conjugacy_classes), ("trivial",))


def regular_character(H) -> Character:
    H = _ambient(H)
    return Character.from_function(H, lambda g: Cyclotomic(1, {0: H.order if g == 0 else 0}),
                                   ("regular",))


def augmented_regular_character(H) -> Character:
    """The regular character minus the trivial one."""
    H = _ambient(H)
    c = regular_character(H) - trivial_character(H)
    c.build = ("augmented-regular",)
    return c


def cyclic_linear_character(H, generator: int, k: int = 1) -> Character:
    """On a cyclic group: generator^j -> zeta_n^(j k), n = |H|."""
    H = _ambient(H)
    G = H.parent
    n = H.order
    if G.order_of(generator) != n or generator not in H:
        raise ValueError("generator does not generate H")
    log = {}
    x = 0
    for j in range(n):
        log[x] = j
        x = G.mul(x, generator)
    return Character.from_function(H, lambda g: root_of_unity(n, log[g] * k),
                                   ("linear", generator, k))


def abelian_linear_character(H, basis: Sequence[int], exponents: Sequence[int]) -> Character:
    """On an abelian group with independent generators ``basis``: basis[j] -> zeta_{o_j}^{exponents[j]}."""
    H = _ambient(H)
    G = H.parent
    orders = [G.order_of(b) for b in basis]
    coords = {0: (0,) * len(basis)}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for j, b in enumerate(basis):
                y = G.mul(x, b)
                if y not in coords:
                    c = list(coords[x])
                    c[j] = (c[j] + 1) % orders[j]
                    coords[y] = tuple(c)
                    nxt.append(y)
        frontier = nxt
    if len(coords) != H.order:
        raise ValueError("basis does not generate H")

    def value(g):
        out = ONE
        for c, o, e in zip(coords[g], orders, exponents):
            out = out * root_of_unity(o, c * e)
        return out
    return Character.from_function(H, value, ("linear-abelian", tuple(basis), tuple(exponents)))


# -- induction, restriction, isogation -------------------------------------------------


def restrict(chi: Character, H) -> Character:
    H = _ambient(H)
    if not H <= chi.group:
        raise ValueError("restriction to a non-subgroup")
    return Character.from_function(H, chi, ("Res", H.order, chi.build))


def pullback(chi: Character, f: Hom) -> Character:
    """a -> chi(f(a)) on the domain of f."""
    return Character.from_function(f.domain, lambda a: chi(f(a)), ("pullback", f.images, chi.build))


def isogate(chi: Character, phi: Hom) -> Character:
    """Isog*(phi): pull a character of phi(Q) back to Q along the isomorphism phi."""
    if not phi.is_injective():
        raise ValueError("isogation needs an injective map")
    if set(phi.images) != chi.group.members:
        raise ValueError("chi must live on the image of phi")
    c = pullback(chi, phi)
    c.build = ("Isog", phi.images, chi.build)
    return c


def pushforward(chi: Character, f: Hom) -> Character:
    """Transport chi from H to f(H) along an injective f."""
    inv = f.inverse()
    return Character.from_function(inv.domain, lambda y: chi(inv(y)), ("transport", chi.build))


def induce(chi: Character, target) -> Character:
    """Ind_H^G chi(g) = |H|^-1 sum_{x in G, x^-1 g x in H} chi(x^-1 g x).

    ``target`` is a supergroup of chi.group or an injective Hom out of chi.group.
    """
    if isinstance(target, Hom):
        if target.domain != chi.group:
            raise ValueError("embedding must start at the character's group")
        chi = pushforward(chi, target)
        target = target.codomain
    G = _ambient(target)
    H = chi.group
    if not H <= G:
        raise ValueError("induction from a non-subgroup")
    P = G.parent
    idx = H.class_index
    values = []
    for cls in G.conjugacy_classes:
        g = cls[0]
        counts: dict[int, int] = {}
        for x in G.elements:
            y = P.mul(P.mul(P.inv(x), g), x)
            c = idx.get(y)
            if c is not None:
                counts[c] = counts.get(c, 0) + 1
        total = ZERO
        for c, k in counts.items():
            total = total + chi.values[c] * k
        values.append(total / H.order)
    return Character(G, values, ("Ind", H.order, G.order, chi.build))


# -- fixed points ------------------------------------------------------------------------


def _as_dimension(x: Cyclotomic) -> int:
    d = x.as_integer()
    if d is None or d < 0:
        raise NonIntegralDimension(f"fixed-point average {x!r} is not a nonnegative integer")
    return d


def fixed_dim(chi: Character, h: int) -> int:
    """dim V^h = |<h>|^-1 sum_k chi(h^k)."""
    G = chi.group.parent
    n = G.order_of(h)
    total = ZERO
    x = 0
    for _ in range(n):
        total = total + chi(x)
        x = G.mul(x, h)
    return _as_dimension(total / n)


def fixed_dim_subgroup(chi: Character, K) -> int:
    """dim V^K = |K|^-1 sum_{k in K} chi(k)."""
    K = _ambient(K)
    if not K <= chi.group:
        raise ValueError("K must be a subgroup of the character's group")
    total = ZERO
    for cls_counts in _class_counts(chi.group, K).items():
        c, k = cls_counts
        total = total + chi.values[c] * k
    return _as_dimension(total / K.order)


def _class_counts(H: Subgroup, K: Subgroup) -> dict[int, int]:
    idx = H.class_index
    counts: dict[int, int] = {}
    for k in K.elements:
        c = idx[k]
        counts[c] = counts.get(c, 0) + 1
    return counts


@dataclass
class FreenessCertificate:
    free: bool
    fixed_dims: dict[int, int]            # class representative -> dim V^h
    witness: int | None = None            # a nontrivial element with fixed vectors

    def __bool__(self):
        return self.free

    def to_json(self) -> dict:
        return {"free": self.free, "fixed_dims": {str(k): v for k, v in self.fixed_dims.items()},
                "witness": self.witness}


def free_on_sphere(chi: Character) -> FreenessCertificate:
    """H acts freely on S(V) iff dim V^h = 0 for every h != e."""
    if chi.degree < 1:
        raise ValueError("sphere of a zero-dimensional representation")
    dims = {}
    witness = None
    for cls in chi.group.conjugacy_classes[1:]:
        h = cls[0]
        dims[h] = fixed_dim(chi, h)
        if dims[h] and witness is None:
            witness = h
    return FreenessCertificate(witness is None, dims, witness)


# -- the induced Gamma-module ----------------------------------------------------------


class TildeModule:
    """C[Omega] (x)_{CS} V as a Gamma_Omega-module, through its character."""

    def __init__(self, omega: Biset, base_char: Character, gamma: GammaGroup | None = None):
        if base_char.group != omega.right:
            raise ValueError("base character must live on S")
        self.omega = omega
        self.base_char = base_char
        self.gamma = gamma or GammaGroup(omega)

    @property
    def degree(self) -> int:
        return self.gamma.n * self.base_char.degree

    def character(self, g: GammaElement) -> Cyclotomic:
        return tilde_character(self, g)

    def pulled_back(self, H, embedding: Hom | None = None) -> Character:
        """h -> tr(iota(e(h))) on H, for an embedding e: H -> S (inclusion by default)."""
        H = _ambient(H)
        e = embedding if embedding is not None else Hom.inclusion(H, self.omega.left)
        return Character.from_function(H, lambda h: self.character(self.gamma.iota(e(h))),
                                       ("Res-tilde", e.images))


def tilde_character(T: TildeModule, g: GammaElement) -> Cyclotomic:
    """Trace of the block-monomial action: sum of V(twist_i) over fixed blocks i."""
    total = ZERO
    for i, j in enumerate(g.perm):
        if i == j:
            total = total + T.base_char(g.twists[i])
    return total


# -- Mackey decomposition ------------------------------------------------------------------


def double_coset_reps(S: Subgroup, Q: Subgroup, H: Subgroup) -> list[int]:
    """Least element of each double coset Q x H."""
    G = S.parent
    seen = set()
    reps = []
    for x in S.elements:
        if x in seen:
            continue
        dc = {G.mul(G.mul(q, x), h) for q in Q.elements for h in H.elements}
        seen |= dc
        reps.append(min(dc))
    return sorted(reps)


@dataclass
class MackeySummand:
    phi: Hom
    x: int
    character: Character

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "x": self.x, "degree": self.character.degree}


@dataclass
class MackeyReport:
    H: Subgroup
    direct: Character
    assembled: Character
    summands: list[MackeySummand] = field(default_factory=list)
    first_difference: int | None = None
    level: str = "character"

    @property
    def equal(self) -> bool:
        return self.first_difference is None

    def __bool__(self):
        return self.equal

    def to_json(self) -> dict:
        return {"H": list(self.H.elements), "equal": self.equal, "level": self.level,
                "first_difference": self.first_difference,
                "summands": [s.to_json() for s in self.summands]}


def mackey_summand(V: Character, phi: Hom, x: int, H: Subgroup) -> Character:
    """Ind^H_{H cap Q^x} Isog*(phi o c_x) Res^S_{phi(xHx^-1 cap Q)} V."""
    S = V.group
    G = S.parent
    Q = phi.domain
    xinv = G.inv(x)
    Qx = Q.conjugate(xinv)
    D = Subgroup(G, H.members & Qx.members)
    inner = Character.from_function(D, lambda d: V(phi(G.conj(x, d))),
                                    ("Isog-Res", phi.images, x))
    out = induce(inner, H)
    out.build = ("Mackey", phi.images, x, D.order)
    return out


def mackey_check(T: TildeModule, H) -> MackeyReport:
    """Compare Res_H of the tilde module with its Mackey assembly, class by class."""
    H = _ambient(H)
    S = T.omega.right
    direct = T.pulled_back(H)
    summands = []
    total = None
    for phi in isotropy(T.omega):
        for x in double_coset_reps(S, phi.domain, H):
            c = mackey_summand(T.base_char, phi, x, H)
            summands.append(MackeySummand(phi, x, c))
            total = c if total is None else total + c
    report = MackeyReport(H, direct, total, summands)
    for cls, a, b in zip(H.conjugacy_classes, direct.values, total.values):
        if a != b:
            report.first_difference = cls[0]
            break
    return report


def multiple_of(chi: Character, base: Character) -> int | None:
    """k with chi = k * base, if any."""
    if chi.group != base.group or base.degree == 0:
        return None
    k, r = divmod(chi.degree, base.degree)
    if r or chi != base.multiple(k):
        return None
    return k
