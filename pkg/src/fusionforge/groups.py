"""Finite groups with integer-indexed elements, subgroups and injective homomorphisms.

Every group stores its elements as labels ``0..n-1`` with the identity at index
0. Groups up to ``TABLE_LIMIT`` elements carry a full multiplication table;
larger direct products multiply componentwise.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Sequence

from .config import TABLE_LIMIT, SizeLimitError, get_limits


class Group:
    """A finite group given by element labels and a multiplication rule."""

    def __init__(self, labels: Sequence[Hashable], table=None, label: str = "G",
                 mul: Callable[[int, int], int] | None = None,
                 inv: Sequence[int] | None = None):
        if table is None and mul is None:
            raise ValueError("need a multiplication table or a multiplication function")
        self.labels = tuple(labels)
        self.order = len(self.labels)
        self.label = label
        self.table = table
        self._mul = mul
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if inv is None:
            inv = [0] * self.order
            for a in range(self.order):
                row = table[a]
                inv[a] = next(b for b in range(self.order) if row[b] == 0)
        self._inv = tuple(inv)
        self._cache: dict = {}

    @classmethod
    def from_function(cls, elements: Iterable[Hashable], mul: Callable, label: str) -> "Group":
        """Tabulate ``mul`` on ``elements``; the identity is moved to index 0."""
        elements = list(elements)
        identity = next(e for e in elements
                        if all(mul(e, x) == x == mul(x, e) for x in elements))
        elements.remove(identity)
        elements.insert(0, identity)
        if len(elements) > TABLE_LIMIT:
            raise SizeLimitError(f"{label}: {len(elements)} elements exceeds table limit")
        index = {e: i for i, e in enumerate(elements)}
        table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
        return cls(elements, table, label)

    def __repr__(self):
        return f"Group({self.label}, order={self.order})"

    def __len__(self):
        return self.order

    identity = 0

    def mul(self, a: int, b: int) -> int:
        if self.table is not None:
            return self.table[a][b]
        return self._mul(a, b)

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, h: int) -> int:
        """Return g h g^-1."""
        return self.mul(self.mul(g, h), self._inv[g])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        result = 0
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def index(self, label: Hashable) -> int:
        return self._index[label]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.mul(x, a)
                k += 1
            orders.append(k)
        return tuple(orders)

    def order_of(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, [0])

    def generate(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, closure(self, gens))

    def is_abelian(self) -> bool:
        return self.whole.is_abelian

    def verify_axioms(self) -> list[str]:
        """Exhaustive group-axiom check; returns the violations found."""
        problems = []
        n = self.order
        for a in range(n):
            if self.mul(a, 0) != a or self.mul(0, a) != a:
                problems.append(f"identity fails at {a}")
            if self.mul(a, self._inv[a]) != 0:
                problems.append(f"inverse fails at {a}")
        for a in range(n):
            for b in range(n):
                ab = self.mul(a, b)
                for c in range(n):
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        problems.append(f"associativity fails at {(a, b, c)}")
                        return problems
        return problems


def closure(G: Group, gens: Iterable[int], start: Iterable[int] = (0,)) -> frozenset[int]:
    """Smallest subgroup containing ``start`` and ``gens`` (``start`` must already be closed)."""
    gens = list(dict.fromkeys(gens))
    seen = set(start)
    seen.add(0)
    frontier = list(seen)
    mul = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class Subgroup:
    """A subgroup of ``parent``; members are parent element indices."""

    def __init__(self, parent: Group, members: Iterable[int]):
        self.parent = parent
        self.members = frozenset(members)
        self.elements = tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def __repr__(self):
        return f"Subgroup({self.parent.label}, order={self.order}, elements={list(self.elements)})"

    @property
    def key(self) -> tuple:
        return (self.order, self.elements)

    def is_closed(self) -> bool:
        G = self.parent
        return 0 in self.members and all(
            G.mul(a, b) in self.members for a in self.elements for b in self.elements
        ) and all(G.inv(a) in self.members for a in self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating sequence: greedy by decreasing element order."""
        G = self.parent
        gens: list[int] = []
        current = frozenset([0])
        for x in sorted(self.elements, key=lambda a: (-G.order_of(a), a)):
            if x not in current:
                gens.append(x)
                current = closure(G, gens)
                if len(current) == self.order:
                    break
        return tuple(gens)

    @cached_property
    def is_abelian(self) -> bool:
        G = self.parent
        gens = self.generators
        return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, (G.conj(g, h) for h in self.elements))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Conjugacy classes of this subgroup, each sorted, ordered by least member."""
        G = self.parent
        gens = self.generators
        todo = set(self.elements)
        classes = []
        while todo:
            x = min(todo)
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in gens:
                        z = G.conj(g, y)
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            todo -= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort()
        return tuple(classes)

    @cached_property
    def class_index(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.conjugacy_classes) for x in cls}

    @cached_property
    def prime(self) -> int | None:
        return _prime_of(self.order)

    def as_group(self, label: str | None = None) -> Group:
        """This subgroup as a standalone group; index i corresponds to ``elements[i]``."""
        G = self.parent
        pos = {x: i for i, x in enumerate(self.elements)}
        table = tuple(tuple(pos[G.mul(a, b)] for b in self.elements) for a in self.elements)
        labels = [G.labels[x] for x in self.elements]
        return Group(labels, table, label or f"{G.label}[{self.order}]")


class Hom:
    """An injective (or at least well-defined) homomorphism between subgroups.

    Equality is extensional: same domain and same values.
    """

    def __init__(self, domain: Subgroup, codomain: Subgroup, mapping):
        self.domain = domain
        self.codomain = codomain
        if isinstance(mapping, dict):
            self._map = dict(mapping)
        else:
            self._map = dict(zip(domain.elements, mapping))
        self.images = tuple(self._map[x] for x in domain.elements)

    def __call__(self, x: int) -> int:
        return self._map[x]

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.domain == other.domain
                and self.images == other.images)

    def __hash__(self):
        return hash((self.domain.members, self.images))

    def __repr__(self):
        pairs = ", ".join(f"{a}->{b}" for a, b in zip(self.domain.elements, self.images))
        return f"Hom({self.domain.parent.label}[{self.domain.order}] -> {self.codomain.parent.label}: {pairs})"

    @property
    def key(self) -> tuple:
        return (self.domain.key, self.images)

    @classmethod
    def identity(cls, H: Subgroup) -> "Hom":
        return cls(H, H, H.elements)

    @classmethod
    def inclusion(cls, H: Subgroup, K: Subgroup) -> "Hom":
        return cls(H, K, H.elements)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain.parent, self.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_homomorphism(self) -> bool:
        D = self.domain.parent
        C = self.codomain.parent
        m = self._map
        return all(m[D.mul(a, b)] == C.mul(m[a], m[b])
                   for a in self.domain.elements for b in self.domain.elements)

    def compose(self, other: "Hom") -> "Hom":
        """Return ``self`` after ``other``."""
        return Hom(other.domain, self.codomain, [self._map[y] for y in other.images])

    def inverse(self) -> "Hom":
        """The inverse of the corestriction onto the image."""
        if not self.is_injective():
            raise ValueError("cannot invert a non-injective map")
        return Hom(self.image(), self.domain, {b: a for a, b in self._map.items()})

    def restrict(self, P: Subgroup) -> "Hom":
        return Hom(P, self.codomain, [self._map[x] for x in P.elements])

    def with_codomain(self, C: Subgroup) -> "Hom":
        if not set(self.images) <= C.members:
            raise ValueError("image does not lie in the new codomain")
        return Hom(self.domain, C, self.images)

    def is_automorphism(self) -> bool:
        return self.domain == self.codomain and self.image() == self.domain

    def to_json(self) -> dict:
        return {"domain": list(self.domain.elements), "images": list(self.images)}


def _ambient(G) -> Subgroup:
    return G.whole if isinstance(G, Group) else G


def _prime_of(n: int) -> int | None:
    if n == 1:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def extend_to_hom(domain: Subgroup, codomain: Subgroup, gens: Sequence[int],
                  images: Sequence[int]) -> Hom | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism, or return None if impossible."""
    D = domain.parent
    C = codomain.parent
    m = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = m[x]
            for g, h in zip(gens, images):
                y = D.mul(x, g)
                fy = C.mul(fx, h)
                old = m.get(y)
                if old is None:
                    m[y] = fy
                    nxt.append(y)
                elif old != fy:
                    return None
        frontier = nxt
    if len(m) != domain.order:
        return None
    return Hom(domain, codomain, m)


def monomorphisms(P: Subgroup, Q: Subgroup) -> list[Hom]:
    """All injective homomorphisms P -> Q, sorted by image tuple."""
    if P.order > Q.order or Q.order % P.order:
        return []
    gens = P.generators
    D, C = P.parent, Q.parent
    candidates = [[y for y in Q.elements if C.order_of(y) == D.order_of(g)] for g in gens]
    found = []
    seen = set()
    for images in itertools.product(*candidates):
        f = extend_to_hom(P, Q, gens, images)
        if f is not None and f.is_injective() and f.images not in seen:
            seen.add(f.images)
            found.append(f)
    found.sort(key=lambda f: f.images)
    return found


def automorphisms(S) -> list[Hom]:
    amb = _ambient(S)
    get_limits().check("max_s_order", amb.order)
    return monomorphisms(amb, amb)


def is_isomorphic(A, B) -> bool:
    A, B = _ambient(A), _ambient(B)
    if A.order != B.order:
        return False
    if sorted(A.parent.order_of(x) for x in A) != sorted(B.parent.order_of(x) for x in B):
        return False
    return bool(_first_mono(A, B))


def _first_mono(P: Subgroup, Q: Subgroup) -> Hom | None:
    gens = P.generators
    D, C = P.parent, Q.parent
    candidates = [[y for y in Q.elements if C.order_of(y) == D.order_of(g)] for g in gens]
    for images in itertools.product(*candidates):
        f = extend_to_hom(P, Q, gens, images)
        if f is not None and f.is_injective():
            return f
    return None


def first_monomorphism(P: Subgroup, Q: Subgroup) -> Hom | None:
    """The monomorphism P -> Q found first when generator images run in index order."""
    return _first_mono(P, Q)


def conjugation_hom(g: int, H: Subgroup, K: Subgroup) -> Hom:
    """The map h -> g h g^-1 from H to K; H and K live in the same parent group."""
    G = H.parent
    images = [G.conj(g, h) for h in H.elements]
    if not set(images) <= K.members:
        raise ValueError("g H g^-1 is not contained in K")
    return Hom(H, K, images)


def subgroups(G) -> list[Subgroup]:
    """All subgroups, each once, sorted by (order, member list).

    Seeds with the cyclic subgroups and closes under joins with cyclic subgroups.
    """
    amb = _ambient(G)
    cached = amb.__dict__.get("_subgroups")
    if cached is not None:
        return cached
    get_limits().check("max_subgroup_enum", amb.order)
    parent = amb.parent
    cyclic: dict[frozenset, int] = {}
    for g in amb.elements:
        c = closure(parent, [g])
        if c not in cyclic:
            cyclic[c] = g
    cyc_items = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), kv[1]))
    found: dict[frozenset, tuple[int, ...]] = {frozenset([0]): ()}
    for c, g in cyc_items:
        found.setdefault(c, (g,))
    queue = list(found)
    while queue:
        H = queue.pop()
        gens = found[H]
        for C, c in cyc_items:
            if c in H:
                continue
            J = closure(parent, gens + (c,), start=H)
            if J not in found:
                found[J] = gens + (c,)
                queue.append(J)
    result = sorted((Subgroup(parent, m) for m in found), key=lambda s: s.key)
    amb.__dict__["_subgroups"] = result
    return result


def subgroup_classes(G) -> list[list[Subgroup]]:
    """Subgroups grouped into conjugacy classes (conjugation within G)."""
    amb = _ambient(G)
    cached = amb.__dict__.get("_subgroup_classes")
    if cached is not None:
        return cached
    remaining = set(subgroups(amb))
    classes = []
    for H in subgroups(amb):
        if H not in remaining:
            continue
        cls = {H.conjugate(g) for g in amb.elements}
        remaining -= cls
        classes.append(sorted(cls, key=lambda s: s.key))
    amb.__dict__["_subgroup_classes"] = classes
    return classes


def center(G) -> Subgroup:
    amb = _ambient(G)
    P = amb.parent
    gens = amb.generators
    return Subgroup(P, (z for z in amb.elements
                        if all(P.mul(z, g) == P.mul(g, z) for g in gens)))


def rank(G) -> int:
    """Largest k with an elementary abelian subgroup of order p^k."""
    amb = _ambient(G)
    if amb.order == 1:
        return 0
    p = amb.prime
    if p is None:
        raise ValueError(f"rank is defined here for p-groups only (order {amb.order})")
    P = amb.parent
    candidates = [x for x in amb.elements if P.order_of(x) == p]
    best = 0
    seen = {frozenset([0])}
    stack = [(frozenset([0]), ())]
    while stack:
        E, gens = stack.pop()
        best = max(best, len(gens))
        for x in candidates:
            if x in E or any(P.mul(x, g) != P.mul(g, x) for g in gens):
                continue
            powers = [P.power(x, i) for i in range(p)]
            F = frozenset(P.mul(e, y) for e in E for y in powers)
            if F not in seen:
                seen.add(F)
                stack.append((F, gens + (x,)))
    return best


def elementary_abelian_rank(H) -> int | None:
    """log_p |H| if H is elementary abelian, else None."""
    amb = _ambient(H)
    if amb.order == 1:
        return 0
    p = amb.prime
    if p is None or not amb.is_abelian:
        return None
    if any(amb.parent.order_of(x) not in (1, p) for x in amb.elements):
        return None
    return round(math.log(amb.order, p))


def is_cyclic(H) -> bool:
    amb = _ambient(H)
    return any(amb.parent.order_of(x) == amb.order for x in amb.elements)


def is_generalized_quaternion(H) -> bool:
    """Non-cyclic 2-group of order >= 8 with a unique involution."""
    amb = _ambient(H)
    if amb.order < 8 or amb.prime != 2 or is_cyclic(amb):
        return False
    return sum(1 for x in amb.elements if amb.parent.order_of(x) == 2) == 1


# ----------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return Group(range(n), table, f"C{n}")


def elem_abelian(p: int, k: int) -> Group:
    if _prime_of(p) != p or k < 0:
        raise ValueError(f"elem_abelian needs a prime p and k >= 0, got {(p, k)}")
    elems = list(itertools.product(range(p), repeat=k))
    label = f"C{p}^{k}" if k != 1 else f"C{p}"
    return Group.from_function(
        elems, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), label)


def quaternion(order: int) -> Group:
    """Q_{2^N} = <a, b | a^{2^{N-1}}, b^2 = a^{2^{N-2}}, b a b^-1 = a^-1>; a^i b^j is (i, j)."""
    if order < 8 or order & (order - 1):
        raise ValueError(f"quaternion order must be a power of 2 that is >= 8, got {order}")
    m = order // 2

    def mul(x, y):
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + m // 2) % m, 0)

    elems = [(i, 0) for i in range(m)] + [(i, 1) for i in range(m)]
    return Group.from_function(elems, mul, f"Q{order}")


def dihedral(order: int) -> Group:
    if order < 4 or order % 2:
        raise ValueError(f"dihedral order must be even and >= 4, got {order}")
    m = order // 2

    def mul(x, y):
        i, j = x
        k, l = y
        return ((i + (-k if j else k)) % m, (j + l) % 2)

    elems = [(i, 0) for i in range(m)] + [(i, 1) for i in range(m)]
    return Group.from_function(elems, mul, f"D{order}")


def symmetric(n: int) -> Group:
    if n < 1:
        raise ValueError("symmetric degree must be positive")
    elems = list(itertools.permutations(range(n)))
    return Group.from_function(elems, lambda a, b: tuple(a[b[i]] for i in range(n)), f"Sym{n}")


def heisenberg(p: int) -> Group:
    """Extraspecial group of order p^3 and exponent p (p odd)."""
    def mul(a, b):
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p)

    elems = list(itertools.product(range(p), repeat=3))
    return Group.from_function(elems, mul, f"ES({p ** 3},exp_p)")


def metacyclic_extraspecial(p: int) -> Group:
    """Extraspecial group of order p^3 and exponent p^2: C_{p^2} x| C_p with b a b^-1 = a^{1+p}."""
    q = p * p

    def mul(x, y):
        i, j = x
        k, l = y
        return ((i + k * pow(1 + p, j, q)) % q, (j + l) % p)

    elems = [(i, j) for j in range(p) for i in range(q)]
    return Group.from_function(elems, mul, f"ES({p ** 3},exp_p2)")


def direct_product(G1: Group, G2: Group, label: str | None = None) -> Group:
    """G1 x G2; element (a, b) has index a * |G2| + b."""
    n1, n2 = G1.order, G2.order
    label = label or f"{G1.label}x{G2.label}"
    labels = [(G1.labels[a], G2.labels[b]) for a in range(n1) for b in range(n2)]
    inv = [G1.inv(a) * n2 + G2.inv(b) for a in range(n1) for b in range(n2)]

    def mul(x, y):
        a, b = divmod(x, n2)
        c, d = divmod(y, n2)
        return G1.mul(a, c) * n2 + G2.mul(b, d)

    if n1 * n2 <= TABLE_LIMIT:
        n = n1 * n2
        table = tuple(tuple(mul(x, y) for y in range(n)) for x in range(n))
        return Group(labels, table, label, inv=inv)
    return Group(labels, None, label, mul=mul, inv=inv)


def quotient(G: Group, N: Subgroup, label: str) -> Group:
    """G/N for a normal subgroup N; each coset is labelled by its least member's label."""
    rep = {}
    reps = []
    for g in range(G.order):
        if g in rep:
            continue
        coset = [G.mul(g, n) for n in N.elements]
        r = min(coset)
        for x in coset:
            rep[x] = r
        reps.append(r)
    reps.sort()
    pos = {r: i for i, r in enumerate(reps)}
    table = tuple(tuple(pos[rep[G.mul(a, b)]] for b in reps) for a in reps)
    return Group([G.labels[r] for r in reps], table, label)


def central_product(G1: Group, G2: Group, label: str) -> Group:
    """Product of two groups with cyclic centers of order 2, amalgamating the centers."""
    z1, z2 = (center(G).elements for G in (G1, G2))
    if len(z1) != 2 or len(z2) != 2:
        raise ValueError("central product needs centers of order 2")
    P = direct_product(G1, G2)
    z = z1[1] * G2.order + z2[1]
    return quotient(P, P.generate([z]), label)


def extraspecial(order: int, kind: str) -> Group:
    """Extraspecial groups of order p^3, plus 2-groups of order 2^(2n+1) up to 2^7.

    kind: ``exp_p`` / ``exp_p2`` for odd p; ``+`` / ``-`` (or ``plus`` / ``minus``)
    for p = 2, where ``+`` is built from D8 factors and ``-`` ends in one Q8.
    """
    p = _prime_of(order)
    kind = {"plus": "+", "minus": "-"}.get(kind, kind)
    if p is None:
        raise ValueError(f"extraspecial order must be a prime power, got {order}")
    e = round(math.log(order, p))
    if p ** e != order or e % 2 == 0:
        raise ValueError(f"extraspecial order must be p^(2n+1), got {order}")
    if p == 2:
        if kind not in "+-" or len(kind) != 1 or e > 7:
            raise ValueError("2-group extraspecial needs kind '+' or '-' and order <= 128")
        factors = [dihedral(8)] * ((e - 1) // 2)
        if kind == "-":
            factors[-1] = quaternion(8)
        G = factors[0]
        for F in factors[1:]:
            G = central_product(G, F, "tmp")
        G.label = f"ES({order},{kind})"
        return G
    if e != 3:
        raise ValueError("odd extraspecial groups are available for order p^3 only")
    if kind == "exp_p":
        return heisenberg(p)
    if kind == "exp_p2":
        return metacyclic_extraspecial(p)
    raise ValueError(f"unknown extraspecial kind {kind!r}")


def make_group(kind: str, *params) -> Group:
    """Build a group from a structured descriptor such as ``("quaternion", 16)``."""
    builders = {
        "cyclic": cyclic,
        "elem_abelian": elem_abelian,
        "quaternion": quaternion,
        "dihedral": dihedral,
        "symmetric": symmetric,
        "extraspecial": extraspecial,
        "product": lambda *gs: reduce(direct_product, gs),
    }
    if kind not in builders:
        raise ValueError(f"unknown group kind {kind!r}")
    return builders[kind](*params)


_FACTOR = re.compile(r"^(C|Q|D|Sym|ES)(\d*)(?:\((.*)\))?(?:\^(\d+))?$")


def _split_product(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_factor(text: str) -> Group:
    m = _FACTOR.match(text)
    if not m:
        raise ValueError(f"cannot parse group factor {text!r}")
    name, num, args, power = m.groups()
    if name == "ES":
        if not args or num:
            raise ValueError("ES needs parameters, e.g. ES(27,exp_p)")
        order, kind = [s.strip() for s in args.split(",")]
        base = extraspecial(int(order), kind)
    else:
        if not num or args:
            raise ValueError(f"{name} needs an order, e.g. {name}4")
        n = int(num)
        if name == "C" and power and _prime_of(n) == n:
            return elem_abelian(n, int(power))
        base = {"C": cyclic, "Q": quaternion, "D": dihedral, "Sym": symmetric}[name](n)
    if power:
        k = int(power)
        if k < 1:
            raise ValueError("power must be positive")
        G = base
        for _ in range(k - 1):
            G = direct_product(G, base)
        G.label = f"{base.label}^{k}"
        return G
    return base


def parse_group(text: str) -> Group:
    """Parse descriptors like ``C4``, ``C2^3``, ``Q16``, ``ES(27,exp_p)``, ``Q8xC2``."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty group descriptor")
    factors = [_parse_factor(t) for t in _split_product(text)]
    G = reduce(direct_product, factors)
    G.label = text if len(factors) > 1 else factors[0].label
    return G
