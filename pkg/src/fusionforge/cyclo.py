"""Exact arithmetic in cyclotomic fields.

Values are stored in the Zumbroich basis of Q(zeta_m) at the smallest conductor
m containing them, so equal numbers have identical (m, coefficients).
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


@lru_cache(maxsize=None)
def _prime_powers(m: int) -> tuple[tuple[int, int, int, int], ...]:
    """(p, q = p^e, cofactor m/q, inverse of the cofactor mod q) for each prime p | m."""
    out = []
    n, p = m, 2
    while n > 1:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            u = m // q
            out.append((p, q, u, pow(u, -1, q) if q > 1 else 0))
        p += 1
    return tuple(out)


def _reduce(m: int, terms: dict) -> dict:
    """Rewrite sum c_k zeta_m^k in the Zumbroich basis, one prime at a time."""
    for p, q, u, inv_u in _prime_powers(m):
        step = q // p
        new: dict = defaultdict(Fraction)
        for k, v in terms.items():
            c = (k * inv_u) % q
            j = c // step
            if p == 2:
                if j == 1:
                    new[(k - step * u) % m] -= v
                else:
                    new[k] += v
            elif j == 0:
                for jj in range(1, p):
                    new[(k + jj * step * u) % m] -= v
            else:
                new[k] += v
        terms = {k: v for k, v in new.items() if v}
    return terms


def _descend(m: int, terms: dict) -> tuple[int, dict]:
    """Move a reduced element to the smallest conductor whose field contains it."""
    while m > 1:
        for p, q, u, inv_u in _prime_powers(m):
            if q % (p * p) == 0 or q == 2:
                if all(k % p == 0 for k in terms):
                    m //= p
                    terms = _reduce(m, {k // p: v for k, v in terms.items()})
                    break
            else:
                groups: dict = defaultdict(dict)
                for k, v in terms.items():
                    c = (k * inv_u) % q
                    groups[(k - c * u) % m][c] = v
                if all(len(g) == p - 1 and len(set(g.values())) == 1 for g in groups.values()):
                    m //= p
                    terms = _reduce(m, {base // p: -next(iter(g.values()))
                                        for base, g in groups.items()})
                    break
        else:
            break
    if not terms:
        m = 1
    return m, terms


def _coerce(x) -> "Cyclotomic":
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Rational)):
        return Cyclotomic._rational(Fraction(x))
    return NotImplemented


class Cyclotomic:
    """An element of some cyclotomic field, in canonical form."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int = 1, terms: dict | None = None):
        if m < 1:
            raise ValueError("conductor must be positive")
        terms = {k % m: Fraction(v) for k, v in (terms or {}).items() if v}
        folded: dict = defaultdict(Fraction)
        for k, v in terms.items():
            folded[k] += v
        self.m, reduced = _descend(m, _reduce(m, dict(folded)))
        self.coeffs = tuple(sorted(reduced.items()))

    @classmethod
    def _rational(cls, r: Fraction) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.m = 1
        obj.coeffs = ((0, r),) if r else ()
        return obj

    def __repr__(self):
        if self.m == 1:
            return f"Cyclotomic({self.as_rational()})"
        parts = " + ".join(f"{v}*E({self.m})^{k}" for k, v in self.coeffs)
        return f"Cyclotomic({parts})"

    # -- conversions -------------------------------------------------------

    def lift(self, n: int) -> dict:
        """Raw exponent coefficients at a conductor ``n`` that is a multiple of ``m``."""
        if n % self.m:
            raise ValueError(f"conductor {n} is not a multiple of {self.m}")
        f = n // self.m
        return _reduce(n, {k * f: v for k, v in self.coeffs})

    def is_rational(self) -> bool:
        return self.m == 1

    def as_rational(self) -> Fraction | None:
        if self.m != 1:
            return None
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def as_integer(self) -> int | None:
        r = self.as_rational()
        if r is None or r.denominator != 1:
            return None
        return r.numerator

    def __complex__(self):
        return sum(complex(float(v)) * complex(math.cos(2 * math.pi * k / self.m),
                                               math.sin(2 * math.pi * k / self.m))
                   for k, v in self.coeffs) + 0j

    def to_json(self) -> dict:
        dense = dict(self.coeffs)
        return {"m": self.m,
                "coeffs": [[dense.get(k, Fraction(0)).numerator, dense.get(k, Fraction(0)).denominator]
                           for k in range(self.m)]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        return cls(data["m"], {k: Fraction(n, d) for k, (n, d) in enumerate(data["coeffs"])})

    # -- arithmetic --------------------------------------------------------

    def _binary(self, other, combine):
        n = math.lcm(self.m, other.m)
        return combine(n, self.lift(n), other.lift(n))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.m == other.m == 1:
            return Cyclotomic._rational(self.as_rational() + other.as_rational())

        def add(n, a, b):
            out = defaultdict(Fraction, a)
            for k, v in b.items():
                out[k] += v
            return Cyclotomic(n, out)
        return self._binary(other, add)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(Cyclotomic)
        obj.m = self.m
        obj.coeffs = tuple((k, -v) for k, v in self.coeffs)
        return obj

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            r = Fraction(other)
            if not r:
                return Cyclotomic._rational(Fraction(0))
            obj = object.__new__(Cyclotomic)
            obj.m = self.m
            obj.coeffs = tuple((k, v * r) for k, v in self.coeffs)
            return obj
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.m == 1:
            return self * other.as_rational()
        if self.m == 1:
            return other * self.as_rational()

        def mul(n, a, b):
            out = defaultdict(Fraction)
            for k1, v1 in a.items():
                for k2, v2 in b.items():
                    out[(k1 + k2) % n] += v1 * v2
            return Cyclotomic(n, out)
        return self._binary(other, mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_m -> zeta_m^k (k coprime to m)."""
        if math.gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.m}")
        return Cyclotomic(self.m, {(e * k) % self.m: v for e, v in self.coeffs})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        if self.m == 1:
            return hash(self.as_rational())
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)


ZERO = Cyclotomic._rational(Fraction(0))
ONE = Cyclotomic._rational(Fraction(1))


def root_of_unity(m: int, k: int = 1) -> Cyclotomic:
    """zeta_m^k with zeta_m = exp(2 pi i / m)."""
    if m <= 0:
        raise ValueError("root_of_unity needs m >= 1")
    return Cyclotomic(m, {k % m: 1})


E = root_of_unity
