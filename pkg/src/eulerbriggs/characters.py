"""Dirichlet characters modulo q with exact values.

A character is stored as a vector of exponents, one per cyclic factor of
(Z/qZ)*: if g_i generates a factor of order m_i then chi(g_i) = e(k_i/m_i),
where e(x) = exp(2 pi i x). Values are :class:`RootOfUnity` fractions of a
turn, so orthogonality relations can be checked with no rounding at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import factorint, primitive_root

__all__ = [
    "ResidueGroup",
    "DirichletCharacter",
    "RootOfUnity",
    "CyclotomicInteger",
    "residue_group",
    "enumerate_characters",
    "evaluate",
    "parity",
    "conjugate",
    "totient",
]


def totient(q: int) -> int:
    result = q
    for p in factorint(q):
        result = result // p * (p - 1)
    return result


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i * turn), or the number 0 when ``zero`` is set."""

    turn: Fraction = Fraction(0)
    zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "turn", Fraction(self.turn) % 1)

    @property
    def numerator(self) -> int:
        return self.turn.numerator

    @property
    def denominator(self) -> int:
        return self.turn.denominator

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.zero or other.zero:
            return ZERO
        return RootOfUnity(self.turn + other.turn)

    def conjugate(self) -> "RootOfUnity":
        return self if self.zero else RootOfUnity(-self.turn)

    def is_one(self) -> bool:
        return not self.zero and self.turn == 0

    def to_complex(self) -> complex:
        import cmath

        if self.zero:
            return 0j
        return cmath.exp(2j * cmath.pi * float(self.turn))

    def __str__(self):
        if self.zero:
            return "0"
        if self.turn == 0:
            return "1"
        if self.turn == Fraction(1, 2):
            return "-1"
        return f"e({self.turn})"


ZERO = RootOfUnity(zero=True)
ONE = RootOfUnity()


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    """Exact quotient of integer polynomials; b monic. Lowest degree first."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    # x^n - 1 = prod_{d | n} Phi_d(x)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, _cyclotomic_poly(d))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


class CyclotomicInteger:
    """An element of Z[zeta_n] in canonical form (reduced modulo Phi_n)."""

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self._coeffs = [0] * n if coeffs is None else list(coeffs)

    @classmethod
    def sum_of(cls, values) -> "CyclotomicInteger":
        values = [v for v in values if not v.zero]
        n = 1
        for v in values:
            n = n * v.denominator // gcd(n, v.denominator)
        acc = cls(n)
        for v in values:
            acc._coeffs[int(v.turn * n)] += 1
        return acc

    def reduced(self) -> tuple[int, ...]:
        phi = _cyclotomic_poly(self.n)
        deg = len(phi) - 1
        r = list(self._coeffs)
        for i in range(len(r) - 1, deg - 1, -1):
            c = r[i]
            if c:
                for j in range(deg + 1):
                    r[i - deg + j] -= c * phi[j]
        r = r[:deg] if deg else r[:1]
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        return tuple(r)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.reduced())

    def as_integer(self):
        """The value as an int if it is rational, else None."""
        r = self.reduced()
        if all(c == 0 for c in r[1:]):
            return r[0] if r else 0
        return None


@dataclass(frozen=True)
class ResidueGroup:
    modulus: int
    factorization: tuple[tuple[int, int], ...]
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for m in self.orders:
            n *= m
        return n

    def log(self, n: int) -> tuple[int, ...] | None:
        """Exponent vector of n on the generators, or None if gcd(n, q) > 1."""
        return _log_table(self.modulus).get(n % self.modulus)


def _crt_lift(residue: int, modulus: int, q: int) -> int:
    """The element congruent to residue mod ``modulus`` and to 1 mod q/modulus."""
    other = q // modulus
    if other == 1:
        return residue % q
    # x = residue + modulus * t, with x = 1 mod other
    t = ((1 - residue) * pow(modulus, -1, other)) % other
    return (residue + modulus * t) % q


@lru_cache(maxsize=None)
def residue_group(q: int) -> ResidueGroup:
    """CRT decomposition of (Z/qZ)* with the smallest generator per factor."""
    if q < 1:
        raise ValueError("modulus must be positive")
    fac = tuple(sorted(factorint(q).items()))
    gens, orders = [], []
    for p, e in fac:
        pe = p**e
        if p == 2:
            if e == 2:
                gens.append(_crt_lift(3, pe, q))
                orders.append(2)
            elif e >= 3:
                gens.append(_crt_lift(pe - 1, pe, q))
                orders.append(2)
                gens.append(_crt_lift(5, pe, q))
                orders.append(2 ** (e - 2))
        else:
            gens.append(_crt_lift(primitive_root(pe, smallest=True), pe, q))
            orders.append((p - 1) * p ** (e - 1))
    return ResidueGroup(q, fac, tuple(gens), tuple(orders))


@lru_cache(maxsize=256)
def _log_table(q: int) -> dict[int, tuple[int, ...]]:
    g = residue_group(q)
    table = {}
    for exps in itertools.product(*(range(m) for m in g.orders)):
        x = 1
        for gen, k in zip(g.generators, exps):
            x = x * pow(gen, k, q) % q
        table[x % q] = exps
    if q == 1:
        table = {0: ()}
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    @property
    def group(self) -> ResidueGroup:
        return residue_group(self.modulus)

    @property
    def principal(self) -> bool:
        return all(k == 0 for k in self.exponents)

    @property
    def parity(self) -> str:
        return parity(self)

    @property
    def is_real(self) -> bool:
        return all(2 * k % m == 0 for k, m in zip(self.exponents, self.group.orders))

    @property
    def order(self) -> int:
        n = 1
        for k, m in zip(self.exponents, self.group.orders):
            o = m // gcd(k, m)
            n = n * o // gcd(n, o)
        return n

    def __call__(self, n: int) -> RootOfUnity:
        return evaluate(self, n)

    @property
    def label(self) -> str:
        return f"chi_{self.modulus}[{','.join(map(str, self.exponents))}]"


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, lexicographic in exponents (principal first)."""
    g = residue_group(q)
    return [DirichletCharacter(q, exps) for exps in itertools.product(*(range(m) for m in g.orders))]


def evaluate(chi: DirichletCharacter, n: int) -> RootOfUnity:
    g = chi.group
    logs = g.log(n)
    if logs is None:
        return ZERO
    turn = sum((Fraction(k * l, m) for k, l, m in zip(chi.exponents, logs, g.orders)), Fraction(0))
    return RootOfUnity(turn)


def parity(chi: DirichletCharacter) -> str:
    return "even" if evaluate(chi, -1).is_one() else "odd"


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    orders = chi.group.orders
    return DirichletCharacter(chi.modulus, tuple((-k) % m for k, m in zip(chi.exponents, orders)))
