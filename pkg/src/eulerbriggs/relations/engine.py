"""Integer-relation detection over vectors of computed constants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import mpmath

from ..arith import BigReal, PrecisionContext
from ..errors import DomainError, InsufficientPrecisionError
from .lll import lll_reduce
from .pslq import pslq

__all__ = [
    "RelationQuery",
    "RelationResult",
    "FOUND",
    "NONE_BELOW_HEIGHT",
    "DISCLAIMER",
    "required_precision",
    "find_integer_relation",
    "find_relation",
]

FOUND = "found"
NONE_BELOW_HEIGHT = "none_below_height"
DISCLAIMER = ("no integer relation with max|c_i| <= H was detected at this precision; "
              "this is numerical evidence, not a proof")


def required_precision(height: int, n: int) -> int:
    """Digits demanded before a search is attempted: 4 * log10(H) * n."""
    return math.ceil(4 * math.log10(max(height, 1)) * n)


@dataclass(frozen=True)
class RelationQuery:
    entries: tuple[tuple[str, BigReal], ...]
    height_bound: int
    precision: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((str(l), v) for l, v in self.entries))
        if self.height_bound < 1:
            raise DomainError("height bound must be a positive integer")
        if self.precision is None:
            object.__setattr__(self, "precision", min(v.digits for _, v in self.entries))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.entries)


@dataclass
class RelationResult:
    status: str
    labels: tuple[str, ...]
    coefficients: tuple[int, ...] | None
    residual: BigReal | None
    certificate: tuple[int, int]      # (H, precision)
    norm_bound: mpmath.mpf | None = None
    iterations: int = 0
    note: str = field(default="")

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def describe(self) -> str:
        if self.found:
            terms = " ".join(f"{c:+d}*{l}" for c, l in zip(self.coefficients, self.labels) if c)
            return f"found: {terms} = 0 (residual {self.residual.decimal(3)})"
        H, P = self.certificate
        return f"none_below_height: H={H}, precision={P} digits. {self.note}"


def _normalize(c):
    for v in c:
        if v:
            return tuple(c) if v > 0 else tuple(-x for x in c)
    return tuple(c)


def _rank_key(c):
    return (max(map(abs, c)), _normalize(c))


def _residual(c, xs):
    return abs(mpmath.fsum(ci * xi for ci, xi in zip(c, xs)))


def _relation_lattice(xs, height: int, precision: int, accept):
    """Small relations among xs from an LLL-reduced basis of [I | W*x]."""
    n = len(xs)
    scale_digits = max(precision // 2, 1)
    with mpmath.workdps(precision + 10):
        top = max(abs(v) for v in xs)
        W = mpmath.mpf(10) ** scale_digits
        col = [int(mpmath.nint(W * v / top)) for v in xs]
    rows = [[int(i == j) for j in range(n)] + [col[i]] for i in range(n)]
    found = []
    for v in lll_reduce(rows):
        c = v[:n]
        if any(c) and max(map(abs, c)) <= height * n and accept(c):
            found.append(tuple(c))
    return found


def _tie_break(seed, xs, height, precision, accept):
    """Smallest max-norm relation, then lexicographically smallest (sign-normalised)."""
    basis = _relation_lattice(xs, height, precision, accept) or [seed]
    r = len(basis)
    span = range(-2, 3) if r <= 6 else range(-1, 2)
    best = None
    for combo in itertools.product(span, repeat=min(r, 8)):
        if not any(combo):
            continue
        c = [0] * len(xs)
        for k, vec in zip(combo, basis):
            if k:
                for i, x in enumerate(vec):
                    c[i] += k * x
        if not any(c) or max(map(abs, c)) > height:
            continue
        g = math.gcd(*c)
        c = tuple(x // g for x in c)
        if best is None or _rank_key(c) < _rank_key(best):
            best = c
    return _normalize(best) if best is not None else None


def find_integer_relation(query: RelationQuery) -> RelationResult:
    """PSLQ search for c with sum c_i x_i = 0 and max|c_i| <= H.

    Refuses to run unless precision >= 4 log10(H) n. A found relation is
    checked against the residual threshold 10**-(precision/2) (relative to the
    largest entry) and replaced by the smallest relation in the lattice the
    search uncovers.
    """
    n = len(query.entries)
    if n < 2:
        raise DomainError("an integer-relation search needs at least two entries")
    H, P = query.height_bound, query.precision
    need = required_precision(H, n)
    if P < need:
        raise InsufficientPrecisionError(
            f"precision {P} is too low for height {H} over {n} entries; need >= {need} digits",
            need)
    ctx = PrecisionContext(max(P, 10))
    with mpmath.workdps(P + 10):
        xs = [+v.value for _, v in query.entries]
        if any(v == 0 for v in xs):
            raise DomainError("entries must be non-zero")
        top = max(1, max(abs(v) for v in xs))
        threshold = mpmath.mpf(10) ** (-(P / 2)) * top

    def accept(c):
        with mpmath.workdps(P + 10):
            return _residual(c, xs) < threshold

    outcome = pslq(xs, P, math.sqrt(n) * H)
    certificate = (H, P)
    if outcome.relation is not None and accept(outcome.relation):
        best = _tie_break(outcome.relation, xs, H, P, accept)
        if best is not None:
            with mpmath.workdps(P + 10):
                res = BigReal(_residual(best, xs), ctx)
            return RelationResult(FOUND, query.labels, best, res, certificate,
                                  outcome.norm_bound, outcome.iterations)
    note = DISCLAIMER
    if outcome.relation is not None:
        note += " (the search stopped at a relation exceeding H or the residual threshold)"
    return RelationResult(NONE_BELOW_HEIGHT, query.labels, None, None, certificate,
                          outcome.norm_bound, outcome.iterations, note)


def find_relation(values, height: int, precision: int | None = None, labels=None) -> RelationResult:
    """Convenience wrapper taking BigReals (or mpf with explicit precision)."""
    entries = []
    for i, v in enumerate(values):
        if not isinstance(v, BigReal):
            if precision is None:
                raise ValueError("precision is required for raw mpf values")
            with mpmath.workdps(precision + 10):
                v = BigReal(mpmath.mpf(v), PrecisionContext(max(precision, 10)))
        entries.append((labels[i] if labels else f"x{i}", v))
    return find_integer_relation(RelationQuery(tuple(entries), height, precision))
