"""Irreducible families of prime sets and of natural numbers.

A finite family is irreducible when removing any member shrinks the union
of prime sets, i.e. every member owns a prime no other member has.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..constants import PrimeSet
from ..errors import DomainError

__all__ = ["SetFamily", "IrreducibilityResult", "irreducible_family_check", "parse_family"]


@dataclass(frozen=True)
class SetFamily:
    sets: tuple[PrimeSet, ...] = ()
    naturals: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.naturals is not None:
            nats = tuple(int(n) for n in self.naturals)
            if any(n < 1 for n in nats):
                raise DomainError("naturals must be positive")
            if len(set(nats)) != len(nats):
                raise DomainError("family members must be distinct")
            object.__setattr__(self, "naturals", nats)
            object.__setattr__(self, "sets", tuple(PrimeSet.of_divisors(n) for n in nats))
        else:
            sets = tuple(s if isinstance(s, PrimeSet) else PrimeSet(tuple(s)) for s in self.sets)
            if len(set(sets)) != len(sets):
                raise DomainError("family members must be distinct")
            object.__setattr__(self, "sets", sets)

    @classmethod
    def of_naturals(cls, naturals) -> "SetFamily":
        return cls(naturals=tuple(naturals))

    def member_label(self, i: int) -> str:
        return str(self.naturals[i]) if self.naturals is not None else str(self.sets[i])

    def __len__(self):
        return len(self.sets)


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    private_primes: tuple[tuple[int, ...], ...]   # per member
    witness: int | None                            # index of a member with no private prime
    family: SetFamily

    def __bool__(self):
        return self.irreducible

    def explain(self) -> str:
        if self.irreducible:
            parts = [f"{self.family.member_label(i)} owns {min(p)}"
                     for i, p in enumerate(self.private_primes)]
            return "irreducible: " + "; ".join(parts) if parts else "irreducible (empty family)"
        return f"{self.family.member_label(self.witness)} has no private prime"


def irreducible_family_check(family: SetFamily) -> IrreducibilityResult:
    sets = [set(s.primes) for s in family.sets]
    private = []
    for i, s in enumerate(sets):
        others = set().union(*(t for j, t in enumerate(sets) if j != i))
        private.append(tuple(sorted(s - others)))
    lacking = [i for i, p in enumerate(private) if not p]
    if not lacking:
        return IrreducibilityResult(True, tuple(private), None, family)
    # the most redundant member: largest prime set, earliest on ties
    witness = min(lacking, key=lambda i: (-len(sets[i]), i))
    return IrreducibilityResult(False, tuple(private), witness, family)


def parse_family(text: str) -> SetFamily:
    """'2|3|2,3' -> {{2}, {3}, {2,3}}."""
    parts = [p for p in text.split("|")]
    return SetFamily(tuple(PrimeSet.parse(p) for p in parts))

