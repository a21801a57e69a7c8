"""Equivariant ideals of A as up-sets of strict partitions.

An ideal is stored by the antichain of minimal partitions whose summands it
contains; its constituents are everything above that antichain.  The empty
antichain is the zero ideal and ``{()}`` is the unit ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .partitions import (
    StrictPartition,
    contains,
    enumerate_strict,
    format_partition,
    join,
    parse_partition,
    staircase,
)

__all__ = [
    "EquivariantIdeal",
    "I_r",
    "g_radical",
    "g_spectrum",
    "intersect",
    "is_g_prime",
    "leq",
    "parse_antichain",
    "principal",
    "radical_of_product",
    "rank_of_prime",
    "sum_ideals",
    "zero_ideal",
]


def _minimal(parts: Iterable) -> tuple[StrictPartition, ...]:
    uniq = {StrictPartition(p) for p in parts}
    mins = [p for p in uniq if not any(q != p and contains(p, q) for q in uniq)]
    return tuple(sorted(mins, key=lambda p: (p.size, tuple(-x for x in p))))


@dataclass(frozen=True)
class EquivariantIdeal:
    """Ideal generated by the summands A_lam, lam in ``generators`` (an antichain)."""

    generators: tuple[StrictPartition, ...] = ()

    def __post_init__(self):
        gens = tuple(StrictPartition(g) for g in self.generators)
        for a in gens:
            for b in gens:
                if a != b and contains(a, b):
                    raise ValueError(
                        f"generators are not an antichain: {format_partition(b)} is inside {format_partition(a)}"
                    )
        object.__setattr__(self, "generators", _minimal(gens))

    @classmethod
    def from_generators(cls, parts: Iterable) -> EquivariantIdeal:
        """Ideal generated by arbitrary partitions (redundant ones dropped)."""
        return cls(_minimal(parts))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == (StrictPartition(),)

    def has_constituent(self, nu) -> bool:
        return any(contains(nu, g) for g in self.generators)

    def constituents(self, max_size: int) -> set[StrictPartition]:
        return {
            nu for d in range(max_size + 1) for nu in enumerate_strict(d) if self.has_constituent(nu)
        }

    def __str__(self):
        if self.is_zero:
            return "0"
        return ";".join(format_partition(g) for g in self.generators)


def zero_ideal() -> EquivariantIdeal:
    return EquivariantIdeal(())


def principal(lam) -> EquivariantIdeal:
    return EquivariantIdeal((StrictPartition(lam),))


def I_r(r: int | None) -> EquivariantIdeal:
    """Isomeric determinantal ideal; ``None`` stands for r = infinity (zero ideal)."""
    if r is None:
        return zero_ideal()
    if r < 0:
        raise ValueError("r must be nonnegative")
    return principal(staircase(r + 1))


def leq(I: EquivariantIdeal, J: EquivariantIdeal) -> bool:
    """Inclusion I <= J."""
    return all(any(contains(lam, mu) for mu in J.generators) for lam in I.generators)


def sum_ideals(I: EquivariantIdeal, J: EquivariantIdeal) -> EquivariantIdeal:
    return EquivariantIdeal.from_generators(I.generators + J.generators)


def intersect(I: EquivariantIdeal, J: EquivariantIdeal) -> EquivariantIdeal:
    return EquivariantIdeal.from_generators(join(a, b) for a in I.generators for b in J.generators)


def g_radical(I: EquivariantIdeal) -> EquivariantIdeal:
    """Smallest staircase ideal containing I (a partition with k rows contains
    the k-row staircase); the zero ideal is its own radical."""
    if I.is_zero:
        return I
    r = min(len(g) for g in I.generators) - 1
    return principal(staircase(r + 1))


def radical_of_product(I: EquivariantIdeal, J: EquivariantIdeal) -> EquivariantIdeal:
    """Radical of I*J, which equals the radical of the intersection."""
    return g_radical(intersect(I, J))


def is_g_prime(I: EquivariantIdeal) -> bool:
    if I.is_zero:
        return True
    if len(I.generators) != 1:
        return False
    (g,) = I.generators
    return len(g) >= 1 and g == staircase(len(g))


def rank_of_prime(I: EquivariantIdeal) -> int | None:
    """r with I = I_r (None for the zero ideal, r = infinity)."""
    if not is_g_prime(I):
        raise ValueError(f"{I} is not g-prime")
    if I.is_zero:
        return None
    return len(I.generators[0]) - 1


def g_spectrum(rmax: int) -> list[tuple[int | None, EquivariantIdeal]]:
    """The chain I_0 > I_1 > ... > I_rmax > 0 with rank labels."""
    if rmax < 0:
        raise ValueError("rmax must be nonnegative")
    return [(r, I_r(r)) for r in range(rmax + 1)] + [(None, zero_ideal())]


def parse_antichain(text: str) -> EquivariantIdeal:
    """``"3,1;4,2"`` -> ideal generated by those partitions; ``"0"`` or empty -> zero ideal."""
    text = text.strip()
    if text in ("", "0"):
        return zero_ideal()
    return EquivariantIdeal.from_generators(parse_partition(t) for t in text.split(";"))
