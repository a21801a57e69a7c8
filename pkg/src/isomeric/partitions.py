"""Strict partitions: enumeration, diagram containment, staircases."""

from __future__ import annotations

from typing import Iterable, Iterator

__all__ = [
    "StrictPartition",
    "contains",
    "enumerate_strict",
    "format_partition",
    "join",
    "length_delta",
    "parse_partition",
    "staircase",
    "strict_count",
]


class StrictPartition(tuple):
    """Immutable strictly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"parts must be positive, got {parts}")
            if i and parts[i - 1] <= p:
                raise ValueError(f"parts must be strictly decreasing, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self):
        return f"StrictPartition({tuple(self)})"

    def __str__(self):
        return format_partition(self)


def contains(lam, mu) -> bool:
    """True iff the diagram of ``mu`` sits inside the diagram of ``lam``."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def join(lam, mu) -> StrictPartition:
    """Componentwise maximum; the least common upper bound under ``contains``."""
    n = max(len(lam), len(mu))
    a = tuple(lam) + (0,) * (n - len(lam))
    b = tuple(mu) + (0,) * (n - len(mu))
    return StrictPartition(max(x, y) for x, y in zip(a, b))


def staircase(r: int) -> StrictPartition:
    if r < 0:
        raise ValueError("staircase needs r >= 0")
    return StrictPartition(range(r, 0, -1))


def _strict(d: int, largest: int) -> Iterator[tuple]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _strict(d - first, first - 1):
            yield (first,) + rest


def enumerate_strict(d: int, max_length: int | None = None) -> list[StrictPartition]:
    """All strict partitions of ``d`` in decreasing lexicographic order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out = [StrictPartition(p) for p in _strict(d, d)]
    if max_length is not None:
        out = [p for p in out if len(p) <= max_length]
    return out


def strict_count(d: int) -> int:
    """Coefficient of t^d in prod_k (1 + t^k), by polynomial multiplication."""
    coeffs = [1] + [0] * d
    for k in range(1, d + 1):
        for j in range(d, k - 1, -1):
            coeffs[j] += coeffs[j - k]
    return coeffs[d]


def length_delta(lam) -> tuple[int, int]:
    """(number of parts, parity marker); the marker is 1 for odd length."""
    ell = len(lam)
    return ell, ell % 2


def format_partition(lam) -> str:
    return ",".join(str(p) for p in lam) if len(lam) else "-"


def parse_partition(text: str) -> StrictPartition:
    text = text.strip()
    if text in ("-", "", "()"):
        return StrictPartition()
    try:
        parts = [int(t) for t in text.strip("()").split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"invalid partition syntax: {text!r}") from None
    return StrictPartition(parts)
