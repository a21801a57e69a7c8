"""Sparse exact row reduction over Q(i).

Vectors are plain ``dict`` objects mapping a hashable, totally ordered column
key to a nonzero coefficient.  :class:`RowSpace` keeps its rows in reduced
row-echelon form, which makes reduction a single pass over the incoming
vector's pivot columns.

Pivoting is deterministic: the pivot of a new row is its smallest column key,
and rows are consumed in the order they are given.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .field import coerce

__all__ = [
    "RowSpace",
    "axpy",
    "scale",
    "left_kernel",
    "nullspace",
    "rank",
]

Vector = dict


def scale(vec: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * v for k, v in vec.items()}


def axpy(y: Vector, a, x: Vector) -> None:
    """In place ``y += a * x``; drops cancelled entries."""
    for k, v in x.items():
        t = y.get(k)
        if t is None:
            y[k] = a * v
        else:
            t = t + a * v
            if t:
                y[k] = t
            else:
                del y[k]


class RowSpace:
    """Incrementally built row space in reduced row-echelon form.

    With ``track=True`` every stored row also carries the combination of input
    vectors (by insertion index) that produced it, so dependencies among the
    inputs can be read off: see :meth:`add` and :func:`left_kernel`.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, Vector] = {}
        self.combos: dict[Hashable, Vector] = {}
        self.track = track
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector, combo: Vector | None = None) -> Vector:
        v = dict(vec)
        rows = self.rows
        hits = [k for k in v if k in rows]
        for p in hits:
            c = v.get(p)
            if c is None:
                continue
            axpy(v, -c, rows[p])
            if combo is not None:
                axpy(combo, -c, self.combos[p])
        return v

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vector):
        """Insert ``vec``.

        Returns ``True`` when the rank grew.  In tracking mode a dependent
        vector instead returns the (nonzero) dependency among all inputs so
        far, as a dict from insertion index to coefficient.
        """
        idx = self._count
        self._count += 1
        combo = {idx: coerce(1)} if self.track else None
        v = self.reduce(vec, combo)
        if not v:
            return combo if self.track else False
        p = min(v)
        inv = 1 / coerce(v[p])
        v = scale(v, inv)
        if combo is not None:
            combo = scale(combo, inv)
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None:
                axpy(row, -c, v)
                if combo is not None:
                    axpy(self.combos[q], -c, combo)
        self.rows[p] = v
        if combo is not None:
            self.combos[p] = combo
        return True

    def extend(self, vecs: Iterable[Vector]) -> None:
        for v in vecs:
            self.add(v)

    def basis(self) -> list[Vector]:
        """Rows sorted by pivot."""
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list:
        return sorted(self.rows)


def rank(vecs: Iterable[Vector]) -> int:
    rs = RowSpace()
    rs.extend(vecs)
    return rs.rank


def left_kernel(vecs: Sequence[Vector]) -> list[Vector]:
    """Basis of ``{c : sum_i c[i] * vecs[i] == 0}``, one dict per relation."""
    rs = RowSpace(track=True)
    out = []
    for v in vecs:
        r = rs.add(v)
        if r is not True:
            out.append(r)
    return out


def nullspace(equations: Iterable[Vector], unknowns: Sequence) -> list[Vector]:
    """Basis of solutions ``x`` of the homogeneous system ``E x = 0``.

    ``equations`` are rows keyed by unknown; ``unknowns`` fixes the set of
    variables (and, through their order, the RREF pivots).  Each basis vector
    sets exactly one free unknown to 1.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    rs = RowSpace()
    for eq in equations:
        if eq:
            rs.add({order[k]: c for k, c in eq.items()})
    free = [i for i in range(len(unknowns)) if i not in rs.rows]
    sols = []
    for f in free:
        x = {unknowns[f]: 1}
        for p, row in rs.rows.items():
            c = row.get(f)
            if c is not None:
                x[unknowns[p]] = -c
        sols.append(x)
    return sols
