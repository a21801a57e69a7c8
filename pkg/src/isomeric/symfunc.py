"""Schur Q-functions in finitely many variables and the dimension count of A.

Everything here is exact: coefficients are ``mpq`` and no floating point is
used.  ``t_dim`` and ``cauchy_check`` only ever need the principal
specialization x_i = 1, which is computed directly from the one-row values
(:func:`schur_q_at_ones`); the full polynomials from :func:`schur_q` are kept
for symmetry/vanishing checks and the ``symfunc q`` CLI command.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb

from gmpy2 import mpq

from .partitions import StrictPartition, enumerate_strict, format_partition, length_delta

__all__ = [
    "CauchyReport",
    "SymPolynomial",
    "cauchy_check",
    "component_dim",
    "graded_dim_A",
    "q_row",
    "q_row_at_ones",
    "schur_q",
    "schur_q_at_ones",
    "t_dim",
]


class SymPolynomial:
    """Polynomial in x_1..x_n with exact rational coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = {k: mpq(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def constant(cls, n: int, c=1) -> SymPolynomial:
        return cls(n, {(0,) * n: c})

    def __add__(self, other: SymPolynomial) -> SymPolynomial:
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymPolynomial(self.n, out)

    def __neg__(self) -> SymPolynomial:
        return SymPolynomial(self.n, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: SymPolynomial) -> SymPolynomial:
        return self + (-other)

    def __mul__(self, other) -> SymPolynomial:
        if not isinstance(other, SymPolynomial):
            return SymPolynomial(self.n, {k: v * other for k, v in self.coeffs.items()})
        out: dict = {}
        for a, u in self.coeffs.items():
            for b, v in other.coeffs.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + u * v
        return SymPolynomial(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymPolynomial) and self.n == other.n and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def evaluate(self, point) -> mpq:
        total = mpq(0)
        for k, c in self.coeffs.items():
            term = c
            for x, e in zip(point, k):
                term *= mpq(x) ** e
            total += term
        return total

    def is_symmetric(self) -> bool:
        for k, c in self.coeffs.items():
            for p in set(permutations(k)):
                if self.coeffs.get(p) != c:
                    return False
        return True

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for k in sorted(self.coeffs, key=lambda k: (-sum(k), [-e for e in k])):
            c = self.coeffs[k]
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(k) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    __repr__ = __str__


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def q_row(r: int, n: int) -> SymPolynomial:
    """Coefficient of t^r in prod_i (1 + x_i t)/(1 - x_i t)."""
    if r < 0:
        return SymPolynomial(n)
    # each factor expands as 1 + 2*sum_{k>=1} x^k t^k
    return SymPolynomial(
        n, {k: 2 ** sum(1 for e in k if e) for k in _compositions(r, n)}
    )


@lru_cache(maxsize=None)
def q_row_at_ones(r: int, n: int) -> int:
    if r < 0:
        return 0
    if r == 0:
        return 1
    return sum(comb(n, k) * comb(r - 1, k - 1) * 2**k for k in range(1, min(n, r) + 1))


def _two_row(a: int, b: int, q) -> object:
    """Q_(a,b) = q_a q_b + 2 sum_{i>=1} (-1)^i q_{a+i} q_{b-i}; Q_(a,0) = q_a."""
    total = q(a) * q(b)
    for i in range(1, b + 1):
        total = total + q(a + i) * q(b - i) * (2 * (-1) ** i)
    return total


def _pfaffian(idx: tuple, entry, zero):
    if not idx:
        return None  # caller substitutes the unit
    first, rest = idx[0], idx[1:]
    total = zero
    for pos, j in enumerate(rest):
        minor = rest[:pos] + rest[pos + 1 :]
        sub = _pfaffian(minor, entry, zero)
        term = entry(first, j) if sub is None else entry(first, j) * sub
        total = total + term if pos % 2 == 0 else total - term
    return total


def _schur_q_generic(lam, q, unit, zero):
    parts = list(lam)
    if not parts:
        return unit
    if len(parts) == 1:
        return q(parts[0])
    if len(parts) % 2:
        parts.append(0)
    cache: dict = {}

    def entry(i, j):
        key = (i, j)
        if key not in cache:
            cache[key] = _two_row(parts[i], parts[j], q)
        return cache[key]

    return _pfaffian(tuple(range(len(parts))), entry, zero)


def schur_q(lam, n: int) -> SymPolynomial:
    """Q_lam in n variables, via the two-row rule and a Pfaffian."""
    lam = StrictPartition(lam)
    rows: dict = {}

    def q(r):
        if r not in rows:
            rows[r] = q_row(r, n)
        return rows[r]

    return _schur_q_generic(lam, q, SymPolynomial.constant(n), SymPolynomial(n))


@lru_cache(maxsize=None)
def schur_q_at_ones(lam: tuple, n: int) -> int:
    """Q_lam(1,...,1) with n ones, computed on scalars."""
    lam = StrictPartition(lam)
    val = _schur_q_generic(lam, lambda r: q_row_at_ones(r, n), 1, 0)
    return int(val)


def t_dim(lam, n: int) -> int:
    """Dimension of the simple polynomial q(n)-module labelled by lam."""
    ell = len(lam)
    if ell > n:
        return 0
    val = mpq(schur_q_at_ones(tuple(lam), n), 2 ** (ell // 2))
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"t_dim({format_partition(lam)}, {n}) = {val} is not a nonnegative integer")
    return int(val)


def component_dim(lam, n: int) -> int:
    """Dimension of the lam-summand of A at rank n: 2^-delta * t_dim^2."""
    _, delta = length_delta(lam)
    val = mpq(t_dim(lam, n) ** 2, 2**delta)
    if val.denominator != 1:
        raise ArithmeticError(f"component dimension for {format_partition(lam)} is {val}")
    return int(val)


def graded_dim_A(n: int, d: int) -> int:
    """Number of degree-d monomials in n^2 even and n^2 odd variables."""
    m = n * n
    total = 0
    for k in range(min(d, m) + 1):
        e = d - k
        total += comb(m, k) * (comb(m + e - 1, e) if m else int(e == 0))
    return total


@dataclass
class CauchyReport:
    n: int
    degree: int
    lhs: int
    rhs: int
    per_lambda: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "per_lambda": [
                {"lambda": format_partition(lam), "term": str(term)} for lam, term in self.per_lambda
            ],
        }


def cauchy_check(n: int, d: int) -> CauchyReport:
    """Compare dim A^(d) with sum over strict lam |- d of 2^-l(lam) Q_lam(1^n)^2."""
    rows = []
    rhs = mpq(0)
    for lam in enumerate_strict(d):
        term = mpq(schur_q_at_ones(tuple(lam), n) ** 2, 2 ** len(lam))
        if term != component_dim(lam, n):
            raise ArithmeticError(f"inconsistent normalization at {format_partition(lam)}")
        rows.append((lam, int(term)))
        rhs += term
    if rhs.denominator != 1:
        raise ArithmeticError(f"non-integral Cauchy sum {rhs}")
    return CauchyReport(n=n, degree=d, lhs=graded_dim_A(n, d), rhs=int(rhs), per_lambda=rows)
