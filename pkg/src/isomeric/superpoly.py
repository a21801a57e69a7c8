"""Supercommutative polynomial rings over Q(i) and degreewise ideal algebra.

A monomial is a pair ``(even_exponents, odd_mask)``: a tuple of exponents for
the even variables and a bitmask of the odd variables present.  Odd variables
are stored in increasing index order; the Koszul sign needed to reach that
order is folded into the coefficient, and a repeated odd variable kills the
term.

Rings may carry a multigrading (one integer weight vector per variable).  All
ideals handled in this package are homogeneous for it, which lets the ideal
machinery row-reduce one weight space at a time instead of a whole degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .field import GaussRational, coerce, fmt_coeff
from .linalg import RowSpace

__all__ = [
    "GradedBasis",
    "HomogeneousIdeal",
    "RingHom",
    "RingMismatch",
    "SuperPolynomial",
    "SuperRing",
    "apply_hom",
    "ideal_degree_basis",
    "membership",
    "monomial_basis",
    "multiply",
]


class RingMismatch(ValueError):
    pass


def _sign_merge(left: int, right: int) -> int:
    """Sign of moving the odd variables of ``right`` past those of ``left``."""
    inv = 0
    m = right
    while m:
        low = m & -m
        inv += (left >> low.bit_length()).bit_count()
        m ^= low
    return -1 if inv & 1 else 1


def mono_mul(a, b):
    """Product of two monomials: ``(monomial, sign)``, sign 0 when it vanishes."""
    ea, ma = a
    eb, mb = b
    if ma & mb:
        return None, 0
    return (tuple(x + y for x, y in zip(ea, eb)), ma | mb), _sign_merge(ma, mb)


class SuperRing:
    """Polynomial superalgebra on ordered even and odd variables."""

    def __init__(
        self,
        even_vars: Sequence[str],
        odd_vars: Sequence[str],
        weights: Sequence[Sequence[int]] | None = None,
        name: str = "",
    ):
        self.even_vars = tuple(even_vars)
        self.odd_vars = tuple(odd_vars)
        labels = self.even_vars + self.odd_vars
        if len(set(labels)) != len(labels):
            raise ValueError("variable labels must be distinct")
        self.name = name
        self.n_even = len(self.even_vars)
        self.n_odd = len(self.odd_vars)
        self._index = {lab: i for i, lab in enumerate(labels)}
        if weights is not None:
            weights = [tuple(w) for w in weights]
            if len(weights) != len(labels) or len({len(w) for w in weights}) > 1:
                raise ValueError("need one weight vector of common length per variable")
        self.weights = weights
        self._mono_cache: dict = {}

    def __repr__(self):
        return f"SuperRing({self.name or ''} even={self.n_even}, odd={self.n_odd})"

    @property
    def labels(self) -> tuple:
        return self.even_vars + self.odd_vars

    @property
    def ngens(self) -> int:
        return self.n_even + self.n_odd

    def index(self, label: str) -> int:
        return self._index[label]

    def is_odd_index(self, k: int) -> bool:
        return k >= self.n_even

    def var_monomial(self, k: int):
        if k < self.n_even:
            e = [0] * self.n_even
            e[k] = 1
            return (tuple(e), 0)
        return ((0,) * self.n_even, 1 << (k - self.n_even))

    def var(self, label: str | int) -> SuperPolynomial:
        k = label if isinstance(label, int) else self._index[label]
        return SuperPolynomial(self, {self.var_monomial(k): 1})

    def gens(self) -> list[SuperPolynomial]:
        return [self.var(k) for k in range(self.ngens)]

    def one(self) -> SuperPolynomial:
        return SuperPolynomial(self, {((0,) * self.n_even, 0): 1})

    def zero(self) -> SuperPolynomial:
        return SuperPolynomial(self, {})

    def const(self, c) -> SuperPolynomial:
        return SuperPolynomial(self, {((0,) * self.n_even, 0): c})

    def monomials(self, d: int) -> list:
        """Normal-form monomials of total degree d, in canonical order."""
        out = []
        for k in range(min(d, self.n_odd) + 1):
            evens = _exponent_vectors(d - k, self.n_even)
            for odd in combinations(range(self.n_odd), k):
                mask = 0
                for j in odd:
                    mask |= 1 << j
                out.extend((e, mask) for e in evens)
        out.sort(key=self.mono_key)
        return out

    def mono_key(self, m):
        e, mask = m
        odd = tuple((mask >> j) & 1 for j in range(self.n_odd))
        return (-(sum(e) + mask.bit_count()), tuple(-x for x in e + odd))

    def mono_weight(self, m):
        if self.weights is None:
            return None
        e, mask = m
        w = [0] * len(self.weights[0])
        for k, x in enumerate(e):
            if x:
                for i, wi in enumerate(self.weights[k]):
                    w[i] += x * wi
        j = 0
        while mask:
            if mask & 1:
                for i, wi in enumerate(self.weights[self.n_even + j]):
                    w[i] += wi
            mask >>= 1
            j += 1
        return tuple(w)

    def mono_str(self, m) -> str:
        e, mask = m
        parts = []
        for k, x in enumerate(e):
            if x == 1:
                parts.append(self.even_vars[k])
            elif x:
                parts.append(f"{self.even_vars[k]}^{x}")
        for j in range(self.n_odd):
            if (mask >> j) & 1:
                parts.append(self.odd_vars[j])
        return "*".join(parts)


def _exponent_vectors(total: int, n: int) -> list[tuple]:
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in _exponent_vectors(total - first, n - 1):
            out.append((first,) + rest)
    return out


def mono_degree(m) -> int:
    return sum(m[0]) + m[1].bit_count()


def mono_parity(m) -> int:
    return m[1].bit_count() & 1


class SuperPolynomial:
    """Element of a :class:`SuperRing` in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SuperRing, terms: dict | None = None):
        self.ring = ring
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = coerce(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    def _check(self, other):
        if other.ring is not self.ring:
            raise RingMismatch("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, SuperPolynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            t = out.get(m)
            if t is None:
                out[m] = c
            else:
                t = t + c
                if t:
                    out[m] = t
                else:
                    del out[m]
        return SuperPolynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            c = coerce(other)
            if not c:
                return self.ring.zero()
            return SuperPolynomial._raw(self.ring, {m: c * v for m, v in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.ring is other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == self.ring.const(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    def degree(self) -> int:
        """Total degree; raises for the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees())

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def parity(self) -> int | None:
        """0 or 1 when all terms share a parity, None if mixed (0 for zero)."""
        ps = {mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def weight(self):
        """Multigrading weight when weight-homogeneous, else None."""
        ws = {self.ring.mono_weight(m) for m in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def support(self) -> set[str]:
        labs = set()
        r = self.ring
        for e, mask in self.terms:
            labs.update(r.even_vars[k] for k, x in enumerate(e) if x)
            labs.update(r.odd_vars[j] for j in range(r.n_odd) if (mask >> j) & 1)
        return labs

    def coefficient(self, m):
        return self.terms.get(m, 0)

    def __str__(self):
        if not self.terms:
            return "0"
        r = self.ring
        out = []
        for m in sorted(self.terms, key=r.mono_key):
            c = self.terms[m]
            mono = r.mono_str(m)
            neg = False
            if isinstance(c, GaussRational):
                if c.re == 0:
                    neg = c.im < 0
                    mag = -c if neg else c
                    cs = fmt_coeff(mag)
                else:
                    cs = f"({fmt_coeff(c)})"
            else:
                neg = c < 0
                mag = -c if neg else c
                cs = fmt_coeff(mag)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"SuperPolynomial({self})"


def multiply(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Product in normal form with Koszul signs."""
    f._check(g)
    out: dict = {}
    cache = f.ring._mono_cache
    for a, u in f.terms.items():
        for b, v in g.terms.items():
            key = (a, b)
            hit = cache.get(key)
            if hit is None:
                hit = mono_mul(a, b)
                if len(cache) < 2_000_000:
                    cache[key] = hit
            m, s = hit
            if not s:
                continue
            c = u * v if s > 0 else -(u * v)
            t = out.get(m)
            if t is None:
                out[m] = c
            else:
                t = t + c
                if t:
                    out[m] = t
                else:
                    del out[m]
    return SuperPolynomial._raw(f.ring, out)


@dataclass
class GradedBasis:
    """Linearly independent homogeneous elements of one degree."""

    degree: int
    elements: list = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_text(self) -> str:
        return "".join(f"{p}\n" for p in self.elements)


def monomial_basis(ring: SuperRing, d: int) -> GradedBasis:
    return GradedBasis(d, [SuperPolynomial._raw(ring, {m: coerce(1)}) for m in ring.monomials(d)])


def _homogeneous_degree(g: SuperPolynomial) -> int | None:
    ds = g.degrees()
    if len(ds) > 1:
        raise ValueError(f"inhomogeneous generator: {g}")
    return ds.pop() if ds else None


class HomogeneousIdeal:
    """Two-sided ideal generated by homogeneous elements, computed degreewise.

    The degree-d piece is the row space of all products ``m*g`` (and ``g*m``
    for generators of mixed parity) with ``m`` a monomial of the complementary
    degree.  When the ring has a multigrading and every generator is
    weight-homogeneous, each weight space is reduced separately.
    """

    def __init__(self, ring: SuperRing, gens: Iterable[SuperPolynomial]):
        self.ring = ring
        self.gens = []
        for g in gens:
            if g.ring is not ring:
                raise RingMismatch("generator from a different ring")
            if g:
                _homogeneous_degree(g)
                self.gens.append(g)
        self.graded = ring.weights is not None and all(g.weight() is not None for g in self.gens)
        self._pieces: dict[int, dict] = {}

    def piece(self, d: int) -> dict:
        """Map weight (or None) -> RowSpace of the degree-d component."""
        if d in self._pieces:
            return self._pieces[d]
        spaces: dict = {}
        ring = self.ring
        for g in self.gens:
            e = d - g.degree()
            if e < 0:
                continue
            both_sides = g.parity() is None
            gw = g.weight() if self.graded else None
            for m in ring.monomials(e):
                mp = SuperPolynomial._raw(ring, {m: coerce(1)})
                prods = [multiply(mp, g)]
                if both_sides:
                    prods.append(multiply(g, mp))
                for p in prods:
                    if not p:
                        continue
                    key = None
                    if self.graded:
                        mw = ring.mono_weight(m)
                        key = tuple(a + b for a, b in zip(mw, gw))
                    rs = spaces.get(key)
                    if rs is None:
                        rs = spaces[key] = RowSpace()
                    rs.add(p.terms)
        self._pieces[d] = spaces
        return spaces

    def dim(self, d: int) -> int:
        return sum(rs.rank for rs in self.piece(d).values())

    def basis(self, d: int) -> GradedBasis:
        spaces = self.piece(d)
        keys = sorted(spaces, key=lambda k: (k is not None, k or ()))
        elems = []
        for k in keys:
            elems.extend(SuperPolynomial._raw(self.ring, dict(v)) for v in spaces[k].basis())
        return GradedBasis(d, elems)

    def contains(self, f: SuperPolynomial) -> bool:
        if f.ring is not self.ring:
            raise RingMismatch("element from a different ring")
        if not f:
            return True
        d = _homogeneous_degree(f)
        if d is None:
            return True
        spaces = self.piece(d)
        if not self.graded:
            rs = spaces.get(None)
            return rs is not None and rs.contains(f.terms)
        # split f into weight components; each must lie in its weight space
        split: dict = {}
        for m, c in f.terms.items():
            split.setdefault(self.ring.mono_weight(m), {})[m] = c
        for w, part in split.items():
            rs = spaces.get(w)
            if rs is None or not rs.contains(part):
                return False
        return True


def ideal_degree_basis(gens: Sequence[SuperPolynomial], d: int, ring: SuperRing | None = None) -> GradedBasis:
    """Basis of the degree-d component of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise ValueError("need a ring when there are no generators")
        ring = gens[0].ring
    return HomogeneousIdeal(ring, gens).basis(d)


def membership(f: SuperPolynomial, gens: Sequence[SuperPolynomial]) -> bool:
    """Whether homogeneous ``f`` lies in the ideal generated by ``gens``."""
    if not f.is_homogeneous():
        raise ValueError(f"inhomogeneous input: {f}")
    return HomogeneousIdeal(f.ring, gens).contains(f)


class RingHom:
    """Even ring homomorphism given by the images of the source variables."""

    def __init__(self, source: SuperRing, target: SuperRing, images: Sequence[SuperPolynomial]):
        if len(images) != source.ngens:
            raise ValueError("need one image per source variable")
        for im in images:
            if im.ring is not target:
                raise RingMismatch("image outside the target ring")
            if im and im.parity() is None:
                raise ValueError("images must be parity-homogeneous")
        for k, im in enumerate(images):
            if im and im.parity() != int(source.is_odd_index(k)):
                raise ValueError(f"image of {source.labels[k]} has the wrong parity")
        self.source = source
        self.target = target
        self.images = list(images)
        self._mono: dict = {}
        self._pow: dict = {}

    def _power(self, k: int, e: int) -> SuperPolynomial:
        key = (k, e)
        hit = self._pow.get(key)
        if hit is None:
            hit = self._pow[key] = self.images[k] ** e
        return hit

    def image_of_monomial(self, m) -> SuperPolynomial:
        hit = self._mono.get(m)
        if hit is not None:
            return hit
        e, mask = m
        src = self.source
        out = self.target.one()
        for k, x in enumerate(e):
            if x:
                out = out * self._power(k, x)
        j = 0
        while mask:
            if mask & 1:
                out = out * self.images[src.n_even + j]
            mask >>= 1
            j += 1
        self._mono[m] = out
        return out

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        return apply_hom(self, f)


def apply_hom(h: RingHom, f: SuperPolynomial) -> SuperPolynomial:
    if f.ring is not h.source:
        raise RingMismatch("polynomial is not in the homomorphism's source ring")
    out = h.target.zero()
    terms: dict = {}
    for m, c in f.terms.items():
        img = h.image_of_monomial(m)
        for mm, v in img.terms.items():
            t = terms.get(mm)
            t = c * v if t is None else t + c * v
            if t:
                terms[mm] = t
            else:
                terms.pop(mm, None)
    out.terms = terms
    return out
