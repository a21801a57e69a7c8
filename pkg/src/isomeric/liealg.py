"""The q(n) x q(n) action on A and its isotypic decomposition.

The action is not hard-coded.  :class:`HalfTensor` builds the zeta_4
eigenspace of ``alpha (x) beta`` inside ``V (x) W`` (Koszul signs included),
picks the eigenbasis normalised at the ``e_i (x) e'_j`` / ``e_i (x) f'_j``
coordinates, and transports each standard matrix generator of q(V) and q(W)
through that basis.  The resulting linear maps on the variables extend to
superderivations of A.

Isotypic components of a graded piece are eigenspaces of a generic element of
the commutant of the action; labels come from dimension matching against
:func:`isomeric.symfunc.component_dim`, with the highest weight used to
resolve dimension collisions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import sympy

from .field import GaussRational, I, coerce, mpq
from .linalg import RowSpace, axpy, left_kernel, nullspace
from .partitions import StrictPartition, enumerate_strict, format_partition
from .superpoly import (
    GradedBasis,
    HomogeneousIdeal,
    SuperPolynomial,
    SuperRing,
    mono_parity,
)
from .symfunc import component_dim

__all__ = [
    "ConventionError",
    "HalfTensor",
    "IsomericSpace",
    "IsotypicComponent",
    "LabelAmbiguity",
    "SuperDerivation",
    "a_ring",
    "commutant_basis",
    "ideal_from_component",
    "isotypic_decomposition",
    "q_generators",
    "q_matrices",
]


class ConventionError(RuntimeError):
    """A sign-convention self-check failed."""


class LabelAmbiguity(RuntimeError):
    pass


@dataclass(frozen=True)
class IsomericSpace:
    """C^{n|n} with basis e_1..e_n (even), f_1..f_n (odd) and alpha swapping them.

    Vectors are dicts from basis index (0..n-1 even, n..2n-1 odd) to coefficients.
    """

    n: int
    name: str = "V"

    @property
    def dim(self) -> int:
        return 2 * self.n

    def parity(self, k: int) -> int:
        return int(k >= self.n)

    def alpha(self, k: int) -> int:
        return k + self.n if k < self.n else k - self.n

    def alpha_matrix(self) -> dict:
        return {(self.alpha(k), k): 1 for k in range(self.dim)}


def _matmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, k), u in a.items():
        for (k2, j), v in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + u * v
    return {k: v for k, v in out.items() if v}


def q_matrices(n: int) -> list[tuple[str, int, dict]]:
    """Standard basis of q(n): ``(name, parity, matrix)``.

    Even: E_ab on both halves; odd: [[0, E_ab], [-E_ab, 0]].  Each element is
    checked against the compatibility rule X alpha = (-1)^|X| alpha X.
    """
    space = IsomericSpace(n)
    alpha = space.alpha_matrix()
    out = []
    for a in range(n):
        for b in range(n):
            even = {(a, b): 1, (a + n, b + n): 1}
            odd = {(a, b + n): 1, (a + n, b): -1}
            out.append((f"E{a + 1}{b + 1}", 0, even))
            out.append((f"Ebar{a + 1}{b + 1}", 1, odd))
    for name, par, x in out:
        lhs = _matmul(x, alpha)
        rhs = {k: (-1) ** par * v for k, v in _matmul(alpha, x).items()}
        if lhs != rhs:
            raise ConventionError(f"{name} is not compatible with alpha")
    return out


def _apply(mat: dict, vec: dict) -> dict:
    out: dict = {}
    for (i, j), c in mat.items():
        v = vec.get(j)
        if v is not None:
            out[i] = out.get(i, 0) + c * v
    return {k: v for k, v in out.items() if v}


class HalfTensor:
    """The zeta_4 = i eigenspace of alpha (x) beta on V (x) W."""

    def __init__(self, left: IsomericSpace, right: IsomericSpace):
        self.left = left
        self.right = right
        pairs = [(a, b) for a in range(left.dim) for b in range(right.dim)]
        self.pairs = pairs
        # alpha (x) beta with the Koszul sign (-1)^{|beta||v|} = (-1)^{|v|}
        ab = {}
        for a, b in pairs:
            ab[((left.alpha(a), right.alpha(b)), (a, b))] = (-1) ** left.parity(a)
        self.alpha_beta = ab
        sq = self._compose(ab, ab)
        if sq != {(p, p): -1 for p in pairs}:
            raise ConventionError("(alpha (x) beta)^2 != -1")
        # unknowns ordered so that pivots fall on f_i (x) * coordinates and the
        # free coordinates (normalised to 1) are e_i (x) e'_j and e_i (x) f'_j
        order = sorted(pairs, key=lambda p: (left.parity(p[0]) == 0, p))
        eqs: dict = {}
        for (tgt, src), c in ab.items():
            eqs.setdefault(tgt, {})[src] = eqs.get(tgt, {}).get(src, 0) + c
        for p in pairs:
            row = eqs.setdefault(p, {})
            row[p] = row.get(p, 0) - I
        sols = nullspace(eqs.values(), order)
        n, m = left.n, right.n
        if len(sols) != 2 * n * m:
            raise ConventionError(f"eigenspace has dimension {len(sols)}, expected {2 * n * m}")
        by_free = {}
        for s in sols:
            (key,) = [p for p in s if left.parity(p[0]) == 0]
            by_free[key] = s
        even = [by_free[(i, j)] for i in range(n) for j in range(m)]
        odd = [by_free[(i, j + m)] for i in range(n) for j in range(m)]
        self.basis = even + odd
        self.keys = [(i, j) for i in range(n) for j in range(m)] + [(i, j + m) for i in range(n) for j in range(m)]
        for u in self.basis:
            if _apply(ab, u) != {k: I * v for k, v in u.items()}:
                raise ConventionError("eigenvector check failed")
        self.n_even = n * m

    @staticmethod
    def _compose(a: dict, b: dict) -> dict:
        return _matmul(a, b)

    def coordinates(self, vec: dict) -> list:
        """Coordinates of ``vec`` (known to lie in U) in the eigenbasis."""
        coords = [vec.get(k, 0) for k in self.keys]
        recon: dict = {}
        for c, u in zip(coords, self.basis):
            if c:
                axpy(recon, c, u)
        if recon != {k: v for k, v in vec.items() if v}:
            raise ConventionError("transported vector left the half tensor product")
        return coords

    def transport_left(self, x: dict, parity: int) -> list[list]:
        """Matrix (columns = images of basis vectors) of X (x) 1 on U."""
        cols = []
        for u in self.basis:
            img: dict = {}
            for (a, b), c in u.items():
                for (i, j), v in x.items():
                    if j == a:
                        key = (i, b)
                        img[key] = img.get(key, 0) + v * c
            cols.append(self.coordinates({k: v for k, v in img.items() if v}))
        return cols

    def transport_right(self, y: dict, parity: int) -> list[list]:
        """Matrix of 1 (x) Y on U, with sign (-1)^{|Y||v|}."""
        cols = []
        for u in self.basis:
            img: dict = {}
            for (a, b), c in u.items():
                sign = (-1) ** (parity * self.left.parity(a))
                for (i, j), v in y.items():
                    if j == b:
                        key = (a, i)
                        img[key] = img.get(key, 0) + sign * v * c
            cols.append(self.coordinates({k: v for k, v in img.items() if v}))
        return cols


class SuperDerivation:
    """Parity-homogeneous derivation, determined by its values on variables."""

    def __init__(self, ring: SuperRing, parity: int, images: Sequence[SuperPolynomial], name: str = ""):
        if len(images) != ring.ngens:
            raise ValueError("need one image per variable")
        self.ring = ring
        self.parity = parity
        self.images = list(images)
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"SuperDerivation({self.name or '?'}, parity={self.parity})"

    def on_monomial(self, m) -> SuperPolynomial:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        ring = self.ring
        e, mask = m
        out = ring.zero()
        odd_part = SuperPolynomial._raw(ring, {((0,) * ring.n_even, mask): coerce(1)})
        for k, x in enumerate(e):
            if x and self.images[k]:
                rest = list(e)
                rest[k] -= 1
                lead = SuperPolynomial._raw(ring, {(tuple(rest), 0): coerce(x)})
                out = out + lead * self.images[k] * odd_part
        even_part = SuperPolynomial._raw(ring, {(e, 0): coerce(1)})
        bits = [j for j in range(ring.n_odd) if (mask >> j) & 1]
        for t, j in enumerate(bits):
            img = self.images[ring.n_even + j]
            if not img:
                continue
            before = 0
            for b in bits[:t]:
                before |= 1 << b
            after = 0
            for b in bits[t + 1 :]:
                after |= 1 << b
            zero_e = (0,) * ring.n_even
            left = SuperPolynomial._raw(ring, {(e, before): coerce((-1) ** (self.parity * t))})
            right = SuperPolynomial._raw(ring, {(zero_e, after): coerce(1)})
            out = out + left * img * right
        self._cache[m] = out
        return out

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        if f.ring is not self.ring:
            raise ValueError("polynomial from a different ring")
        out: dict = {}
        for m, c in f.terms.items():
            axpy(out, c, self.on_monomial(m).terms)
        return SuperPolynomial._raw(self.ring, out)

    def bracket_on_vars(self, other: SuperDerivation) -> list[SuperPolynomial]:
        """Supercommutator [self, other] evaluated on each variable."""
        sign = (-1) ** (self.parity * other.parity)
        return [self(other.images[k]) - other(self.images[k]) * sign for k in range(self.ring.ngens)]

    def is_diagonal(self) -> bool:
        if self.parity:
            return False
        for k, img in enumerate(self.images):
            mono = self.ring.var_monomial(k)
            if any(m != mono for m in img.terms):
                return False
        return True


@lru_cache(maxsize=None)
def a_ring(n: int) -> SuperRing:
    """The rank-n ring A: even x_ij, odd y_ij; weights (row one-hot, column one-hot)."""
    sep = "" if n < 10 else "_"
    evens = [f"x{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    odds = [f"y{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    weights = []
    for _ in range(2):
        for i in range(n):
            for j in range(n):
                w = [0] * (2 * n)
                w[i] = 1
                w[n + j] = 1
                weights.append(w)
    return SuperRing(evens, odds, weights, name=f"A_{n}")


def derivations_from_half_tensor(
    ring: SuperRing, ht: HalfTensor, offset: int, side: str, tag: str
) -> list[SuperDerivation]:
    """Transport q(left) (side='left') or q(right) (side='right') onto the
    variables ``offset .. offset+|U|-1`` of ``ring`` (even block, then odd block
    laid out as in the ring)."""
    size = ht.left.n if side == "left" else ht.right.n
    half = ht.n_even
    out = []
    for name, par, mat in q_matrices(size):
        cols = ht.transport_left(mat, par) if side == "left" else ht.transport_right(mat, par)
        images = [ring.zero() for _ in range(ring.ngens)]
        for src, col in enumerate(cols):
            img = ring.zero()
            for tgt, c in enumerate(col):
                if c:
                    img = img + ring.var(_slot(ring, offset, half, tgt)) * c
            images[_slot(ring, offset, half, src)] = img
        out.append(SuperDerivation(ring, par, images, name=f"{name}|{tag}"))
    return out


def _slot(ring: SuperRing, offset: tuple, half: int, k: int) -> int:
    even_off, odd_off = offset
    return even_off + k if k < half else ring.n_even + odd_off + (k - half)


@lru_cache(maxsize=None)
def q_generators(n: int) -> tuple[SuperDerivation, ...]:
    """Basis of q(n) x q(n) acting on A_n by superderivations (4n^2 elements)."""
    ht = HalfTensor(IsomericSpace(n, "V"), IsomericSpace(n, "W"))
    ring = a_ring(n)
    gens = derivations_from_half_tensor(ring, ht, (0, 0), "left", "V")
    gens += derivations_from_half_tensor(ring, ht, (0, 0), "right", "W")
    _check_closure(gens)
    return tuple(gens)


def _check_closure(gens: Sequence[SuperDerivation], pairs: int = 12, seed: int = 0) -> None:
    """Spot-check that brackets of generators stay in their span."""
    ring = gens[0].ring

    def flat(images):
        v = {}
        for k, img in enumerate(images):
            for m, c in img.terms.items():
                v[(k, m)] = c
        return v

    span = RowSpace()
    for g in gens:
        span.add(flat(g.images))
    rng = random.Random(seed)
    for _ in range(pairs):
        a, b = rng.sample(list(gens), 2)
        if span.reduce(flat(a.bracket_on_vars(b))):
            raise ConventionError(f"[{a.name}, {b.name}] is outside the generator span")


def _signature(gens: Sequence[SuperDerivation], m) -> tuple:
    """Eigenvalues of the diagonal generators on monomial m, plus parity."""
    ring = gens[0].ring if gens else None
    sig = []
    e, mask = m
    for g in gens:
        s = 0
        for k, x in enumerate(e):
            if x:
                s += x * g.images[k].terms.get(ring.var_monomial(k), 0)
        bits, j = mask, 0
        while bits:
            if bits & 1:
                k = ring.n_even + j
                s += g.images[k].terms.get(ring.var_monomial(k), 0)
            bits >>= 1
            j += 1
        sig.append(s)
    sig.append(mono_parity(m))
    return tuple(sig)


class _Blocks:
    """Monomials of one degree grouped by joint eigenvalues of diagonal generators."""

    def __init__(self, ring: SuperRing, gens: Sequence[SuperDerivation], d: int):
        diag = [g for g in gens if g.is_diagonal()]
        self.monos = ring.monomials(d)
        self.of: dict = {}
        groups: dict = {}
        for m in self.monos:
            key = _signature(diag, m) if diag else (mono_parity(m),)
            groups.setdefault(key, []).append(m)
        self.keys = sorted(groups)
        self.groups = [groups[k] for k in self.keys]
        for b, ms in enumerate(self.groups):
            for m in ms:
                self.of[m] = b
        self.active = [g for g in gens if not g.is_diagonal()]


def commutant_basis(gens: Sequence[SuperDerivation], n: int, d: int) -> list[dict]:
    """Even operators on A^(d) commuting with every generator.

    Operators are returned as ``{source_monomial: {target_monomial: coeff}}``.
    Diagonal generators are imposed by restricting to their joint eigenspaces;
    the remaining generators contribute linear equations.
    """
    ring = gens[0].ring if gens else a_ring(n)
    blocks = _Blocks(ring, gens, d)
    of = blocks.of
    unknowns = []
    for ms in blocks.groups:
        unknowns.extend((a, b) for a in ms for b in ms)

    equations: list[dict] = []
    for g in blocks.active:
        eq: dict = {}
        for m in blocks.monos:
            img = g.on_monomial(m).terms
            # (T D)[m', m] = sum_{m''} T[m', m''] D[m'', m]
            for mid, c in img.items():
                for tgt in blocks.groups[of[mid]]:
                    row = eq.setdefault((tgt, m), {})
                    key = (tgt, mid)
                    row[key] = row.get(key, 0) + c
            # (D T)[m', m] = sum_{m''} D[m', m''] T[m'', m]
            for mid in blocks.groups[of[m]]:
                for tgt, c in g.on_monomial(mid).terms.items():
                    row = eq.setdefault((tgt, m), {})
                    key = (mid, m)
                    row[key] = row.get(key, 0) - c
        for row in eq.values():
            cleaned = {k: v for k, v in row.items() if v}
            if cleaned:
                equations.append(cleaned)
    sols = nullspace(equations, unknowns)
    out = []
    for s in sols:
        op: dict = {}
        for (tgt, src), c in s.items():
            op.setdefault(src, {})[tgt] = c
        out.append(op)
    return out


def apply_operator(op: dict, vec: dict) -> dict:
    out: dict = {}
    for m, c in vec.items():
        col = op.get(m)
        if col:
            axpy(out, c, col)
    return out


@dataclass
class IsotypicComponent:
    label: StrictPartition
    degree: int
    basis: GradedBasis
    eigenvalue: object = None
    highest_weight: tuple = ()
    label_method: str = "dimension"

    @property
    def dimension(self) -> int:
        return self.basis.dim

    def as_dict(self) -> dict:
        return {
            "lambda": format_partition(self.label),
            "dimension": self.dimension,
            "degree": self.degree,
            "label_method": self.label_method,
        }


@dataclass
class Decomposition:
    n: int
    degree: int
    seed: int
    attempts: int
    commutant_dim: int
    components: list = field(default_factory=list)


def _to_sympy(c):
    if isinstance(c, GaussRational):
        return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
            int(c.im.numerator), int(c.im.denominator)
        )
    c = mpq(c)
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _from_sympy(x):
    re, im = sympy.re(x), sympy.im(x)
    if not (re.is_Rational and im.is_Rational):
        raise ValueError(f"eigenvalue {x} is not in Q(i)")
    out = mpq(int(re.p), int(re.q))
    if im:
        out = out + I * mpq(int(im.p), int(im.q))
    return out


def _minimal_polynomial(op: dict, monos: list, rng: random.Random) -> list:
    """Monic minimal polynomial of op on a random cyclic vector (low degree first)."""
    v = {m: coerce(rng.randint(1, 97)) for m in monos}
    rs = RowSpace(track=True)
    powers = []
    while True:
        rel = rs.add(v)
        if rel is not True:
            k = len(powers)
            lead = coerce(rel[k])
            return [rel.get(i, 0) / lead for i in range(k)] + [coerce(1)]
        powers.append(v)
        v = apply_operator(op, v)


def _split_roots(coeffs: list) -> list | None:
    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(_to_sympy(c) * x**i for i, c in enumerate(coeffs)), x, domain=sympy.QQ_I)
    _, factors = sympy.factor_list(poly)
    roots = []
    for fac, mult in factors:
        if mult != 1 or fac.degree() != 1:
            return None
        a, b = fac.all_coeffs()
        roots.append(_from_sympy(-b / a))
    return roots


def _eigenspace(op: dict, group: list, value) -> list[dict]:
    """Kernel of (op - value) restricted to one invariant block."""
    idx = {m: i for i, m in enumerate(group)}
    cols = []
    for m in group:
        col = dict(op.get(m, {}))
        axpy(col, -value, {m: 1})
        cols.append(col)
    rels = left_kernel(cols)
    return [{group[i]: c for i, c in rel.items()} for rel in rels]


def _highest_weight(vectors: list[dict], ring: SuperRing, n: int) -> tuple:
    best = None
    for v in vectors:
        for m in v:
            w = ring.mono_weight(m)
            key = (tuple(sorted(w[:n], reverse=True)), tuple(sorted(w[n:], reverse=True)))
            if best is None or _dominates(key[0], best[0]):
                best = key
    return best[0] if best else ()


def _dominates(a: tuple, b: tuple) -> bool:
    sa = sb = 0
    greater = False
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
        if sa > sb:
            greater = True
    return greater


def isotypic_decomposition(n: int, d: int, seed: int = 0, max_attempts: int = 8) -> Decomposition:
    """Split A^(d) at rank n into its q(n) x q(n) isotypic components."""
    ring = a_ring(n)
    gens = q_generators(n)
    comm = commutant_basis(gens, n, d)
    blocks = _Blocks(ring, gens, d)
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        weights = [rng.randint(-9, 9) for _ in comm]
        op: dict = {}
        for w, t in zip(weights, comm):
            if not w:
                continue
            for src, col in t.items():
                tgt = op.setdefault(src, {})
                axpy(tgt, coerce(w), col)
        minpoly = _minimal_polynomial(op, blocks.monos, rng)
        if len(minpoly) - 1 != len(comm):
            continue
        roots = _split_roots(minpoly)
        if roots is None or len(set(map(_root_key, roots))) != len(comm):
            continue
        spaces = []
        for root in roots:
            vecs = []
            for group in blocks.groups:
                vecs.extend(_eigenspace(op, group, root))
            spaces.append((root, vecs))
        if sum(len(v) for _, v in spaces) != len(blocks.monos):
            continue
        comps = _label(spaces, ring, n, d)
        return Decomposition(n, d, seed, attempt, len(comm), comps)
    raise RuntimeError(f"no generic commutant element found after {max_attempts} attempts")


def _root_key(x):
    return (x.re, x.im) if isinstance(x, GaussRational) else (mpq(x), 0)


def _label(spaces, ring: SuperRing, n: int, d: int) -> list[IsotypicComponent]:
    candidates = enumerate_strict(d, max_length=n)
    dims: dict = {}
    for lam in candidates:
        dims.setdefault(component_dim(lam, n), []).append(lam)
    comps = []
    used = set()
    for root, vecs in spaces:
        hw = _highest_weight(vecs, ring, n)
        matches = dims.get(len(vecs), [])
        basis = GradedBasis(d, [SuperPolynomial._raw(ring, v) for v in vecs])
        if len(matches) == 1:
            lam, method = matches[0], "dimension"
            if tuple(x for x in hw if x) != tuple(lam):
                raise LabelAmbiguity(
                    f"dimension match {format_partition(lam)} disagrees with highest weight {hw}"
                )
        elif len(matches) > 1:
            lam = StrictPartition(x for x in hw if x)
            if lam not in matches:
                raise LabelAmbiguity(f"dimension {len(vecs)} matches {matches}; highest weight {hw} does not")
            method = "highest-weight fallback"
        else:
            raise LabelAmbiguity(f"no strict partition of {d} has component dimension {len(vecs)}")
        if lam in used:
            raise LabelAmbiguity(f"label {format_partition(lam)} assigned twice")
        used.add(lam)
        comps.append(IsotypicComponent(lam, d, basis, root, hw, method))
    comps.sort(key=lambda c: tuple(-x for x in c.label))
    return comps


def ideal_from_component(lam, n: int, max_degree: int, seed: int = 0) -> dict[int, GradedBasis]:
    """Degreewise bases (degrees 0..max_degree) of the ideal generated by A_lam.

    A partition longer than n labels a zero summand at rank n, so its ideal is
    zero in every degree.
    """
    lam = StrictPartition(lam)
    ring = a_ring(n)
    d0 = lam.size
    if len(lam) > n:
        return {d: GradedBasis(d, []) for d in range(max_degree + 1)}
    if d0 > max_degree:
        raise ValueError("max_degree is below the degree of the component")
    comps = isotypic_decomposition(n, d0, seed=seed).components
    (comp,) = [c for c in comps if c.label == lam]
    ideal = HomogeneousIdeal(ring, comp.basis.elements)
    return {d: ideal.basis(d) if d >= d0 else GradedBasis(d, []) for d in range(max_degree + 1)}
