"""Isomeric determinantal ideals at finite rank.

``I_r`` is realised as the kernel of the equivariant map

    phi_r : A_n -> B_{n,r},   B = Sym(half(V (x) E) + half(W (x) E*)),  dim E = r|r,

whose variable images are contractions over the E index.  The four constants
in those contractions are not assumed: they are the solution of the linear
system expressing equivariance under every generator of q(V) x q(W), which must
have a one-dimensional solution space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .field import coerce, mpq
from .linalg import RowSpace, left_kernel, nullspace
from .liealg import (
    HalfTensor,
    IsomericSpace,
    SuperDerivation,
    a_ring,
    derivations_from_half_tensor,
    q_generators,
)
from .partitions import enumerate_strict
from .superpoly import (
    GradedBasis,
    HomogeneousIdeal,
    RingHom,
    SuperPolynomial,
    SuperRing,
    mono_degree,
)
from .symfunc import component_dim, graded_dim_A

__all__ = [
    "EquivariantHom",
    "RankLocusReport",
    "b_ring",
    "build_phi",
    "equivariance_system",
    "ideal_Ir",
    "integrality_check",
    "kernel_prediction",
    "minors",
    "rad_Ir_generators",
    "verify_rank_locus",
]


class ConventionError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def b_ring(n: int, r: int) -> SuperRing:
    """Target ring: even u_ik, v_kj and odd ut_ik, vt_kj (i, j <= n, k <= r).

    Variable order follows the half tensor eigenbases: u in (i, k) order and v
    in (j, k) order, even block first.  Weights record the V index of u and the
    W index of v, matching :func:`a_ring`.
    """
    us = [(i, k) for i in range(n) for k in range(r)]
    vs = [(j, k) for j in range(n) for k in range(r)]
    evens = [f"u{i + 1}{k + 1}" for i, k in us] + [f"v{k + 1}{j + 1}" for j, k in vs]
    odds = [f"ut{i + 1}{k + 1}" for i, k in us] + [f"vt{k + 1}{j + 1}" for j, k in vs]
    weights = []
    for _ in range(2):
        for i, _k in us:
            w = [0] * (2 * n)
            w[i] = 1
            weights.append(w)
        for j, _k in vs:
            w = [0] * (2 * n)
            w[n + j] = 1
            weights.append(w)
    return SuperRing(evens, odds, weights, name=f"B_{n},{r}")


@lru_cache(maxsize=None)
def b_generators(n: int, r: int) -> tuple[SuperDerivation, ...]:
    """q(V) x q(W) acting on B, in the same order as :func:`q_generators`."""
    ring = b_ring(n, r)
    if r == 0:
        return tuple(
            SuperDerivation(ring, g.parity, [], name=g.name) for g in q_generators(n)
        )
    vh = HalfTensor(IsomericSpace(n, "V"), IsomericSpace(r, "E"))
    wh = HalfTensor(IsomericSpace(n, "W"), IsomericSpace(r, "E*"))
    nr = n * r
    gens = derivations_from_half_tensor(ring, vh, (0, 0), "left", "V")
    gens += derivations_from_half_tensor(ring, wh, (nr, nr), "left", "W")
    return tuple(gens)


def _ansatz(n: int, r: int) -> list[list[SuperPolynomial]]:
    """For each A variable, its image as four polynomials (one per constant)."""
    ring = b_ring(n, r)
    nr = n * r

    def u(i, k):
        return ring.var(i * r + k)

    def v(k, j):
        return ring.var(nr + j * r + k)

    def ut(i, k):
        return ring.var(ring.n_even + i * r + k)

    def vt(k, j):
        return ring.var(ring.n_even + nr + j * r + k)

    zero = ring.zero()
    out = []
    for i in range(n):
        for j in range(n):
            a = sum((u(i, k) * v(k, j) for k in range(r)), zero)
            b = sum((ut(i, k) * vt(k, j) for k in range(r)), zero)
            out.append([a, b, zero, zero])
    for i in range(n):
        for j in range(n):
            c = sum((u(i, k) * vt(k, j) for k in range(r)), zero)
            d = sum((ut(i, k) * v(k, j) for k in range(r)), zero)
            out.append([zero, zero, c, d])
    return out


def equivariance_system(n: int, r: int) -> tuple[list[dict], int]:
    """Equations on the constants (c0..c3) and the dimension of their solution space."""
    src = a_ring(n)
    pieces = _ansatz(n, r)
    eqs: list[dict] = []
    for ga, gb in zip(q_generators(n), b_generators(n, r)):
        for z in range(src.ngens):
            lhs_img = ga.images[z]
            acc: dict = {}
            for m, coef in lhs_img.terms.items():
                w = _var_index(src, m)
                for c in range(4):
                    for mm, val in pieces[w][c].terms.items():
                        row = acc.setdefault(mm, {})
                        row[c] = row.get(c, 0) + coef * val
            for c in range(4):
                for mm, val in gb(pieces[z][c]).terms.items():
                    row = acc.setdefault(mm, {})
                    row[c] = row.get(c, 0) - val
            for row in acc.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    eqs.append(row)
    sols = nullspace(eqs, [0, 1, 2, 3])
    return eqs, len(sols)


def _var_index(ring: SuperRing, m) -> int:
    e, mask = m
    if mask:
        return ring.n_even + mask.bit_length() - 1
    return e.index(1)


class EquivariantHom(RingHom):
    """phi_r : A_n -> B_{n,r} together with how it was obtained."""

    def __init__(self, n, r, constants, solution_dim, source, target, images):
        super().__init__(source, target, images)
        self.n = n
        self.r = r
        self.constants = constants
        self.solution_dim = solution_dim

    def equivariance_defects(self) -> list[str]:
        """Generators D with phi(D z) != D_B(phi(z)) for some variable z."""
        bad = []
        for ga, gb in zip(q_generators(self.n), b_generators(self.n, self.r)):
            for z in range(self.source.ngens):
                if self(ga.images[z]) != gb(self.images[z]):
                    bad.append(f"{ga.name} on {self.source.labels[z]}")
        return bad


@lru_cache(maxsize=None)
def build_phi(n: int, r: int) -> EquivariantHom:
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    src, tgt = a_ring(n), b_ring(n, r)
    if r == 0:
        return EquivariantHom(n, 0, (), 0, src, tgt, [tgt.zero()] * src.ngens)
    eqs, _ = equivariance_system(n, r)
    sols = nullspace(eqs, [0, 1, 2, 3])
    if len(sols) != 1:
        raise ConventionError(f"equivariant constants form a {len(sols)}-dimensional space")
    (sol,) = sols
    lead = next(sol[c] for c in range(4) if sol.get(c))
    consts = tuple(coerce(sol.get(c, 0)) / lead for c in range(4))
    images = []
    for pieces in _ansatz(n, r):
        img = tgt.zero()
        for c, p in zip(consts, pieces):
            if c:
                img = img + p * c
        images.append(img)
    return EquivariantHom(n, r, consts, len(sols), src, tgt, images)


def _weight_blocks(ring: SuperRing, d: int) -> list[list]:
    groups: dict = {}
    for m in ring.monomials(d):
        groups.setdefault(ring.mono_weight(m), []).append(m)
    return [groups[k] for k in sorted(groups)]


def _kernel_piece(phi: RingHom, d: int) -> GradedBasis:
    src = phi.source
    elems = []
    for group in _weight_blocks(src, d):
        images = [phi.image_of_monomial(m).terms for m in group]
        for rel in left_kernel(images):
            elems.append(SuperPolynomial(src, {group[i]: c for i, c in rel.items()}))
    return GradedBasis(d, elems)


def ideal_Ir(n: int, r: int, max_degree: int) -> dict[int, GradedBasis]:
    """Degreewise kernel bases of phi_r for degrees 0..max_degree."""
    phi = build_phi(n, r)
    return {d: _kernel_piece(phi, d) for d in range(max_degree + 1)}


def kernel_prediction(n: int, r: int, d: int) -> int:
    """dim A^(d) minus the summands with at most r rows."""
    return graded_dim_A(n, d) - sum(component_dim(lam, n) for lam in enumerate_strict(d, max_length=min(r, n)))


def minors(n: int, size: int) -> list[SuperPolynomial]:
    """All size x size minors of the even matrix (x_ij), rows/cols in lex order."""
    ring = a_ring(n)
    x = [[ring.var(i * n + j) for j in range(n)] for i in range(n)]
    out = []
    for rows in combinations(range(n), size):
        for cols in combinations(range(n), size):
            det = ring.zero()
            for perm in permutations(range(size)):
                sign = _perm_sign(perm)
                term = ring.const(sign)
                for a, b in enumerate(perm):
                    term = term * x[rows[a]][cols[b]]
                det = det + term
            out.append(det)
    return out


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def rad_Ir_generators(n: int, r: int) -> list[SuperPolynomial]:
    """Odd variables plus all (r+1)-minors of (x_ij).

    For r >= n there are no such minors and only the odd variables remain,
    which generate the nilradical.
    """
    ring = a_ring(n)
    odd = [ring.var(ring.n_even + k) for k in range(ring.n_odd)]
    return odd + (minors(n, r + 1) if r + 1 <= n else [])


@dataclass
class RankLocusReport:
    n: int
    r: int
    max_degree: int
    kmax: int
    kernel_dims: list = field(default_factory=list)
    predicted_dims: list = field(default_factory=list)
    inclusion_failures: list = field(default_factory=list)
    minor_powers: list = field(default_factory=list)
    equivariance_defects: list = field(default_factory=list)
    solution_dim: int = 0

    @property
    def inclusion_ok(self) -> bool:
        return not self.inclusion_failures

    @property
    def equivariance_ok(self) -> bool:
        return not self.equivariance_defects

    @property
    def kernel_ok(self) -> bool:
        return self.kernel_dims == self.predicted_dims

    @property
    def nilpotence_ok(self) -> bool:
        return all(mp["k"] is not None for mp in self.minor_powers)

    @property
    def ok(self) -> bool:
        return self.inclusion_ok and self.equivariance_ok and self.kernel_ok and self.nilpotence_ok

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "max_degree": self.max_degree,
            "kmax": self.kmax,
            "kernel_dims": self.kernel_dims,
            "predicted_dims": self.predicted_dims,
            "minor_powers": [
                {"minor": mp["minor"], "k": mp["k"], "status": mp["status"]} for mp in self.minor_powers
            ],
            "inclusion_ok": self.inclusion_ok,
            "inclusion_failures": self.inclusion_failures,
            "equivariance_ok": self.equivariance_ok,
            "solution_dim": self.solution_dim,
        }


def least_power_in_kernel(phi: RingHom, f: SuperPolynomial, kmax: int) -> int | None:
    """Least k <= kmax with f^k in ker(phi), found by evaluating phi(f)^k."""
    img = phi(f)
    power = phi.target.one()
    for k in range(1, kmax + 1):
        power = power * img
        if not power:
            return k
    return None


def verify_rank_locus(n: int, r: int, max_degree: int = 6, kmax: int = 4) -> RankLocusReport:
    """Check V(I_r) = rank <= r locus degreewise, with witnesses."""
    if r >= n:
        raise ValueError("the rank locus check needs r < n")
    phi = build_phi(n, r)
    kernel = ideal_Ir(n, r, max_degree)
    rep = RankLocusReport(n, r, max_degree, kmax, solution_dim=phi.solution_dim)
    rep.kernel_dims = [kernel[d].dim for d in range(max_degree + 1)]
    rep.predicted_dims = [kernel_prediction(n, r, d) for d in range(max_degree + 1)]
    rep.equivariance_defects = phi.equivariance_defects()

    rad = HomogeneousIdeal(a_ring(n), rad_Ir_generators(n, r))
    for d in range(max_degree + 1):
        for f in kernel[d]:
            if not rad.contains(f):
                rep.inclusion_failures.append(str(f))

    for m in minors(n, r + 1):
        k = least_power_in_kernel(phi, m, kmax)
        status = "member" if k is not None else "inconclusive"
        entry = {"minor": str(m), "k": k, "status": status}
        # independent confirmation against the computed kernel bases
        if k is not None and k * (r + 1) <= max_degree:
            piece = kernel[k * (r + 1)]
            rs = RowSpace()
            rs.extend(b.terms for b in piece)
            if not rs.contains((m**k).terms):
                entry["status"] = "kernel-basis disagreement"
                entry["k"] = None
            if k > 1 and (r + 1) * (k - 1) <= max_degree:
                rs = RowSpace()
                rs.extend(b.terms for b in kernel[(r + 1) * (k - 1)])
                if rs.contains((m ** (k - 1)).terms):
                    entry["status"] = "kernel-basis disagreement"
                    entry["k"] = None
        rep.minor_powers.append(entry)
    return rep


def _submodule(f: SuperPolynomial, gens) -> list[dict]:
    rs = RowSpace()
    rs.add(f.terms)
    queue = [f]
    while queue:
        h = queue.pop()
        for g in gens:
            img = g(h)
            if rs.reduce(img.terms):
                rs.add(img.terms)
                queue.append(img)
    return rs.basis()


def _random_poly(ring: SuperRing, rng: random.Random, degree: int, terms: int, pool) -> SuperPolynomial:
    monos = [m for m in ring.monomials(degree) if _mono_vars(ring, m) <= pool]
    picks = rng.sample(monos, min(terms, len(monos)))
    f = SuperPolynomial(ring, {m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in picks})
    return f if f else ring.one()


def _mono_vars(ring: SuperRing, m) -> set:
    e, mask = m
    out = {k for k, x in enumerate(e) if x}
    out |= {ring.n_even + j for j in range(ring.n_odd) if (mask >> j) & 1}
    return out


def integrality_check(n: int, trials: int = 20, seed: int = 0, max_degree: int = 2) -> list[dict]:
    """For random nonzero f, g find f' in the module generated by f with
    support disjoint from g, and confirm f' * g != 0."""
    if n < 2:
        raise ValueError("integrality check needs n >= 2")
    ring = a_ring(n)
    gens = q_generators(n)
    rng = random.Random(seed)
    nv = ring.ngens
    out = []
    for t in range(trials):
        pool_f = set(rng.sample(range(nv), rng.randint(1, nv // 2)))
        pool_g = set(rng.sample(range(nv), rng.randint(1, nv // 2)))
        f = _random_poly(ring, rng, rng.randint(0, max_degree), rng.randint(1, 3), pool_f)
        g = _random_poly(ring, rng, rng.randint(1, max_degree), rng.randint(1, 3), pool_g)
        out.append(_integral_pair(ring, gens, f, g) | {"trial": t})
    return out


def _integral_pair(ring, gens, f: SuperPolynomial, g: SuperPolynomial) -> dict:
    basis = _submodule(f, gens)
    g_vars = set().union(*(_mono_vars(ring, m) for m in g.terms)) if g.terms else set()
    restricted = [{m: c for m, c in b.items() if _mono_vars(ring, m) & g_vars} for b in basis]
    rels = left_kernel(restricted)
    rec = {"f": str(f), "g": str(g), "module_dim": len(basis)}
    if not rels:
        rec.update(found=False, f_prime=None, product_nonzero=None)
        return rec
    fp: dict = {}
    for i, c in sorted(rels[0].items()):
        for m, v in basis[i].items():
            fp[m] = fp.get(m, 0) + c * v
    f_prime = SuperPolynomial(ring, fp)
    rec.update(found=True, f_prime=str(f_prime), product_nonzero=bool(f_prime * g))
    return rec


def integral_witness(n: int, f: SuperPolynomial, g: SuperPolynomial) -> dict:
    """Integrality record for one explicit pair in the rank-n ring."""
    return _integral_pair(a_ring(n), q_generators(n), f, g)
