"""Exit criteria, runnable from pytest and from ``isomeric selftest``.

Every check is exact; each criterion also carries its wall-clock budget in
seconds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .lattice import (
    EquivariantIdeal,
    I_r,
    g_radical,
    g_spectrum,
    is_g_prime,
    leq,
    principal,
    zero_ideal,
)
from .linalg import RowSpace
from .liealg import a_ring, commutant_basis, ideal_from_component, isotypic_decomposition, q_generators
from .partitions import contains, enumerate_strict, format_partition
from .qdet import (
    build_phi,
    equivariance_system,
    ideal_Ir,
    kernel_prediction,
    least_power_in_kernel,
    verify_rank_locus,
)
from .superpoly import SuperPolynomial
from .symfunc import cauchy_check, component_dim, graded_dim_A


@dataclass
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.1f}s / {self.budget:.0f}s)"


def criterion_cauchy() -> tuple[bool, str]:
    bad = [(n, d) for n in range(1, 4) for d in range(9) if not cauchy_check(n, d).equal]
    return not bad, "n<=3, d<=8 all equal" if not bad else f"mismatch at {bad}"


def _invariant(components, gens) -> bool:
    for comp in components:
        rs = RowSpace()
        rs.extend(p.terms for p in comp.basis)
        if any(not rs.contains(g(p).terms) for g in gens for p in comp.basis):
            return False
    return True


def criterion_isotypic() -> tuple[bool, str]:
    gens = q_generators(2)
    notes = []
    ok = True
    for d in range(5):
        expected = enumerate_strict(d, max_length=2)
        comm = commutant_basis(gens, 2, d)
        dec = isotypic_decomposition(2, d)
        got = {tuple(c.label): c.dimension for c in dec.components}
        want = {tuple(lam): component_dim(lam, 2) for lam in expected}
        if len(comm) != len(expected) or got != want or not _invariant(dec.components, gens):
            ok = False
        notes.append(f"d={d}:" + "+".join(str(got[k]) for k in sorted(got, reverse=True)))
    return ok, " ".join(notes)


def _subideal_dims(lam, n, max_degree):
    return [
        sum(component_dim(mu, n) for mu in enumerate_strict(d, max_length=n) if contains(mu, lam))
        for d in range(max_degree + 1)
    ]


def criterion_ideal_lattice() -> tuple[bool, str]:
    got = [b.dim for b in ideal_from_component((2, 1), 2, 6).values()]
    want = _subideal_dims((2, 1), 2, 6)
    return got == want, f"dims {got} vs predicted {want}"


def _same_span(a, b) -> bool:
    ra, rb = RowSpace(), RowSpace()
    ra.extend(p.terms for p in a)
    rb.extend(p.terms for p in b)
    return ra.rank == rb.rank and all(ra.contains(p.terms) for p in b)


def criterion_kernel() -> tuple[bool, str]:
    ker = ideal_Ir(2, 1, 6)
    dims = [ker[d].dim for d in range(1, 7)]
    pred = [kernel_prediction(2, 1, d) for d in range(1, 7)]
    comp = ideal_from_component((2, 1), 2, 6)
    same = all(_same_span(ker[d], comp[d]) for d in range(7))
    ok = dims == pred and dims[:3] == [0, 0, graded_dim_A(2, 3) - 72] and same
    return ok, f"kernel dims d=1..6 {dims}, predicted {pred}, equals I_(2,1): {same}"


def criterion_rank_locus() -> tuple[bool, str]:
    rep = verify_rank_locus(2, 1, max_degree=6, kmax=4)
    ring = a_ring(2)
    det = ring.var("x11") * ring.var("x22") - ring.var("x12") * ring.var("x21")
    rs = RowSpace()
    rs.extend(p.terms for p in ideal_Ir(2, 1, 2)[2])
    det_not_in = not rs.contains(det.terms)
    (mp,) = rep.minor_powers
    k = mp["k"]
    ok1 = rep.inclusion_ok and det_not_in and k is not None and 2 <= k <= 4

    rep0 = verify_rank_locus(2, 0, max_degree=4, kmax=4)
    phi0 = build_phi(2, 0)
    ks = [least_power_in_kernel(phi0, v, 4) for v in ring.gens()]
    ok0 = rep0.inclusion_ok and all(k0 == 1 for k0 in ks)
    return ok1 and ok0, f"r=1: inclusion {rep.inclusion_ok}, det not in I_1 {det_not_in}, least k={k}; r=0: variables at k=1 {ok0}"


def criterion_equivariance() -> tuple[bool, str]:
    dims = {}
    defects = {}
    for n, r in [(1, 1), (2, 1), (2, 2)]:
        _, dims[(n, r)] = equivariance_system(n, r)
        defects[(n, r)] = build_phi(n, r).equivariance_defects()
    ok = all(v == 1 for v in dims.values()) and not any(defects.values())
    return ok, f"solution dims {list(dims.values())}, defects {sum(len(v) for v in defects.values())}"


def _antichains(elems):
    """All antichains of ``elems`` under containment."""
    out = []

    def grow(i, current):
        if i == len(elems):
            out.append(tuple(current))
            return
        grow(i + 1, current)
        e = elems[i]
        if all(not contains(e, c) and not contains(c, e) for c in current):
            current.append(e)
            grow(i + 1, current)
            current.pop()

    grow(0, [])
    return out


def _scan_radical(I: EquivariantIdeal, rmax: int = 8) -> EquivariantIdeal:
    if I.is_zero:
        return zero_ideal()
    for r in range(rmax, -1, -1):
        if leq(I, I_r(r)):
            return I_r(r)
    raise AssertionError("no staircase ideal contains I")


def criterion_classification() -> tuple[bool, str]:
    parts = [p for d in range(1, 7) for p in enumerate_strict(d)]
    ideals = [EquivariantIdeal(a) for a in _antichains(parts)]
    failures = []
    for I in ideals:
        R = g_radical(I)
        if g_radical(R) != R:
            failures.append(f"not idempotent at {I}")
        if not leq(I, R):
            failures.append(f"not extensive at {I}")
        if not is_g_prime(R):
            failures.append(f"radical of {I} is not g-prime")
        if R != _scan_radical(I):
            failures.append(f"radical of {I} disagrees with staircase scan")
    for I in ideals:
        RI = g_radical(I)
        for J in ideals:
            if leq(I, J) and not leq(RI, g_radical(J)):
                failures.append(f"not monotone at {I} <= {J}")
    primes = [I for I in ideals if is_g_prime(I)] + [I for _, I in g_spectrum(6)]
    for a, b in combinations(primes, 2):
        if not (leq(a, b) or leq(b, a)):
            failures.append(f"g-primes {a} and {b} incomparable")
    for lam in parts:
        if g_radical(principal(lam)) != I_r(len(lam) - 1):
            failures.append(f"radical of I_{format_partition(lam)}")
    detail = f"{len(ideals)} antichain ideals, {len(primes)} primes checked"
    return not failures, detail if not failures else f"{detail}; {failures[:3]}"


def _rand_poly(ring, rng, parity=None):
    monos = [m for d in range(3) for m in _monomials_of(ring, d)]
    if parity is not None:
        monos = [m for m in monos if (m[1].bit_count() & 1) == parity]
    k = rng.randint(1, 3)
    return SuperPolynomial(ring, {m: rng.randint(-3, 3) or 1 for m in rng.sample(monos, k)})


_monomial_cache: dict = {}


def _monomials_of(ring, d):
    key = (id(ring), d)
    if key not in _monomial_cache:
        _monomial_cache[key] = ring.monomials(d)
    return _monomial_cache[key]


def criterion_ring_laws(cases_each: int = 3400, seed: int = 20261016) -> tuple[bool, str]:
    ring = a_ring(2)
    gens = q_generators(2)
    rng = random.Random(seed)
    bad = 0
    total = 0
    for _ in range(cases_each):
        pf, pg = rng.randint(0, 1), rng.randint(0, 1)
        f, g = _rand_poly(ring, rng, pf), _rand_poly(ring, rng, pg)
        bad += f * g != g * f * (-1) ** (pf * pg)
        h = _rand_poly(ring, rng)
        bad += (f * g) * h != f * (g * h)
        D = rng.choice(gens)
        bad += D(f * g) != D(f) * g + f * D(g) * (-1) ** (D.parity * pf)
        total += 3
    counts = [
        (n, d) for n in range(1, 4) for d in range(9) if len(a_ring(n).monomials(d)) != graded_dim_A(n, d)
    ]
    ok = bad == 0 and not counts
    return ok, f"{total} randomized cases, {bad} failures; monomial count mismatches {counts}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "Cauchy identity", criterion_cauchy, 10),
    (2, "isotypic decomposition", criterion_isotypic, 120),
    (3, "ideal lattice at finite rank", criterion_ideal_lattice, 300),
    (4, "determinantal kernel", criterion_kernel, 300),
    (5, "rank locus", criterion_rank_locus, 300),
    (6, "equivariance", criterion_equivariance, 60),
    (7, "classification of g-primes", criterion_classification, 10),
    (8, "supercommutative ring laws", criterion_ring_laws, 30),
]


def run_criterion(number: int) -> Outcome:
    (entry,) = [c for c in CRITERIA if c[0] == number]
    _, name, fn, budget = entry
    start = time.perf_counter()
    passed, detail = fn()
    elapsed = time.perf_counter() - start
    return Outcome(number, name, passed and elapsed <= budget, detail, elapsed, budget)


def run_all() -> list[Outcome]:
    return [run_criterion(c[0]) for c in CRITERIA]
