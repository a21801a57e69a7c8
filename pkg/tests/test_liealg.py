import random

import pytest

from isomeric.field import I
from isomeric.linalg import RowSpace
from isomeric.liealg import (
    HalfTensor,
    IsomericSpace,
    a_ring,
    apply_operator,
    commutant_basis,
    ideal_from_component,
    isotypic_decomposition,
    q_generators,
    q_matrices,
)
from isomeric.partitions import contains, enumerate_strict
from isomeric.superpoly import SuperPolynomial
from isomeric.symfunc import component_dim, graded_dim_A


def _by_name(n):
    return {g.name: g for g in q_generators(n)}


def _mat_mul(a, b):
    out = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_q_matrices_supercommute_with_alpha(n):
    alpha = IsomericSpace(n, "V").alpha_matrix()
    mats = q_matrices(n)
    assert len(mats) == 2 * n * n
    for _, parity, m in mats:
        lhs = _mat_mul(m, alpha)
        rhs = {k: v * (-1) ** parity for k, v in _mat_mul(alpha, m).items()}
        assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2])
def test_half_tensor_is_square_root_of_minus_one(n):
    ht = HalfTensor(IsomericSpace(n, "V"), IsomericSpace(n, "W"))
    assert len(ht.basis) == 2 * n * n
    assert ht.n_even == n * n


def test_diagonal_generator_is_weight_action():
    ring = a_ring(2)
    e11 = _by_name(2)["E11|V"]
    assert e11(ring.var("x12")) == ring.var("x12")
    assert e11(ring.var("x11")) == ring.var("x11")
    assert e11(ring.var("x21")) == 0
    assert e11(ring.var("y22")) == 0


def test_rank_one_odd_generators_swap_x_and_y():
    ring = a_ring(1)
    x, y = ring.var("x11"), ring.var("y11")
    gens = q_generators(1)
    assert sorted(g.parity for g in gens) == [0, 0, 1, 1]
    for g in gens:
        if g.parity:
            cx, cy = g(x), g(y)
            assert set(cx.terms) == set(y.terms) and set(cy.terms) == set(x.terms)
            for c in list(cx.terms.values()) + list(cy.terms.values()):
                assert c in (1, -1, I, -I)


@pytest.mark.parametrize("n", [1, 2])
def test_generators_preserve_degree(n):
    ring = a_ring(n)
    for g in q_generators(n):
        for d in range(3):
            for m in ring.monomials(d):
                assert g.on_monomial(m).degrees() <= {d}


def test_brackets_close():
    gens = q_generators(2)
    span = RowSpace()
    flat = lambda imgs: {(k, m): c for k, p in enumerate(imgs) for m, c in p.terms.items()}
    for g in gens:
        span.add(flat(g.images))
    # the two identity matrices both act as the Euler operator
    assert span.rank == len(gens) - 1
    by = _by_name(2)
    euler_v = {}
    for name in ("E11|V", "E22|V"):
        for key, c in flat(by[name].images).items():
            euler_v[key] = euler_v.get(key, 0) + c
    for name in ("E11|W", "E22|W"):
        for key, c in flat(by[name].images).items():
            euler_v[key] = euler_v.get(key, 0) - c
    assert not {k: v for k, v in euler_v.items() if v}
    for a in gens:
        for b in gens:
            assert span.contains(flat(a.bracket_on_vars(b)))


def test_leibniz_on_random_pairs():
    ring = a_ring(2)
    rng = random.Random(11)
    monos = [m for d in range(3) for m in ring.monomials(d)]
    for _ in range(200):
        pf = rng.randint(0, 1)
        fm = [m for m in monos if bin(m[1]).count("1") % 2 == pf]
        f = SuperPolynomial(ring, {m: rng.randint(-3, 3) for m in rng.sample(fm, 3)})
        g = SuperPolynomial(ring, {m: rng.randint(-3, 3) for m in rng.sample(monos, 3)})
        D = rng.choice(q_generators(2))
        assert D(f * g) == D(f) * g + f * D(g) * (-1) ** (D.parity * pf)


@pytest.mark.parametrize("d,expected", [(0, 1), (1, 1), (2, 1), (3, 2), (4, 2), (5, 3)])
def test_commutant_dimension_rank_two(d, expected):
    assert len(commutant_basis(q_generators(2), 2, d)) == expected
    assert expected == len(enumerate_strict(d, max_length=2))


def test_commutant_degree_zero_is_scalars():
    for n in (1, 3):
        assert len(commutant_basis(q_generators(n), n, 0)) == 1


def test_commutant_elements_commute():
    gens = q_generators(2)
    ring = a_ring(2)
    for op in commutant_basis(gens, 2, 3):
        for g in gens:
            for m in ring.monomials(3):
                gm = g.on_monomial(m).terms
                assert apply_operator(op, gm) == {
                    k: v for k, v in _apply_gen(g, apply_operator(op, {m: 1})).items() if v
                }


def _apply_gen(g, vec):
    out = {}
    for m, c in vec.items():
        for t, v in g.on_monomial(m).terms.items():
            out[t] = out.get(t, 0) + c * v
    return out


def _labels(dec):
    return {tuple(c.label): c.dimension for c in dec.components}


def test_decomposition_examples():
    assert _labels(isotypic_decomposition(1, 2)) == {(2,): 2}
    assert _labels(isotypic_decomposition(2, 3)) == {(3,): 72, (2, 1): 16}
    assert _labels(isotypic_decomposition(2, 2)) == {(2,): 32}


@pytest.mark.parametrize("d", [3, 4])
def test_components_are_invariant_and_span(d):
    ring = a_ring(2)
    dec = isotypic_decomposition(2, d)
    total = RowSpace()
    for comp in dec.components:
        assert comp.dimension == component_dim(comp.label, 2)
        rs = RowSpace()
        rs.extend(p.terms for p in comp.basis)
        for g in q_generators(2):
            for p in comp.basis:
                assert rs.contains(g(p).terms)
        total.extend(p.terms for p in comp.basis)
    assert total.rank == graded_dim_A(2, d) == sum(c.dimension for c in dec.components)


def test_decomposition_independent_of_seed():
    a = isotypic_decomposition(2, 4, seed=0)
    b = isotypic_decomposition(2, 4, seed=7)
    assert _labels(a) == _labels(b)


@pytest.mark.parametrize("lam", [(1,), (2,), (2, 1), (3,)])
def test_ideal_from_component_dimensions(lam):
    got = ideal_from_component(lam, 2, 6)
    for d in range(7):
        want = sum(component_dim(mu, 2) for mu in enumerate_strict(d, max_length=2) if contains(mu, lam))
        assert got[d].dim == want


def test_ideal_of_first_component_is_maximal():
    got = ideal_from_component((1,), 2, 4)
    assert got[0].dim == 0
    assert all(got[d].dim == graded_dim_A(2, d) for d in range(1, 5))


def test_ideal_from_long_component_is_zero():
    got = ideal_from_component((3, 2, 1), 2, 6)
    assert all(b.dim == 0 for b in got.values())
