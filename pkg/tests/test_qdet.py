import random

import pytest

from isomeric.linalg import RowSpace
from isomeric.liealg import a_ring, ideal_from_component
from isomeric.partitions import staircase
from isomeric.qdet import (
    build_phi,
    equivariance_system,
    ideal_Ir,
    integral_witness,
    integrality_check,
    kernel_prediction,
    least_power_in_kernel,
    rad_Ir_generators,
    verify_rank_locus,
)
from isomeric.superpoly import SuperPolynomial, membership
from isomeric.symfunc import graded_dim_A


def _span(basis):
    rs = RowSpace()
    rs.extend(p.terms for p in basis)
    return rs


def _det2(ring):
    return ring.var("x11") * ring.var("x22") - ring.var("x12") * ring.var("x21")


def test_phi_rank_zero_is_zero():
    phi = build_phi(2, 0)
    assert all(not im for im in phi.images)


@pytest.mark.parametrize("n,r", [(1, 1), (2, 1), (2, 2)])
def test_phi_unique_up_to_scale(n, r):
    _, dim = equivariance_system(n, r)
    assert dim == 1
    phi = build_phi(n, r)
    assert phi.constants[0] == 1
    assert phi.equivariance_defects() == []


def test_phi_images_have_the_ansatz_shape():
    phi = build_phi(2, 1)
    assert str(phi.images[0]) == "u11*v11 + i*ut11*vt11"
    assert str(phi.images[4]) == "i*u11*vt11 + v11*ut11"


def test_phi_doubles_degree_and_is_multiplicative():
    phi = build_phi(2, 2)
    ring = a_ring(2)
    rng = random.Random(3)
    monos = {d: ring.monomials(d) for d in range(1, 3)}
    for _ in range(30):
        d = rng.randint(1, 2)
        f = SuperPolynomial(ring, {m: rng.randint(-2, 2) for m in rng.sample(monos[d], 3)})
        g = SuperPolynomial(ring, {m: rng.randint(-2, 2) for m in rng.sample(monos[1], 2)})
        image = phi(f)
        assert not image or image.degrees() == {2 * d}
        assert phi(f * g) == image * phi(g)
        assert phi(f + g) == image + phi(g)


def test_kernel_examples():
    assert [ideal_Ir(1, 1, 6)[d].dim for d in range(7)] == [0] * 7
    assert [ideal_Ir(2, 1, 3)[d].dim for d in range(4)] == [0, 0, 0, 16]
    assert ideal_Ir(2, 0, 1)[1].dim == 8
    assert 16 == graded_dim_A(2, 3) - 72


@pytest.mark.parametrize("n,r,D", [(1, 0, 6), (2, 0, 5), (2, 1, 6), (2, 2, 6), (3, 1, 3)])
def test_kernel_matches_prediction(n, r, D):
    ker = ideal_Ir(n, r, D)
    for d in range(D + 1):
        assert ker[d].dim == kernel_prediction(n, r, d)


def test_kernel_chain():
    kers = [ideal_Ir(2, r, 5) for r in range(3)]
    for r in range(2):
        for d in range(6):
            big = _span(kers[r][d])
            assert all(big.contains(p.terms) for p in kers[r + 1][d])


@pytest.mark.parametrize("r,D", [(0, 4), (1, 6)])
def test_kernel_equals_staircase_component_ideal(r, D):
    ker = ideal_Ir(2, r, D)
    comp = ideal_from_component(staircase(r + 1), 2, D)
    for d in range(D + 1):
        a, b = _span(ker[d]), _span(comp[d])
        assert a.rank == b.rank
        assert all(a.contains(p.terms) for p in comp[d])


def test_rad_generator_examples():
    assert [str(g) for g in rad_Ir_generators(2, 1)] == ["y11", "y12", "y21", "y22", "x11*x22 - x12*x21"]
    assert sorted(str(g) for g in rad_Ir_generators(2, 0)) == sorted(a_ring(2).labels)
    gens = rad_Ir_generators(3, 2)
    assert len(gens) == 10 and sum(g.degree() == 3 for g in gens) == 1


def test_kernel_generators_lie_in_radical():
    rad = rad_Ir_generators(2, 1)
    for p in ideal_Ir(2, 1, 4)[4]:
        assert membership(p, rad)


def test_least_power_of_det():
    ring = a_ring(2)
    det = _det2(ring)
    phi = build_phi(2, 1)
    k = least_power_in_kernel(phi, det, 4)
    assert k is not None and 2 <= k <= 4
    ker = ideal_Ir(2, 1, 2 * k)
    assert not _span(ker[2 * k - 2]).contains((det ** (k - 1)).terms)
    assert _span(ker[2 * k]).contains((det**k).terms)


def test_verify_examples():
    rep = verify_rank_locus(2, 1, max_degree=6, kmax=4)
    assert rep.ok and rep.inclusion_ok and rep.equivariance_ok
    assert rep.kernel_dims == [0, 0, 0, 16, 64, 160, 320]
    (mp,) = rep.minor_powers
    assert mp["k"] >= 2
    rep = verify_rank_locus(1, 0, max_degree=3)
    assert rep.ok and [mp["k"] for mp in rep.minor_powers] == [1]
    with pytest.raises(ValueError):
        verify_rank_locus(2, 2)


def test_integrality_examples():
    ring = a_ring(2)
    y, x = ring.var("y11"), ring.var("x11")
    rec = integral_witness(2, y, y)
    assert rec["found"] and rec["product_nonzero"] and "y11" not in rec["f_prime"]
    rec = integral_witness(2, ring.const(3), y)
    assert rec["found"] and rec["product_nonzero"]
    assert x * x != 0


def test_integrality_trials():
    trials = integrality_check(2, 20, seed=0)
    assert len(trials) == 20
    assert all(t["found"] and t["product_nonzero"] for t in trials)
    with pytest.raises(ValueError):
        integrality_check(1, 2)

