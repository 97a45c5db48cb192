import numpy as np
import pytest

from nilmetric import catalog as C
from nilmetric import isometry as I
from nilmetric.exact import qarray
from nilmetric.liealg import MetricLieAlgebra, SplitAlgebra, Subspace

PTS4 = C.sample_points(30, 4, seed=11)
PTS6 = C.sample_points(30, 6, seed=12)


def m4_maps():
    return [C.LG(0.4, [1.0, -0.5], 0.3), C.LN(-1.2, [0.2, 0.7], -2.0),
            C.chi(0.9, [-0.3, 1.1], 0.5), C.psi1(), C.psi2(), C.psi3(),
            C.compose_maps(C.LG(1.0, [0.0, 1.0], 0.0), C.psi2())]


@pytest.mark.parametrize("f", m4_maps(), ids=lambda f: f.name)
def test_pullback_isometries_on_m4(f):
    r = C.pullback_isometry_check(C.chart_m4(), f, PTS4)
    assert r.ok, r


def test_ftau_pullback_on_m6():
    for tau in (-1.3, 0.0, 0.7, 2.0):
        assert C.pullback_isometry_check(C.chart_m6(), C.Ftau(tau), PTS6).ok


def test_half_coupling_breaks_the_isometries():
    """With g(dt, dz) = 1/2 the maps chi and psi2 are not isometries."""
    half = C.builtin("chartM4_half")
    assert not C.pullback_isometry_check(half, C.chi(0.9, [-0.3, 1.1], 0.5), PTS4).ok
    assert not C.pullback_isometry_check(half, C.psi2(), PTS4).ok
    assert C.pullback_isometry_check(half, C.LN(0.3, [1.0, 0.0], 0.2), PTS4).ok


def test_non_isometry_is_rejected():
    scale = C.SmoothMap(4, lambda p: 2 * p, lambda p: 2 * np.eye(4), "scale")
    r = C.pullback_isometry_check(C.chart_m4(), scale, PTS4)
    assert not r.ok and r.max_defect > 1


@pytest.mark.parametrize("f", [C.LG(0.4, [1.0, -0.5], 0.3), C.LN(-1.2, [0.2, 0.7], -2.0)],
                         ids=["LG", "LN"])
def test_closed_form_jacobians_agree_with_finite_differences(f):
    for p in PTS4[:10]:
        assert np.allclose(f.jacobian_at(p), f.fd_jacobian_at(p), atol=1e-7)


def test_composition_identities():
    t1, v1, z1 = 0.8, np.array([0.3, -1.0]), 0.6
    lg = C.LG(t1, v1, z1)
    lhs = C.compose_maps(C.LN(t1, v1, z1), C.chi(t1, [0, 0], 0))
    rhs = C.compose_maps(C.chi(t1, [0, 0], 0), C.LN(t1, C.rot(-t1) @ v1, z1))
    comp = C.compose_maps(C.psi1(), C.psi2())
    for p in PTS4:
        assert np.max(np.abs(lhs(p) - lg(p))) <= 1e-12
        assert np.max(np.abs(rhs(p) - lg(p))) <= 1e-12
        assert np.max(np.abs(comp(p) - C.psi3()(p))) <= 1e-12


def test_ftau_block_form():
    tau = 0.6
    c, s = np.cosh(tau), np.sinh(tau)
    blk = C.ftau_block_form(tau)
    expected = np.zeros((6, 6))
    expected[:2, :2] = [[c, s], [s, c]]
    expected[2:4, 2:4] = [[c, -s], [-s, c]]
    expected[4:, 4:] = np.eye(2)
    assert np.allclose(blk, expected)
    assert np.allclose(np.asarray(C.ftau_exact(2), dtype=float), C.ftau_matrix(np.log(2)))


def test_rxh3_reflection_differentials():
    """psi1 induces an automorphism of R x H3, psi2 an isometry that is not one."""
    alg = C.rxh3()
    d1 = qarray(np.diag([-1, -1, 1, -1]))
    d2 = qarray(np.diag([-1, 1, 1, -1]))
    assert I.is_isometric_automorphism_differential(alg, d1)
    assert not I.is_isometric_automorphism_differential(alg, d2)
    g = alg.metric
    assert (d2.T @ g @ d2 == g).all()


def test_nilradical_orbits():
    gens = [(np.array([1.0, -0.5]), 0.3, np.array([0.2, 0.1])),
            (np.array([-2.0, 0.5]), -1.0, np.array([1.5, -1.0]))]
    res = C.nilradical_orbit_check(PTS4[:5], gens, targets=20, seed=1)
    assert res.ok and res.targets == 20
    with pytest.raises(ValueError):
        C.solve_orbit_parameters(PTS4[0], PTS4[0] + np.array([1.0, 0, 0, 0]), np.zeros(2))


def test_registry():
    names = C.catalog_names()
    for name in names["algebras"][:-1]:
        assert isinstance(C.builtin(name), MetricLieAlgebra)
    assert isinstance(C.builtin("free3_split"), SplitAlgebra)
    assert isinstance(C.builtin("iso7_n"), Subspace)
    assert C.builtin("chartM6").dim == 6
    assert C.algebra("abelian_0_3").dim == 3
    with pytest.raises(KeyError):
        C.builtin("no_such_thing")
