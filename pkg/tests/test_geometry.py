from fractions import Fraction

import pytest

from nilmetric import catalog as C
from nilmetric.errors import DegenerateCenter, NotBiInvariant, NotTwoStep, UnsupportedInput
from nilmetric.exact import is_zero, qarray, qeye, qzeros
from nilmetric.geometry import (
    ad_star, curvature_biinvariant, is_metric_compatible, is_torsion_free, j_family,
    levi_civita, levi_civita_blocks, ricci,
)
from nilmetric.liealg import Subspace, ad_matrix, bracket, split, split_with
from conftest import rand_vec

TWO_STEP = ["h3_riemannian", "h3_lorentz", "h3_pseudo_htype", "htype6", "rxh3", "abelian_2_1"]


def curvature(alg, x, y, z):
    """R(x, y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z (left-invariant fields)."""
    nab = lambda a, b: levi_civita(alg, a, b)  # noqa: E731
    return nab(x, nab(y, z)) - nab(y, nab(x, z)) - nab(bracket(alg, x, y), z)


def ricci_oracle(alg):
    """Ric(y, z) = tr(x -> R(x, y) z) from the general curvature tensor."""
    n = alg.dim
    e = [alg.basis_vector(i) for i in range(n)]
    out = qzeros(n, n)
    for a in range(n):
        for b in range(n):
            out[a, b] = sum((curvature(alg, e[i], e[a], e[b])[i] for i in range(n)), Fraction(0))
    return out


@pytest.mark.parametrize("name", TWO_STEP)
def test_ricci_matches_general_curvature(name):
    alg = C.algebra(name)
    ric = ricci(split(alg))
    assert is_zero(ric.form - ricci_oracle(alg))
    assert is_zero(ric.form - ric.form.T)


@pytest.mark.parametrize("pivot", ["largest", "first", "last"])
def test_ricci_independent_of_orthogonalization(pivot):
    s = split(C.htype6())
    assert is_zero(ricci(s, pivot).operator.matrix - ricci(s).operator.matrix)


def test_lorentz_heisenberg_values():
    s = split(C.h3_lorentz())
    ric = ricci(s)
    assert is_zero(ric.v_block.matrix - Fraction(1, 2) * qeye(2))
    assert is_zero(ric.z_block.matrix + Fraction(1, 2) * qeye(1))
    assert ric.scalar == Fraction(1, 2)


@pytest.mark.parametrize("name", TWO_STEP)
def test_j_identity_and_skewness(name, rng):
    s = split(C.algebra(name))
    alg = s.algebra
    jf = j_family(s)
    for jm in jf.maps:
        assert is_zero(jm.matrix.T @ s.v_gram + s.v_gram @ jm.matrix)
    for _ in range(10):
        w = rand_vec(rng, s.p) @ s.z_basis if s.p else qzeros(alg.dim)
        u1 = rand_vec(rng, s.m) @ s.v_basis
        u2 = rand_vec(rng, s.m) @ s.v_basis
        assert alg.inner(jf.apply(w, u1), u2) == alg.inner(w, bracket(alg, u1, u2))


@pytest.mark.parametrize("name", TWO_STEP)
def test_block_connection_formulas(name, rng):
    s = split(C.algebra(name))
    for _ in range(10):
        u, w = rand_vec(rng, s.algebra.dim), rand_vec(rng, s.algebra.dim)
        assert is_zero(levi_civita(s.algebra, u, w) - levi_civita_blocks(s, u, w))


def test_connection_axioms_on_solvable(rng):
    alg = C.iso7()
    for _ in range(10):
        x, y, z = (rand_vec(rng, alg.dim) for _ in range(3))
        assert is_metric_compatible(alg, x, y, z)
        assert is_torsion_free(alg, x, y)


def test_biinvariant_curvature(rng):
    alg = C.oscillator4()
    for _ in range(5):
        x, y, z = (rand_vec(rng, 4) for _ in range(3))
        assert is_zero(curvature(alg, x, y, z) - curvature_biinvariant(alg, x, y)(z))
        assert is_zero(ad_star(alg, x).matrix + ad_matrix(alg, x))
    with pytest.raises(NotBiInvariant):
        curvature_biinvariant(C.h3_riemannian(), qarray([1, 0, 0]), qarray([0, 1, 0]))


def test_preconditions():
    alg = C.free3_neutral()
    with pytest.raises(DegenerateCenter):
        split(alg)
    with pytest.raises(DegenerateCenter):
        j_family(C.free3_split())
    h = C.h3_lorentz()
    skew = split_with(h, Subspace.span([qarray([1, 0, 1]), h.basis_vector(1)], 3))
    with pytest.raises(UnsupportedInput):
        ricci(skew)
    with pytest.raises((NotTwoStep, DegenerateCenter)):
        ricci(split(C.oscillator4()))
