from fractions import Fraction

import numpy as np
import pytest

from nilmetric import catalog as C
from nilmetric import isometry as I
from nilmetric.errors import DegenerateCenter, NotBiInvariant, NotSolvable, NotTwoStep
from nilmetric.exact import is_zero, qarray, qeye, qzeros, to_float
from nilmetric.liealg import Subspace, ad_matrix, center, derived_algebra, split
from conftest import rand_vec

FREE3_NONAUT = np.diag([2, 1, 1, 1, 1, Fraction(1, 2)])


def test_ahc_dimensions():
    free = I.ahc_isotropy_algebra(C.free3_neutral())
    assert free.dimension == 15 and free.constraint_residual
    osc = I.ahc_isotropy_algebra(C.oscillator4())
    assert osc.dimension == 3 and osc.constraint_residual
    with pytest.raises(NotBiInvariant):
        I.ahc_isotropy_algebra(C.h3_riemannian())


def test_ahc_basis_elements_satisfy_constraints():
    alg = C.free3_neutral()
    db = I.double_brackets(alg)
    for a in I.ahc_isotropy_algebra(alg).basis:
        a = a.matrix
        assert is_zero(a.T @ alg.metric + alg.metric @ a)
        lhs = np.einsum("ijkm,pm->ijkp", db, a)
        rhs = (np.einsum("ri,rjkm->ijkm", a, db) + np.einsum("rj,irkm->ijkm", a, db)
               + np.einsum("rk,ijrm->ijkm", a, db))
        assert is_zero(lhs - rhs)


@pytest.mark.parametrize("k", [2, Fraction(3, 2), Fraction(1, 5), 7])
def test_ftau_is_an_isometric_automorphism(k):
    alg = C.free3_neutral()
    d = C.ftau_exact(k)
    assert I.ahc_isometry_check(alg, d)
    # dF^tau_0 respects the bracket on every basis pair: it is an automorphism
    assert I.is_isometric_automorphism_differential(alg, d)
    assert is_zero(I.derivation_residual(alg, qzeros(6, 6)))


def test_ftau_group_law():
    """F^tau(x y) = F^tau(x) F^tau(y) in exponential coordinates."""
    alg = C.free3_neutral()
    f = C.ftau_matrix(0.9)
    pts = C.sample_points(20, 6, seed=3)
    for x, y in zip(pts[:10], pts[10:]):
        assert np.allclose(f @ C.exp_product(alg, x, y), C.exp_product(alg, f @ x, f @ y),
                           atol=1e-12)


def test_isometric_non_automorphism_of_free3():
    alg = C.free3_neutral()
    assert I.ahc_isometry_check(alg, FREE3_NONAUT)
    assert not I.is_isometric_automorphism_differential(alg, FREE3_NONAUT)


def test_isotropy_pair_lorentz_heisenberg():
    s = split(C.h3_lorentz())
    assert I.isotropy_pair_check(s, qarray([[-1]]), qarray([[-1, 0], [0, 1]]))
    assert I.isotropy_pair_check(s, qarray([[1]]), qeye(2))
    swap = qarray([[0, 1], [1, 0]])
    assert not I.isotropy_pair_check(s, qarray([[-1]]), swap)   # swap is not in O(1,1)
    full = qarray(np.diag([-1, 1, -1]))
    assert I.isotropy_check_full(s, full)


def test_isotropy_algebra_dimensions():
    assert I.isotropy_algebra(split(C.rxh3())).dimension == 1
    assert I.isotropy_algebra(split(C.h3_riemannian())).dimension == 1
    iso = I.isotropy_algebra(split(C.htype6()))
    assert iso.constraint_residual and iso.dimension >= 1
    with pytest.raises(DegenerateCenter):
        I.isotropy_algebra(C.free3_split())


@pytest.mark.parametrize("name", ["rxh3", "h3_lorentz", "htype6"])
def test_skew_derivations_lie_in_isotropy_algebra(name):
    alg = C.algebra(name)
    s = split(alg)
    iso = I.isotropy_algebra(s)
    flat = lambda a, b: np.concatenate([a.ravel(), b.ravel()])  # noqa: E731
    span = Subspace.span([flat(a.matrix, b.matrix) for a, b in iso.basis], s.p ** 2 + s.m ** 2)
    der = I.skew_derivations(alg)
    assert der.constraint_residual
    for d in der.basis:
        phi, t = I.blocks_of(s, d.matrix)
        assert span.contains(flat(phi, t))


def test_rxh3_skew_derivation_shape():
    alg = C.rxh3()
    der = I.skew_derivations(alg)
    assert der.dimension == 1
    d = der.basis[0].matrix
    e1, e2 = alg.basis_vector("e1"), alg.basis_vector("e2")
    eta = (d @ e1)[2]
    assert eta != 0 and is_zero(d @ e2 + eta * e1)


@pytest.mark.parametrize("name", ["h3_riemannian", "free3_neutral", "htype6"])
def test_inner_automorphism_matches_group_conjugation(name, rng):
    alg = C.algebra(name)
    for _ in range(3):
        w = rand_vec(rng, alg.dim)
        ad = I.inner_automorphism(alg, w).matrix
        assert is_zero(ad - qeye(alg.dim) - ad_matrix(alg, w))     # 2-step: exp(ad_w) = I + ad_w
        fd = C.conjugation_differential(alg, w)
        assert np.allclose(fd, to_float(ad), atol=1e-7)


def test_inner_automorphism_is_exponential_for_deeper_algebras():
    alg = C.iso7()
    w = alg.basis_vector("f0")
    ad = ad_matrix(alg, alg.basis_vector("e1"))
    got = I.inner_automorphism(alg, alg.basis_vector("e1")).matrix
    assert is_zero(got - (qeye(7) + ad + ad @ ad / 2))
    with pytest.raises(NotTwoStep):
        I.inner_automorphism(alg, w)     # ad_f0 is a rotation, not nilpotent


def test_ad_splitting_witness():
    s = C.free3_split()
    alg = s.algebra
    res = I.ad_splitting_test(s, alg.basis_vector("e1"))
    assert not res.preserves
    img = res.ad(res.witness)
    assert not s.complement.contains(img)
    # Ad(exp e1) e2 = e2 + [e1, e2] = e2 + e4
    assert is_zero(res.ad(alg.basis_vector("e2")) - alg.basis_vector("e2") - alg.basis_vector("e4"))
    assert I.ad_splitting_test(s, alg.basis_vector("e4")).preserves   # central w acts trivially
    with pytest.raises(NotTwoStep):
        I.ad_splitting_test(split_like_oscillator(), qarray([1, 0, 0, 0]))


def split_like_oscillator():
    from nilmetric.liealg import SplitAlgebra
    alg = C.oscillator4()
    z = center(alg)
    return SplitAlgebra(alg, z, Subspace.span([alg.basis_vector(i) for i in range(3)], 4))


def test_splitting_preservation_in_the_group():
    """dF^tau keeps the left-invariant distribution of span{e1,e2,e3}; diag(2,1,1,1,1,1/2) does not."""
    s = C.free3_split()
    pts = C.sample_points(15, 6, seed=5)
    assert C.left_invariant_splitting_defect(s, C.ftau_exact(3), pts) < 1e-12
    assert C.left_invariant_splitting_defect(s, FREE3_NONAUT, pts) > 1e-2


def test_nilradical():
    iso = C.iso7()
    nr = I.nilradical(iso)
    assert nr == Subspace.span([iso.basis_vector(x) for x in ("f1", "f2", "e1", "e2", "e3")], 7)
    assert I.is_nilpotent_ideal(iso, nr)
    n = C.iso7_n()
    assert I.is_subalgebra(iso, n)
    assert not I.contains_subalgebra(iso, nr, n)
    assert not I.contains_subalgebra(iso, derived_algebra(iso), n)
    assert I.contains_subalgebra(iso, nr, derived_algebra(iso))
    osc = C.oscillator4()
    assert I.nilradical(osc) == Subspace.span([osc.basis_vector(i) for i in (1, 2, 3)], 4)
    h = C.htype6()
    assert I.nilradical(h) == Subspace.full(6)
    with pytest.raises(NotSolvable):
        I.nilradical(C.iso7_printed())
