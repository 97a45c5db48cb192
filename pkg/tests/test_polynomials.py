from fractions import Fraction

from nilmetric import polynomials as P
from nilmetric.exact import det, is_zero, qeye, qzeros
from conftest import rand_mat


def test_arithmetic():
    a = P.from_roots([1, 2])
    assert a == P.poly([2, -3, 1])
    quo, rem = P.divmod_poly(a, P.poly([-1, 1]))
    assert quo == P.poly([-2, 1]) and rem == ()
    assert P.gcd(a, P.from_roots([2, 5])) == P.poly([-2, 1])
    assert P.to_str(P.poly([Fraction(-1, 2), 1])) == "x - 1/2"


def test_charpoly_against_det_at_sample_points(rng):
    for _ in range(8):
        a = rand_mat(rng, 4)
        ch = P.charpoly(a)
        assert P.degree(ch) == 4 and ch[-1] == 1
        for t in (Fraction(0), Fraction(1, 3), Fraction(-2), Fraction(7, 5), Fraction(5)):
            assert P.evaluate(ch, t) == det(t * qeye(4) - a)


def test_minpoly_annihilates_and_divides_charpoly(rng):
    for _ in range(8):
        a = rand_mat(rng, 3)
        b = qzeros(6, 6)
        b[:3, :3] = a
        b[3:, 3:] = a          # repeated block: minpoly has degree <= 3
        mn = P.minpoly(b)
        assert is_zero(P.evaluate_matrix(mn, b))
        assert P.degree(mn) <= 3
        assert P.divmod_poly(P.charpoly(b), mn)[1] == ()


def test_minpoly_of_nilpotent_jordan_block():
    n = qzeros(3, 3)
    n[0, 1] = n[1, 2] = Fraction(1)
    assert P.minpoly(n) == P.poly([0, 0, 0, 1])


def test_factor_linear_and_irreducible_quadratic():
    p = P.mul(P.power(P.poly([-1, 2]), 2), P.poly([1, 0, 1]))   # (2x-1)^2 (x^2+1)
    fac = P.factor(p)
    assert (P.poly([Fraction(-1, 2), 1]), 2) in fac
    assert (P.poly([1, 0, 1]), 1) in fac
    prod = P.poly([1])
    for f, m in fac:
        prod = P.mul(prod, P.power(f, m))
    assert prod == P.monic(p)


def test_factor_quartic_into_quadratics():
    p = P.mul(P.poly([2, 0, 1]), P.poly([-3, 0, 1]))   # (x^2+2)(x^2-3)
    fac = P.factor(p)
    assert sorted(f for f, _ in fac) == sorted([P.poly([2, 0, 1]), P.poly([-3, 0, 1])])
