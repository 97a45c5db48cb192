"""Exact identities over seeded random rational inputs (hypothesis)."""
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nilmetric import catalog as C
from nilmetric.exact import qarray
from nilmetric.geometry import is_metric_compatible, is_torsion_free, j_family, ricci
from nilmetric.liealg import bracket, split

pytestmark = pytest.mark.properties

NONDEGENERATE = ["h3_riemannian", "h3_lorentz", "h3_pseudo_htype", "htype6", "rxh3"]
ALL = NONDEGENERATE + ["free3_neutral", "oscillator4", "iso7"]

SETTINGS = settings(max_examples=100, derandomize=True, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def vectors(n):
    return st.lists(rationals, min_size=n, max_size=n).map(qarray)


_ALGS = {name: C.algebra(name) for name in ALL}
_SPLITS = {name: split(_ALGS[name]) for name in NONDEGENERATE}
_J = {name: j_family(s) for name, s in _SPLITS.items()}
_RIC = {name: ricci(s) for name, s in _SPLITS.items()}


@pytest.mark.parametrize("name", ALL)
def test_connection_metric_compatible_and_torsion_free(name):
    alg = _ALGS[name]

    @SETTINGS
    @given(vectors(alg.dim), vectors(alg.dim), vectors(alg.dim))
    def prop(x, y, z):
        assert is_metric_compatible(alg, x, y, z)
        assert is_torsion_free(alg, x, y)

    prop()


@pytest.mark.parametrize("name", NONDEGENERATE)
def test_j_map_identity(name):
    s, jf = _SPLITS[name], _J[name]
    alg = s.algebra

    @SETTINGS
    @given(vectors(s.p), vectors(s.m), vectors(s.m))
    def prop(a, b1, b2):
        w, u1, u2 = s.from_z(a), s.from_v(b1), s.from_v(b2)
        assert alg.inner(jf.apply(w, u1), u2) == alg.inner(w, bracket(alg, u1, u2))

    prop()


@pytest.mark.parametrize("name", NONDEGENERATE)
def test_ricci_symmetric_and_block_preserving(name):
    s, ric = _SPLITS[name], _RIC[name]

    @SETTINGS
    @given(vectors(s.algebra.dim), vectors(s.algebra.dim), vectors(s.m), vectors(s.p))
    def prop(x, y, b, a):
        assert x @ ric.form @ y == y @ ric.form @ x
        assert s.complement.contains(ric.operator(s.from_v(b)))
        assert s.center.contains(ric.operator(s.from_z(a)))

    prop()
