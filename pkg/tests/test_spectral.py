import json
from fractions import Fraction

import pytest

from nilmetric import catalog as C
from nilmetric import polynomials as P
from nilmetric.exact import qzeros
from nilmetric.liealg import Subspace, split
from nilmetric.spectral import (
    ISO_EQ_AUT, ISO_EQ_SPLIT, NA, NEGATIVE_SCALAR, SPLIT_EQ_AUT, char_min_polynomials, classify,
    is_pseudo_h_type, primary_decomposition, splitting_criterion,
)


def test_primary_decomposition_with_quadratic_factor():
    a = qzeros(5, 5)
    a[0, 1], a[1, 0] = Fraction(-1), Fraction(1)      # x^2 + 1
    a[2, 2] = a[3, 3] = Fraction(2)
    a[2, 3] = Fraction(1)                              # Jordan block for 2
    a[4, 4] = Fraction(-3)
    dec = primary_decomposition(a)
    dims = {c.label: (c.subspace.dim, c.multiplicity) for c in dec.components}
    assert dims == {"x + 3": (1, 1), "x - 2": (2, 2), "x^2 + 1": (2, 1)}
    total = Subspace.zero(5)
    for c in dec.components:
        total = total + c.subspace
        for v in c.subspace.basis:                    # invariant
            assert c.subspace.contains(a @ v)
    assert total.dim == 5
    data = char_min_polynomials(a)
    assert P.degree(data.char) == 5 and P.degree(data.min) == 5


def test_h3_lorentz_classification():
    rep = classify(C.h3_lorentz())
    assert rep.scalar_curvature == Fraction(1, 2)
    assert rep.structural_conclusions == [SPLIT_EQ_AUT, ISO_EQ_SPLIT]
    assert rep.pseudo_h_type is False and rep.splitting_criterion_holds is True
    d = rep.to_dict()
    assert d["scalar_curvature"] == "1/2"
    assert json.dumps(d) == json.dumps(classify(C.h3_lorentz()).to_dict())


@pytest.mark.parametrize("name,m,p", [("h3_riemannian", 2, 1), ("htype6", 4, 2),
                                      ("h3_pseudo_htype", 2, 1)])
def test_pseudo_h_type_law(name, m, p):
    rep = classify(C.algebra(name))
    assert rep.pseudo_h_type
    assert rep.scalar_curvature == Fraction(-p * m, 4)
    assert rep.structural_conclusions == [SPLIT_EQ_AUT, ISO_EQ_SPLIT, ISO_EQ_AUT, NEGATIVE_SCALAR]


def test_lorentz_heisenberg_is_not_pseudo_h_type():
    assert not is_pseudo_h_type(split(C.h3_lorentz()))


def test_rxh3_mixed_component():
    s = split(C.rxh3())
    crit = splitting_criterion(s)
    assert not crit.holds and crit.assignment == {"x": "mixed"}
    rep = classify(C.rxh3())
    assert rep.ricci_nilpotent and rep.scalar_curvature == 0
    assert ISO_EQ_SPLIT not in rep.structural_conclusions
    assert any("does not prove" in n for n in rep.notes)


@pytest.mark.parametrize("name,reason", [("free3_neutral", "center degenerate"),
                                         ("oscillator4", "not 2-step"),
                                         ("iso7_printed", "Jacobi")])
def test_not_applicable(name, reason):
    d = classify(C.algebra(name)).to_dict()
    assert d["scalar_curvature"] == NA and d["structural_conclusions"] == []
    assert any(reason in n for n in d["notes"])


def test_abelian_is_flat():
    rep = classify(C.abelian(1, 2))
    assert rep.scalar_curvature == 0 and rep.ricci_nilpotent
    assert rep.pseudo_h_type is False and rep.dims == {"v": 0, "z": 3}
    assert rep.structural_conclusions == [SPLIT_EQ_AUT, ISO_EQ_SPLIT]
