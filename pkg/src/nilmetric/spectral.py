"""Primary decomposition of the Ricci operator and the structural classifiers.

Generalized eigenspaces over C are represented by the rational primary
decomposition: for each monic irreducible factor ``p`` of the minimal
polynomial with multiplicity ``r``, the component is ``ker p(T)^r``.  A
quadratic factor's kernel is the real form of a conjugate eigenvalue pair,
and containment in v or z is unaffected by complexifying.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import polynomials as P
from .errors import DegenerateCenter, NilmetricError
from .exact import fmt, fmt_matrix, is_zero, nullspace, qeye
from .geometry import RicciData, j_family, ricci
from .liealg import (
    LinearMap,
    MetricLieAlgebra,
    SplitAlgebra,
    Subspace,
    center,
    restrict_metric,
    split,
    validate,
)

SPLIT_EQ_AUT = "SPLIT_EQ_AUT"
ISO_EQ_SPLIT = "ISO_EQ_SPLIT"
ISO_EQ_AUT = "ISO_EQ_AUT"
NEGATIVE_SCALAR = "NEGATIVE_SCALAR"
CONCLUSION_ORDER = (SPLIT_EQ_AUT, ISO_EQ_SPLIT, ISO_EQ_AUT, NEGATIVE_SCALAR)

CONCLUSION_TEXT = {
    SPLIT_EQ_AUT: "center non-degenerate: splitting-preserving isometries are exactly "
                  "the isometric automorphisms (Iso^spl = Iso^aut)",
    ISO_EQ_SPLIT: "every Ricci primary component lies in v or in z, which is sufficient "
                  "for every isometry to preserve the splitting (Iso = Iso^spl)",
    ISO_EQ_AUT: "pseudo-H-type: Iso = Iso^spl = Iso^aut",
    NEGATIVE_SCALAR: "pseudo-H-type: scalar curvature -pm/4 < 0",
}

NA = "not-applicable"


@dataclass(frozen=True)
class PolynomialData:
    char: P.Poly
    min: P.Poly
    char_factors: list
    min_factors: list


def char_min_polynomials(t: LinearMap | np.ndarray) -> PolynomialData:
    mat = t.matrix if isinstance(t, LinearMap) else np.asarray(t, dtype=object)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError("operator is not square")
    ch = P.charpoly(mat)
    mn = P.minpoly(mat)
    return PolynomialData(ch, mn, P.factor(ch), P.factor(mn))


@dataclass(frozen=True)
class PrimaryComponent:
    factor: P.Poly
    multiplicity: int
    subspace: Subspace

    @property
    def eigenvalue(self) -> Fraction | None:
        if P.degree(self.factor) == 1:
            return -self.factor[0]
        return None

    @property
    def label(self) -> str:
        return P.to_str(self.factor)


@dataclass(frozen=True)
class PrimaryDecomposition:
    components: tuple[PrimaryComponent, ...]
    char: P.Poly
    min: P.Poly

    def component(self, eigenvalue) -> PrimaryComponent:
        ev = Fraction(eigenvalue)
        return next(c for c in self.components if c.eigenvalue == ev)

    def digest(self) -> list[dict]:
        return [{
            "factor": c.label,
            "eigenvalue": fmt(c.eigenvalue) if c.eigenvalue is not None else None,
            "multiplicity": c.multiplicity,
            "dimension": c.subspace.dim,
        } for c in self.components]


def primary_decomposition(t: LinearMap | np.ndarray) -> PrimaryDecomposition:
    mat = t.matrix if isinstance(t, LinearMap) else np.asarray(t, dtype=object)
    n = mat.shape[0]
    data = char_min_polynomials(mat)
    comps = []
    for f, r in data.min_factors:
        kernel = nullspace(P.evaluate_matrix(P.power(f, r), mat), n)
        comps.append(PrimaryComponent(f, r, Subspace.span(kernel, n)))
    total = sum(c.subspace.dim for c in comps)
    if total != n:
        raise ArithmeticError(f"primary components have total dimension {total} != {n}")
    return PrimaryDecomposition(tuple(comps), data.char, data.min)


@dataclass(frozen=True)
class SplittingCriterion:
    holds: bool
    assignment: dict  # factor label -> "v" | "z" | "mixed"
    decomposition: PrimaryDecomposition


def splitting_criterion(s: SplitAlgebra, ric: RicciData | None = None) -> SplittingCriterion:
    """Does every Ricci primary component lie inside v or inside z?"""
    ric = ric or ricci(s)
    dec = primary_decomposition(ric.operator)
    assignment = {}
    for c in dec.components:
        if s.complement.contains_subspace(c.subspace):
            assignment[c.label] = "v"
        elif s.center.contains_subspace(c.subspace):
            assignment[c.label] = "z"
        else:
            assignment[c.label] = "mixed"
    return SplittingCriterion(all(a != "mixed" for a in assignment.values()), assignment, dec)


def is_pseudo_h_type(s: SplitAlgebra) -> bool:
    """j(u) j(w) + j(w) j(u) = -2 <u, w> I on all pairs of center basis vectors.

    Abelian algebras (v = 0) satisfy the identity vacuously and are excluded.
    """
    if not restrict_metric(s.algebra, s.center).nondegenerate:
        raise DegenerateCenter()
    if s.m == 0:
        return False
    jf = j_family(s)
    ident = qeye(s.m)
    for a in range(s.p):
        for b in range(a, s.p):
            ja, jb = jf.maps[a].matrix, jf.maps[b].matrix
            if not is_zero(ja @ jb + jb @ ja + 2 * s.z_gram[a, b] * ident):
                return False
    return True


@dataclass
class ClassificationReport:
    algebra: str
    nilpotency_step: int | None
    center_nondegenerate: bool | None
    pseudo_h_type: bool | None
    splitting_criterion_holds: bool | None
    ricci_nilpotent: bool | None
    scalar_curvature: Fraction | None
    eigen_summary: list | None
    structural_conclusions: list = field(default_factory=list)
    dims: dict | None = None
    ricci_operator: LinearMap | None = None
    ricci_v_block: LinearMap | None = None
    ricci_z_block: LinearMap | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def na(x, conv=lambda y: y):
            return NA if x is None else conv(x)

        mat = lambda m: fmt_matrix(m.matrix)  # noqa: E731
        return {
            "algebra": self.algebra,
            "nilpotency_step": na(self.nilpotency_step),
            "center_nondegenerate": na(self.center_nondegenerate),
            "pseudo_h_type": na(self.pseudo_h_type),
            "splitting_criterion_holds": na(self.splitting_criterion_holds),
            "ricci_nilpotent": na(self.ricci_nilpotent),
            "scalar_curvature": na(self.scalar_curvature, fmt),
            "eigen_summary": na(self.eigen_summary),
            "structural_conclusions": list(self.structural_conclusions),
            "dims": na(self.dims),
            "ricci_operator": na(self.ricci_operator, mat),
            "ricci_v_block": na(self.ricci_v_block, mat),
            "ricci_z_block": na(self.ricci_z_block, mat),
            "notes": list(self.notes),
        }


def classify(alg: MetricLieAlgebra) -> ClassificationReport:
    rep = validate(alg)
    step = rep.nilpotency_step if rep.jacobi_ok else None
    report = ClassificationReport(alg.name, step, None, None, None, None, None, None)
    if not rep.jacobi_ok:
        report.notes.append("Jacobi identity fails")
        return report
    if step is None or step > 2:
        report.notes.append("not 2-step nilpotent: Ricci formulas do not apply")
        return report

    z = center(alg)
    nondeg = restrict_metric(alg, z).nondegenerate
    report.center_nondegenerate = nondeg
    if not nondeg:
        report.notes.append("center degenerate: the Ricci formulas require a non-degenerate center")
        return report
    s = split(alg)
    report.dims = {"v": s.m, "z": s.p}
    ric = ricci(s)
    crit = splitting_criterion(s, ric)
    h_type = is_pseudo_h_type(s)
    report.ricci_operator = ric.operator
    report.ricci_v_block = ric.v_block
    report.ricci_z_block = ric.z_block
    report.scalar_curvature = ric.scalar
    report.pseudo_h_type = h_type
    report.splitting_criterion_holds = crit.holds
    report.ricci_nilpotent = all(x == 0 for x in crit.decomposition.min[:-1])
    report.eigen_summary = [dict(d, assignment=crit.assignment[d["factor"]])
                            for d in crit.decomposition.digest()]

    found = {SPLIT_EQ_AUT}
    if crit.holds:
        found.add(ISO_EQ_SPLIT)
    if h_type:
        found |= {ISO_EQ_AUT, NEGATIVE_SCALAR}
        expected = Fraction(-s.p * s.m, 4)
        if not crit.holds or ric.scalar != expected or not ric.scalar < 0:
            raise NilmetricError("internal inconsistency: pseudo-H-type algebra violates "
                                 f"the Ricci law (s={ric.scalar}, expected {expected})")
    report.structural_conclusions = [c for c in CONCLUSION_ORDER if c in found]
    if not crit.holds:
        report.notes.append("splitting criterion fails; this does not prove Iso != Iso^spl")
    return report
