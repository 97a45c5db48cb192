"""Left-invariant pseudo-Riemannian geometry at the Lie algebra level.

Adjoints ``ad*_u``, the j-maps of a 2-step algebra with non-degenerate
center, the Levi-Civita connection on left-invariant fields, the curvature of
a bi-invariant metric and the Ricci operator of a 2-step nilpotent metric
Lie algebra with non-degenerate center.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateCenter, NotBiInvariant, NotTwoStep, UnsupportedInput
from .exact import inv, is_zero, qzeros
from .liealg import (
    LinearMap,
    MetricLieAlgebra,
    SplitAlgebra,
    ad_matrix,
    bracket,
    is_ad_invariant,
    orthogonal_basis,
    restrict_metric,
    vec,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def ad_star(alg: MetricLieAlgebra, u) -> LinearMap:
    """Metric adjoint of ad_u: <ad*_u w, v> = <w, [u, v]>."""
    return LinearMap(alg.metric_inv @ ad_matrix(alg, u).T @ alg.metric)


def _require_orthogonal(split: SplitAlgebra) -> None:
    if not split.orthogonal:
        if not restrict_metric(split.algebra, split.center).nondegenerate:
            raise DegenerateCenter()
        raise UnsupportedInput("this construction needs the complement v = z^perp")


@dataclass(frozen=True, eq=False)
class JFamily:
    """j(w) for the canonical center basis, as matrices on complement coordinates."""

    split: SplitAlgebra
    maps: tuple[LinearMap, ...]

    def of_coords(self, a) -> LinearMap:
        a = vec(a, self.split.p)
        m = self.split.m
        out = qzeros(m, m)
        for coeff, jm in zip(a, self.maps):
            if coeff != 0:
                out = out + coeff * jm.matrix
        return LinearMap(out)

    def __call__(self, w) -> LinearMap:
        """j(w) for a center vector ``w`` given in ambient coordinates."""
        return self.of_coords(self.split.center.coordinates(w))

    def apply(self, w, u) -> np.ndarray:
        """j(w)u with w in z and u in v, both in ambient coordinates."""
        b = self.split.complement.coordinates(u)
        return self.split.from_v(self(w)(b))


def j_family(split: SplitAlgebra) -> JFamily:
    """Solve <j(w)u, u'> = <w, [u, u']> on the complement basis."""
    _require_orthogonal(split)
    alg = split.algebra
    gv_inv = inv(split.v_gram) if split.m else qzeros(0, 0)
    vb = split.v_basis
    maps = []
    for w in split.z_basis:
        k = qzeros(split.m, split.m)
        for b in range(split.m):
            for c in range(split.m):
                k[b, c] = alg.inner(w, bracket(alg, vb[b], vb[c]))
        maps.append(LinearMap(gv_inv @ k.T))
    return JFamily(split, tuple(maps))


def levi_civita(alg: MetricLieAlgebra, u, w) -> np.ndarray:
    """nabla_u w = 1/2 ([u, w] - ad*_u w - ad*_w u) for left-invariant fields."""
    u = vec(u, alg.dim)
    w = vec(w, alg.dim)
    return HALF * (bracket(alg, u, w) - ad_star(alg, u)(w) - ad_star(alg, w)(u))


def levi_civita_blocks(split: SplitAlgebra, u, w, jf: JFamily | None = None) -> np.ndarray:
    """Connection from the block formulas of a 2-step algebra with v = z^perp.

    nabla_u w = [u, w]/2 on v x v, -j(w)u/2 on v x z and z x v, 0 on z x z.
    """
    jf = jf or j_family(split)
    alg = split.algebra
    uv, uz = split.v_part(u), split.z_part(u)
    wv, wz = split.v_part(w), split.z_part(w)
    out = HALF * bracket(alg, uv, wv)
    if split.p:
        out = out - HALF * jf.apply(wz, uv) - HALF * jf.apply(uz, wv)
    return out


def curvature_biinvariant(alg: MetricLieAlgebra, u, w) -> LinearMap:
    """R(u, w) = -1/4 ad([u, w]) for an ad-invariant metric."""
    if not is_ad_invariant(alg):
        raise NotBiInvariant()
    return LinearMap(-QUARTER * ad_matrix(alg, bracket(alg, u, w)))


@dataclass(frozen=True, eq=False)
class RicciData:
    operator: LinearMap
    form: np.ndarray
    scalar: Fraction
    v_block: LinearMap
    z_block: LinearMap


def _require_two_step(alg: MetricLieAlgebra) -> None:
    step = alg.step
    if step is None or step > 2:
        raise NotTwoStep(f"algebra is not 2-step nilpotent (step {step})")


def ricci(split: SplitAlgebra, pivot: str = "largest") -> RicciData:
    """Ricci operator of a 2-step nilpotent algebra with non-degenerate center.

    On v: Rc = 1/2 sum_k (1/q_k) j(c_k)^2 over an exact orthogonal basis c_k
    of z with <c_k, c_k> = q_k, the square-root-free form of the usual
    orthonormal sum.  On z: <Rc u, u'> = -1/4 tr(j(u) j(u')).  Cross blocks
    vanish.
    """
    _require_orthogonal(split)
    alg = split.algebra
    _require_two_step(alg)
    jf = j_family(split)
    m, p = split.m, split.p

    rv = qzeros(m, m)
    if p:
        coords, norms = orthogonal_basis(split.z_gram, pivot)
        for c, qk in zip(coords, norms):
            jc = jf.of_coords(c).matrix
            rv = rv + (HALF / qk) * (jc @ jc)

    ric_z = qzeros(p, p)
    for a in range(p):
        for b in range(p):
            ric_z[a, b] = -QUARTER * np.trace(jf.maps[a].matrix @ jf.maps[b].matrix)
    rz = inv(split.z_gram) @ ric_z if p else qzeros(0, 0)

    blocks = qzeros(m + p, m + p)
    blocks[:m, :m] = rv
    blocks[m:, m:] = rz
    op = split.from_blocks(blocks)
    form = op.T @ alg.metric
    scalar = sum((op[i, i] for i in range(alg.dim)), Fraction(0))
    return RicciData(LinearMap(op), form, scalar, LinearMap(rv), LinearMap(rz))


def is_metric_compatible(alg: MetricLieAlgebra, u, v, w) -> bool:
    return is_zero(alg.inner(levi_civita(alg, u, v), w) + alg.inner(v, levi_civita(alg, u, w)))


def is_torsion_free(alg: MetricLieAlgebra, u, w) -> bool:
    return is_zero(levi_civita(alg, u, w) - levi_civita(alg, w, u) - bracket(alg, u, w))
