"""Geodesics through the identity in exponential coordinates.

For a 2-step nilpotent algebra with non-degenerate center and v = z^perp, the
geodesic with initial velocity w + u (w in v, u in z) is n(t) = exp(b(t) + a(t))
with

    b'' = j(u) b',        a' + 1/2 [b', b] = u.

The first equation is linear with constant coefficients, so
b'(t) = expm(t j(u)) w in closed form; b and a follow by integration.
Coordinates of b and a are taken in the canonical bases of v and z.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec, solve_ivp
from scipy.linalg import expm

from .errors import NotBiInvariant, UnsupportedInput
from .exact import is_zero, to_float
from .geometry import _require_two_step, ad_star, j_family, levi_civita
from .liealg import MetricLieAlgebra, SplitAlgebra, ad_matrix, bracket, is_ad_invariant, vec

QUAD_EPSABS = 1e-11
QUAD_EPSREL = 1e-12


@dataclass(frozen=True, eq=False)
class GeodesicCurve:
    split: SplitAlgebra
    w: np.ndarray            # initial v-velocity, ambient coordinates (exact)
    u: np.ndarray            # initial z-velocity, ambient coordinates (exact)
    t: np.ndarray            # sample times
    b: np.ndarray            # (N, m) complement coordinates
    a: np.ndarray            # (N, p) center coordinates
    bdot: np.ndarray         # (N, m)
    adot: np.ndarray         # (N, p)
    jmat: np.ndarray         # j(u) on complement coordinates (float)
    bracket_vv: np.ndarray   # (m, m, p): center coordinates of [v_i, v_j]

    @property
    def max_residual(self) -> float:
        return geodesic_residual(self)

    def ambient(self) -> np.ndarray:
        """Exponential coordinates b + a in the ambient basis, shape (N, n)."""
        vb = to_float(self.split.v_basis) if self.split.m else np.zeros((0, self.split.algebra.dim))
        zb = to_float(self.split.z_basis) if self.split.p else np.zeros((0, self.split.algebra.dim))
        return self.b @ vb + self.a @ zb

    def first_integral_defect(self) -> float:
        """max_t |a' + 1/2 [b', b] - u| (should vanish identically)."""
        u = to_float(self.split.decompose(self.u)[1])
        comm = np.einsum("ti,tj,ijk->tk", self.bdot, self.b, self.bracket_vv)
        return float(np.max(np.linalg.norm(self.adot + 0.5 * comm - u, axis=1), initial=0.0))

    def speed(self) -> np.ndarray:
        """<sigma, sigma> with sigma = b' + u, evaluated in coordinates."""
        gv = to_float(self.split.v_gram)
        gz = to_float(self.split.z_gram)
        u = to_float(self.split.decompose(self.u)[1])
        return np.einsum("ti,ij,tj->t", self.bdot, gv, self.bdot) + u @ gz @ u

    def to_csv(self) -> str:
        m, p = self.b.shape[1], self.a.shape[1]
        header = ["t"] + [f"b_{i + 1}" for i in range(m)] + [f"a_{k + 1}" for k in range(p)] + ["residual"]
        res = pointwise_residual(self)
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for i in range(len(self.t)):
            row = [self.t[i], *self.b[i], *self.a[i], res[i]]
            buf.write(",".join(f"{x:.17g}" for x in row) + "\n")
        return buf.getvalue()


def _bracket_tensor(split: SplitAlgebra) -> np.ndarray:
    alg = split.algebra
    m, p = split.m, split.p
    out = np.zeros((m, m, p))
    for i in range(m):
        for j in range(m):
            br = bracket(alg, split.v_basis[i], split.v_basis[j])
            bc, ac = split.decompose(br)
            if not is_zero(bc):
                raise UnsupportedInput("[v, v] is not central; the algebra is not 2-step")
            out[i, j] = to_float(ac)
    return out


def geodesic(split: SplitAlgebra, w, u, t_grid) -> GeodesicCurve:
    """Geodesic from the identity with initial velocity w + u on the grid ``t_grid``."""
    alg = split.algebra
    _require_two_step(alg)
    jf = j_family(split)  # requires v = z^perp and a non-degenerate center
    w, u = vec(w, alg.dim), vec(u, alg.dim)
    if not split.complement.contains(w):
        raise ValueError("w must lie in the complement v")
    if not split.center.contains(u):
        raise ValueError("u must lie in the center z")
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be increasing and start at 0")
    m, p = split.m, split.p
    jmat = to_float(jf(u).matrix) if p else np.zeros((m, m))
    w0 = to_float(split.complement.coordinates(w))
    u0 = to_float(split.center.coordinates(u))
    brt = _bracket_tensor(split)

    # b' = expm(tJ) w and b = int_0^t expm(sJ) w ds from one augmented exponential
    aug = np.zeros((m + 1, m + 1))
    aug[:m, :m] = jmat
    aug[:m, m] = w0
    bdot = np.empty((t.size, m))
    b = np.empty((t.size, m))
    for i, ti in enumerate(t):
        e = expm(ti * aug)
        bdot[i] = e[:m, :m] @ w0
        b[i] = e[:m, m]

    def adot_at(s: float) -> np.ndarray:
        e = expm(s * aug)
        return u0 - 0.5 * np.einsum("i,j,ijk->k", e[:m, :m] @ w0, e[:m, m], brt)

    a = np.zeros((t.size, p))
    for i in range(1, t.size):
        if p:
            inc, _err = quad_vec(adot_at, t[i - 1], t[i], epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL)
            a[i] = a[i - 1] + inc
    adot = u0 - 0.5 * np.einsum("ti,tj,ijk->tk", bdot, b, brt)
    return GeodesicCurve(split, w, u, t, b, a, bdot, adot, jmat, brt)


def _fd_weights(t: np.ndarray, i: int):
    hm, hp = t[i] - t[i - 1], t[i + 1] - t[i]
    d1 = (-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp)))
    d2 = (2 / (hm * (hm + hp)), -2 / (hm * hp), 2 / (hp * (hm + hp)))
    return d1, d2


def pointwise_residual(curve: GeodesicCurve) -> np.ndarray:
    """|b'' - j(u) b'| + |a' + 1/2 [b', b] - u| by centered differences; NaN at endpoints."""
    t, b, a = curve.t, curve.b, curve.a
    u0 = to_float(curve.split.center.coordinates(curve.u))
    out = np.full(t.size, np.nan)
    for i in range(1, t.size - 1):
        d1, d2 = _fd_weights(t, i)
        win_b, win_a = b[i - 1:i + 2], a[i - 1:i + 2]
        bd = np.tensordot(d1, win_b, axes=1)
        bdd = np.tensordot(d2, win_b, axes=1)
        ad = np.tensordot(d1, win_a, axes=1)
        r1 = bdd - curve.jmat @ bd
        r2 = ad + 0.5 * np.einsum("i,j,ijk->k", bd, b[i], curve.bracket_vv) - u0
        out[i] = np.linalg.norm(r1) + np.linalg.norm(r2)
    return out


def geodesic_residual(curve: GeodesicCurve) -> float:
    if curve.t.size < 5:
        raise ValueError("the residual needs at least 5 samples")
    return float(np.nanmax(pointwise_residual(curve)))


def corrupted(curve: GeodesicCurve, scale: float) -> GeodesicCurve:
    """Copy of ``curve`` with b scaled, for sensitivity checks."""
    return GeodesicCurve(curve.split, curve.w, curve.u, curve.t, curve.b * scale, curve.a,
                         curve.bdot * scale, curve.adot, curve.jmat, curve.bracket_vv)


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleSolution:
    x: np.ndarray       # (N, n) exponential coordinates
    xdot: np.ndarray    # (N, n) their time derivatives
    sigma: np.ndarray   # (N, n) left-trivialized velocity


def euler_arnold_oracle(alg: MetricLieAlgebra, x0, t_grid, rtol: float = 1e-13,
                        atol: float = 1e-13) -> OracleSolution:
    """Geodesic with initial velocity ``x0`` by direct numerical integration.

    Integrates the left-trivialized geodesic equation sigma' = ad*_sigma sigma
    together with X' = sigma + 1/2 [X, sigma] (exponential coordinates of a
    2-step group) by an adaptive Runge-Kutta method.  Uses only the metric
    and the brackets: no j-maps, no splitting.
    """
    _require_two_step(alg)
    n = alg.dim
    c = to_float(alg.structure)
    gm = to_float(alg.metric)
    ginv = to_float(alg.metric_inv)

    def parts(y):
        x, s = y[:n], y[n:]
        ad_s = np.einsum("i,ijk->kj", s, c)  # matrix of ad_s
        sdot = ginv @ ad_s.T @ gm @ s
        xdot = s + 0.5 * np.einsum("i,j,ijk->k", x, s, c)
        return xdot, sdot

    t = np.asarray(t_grid, dtype=float)
    y0 = np.concatenate([np.zeros(n), to_float(vec(x0, n))])
    sol = solve_ivp(lambda _t, y: np.concatenate(parts(y)), (t[0], t[-1]), y0,
                    method="DOP853", t_eval=t, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"oracle integration failed: {sol.message}")
    ys = sol.y.T
    xdot = np.array([parts(y)[0] for y in ys])
    return OracleSolution(ys[:, :n], xdot, ys[:, n:])


# ---------------------------------------------------------------------------
# bi-invariant metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BiinvariantGeodesic:
    u: np.ndarray
    t: np.ndarray
    points: np.ndarray          # (N, n) exponential coordinates t*u
    nabla_defect: np.ndarray    # nabla_u u, exact


def biinvariant_geodesic(alg: MetricLieAlgebra, u, t_grid) -> BiinvariantGeodesic:
    """One-parameter subgroup t -> exp(t u), with the exact check nabla_u u = 0."""
    if not is_ad_invariant(alg):
        raise NotBiInvariant()
    u = vec(u, alg.dim)
    t = np.asarray(t_grid, dtype=float)
    defect = levi_civita(alg, u, u)
    # for ad-invariant metrics ad*_u = -ad_u, hence nabla_u u = 1/2 [u, u] = 0
    if not is_zero(ad_star(alg, u).matrix + ad_matrix(alg, u)):
        raise ArithmeticError("ad-invariance check is inconsistent")
    return BiinvariantGeodesic(u, t, np.outer(t, to_float(u)), defect)

