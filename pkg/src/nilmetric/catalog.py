"""Built-in examples: exact metric Lie algebras, coordinate charts and maps.

Algebras are exact.  Charts and maps are evaluated in floating point and are
used for chart-level verification (pullback of the metric, compositions,
orbit structure).

Chart convention: a product ``dx dy`` of distinct coordinate differentials
means ``dx (x) dy + dy (x) dx``, so the coefficient of ``dx dy`` is
``g(d_x, d_y)``.  This is the convention under which the 4-dimensional metric
is bi-invariant on the oscillator group and the 6-dimensional one restricts to
the ad-invariant algebra metric ``g(d_i, d_j) = <e_i, e_j>`` at the origin.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact import qarray, qzeros, to_float
from .liealg import MetricLieAlgebra, SplitAlgebra, Subspace, split_with

H = Fraction(1, 2)

# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


def h3(metric_diag: Sequence, name: str) -> MetricLieAlgebra:
    g1, g2, g3 = metric_diag
    return MetricLieAlgebra.from_brackets(
        ["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}},
        {("e1", "e1"): g1, ("e2", "e2"): g2, ("e3", "e3"): g3}, name)


def h3_riemannian() -> MetricLieAlgebra:
    return h3((1, 1, 1), "h3_riemannian")


def h3_lorentz() -> MetricLieAlgebra:
    """-<e1,e1> = <e2,e2> = <e3,e3> = 1."""
    return h3((-1, 1, 1), "h3_lorentz")


def h3_pseudo_htype() -> MetricLieAlgebra:
    """Indefinite Heisenberg metric with j(e3)^2 = -<e3,e3> I."""
    return h3((1, -1, -1), "h3_pseudo_htype")


def htype6() -> MetricLieAlgebra:
    """H-type algebra on R^4 + R^2: j(z1), j(z2) are left multiplication by i, j on H.

    [u, u'] = sum_k <j(z_k) u, u'> z_k with the Euclidean metric.
    """
    li = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    lj = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    names = ["x1", "x2", "x3", "x4", "z1", "z2"]
    brackets = {}
    for a in range(4):
        for b in range(a + 1, 4):
            coeffs = {}
            for zname, jm in (("z1", li), ("z2", lj)):
                val = int(jm[:, a] @ np.eye(4, dtype=int)[:, b])  # <j(z) x_a, x_b>
                if val:
                    coeffs[zname] = val
            if coeffs:
                brackets[(names[a], names[b])] = coeffs
    metric = {(x, x): 1 for x in names}
    return MetricLieAlgebra.from_brackets(names, brackets, metric, "htype6")


def rxh3() -> MetricLieAlgebra:
    """R x H3 with <n0, e3> = 1/2 and <e1,e1> = <e2,e2> = 1."""
    return MetricLieAlgebra.from_brackets(
        ["n0", "e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}},
        {("n0", "e3"): H, ("e1", "e1"): 1, ("e2", "e2"): 1}, "rxh3")


def oscillator4() -> MetricLieAlgebra:
    """Oscillator algebra with its ad-invariant Lorentzian metric."""
    return MetricLieAlgebra.from_brackets(
        ["f0", "e1", "e2", "e3"],
        {("f0", "e1"): {"e2": 1}, ("f0", "e2"): {"e1": -1}, ("e1", "e2"): {"e3": 1}},
        {("f0", "e3"): 1, ("e1", "e1"): 1, ("e2", "e2"): 1}, "oscillator4")


ISO7_NAMES = ["f0", "f1", "f2", "e0", "e1", "e2", "e3"]

# the nine printed relations
ISO7_PRINTED = {
    ("f0", "f1"): {"f2": 1}, ("f0", "f2"): {"f1": -1}, ("f0", "e1"): {"e2": 1},
    ("f0", "e2"): {"e1": -1}, ("f1", "e2"): {"e3": 1}, ("f2", "e1"): {"e3": -1},
    ("e0", "e1"): {"e2": 1}, ("e0", "e2"): {"e1": -1}, ("e1", "e2"): {"e3": 1},
}

# The printed relations violate Jacobi on (f1, e0, e1) and (f2, e0, e2).  Every
# printed relation agrees with f_i acting on the e's as ad(e_i) (the isotropy
# identity component is the inner automorphism group); that identification
# supplies the two missing relations below.
ISO7_COMPLETION = {("f1", "e0"): {"e2": -1}, ("f2", "e0"): {"e1": 1}}


def iso7() -> MetricLieAlgebra:
    """Lie algebra of the isometry group of the 4-dimensional oscillator manifold.

    The printed bracket table plus the two relations forced by the Jacobi
    identity.  Only the bracket is meaningful; the metric is an identity
    placeholder.
    """
    brackets = {**ISO7_PRINTED, **ISO7_COMPLETION}
    return MetricLieAlgebra.from_brackets(ISO7_NAMES, brackets,
                                          {(x, x): 1 for x in ISO7_NAMES}, "iso7")


def iso7_printed() -> MetricLieAlgebra:
    """The printed table alone (fails the Jacobi identity)."""
    return MetricLieAlgebra.from_brackets(ISO7_NAMES, ISO7_PRINTED,
                                          {(x, x): 1 for x in ISO7_NAMES}, "iso7_printed")


def iso7_n() -> Subspace:
    """The nilpotent subalgebra span{f0 - e0, e1, e2, e3} of iso7."""
    alg = iso7()
    vecs = [alg.element({"f0": 1, "e0": -1})] + [alg.basis_vector(x) for x in ("e1", "e2", "e3")]
    return Subspace.span(vecs, alg.dim)


def free3_neutral() -> MetricLieAlgebra:
    """Free 2-step nilpotent algebra on 3 generators, <e1,e6> = <e3,e4> = -<e2,e5> = 1."""
    names = [f"e{i}" for i in range(1, 7)]
    return MetricLieAlgebra.from_brackets(
        names, {("e1", "e2"): {"e4": 1}, ("e1", "e3"): {"e5": 1}, ("e2", "e3"): {"e6": 1}},
        {("e1", "e6"): 1, ("e3", "e4"): 1, ("e2", "e5"): -1}, "free3_neutral")


def free3_split() -> SplitAlgebra:
    """free3_neutral with the totally isotropic complement span{e1, e2, e3}."""
    alg = free3_neutral()
    comp = Subspace.span([alg.basis_vector(i) for i in range(3)], 6)
    return split_with(alg, comp)


def abelian(p: int, q: int) -> MetricLieAlgebra:
    n = p + q
    names = [f"x{i + 1}" for i in range(n)]
    metric = {(x, x): (1 if i < p else -1) for i, x in enumerate(names)}
    return MetricLieAlgebra.from_brackets(names, {}, metric, f"abelian_{p}_{q}")


ALGEBRAS: dict[str, Callable[[], MetricLieAlgebra]] = {
    "h3_riemannian": h3_riemannian,
    "h3_lorentz": h3_lorentz,
    "h3_pseudo_htype": h3_pseudo_htype,
    "htype6": htype6,
    "rxh3": rxh3,
    "oscillator4": oscillator4,
    "iso7": iso7,
    "iso7_printed": iso7_printed,
    "free3_neutral": free3_neutral,
}

_ABELIAN = re.compile(r"abelian_(\d+)_(\d+)$")


def algebra(name: str) -> MetricLieAlgebra:
    if name in ALGEBRAS:
        return ALGEBRAS[name]()
    m = _ABELIAN.match(name)
    if m and int(m.group(1)) + int(m.group(2)) > 0:
        return abelian(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown builtin algebra {name!r}")


# ---------------------------------------------------------------------------
# charts and maps
# ---------------------------------------------------------------------------

FD_STEP = 1e-6
TOL_FD = 1e-6
TOL_CLOSED = 1e-10


@dataclass(frozen=True)
class CoordinateChart:
    dim: int
    metric_at: Callable[[np.ndarray], np.ndarray]
    name: str = ""


@dataclass(frozen=True)
class SmoothMap:
    dim: int
    apply: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    @property
    def closed_form(self) -> bool:
        return self.jacobian is not None

    def __call__(self, p) -> np.ndarray:
        return self.apply(np.asarray(p, dtype=float))

    def jacobian_at(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.jacobian is not None:
            return self.jacobian(p)
        return finite_difference_jacobian(self.apply, p)

    def fd_jacobian_at(self, p) -> np.ndarray:
        return finite_difference_jacobian(self.apply, np.asarray(p, dtype=float))


def finite_difference_jacobian(f: Callable, p: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    cols = []
    for i in range(p.size):
        e = np.zeros_like(p)
        e[i] = h
        cols.append((f(p + e) - f(p - e)) / (2 * h))
    return np.column_stack(cols)


J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
S2 = np.diag([-1.0, 1.0])


def rot(t: float) -> np.ndarray:
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]])


def _tvz(p):
    return p[0], p[1:3], p[3]


def _pack(t, v, z) -> np.ndarray:
    return np.array([t, v[0], v[1], z])


def chart_m4(coupling: float = 1.0) -> CoordinateChart:
    """g = dt (dz + y/2 dx - x/2 dy) + dx^2 + dy^2 on R^4, coordinates (t, x, y, z).

    ``coupling`` is g(d_t, d_z).  The default 1 reads ``dt dz`` as
    dt (x) dz + dz (x) dt; it is the only scale for which the metric is
    bi-invariant on the oscillator group, i.e. for which the conjugations
    chi_g and the maps psi_2, psi_3 are isometries.  ``coupling = 1/2`` is the
    averaged symmetric product (kept as ``chartM4_half``).
    """
    k = float(coupling)

    def metric_at(p):
        _t, x, y, _z = p
        return np.array([[0.0, k * y / 2, -k * x / 2, k],
                         [k * y / 2, 1.0, 0.0, 0.0],
                         [-k * x / 2, 0.0, 1.0, 0.0],
                         [k, 0.0, 0.0, 0.0]])
    return CoordinateChart(4, metric_at, "chartM4" if k == 1.0 else f"chartM4(coupling={k:g})")


def chart_m6() -> CoordinateChart:
    """g = dx1 dx6 + dx3 dx4 - dx2 dx5 with g(d_i, d_j) = <e_i, e_j>."""
    g = to_float(free3_neutral().metric)
    return CoordinateChart(6, lambda _p: g.copy(), "chartM6")


def LN(t1: float, v1, z1: float) -> SmoothMap:
    """Left translation of the nilpotent group N = R x H3."""
    v1 = np.asarray(v1, dtype=float)

    def apply(p):
        t2, v2, z2 = _tvz(p)
        return _pack(t1 + t2, v1 + v2, z1 + z2 + 0.5 * v1 @ J2 @ v2)

    def jac(_p):
        x1, y1 = v1
        out = np.eye(4)
        out[3, 1], out[3, 2] = -0.5 * y1, 0.5 * x1
        return out

    return SmoothMap(4, apply, jac, f"LN({t1},{tuple(v1)},{z1})")


def LG(t1: float, v1, z1: float) -> SmoothMap:
    """Left translation of the oscillator group G."""
    v1 = np.asarray(v1, dtype=float)
    r = rot(t1)

    def apply(p):
        t2, v2, z2 = _tvz(p)
        return _pack(t1 + t2, v1 + r @ v2, z1 + z2 + 0.5 * v1 @ J2 @ r @ v2)

    def jac(_p):
        x1, y1 = v1
        c, s = np.cos(t1), np.sin(t1)
        out = np.eye(4)
        out[1:3, 1:3] = r
        out[3, 1] = 0.5 * (x1 * s - y1 * c)
        out[3, 2] = 0.5 * (x1 * c + y1 * s)
        return out

    return SmoothMap(4, apply, jac, f"LG({t1},{tuple(v1)},{z1})")


def chi(t0: float, v0, z0: float = 0.0) -> SmoothMap:
    """Conjugation by g = (t0, v0, z0) in G."""
    v0 = np.asarray(v0, dtype=float)
    r0 = rot(t0)

    def apply(p):
        t, v, z = _tvz(p)
        rt = rot(t)
        vv = v0 + r0 @ v - rt @ v0
        zz = (z + 0.5 * v0 @ J2 @ r0 @ v - 0.5 * v0 @ J2 @ rt @ v0
              - 0.5 * (r0 @ v) @ J2 @ rt @ v0)
        return _pack(t, vv, zz)

    return SmoothMap(4, apply, None, f"chi({t0},{tuple(v0)},{z0})")


def psi1() -> SmoothMap:
    return SmoothMap(4, lambda p: _pack(-p[0], S2 @ p[1:3], -p[3]), None, "psi1")


def psi2() -> SmoothMap:
    return SmoothMap(4, lambda p: _pack(-p[0], rot(-p[0]) @ p[1:3], -p[3]), None, "psi2")


def psi3() -> SmoothMap:
    return SmoothMap(4, lambda p: _pack(p[0], S2 @ rot(-p[0]) @ p[1:3], p[3]), None, "psi3")


def ftau_matrix(tau: float) -> np.ndarray:
    c, s = np.cosh(tau), np.sinh(tau)
    return _ftau(c, s, np.zeros((6, 6)))


def ftau_exact(k) -> np.ndarray:
    """dF^tau at 0 exactly, with tau = ln k: cosh = (k + 1/k)/2, sinh = (k - 1/k)/2."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    return _ftau((k + 1 / k) / 2, (k - 1 / k) / 2, qzeros(6, 6))


def _ftau(c, s, out):
    # rows: images of coordinates x1..x6 (0-based)
    out[0, 0], out[0, 2] = c, s
    out[1, 1] = 1
    out[2, 0], out[2, 2] = s, c
    out[3, 3], out[3, 5] = c, -s
    out[4, 4] = 1
    out[5, 3], out[5, 5] = -s, c
    if out.dtype == object:
        return qarray(out)
    return out


def Ftau(tau: float) -> SmoothMap:
    m = ftau_matrix(tau)
    return SmoothMap(6, lambda p: m @ p, lambda _p: m.copy(), f"Ftau({tau})")


FTAU_BLOCK_ORDER = [0, 2, 3, 5, 1, 4]  # d1, d3, d4, d6, d2, d5


def ftau_block_form(tau: float) -> np.ndarray:
    """dF^tau in the ordered basis (d1, d3, d4, d6, d2, d5)."""
    m = ftau_matrix(tau)
    return m[np.ix_(FTAU_BLOCK_ORDER, FTAU_BLOCK_ORDER)]


def identity_map(dim: int) -> SmoothMap:
    return SmoothMap(dim, lambda p: np.array(p, dtype=float), lambda _p: np.eye(dim), "id")


MAPS = {"psi1": psi1, "psi2": psi2, "psi3": psi3}
MAP_FAMILIES = {"LG": LG, "LN": LN, "chi": chi, "Ftau": Ftau}
CHARTS = {"chartM4": chart_m4, "chartM4_half": lambda: chart_m4(0.5), "chartM6": chart_m6}


def builtin(name: str):
    """Algebra, subspace, chart, map or map family by catalog name."""
    if name in CHARTS:
        return CHARTS[name]()
    if name in MAPS:
        return MAPS[name]()
    if name in MAP_FAMILIES:
        return MAP_FAMILIES[name]
    if name == "iso7_n":
        return iso7_n()
    if name == "free3_split":
        return free3_split()
    return algebra(name)


def catalog_names() -> dict[str, list[str]]:
    return {
        "algebras": sorted(ALGEBRAS) + ["abelian_<p>_<q>"],
        "subspaces": ["iso7_n"],
        "splittings": ["free3_split"],
        "charts": sorted(CHARTS),
        "maps": sorted(MAPS),
        "map_families": sorted(MAP_FAMILIES),
    }


# ---------------------------------------------------------------------------
# chart-level checks
# ---------------------------------------------------------------------------

def compose_maps(f: SmoothMap, g: SmoothMap) -> SmoothMap:
    """f o g with the chain-rule Jacobian."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")

    def jac(p):
        return f.jacobian_at(g(p)) @ g.jacobian_at(p)

    closed = jac if (f.closed_form and g.closed_form) else None
    return SmoothMap(f.dim, lambda p: f(g(p)), closed, f"{f.name}o{g.name}")


@dataclass(frozen=True)
class PullbackResult:
    ok: bool
    max_defect: float
    tolerance: float


def pullback_isometry_check(chart: CoordinateChart, f: SmoothMap, points) -> PullbackResult:
    """max |J^T g(f(p)) J - g(p)| over the samples, J the Jacobian of f at p."""
    if chart.dim != f.dim:
        raise ValueError("dimension mismatch between chart and map")
    tol = TOL_CLOSED if f.closed_form else TOL_FD
    worst = 0.0
    for p in np.atleast_2d(np.asarray(points, dtype=float)):
        if p.size != chart.dim:
            raise ValueError("sample point has the wrong dimension")
        jac = f.jacobian_at(p)
        defect = jac.T @ chart.metric_at(f(p)) @ jac - chart.metric_at(p)
        worst = max(worst, float(np.max(np.abs(defect))))
    return PullbackResult(worst <= tol, worst, tol)


def sample_points(n: int, dim: int, seed: int = 0, scale: float = 2.0) -> np.ndarray:
    return np.random.default_rng(seed).uniform(-scale, scale, size=(n, dim))


def orbit_map(w, z: float, v) -> SmoothMap:
    """L^G_(0, w, z) o chi_(0, v, 0), a generic element of the nilradical group."""
    return compose_maps(LG(0.0, w, z), chi(0.0, v, 0.0))


def solve_orbit_parameters(point, target, v) -> tuple[np.ndarray, float]:
    """(w, z) with L^G_(0,w,z) chi_(0,v,0)(point) = target; t-coordinates must agree."""
    q = chi(0.0, v, 0.0)(point)
    target = np.asarray(target, dtype=float)
    if abs(q[0] - target[0]) > 1e-12:
        raise ValueError("target lies in a different orbit (t differs)")
    # L^G_(0,w,z)(t, v', z') = (t, w + v', z + z' + 1/2 w^T J v')
    w = target[1:3] - q[1:3]
    z = target[3] - q[3] - 0.5 * w @ J2 @ q[1:3]
    return w, float(z)


@dataclass(frozen=True)
class OrbitCheck:
    ok: bool
    t_defect: float
    reach_defect: float
    targets: int


def nilradical_orbit_check(points, generators, targets: int = 20, seed: int = 0,
                           tol: float = 1e-12) -> OrbitCheck:
    """Orbits of the nilradical group are the slices t = const.

    ``generators`` is a list of (w, z, v) parameters.  Every generated map must
    fix the t-coordinate of every point; and for ``targets`` random points
    (t0, v*, z*) parameters are solved for that carry a sample point with
    t = t0 onto the target.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    t_defect = 0.0
    for w, z, v in generators:
        f = orbit_map(w, z, v)
        for p in pts:
            t_defect = max(t_defect, abs(f(p)[0] - p[0]))
    rng = np.random.default_rng(seed)
    reach = 0.0
    for k in range(targets):
        start = pts[k % len(pts)]
        target = np.concatenate([[start[0]], rng.uniform(-3, 3, size=3)])
        v = rng.uniform(-2, 2, size=2)
        w, z = solve_orbit_parameters(start, target, v)
        reach = max(reach, float(np.max(np.abs(orbit_map(w, z, v)(start) - target))))
    return OrbitCheck(t_defect <= tol and reach <= 1e-10, t_defect, reach, targets)


# ---------------------------------------------------------------------------
# 2-step groups in exponential coordinates
# ---------------------------------------------------------------------------

def exp_product(alg: MetricLieAlgebra, p, q) -> np.ndarray:
    """exp(p) exp(q) = exp(p + q + 1/2 [p, q]) for a 2-step algebra (floats)."""
    c = to_float(alg.structure)
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    return p + q + 0.5 * np.einsum("i,j,ijk->k", p, q, c)


def conjugation_differential(alg: MetricLieAlgebra, w, h: float = 1e-6) -> np.ndarray:
    """Finite-difference differential at 0 of x -> exp(w) x exp(-w) (2-step)."""
    w = _floats(w)
    return finite_difference_jacobian(
        lambda x: exp_product(alg, exp_product(alg, w, x), -w), np.zeros(alg.dim), h)


def left_invariant_splitting_defect(s: SplitAlgebra, a, points) -> float:
    """How far the linear map ``a`` (in exponential coordinates) is from preserving
    the left-invariant distribution v N.

    At p the distribution is {b + 1/2 [p, b] : b in v}.  Returns the largest
    least-squares residual of a(b + 1/2 [p, b]) against the distribution at a p.
    """
    alg = s.algebra
    a = _floats(a)
    c = to_float(alg.structure)
    vb = to_float(s.v_basis)
    worst = 0.0
    for p in np.atleast_2d(np.asarray(points, dtype=float)):
        def frame(x):
            return vb + 0.5 * np.einsum("i,bj,ijk->bk", x, vb, c)
        img = frame(p) @ a.T
        target = frame(a @ p).T
        coef, *_ = np.linalg.lstsq(target, img.T, rcond=None)
        worst = max(worst, float(np.max(np.abs(target @ coef - img.T))))
    return worst



def _floats(x) -> np.ndarray:
    arr = np.asarray(x)
    return to_float(arr) if arr.dtype == object else arr.astype(float)
