"""End-to-end checks for the worked examples.

Each block returns a list of :class:`Check` records.  The same blocks back the
``check-example`` CLI command and the acceptance test-suite.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import catalog as C
from . import geodesics as G
from . import isometry as I
from .exact import fmt, fmt_matrix, is_zero, qarray, qeye, qzeros
from .geometry import is_metric_compatible, is_torsion_free, j_family, ricci
from .liealg import (
    MetricLieAlgebra,
    Subspace,
    bracket,
    center,
    derived_algebra,
    is_ad_invariant,
    restrict_metric,
    split,
    split_with,
    validate,
)
from .spectral import ISO_EQ_AUT, NEGATIVE_SCALAR, classify, splitting_criterion


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class BlockResult:
    example: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    def to_dict(self) -> dict:
        return {"example": self.example, "ok": self.ok, "seconds": round(self.seconds, 3),
                "checks": [c.to_dict() for c in self.checks]}


def _rand_q(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _rand_vec(rng: random.Random, n: int) -> np.ndarray:
    return qarray([_rand_q(rng) for _ in range(n)])


def _rand_in(rng: random.Random, s: Subspace) -> np.ndarray:
    if s.dim == 0:
        return qzeros(s.ambient_dim)
    return _rand_vec(rng, s.dim) @ s.basis


# ---------------------------------------------------------------------------
# 1. Lorentzian Heisenberg
# ---------------------------------------------------------------------------

def check_h3_lorentz(res: BlockResult) -> None:
    alg = C.h3_lorentz()
    rep = classify(alg)
    s = split(alg)
    v_block = rep.ricci_v_block.matrix
    z_block = rep.ricci_z_block.matrix
    res.add("Rc|v = 1/2 I", is_zero(v_block - Fraction(1, 2) * qeye(2)), str(fmt_matrix(v_block)))
    e3 = alg.basis_vector("e3")
    res.add("Rc e3 = -1/2 e3", is_zero(rep.ricci_operator(e3) + Fraction(1, 2) * e3),
            str(fmt_matrix(z_block)))
    res.add("s = 1/2", rep.scalar_curvature == Fraction(1, 2), fmt(rep.scalar_curvature))
    res.add("splitting criterion holds", rep.splitting_criterion_holds is True)
    res.add("not pseudo-H-type", rep.pseudo_h_type is False)
    jm = j_family(s).maps[0].matrix
    res.add("j(e3)^2 = I", is_zero(jm @ jm - qeye(2)))


# ---------------------------------------------------------------------------
# 2. pseudo-H-type law
# ---------------------------------------------------------------------------

def check_pseudo_htype(res: BlockResult) -> None:
    for alg in (C.h3_riemannian(), C.htype6(), C.h3_pseudo_htype()):
        rep = classify(alg)
        m, p = rep.dims["v"], rep.dims["z"]
        tag = f"{alg.name} (m={m}, p={p})"
        res.add(f"{tag}: pseudo-H-type", rep.pseudo_h_type is True)
        res.add(f"{tag}: Rc|v = -(p/2) I",
                is_zero(rep.ricci_v_block.matrix + Fraction(p, 2) * qeye(m)))
        res.add(f"{tag}: Rc|z = (m/4) I",
                is_zero(rep.ricci_z_block.matrix - Fraction(m, 4) * qeye(p)))
        res.add(f"{tag}: s = -pm/4", rep.scalar_curvature == Fraction(-p * m, 4),
                fmt(rep.scalar_curvature))
        res.add(f"{tag}: splitting criterion holds", rep.splitting_criterion_holds is True)
        res.add(f"{tag}: conclusions include ISO_EQ_AUT and NEGATIVE_SCALAR",
                {ISO_EQ_AUT, NEGATIVE_SCALAR} <= set(rep.structural_conclusions),
                ",".join(rep.structural_conclusions))


# ---------------------------------------------------------------------------
# 3. R x H3
# ---------------------------------------------------------------------------

def check_rxh3(res: BlockResult) -> None:
    alg = C.rxh3()
    s = split(alg)
    ric = ricci(s)
    op = ric.operator.matrix
    res.add("Rc != 0", not is_zero(op), str(fmt_matrix(op)))
    res.add("Rc^2 = 0", is_zero(op @ op))
    res.add("s = 0", ric.scalar == 0, fmt(ric.scalar))
    crit = splitting_criterion(s, ric)
    res.add("splitting criterion fails", not crit.holds)
    res.add("factor x is mixed", crit.assignment.get("x") == "mixed", str(crit.assignment))
    der = I.skew_derivations(alg)
    res.add("skew derivations: dimension 1", der.dimension == 1, str(der.dimension))
    if der.dimension == 1:
        d = der.basis[0].matrix
        e1, e2 = alg.basis_vector("e1"), alg.basis_vector("e2")
        eta = (d @ e1)[2]
        shape_ok = (eta != 0 and is_zero(d @ e1 - eta * e2) and is_zero(d @ e2 + eta * e1)
                    and is_zero(d @ alg.basis_vector("n0")) and is_zero(d @ alg.basis_vector("e3")))
        res.add("De1 = eta e2, De2 = -eta e1", shape_ok, str(fmt_matrix(d)))
    iso = I.isotropy_algebra(s)
    res.add("isotropy algebra: dimension 1", iso.dimension == 1, str(iso.dimension))


# ---------------------------------------------------------------------------
# 4. free 2-step nilpotent on three generators
# ---------------------------------------------------------------------------

def random_complement(rng: random.Random, alg: MetricLieAlgebra, z: Subspace) -> Subspace:
    """A random vector-space complement of z (a graph over a fixed complement)."""
    base = [v for v in Subspace.full(alg.dim).basis if not z.contains(v)]
    fixed = Subspace.zero(alg.dim)
    for v in base:
        if not (fixed + z).contains(v):
            fixed = fixed + Subspace.span([v], alg.dim)
    return Subspace.span([b + _rand_in(rng, z) for b in fixed.basis], alg.dim)


def random_noncentral(rng: random.Random, alg: MetricLieAlgebra, z: Subspace) -> np.ndarray:
    while True:
        w = _rand_vec(rng, alg.dim)
        if not z.contains(w):
            return w


def check_free3(res: BlockResult, n_w: int = 100, n_comp: int = 10, n_tau: int = 10,
                seed: int = 4) -> None:
    alg = C.free3_neutral()
    rng = random.Random(seed)
    res.add("ad-invariant metric", is_ad_invariant(alg))
    z = center(alg)
    r = restrict_metric(alg, z)
    res.add("center degenerate", not r.nondegenerate)
    res.add("center totally isotropic", is_zero(r.gram))
    ahc = I.ahc_isotropy_algebra(alg)
    res.add("ahc isotropy algebra: dimension 15", ahc.dimension == 15, str(ahc.dimension))

    complements = [random_complement(rng, alg, z) for _ in range(n_comp)]
    preserved = 0
    for _ in range(n_w):
        w = random_noncentral(rng, alg, z)
        for comp in complements:
            if I.ad_splitting_test(split_with(alg, comp), w).preserves:
                preserved += 1
    res.add(f"Ad(exp w) never preserves v ({n_w} w x {n_comp} complements)", preserved == 0,
            f"{preserved} preserving cases")

    ahc_ok = aut_fails = 0
    for _ in range(n_tau):
        k = Fraction(rng.randint(2, 9), rng.randint(1, 9))
        if k == 1:
            k = Fraction(3, 2)
        d = C.ftau_exact(k)
        ahc_ok += I.ahc_isometry_check(alg, d)
        aut_fails += not I.is_isometric_automorphism_differential(alg, d)
    res.add(f"dF^tau passes the isometry test ({n_tau} tau)", ahc_ok == n_tau, f"{ahc_ok}/{n_tau}")
    res.add(f"dF^tau is not an isometric automorphism ({n_tau} tau)", aut_fails == n_tau,
            f"{aut_fails}/{n_tau} non-automorphisms; dF^tau_0 maps [e1,e2]=e4 to "
            "[c e1 + s e3, e2] = c e4 - s e6 = dF^tau_0(e4), and likewise for e5, e6, "
            "so it is a Lie algebra automorphism for every tau")


# ---------------------------------------------------------------------------
# 5. iso(7)
# ---------------------------------------------------------------------------

def check_iso7(res: BlockResult) -> None:
    alg = C.iso7()
    rep = validate(alg)
    res.add("Jacobi identity (completed table)", rep.jacobi_ok)
    res.add("solvable", rep.solvable)
    nr = I.nilradical(alg)
    expected = Subspace.span([alg.basis_vector(x) for x in ("f1", "f2", "e1", "e2", "e3")], alg.dim)
    res.add("nilradical = span{f1,f2,e1,e2,e3}", nr == expected, f"dim {nr.dim}")
    n = C.iso7_n()
    res.add("n is a subalgebra", I.is_subalgebra(alg, n))
    res.add("n not contained in the nilradical", not I.contains_subalgebra(alg, nr, n))
    res.add("n not contained in [iso, iso]",
            not I.contains_subalgebra(alg, derived_algebra(alg), n))


# ---------------------------------------------------------------------------
# 6. oscillator
# ---------------------------------------------------------------------------

def check_oscillator(res: BlockResult) -> None:
    alg = C.oscillator4()
    rep = validate(alg)
    res.add("solvable", rep.solvable)
    res.add("not nilpotent", rep.nilpotency_step is None)
    res.add("ad-invariant metric", is_ad_invariant(alg))
    ahc = I.ahc_isotropy_algebra(alg)
    res.add("ahc isotropy algebra: dimension 3", ahc.dimension == 3, str(ahc.dimension))


# ---------------------------------------------------------------------------
# 7. chart-level checks
# ---------------------------------------------------------------------------

def check_manifold(res: BlockResult, n_points: int = 50, seed: int = 7) -> None:
    rng = np.random.default_rng(seed)
    m4, m6 = C.chart_m4(), C.chart_m6()
    pts4 = C.sample_points(n_points, 4, seed)
    pts6 = C.sample_points(n_points, 6, seed + 1)

    def par():
        return float(rng.uniform(-3, 3)), rng.uniform(-2, 2, size=2), float(rng.uniform(-2, 2))

    maps = [C.LG(*par()), C.LN(*par()), C.chi(*par()), C.psi1(), C.psi2(), C.psi3()]
    for f in maps:
        r = C.pullback_isometry_check(m4, f, pts4)
        res.add(f"pullback isometry on chartM4: {f.name.split('(')[0]}", r.ok,
                f"max defect {r.max_defect:.2e} (tol {r.tolerance:g})")
    r = C.pullback_isometry_check(m6, C.Ftau(0.7), pts6)
    res.add("pullback isometry on chartM6: Ftau(0.7)", r.ok, f"max defect {r.max_defect:.2e}")

    worst = worst2 = 0.0
    for _ in range(20):
        t1, v1, z1 = par()
        lg = C.LG(t1, v1, z1)
        lhs = C.compose_maps(C.LN(t1, v1, z1), C.chi(t1, [0, 0], 0))
        rhs = C.compose_maps(C.chi(t1, [0, 0], 0), C.LN(t1, C.rot(-t1) @ v1, z1))
        for p in C.sample_points(100, 4, int(rng.integers(1 << 30))):
            worst = max(worst, float(np.max(np.abs(lhs(p) - lg(p)))))
            worst2 = max(worst2, float(np.max(np.abs(rhs(p) - lg(p)))))
    res.add("L^G = L^N o chi (20 parameters x 100 points)", worst <= 1e-12, f"{worst:.2e}")
    res.add("L^G = chi o L^N(R(-t1) v1) (20 parameters x 100 points)", worst2 <= 1e-12, f"{worst2:.2e}")

    comp = C.compose_maps(C.psi1(), C.psi2())
    d = max(float(np.max(np.abs(comp(p) - C.psi3()(p)))) for p in pts4)
    res.add("psi3 = psi1 o psi2", d <= 1e-12, f"{d:.2e}")

    gens = [(rng.uniform(-2, 2, 2), float(rng.uniform(-2, 2)), rng.uniform(-2, 2, 2))
            for _ in range(10)]
    orb = C.nilradical_orbit_check(C.sample_points(10, 4, seed + 2), gens, targets=20, seed=seed)
    res.add("nilradical orbits are t = const and fill the slice", orb.ok,
            f"t defect {orb.t_defect:.1e}, reach defect {orb.reach_defect:.1e}, {orb.targets} targets")


# ---------------------------------------------------------------------------
# 8. geodesics
# ---------------------------------------------------------------------------

GEODESIC_CASES = {
    "h3_riemannian": [([1, 0, 0], [0, 0, 1]), ([1, "1/2", 0], [0, 0, "-2/3"])],
    "h3_lorentz": [([1, 0, 0], [0, 0, 1]), (["1/3", -1, 0], [0, 0, "1/2"])],
    "rxh3": [([0, 1, 0, 0], [1, 0, 0, 1]), ([0, "-1/2", 1, 0], ["1/3", 0, 0, -1])],
}


def check_geodesics(res: BlockResult, samples: int = 251, t_max: float = 5.0) -> None:
    t = np.linspace(0.0, t_max, samples)
    for name, cases in GEODESIC_CASES.items():
        s = split(C.algebra(name))
        for w, u in cases:
            w, u = qarray(w), qarray(u)
            curve = G.geodesic(s, w, u, t)
            oracle = G.euler_arnold_oracle(s.algebra, w + u, t)
            dev = float(np.max(np.abs(curve.ambient() - oracle.x)))
            res.add(f"{name} w={list(map(fmt, w))}: matches ODE oracle", dev <= 1e-8, f"{dev:.2e}")
            # a' from the oracle, b from the closed form
            a_dot = oracle_center_coords(s, oracle.xdot)
            comm = np.einsum("ti,tj,ijk->tk", curve.bdot, curve.b, curve.bracket_vv)
            u0 = np.array(s.center.coordinates(u), dtype=float)
            fi = float(np.max(np.abs(a_dot + 0.5 * comm - u0)))
            res.add(f"{name} w={list(map(fmt, w))}: first integral", fi <= 1e-9 and
                    curve.first_integral_defect() <= 1e-9, f"{fi:.2e}")
            sp = curve.speed()
            res.add(f"{name} w={list(map(fmt, w))}: constant speed",
                    float(np.ptp(sp)) <= 1e-9, f"spread {np.ptp(sp):.2e}")
    ab = split(C.abelian(2, 1))
    u = qarray([1, "-1/2", 2])
    curve = G.geodesic(ab, qzeros(3), u, t)
    straight = float(np.max(np.abs(curve.a - np.outer(t, np.array(u, dtype=float)))))
    res.add("abelian: straight line", straight <= 1e-14 and curve.b.shape[1] == 0,
            f"{straight:.1e}")


def oracle_center_coords(s, xdot: np.ndarray) -> np.ndarray:
    """Center coordinates (in the splitting v + z) of float ambient vectors."""
    cob_inv = np.array(s.change_of_basis_inv, dtype=float)
    return (xdot @ cob_inv.T)[:, s.m:]


# ---------------------------------------------------------------------------
# 9. exact property suites
# ---------------------------------------------------------------------------

PROPERTY_ALGEBRAS = ["h3_riemannian", "h3_lorentz", "h3_pseudo_htype", "htype6", "rxh3",
                     "free3_neutral", "oscillator4", "iso7"]


def property_failures(alg: MetricLieAlgebra, n: int = 100, seed: int = 9) -> dict[str, int]:
    """Counts of failures of the exact identities over ``n`` random rational inputs."""
    rng = random.Random(seed)
    fails = {"connection_compatible": 0, "torsion_free": 0}
    nondeg = alg.step is not None and alg.step <= 2 and \
        restrict_metric(alg, center(alg)).nondegenerate
    if nondeg:
        fails.update({"j_identity": 0, "ricci_symmetric": 0, "ricci_blocks": 0})
        s = split(alg)
        jf = j_family(s)
        ric = ricci(s)
    for _ in range(n):
        x, y, w = (_rand_vec(rng, alg.dim) for _ in range(3))
        fails["connection_compatible"] += not is_metric_compatible(alg, x, y, w)
        fails["torsion_free"] += not is_torsion_free(alg, x, y)
        if nondeg:
            zc = _rand_in(rng, s.center)
            u1, u2 = _rand_in(rng, s.complement), _rand_in(rng, s.complement)
            fails["j_identity"] += alg.inner(jf.apply(zc, u1), u2) != alg.inner(zc, bracket(alg, u1, u2))
            fails["ricci_symmetric"] += (x @ ric.form @ y) != (y @ ric.form @ x)
            fails["ricci_blocks"] += not (s.complement.contains(ric.operator(u1))
                                          and s.center.contains(ric.operator(zc)))
    return fails


def check_properties(res: BlockResult, n: int = 100) -> None:
    for name in PROPERTY_ALGEBRAS:
        fails = property_failures(C.algebra(name), n)
        for prop, count in fails.items():
            res.add(f"{name}: {prop} ({n} inputs)", count == 0, f"{count} failures")


# ---------------------------------------------------------------------------

EXAMPLES: dict[str, tuple[str, Callable[[BlockResult], None]]] = {
    "h3_lorentz": ("1", check_h3_lorentz),
    "pseudo_htype": ("2", check_pseudo_htype),
    "rxh3": ("3", check_rxh3),
    "free3_neutral": ("4", check_free3),
    "iso7": ("5", check_iso7),
    "oscillator4": ("6", check_oscillator),
    "manifold": ("7", check_manifold),
    "geodesics": ("8", check_geodesics),
    "properties": ("9", check_properties),
}


def resolve_example(name: str) -> str:
    if name in EXAMPLES:
        return name
    for key, (num, _) in EXAMPLES.items():
        if name == num:
            return key
    raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def run_example(name: str) -> BlockResult:
    key = resolve_example(name)
    res = BlockResult(key)
    start = time.perf_counter()
    EXAMPLES[key][1](res)
    res.seconds = time.perf_counter() - start
    return res
