"""Isometry-related solvers and checkers.

Everything is an exact nullspace computation or an exact identity check over
Q.  Checkers also accept float matrices, in which case residuals are compared
against ``tol``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

import numpy as np

from .errors import DegenerateCenter, NotBiInvariant, NotSolvable, NotTwoStep
from .exact import det, is_exact, fmt_matrix, is_zero, nullspace, qarray, qeye, qzeros
from .geometry import JFamily, j_family
from .liealg import (
    LinearMap,
    MetricLieAlgebra,
    SplitAlgebra,
    Subspace,
    ad_matrix,
    bracket,
    derived_algebra,
    is_ad_invariant,
    restrict_metric,
    validate,
    vec,
)


@dataclass(frozen=True)
class SolutionSpace:
    """Exact solution space of a homogeneous linear system on matrices.

    ``basis`` holds LinearMaps, or ``(A, B)`` pairs for the block systems.
    ``constraint_residual`` is True when every basis element was re-checked
    against the constraints and gave exactly zero.
    """

    dimension: int
    basis: tuple
    constraint_residual: bool
    kind: str = ""

    def to_dict(self) -> dict:
        def enc(b):
            if isinstance(b, tuple):
                return [fmt_matrix(x.matrix) for x in b]
            return fmt_matrix(b.matrix)

        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "constraint_residual": "exact-zero" if self.constraint_residual else "nonzero",
            "basis": [enc(b) for b in self.basis],
        }


def _unique_rows(mat: np.ndarray) -> np.ndarray:
    seen = {}
    for row in mat:
        if any(x != 0 for x in row):
            seen.setdefault(tuple(row), row)
    if not seen:
        return qzeros(0, mat.shape[1])
    return np.vstack(list(seen.values()))


def _solve(constraints: Callable[[np.ndarray], np.ndarray], nvars: int) -> np.ndarray:
    """Nullspace of a linear map given as a function on Q^nvars."""
    cols = []
    for k in range(nvars):
        e = qzeros(nvars)
        e[k] = Fraction(1)
        cols.append(np.asarray(constraints(e), dtype=object).ravel())
    system = _unique_rows(np.column_stack(cols)) if cols else qzeros(0, 0)
    return nullspace(system, nvars)


def _skew_residual(gram: np.ndarray, a: np.ndarray) -> np.ndarray:
    return gram @ a + a.T @ gram


# ---------------------------------------------------------------------------
# bi-invariant metrics
# ---------------------------------------------------------------------------

def double_brackets(alg: MetricLieAlgebra) -> np.ndarray:
    """db[i, j, k] = [[x_i, x_j], x_k]."""
    c = alg.structure
    return np.einsum("ijl,lkm->ijkm", c, c)


def _require_biinvariant(alg: MetricLieAlgebra) -> None:
    if not is_ad_invariant(alg):
        raise NotBiInvariant()


def ahc_isometry_check(alg: MetricLieAlgebra, a, tol: float = 0.0) -> bool:
    """Is A the differential at e of an isometry fixing e (bi-invariant case)?

    Checks <Au, Aw> = <u, w> and A[[u, v], w] = [[Au, Av], Aw] on basis triples.
    """
    _require_biinvariant(alg)
    a = _as_matrix(a)
    if not is_zero(a.T @ alg.metric @ a - alg.metric, tol):
        return False
    db = double_brackets(alg)
    if is_zero(db):
        return True
    lhs = np.einsum("ijkm,pm->ijkp", db, a)
    rhs = np.einsum("ri,sj,tk,rstm->ijkm", a, a, a, db)
    return is_zero(lhs - rhs, tol)


def ahc_isotropy_algebra(alg: MetricLieAlgebra) -> SolutionSpace:
    """Infinitesimal version: skew a with a[[u,v],w] = [[au,v],w] + [[u,av],w] + [[u,v],aw]."""
    _require_biinvariant(alg)
    n = alg.dim
    db = double_brackets(alg)
    g = alg.metric
    trivial = is_zero(db)

    # columns assembled directly for the elementary matrices E_pq
    cols = []
    for p in range(n):
        for qq in range(n):
            e = qzeros(n, n)
            e[p, qq] = Fraction(1)
            skew = _skew_residual(g, e).ravel()
            if trivial:
                cols.append(skew)
                continue
            t = qzeros(n, n, n, n)
            t[:, :, :, p] += db[:, :, :, qq]
            t[qq, :, :, :] -= db[p, :, :, :]
            t[:, qq, :, :] -= db[:, p, :, :]
            t[:, :, qq, :] -= db[:, :, p, :]
            cols.append(np.concatenate([skew, t.ravel()]))
    system = _unique_rows(np.column_stack(cols))
    ker = nullspace(system, n * n)
    basis = tuple(LinearMap(k.reshape(n, n)) for k in ker)

    # independent re-check, rebuilt from the structure constants; the sums are
    # homogeneous of degree 2 in c and 1 in a, so clearing denominators keeps
    # the test exact while running on Python integers
    c = _integral(alg.structure)
    gi = _integral(g)

    def outer(ab):  # [[x_i, x_j], x_k] from the ij-bracket table ab
        return np.einsum("ijl,lkm->ijkm", ab, c)

    cc = outer(c)

    def residual_ok(a: np.ndarray) -> bool:
        a = _integral(a)
        if not is_zero(a.T @ gi + gi @ a):
            return False
        lhs = np.einsum("ijkm,pm->ijkp", cc, a)
        t1 = outer(np.einsum("ri,rjl->ijl", a, c))
        t2 = outer(np.einsum("rj,irl->ijl", a, c))
        t3 = np.einsum("ijrm,rk->ijkm", cc, a)
        return not np.any(lhs - t1 - t2 - t3)

    ok = all(residual_ok(b.matrix) for b in basis)
    return SolutionSpace(len(basis), basis, ok, "ahc-isotropy")


# ---------------------------------------------------------------------------
# non-degenerate center
# ---------------------------------------------------------------------------

def _require_nondegenerate(split: SplitAlgebra) -> None:
    if not restrict_metric(split.algebra, split.center).nondegenerate:
        raise DegenerateCenter()


def isotropy_pair_check(split: SplitAlgebra, phi, t, tol: float = 0.0,
                        jf: JFamily | None = None) -> bool:
    """(phi, T) in O(z) x O(v) with T j(w) T^-1 = j(phi w) for all w in z.

    ``phi`` acts on center coordinates and ``T`` on complement coordinates.
    """
    _require_nondegenerate(split)
    jf = jf or j_family(split)
    phi, t = _as_matrix(phi), _as_matrix(t)
    if phi.shape != (split.p, split.p) or t.shape != (split.m, split.m):
        raise ValueError("block maps have the wrong shape")
    if not is_zero(phi.T @ split.z_gram @ phi - split.z_gram, tol):
        return False
    if not is_zero(t.T @ split.v_gram @ t - split.v_gram, tol):
        return False
    for k in range(split.p):
        jk = jf.maps[k].matrix
        j_phi = sum((phi[l, k] * jf.maps[l].matrix for l in range(split.p)), qzeros(split.m, split.m))
        if not is_zero(t @ jk - j_phi @ t, tol):
            return False
    return True


def blocks_of(split: SplitAlgebra, mat) -> tuple[np.ndarray, np.ndarray]:
    """(phi, T) for a full matrix preserving z and v; raises otherwise."""
    blk = split.block_matrix(mat)
    m = split.m
    if not (is_zero(blk[:m, m:]) and is_zero(blk[m:, :m])):
        raise ValueError("map does not preserve the splitting")
    return blk[m:, m:], blk[:m, :m]


def isotropy_check_full(split: SplitAlgebra, mat) -> bool:
    try:
        phi, t = blocks_of(split, mat)
    except ValueError:
        return False
    return isotropy_pair_check(split, phi, t)


def isotropy_algebra(split: SplitAlgebra) -> SolutionSpace:
    """Pairs (A, B) in so(z) x so(v) with [B, j(w)] = j(Aw) for w in z."""
    _require_nondegenerate(split)
    jf = j_family(split)
    m, p = split.m, split.p
    gz, gv = split.z_gram, split.v_gram
    js = [jm.matrix for jm in jf.maps]

    def unpack(x):
        return x[: p * p].reshape(p, p), x[p * p:].reshape(m, m)

    def constraints(x):
        a, b = unpack(x)
        parts = [_skew_residual(gz, a).ravel(), _skew_residual(gv, b).ravel()]
        for k in range(p):
            j_aw = sum((a[l, k] * js[l] for l in range(p)), qzeros(m, m))
            parts.append((b @ js[k] - js[k] @ b - j_aw).ravel())
        return np.concatenate(parts) if parts else qzeros(0)

    ker = _solve(constraints, p * p + m * m)
    basis = tuple((LinearMap(a), LinearMap(b)) for a, b in map(unpack, ker))

    def residual_ok(a, b):
        if not (is_zero(_skew_residual(gz, a)) and is_zero(_skew_residual(gv, b))):
            return False
        # rebuild j from the brackets rather than reusing the stored matrices
        for k, w in enumerate(split.z_basis):
            aw = split.from_z(a[:, k])
            for u in split.v_basis:
                bu = split.from_v(b @ split.complement.coordinates(u))
                lhs = split.from_v(b @ split.complement.coordinates(jf.apply(w, u))) - jf.apply(w, bu)
                rhs = jf.apply(aw, u) if p else qzeros(split.algebra.dim)
                if not is_zero(lhs - rhs):
                    return False
        return True

    ok = all(residual_ok(a.matrix, b.matrix) for a, b in basis)
    return SolutionSpace(len(basis), basis, ok, "isotropy")


# ---------------------------------------------------------------------------
# derivations and automorphisms
# ---------------------------------------------------------------------------

def derivation_residual(alg: MetricLieAlgebra, d: np.ndarray) -> np.ndarray:
    """D[x_i, x_j] - [D x_i, x_j] - [x_i, D x_j] for all i, j."""
    c = alg.structure
    lhs = np.einsum("ijk,pk->ijp", c, d)
    t1 = np.einsum("ri,rjp->ijp", d, c)
    t2 = np.einsum("rj,irp->ijp", d, c)
    return lhs - t1 - t2


def skew_derivations(alg: MetricLieAlgebra) -> SolutionSpace:
    n = alg.dim
    g = alg.metric

    def constraints(x):
        d = x.reshape(n, n)
        return np.concatenate([derivation_residual(alg, d).ravel(), _skew_residual(g, d).ravel()])

    ker = _solve(constraints, n * n)
    basis = tuple(LinearMap(k.reshape(n, n)) for k in ker)

    def residual_ok(d):
        for i in range(n):
            for j in range(n):
                u, v = alg.basis_vector(i), alg.basis_vector(j)
                if not is_zero(d @ bracket(alg, u, v) - bracket(alg, d @ u, v) - bracket(alg, u, d @ v)):
                    return False
                if alg.inner(d @ u, v) + alg.inner(u, d @ v) != 0:
                    return False
        return True

    return SolutionSpace(len(basis), basis, all(residual_ok(b.matrix) for b in basis),
                         "skew-derivations")


def is_isometric_automorphism_differential(alg: MetricLieAlgebra, a, tol: float = 0.0) -> bool:
    """A[u, v] = [Au, Av] on basis pairs and A preserves the metric."""
    a = _as_matrix(a)
    if is_exact(a) and det(a) == 0:
        return False
    if not is_zero(a.T @ alg.metric @ a - alg.metric, tol):
        return False
    c = alg.structure
    lhs = np.einsum("ijk,pk->ijp", c, a)
    rhs = np.einsum("ri,sj,rsp->ijp", a, a, c)
    return is_zero(lhs - rhs, tol)


def inner_automorphism(alg: MetricLieAlgebra, w) -> LinearMap:
    """Ad(exp w) = exp(ad_w), exact for nilpotent ad_w (I + ad_w when 2-step)."""
    ad = ad_matrix(alg, w)
    n = alg.dim
    out = qeye(n)
    term = qeye(n)
    for k in range(1, n + 1):
        term = term @ ad
        if is_zero(term):
            return LinearMap(out)
        out = out + term / factorial(k)
    if not is_zero(term @ ad):
        raise NotTwoStep("ad_w is not nilpotent")
    return LinearMap(out)


@dataclass(frozen=True)
class AdSplittingResult:
    preserves: bool
    witness: np.ndarray | None
    ad: LinearMap


def ad_splitting_test(split: SplitAlgebra, w) -> AdSplittingResult:
    """Does Ad(exp w) map the complement v into itself?"""
    alg = split.algebra
    step = alg.step
    if step is None or step > 2:
        raise NotTwoStep(f"algebra is not 2-step nilpotent (step {step})")
    ad = inner_automorphism(alg, vec(w, alg.dim))
    for b in split.v_basis:
        if not split.complement.contains(ad(b)):
            return AdSplittingResult(False, b.copy(), ad)
    return AdSplittingResult(True, None, ad)


# ---------------------------------------------------------------------------
# nilradical
# ---------------------------------------------------------------------------

def _is_ideal(alg: MetricLieAlgebra, s: Subspace) -> bool:
    return all(s.contains(bracket(alg, alg.basis_vector(i), x))
               for i in range(alg.dim) for x in s.basis)


def _acts_nilpotently(alg: MetricLieAlgebra, s: Subspace) -> bool:
    """Is the associative algebra generated by ad(S) nilpotent?"""
    n = alg.dim
    gens = [ad_matrix(alg, x) for x in s.basis]
    if not gens:
        return True
    words = gens
    for _ in range(n):
        prods = [w @ g for w in words for g in gens]
        span = Subspace.span([p.ravel() for p in prods], n * n)
        if span.dim == 0:
            return True
        words = [b.reshape(n, n) for b in span.basis]
    return False


def nilradical(alg: MetricLieAlgebra, seed: int = 0, max_rounds: int = 8) -> Subspace:
    """Maximal nilpotent ideal of a solvable Lie algebra.

    For solvable algebras it is the set of ad-nilpotent elements, i.e. the
    common kernel of the weights of the adjoint representation.  x lies in it
    iff tr(ad_x ad_y^k) = 0 for every y and k < n; this is imposed for the
    basis and a few random y, and the result is certified to be an ideal
    acting nilpotently.  More random y are added if certification fails.
    """
    rep = validate(alg)
    if not rep.jacobi_ok or not rep.solvable:
        raise NotSolvable("nilradical is implemented for solvable algebras only")
    n = alg.dim
    rng = random.Random(seed)
    probes = [alg.basis_vector(i) for i in range(n)]
    ad_flat = alg.ad_basis.reshape(n, n * n)
    rows: list[np.ndarray] = []
    for _ in range(max_rounds):
        probes += [qarray([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)])
                   for _ in range(3)]
        rows = []
        for y in probes:
            ady = ad_matrix(alg, y)
            power = qeye(n)
            for _k in range(n):
                rows.append(ad_flat @ power.T.ravel())  # tr(ad_{x_i} ad_y^k) for all i
                power = power @ ady
        cand = Subspace.span(nullspace(np.vstack(rows), n), n)
        if _is_ideal(alg, cand) and _acts_nilpotently(alg, cand):
            if not cand.contains_subspace(derived_algebra(alg)):
                raise ArithmeticError("nilradical candidate misses [g, g]")
            return cand
    raise ArithmeticError("could not certify the nilradical")


def is_nilpotent_ideal(alg: MetricLieAlgebra, s: Subspace) -> bool:
    return _is_ideal(alg, s) and _acts_nilpotently(alg, s)


def contains_subalgebra(amb: MetricLieAlgebra, container: Subspace, candidate: Subspace) -> bool:
    """Exact test of ``candidate`` being contained in ``container``."""
    if container.ambient_dim != amb.dim or candidate.ambient_dim != amb.dim:
        raise ValueError("subspaces must live in the ambient algebra")
    return container.contains_subspace(candidate)


def is_subalgebra(alg: MetricLieAlgebra, s: Subspace) -> bool:
    return all(s.contains(bracket(alg, x, y)) for x in s.basis for y in s.basis)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _integral(a: np.ndarray) -> np.ndarray:
    """Positive rational multiple of an exact array with integer entries (as ints)."""
    den = math.lcm(*(x.denominator for x in a.flat)) if a.size else 1
    return np.array([int(x * den) for x in a.flat], dtype=object).reshape(a.shape)


def _as_matrix(a) -> np.ndarray:
    if isinstance(a, LinearMap):
        a = a.matrix
    arr = np.asarray(a, dtype=object)
    if all(isinstance(x, (int, Fraction, np.integer)) for x in arr.flat):
        return qarray(arr)
    return arr


def random_rational(rng: random.Random, n: int, lo: int = -5, hi: int = 5, den: int = 4) -> np.ndarray:
    return qarray([Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(n)])

