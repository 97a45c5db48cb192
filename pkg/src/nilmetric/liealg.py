"""Metric Lie algebras over the rationals.

A :class:`MetricLieAlgebra` is given by structure constants ``c[i, j, k]``
(``[x_i, x_j] = sum_k c[i, j, k] x_k``) and a symmetric non-degenerate Gram
matrix ``g[i, j] = <x_i, x_j>``.  Vectors are coordinate arrays in the basis
``x_0, ..., x_{n-1}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateCenter, DegenerateMetric, NotComplement
from .exact import (
    ONE,
    det,
    fmt,
    inv,
    is_zero,
    nullspace,
    q,
    qarray,
    qeye,
    qzeros,
    row_basis,
)


def vec(v, n: int | None = None) -> np.ndarray:
    out = qarray(v)
    if out.ndim != 1:
        raise ValueError("expected a vector")
    if n is not None and out.shape[0] != n:
        raise ValueError(f"vector has length {out.shape[0]}, expected {n}")
    return out


# ---------------------------------------------------------------------------
# subspaces and linear maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of Q^n stored by its reduced row echelon basis.

    Two subspaces are equal iff their canonical bases are equal.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = row_basis(self.basis) if len(self.basis) else qzeros(0, self.ambient_dim)
        if b.shape[1] != self.ambient_dim:
            raise ValueError("basis vectors do not live in the ambient space")
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        rows = [vec(v, ambient_dim) for v in vectors]
        if not rows:
            return cls(ambient_dim, qzeros(0, ambient_dim))
        return cls(ambient_dim, np.vstack(rows))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, qeye(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, qzeros(0, n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def vectors(self) -> list[np.ndarray]:
        return [row.copy() for row in self.basis]

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis; raises if v is outside."""
        v = vec(v, self.ambient_dim)
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        return qarray([v[p] for p in self.pivots])

    def contains(self, v) -> bool:
        v = vec(v, self.ambient_dim)
        if self.dim == 0:
            return is_zero(v)
        c = qarray([v[p] for p in self.pivots])
        return is_zero(c @ self.basis - v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # a @ B1 = b @ B2  <=>  [a, -b] in ker [B1; B2]^T
        stacked = np.vstack([self.basis, -other.basis]).T
        ker = nullspace(stacked)
        return Subspace.span([k[: self.dim] @ self.basis for k in ker], self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.basis.shape == other.basis.shape
                and bool(np.all(self.basis == other.basis)))

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.basis.flat)))

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(fmt(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(dim={self.dim}, [{rows}])"


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Matrix acting on column coordinate vectors."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=object)
        if m.ndim != 2:
            raise ValueError("LinearMap needs a 2-d matrix")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(qeye(n))

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "LinearMap":
        return cls(qzeros(n if m is None else m, n))

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=object)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix @ other.matrix)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix - other.matrix)

    def __neg__(self) -> "LinearMap":
        return LinearMap(-self.matrix)

    def __mul__(self, s) -> "LinearMap":
        return LinearMap(self.matrix * s)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LinearMap":
        out = LinearMap.identity(self.domain_dim)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self):
        return sum(self.matrix[i, i] for i in range(min(self.matrix.shape)))

    def is_zero(self, tol: float = 0.0) -> bool:
        return is_zero(self.matrix, tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix == other.matrix))

    __hash__ = None

    def __repr__(self):
        return f"LinearMap({[[fmt(x) if isinstance(x, Fraction) else x for x in r] for r in self.matrix]})"


# ---------------------------------------------------------------------------
# metric Lie algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    structure: np.ndarray
    metric: np.ndarray
    basis_names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        c = qarray(self.structure)
        g = qarray(self.metric)
        n = g.shape[0]
        if c.shape != (n, n, n) or g.shape != (n, n):
            raise ValueError(f"inconsistent shapes: structure {c.shape}, metric {g.shape}")
        if not is_zero(c + c.transpose(1, 0, 2)):
            raise ValueError("structure constants are not antisymmetric")
        if not is_zero(g - g.T):
            raise ValueError("metric matrix is not symmetric")
        if n and det(g) == 0:
            raise DegenerateMetric("metric matrix is singular")
        names = tuple(self.basis_names) or tuple(f"x{i + 1}" for i in range(n))
        if len(names) != n:
            raise ValueError("basis_names has the wrong length")
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "metric", g)
        object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: dict, metric: dict,
                      name: str = "") -> "MetricLieAlgebra":
        """Build from name-keyed tables.

        ``brackets`` maps ``(a, b)`` to ``{c: coeff}`` meaning [a, b] = sum coeff*c;
        ``metric`` maps ``(a, b)`` to <a, b> (symmetric closure applied).
        """
        idx = {s: i for i, s in enumerate(names)}
        n = len(names)
        c = qzeros(n, n, n)
        for (a, b), coeffs in brackets.items():
            for k, val in coeffs.items():
                c[idx[a], idx[b], idx[k]] = q(val)
                c[idx[b], idx[a], idx[k]] = -q(val)
        g = qzeros(n, n)
        for (a, b), val in metric.items():
            g[idx[a], idx[b]] = g[idx[b], idx[a]] = q(val)
        return cls(c, g, tuple(names), name)

    @property
    def dim(self) -> int:
        return self.metric.shape[0]

    @cached_property
    def ad_basis(self) -> np.ndarray:
        """``ad_basis[i]`` is the matrix of ad(x_i)."""
        return self.structure.transpose(0, 2, 1).copy()

    @cached_property
    def metric_inv(self) -> np.ndarray:
        return inv(self.metric)

    @cached_property
    def step(self) -> int | None:
        """Nilpotency step (cached); see :func:`nilpotency_step`."""
        return nilpotency_step(self)

    def basis_vector(self, i: int | str) -> np.ndarray:
        if isinstance(i, str):
            i = self.basis_names.index(i)
        e = qzeros(self.dim)
        e[i] = ONE
        return e

    def element(self, coeffs: dict) -> np.ndarray:
        """Vector from a ``{basis_name: coefficient}`` mapping."""
        out = qzeros(self.dim)
        for k, v in coeffs.items():
            out[self.basis_names.index(k)] += q(v)
        return out

    def inner(self, u, w) -> Fraction:
        return np.asarray(u, dtype=object) @ self.metric @ np.asarray(w, dtype=object)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricLieAlgebra):
            return NotImplemented
        return (self.basis_names == other.basis_names
                and bool(np.all(self.structure == other.structure))
                and bool(np.all(self.metric == other.metric)))

    __hash__ = None


def bracket(alg: MetricLieAlgebra, u, v) -> np.ndarray:
    u = vec(u, alg.dim)
    v = vec(v, alg.dim)
    out = qzeros(alg.dim)
    for i in np.flatnonzero(u != 0):
        out = out + u[i] * (v @ alg.structure[i])
    return out


def ad_matrix(alg: MetricLieAlgebra, u) -> np.ndarray:
    u = vec(u, alg.dim)
    out = qzeros(alg.dim, alg.dim)
    for i in np.flatnonzero(u != 0):
        out = out + u[i] * alg.ad_basis[i]
    return out


def bracket_span(alg: MetricLieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """[S, T] as a subspace."""
    return Subspace.span([bracket(alg, a, b) for a in s.basis for b in t.basis], alg.dim)


def derived_algebra(alg: MetricLieAlgebra) -> Subspace:
    full = Subspace.full(alg.dim)
    return bracket_span(alg, full, full)


@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    nilpotency_step: int | None
    solvable: bool
    jacobi_failures: tuple = ()

    def to_dict(self) -> dict:
        return {
            "jacobi_ok": self.jacobi_ok,
            "nilpotency_step": self.nilpotency_step,
            "solvable": self.solvable,
            "jacobi_failures": [list(t) for t in self.jacobi_failures],
        }


def jacobi_failures(alg: MetricLieAlgebra) -> list[tuple[int, int, int]]:
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = basis[i], basis[j], basis[k]
                s = (bracket(alg, bracket(alg, x, y), z)
                     + bracket(alg, bracket(alg, y, z), x)
                     + bracket(alg, bracket(alg, z, x), y))
                if not is_zero(s):
                    bad.append((i, j, k))
    return bad


def lower_central_series(alg: MetricLieAlgebra) -> list[Subspace]:
    """C^1 = n, C^{k+1} = [n, C^k], until it stabilizes."""
    full = Subspace.full(alg.dim)
    series = [full]
    while True:
        nxt = bracket_span(alg, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def derived_series(alg: MetricLieAlgebra) -> list[Subspace]:
    series = [Subspace.full(alg.dim)]
    while True:
        nxt = bracket_span(alg, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def nilpotency_step(alg: MetricLieAlgebra) -> int | None:
    """Smallest s with C^{s+1} = 0; None if the algebra is not nilpotent.

    The zero algebra and abelian algebras count as step 1.
    """
    series = lower_central_series(alg)
    if series[-1].dim != 0:
        return None
    return max(1, len(series) - 1)


def validate(alg: MetricLieAlgebra) -> ValidationReport:
    bad = jacobi_failures(alg)
    if bad:
        return ValidationReport(False, None, False, tuple(bad))
    return ValidationReport(True, nilpotency_step(alg), derived_series(alg)[-1].dim == 0)


def center(alg: MetricLieAlgebra) -> Subspace:
    n = alg.dim
    # rows indexed by (j, k): sum_i u_i c[i, j, k] = 0
    system = alg.structure.reshape(n, n * n).T
    return Subspace.span(nullspace(system, n), n)


@dataclass(frozen=True)
class MetricRestriction:
    gram: np.ndarray
    nondegenerate: bool
    signature: tuple[int, int] | None


def gram_matrix(alg: MetricLieAlgebra, s: Subspace) -> np.ndarray:
    return s.basis @ alg.metric @ s.basis.T


def restrict_metric(alg: MetricLieAlgebra, s: Subspace) -> MetricRestriction:
    gram = gram_matrix(alg, s)
    if s.dim == 0:
        return MetricRestriction(gram, True, (0, 0))
    if det(gram) == 0:
        return MetricRestriction(gram, False, None)
    return MetricRestriction(gram, True, signature(gram))


def orthogonal_complement(alg: MetricLieAlgebra, s: Subspace) -> Subspace:
    if s.dim == 0:
        return Subspace.full(alg.dim)
    return Subspace.span(nullspace(s.basis @ alg.metric, alg.dim), alg.dim)


# ---------------------------------------------------------------------------
# orthogonalization and signature
# ---------------------------------------------------------------------------

def orthogonal_basis(gram, pivot: str = "largest") -> tuple[list[np.ndarray], list[Fraction]]:
    """Exact orthogonal basis by symmetric Gauss pivoting.

    Returns coordinate vectors ``b_i`` (relative to the basis ``gram`` is
    written in) and their squared norms ``q_i = <b_i, b_i> != 0``.  ``pivot``
    picks the diagonal entry used at each step: ``"largest"`` |value|,
    ``"first"`` or ``"last"`` non-zero.  When every remaining diagonal entry
    vanishes a hyperbolic pair ``r_i +- r_j`` is split off instead.
    """
    gram = qarray(gram)
    k = gram.shape[0]
    remaining = [row for row in qeye(k)]
    vectors: list[np.ndarray] = []
    norms: list[Fraction] = []

    def project(rest, v, qv):
        return [r - ((r @ gram @ v) / qv) * v for r in rest]

    while remaining:
        mat = np.array([[a @ gram @ b for b in remaining] for a in remaining], dtype=object)
        diag = [i for i in range(len(remaining)) if mat[i, i] != 0]
        if diag:
            if pivot == "largest":
                i = max(diag, key=lambda t: (abs(mat[t, t]), -t))
            elif pivot == "first":
                i = diag[0]
            elif pivot == "last":
                i = diag[-1]
            else:
                raise ValueError(f"unknown pivot rule {pivot!r}")
            v, qv = remaining[i], mat[i, i]
            vectors.append(v)
            norms.append(qv)
            remaining = project(remaining[:i] + remaining[i + 1:], v, qv)
            continue
        pair = next(((i, j) for i in range(len(remaining)) for j in range(i + 1, len(remaining))
                     if mat[i, j] != 0), None)
        if pair is None:
            raise DegenerateMetric("Gram matrix is degenerate")
        i, j = pair
        plus = remaining[i] + remaining[j]
        minus = remaining[i] - remaining[j]
        rest = [r for t, r in enumerate(remaining) if t not in pair]
        for v, qv in ((plus, 2 * mat[i, j]), (minus, -2 * mat[i, j])):
            vectors.append(v)
            norms.append(qv)
            rest = project(rest, v, qv)
        remaining = rest
    return vectors, norms


def signature(gram) -> tuple[int, int]:
    """(positive, negative) index of a non-degenerate symmetric matrix."""
    _, norms = orthogonal_basis(gram)
    pos = sum(1 for x in norms if x > 0)
    return pos, len(norms) - pos


@dataclass(frozen=True)
class OrthonormalBasis:
    vectors: list[np.ndarray]
    signs: list[int]
    approximate: bool


def pseudo_orthonormal_basis(gram, exact: bool = False, pivot: str = "largest") -> OrthonormalBasis:
    """Basis with <b_i, b_j> = signs_i delta_ij.

    Normalization divides by sqrt|q_i|, which is the only inexact step; the
    result is then a float basis flagged ``approximate``.  With ``exact=True``
    the orthogonal but unnormalized basis is returned (use
    :func:`orthogonal_basis` to get the norms as well).
    """
    vectors, norms = orthogonal_basis(gram, pivot)
    signs = [1 if x > 0 else -1 for x in norms]
    if exact:
        return OrthonormalBasis(vectors, signs, False)
    unit = []
    approximate = False
    for v, qv in zip(vectors, norms):
        a = abs(qv)
        r_num, r_den = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if r_num * r_num == a.numerator and r_den * r_den == a.denominator:
            unit.append(v / Fraction(r_num, r_den))
        else:
            unit.append(v.astype(float) / math.sqrt(a))
            approximate = True
    if approximate:
        unit = [np.asarray(u, dtype=float) for u in unit]
    return OrthonormalBasis(unit, signs, approximate)


def is_ad_invariant(alg: MetricLieAlgebra) -> bool:
    """<[u, v], w> + <v, [u, w]> = 0 on all basis triples."""
    # M[i, j, k] = <[x_i, x_j], x_k>
    m = np.einsum("ijl,lk->ijk", alg.structure, alg.metric)
    return is_zero(m + m.transpose(0, 2, 1))


# ---------------------------------------------------------------------------
# splittings n = v + z
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SplitAlgebra:
    algebra: MetricLieAlgebra
    center: Subspace
    complement: Subspace
    orthogonal: bool = field(default=False)

    @property
    def m(self) -> int:
        return self.complement.dim

    @property
    def p(self) -> int:
        return self.center.dim

    @property
    def v_basis(self) -> np.ndarray:
        return self.complement.basis

    @property
    def z_basis(self) -> np.ndarray:
        return self.center.basis

    @cached_property
    def change_of_basis(self) -> np.ndarray:
        """Columns: complement basis then center basis."""
        return np.vstack([self.v_basis, self.z_basis]).T

    @cached_property
    def change_of_basis_inv(self) -> np.ndarray:
        return inv(self.change_of_basis)

    def decompose(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Complement and center coordinates of ``x``."""
        c = self.change_of_basis_inv @ vec(x, self.algebra.dim)
        return c[: self.m], c[self.m:]

    def from_v(self, coords) -> np.ndarray:
        if self.m == 0:
            return qzeros(self.algebra.dim)
        return vec(coords, self.m) @ self.v_basis

    def from_z(self, coords) -> np.ndarray:
        if self.p == 0:
            return qzeros(self.algebra.dim)
        return vec(coords, self.p) @ self.z_basis

    def v_part(self, x) -> np.ndarray:
        return self.from_v(self.decompose(x)[0])

    def z_part(self, x) -> np.ndarray:
        return self.from_z(self.decompose(x)[1])

    @cached_property
    def v_gram(self) -> np.ndarray:
        return gram_matrix(self.algebra, self.complement)

    @cached_property
    def z_gram(self) -> np.ndarray:
        return gram_matrix(self.algebra, self.center)

    def block_matrix(self, mat) -> np.ndarray:
        """Matrix of an endomorphism of n in the (complement, center) basis."""
        return self.change_of_basis_inv @ qarray(mat) @ self.change_of_basis

    def from_blocks(self, blocks) -> np.ndarray:
        return self.change_of_basis @ qarray(blocks) @ self.change_of_basis_inv


def split(alg: MetricLieAlgebra) -> SplitAlgebra:
    """n = z^perp + z; requires a non-degenerate center."""
    z = center(alg)
    if not restrict_metric(alg, z).nondegenerate:
        raise DegenerateCenter()
    return SplitAlgebra(alg, z, orthogonal_complement(alg, z), orthogonal=True)


def split_with(alg: MetricLieAlgebra, complement: Subspace) -> SplitAlgebra:
    """Splitting with an arbitrary vector-space complement of the center."""
    z = center(alg)
    if complement.ambient_dim != alg.dim:
        raise NotComplement("complement lives in the wrong ambient space")
    if complement.dim + z.dim != alg.dim or (complement + z).dim != alg.dim:
        raise NotComplement("subspace is not a complement of the center")
    orth = restrict_metric(alg, z).nondegenerate and complement == orthogonal_complement(alg, z)
    return SplitAlgebra(alg, z, complement, orthogonal=orth)


# ---------------------------------------------------------------------------
# algebra definition files
# ---------------------------------------------------------------------------

def algebra_to_dict(alg: MetricLieAlgebra, complement: Subspace | None = None) -> dict:
    n = alg.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = {str(k + 1): fmt(alg.structure[i, j, k])
                      for k in range(n) if alg.structure[i, j, k] != 0}
            if coeffs:
                brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    metric = [{"i": i + 1, "j": j + 1, "value": fmt(alg.metric[i, j])}
              for i in range(n) for j in range(i, n) if alg.metric[i, j] != 0]
    out = {"dim": n, "basis": list(alg.basis_names), "brackets": brackets, "metric": metric}
    if alg.name:
        out["name"] = alg.name
    if complement is not None:
        out["complement"] = [[fmt(x) for x in row] for row in complement.basis]
    return out


def algebra_from_dict(data: dict) -> tuple[MetricLieAlgebra, Subspace | None]:
    """Parse the algebra definition schema (1-based indices, "p/q" strings)."""
    n = int(data["dim"])
    names = tuple(data.get("basis") or [f"x{i + 1}" for i in range(n)])
    c = qzeros(n, n, n)
    seen = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"bracket index out of range: {entry}")
        if i == j:
            if any(q(v) != 0 for v in entry["coeffs"].values()):
                raise ValueError(f"[x{i + 1}, x{i + 1}] must vanish")
            continue
        row = qzeros(n)
        for k, val in entry["coeffs"].items():
            k = int(k) - 1
            if not 0 <= k < n:
                raise ValueError(f"bracket coefficient index out of range: {entry}")
            row[k] = q(val)
        key = (min(i, j), max(i, j))
        signed = row if i < j else -row
        if key in seen and not is_zero(seen[key] - signed):
            raise ValueError(f"conflicting brackets for pair {key[0] + 1}, {key[1] + 1}")
        seen[key] = signed
        c[i, j] = row
        c[j, i] = -row
    g = qzeros(n, n)
    for entry in data.get("metric", []):
        i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"metric index out of range: {entry}")
        val = q(entry["value"])
        if (g[i, j] != 0 or g[j, i] != 0) and g[i, j] != val:
            raise ValueError(f"conflicting metric entries at {i + 1}, {j + 1}")
        g[i, j] = g[j, i] = val
    alg = MetricLieAlgebra(c, g, names, data.get("name", ""))
    comp = None
    if data.get("complement") is not None:
        comp = Subspace.span([vec(v, n) for v in data["complement"]], n)
    return alg, comp


def load_algebra(path: str | Path) -> tuple[MetricLieAlgebra, Subspace | None]:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))


def dump_algebra(alg: MetricLieAlgebra, complement: Subspace | None = None) -> str:
    return json.dumps(algebra_to_dict(alg, complement), indent=2)
