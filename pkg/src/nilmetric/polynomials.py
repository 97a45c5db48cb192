"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import IrreducibleFactorizationIncomplete
from .exact import ONE, ZERO, fmt, nullspace, q, qeye, qzeros, rank

Poly = tuple

MAX_TRIAL_DEGREE = 12


def poly(coeffs: Sequence) -> Poly:
    c = [q(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def from_roots(roots: Sequence) -> Poly:
    out: Poly = (ONE,)
    for r in roots:
        out = mul(out, (-q(r), ONE))
    return out


def degree(p: Poly) -> int:
    return len(p) - 1


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def power(a: Poly, k: int) -> Poly:
    out: Poly = (ONE,)
    for _ in range(k):
        out = mul(out, a)
    return out


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        coeff = rem[shift + len(b) - 1] / lead
        quo[shift] = coeff
        if coeff:
            for i, y in enumerate(b):
                rem[shift + i] -= coeff * y
    return poly(quo), poly(rem)


def monic(a: Poly) -> Poly:
    if not a:
        return a
    return tuple(x / a[-1] for x in a)


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    return monic(divmod_poly(mul(a, b), gcd(a, b))[0])


def evaluate(p: Poly, x):
    out = ZERO
    for c in reversed(p):
        out = out * x + c
    return out


def evaluate_matrix(p: Poly, mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    out = qzeros(n, n)
    for c in reversed(p):
        out = out @ mat + c * qeye(n)
    return out


def to_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if k == 0:
            body = fmt(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{fmt(mag)}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials
# ---------------------------------------------------------------------------

def charpoly(mat) -> Poly:
    """det(xI - A) via the Faddeev-LeVerrier recursion (exact over Q)."""
    a = np.asarray(mat, dtype=object)
    n = a.shape[0]
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = qzeros(n, n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * qeye(n)
        am = a @ m
        coeffs[n - k] = -Fraction(sum((am[i, i] for i in range(n)), ZERO)) / k
    return poly(coeffs)


def _local_minpoly(a: np.ndarray, v: np.ndarray) -> Poly:
    """Monic generator of {p : p(A) v = 0} via the Krylov sequence."""
    krylov = [v]
    while True:
        stack = np.vstack(krylov)
        nxt = a @ krylov[-1]
        if rank(np.vstack([stack, nxt])) == len(krylov):
            # nxt = sum c_i krylov[i]
            ker = nullspace(np.vstack([stack, nxt]).T)
            rel = ker[0]
            rel = rel / rel[-1]
            return poly(list(rel))
        krylov.append(nxt)


def minpoly(mat) -> Poly:
    a = np.asarray(mat, dtype=object)
    n = a.shape[0]
    out: Poly = (ONE,)
    for i in range(n):
        e = qzeros(n)
        e[i] = ONE
        out = lcm(out, _local_minpoly(a, e))
    return out


# ---------------------------------------------------------------------------
# factorization over Q
# ---------------------------------------------------------------------------

def _integer_coeffs(p: Poly) -> list[int]:
    den = math.lcm(*(x.denominator for x in p))
    ints = [int(x * den) for x in p]
    g = math.gcd(*ints)
    return [x // g for x in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, by the rational root theorem."""
    if degree(p) < 1:
        return []
    roots = []
    if p[0] == 0:
        roots.append(ZERO)
        while p and p[0] == 0:
            p = p[1:]
    if degree(p) < 1:
        return roots
    ints = _integer_coeffs(p)
    cands = {Fraction(s * a, b) for a in _divisors(ints[0]) for b in _divisors(ints[-1])
             for s in (1, -1)}
    roots.extend(r for r in sorted(cands) if evaluate(p, r) == 0)
    return sorted(roots)


def _trial_factor(p: Poly) -> list[tuple[Poly, int]]:
    # residual without rational roots; low degree means irreducible
    if degree(p) <= 3:
        return [(monic(p), 1)]
    if degree(p) > MAX_TRIAL_DEGREE:
        raise IrreducibleFactorizationIncomplete(
            f"degree {degree(p)} residual exceeds the factorization bound {MAX_TRIAL_DEGREE}")
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p))
    _, factors = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for f, mult in factors:
        coeffs = sympy.Poly(f, x).all_coeffs()[::-1]
        out.append((monic(poly([Fraction(int(c.p), int(c.q)) for c in coeffs])), int(mult)))
    check: Poly = (ONE,)
    for f, mult in out:
        check = mul(check, power(f, mult))
    if check != monic(p):
        raise IrreducibleFactorizationIncomplete("trial factorization does not reproduce the input")
    return out


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities, sorted canonically."""
    p = monic(poly(p))
    if degree(p) < 1:
        return []
    out = []
    for r in rational_roots(p):
        lin = (-r, ONE)
        mult = 0
        while True:
            quo, rem = divmod_poly(p, lin)
            if rem:
                break
            p, mult = quo, mult + 1
        out.append((lin, mult))
    if degree(p) >= 1:
        out.extend(_trial_factor(p))
    return sorted(out, key=lambda fm: (degree(fm[0]), fm[0]))
