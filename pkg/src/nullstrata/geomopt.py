"""Exact convex geometry for torus instability.

Minimal-norm points of convex hulls of weights are computed with Wolfe's
active-set method in rational arithmetic, so optimality is a decidable
equality rather than a tolerance test.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from . import linalg as la
from .repchar import m_value

SEMISTABLE = "semistable"


@dataclass(frozen=True)
class MinNormResult:
    point: tuple[Fraction, ...]
    # (input index, convex coefficient) pairs over a supporting subset
    certificate: tuple[tuple[int, Fraction], ...]

    @property
    def is_zero(self) -> bool:
        return la.is_zero(self.point)


def affine_minimizer(pts: Sequence[Sequence], gram) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None:
    """Projection of the origin onto the affine hull of ``pts``.

    Returns (point, barycentric coefficients), or None when the points are
    affinely dependent.
    """
    s = len(pts)
    # [G 1; 1^T 0] [b; -nu] = [0; 1]
    a = [[la.bilinear(p, gram, q) for q in pts] + [1] for p in pts]
    a.append([1] * s + [0])
    x = la.solve(a, [0] * s + [1])
    if x is None:
        return None
    bary = x[:s]
    point = tuple(sum(b * p[i] for b, p in zip(bary, pts)) for i in range(len(pts[0])))
    return point, bary


def min_norm_point(points: Sequence[Sequence], gram) -> MinNormResult:
    """Unique point of minimal gram-norm in the convex hull of ``points``."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("min_norm_point needs a nonempty point set")
    norms = [la.bilinear(p, gram, p) for p in pts]
    start = min(range(len(pts)), key=lambda i: (norms[i], i))
    active = [start]
    coef = [Fraction(1)]
    x = pts[start]
    while True:
        xx = la.bilinear(x, gram, x)
        if xx == 0:
            break
        scores = [la.bilinear(x, gram, p) for p in pts]
        j = min(range(len(pts)), key=lambda i: (scores[i], i))
        if scores[j] >= xx or j in active:
            break
        active.append(j)
        coef.append(Fraction(0))
        while True:
            res = affine_minimizer([pts[i] for i in active], gram)
            if res is None:  # exact arithmetic keeps the active set independent
                raise ArithmeticError("active set became affinely dependent")
            y, bary = res
            if all(b > 0 for b in bary):
                x, coef = y, list(bary)
                break
            theta = min(c / (c - b) for c, b in zip(coef, bary) if b <= 0 and c > 0)
            coef = [theta * b + (1 - theta) * c for c, b in zip(coef, bary)]
            x = tuple(theta * yi + (1 - theta) * xi for yi, xi in zip(y, x))
            keep = [k for k, c in enumerate(coef) if c > 0]
            active = [active[k] for k in keep]
            coef = [coef[k] for k in keep]
    cert = tuple(sorted(zip(active, coef)))
    return MinNormResult(point=x, certificate=cert)


def min_norm_bruteforce(points: Sequence[Sequence], gram) -> tuple[Fraction, ...]:
    """All-faces oracle: best affine-hull projection lying in the hull."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    best = None
    for s in range(1, len(pts) + 1):
        for sub in combinations(pts, s):
            res = affine_minimizer(list(sub), gram)
            if res is None:
                continue
            y, bary = res
            if any(b < 0 for b in bary):
                continue
            n = la.bilinear(y, gram, y)
            if best is None or n < best[0]:
                best = (n, y)
    return best[1]


def project_orthogonal(v, lam, gram) -> tuple[Fraction, ...]:
    """v - ((v, lam) / (lam, lam)) lam."""
    ll = la.bilinear(lam, gram, lam)
    if ll == 0:
        raise ValueError("cannot project along the zero vector")
    c = Fraction(la.bilinear(v, gram, lam)) / ll
    return tuple(Fraction(a) - c * b for a, b in zip(v, lam))


def torus_optimal(support, state):
    """Optimal torus cocharacter for a set of weights.

    Returns SEMISTABLE when 0 lies in the convex hull, otherwise
    ``(lam, m, mu)`` with lam the primitive sublattice multiple of the
    min-norm point mu and m = min (chi, lam) over the support.
    """
    support = [tuple(Fraction(x) for x in w) for w in support]
    if not support:
        return SEMISTABLE
    res = min_norm_point(support, state.datum.gram)
    if res.is_zero:
        return SEMISTABLE
    lam = state.primitive(res.point)
    return lam, m_value(state.datum, support, lam), res.point


# -- candidate directions ------------------------------------------------

def _integer_weights(weights):
    den = 1
    for w in weights:
        for x in w:
            den = lcm(den, Fraction(x).denominator)
    return [tuple(int(Fraction(x) * den) for x in w) for w in weights]


def _normalize(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    return la.bareiss_det(m)


def _projection_direction(idx, gram_table, pts, interior_only):
    """Integer vector along the projection of 0 onto aff(pts[idx]), or None.

    Linearly independent points give b proportional to adj(G_S) 1, where G_S
    is their Gram matrix; dependent ones either have 0 in their affine hull
    or are affinely dependent and are skipped.
    """
    s = len(idx)
    g = [[gram_table[i][j] for j in idx] for i in idx]
    d = _det(g)
    if d == 0:
        return None
    coeffs = []
    for c in range(s):
        mc = [row[:c] + [1] + row[c + 1:] for row in g]
        coeffs.append(_det(mc))
    if d < 0:
        coeffs = [-c for c in coeffs]
    if interior_only and any(c <= 0 for c in coeffs):
        return None
    dim = len(pts[0])
    out = [0] * dim
    for c, i in zip(coeffs, idx):
        if c:
            p = pts[i]
            for k in range(dim):
                out[k] += c * p[k]
    return tuple(out)


def candidate_directions(weights, state, max_subset: int | None = None,
                         interior_only: bool = True) -> list[tuple[Fraction, ...]]:
    """Primitive dominant sublattice cocharacters that may label strata.

    Every subset of at most ``max_subset`` (default: the state's rank)
    linearly independent nonzero weights contributes the projection of the
    origin onto its affine hull; with ``interior_only`` only projections
    inside the subset's convex hull are kept, which still covers every
    min-norm point by Caratheodory's theorem.
    """
    gram = state.datum.gram
    distinct = sorted({tuple(Fraction(x) for x in w) for w in weights if not la.is_zero(w)})
    if not distinct or state.rank == 0:
        return []
    bound = state.rank if max_subset is None else max_subset
    ipts = _integer_weights(distinct)
    table = [[la.bilinear(p, gram, q) for q in ipts] for p in ipts]
    raw: set[tuple[int, ...]] = set()
    n = len(ipts)
    for s in range(1, min(bound, n) + 1):
        for idx in combinations(range(n), s):
            d = _projection_direction(idx, table, ipts, interior_only)
            if d is not None:
                raw.add(_normalize(d))
    found = set()
    for d in sorted(raw):
        dom = state.make_dominant(d)
        found.add(state.primitive(dom))
    return sorted(found)
