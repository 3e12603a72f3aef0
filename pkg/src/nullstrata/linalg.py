"""Exact rational and integer linear algebra on small dense matrices.

Vectors are tuples of ``Fraction`` (or ``int``); matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Vector = tuple
Matrix = list


def vec(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def bilinear(u, gram, v):
    """u^T gram v."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            total += ui * sum(g * vj for g, vj in zip(row, v) if vj)
    return total


def mat_vec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve the square system a x = b over Q; None if a is singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(row[n] for row in aug)


def inverse(a):
    n = len(a)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(a, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return transpose(cols)


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def content(v) -> int:
    """gcd of the entries of an integer vector (0 for the zero vector)."""
    return reduce(gcd, (int(x) for x in v), 0)


def primitive_int(v) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector with coprime entries."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {x in Z^ncols : m x = 0}.

    Column operations reduce ``m`` to echelon form while tracking a unimodular
    transform U; columns of U that end up against zero columns of m U span the
    kernel lattice, which is therefore saturated in Z^ncols.
    """
    a = [list(map(int, r)) for r in m]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def colop(j1, j2, p, q, r, s):
        # (col j1, col j2) <- (p*c1 + q*c2, r*c1 + s*c2), det = ps - qr = +-1
        for mat in (a, u):
            for row in mat:
                c1, c2 = row[j1], row[j2]
                row[j1] = p * c1 + q * c2
                row[j2] = r * c1 + s * c2

    piv_col = 0
    for i in range(len(a)):
        if piv_col >= ncols:
            break
        for j in range(piv_col + 1, ncols):
            x, y = a[i][piv_col], a[i][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(piv_col, j, s, t, -y // g, x // g)
        if a[i][piv_col] != 0:
            piv_col += 1
    return [tuple(u[r][j] for r in range(ncols)) for j in range(piv_col, ncols)]


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors of an integer matrix via determinantal divisors
    d_k = gcd of all k x k minors. Exponential in size; meant for ranks <= 8."""
    from itertools import combinations

    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        d = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                d = gcd(d, bareiss_det([[int(m[i][j]) for j in ci] for i in ri]))
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out
