"""Brute-force finite-field counts used as ground truth for the recursion.

Fields: F_p for primes p, and
    F_4 = F_2[x]/(x^2 + x + 1)
    F_8 = F_2[x]/(x^3 + x + 1)
    F_9 = F_3[x]/(x^2 + 1)
Elements of F_{p^e} are encoded as integers whose base-p digits are the
polynomial coefficients (lowest degree first).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np

from .geomopt import min_norm_point
from .rootsys import CapacityError, InputError, build_root_datum

IRREDUCIBLE = {4: (2, [1, 1, 1]), 8: (2, [1, 1, 0, 1]), 9: (3, [1, 0, 1])}
PRIMES = {2, 3, 5, 7, 11, 13}


class GF:
    """Finite field with add/mul/neg lookup tables."""

    def __init__(self, q: int):
        self.q = q
        if q in PRIMES:
            self.p, mod = q, None
        elif q in IRREDUCIBLE:
            self.p, mod = IRREDUCIBLE[q]
        else:
            raise InputError(f"unsupported field size {q}")
        p = self.p
        e = len(mod) - 1 if mod else 1
        digits = [self._digits(a, p, e) for a in range(q)]
        index = {tuple(d): a for a, d in enumerate(digits)}
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = index[tuple((x + y) % p for x, y in zip(digits[a], digits[b]))]
                mul[a, b] = index[tuple(self._polymul(digits[a], digits[b], p, mod))]
        self.add = add
        self.mul = mul
        self.neg = np.array([index[tuple((-x) % p for x in digits[a])] for a in range(q)], dtype=np.int64)

    @staticmethod
    def _digits(a, p, e):
        out = []
        for _ in range(e):
            out.append(a % p)
            a //= p
        return out

    @staticmethod
    def _polymul(u, v, p, mod):
        if mod is None:
            return [(u[0] * v[0]) % p]
        e = len(mod) - 1
        prod_ = [0] * (2 * e - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod_[i + j] = (prod_[i + j] + a * b) % p
        # reduce by the monic modulus
        for k in range(len(prod_) - 1, e - 1, -1):
            c = prod_[k]
            if c:
                for j in range(e + 1):
                    prod_[k - e + j] = (prod_[k - e + j] - c * mod[j]) % p
        return prod_[:e]

    def elements(self):
        return range(self.q)


@dataclass
class FFCount:
    q: int
    total: int
    by_class: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"q": self.q, "total": self.total,
                "by_class": {k: self.by_class[k] for k in sorted(self.by_class)}}


def _matmul(a, b, f: GF):
    n = a.shape[1]
    out = np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            acc = f.mul[a[:, i, 0], b[:, 0, j]]
            for k in range(1, n):
                acc = f.add[acc, f.mul[a[:, i, k], b[:, k, j]]]
            out[:, i, j] = acc
    return out


def ff_nilpotent_count(n: int, q: int, max_elements: int = 20_000_000,
                       chunk: int = 1_000_000) -> FFCount:
    """Nilpotent trace-zero n x n matrices over F_q, by Jordan type.

    For n <= 3 the Jordan type is fixed by the nilpotency index j (smallest j
    with X^j = 0): one block of size j and the rest filled with smaller blocks.
    """
    if n not in (2, 3):
        raise InputError("ff_nilpotent_count supports n = 2 or 3")
    f = GF(q)
    free = n * n - 1
    size = q ** free
    if size > max_elements:
        raise CapacityError(f"{size} matrices exceed bound {max_elements}")
    labels = {2: {1: "[1,1]", 2: "[2]"}, 3: {1: "[1,1,1]", 2: "[2,1]", 3: "[3]"}}[n]
    counts: Counter = Counter()
    powers = q ** np.arange(free, dtype=np.int64)
    diag_positions = [i * n + i for i in range(n)]
    for start in range(0, size, chunk):
        idx = np.arange(start, min(size, start + chunk), dtype=np.int64)
        entries = (idx[:, None] // powers[None, :]) % q
        flat = np.zeros((len(idx), n * n), dtype=np.int64)
        flat[:, : n * n - 1] = entries
        # the last diagonal entry makes the trace vanish
        tr = flat[:, diag_positions[0]]
        for pos in diag_positions[1:-1]:
            tr = f.add[tr, flat[:, pos]]
        flat[:, -1] = f.neg[tr]
        x = flat.reshape(-1, n, n)
        power = x
        index = np.zeros(len(idx), dtype=np.int64)
        for j in range(1, n + 1):
            zero = ~power.reshape(len(idx), -1).any(axis=1)
            newly = zero & (index == 0)
            index[newly] = j
            if j < n:
                power = _matmul(power, x, f)
        for j in range(1, n + 1):
            counts[labels[j]] += int((index == j).sum())
    return FFCount(q=q, total=sum(counts.values()), by_class=dict(counts))


def _root_multiplicity(coeffs, t, f: GF) -> int:
    """Multiplicity of t as a root of sum coeffs[i] x^(deg - i) (Horner)."""
    poly = list(coeffs)
    mult = 0
    while poly and any(poly):
        # synthetic division by (x - t)
        out = []
        acc = 0
        for c in poly:
            acc = int(f.add[int(f.mul[acc, t]), c])
            out.append(acc)
        rem = out.pop()
        if rem != 0:
            break
        mult += 1
        poly = out
    return mult


def ff_binary_form_count(d: int, q: int) -> FFCount:
    """Binary forms of degree d over F_q in the SL_2 nullcone.

    A nonzero form is unstable iff some linear factor has multiplicity > d/2;
    such a factor is unique, hence Frobenius-stable and defined over F_q, so
    it suffices to inspect the q + 1 rational points of P^1.
    """
    if not 1 <= d <= 6 or q > 9:
        raise CapacityError("binary form oracle supports d <= 6 and q <= 9")
    f = GF(q)
    counts: Counter = Counter()
    for coeffs in product(range(q), repeat=d + 1):
        if not any(coeffs):
            counts["zero"] += 1
            continue
        # coeffs[i] multiplies x^(d-i) y^i; a root at infinity is a power of y
        at_inf = next(i for i, c in enumerate(coeffs) if c)
        best = at_inf
        for t in f.elements():
            best = max(best, _root_multiplicity(coeffs, t, f))
        if 2 * best > d:
            counts[f"mult={best}"] += 1
    return FFCount(q=q, total=sum(counts.values()), by_class=dict(counts))


def ff_torus_count(weights, q: int, gram, max_dim: int = 12) -> FFCount:
    """Unstable vectors of a torus representation over F_q.

    ``weights`` lists one weight per coordinate (repeat a weight for
    multiplicity).  A vector is unstable iff 0 is not in the convex hull of
    the weights on its support; every vector with support S is one of
    (q - 1)^|S|, so vectors are enumerated support pattern by pattern.
    """
    weights = [tuple(Fraction(x) for x in w) for w in weights]
    dim = len(weights)
    if dim > max_dim:
        raise CapacityError(f"torus oracle supports dimension <= {max_dim}")
    verdict: dict = {}
    counts: dict = {}
    for bits in product((0, 1), repeat=dim):
        support = frozenset(w for w, b in zip(weights, bits) if b)
        if support not in verdict:
            verdict[support] = (not support) or not min_norm_point(sorted(support), gram).is_zero
        if verdict[support]:
            counts["".join(map(str, bits))] = (q - 1) ** sum(bits)
    return FFCount(q=q, total=sum(counts.values()), by_class=counts)


def _sym3(v):
    a11, a22, a33, a12, a13, a23 = (v[..., i] for i in range(6))
    return ((a11, a12, a13), (a12, a22, a23), (a13, a23, a33))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def ff_conic_pencil_count(q: int, max_elements: int = 300_000_000) -> FFCount:
    """Unstable pencils (A, B) of ternary quadratic forms under SL_2 x SL_3.

    The invariants are generated by the discriminant of the binary cubic
    det(sA + tB), so a pencil is unstable iff that cubic has a repeated
    root (or vanishes).  Odd primes only: symmetric matrices stand in for
    quadratic forms.
    """
    if q not in PRIMES or q == 2:
        raise InputError("conic pencil oracle needs an odd prime")
    if q ** 12 > max_elements:
        raise CapacityError(f"{q ** 12} pencils exceed bound {max_elements}")
    forms = np.array(list(product(range(q), repeat=6)), dtype=np.int64)
    b_mat = _sym3(forms)
    d = _det3(b_mat) % q
    counts: Counter = Counter()
    for a in forms:
        a_mat = _sym3(a)
        lead = int(_det3(a_mat)) % q
        # the cubic a s^3 + b s^2 t + c s t^2 + d t^3 from its values at (1, 1) and (1, -1)
        plus = _det3([[a_mat[i][j] + b_mat[i][j] for j in range(3)] for i in range(3)])
        minus = _det3([[a_mat[i][j] - b_mat[i][j] for j in range(3)] for i in range(3)])
        b_plus_c = plus - lead - d
        c_minus_b = minus - lead + d
        c = ((b_plus_c + c_minus_b) // 2) % q
        b = (b_plus_c - c) % q
        disc = (b * b * c * c - 4 * lead * c ** 3 - 4 * b ** 3 * d
                - 27 * lead * lead * d * d + 18 * lead * b * c * d) % q
        counts["unstable"] += int((disc == 0).sum())
    return FFCount(q=q, total=counts["unstable"], by_class=dict(counts))


def jordan_to_stratum(partition) -> tuple[tuple[int, ...], int]:
    """Stratum label (lam in simple-coroot coordinates, k) of a nilpotent
    Jordan type in sl_n, via the characteristic h = 2 * lam / k."""
    parts = sorted((int(p) for p in partition), reverse=True)
    if not parts or any(p <= 0 for p in parts):
        raise InputError("partition must have positive parts")
    n = sum(parts)
    if all(p == 1 for p in parts):
        raise InputError("the zero orbit has no stratum")
    h = sorted((p - 1 - 2 * i for p in parts for i in range(p)), reverse=True)
    c = [sum(h[: i + 1]) for i in range(n - 1)]
    g = 0
    for x in c:
        g = gcd(g, x)
    k = Fraction(2, g)
    if k.denominator != 1:
        raise InputError("characteristic is not an even multiple of a lattice vector")
    return tuple(x // g for x in c), int(k)


def partitions(n: int):
    """All partitions of n, parts in decreasing order."""
    def gen(rem, cap):
        if rem == 0:
            yield []
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in gen(rem - p, p):
                yield [p] + rest
    return list(gen(n, n))


def partition_label(parts) -> str:
    return "[" + ",".join(str(p) for p in parts) + "]"


def sl_datum(n: int):
    return build_root_datum(f"A{n - 1}")


__all__ = ["GF", "FFCount", "ff_nilpotent_count", "ff_binary_form_count", "ff_torus_count",
           "ff_conic_pencil_count", "jordan_to_stratum", "partitions", "partition_label"]
