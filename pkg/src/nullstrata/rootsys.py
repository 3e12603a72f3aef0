"""Root data for products of simple types A-G with a central torus.

Everything lives in one rational space E.  For the semisimple part the
coordinates of E are taken with respect to the simple roots, so roots are
integer vectors; each central torus factor contributes a coordinate with
identity Gram block.  Characters and cocharacters are both vectors of E,
paired through the W-invariant Gram form (short roots have squared length 2).
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

from . import linalg as la
from .polynomial import InexactDivision, IntPolynomial


class InputError(ValueError):
    """Invalid user-supplied data (types, weights, partitions ...)."""


class CapacityError(RuntimeError):
    """A configured enumeration bound was exceeded."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


LEGAL_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class TypeSpec:
    factors: tuple[tuple[str, int], ...] = ()
    torus: int = 0

    @property
    def semisimple_rank(self) -> int:
        return sum(n for _, n in self.factors)

    @property
    def rank(self) -> int:
        return self.semisimple_rank + self.torus

    def __str__(self) -> str:
        parts = "x".join(f"{f}{n}" for f, n in self.factors)
        if self.torus:
            parts = f"{parts}+T{self.torus}" if parts else f"T{self.torus}"
        return parts or "T0"


def parse_type(text: str) -> TypeSpec:
    """Parse strings like ``"A2"``, ``"B2xA1"``, ``"A1+T1"`` or ``"T2"``."""
    text = text.strip().replace(" ", "")
    if not text:
        raise InputError("empty type string")
    torus = 0
    factors = []
    for chunk in text.split("+"):
        for piece in chunk.split("x"):
            m = re.fullmatch(r"([A-GT])(\d+)", piece)
            if not m:
                raise InputError(f"cannot parse type component {piece!r}")
            fam, n = m.group(1), int(m.group(2))
            if fam == "T":
                torus += n
                continue
            if not LEGAL_RANKS[fam](n):
                raise InputError(f"illegal rank {n} for family {fam}")
            factors.append((fam, n))
    return TypeSpec(tuple(factors), torus)


def _dynkin(family: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of simple roots and the edge list (Bourbaki numbering)."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return [2] * n, chain
    if family == "B":
        return [4] * (n - 1) + [2], chain
    if family == "C":
        return [2] * (n - 1) + [4], chain
    if family == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return [2] * n, edges
    if family == "F":
        return [4, 4, 2, 2], chain
    if family == "G":
        return [2, 6], chain
    raise InputError(f"unknown family {family!r}")


DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: sorted(list(range(2, 2 * n - 1, 2)) + [n]),
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12],
                    7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


@dataclass(frozen=True)
class Component:
    family: str
    rank: int
    coords: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Split reductive root datum embedded in E (see module docstring)."""

    type_spec: TypeSpec
    rank: int
    gram: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    components: tuple[Component, ...]
    torus_coords: tuple[int, ...]
    cochar_basis: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    # -- basic pairings -------------------------------------------------
    def pair(self, u, v):
        return la.bilinear(u, self.gram, v)

    def norm2(self, v):
        return self.pair(v, v)

    def coroot(self, alpha) -> tuple[Fraction, ...]:
        return la.scale(Fraction(2, self.norm2(alpha)), alpha)

    def reflect(self, v, alpha):
        c = Fraction(2 * self.pair(v, alpha), self.norm2(alpha))
        return tuple(a - c * b for a, b in zip(v, alpha))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r in self.roots if is_positive(r))

    @property
    def dim(self) -> int:
        return len(self.roots) + self.rank

    # -- lattices -------------------------------------------------------
    @cached_property
    def char_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Basis of the character lattice X, dual to ``cochar_basis``."""
        bg = la.mat_mul([list(r) for r in self.cochar_basis], [list(r) for r in self.gram])
        # rows x_i with (x_i, y_j) = delta_ij: X = (B G)^{-T}
        inv = la.inverse(bg)
        return tuple(tuple(r) for r in la.transpose(inv))

    def lattice_coords(self, v) -> tuple[Fraction, ...]:
        """Coordinates of v in E with respect to the cocharacter lattice basis."""
        bt = la.transpose([list(r) for r in self.cochar_basis])
        x = la.solve(bt, v)
        if x is None:
            raise ConsistencyError("cocharacter basis is singular")
        return x

    def from_lattice_coords(self, c) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.rank
        for ci, b in zip(c, self.cochar_basis):
            if ci:
                out = [o + ci * x for o, x in zip(out, b)]
        return tuple(out)

    def weight_coords(self, chi) -> tuple[Fraction, ...]:
        """Coordinates of a character in the basis dual to the cocharacter basis
        (fundamental weights in the simply connected case)."""
        return tuple(self.pair(chi, y) for y in self.cochar_basis)

    def from_weight_coords(self, c) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.rank
        for ci, b in zip(c, self.char_basis):
            if ci:
                out = [o + ci * x for o, x in zip(out, b)]
        return tuple(out)

    def in_cochar_lattice(self, v) -> bool:
        return all(x.denominator == 1 for x in self.lattice_coords(v))

    def in_char_lattice(self, chi) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.weight_coords(chi))

    @cached_property
    def fundamental_weights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Fundamental weights of the semisimple part, in simple-root order."""
        out = []
        for i in range(self.rank):
            if i in self.torus_coords:
                continue
            target = [Fraction(0)] * self.rank
            target[i] = Fraction(self.gram[i][i], 2)
            # (w, alpha_j) = target_j for simple roots; zero on torus coords
            w = la.solve([list(r) for r in self.gram], target)
            out.append(w)
        return tuple(out)

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        return tuple(sum(c) for c in zip(*self.fundamental_weights)) if self.fundamental_weights \
            else tuple(Fraction(0) for _ in range(self.rank))

    # -- Weyl group -----------------------------------------------------
    def make_dominant(self, v, simple_roots=None) -> tuple[tuple[Fraction, ...], list[int]]:
        return make_dominant(v, self.gram, self.simple_roots if simple_roots is None else simple_roots)

    def parabolic_dimension(self, lam, roots=None, rank=None) -> int:
        """dim P(lam) = #{alpha : (alpha, lam) >= 0} + rank."""
        roots = self.roots if roots is None else roots
        rank = self.rank if rank is None else rank
        return sum(1 for a in roots if self.pair(a, lam) >= 0) + rank

    def weyl_order_bfs(self, bound: int = 2_000_000) -> int:
        """|W| as the size of the orbit of a regular dominant vector."""
        regular = tuple(Fraction(x) for x in self.rho)
        if not self.roots:
            return 1
        return len(orbit(regular, self.gram, self.simple_roots, bound))


def is_positive(root) -> bool:
    """Ambient positivity: first nonzero coordinate is positive.

    Roots are nonnegative or nonpositive in simple-root coordinates, so this
    agrees with the usual notion for ambient roots and restricts to a positive
    system on every subsystem."""
    for x in root:
        if x:
            return x > 0
    return False


def make_dominant(v, gram, simple_roots) -> tuple[tuple[Fraction, ...], list[int]]:
    """Move v into the dominant chamber of ``simple_roots``.

    Returns the dominant vector and the list of simple-reflection indices
    applied, in order, to reach it from v."""
    v = tuple(Fraction(x) for x in v)
    word: list[int] = []
    norms = [la.bilinear(a, gram, a) for a in simple_roots]
    while True:
        for i, a in enumerate(simple_roots):
            p = la.bilinear(a, gram, v)
            if p < 0:
                c = 2 * p / norms[i]
                v = tuple(x - c * y for x, y in zip(v, a))
                word.append(i)
                break
        else:
            return v, word


def apply_word(v, word, gram, simple_roots):
    v = tuple(Fraction(x) for x in v)
    for i in word:
        a = simple_roots[i]
        c = Fraction(2 * la.bilinear(v, gram, a), la.bilinear(a, gram, a))
        v = tuple(x - c * y for x, y in zip(v, a))
    return v


def orbit(v, gram, simple_roots, bound: int = 2_000_000) -> set:
    """W-orbit of v under the reflections in ``simple_roots`` (BFS)."""
    v = tuple(Fraction(x) for x in v)
    seen = {v}
    queue = deque([v])
    norms = [la.bilinear(a, gram, a) for a in simple_roots]
    while queue:
        x = queue.popleft()
        for a, n in zip(simple_roots, norms):
            p = la.bilinear(x, gram, a)
            if p == 0:
                continue
            c = 2 * p / n
            y = tuple(s - c * t for s, t in zip(x, a))
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise CapacityError(f"Weyl orbit exceeds bound {bound}")
                queue.append(y)
    return seen


def _close_roots(simple, gram):
    norms = [la.bilinear(a, gram, a) for a in simple]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        x = queue.popleft()
        for a, n in zip(simple, norms):
            c = 2 * la.bilinear(x, gram, a)
            if c % n:
                raise ConsistencyError("non-integral Cartan pairing")
            c //= n
            if c == 0:
                continue
            y = tuple(s - c * t for s, t in zip(x, a))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def build_root_datum(spec: TypeSpec | str | Sequence[tuple[str, int]], torus: int = 0,
                     cochar_basis: Sequence[Sequence] | None = None) -> RootDatum:
    """Construct the root datum of a product of simple types and a torus.

    ``cochar_basis`` (rows in E coordinates) overrides the default coroot
    lattice; it must contain every coroot and pair integrally with every root.
    """
    if isinstance(spec, str):
        spec = parse_type(spec)
    elif not isinstance(spec, TypeSpec):
        spec = TypeSpec(tuple(spec), torus)
    for fam, n in spec.factors:
        if fam not in LEGAL_RANKS or not LEGAL_RANKS[fam](n):
            raise InputError(f"illegal family/rank {fam}{n}")
    r = spec.rank
    gram = [[0] * r for _ in range(r)]
    components = []
    offset = 0
    for fam, n in spec.factors:
        lengths, edges = _dynkin(fam, n)
        for i, ln in enumerate(lengths):
            gram[offset + i][offset + i] = ln
        for i, j in edges:
            v = -max(lengths[i], lengths[j]) // 2
            gram[offset + i][offset + j] = gram[offset + j][offset + i] = v
        components.append(Component(fam, n, tuple(range(offset, offset + n))))
        offset += n
    torus_coords = tuple(range(offset, r))
    for i in torus_coords:
        gram[i][i] = 1
    simple = []
    for c in components:
        for i in c.coords:
            e = [0] * r
            e[i] = 1
            simple.append(tuple(e))
    roots = _close_roots(simple, gram) if simple else set()
    roots = tuple(sorted(roots, reverse=True))
    if cochar_basis is None:
        basis = []
        for i in range(r):
            e = [Fraction(0)] * r
            e[i] = Fraction(2, gram[i][i]) if i not in torus_coords else Fraction(1)
            basis.append(tuple(e))
    else:
        basis = [tuple(Fraction(x) for x in row) for row in cochar_basis]
        if len(basis) != r or la.rank(basis) != r:
            raise InputError("cocharacter basis must have full rank")
    datum = RootDatum(
        type_spec=spec,
        rank=r,
        gram=tuple(tuple(row) for row in gram),
        simple_roots=tuple(simple),
        roots=roots,
        components=tuple(components),
        torus_coords=torus_coords,
        cochar_basis=tuple(basis),
    )
    if cochar_basis is not None:
        for a in datum.roots:
            if not datum.in_cochar_lattice(datum.coroot(a)):
                raise InputError("cocharacter lattice must contain all coroots")
            if not datum.in_char_lattice(a):
                raise InputError("roots must pair integrally with the cocharacter lattice")
    return datum


def reflection_degrees(datum: RootDatum) -> list[list[int]]:
    """Degrees of the basic invariants, one list per simple component."""
    return [DEGREES[c.family](c.rank) for c in datum.components]


# -- subsystems ---------------------------------------------------------

def simple_system(roots: Iterable, gram) -> list:
    """Indecomposable positive roots of a root system closed under negation."""
    pos = [r for r in roots if is_positive(r)]
    pos_set = set(pos)
    simple = []
    for r in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pos_set for s in pos if s != r
        )
        if not decomposable:
            simple.append(r)
    return sorted(simple, reverse=True)


def _classify_component(nodes, cartan) -> tuple[str, int]:
    n = len(nodes)
    if n == 1:
        return ("A", 1)
    bonds = {}
    for i in nodes:
        for j in nodes:
            if i < j and cartan[i][j]:
                bonds[(i, j)] = cartan[i][j] * cartan[j][i]
    if any(b == 3 for b in bonds.values()):
        if n != 2:
            raise ConsistencyError("triple bond outside G2")
        return ("G", 2)
    doubles = [e for e, b in bonds.items() if b == 2]
    degree = {i: sum(1 for e in bonds if i in e) for i in nodes}
    if len(bonds) != n - 1 or any(b > 3 for b in bonds.values()) or len(doubles) > 1:
        raise ConsistencyError("Cartan matrix is not of finite type")
    if doubles:
        if max(degree.values()) > 2:
            raise ConsistencyError("branched diagram with a double bond")
        (i, j), = doubles
        ends = [k for k in nodes if degree[k] == 1]
        if n == 2:
            return ("B", 2)
        if degree[i] == 2 and degree[j] == 2:
            if n != 4:
                raise ConsistencyError("interior double bond outside F4")
            return ("F", 4)
        # the double bond touches an end node; short side decides B vs C
        end = i if i in ends else j
        other = j if end == i else i
        # |a_{end,other}| = 2 means the end root is the long one
        end_is_long = abs(cartan[end][other]) == 2
        return ("C", n) if end_is_long else ("B", n)
    branch = [k for k in nodes if degree[k] >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or degree[branch[0]] != 3:
        raise ConsistencyError("not a finite-type simply laced diagram")
    b = branch[0]
    adj = {k: [m for m in nodes if m != k and cartan[k][m]] for k in nodes}
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [m for m in adj[cur] if m != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", n)
    raise ConsistencyError(f"diagram with arms {arms} is not of finite type")


def classify_subsystem(roots: Iterable, gram, ambient_rank: int) -> TypeSpec:
    """Identify the Cartan type of a root subsystem closed under negation.

    The torus part is the ambient rank minus the semisimple rank."""
    roots = list(roots)
    simple = simple_system(roots, gram)
    n = len(simple)
    cartan = [[Fraction(2 * la.bilinear(a, gram, b), la.bilinear(b, gram, b)) for b in simple]
              for a in simple]
    for row in cartan:
        for x in row:
            if x.denominator != 1:
                raise ConsistencyError("non-integral Cartan matrix")
    cartan = [[int(x) for x in row] for row in cartan]
    seen: set[int] = set()
    factors = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j]:
                    seen.add(j)
                    stack.append(j)
        factors.append(_classify_component(sorted(comp), cartan))
    order = "ABCDEFG"
    factors.sort(key=lambda f: (order.index(f[0]), f[1]))
    return TypeSpec(tuple(factors), ambient_rank - n)


def weyl_poincare(spec: TypeSpec) -> IntPolynomial:
    """Poincare polynomial of the Weyl group: prod of [d]_t over degrees."""
    out = IntPolynomial([1])
    for fam, n in spec.factors:
        for d in DEGREES[fam](n):
            out = out * IntPolynomial.q_integer(d)
    return out


def weyl_order(spec: TypeSpec) -> int:
    return prod(prod(DEGREES[f](n)) for f, n in spec.factors)


def poincare_quotient(datum: RootDatum, levi_roots, roots=None) -> IntPolynomial:
    """|G^F / P^F| as a polynomial: W(roots) Poincare series over that of the Levi.

    ``roots`` defaults to all roots of the datum; the recursion passes the
    live roots of a Levi subgroup instead."""
    roots = datum.roots if roots is None else roots
    big = weyl_poincare(classify_subsystem(roots, datum.gram, datum.rank))
    small = weyl_poincare(classify_subsystem(levi_roots, datum.gram, datum.rank))
    try:
        return big.exact_div(small)
    except InexactDivision as exc:
        raise ConsistencyError(f"misclassified Levi subsystem: {exc}") from exc


def _generic_center_vector(datum: RootDatum, roots, levi_roots):
    """A vector orthogonal to exactly ``levi_roots`` among ``roots``."""
    levi_set = set(levi_roots)
    constraints = [la.mat_vec(datum.gram, a) for a in levi_roots]
    basis = _nullspace(constraints, datum.rank) if constraints else \
        [tuple(Fraction(int(i == j)) for j in range(datum.rank)) for i in range(datum.rank)]
    others = [a for a in roots if a not in levi_set]
    for k in range(2, 200):
        coeffs = [k ** j for j in range(len(basis))]
        v = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(datum.rank))
        if all(datum.pair(a, v) != 0 for a in others):
            return v
    raise ConsistencyError("could not find a generic cocharacter for the Levi")


def _nullspace(rows, ncols):
    """Rational basis of {x : row . x = 0 for all rows}."""
    red, pivots = la.rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        out.append(tuple(x))
    return out


def coset_poincare_bruteforce(datum: RootDatum, levi_roots, roots=None,
                              bound: int = 2_000_000) -> IntPolynomial:
    """Sum of t^length over minimal coset representatives of W / W_L, by BFS.

    Cosets are identified with the W-orbit of a cocharacter whose centralizer
    has root system ``levi_roots``; the length of the minimal representative
    sending the dominant representative to mu is #{alpha > 0 : (alpha, mu) < 0}.
    """
    roots = datum.roots if roots is None else tuple(roots)
    spec = classify_subsystem(roots, datum.gram, datum.rank)
    if weyl_order(spec) > bound:
        raise CapacityError(f"|W| = {weyl_order(spec)} exceeds bound {bound}")
    simple = simple_system(roots, datum.gram)
    lam = _generic_center_vector(datum, roots, list(levi_roots))
    dom, _ = make_dominant(lam, datum.gram, simple)
    positive = [a for a in roots if is_positive(a)]
    coeffs: dict[int, int] = {}
    for mu in orbit(dom, datum.gram, simple, bound):
        length = sum(1 for a in positive if datum.pair(a, mu) < 0)
        coeffs[length] = coeffs.get(length, 0) + 1
    top = max(coeffs)
    return IntPolynomial([coeffs.get(i, 0) for i in range(top + 1)])
