"""Module characters: weight multisets with multiplicities."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import linalg as la
from .rootsys import CapacityError, InputError, RootDatum, make_dominant, orbit


def _canon(weights: Iterable[tuple[tuple, int]]) -> tuple[tuple[tuple[Fraction, ...], int], ...]:
    acc: Counter = Counter()
    for w, m in weights:
        if m < 0:
            raise InputError("negative multiplicity")
        if m:
            acc[tuple(Fraction(x) for x in w)] += int(m)
    return tuple(sorted(acc.items()))


@dataclass(frozen=True, eq=False)
class ModuleCharacter:
    """Weights (vectors of E) with positive multiplicities, stored sorted."""

    datum: RootDatum
    weights: tuple[tuple[tuple[Fraction, ...], int], ...]

    @classmethod
    def from_weights(cls, datum: RootDatum, weights) -> ModuleCharacter:
        return cls(datum, _canon(weights))

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.weights)

    def multiplicity(self, w) -> int:
        w = tuple(Fraction(x) for x in w)
        return dict(self.weights).get(w, 0)

    def support(self) -> list[tuple[Fraction, ...]]:
        return [w for w, _ in self.weights]

    def __eq__(self, other):
        if not isinstance(other, ModuleCharacter):
            return NotImplemented
        return self.datum is other.datum and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def is_w_invariant(self) -> bool:
        table = dict(self.weights)
        for a in self.datum.simple_roots:
            for w, m in self.weights:
                if table.get(self.datum.reflect(w, a), 0) != m:
                    return False
        return True

    def to_json(self) -> list[dict]:
        """Weights in coordinates dual to the cocharacter basis
        (fundamental-weight coordinates for the default lattice)."""
        return [{"weight": [_rat(x) for x in self.datum.weight_coords(w)], "mult": m}
                for w, m in self.weights]

    @classmethod
    def from_json(cls, datum: RootDatum, data: list[dict]) -> ModuleCharacter:
        return cls.from_weights(
            datum,
            [(datum.from_weight_coords([Fraction(x) for x in d["weight"]]), int(d["mult"]))
             for d in data])


def _rat(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def adjoint_character(datum: RootDatum) -> ModuleCharacter:
    zero = tuple(Fraction(0) for _ in range(datum.rank))
    return ModuleCharacter.from_weights(datum, [(r, 1) for r in datum.roots] + [(zero, datum.rank)])


def dual_character(ch: ModuleCharacter) -> ModuleCharacter:
    return ModuleCharacter.from_weights(ch.datum, [(tuple(-x for x in w), m) for w, m in ch.weights])


def weight_pairing(datum: RootDatum, chi, lam) -> Fraction:
    return Fraction(datum.pair(chi, lam))


def m_value(datum: RootDatum, support, lam):
    """min over the support of (chi, lam); +inf for the empty support."""
    support = list(support)
    if not support:
        return math.inf
    return min(weight_pairing(datum, w, lam) for w in support)


def weyl_dimension(datum: RootDatum, hw) -> int:
    rho = datum.rho
    num = Fraction(1)
    for a in datum.positive_roots:
        num *= Fraction(datum.pair(la.add(hw, rho), a), datum.pair(rho, a))
    assert num.denominator == 1
    return int(num)


def _depth(datum: RootDatum, diff) -> Fraction:
    # simple-root coordinates of the semisimple part are the E coordinates
    return sum(x for i, x in enumerate(diff) if i not in datum.torus_coords)


def dominant_multiplicities(datum: RootDatum, hw) -> dict[tuple[Fraction, ...], int]:
    """Freudenthal's formula on the dominant weights of the irreducible module."""
    hw = tuple(Fraction(x) for x in hw)
    simple = datum.simple_roots
    positive = datum.positive_roots
    dominant = {hw}
    frontier = [hw]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in positive:
                nu = la.sub(mu, a)
                if nu in dominant:
                    continue
                if all(datum.pair(nu, s) >= 0 for s in simple):
                    dominant.add(nu)
                    nxt.append(nu)
        frontier = nxt
    order = sorted(dominant, key=lambda mu: (_depth(datum, la.sub(hw, mu)), mu))
    rho = datum.rho
    top = datum.norm2(la.add(hw, rho))
    mult: dict[tuple[Fraction, ...], int] = {}
    for mu in order:
        if mu == hw:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for a in positive:
            j = 1
            while True:
                nu = tuple(x + j * y for x, y in zip(mu, a))
                dom, _ = make_dominant(nu, datum.gram, simple)
                m = mult.get(dom)
                if m is None:
                    break
                total += m * datum.pair(nu, a)
                j += 1
        denom = top - datum.norm2(la.add(mu, rho))
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError("Freudenthal produced a non-integral multiplicity")
        mult[mu] = int(value)
    return {mu: m for mu, m in mult.items() if m}


def highest_weight_character(datum: RootDatum, hw, max_dim: int = 100_000) -> ModuleCharacter:
    """Character of the irreducible complex module with highest weight ``hw``."""
    hw = tuple(Fraction(x) for x in hw)
    if len(hw) != datum.rank:
        raise InputError("highest weight has wrong length")
    if any(datum.pair(hw, s) < 0 for s in datum.simple_roots):
        raise InputError("highest weight is not dominant")
    if not datum.in_char_lattice(hw):
        raise InputError("highest weight is not in the character lattice")
    expected = weyl_dimension(datum, hw)
    if expected > max_dim:
        raise CapacityError(f"module dimension {expected} exceeds bound {max_dim}")
    weights = []
    for mu, m in dominant_multiplicities(datum, hw).items():
        for nu in orbit(mu, datum.gram, datum.simple_roots):
            weights.append((nu, m))
    ch = ModuleCharacter.from_weights(datum, weights)
    if ch.dim != expected:
        raise ArithmeticError(f"Freudenthal dimension {ch.dim} != Weyl dimension {expected}")
    return ch


def hw_from_fundamental(datum: RootDatum, coeffs) -> tuple[Fraction, ...]:
    """Highest weight from fundamental-weight coefficients; extra trailing
    coefficients are central-torus coordinates, missing ones are zero."""
    coeffs = [Fraction(c) for c in coeffs]
    fws = datum.fundamental_weights
    n_ss = len(fws)
    if len(coeffs) > n_ss + len(datum.torus_coords):
        raise InputError("too many highest-weight coefficients")
    coeffs += [Fraction(0)] * (n_ss + len(datum.torus_coords) - len(coeffs))
    out = [Fraction(0)] * datum.rank
    for c, w in zip(coeffs[:n_ss], fws):
        out = [o + c * x for o, x in zip(out, w)]
    for c, i in zip(coeffs[n_ss:], datum.torus_coords):
        out[i] += c
    return tuple(out)
