"""Hesselink strata of a module character, by recursion on Levi rank.

A stratum is labelled by a primitive dominant cocharacter ``lam`` and an
integer ``k >= 1``.  It is nonempty exactly when the graded piece
V(lam, k) (weights pairing to k with lam) contains vectors that are
semistable for the group L-perp(lam): the Levi of lam with its central
direction lam removed.  That is decided by computing the nullcone count of
the graded piece recursively and checking that it is a proper subvariety,
i.e. that its count polynomial has degree below dim V(lam, k).
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .geomopt import candidate_directions, project_orthogonal
from .polynomial import IntPolynomial
from .repchar import ModuleCharacter
from .rootsys import (ConsistencyError, InputError, RootDatum, TypeSpec, classify_subsystem,
                      make_dominant, poincare_quotient, simple_system)

log = logging.getLogger(__name__)

MEMO_VERSION = 1

Weights = tuple  # sorted tuple of (vector, multiplicity)


@dataclass(frozen=True, eq=False)
class GroupState:
    """L-perp(lam_1)-...-perp(lam_j) inside the ambient group of ``datum``."""

    datum: RootDatum
    constraints: tuple[tuple[Fraction, ...], ...]
    live_roots: tuple[tuple[int, ...], ...]
    # rows: integer coordinates in the cocharacter lattice basis
    sublattice_coords: tuple[tuple[int, ...], ...]

    @classmethod
    def top(cls, datum: RootDatum) -> GroupState:
        coords = tuple(tuple(int(i == j) for j in range(datum.rank)) for i in range(datum.rank))
        return cls(datum, (), tuple(datum.roots), coords)

    @property
    def rank(self) -> int:
        return len(self.sublattice_coords)

    @cached_property
    def sublattice(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.datum.from_lattice_coords(c) for c in self.sublattice_coords)

    @cached_property
    def simple_roots(self) -> tuple:
        return tuple(simple_system(self.live_roots, self.datum.gram))

    @cached_property
    def levi_type(self) -> TypeSpec:
        return classify_subsystem(self.live_roots, self.datum.gram, self.rank)

    @property
    def dim(self) -> int:
        return len(self.live_roots) + self.rank

    @cached_property
    def key(self) -> tuple:
        """Canonical form of the subspace spanned by the constraints."""
        rows, _ = la.rref(self.constraints)
        return tuple(tuple(r) for r in rows)

    @cached_property
    def _sub_gram_inv(self):
        g = self.datum.gram
        h = [[la.bilinear(a, g, b) for b in self.sublattice] for a in self.sublattice]
        return la.inverse(h) if h else []

    def coordinates(self, v) -> tuple[Fraction, ...]:
        """Coefficients of the orthogonal projection of v on the sublattice basis."""
        g = self.datum.gram
        rhs = [la.bilinear(s, g, v) for s in self.sublattice]
        return la.mat_vec(self._sub_gram_inv, rhs)

    def project(self, v) -> tuple[Fraction, ...]:
        c = self.coordinates(v)
        out = [Fraction(0)] * self.datum.rank
        for ci, s in zip(c, self.sublattice):
            if ci:
                out = [o + ci * x for o, x in zip(out, s)]
        return tuple(out)

    def primitive(self, v) -> tuple[Fraction, ...]:
        """The primitive sublattice vector on the ray through v (v in the span)."""
        c = self.coordinates(v)
        ints = la.primitive_int(c)
        out = [Fraction(0)] * self.datum.rank
        for ci, s in zip(ints, self.sublattice):
            if ci:
                out = [o + ci * x for o, x in zip(out, s)]
        out = tuple(out)
        # v must lie on the positive ray through out
        ratio = None
        for a, b in zip(v, out):
            if b == 0:
                if a != 0:
                    raise ConsistencyError("vector is not in the sublattice span")
                continue
            r = Fraction(a) / b
            if r <= 0 or (ratio is not None and r != ratio):
                raise ConsistencyError("vector is not in the sublattice span")
            ratio = r
        return out

    def make_dominant(self, v):
        dom, _ = make_dominant(v, self.datum.gram, self.simple_roots)
        return dom

    def parabolic_dimension(self, lam) -> int:
        g = self.datum.gram
        return sum(1 for a in self.live_roots if la.bilinear(a, g, lam) >= 0) + self.rank


def levi_perp(state: GroupState, lam) -> GroupState:
    """Restrict to roots and sublattice orthogonal to ``lam``."""
    lam = tuple(Fraction(x) for x in lam)
    if la.is_zero(lam):
        raise InputError("levi_perp needs a nonzero cocharacter")
    datum = state.datum
    g = datum.gram
    constraints = state.constraints + (lam,)
    live = tuple(a for a in state.live_roots if la.bilinear(a, g, lam) == 0)
    # integer equations (b_j, lam_i) c_j = 0 on cochar-lattice coordinates c
    rows = []
    for con in constraints:
        row = [Fraction(la.bilinear(b, g, con)) for b in datum.cochar_basis]
        rows.append(la.primitive_int(row) if any(row) else [0] * datum.rank)
    kernel = la.integer_kernel(rows, datum.rank)
    if len(kernel) >= state.rank:
        raise ConsistencyError("recursion failed to lower the rank")
    return GroupState(datum, constraints, live, tuple(kernel))


def graded_piece(weights, lam, k, state: GroupState) -> Weights:
    """Weights pairing to exactly k with lam, projected orthogonally to lam."""
    g = state.datum.gram
    out = {}
    for w, m in weights:
        if la.bilinear(w, g, lam) == k:
            p = project_orthogonal(w, lam, g)
            out[p] = out.get(p, 0) + m
    return tuple(sorted(out.items()))


def saturation(weights, lam, k, datum: RootDatum) -> Weights:
    """Weights pairing to at least k with lam (the saturated subspace)."""
    return tuple((w, m) for w, m in weights if la.bilinear(w, datum.gram, lam) >= k)


@dataclass(frozen=True)
class Stratum:
    lam: tuple[Fraction, ...]
    k: int
    n: int
    N: int
    dim_P: int
    dim_group: int
    f: IntPolynomial
    sub_poly: IntPolynomial
    lam_norm2: Fraction
    contribution: IntPolynomial = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "contribution", stratum_poly(self))

    @property
    def blade(self) -> tuple[Fraction, ...]:
        return tuple(x / self.k for x in self.lam)

    @property
    def mu(self) -> tuple[Fraction, ...]:
        return tuple(self.k * x / self.lam_norm2 for x in self.lam)

    @property
    def dim(self) -> int:
        return self.dim_group - self.dim_P + self.n + self.N

    @property
    def hesselink_norm2(self) -> Fraction:
        """Square of the Hesselink norm k / |lam| (rational, unlike the norm)."""
        return Fraction(self.k * self.k) / self.lam_norm2

    def to_json(self, datum: RootDatum) -> dict:
        lam = datum.lattice_coords(self.lam)
        return {
            "lambda": [int(x) for x in lam],
            "k": self.k,
            "blade": [_rat(x / self.k) for x in lam],
            "dim": self.dim,
            "n": self.n,
            "N": self.N,
            "f": self.f.tolist(),
            "contribution": self.contribution.tolist(),
        }


def _rat(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def stratum_poly(s: Stratum) -> IntPolynomial:
    """f * t^N * (t^n - sub_poly)."""
    t = IntPolynomial.t()
    return s.f * t ** s.N * (t ** s.n - s.sub_poly)


def stratum_dimension(stratum: Stratum, state: GroupState) -> int:
    return state.dim - state.parabolic_dimension(stratum.lam) + stratum.n + stratum.N


def _as_weights(ch) -> Weights:
    if isinstance(ch, ModuleCharacter):
        return ch.weights
    return tuple(sorted((tuple(Fraction(x) for x in w), m) for w, m in ch))


class MemoStore:
    """Thread-safe memo table, optionally persisted as a content-addressed
    directory (one JSON file per canonical key)."""

    def __init__(self, directory: str | None = None):
        self._table: dict = {}
        self._lock = threading.Lock()
        self.directory = directory
        if directory:
            os.makedirs(directory, exist_ok=True)

    @staticmethod
    def _digest(key) -> str:
        return hashlib.sha256(repr(key).encode()).hexdigest()

    def get(self, key):
        with self._lock:
            hit = self._table.get(key)
        if hit is not None or not self.directory:
            return hit
        path = os.path.join(self.directory, self._digest(key) + ".json")
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        if data.get("version") != MEMO_VERSION or data.get("key") != repr(key):
            return None
        poly = IntPolynomial(data["coeffs"])
        with self._lock:
            self._table[key] = poly
        return poly

    def put(self, key, poly: IntPolynomial):
        with self._lock:
            self._table[key] = poly
        if self.directory:
            path = os.path.join(self.directory, self._digest(key) + ".json")
            tmp = path + f".{os.getpid()}.{threading.get_ident()}.tmp"
            with open(tmp, "w") as fh:
                json.dump({"version": MEMO_VERSION, "key": repr(key), "coeffs": poly.tolist()}, fh)
            os.replace(tmp, path)

    def __len__(self):
        return len(self._table)


@dataclass
class EngineConfig:
    threads: int = 1
    memo: bool = True
    max_subset: int | None = None
    interior_only: bool = True
    memo_dir: str | None = None


class Engine:
    """Runs the rank recursion; holds configuration and the memo table."""

    def __init__(self, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        memo_dir = self.config.memo_dir or os.environ.get("NULLSTRATA_MEMO_DIR") or None
        self.memo = MemoStore(memo_dir) if self.config.memo else None

    # -- public API -----------------------------------------------------
    def nullcone_poly(self, state: GroupState, ch) -> IntPolynomial:
        """n_V(t): number of F_q-points of the nullcone of V as a polynomial."""
        weights = _as_weights(ch)
        if state.rank == 0 or all(la.is_zero(w) for w, _ in weights):
            return IntPolynomial([1])
        key = (state.key, weights)
        if self.memo is not None:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        strata = self.enumerate_strata(state, weights)
        total = IntPolynomial([1])
        for s in strata:
            total = total + s.contribution
        if total(1) != 1:
            raise ConsistencyError(f"n_V(1) = {total(1)} != 1")
        if self.memo is not None:
            self.memo.put(key, total)
        return total

    def enumerate_strata(self, state: GroupState, ch, top_level_threads: bool = True) -> list[Stratum]:
        weights = _as_weights(ch)
        if state.rank == 0:
            return []
        cands = candidate_directions([w for w, _ in weights], state,
                                     self.config.max_subset, self.config.interior_only)
        if self.config.threads > 1 and top_level_threads and len(cands) > 1:
            with ThreadPoolExecutor(self.config.threads) as pool:
                chunks = list(pool.map(lambda lam: self._strata_for(state, weights, lam), cands))
        else:
            chunks = [self._strata_for(state, weights, lam) for lam in cands]
        out = [s for chunk in chunks for s in chunk]
        out.sort(key=lambda s: (-s.dim, s.lam, s.k))
        return out

    def _strata_for(self, state: GroupState, weights: Weights, lam) -> list[Stratum]:
        g = state.datum.gram
        pairings = []
        for w, m in weights:
            p = Fraction(la.bilinear(w, g, lam))
            if p.denominator != 1:
                raise ConsistencyError(f"non-integral pairing {p} of weight with cocharacter")
            pairings.append((int(p), w, m))
        levels = sorted({p for p, _, _ in pairings if p >= 1})
        if not levels:
            return []
        sub = levi_perp(state, lam)
        dim_P = state.parabolic_dimension(lam)
        f = None
        lam_norm2 = Fraction(la.bilinear(lam, g, lam))
        out = []
        for k in levels:
            piece = graded_piece(weights, lam, k, state)
            n = sum(m for _, m in piece)
            N = sum(m for p, _, m in pairings if p > k)
            sub_poly = self.nullcone_poly(sub, piece)
            if sub_poly.degree >= n:
                continue
            if f is None:
                f = poincare_quotient(state.datum, sub.live_roots, roots=state.live_roots)
            out.append(Stratum(lam=lam, k=k, n=n, N=N, dim_P=dim_P, dim_group=state.dim,
                               f=f, sub_poly=sub_poly, lam_norm2=lam_norm2))
        return out


_default_engine = Engine()


def default_engine() -> Engine:
    return _default_engine


def enumerate_strata(state: GroupState, ch, engine: Engine | None = None) -> list[Stratum]:
    return (engine or _default_engine).enumerate_strata(state, ch)


def nullcone_poly(state: GroupState, ch, engine: Engine | None = None) -> IntPolynomial:
    return (engine or _default_engine).nullcone_poly(state, ch)
