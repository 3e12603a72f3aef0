"""Oracle suites: brute-force finite-field counts against the polynomials."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .oracle import (ff_binary_form_count, ff_conic_pencil_count, ff_nilpotent_count, ff_torus_count,
                     jordan_to_stratum, partition_label, partitions)
from .polynomial import IntPolynomial
from .repchar import ModuleCharacter, adjoint_character, highest_weight_character, hw_from_fundamental
from .rootsys import build_root_datum, coset_poincare_bruteforce, poincare_quotient
from .strata import Engine, GroupState, default_engine

STEINBERG_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
FLAG_TYPES = ("A1", "A2", "A3", "B2", "G2")
TORUS_CASES = {
    "T1:{1,-1}": ("T1", [(1,), (-1,)]),
    "T1:{1,1,-2}": ("T1", [(1,), (1,), (-2,)]),
    "T2:{e1,e2,-e1-e2}": ("T2", [(1, 0), (0, 1), (-1, -1)]),
    "T2:{e1,-e1,e2,2e2}": ("T2", [(1, 0), (-1, 0), (0, 1), (0, 2)]),
}


def _row(suite, case, q, oracle, poly, ok=None):
    return {"suite": suite, "case": case, "q": q, "oracle": oracle, "poly": poly,
            "ok": (oracle == poly) if ok is None else ok}


def sl_rows(n: int, qs, engine: Engine) -> list[dict]:
    datum = build_root_datum(f"A{n - 1}")
    strata = engine.enumerate_strata(GroupState.top(datum), adjoint_character(datum))
    by_label = {}
    for s in strata:
        lam = tuple(int(x) for x in datum.lattice_coords(s.lam))
        by_label[(lam, s.k)] = s
    total = IntPolynomial([1])
    for s in strata:
        total = total + s.contribution
    rows = []
    suite = f"sl{n}"
    for q in qs:
        ff = ff_nilpotent_count(n, q)
        rows.append(_row(suite, "total", q, ff.total, total(q)))
        for part in partitions(n):
            label = partition_label(part)
            if len(part) == n:
                rows.append(_row(suite, label, q, ff.by_class.get(label, 0), 1))
                continue
            s = by_label.get(jordan_to_stratum(part))
            value = s.contribution(q) if s is not None else None
            rows.append(_row(suite, label, q, ff.by_class.get(label, 0), value))
        # every stratum must be some Jordan type
        matched = {jordan_to_stratum(p) for p in partitions(n) if len(p) < n}
        rows.append(_row(suite, "strata=jordan types", q, sorted(matched), sorted(by_label)))
    return rows


def binary_rows(qs, engine: Engine, degrees=(2, 3, 4)) -> list[dict]:
    datum = build_root_datum("A1")
    rows = []
    for d in degrees:
        ch = highest_weight_character(datum, hw_from_fundamental(datum, [d]))
        poly = engine.nullcone_poly(GroupState.top(datum), ch)
        for q in qs:
            rows.append(_row("binary", f"d={d}", q, ff_binary_form_count(d, q).total, poly(q)))
    return rows


def torus_rows(qs, engine: Engine) -> list[dict]:
    rows = []
    for name, (typ, weights) in TORUS_CASES.items():
        datum = build_root_datum(typ)
        ch = ModuleCharacter.from_weights(datum, [(tuple(Fraction(x) for x in w), 1) for w in weights])
        poly = engine.nullcone_poly(GroupState.top(datum), ch)
        for q in qs:
            rows.append(_row("torus", name, q, ff_torus_count(weights, q, datum.gram).total, poly(q)))
    return rows


def pencil_rows(qs, engine: Engine) -> list[dict]:
    """Pencils of ternary conics, a module whose n' has negative coefficients."""
    datum = build_root_datum("A1xA2")
    ch = highest_weight_character(datum, hw_from_fundamental(datum, [1, 2, 0]))
    poly = engine.nullcone_poly(GroupState.top(datum), ch)
    return [_row("pencil", "A1xA2 hw:1,2,0", q, ff_conic_pencil_count(q).total, poly(q))
            for q in qs if q in (3, 5)]


def steinberg_rows(qs, engine: Engine, types=STEINBERG_TYPES) -> list[dict]:
    rows = []
    for typ in types:
        datum = build_root_datum(typ)
        poly = engine.nullcone_poly(GroupState.top(datum), adjoint_character(datum))
        expected = IntPolynomial.monomial(datum.dim - datum.rank)
        rows.append(_row("steinberg", typ, None, str(expected), str(poly)))
    return rows


def flag_rows(engine: Engine | None = None, types=FLAG_TYPES) -> list[dict]:
    rows = []
    for typ in types:
        datum = build_root_datum(typ)
        simple = datum.simple_roots
        for size in range(len(simple) + 1):
            for face in combinations(range(len(simple)), size):
                # Levi of the face: roots in the span of the chosen simple roots
                levi = [a for a in datum.roots
                        if all(a[i] == 0 for i in range(datum.rank) if i not in face)]
                fast = poincare_quotient(datum, levi)
                brute = coset_poincare_bruteforce(datum, levi)
                rows.append(_row("flag", f"{typ}:{list(face)}", None, str(brute), str(fast)))
    return rows


def run_suite(suite: str, qs, engine: Engine | None = None) -> list[dict]:
    engine = engine or default_engine()
    rows: list[dict] = []
    if suite in ("sl2", "all"):
        rows += sl_rows(2, qs, engine)
    if suite in ("sl3", "all"):
        rows += sl_rows(3, qs, engine)
    if suite in ("binary", "all"):
        rows += binary_rows([q for q in qs if q <= 9], engine)
    if suite in ("torus", "all"):
        rows += torus_rows(qs, engine)
    if suite in ("pencil", "all"):
        rows += pencil_rows(qs, engine)
    if suite in ("steinberg", "all"):
        rows += steinberg_rows(qs, engine)
    if suite in ("flag", "all"):
        rows += flag_rows(engine)
    return rows
