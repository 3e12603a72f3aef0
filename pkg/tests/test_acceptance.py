"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line and records it for the terminal summary.
"""
import io
import json
import random
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_RESULTS
from nullstrata import linalg as la
from nullstrata.cli import run
from nullstrata.count import count_module
from nullstrata.geomopt import min_norm_bruteforce, min_norm_point
from nullstrata.oracle import ff_binary_form_count, ff_nilpotent_count
from nullstrata.polynomial import IntPolynomial
from nullstrata.repchar import (ModuleCharacter, adjoint_character, dual_character,
                                highest_weight_character, hw_from_fundamental, weyl_dimension)
from nullstrata.rootsys import build_root_datum
from nullstrata.strata import Engine, GroupState
from nullstrata.verify import flag_rows, sl_rows

SMALL = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
LARGE = ("D4", "F4")
ORBIT_COUNTS = {"A1": 1, "A2": 2, "B2": 3, "G2": 4, "A3": 4}
t = IntPolynomial.t()


@contextmanager
def criterion(num, summary):
    detail = [summary]
    try:
        yield detail
    except BaseException:
        ACCEPTANCE_RESULTS[num] = (False, " ".join(detail))
        print(f"criterion {num}: FAIL {' '.join(detail)}")
        raise
    ACCEPTANCE_RESULTS[num] = (True, " ".join(detail))
    print(f"criterion {num}: PASS {' '.join(detail)}")


@pytest.fixture(scope="module")
def adjoint_reports():
    """Adjoint count reports for every type, each from a fresh engine, with timings."""
    reports, timings = {}, {}
    for name in SMALL + LARGE:
        d = build_root_datum(name)
        start = time.perf_counter()
        reports[name] = count_module(adjoint_character(d), "adjoint", Engine(), with_dual_check=False)
        timings[name] = time.perf_counter() - start
    return reports, timings


# every module whose polynomial is computed in this file, for criteria 5 and 7
COMPUTED: list = []


def test_criterion_1_steinberg(adjoint_reports):
    reports, timings = adjoint_reports
    small_time = sum(timings[n] for n in SMALL)
    with criterion(1, "n(adjoint) = t^(dim - rank)") as detail:
        detail.append(f"small types {small_time:.1f}s, " +
                      ", ".join(f"{n} {timings[n]:.1f}s" for n in LARGE))
        for name in SMALL + LARGE:
            d = build_root_datum(name)
            assert reports[name].n_V == t ** (d.dim - d.rank), name
        assert small_time < 60
        assert all(timings[n] < 600 for n in LARGE)
    COMPUTED.extend(reports[n] for n in SMALL + LARGE)


def test_criterion_2_dual(adjoint_reports):
    reports, _ = adjoint_reports
    with criterion(2, "adjoint and dual-adjoint reports agree"):
        for name in SMALL + LARGE:
            d = build_root_datum(name)
            dual = count_module(dual_character(adjoint_character(d)), "dual-adjoint", Engine(),
                                with_dual_check=False)
            ref = reports[name]
            assert dual.n_V == ref.n_V, name
            assert [s.to_json(d) for s in dual.strata] == [s.to_json(d) for s in ref.strata], name
            COMPUTED.append(dual)


def test_criterion_3_a2_worked_example():
    with criterion(3, "A2 strata, contributions and F_2 count 42 + 21 + 1"):
        d = build_root_datum("A2")
        rep = count_module(adjoint_character(d), "adjoint", Engine())
        labels = [(tuple(int(x) for x in d.lattice_coords(s.lam)), s.k, s.dim) for s in rep.strata]
        assert labels == [((1, 1), 1, 6), ((1, 1), 2, 4)]
        assert rep.strata[0].contribution == t ** 6 - t ** 4 - t ** 3 + t
        assert rep.strata[1].contribution == t ** 4 + t ** 3 - t - 1
        ff = ff_nilpotent_count(3, 2)
        assert ff.by_class["[3]"] == rep.strata[0].contribution(2) == 42
        assert ff.by_class["[2,1]"] == rep.strata[1].contribution(2) == 21
        assert ff.total == rep.n_V(2) == 64
        COMPUTED.append(rep)


def test_criterion_4_oracle_suites():
    with criterion(4, "nilpotent and binary-form oracles") as detail:
        start = time.perf_counter()
        engine = Engine()
        rows = sl_rows(2, [2, 3, 4, 5], engine) + sl_rows(3, [2, 3, 4, 5], engine)
        bad = [r for r in rows if not r["ok"]]
        a1 = build_root_datum("A1")
        checked = len(rows)
        for deg in (2, 3, 4):
            ch = highest_weight_character(a1, hw_from_fundamental(a1, [deg]))
            rep = count_module(ch, f"hw:{deg}", engine)
            COMPUTED.append(rep)
            for q in (2, 3, 5):
                checked += 1
                if ff_binary_form_count(deg, q).total != rep.n_V(q):
                    bad.append((deg, q))
        elapsed = time.perf_counter() - start
        detail.append(f"{checked} comparisons in {elapsed:.1f}s")
        assert not bad, bad
        assert elapsed < 60


def _modules():
    """At least 20 modules, including random highest weights of dimension <= 100."""
    fixed = [("A1", [1]), ("A1", [2]), ("A1", [5]), ("A2", [1, 0]), ("A2", [2, 0]),
             ("A2", [0, 3]), ("B2", [1, 0]), ("B2", [0, 1]), ("G2", [1, 0]), ("A3", [0, 1, 0]),
             ("A1xA1", [1, 1]), ("A1+T1", [1, 1]), ("A1+T1", [2, -1]), ("B3", [0, 0, 1]),
             ("C3", [1, 0, 0])]
    rng = random.Random(2024)
    pool = ["A1", "A2", "B2", "G2", "A3", "A1xA1", "A1+T1"]
    rand = []
    while len(rand) < 10:
        name = rng.choice(pool)
        d = build_root_datum(name)
        semisimple = d.rank - d.type_spec.torus
        coeffs = [rng.randint(0, 3) for _ in range(semisimple)]
        coeffs += [rng.randint(-2, 2) for _ in range(d.type_spec.torus)]
        if not any(coeffs[:semisimple]):
            continue
        hw = hw_from_fundamental(d, coeffs)
        if not d.in_char_lattice(hw) or weyl_dimension(d, hw) > 100:
            continue
        rand.append((name, coeffs))
    return fixed + rand


def test_criterion_5_partition_identity():
    modules = _modules()
    with criterion(5, f"1 + sum(contributions) = n_V on {len(modules)} modules"):
        assert len(modules) >= 20
        engine = Engine()
        for name, coeffs in modules:
            d = build_root_datum(name)
            ch = highest_weight_character(d, hw_from_fundamental(d, coeffs))
            rep = count_module(ch, f"hw:{coeffs}", engine)
            total = IntPolynomial([1])
            for s in rep.strata:
                total = total + s.contribution
            assert total == rep.n_V == engine.nullcone_poly(GroupState.top(d), ch), (name, coeffs)
            assert {c.name: c.passed for c in rep.checks}["partition"]
            COMPUTED.append(rep)
        for rep in COMPUTED:
            total = IntPolynomial([1])
            for s in rep.strata:
                total = total + s.contribution
            assert total == rep.n_V


def test_criterion_6_weighted_dynkin(adjoint_reports):
    reports, _ = adjoint_reports
    with criterion(6, "2 lam / k pairs into {0,1,2}; orbit counts A1:1 A2:2 B2:3 G2:4 A3:4"):
        for name in SMALL + LARGE:
            d = build_root_datum(name)
            for s in reports[name].strata:
                h = tuple(2 * x / s.k for x in s.lam)
                assert all(d.pair(h, a) in (0, 1, 2) for a in d.simple_roots), (name, s.lam, s.k)
        for name, count in ORBIT_COUNTS.items():
            assert len(reports[name].strata) == count, name


def test_criterion_7_value_at_one():
    with criterion(7, "n_V(1) = 1 and (t - 1) divides n_V - 1") as detail:
        assert len(COMPUTED) >= 20
        negatives = []
        for rep in COMPUTED:
            assert rep.n_V(1) == 1
            assert rep.n_prime * (t - 1) + 1 == rep.n_V
            if not rep.nonneg_conjecture_holds:
                negatives.append(f"{rep.type} {rep.module}")
        # the nonnegativity of n' is a conjecture: reported, not asserted
        detail.append(f"on {len(COMPUTED)} modules; n' nonnegative on all but {len(negatives)}"
                      + (f" ({'; '.join(negatives)})" if negatives else ""))


def test_criterion_8_min_norm():
    with criterion(8, "min-norm point equals all-faces oracle on 200 random sets") as detail:
        rng = random.Random(8)
        unstable = 0
        for _ in range(200):
            r = rng.randint(1, 4)
            a = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
            gram = [[sum(a[k][i] * a[k][j] for k in range(r)) + (i == j) for j in range(r)]
                    for i in range(r)]
            pts = [tuple(la.vec([rng.randint(-5, 5) for _ in range(r)])) for _ in range(rng.randint(1, 8))]
            pts = [tuple(x / rng.randint(1, 3) for x in p) for p in pts]
            res = min_norm_point(pts, gram)
            assert res.point == min_norm_bruteforce(pts, gram)
            if not res.is_zero:
                unstable += 1
                m = min(la.bilinear(p, gram, res.point) for p in pts)
                assert la.bilinear(res.point, gram, res.point) == m
        detail.append(f"({unstable} unstable instances checked for |mu|^2 = m)")


def test_criterion_9_flag_polynomials():
    rows = flag_rows()
    with criterion(9, f"Poincare quotient = orbit brute force on {len(rows)} face Levis"):
        assert all(r["ok"] for r in rows), [r for r in rows if not r["ok"]]


def test_criterion_10_unipotent():
    with criterion(10, "unipotent subcommand: totals t^(dim - rank), pieces = nilpotent pieces"):
        for name in SMALL + LARGE:
            d = build_root_datum(name)
            out = io.StringIO()
            assert run(["unipotent", "--type", name], out) == 0
            data = json.loads(out.getvalue())
            assert data["steinberg_ok"]
            assert data["unipotent_total"] == (t ** (d.dim - d.rank)).tolist()
            out = io.StringIO()
            assert run(["count", "--type", name], out) == 0
            lie = json.loads(out.getvalue())
            assert data["unipotent_pieces"] == [s["contribution"] for s in lie["strata"]]
