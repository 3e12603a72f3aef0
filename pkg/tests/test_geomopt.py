import random
from fractions import Fraction

import pytest

from nullstrata import linalg as la
from nullstrata.geomopt import (SEMISTABLE, candidate_directions, min_norm_bruteforce,
                                min_norm_point, project_orthogonal, torus_optimal)
from nullstrata.repchar import adjoint_character, m_value
from nullstrata.rootsys import build_root_datum
from nullstrata.strata import GroupState

F = Fraction
I2 = ((1, 0), (0, 1))


def test_min_norm_examples():
    assert min_norm_point([(1, 0), (0, 1)], I2).point == (F(1, 2), F(1, 2))
    assert min_norm_point([(3, 1), (0, 0), (-1, 5)], I2).is_zero
    pts = [(2, 1), (2, -1), (4, 0)]
    assert min_norm_bruteforce(pts, I2) == (2, 0)
    assert min_norm_point(pts, I2).point == (2, 0)


def _random_instance(rng):
    r = rng.randint(1, 4)
    # random symmetric positive definite integer gram via A^T A + I
    a = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
    gram = [[sum(a[k][i] * a[k][j] for k in range(r)) + (i == j) for j in range(r)] for i in range(r)]
    n = rng.randint(1, 8)
    pts = [tuple(F(rng.randint(-4, 6), rng.randint(1, 3)) for _ in range(r)) for _ in range(n)]
    return pts, gram


def _certificate_ok(res, pts, gram):
    coeffs = [c for _, c in res.certificate]
    assert all(c > 0 for c in coeffs) and sum(coeffs) == 1
    rebuilt = tuple(sum(c * pts[i][k] for i, c in res.certificate) for k in range(len(pts[0])))
    assert rebuilt == res.point
    for x in pts:
        assert la.bilinear(res.point, gram, la.sub(x, res.point)) >= 0


@pytest.mark.parametrize("seed", range(200))
def test_min_norm_matches_all_faces_oracle(seed):
    rng = random.Random(seed)
    pts, gram = _random_instance(rng)
    res = min_norm_point(pts, gram)
    assert res.point == min_norm_bruteforce(pts, gram)
    _certificate_ok(res, pts, gram)
    if not res.is_zero:
        norm2 = la.bilinear(res.point, gram, res.point)
        assert min(la.bilinear(x, gram, res.point) for x in pts) == norm2


def test_optimal_ratio_is_maximal_at_torus_level():
    d = build_root_datum("B3")
    state = GroupState.top(d)
    rng = random.Random(11)
    weights = sorted({w for w, _ in adjoint_character(d).weights if any(w)})
    done = 0
    while done < 100:
        support = rng.sample(weights, rng.randint(1, 5))
        res = torus_optimal(support, state)
        if res == SEMISTABLE:
            continue
        lam, m, _ = res
        assert m > 0
        best = F(m * m) / d.norm2(lam)
        for _ in range(50):
            other = tuple(F(rng.randint(-4, 4)) for _ in range(d.rank))
            if not any(other):
                continue
            mo = m_value(d, support, other)
            if mo > 0:
                assert F(mo * mo) / d.norm2(other) <= best
        done += 1


def test_torus_optimal_examples():
    a1 = build_root_datum("A1")
    st = GroupState.top(a1)
    lam, m, mu = torus_optimal([(1,)], st)
    assert lam == a1.coroot((1,)) and m == 2 and mu == (1,)
    assert torus_optimal([(1,), (-1,)], st) == SEMISTABLE
    assert torus_optimal([(0,), (1,)], st) == SEMISTABLE


def test_project_orthogonal_examples():
    a2 = build_root_datum("A2")
    theta_vee = a2.coroot((1, 1))
    assert project_orthogonal((1, 0), theta_vee, a2.gram) == (F(1, 2), F(-1, 2))
    assert project_orthogonal(theta_vee, theta_vee, a2.gram) == (0, 0)
    v = (F(1), F(-1))
    assert project_orthogonal(v, theta_vee, a2.gram) == v


@pytest.mark.parametrize("seed", range(20))
def test_project_orthogonal_properties(seed):
    rng = random.Random(seed)
    d = build_root_datum("B3")
    lam = tuple(F(rng.randint(-3, 3)) for _ in range(3))
    if not any(lam):
        lam = (F(1), F(0), F(0))
    chi = tuple(F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3))
    p = project_orthogonal(chi, lam, d.gram)
    assert d.pair(p, lam) == 0
    assert project_orthogonal(p, lam, d.gram) == p
    # pairings with vectors orthogonal to lam are preserved
    for _ in range(5):
        mu = tuple(F(rng.randint(-3, 3)) for _ in range(3))
        mu = project_orthogonal(mu, lam, d.gram)
        assert d.pair(p, mu) == d.pair(chi, mu)


def _lattice(d, vecs):
    return sorted(tuple(int(x) for x in d.lattice_coords(v)) for v in vecs)


def test_candidate_directions_examples():
    a1 = build_root_datum("A1")
    ch = adjoint_character(a1)
    assert _lattice(a1, candidate_directions(ch.support(), GroupState.top(a1))) == [(1,)]
    assert candidate_directions([(0,)], GroupState.top(a1)) == []
    a2 = build_root_datum("A2")
    cands = _lattice(a2, candidate_directions(adjoint_character(a2).support(), GroupState.top(a2)))
    assert (1, 1) in cands and (2, 1) in cands and (1, 2) in cands


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_interior_filter_keeps_a_subset(name):
    d = build_root_datum(name)
    st = GroupState.top(d)
    support = adjoint_character(d).support()
    small = set(candidate_directions(support, st, interior_only=True))
    big = set(candidate_directions(support, st, interior_only=False))
    assert small <= big
    for lam in big:
        assert all(d.pair(lam, s) >= 0 for s in d.simple_roots)
        assert la.content([int(x) for x in d.lattice_coords(lam)]) == 1
