import random
from fractions import Fraction
from itertools import combinations

import pytest

from nullstrata import linalg as la
from nullstrata.polynomial import IntPolynomial
from nullstrata.rootsys import (CapacityError, InputError, TypeSpec, apply_word, build_root_datum,
                                classify_subsystem, coset_poincare_bruteforce, make_dominant,
                                orbit, parse_type, poincare_quotient, reflection_degrees)

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4", "B2xA1+T1"]
t = IntPolynomial.t()


@pytest.mark.parametrize("name", TYPES)
def test_datum_invariants(datum, name):
    d = datum(name)
    g = d.gram
    for a in d.roots:
        for b in d.roots:
            assert Fraction(2 * d.pair(b, a), d.norm2(a)).denominator == 1
    # gram invariant under each simple reflection
    basis = [tuple(int(i == j) for j in range(d.rank)) for i in range(d.rank)]
    for s in d.simple_roots:
        images = [d.reflect(e, s) for e in basis]
        for i in range(d.rank):
            for j in range(d.rank):
                assert d.pair(images[i], images[j]) == g[i][j]
    for c in d.components:
        lengths = {d.norm2(a) for a in d.roots if any(a[i] for i in c.coords)}
        assert min(lengths) == 2
    assert sorted(d.roots) == sorted(tuple(-x for x in a) for a in d.roots)
    assert len(d.roots) % 2 == 0
    for a in d.roots:
        assert d.in_cochar_lattice(d.coroot(a))


def test_build_examples(datum):
    a1 = datum("A1")
    assert a1.roots == ((1,), (-1,)) and a1.gram == ((2,),)
    assert a1.cochar_basis == ((Fraction(1),),)
    a2 = datum("A2")
    assert len(a2.roots) == 6
    theta = (1, 1)
    assert a2.norm2(theta) == 2
    assert a2.lattice_coords(a2.coroot(theta)) == (1, 1)
    g2 = datum("G2")
    assert len(g2.roots) == 12
    assert sorted({g2.norm2(a) for a in g2.roots}) == [2, 6]


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "Q2", ""])
def test_illegal_types(bad):
    with pytest.raises(InputError):
        build_root_datum(bad)


def test_parse_type_round_trip():
    assert str(parse_type("B2xA1+T1")) == "B2xA1+T1"
    assert parse_type("T2") == TypeSpec((), 2)


def test_make_dominant_examples(datum):
    a1 = datum("A1")
    v, w = a1.make_dominant((Fraction(1),))
    assert v == (1,) and w == []
    v, w = a1.make_dominant(a1.coroot((-1,)))
    assert v == (1,) and w == [0]
    a2 = datum("A2")
    alpha1_vee = a2.coroot((1, 0))
    # oracle: the unique dominant element of the orbit, found by enumeration
    dominant = [u for u in orbit(alpha1_vee, a2.gram, a2.simple_roots)
                if all(a2.pair(u, s) >= 0 for s in a2.simple_roots)]
    assert len(orbit(alpha1_vee, a2.gram, a2.simple_roots)) == 6
    assert dominant == [a2.coroot((1, 1))]
    v, w = a2.make_dominant(alpha1_vee)
    assert a2.lattice_coords(v) == (1, 1)
    assert apply_word(alpha1_vee, w, a2.gram, a2.simple_roots) == v


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "C3"])
def test_make_dominant_orbit_invariant(datum, name):
    d = datum(name)
    rng = random.Random(name)
    for _ in range(20):
        v = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d.rank))
        dom, word = d.make_dominant(v)
        assert all(d.pair(dom, s) >= 0 for s in d.simple_roots)
        assert d.make_dominant(dom) == (dom, [])
        assert apply_word(v, word, d.gram, d.simple_roots) == dom
        moved = v
        for _ in range(rng.randint(1, 6)):
            moved = d.reflect(moved, rng.choice(d.simple_roots))
        assert d.make_dominant(moved)[0] == dom


@pytest.mark.parametrize("name,expected", [("A1", [[2]]), ("A2", [[2, 3]]), ("F4", [[2, 6, 8, 12]]),
                                           ("A1+T1", [[2]])])
def test_reflection_degrees_examples(datum, name, expected):
    assert reflection_degrees(datum(name)) == expected


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"])
def test_degree_product_is_bfs_weyl_order(datum, name):
    d = datum(name)
    product = 1
    for degs in reflection_degrees(d):
        for x in degs:
            product *= x
    assert product == d.weyl_order_bfs()


def test_classify_subsystem_examples(datum):
    a2 = datum("A2")
    assert classify_subsystem([], a2.gram, 2) == TypeSpec((), 2)
    assert classify_subsystem([(0, 1), (0, -1)], a2.gram, 2) == TypeSpec((("A", 1),), 1)
    g2 = datum("G2")
    long_roots = [a for a in g2.roots if g2.norm2(a) == 6]
    assert classify_subsystem(long_roots, g2.gram, 2) == TypeSpec((("A", 2),), 0)


@pytest.mark.parametrize("name", ["A1", "A4", "B3", "C3", "C4", "D4", "D5", "E6", "F4", "G2", "B2xA1"])
def test_classify_full_system(datum, name):
    d = datum(name)
    spec = classify_subsystem(d.roots, d.gram, d.rank)
    assert sorted(spec.factors) == sorted(d.type_spec.factors)


def test_poincare_quotient_examples(datum):
    a1, a2 = datum("A1"), datum("A2")
    assert poincare_quotient(a1, []) == 1 + t
    assert poincare_quotient(a2, a2.roots) == IntPolynomial([1])
    assert poincare_quotient(a2, []) == (1 + t) * (1 + t + t**2)
    for d, levi in [(a1, []), (a2, a2.roots), (a2, [])]:
        assert coset_poincare_bruteforce(d, levi) == poincare_quotient(d, levi)


def _face_levis(d):
    for size in range(len(d.simple_roots) + 1):
        for face in combinations(range(len(d.simple_roots)), size):
            yield [a for a in d.roots if all(a[i] == 0 for i in range(d.rank) if i not in face)]


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "G2"])
def test_poincare_matches_bruteforce_on_all_faces(datum, name):
    d = datum(name)
    for levi in _face_levis(d):
        fast = poincare_quotient(d, levi)
        assert fast == coset_poincare_bruteforce(d, levi)
        assert fast(0) == 1 and all(c >= 0 for c in fast.coeffs)


def test_poincare_for_nonstandard_levi(datum):
    d = datum("A2")
    levi = [(1, 1), (-1, -1)]  # conjugate of a standard A1 Levi
    assert poincare_quotient(d, levi) == coset_poincare_bruteforce(d, levi) == 1 + t + t**2


def test_bruteforce_capacity_bound(datum):
    with pytest.raises(CapacityError):
        coset_poincare_bruteforce(datum("F4"), [], bound=100)


def test_parabolic_dimension_examples(datum):
    a2 = datum("A2")
    theta_vee = a2.coroot((1, 1))
    assert sorted(a2.pair(a, theta_vee) for a in a2.roots) == [-2, -1, -1, 1, 1, 2]
    assert a2.parabolic_dimension(theta_vee) == 5
    for name in TYPES:
        d = datum(name)
        assert d.parabolic_dimension((0,) * d.rank) == d.dim
    a1 = datum("A1")
    assert a1.parabolic_dimension((Fraction(1),)) == 2


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "D4", "A1+T1"])
def test_opposite_parabolic_identity(datum, name):
    d = datum(name)
    rng = random.Random(7)
    for _ in range(30):
        lam = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d.rank))
        levi_dim = sum(1 for a in d.roots if d.pair(a, lam) == 0) + d.rank
        neg = tuple(-x for x in lam)
        assert d.parabolic_dimension(lam) + d.parabolic_dimension(neg) == d.dim + levi_dim


def test_lattice_override_must_contain_coroots():
    # adjoint-type lattice for A1 (coweight lattice) is fine, half of it is not
    build_root_datum("A1", cochar_basis=[[Fraction(1, 2)]])
    with pytest.raises(InputError):
        build_root_datum("A1", cochar_basis=[[Fraction(2)]])


def test_character_lattice_is_dual(datum):
    d = datum("B2xA1+T1")
    for x in d.char_basis:
        for i, y in enumerate(d.cochar_basis):
            assert d.pair(x, y) in (0, 1)
    assert la.rank(d.char_basis) == d.rank
