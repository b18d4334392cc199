"""Prüfer-group arithmetic, unit-square orbits, and the pulled-back product."""

import itertools

import pytest
from hypothesis import given, strategies as st

from hecketree.sl2 import (
    PruferElement,
    PruferGroupAlgebra,
    SL2EndAlgebra,
    make_prufer,
    nu,
    orbit,
    parse_prufer,
    prufer_add,
    prufer_zero,
    same_double_coset,
    unit_squares_mod,
)


def test_prufer_canonical_form():
    assert make_prufer(3, 3, 2) == make_prufer(3, 1, 1)
    assert make_prufer(3, 9, 2) == prufer_zero(3)
    assert make_prufer(5, 26, 2) == make_prufer(5, 1, 2)
    with pytest.raises(ValueError):
        PruferElement(4, 1, 1)
    with pytest.raises(ValueError):
        PruferElement(3, 2, 3)  # 3/9 is not reduced


def test_prufer_add_examples():
    third = make_prufer(3, 1, 1)
    assert prufer_add(third, make_prufer(3, 2, 1)) == prufer_zero(3)
    assert prufer_add(third, make_prufer(3, 1, 2)) == make_prufer(3, 4, 2)
    assert prufer_add(third, prufer_zero(3)) == third
    with pytest.raises(ValueError):
        prufer_add(third, make_prufer(5, 1, 1))


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_prufer_group_laws(a, b, c):
    x, y, z = (make_prufer(3, n, 4) for n in (a, b, c))
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + (-x) == prufer_zero(3)


def test_unit_squares_examples():
    assert unit_squares_mod(5, 1) == (1, 4)
    assert unit_squares_mod(3, 1) == (1,)
    assert unit_squares_mod(2, 1) == (1,)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_unit_square_counts_odd(p, n):
    phi = p**n - p ** (n - 1)
    assert len(unit_squares_mod(p, n)) == phi // 2


def test_unit_square_counts_two():
    # square classes are finer at the even prime: index 4 from exponent 3 on
    assert len(unit_squares_mod(2, 1)) == 1
    assert len(unit_squares_mod(2, 2)) == 1
    assert len(unit_squares_mod(2, 3)) == 1
    assert len(unit_squares_mod(2, 4)) == 2


def test_nu_examples():
    z5 = prufer_zero(5)
    assert nu(z5) == PruferGroupAlgebra(5).one()
    image = nu(make_prufer(5, 1, 1))
    assert image == PruferGroupAlgebra(5).element(
        {make_prufer(5, 1, 1): 1, make_prufer(5, 4, 1): 1}
    )
    assert nu(make_prufer(3, 1, 1)) == PruferGroupAlgebra(3).basis_element(
        make_prufer(3, 1, 1)
    )


def test_same_double_coset():
    assert same_double_coset(make_prufer(5, 1, 1), make_prufer(5, 4, 1))
    assert not same_double_coset(make_prufer(5, 1, 1), make_prufer(5, 2, 1))
    assert same_double_coset(prufer_zero(5), prufer_zero(5))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_orbits_partition_each_depth(p):
    for n in range(1, 4):
        layer = [
            PruferElement(p, n, a) for a in range(1, p**n) if a % p
        ]
        seen = {}
        for u in layer:
            members = orbit(u)
            assert u in members
            key = members[0]
            if key in seen:
                assert seen[key] == members
            else:
                seen[key] = members
        total = sum(len(m) for m in set(seen.values()))
        assert total == len(layer)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_same_coset_matches_brute_force(p):
    algebra = SL2EndAlgebra(p)
    for n in range(3 + 1):
        layer = [prufer_zero(p)] if n == 0 else [
            PruferElement(p, n, a) for a in range(1, p**n) if a % p
        ]
        for u in layer[:12]:
            for v in layer[:12]:
                brute = any(w == v for w in orbit(u))
                assert same_double_coset(u, v) == brute


def test_nu_star_compatibility():
    # the orbit-sum map commutes with the involution on both sides
    for p in (3, 5, 7):
        for n in (1, 2):
            u = make_prufer(p, 1, n)
            assert nu(-u) == nu(u).star()


def test_unit_product():
    A = SL2EndAlgebra(5)
    u = make_prufer(5, 2, 1)
    assert A.one() * A.coset_element(u) == A.coset_element(u)


def test_p5_square_example():
    A = SL2EndAlgebra(5)
    x = A.coset_element(make_prufer(5, 1, 1))
    expected = 2 * A.one() + A.coset_element(make_prufer(5, 2, 1))
    assert x * x == expected


def test_p3_identity_coefficient():
    A = SL2EndAlgebra(3)
    prod = A.coset_element(make_prufer(3, 1, 1)) * A.coset_element(make_prufer(3, 2, 1))
    assert prod.coefficient(A.unit) == 1


def test_p5_cross_product_spreads():
    # support on two distinct non-identity cosets: a pattern the rank-one
    # class table cannot produce, witnessing non-isomorphy with the full
    # automorphism case
    A = SL2EndAlgebra(5)
    prod = A.coset_element(make_prufer(5, 1, 1)) * A.coset_element(make_prufer(5, 2, 1))
    support = prod.support()
    assert len(support) == 2
    assert A.unit not in support


@pytest.mark.parametrize("p", [3, 5, 7])
def test_products_pull_back_and_commute(p):
    A = SL2EndAlgebra(p)
    cosets = A.cosets_up_to_depth(3)
    for a, b in itertools.product(cosets, repeat=2):
        x = A.basis_element(a) * A.basis_element(b)
        y = A.basis_element(b) * A.basis_element(a)
        assert x == y
        for c, coeff in x.terms():
            assert coeff.denominator == 1 and coeff > 0
            assert c.representative.depth <= max(
                a.representative.depth, b.representative.depth
            )


@pytest.mark.parametrize("p", [3, 5, 7])
def test_associativity_depth_three(p):
    A = SL2EndAlgebra(p)
    cosets = A.cosets_up_to_depth(3)
    for a, b, c in itertools.product(cosets, repeat=3):
        ea, eb, ec = (A.basis_element(i) for i in (a, b, c))
        assert (ea * eb) * ec == ea * (eb * ec)


def test_r_hom_multiplicative():
    A = SL2EndAlgebra(5)
    cosets = A.cosets_up_to_depth(2)
    for a, b in itertools.product(cosets, repeat=2):
        ea, eb = A.basis_element(a), A.basis_element(b)
        assert (ea * eb).r_hom() == ea.r_hom() * eb.r_hom()


def test_depth_bound_enforced():
    A = SL2EndAlgebra(5, depth_bound=2)
    with pytest.raises(ValueError):
        A.coset(make_prufer(5, 1, 3))


def test_parse_labels():
    assert parse_prufer(5, "0") == prufer_zero(5)
    assert parse_prufer(5, "4/25") == make_prufer(5, 4, 2)
    with pytest.raises(ValueError):
        parse_prufer(5, "1/6")


def test_coset_ordering_deterministic():
    A = SL2EndAlgebra(5)
    labels = [c.label() for c in A.cosets_up_to_depth(1)]
    assert labels == ["0", "1/5", "2/5"]


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_star_trivial_iff_minus_one_is_square(p):
    # negation permutes each orbit exactly when -1 is a unit square, so the
    # involution fixes every double coset iff p = 1 mod 4
    A = SL2EndAlgebra(p)
    minus_one_square = (p - 1) in unit_squares_mod(p, 1)
    assert minus_one_square == (p % 4 == 1)
    for c in A.cosets_up_to_depth(2):
        fixed = A.involute_basis(c) == c
        if c.representative.is_zero():
            assert fixed
        else:
            assert fixed == minus_one_square
