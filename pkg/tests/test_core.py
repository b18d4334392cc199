"""Element arithmetic over a concrete provider (the vertex-stabilizer algebra)."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecketree.spherical import SphericalAlgebra, SphericalParams

A = SphericalAlgebra(SphericalParams.homogeneous(2))


def elements(max_index=6, coeff_range=4):
    coeffs = st.builds(
        Fraction,
        st.integers(-coeff_range, coeff_range),
        st.integers(1, 3),
    )
    return st.dictionaries(st.integers(0, max_index), coeffs, max_size=4).map(A.element)


def test_zero_terms_pruned():
    x = A.element({1: Fraction(0), 2: 3})
    assert x.support() == {2}
    assert A.element({}) == A.zero()
    assert not A.zero()


def test_additive_identity_and_collection():
    g1 = A.basis_element(1)
    assert g1 + A.zero() == g1
    assert g1 + g1 == 2 * g1
    assert (g1 + (-1) * g1).is_zero()


def test_duplicate_indices_collected_on_build():
    assert A.element([(1, 2), (1, 3)]) == 5 * A.basis_element(1)
    assert A.element([(1, 2), (1, -2)]).is_zero()


def test_unit_multiplication():
    assert A.one() * A.basis_element(3) == A.basis_element(3)
    assert A.basis_element(3) * A.one() == A.basis_element(3)


def test_known_products():
    g = A.basis_element
    assert g(1) * g(1) == A.element({0: 3, 2: 1})
    assert g(2) * g(3) == A.element({5: 1, 3: 1, 1: 4})


def test_scalar_coefficient_types():
    x = Fraction(1, 2) * A.basis_element(1)
    assert x.coefficient(1) == Fraction(1, 2)
    with pytest.raises(TypeError):
        A.element({1: 0.5})


def test_mixed_algebra_rejected():
    other = SphericalAlgebra(SphericalParams.homogeneous(3))
    with pytest.raises(ValueError):
        A.basis_element(1) * other.basis_element(1)
    with pytest.raises(ValueError):
        A.basis_element(1) + other.basis_element(1)


def test_star_fixes_distance_classes():
    for n in range(6):
        assert A.basis_element(n).star() == A.basis_element(n)


def test_r_hom_values():
    g = A.basis_element
    assert A.one().r_hom() == 1
    assert g(2).r_hom() == 6
    assert (g(1) * g(1)).r_hom() == 9 == g(1).r_hom() ** 2


@given(elements(), elements())
def test_star_antimultiplicative(x, y):
    assert (x * y).star() == y.star() * x.star()


@given(elements())
def test_star_involutive(x):
    assert x.star().star() == x


@given(elements(), elements())
def test_r_hom_multiplicative(x, y):
    assert (x * y).r_hom() == x.r_hom() * y.r_hom()


@given(elements(), elements())
def test_r_hom_additive(x, y):
    assert (x + y).r_hom() == x.r_hom() + y.r_hom()


@given(elements(), elements(), elements())
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


def test_structure_constants_nonnegative_integers():
    for n in range(5):
        for m in range(5):
            for _, coeff in A.multiply_basis(n, m).terms():
                assert coeff.denominator == 1 and coeff >= 0


def test_terms_sorted_canonically():
    x = A.element({4: 1, 1: 2, 0: 3})
    assert [idx for idx, _ in x.terms()] == [0, 1, 4]


def test_repr_readable():
    assert repr(A.element({0: 3, 2: 1})) == "3*G0 + G2"
    assert repr(A.zero()) == "0"


def test_hashable_value_semantics():
    x = A.element({1: 1, 2: 2})
    y = A.element({2: 2, 1: 1})
    assert hash(x) == hash(y) and x == y


def test_provider_unit_laws():
    from hecketree.endstab import HorocycleAlgebra, ToeplitzAlgebra
    from hecketree.iwahori import IwahoriAlgebra
    from hecketree.sl2 import PruferGroupAlgebra, SL2EndAlgebra

    providers = [
        A,
        SphericalAlgebra(SphericalParams.two_orbit(2, 3)),
        IwahoriAlgebra(2, 3),
        HorocycleAlgebra(3),
        ToeplitzAlgebra(2),
        PruferGroupAlgebra(5),
        SL2EndAlgebra(5),
    ]
    for algebra in providers:
        assert algebra.r_value(algebra.unit) == 1
        assert algebra.involute_basis(algebra.unit) == algebra.unit
        assert algebra.multiply_basis(algebra.unit, algebra.unit) == algebra.one()
