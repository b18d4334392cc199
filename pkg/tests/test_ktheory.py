"""Integer matrices, Smith normal form, Bratteli limits, crossed-product K-groups."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from hecketree.endstab import toeplitz_bratteli, toeplitz_shift_alpha
from hecketree.ktheory import (
    AbelianGroupPresentation,
    BratteliDiagram,
    IntMatrix,
    cokernel,
    kernel_rank,
    load_bratteli,
    pv_k_groups,
    smith_normal_form,
    truncated_limit,
)


def test_matrix_validation_and_ops():
    m = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert m.rows == 2 and m.cols == 2
    assert m.det() == -2
    assert (m @ IntMatrix.identity(2)) == m
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1], [2, 3]])
    with pytest.raises(ValueError):
        m @ IntMatrix.identity(3)


def test_det_examples():
    assert IntMatrix.identity(3).det() == 1
    assert IntMatrix.zeros(2, 2).det() == 0
    assert IntMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 5]]).det() == 30
    assert IntMatrix.from_rows([[0, 1], [1, 0]]).det() == -1


def test_snf_identity():
    u, d, v = smith_normal_form(IntMatrix.identity(2))
    assert d == IntMatrix.identity(2)


def test_snf_diag_2_3():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    u, d, v = smith_normal_form(m)
    assert [d.entries[i][i] for i in range(2)] == [1, 6]
    assert u @ m @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1


def test_snf_zero():
    u, d, v = smith_normal_form(IntMatrix.from_rows([[0]]))
    assert d.entries == ((0,),)


def _assert_snf_postconditions(m):
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.det()) == 1
    assert abs(v.det()) == 1
    diag = [d.entries[i][i] for i in range(min(m.rows, m.cols))]
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j:
                assert d.entries[i][j] == 0
    for i, x in enumerate(diag):
        assert x >= 0
        if i and diag[i - 1]:
            assert x % diag[i - 1] == 0 or x == 0
        if i and diag[i - 1] == 0:
            assert x == 0
    return u, d, v


@settings(max_examples=120, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(1, 5),
    st.data(),
)
def test_snf_postconditions_random(rows, cols, data):
    entries = [
        [data.draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)
    ]
    _assert_snf_postconditions(IntMatrix.from_rows(entries))


def test_snf_deterministic():
    m = IntMatrix.from_rows([[4, 6, 2], [6, 4, 8]])
    first = smith_normal_form(m)
    second = smith_normal_form(m)
    assert first == second


def test_cokernel_examples():
    assert cokernel(IntMatrix.zeros(2, 2)) == AbelianGroupPresentation(2)
    assert cokernel(IntMatrix.from_rows([[2]])) == AbelianGroupPresentation(0, (2,))
    assert cokernel(IntMatrix.from_rows([[0]])) == AbelianGroupPresentation(1)
    assert kernel_rank(IntMatrix.zeros(2, 2)) == 2
    assert kernel_rank(IntMatrix.from_rows([[2]])) == 0


def test_rank_nullity():
    m = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    snf = smith_normal_form(m)
    assert snf.rank + kernel_rank(m) == m.cols


def test_presentation_validation():
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (4, 2))
    assert AbelianGroupPresentation(0).describe() == "0"
    assert AbelianGroupPresentation(1).describe() == "Z"
    assert AbelianGroupPresentation(2, (2, 6)).describe() == "Z^2 + Z/2 + Z/6"


def test_id_minus_shift_rectangular():
    # the canonical inclusion minus the deeper-stage shift: free cokernel of
    # rank one and no kernel, at every stage size
    for n in range(3, 11):
        k0, k1 = pv_k_groups(toeplitz_shift_alpha(n))
        assert k0 == AbelianGroupPresentation(1)
        assert k1 == 0


def test_pv_square_cases():
    k0, k1 = pv_k_groups(IntMatrix.identity(3))
    assert k0 == AbelianGroupPresentation(3) and k1 == 3
    k0, k1 = pv_k_groups(IntMatrix.zeros(2, 2))
    assert k0 == AbelianGroupPresentation(0) and k1 == 0
    with pytest.raises(ValueError):
        pv_k_groups(IntMatrix.zeros(2, 3))


def test_truncated_limit_constant_diagram():
    d = BratteliDiagram(((1,), (1,), (1,)), ([[1]], [[1]]))
    report = truncated_limit(d)
    assert report["stabilized"] is True
    assert all(level["k0_rank"] == 1 for level in report["levels"])
    assert report["composed_cokernel"]["description"] == "0"


def test_truncated_limit_sequence_diagram():
    diagram = toeplitz_bratteli(5)
    report = truncated_limit(diagram)
    assert report["levels"][-1]["k0_rank"] == 5
    assert report["map_kernel_ranks"] == [0, 0, 0, 0]
    assert report["stabilized"] is False  # ranks keep growing


def test_truncated_limit_doubling():
    d = BratteliDiagram(((1,), (1,), (1,)), ([[2]], [[2]]))
    report = truncated_limit(d)
    assert report["composed_map"] == [[4]]
    assert report["stage_cokernels"][-1]["invariant_factors"] == [4]


def test_truncated_limit_identity_level_insertion():
    d = BratteliDiagram(((1,), (1,), (1,)), ([[2]], [[2]]))
    padded = BratteliDiagram(((1,), (1,), (1,), (1,)), ([[2]], [[1]], [[2]]))
    a, b = truncated_limit(d), truncated_limit(padded)
    assert a["composed_map"] == b["composed_map"]
    assert a["composed_cokernel"] == b["composed_cokernel"]
    assert a["stabilized"] == b["stabilized"]


def test_diagram_validation():
    with pytest.raises(ValueError):
        BratteliDiagram(((1,), (2,)), ())
    with pytest.raises(ValueError):
        BratteliDiagram(((1,), (2,)), ([[1], [1], [1]],))
    with pytest.raises(ValueError):
        BratteliDiagram(((1,), (1,)), ([[-1]],))
    with pytest.raises(ValueError):
        BratteliDiagram(((0,),), ())


def test_diagram_json_roundtrip(tmp_path):
    diagram = toeplitz_bratteli(3)
    path = tmp_path / "diagram.json"
    path.write_text(json.dumps(diagram.to_json()))
    assert load_bratteli(path) == diagram


def test_truncated_limit_depth_bound():
    d = BratteliDiagram(((1,), (1,)), ([[1]],))
    with pytest.raises(ValueError):
        truncated_limit(d, 5)


def _fraction_rank(m):
    from fractions import Fraction

    rows = [[Fraction(x) for x in row] for row in m.entries]
    rank = 0
    col = 0
    while rank < len(rows) and col < m.cols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / lead
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_rank_matches_rational_elimination(rows, cols, data):
    m = IntMatrix.from_rows(
        [[data.draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    )
    assert smith_normal_form(m).rank == _fraction_rank(m)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.data())
def test_snf_diagonal_product_matches_determinant(n, data):
    m = IntMatrix.from_rows(
        [[data.draw(st.integers(-6, 6)) for _ in range(n)] for _ in range(n)]
    )
    snf = smith_normal_form(m)
    prod = 1
    for x in snf.diagonal:
        prod *= x
    assert prod == abs(m.det())


def test_pv_doubling_endomorphism():
    k0, k1 = pv_k_groups(IntMatrix.from_rows([[2]]))
    assert k0 == AbelianGroupPresentation(0) and k1 == 0
