from fractions import Fraction

from hypothesis import given, settings, strategies as st

from fusionring.lattices import (
    integer_determinant,
    invert_rational_matrix,
    lattice_index,
    row_basis,
    smith_normal_form,
)


def matrices(max_dim=4, max_entry=9):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.integers(1, max_dim).flatmap(
            lambda m: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            )
        )
    )


def _matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


@settings(max_examples=120, deadline=None)
@given(matrices())
def test_snf_reconstruction(mat):
    diag, u, v = smith_normal_form(mat)
    product = _matmul(_matmul(u, mat), v)
    for i, row in enumerate(product):
        for j, val in enumerate(row):
            expected = diag[i] if i == j and i < len(diag) else 0
            assert val == expected
    assert abs(integer_determinant(u)) == 1
    assert abs(integer_determinant(v)) == 1
    for a, b in zip(diag, diag[1:]):
        if b:
            assert a != 0 and b % a == 0
    assert all(d >= 0 for d in diag)


def test_lattice_index_known():
    assert lattice_index([[2, 0], [0, 3]], 2) == 6
    assert lattice_index([[1, 0], [0, 1], [5, 7]], 2) == 1
    assert lattice_index([[2, 0], [1, 1]], 2) == 2


def test_lattice_index_rank_deficient():
    try:
        lattice_index([[1, 2], [2, 4]], 2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for rank-deficient rows")


def test_row_basis_preserves_index():
    rows = [[2, 0], [0, 2], [1, 1]]
    basis = row_basis(rows, 2)
    assert lattice_index(basis, 2) == lattice_index(rows, 2) == 2


def test_integer_determinant_known():
    assert integer_determinant([[2, -1], [-1, 2]]) == 3
    assert integer_determinant([[1, 2], [3, 4]]) == -2
    assert integer_determinant([[1, 0], [0, 0]]) == 0


def test_invert_rational_matrix():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = invert_rational_matrix(m)
    assert inv == [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]
