from itertools import product

import numpy as np
import pytest

from loccqss.code import proper_subsets
from loccqss.exceptions import (
    DimensionMismatch,
    EmptySelection,
    FieldMismatch,
    IndexOutOfRange,
    NoSolution,
)
from loccqss.gf import add_values, mul_values
from loccqss.gflinalg import (
    encode_word,
    left_null_space,
    matmul,
    matvec,
    null_space,
    rank,
    row_reduce,
    select_columns,
    solve,
    transpose,
)
from loccqss.types import GFMatrix, GFVector


def vec(field, *values):
    return GFVector(field=field, values=values)


def mat(field, rows):
    return GFMatrix.from_rows(field, rows)


def test_encode_word_examples(f2, f3):
    assert encode_word(vec(f2, 1), mat(f2, [[1, 1, 1]])).values == (1, 1, 1)
    G = mat(f3, [[1, 0, 1], [0, 1, 1]])
    assert encode_word(vec(f3, 0, 0), G).is_zero()
    assert encode_word(vec(f3, 1, 2), G).values == (1, 2, 0)


def test_encode_word_errors(f2, f3):
    with pytest.raises(DimensionMismatch):
        encode_word(vec(f2, 1, 0), mat(f2, [[1, 1, 1]]))
    with pytest.raises(FieldMismatch):
        encode_word(vec(f3, 1), mat(f2, [[1, 1, 1]]))


def test_rank_examples(f2, f3):
    assert rank(mat(f2, [[1, 1, 1]])) == 1
    assert rank(mat(f3, [[0, 0], [0, 0]])) == 0
    assert rank(mat(f3, [[1, 0, 1], [0, 1, 1]])) == 2
    assert rank(mat(f3, [[1, 2], [2, 1]])) == 1  # second row is twice the first


def test_row_reduce_produces_rref(f3):
    rows, pivots = row_reduce(mat(f3, [[0, 2, 1], [1, 1, 0], [1, 0, 1]]))
    assert pivots == [0, 1]
    assert rows[0][0] == 1 and rows[1][1] == 1
    assert rows[0][1] == 0 and rows[1][0] == 0


def test_solve_examples(f2):
    G_B = mat(f2, [[1]])
    for a1, a2 in product(range(2), repeat=2):
        rhs = matvec(mat(f2, [[1, 1]]), vec(f2, a1, a2))
        assert solve(G_B, rhs).values == (a1 ^ a2,)

    assert solve(mat(f2, [[1, 1, 0], [0, 1, 1]]), vec(f2, 0, 0)).is_zero()

    with pytest.raises(NoSolution):
        solve(mat(f2, [[1], [1]]), vec(f2, 1, 0))
    with pytest.raises(DimensionMismatch):
        solve(mat(f2, [[1], [1]]), vec(f2, 1))


def test_solve_satisfies_system(f3, f4):
    for field, rows in (
        (f3, [[1, 2, 0, 1], [0, 1, 1, 2]]),
        (f4, [[1, 1, 1, 1], [0, 1, 2, 3]]),
    ):
        M = mat(field, rows)
        for values in product(range(field.q), repeat=2):
            rhs = vec(field, *values)
            z = solve(M, rhs)
            assert matvec(M, z) == rhs


def test_null_spaces(f3):
    M = mat(f3, [[1, 0, 1], [0, 1, 1]])
    kernel = null_space(M)
    assert len(kernel) == 1
    assert matvec(M, kernel[0]).is_zero()

    G_B = mat(f3, [[1], [1]])
    left = left_null_space(G_B)
    assert len(left) == 1
    assert not left[0].is_zero()
    assert encode_word(left[0], G_B).is_zero()


def test_transpose_and_matmul(f3):
    M = mat(f3, [[1, 2, 0], [0, 1, 1]])
    assert transpose(transpose(M)) == M
    identity = mat(f3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert matmul(M, identity) == M
    assert matmul(M, transpose(M)).entries == ((2, 2), (2, 2))


def test_select_columns_examples(f2):
    G = mat(f2, [[1, 1, 1]])
    assert select_columns(G, [2]).entries == ((1,),)
    assert select_columns(G, [0, 1]).entries == ((1, 1),)
    assert select_columns(G, range(3)) == G
    with pytest.raises(EmptySelection):
        select_columns(G, [])
    with pytest.raises(IndexOutOfRange):
        select_columns(G, [3])


def test_matrix_text_form(f3):
    M = mat(f3, [[1, 0, 2], [0, 1, 1]])
    assert M.to_text() == "1 0 2\n0 1 1"
    assert GFMatrix.from_text(f3, M.to_text()) == M


def test_matrix_validation(f2):
    with pytest.raises(ValueError):
        mat(f2, [[1, 2]])
    with pytest.raises(ValueError):
        mat(f2, [[1, 0], [1]])


def random_row_operation(field, rows, rng):
    i, j = (int(v) for v in rng.choice(len(rows), size=2, replace=False))
    kind = int(rng.integers(3))
    if kind == 0:
        rows[i], rows[j] = rows[j], rows[i]
    elif kind == 1:
        scale = int(rng.integers(1, field.q))
        rows[i] = [mul_values(field, scale, v) for v in rows[i]]
    else:
        coeff = int(rng.integers(field.q))
        rows[i] = [
            add_values(field, u, mul_values(field, coeff, v)) for u, v in zip(rows[i], rows[j])
        ]


@pytest.mark.parametrize("field_name", ["f2", "f3", "f4"])
def test_rank_is_invariant_under_row_operations(field_name, request):
    field = request.getfixturevalue(field_name)
    rng = np.random.default_rng(5)
    for _ in range(30):
        shape = (int(rng.integers(2, 5)), int(rng.integers(1, 6)))
        rows = rng.integers(field.q, size=shape).tolist()
        expected = rank(mat(field, rows))
        for _ in range(10):
            random_row_operation(field, rows, rng)
            assert rank(mat(field, rows)) == expected


@pytest.mark.parametrize(
    "field_name, rows",
    [
        ("f3", [[1, 2, 0], [2, 1, 0], [0, 0, 1]]),
        ("f2", [[1, 1, 0], [0, 1, 1], [1, 0, 1]]),
        ("f4", [[1, 2, 3], [2, 3, 1]]),
    ],
)
def test_solve_fails_exactly_when_rank_grows(field_name, rows, request):
    field = request.getfixturevalue(field_name)
    M = mat(field, rows)
    base = rank(M)
    for values in product(range(field.q), repeat=len(rows)):
        rhs = vec(field, *values)
        augmented = mat(field, [row + [r] for row, r in zip(rows, values)])
        if rank(augmented) > base:
            with pytest.raises(NoSolution):
                solve(M, rhs)
        else:
            assert matvec(M, solve(M, rhs)) == rhs


def test_column_selection_never_raises_rank(catalog_entry):
    G = catalog_entry.code.G
    full = rank(G)
    for B in [*proper_subsets(G.cols), tuple(range(G.cols))]:
        assert rank(select_columns(G, B)) <= full
