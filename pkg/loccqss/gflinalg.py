"""
Dense linear algebra over F_q: codeword products, rank, canonical solving and column selection.

Column indices are 0-based here; the file formats and the CLI use 1-based indices.
"""

from typing import Iterable

from loguru import logger

from .exceptions import DimensionMismatch, EmptySelection, FieldMismatch, IndexOutOfRange, NoSolution
from .gf import add_values, inv_values, mul_values, neg_values, sub_values
from .types import FieldParams, GFMatrix, GFVector


def _check_field(left: FieldParams, right: FieldParams) -> None:
    if left != right:
        raise FieldMismatch(f"Operands live in different fields: {left} vs {right}.")


def _dot(field: FieldParams, u: Iterable[int], v: Iterable[int]) -> int:
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = add_values(field, total, mul_values(field, a, b))
    return total


def encode_word(x: GFVector, G: GFMatrix) -> GFVector:
    """
    Row-vector times matrix product x·G over F_q.

    Parameters
    ----------
    x: `GFVector`
        Message of length k
    G: `GFMatrix`
        Generator matrix of shape k x n

    Returns
    -------
    `GFVector`
        The codeword of length n

    Raises
    ------
    `DimensionMismatch`
        If len(x) != G.rows
    `FieldMismatch`
        If x and G live in different fields
    """
    _check_field(x.field, G.field)
    if len(x) != G.rows:
        raise DimensionMismatch(
            f"Cannot multiply a length-{len(x)} vector by a {G.rows}x{G.cols} matrix."
        )
    field = G.field
    word = [0] * G.cols
    for xi, row in zip(x.values, G.entries):
        if xi == 0:
            continue
        for j, g in enumerate(row):
            if g:
                word[j] = add_values(field, word[j], mul_values(field, xi, g))
    return GFVector(field=field, values=tuple(word))


def matvec(M: GFMatrix, v: GFVector) -> GFVector:
    """Matrix times column vector, M·v^T, returned as a vector of length M.rows."""
    _check_field(M.field, v.field)
    if len(v) != M.cols:
        raise DimensionMismatch(
            f"Cannot multiply a {M.rows}x{M.cols} matrix by a length-{len(v)} vector."
        )
    return GFVector(
        field=M.field, values=tuple(_dot(M.field, row, v.values) for row in M.entries)
    )


def transpose(M: GFMatrix) -> GFMatrix:
    return GFMatrix(
        field=M.field,
        rows=M.cols,
        cols=M.rows,
        entries=tuple(zip(*M.entries)),
    )


def matmul(M: GFMatrix, N: GFMatrix) -> GFMatrix:
    _check_field(M.field, N.field)
    if M.cols != N.rows:
        raise DimensionMismatch(
            f"Cannot multiply {M.rows}x{M.cols} by {N.rows}x{N.cols}."
        )
    columns = list(zip(*N.entries))
    return GFMatrix.from_rows(
        M.field, [[_dot(M.field, row, col) for col in columns] for row in M.entries]
    )


def row_reduce(M: GFMatrix) -> tuple[list[list[int]], list[int]]:
    """
    Reduced row echelon form by Gauss-Jordan elimination over F_q.

    The pivot in each column is the first row (at or below the current one)
    with a nonzero entry; exact arithmetic needs no numerical pivoting.

    Returns
    -------
    `tuple[list[list[int]], list[int]]`
        The reduced rows (pivots scaled to 1) and the pivot column of each nonzero row
    """
    field = M.field
    rows = [list(row) for row in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        pivot = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = inv_values(field, rows[r][c])
        rows[r] = [mul_values(field, scale, v) for v in rows[r]]
        for i in range(M.rows):
            factor = rows[i][c]
            if i == r or factor == 0:
                continue
            rows[i] = [
                sub_values(field, v, mul_values(field, factor, w))
                for v, w in zip(rows[i], rows[r])
            ]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return rows, pivots


def rank(M: GFMatrix) -> int:
    """
    Row rank of `M` over F_q (equal to its column rank).
    """
    _, pivots = row_reduce(M)
    return len(pivots)


def solve(M: GFMatrix, rhs: GFVector) -> GFVector:
    """
    Canonical solution z of M·z^T = rhs with every free variable set to zero.

    Parameters
    ----------
    M: `GFMatrix`
        Coefficient matrix of shape r x c
    rhs: `GFVector`
        Right-hand side of length r

    Returns
    -------
    `GFVector`
        A solution of length c

    Raises
    ------
    `NoSolution`
        If the system is inconsistent
    `DimensionMismatch`
        If len(rhs) != M.rows
    `FieldMismatch`
        If M and rhs live in different fields
    """
    _check_field(M.field, rhs.field)
    if len(rhs) != M.rows:
        raise DimensionMismatch(
            f"Right-hand side has length {len(rhs)}, expected {M.rows}."
        )
    augmented = GFMatrix(
        field=M.field,
        rows=M.rows,
        cols=M.cols + 1,
        entries=tuple(row + (b,) for row, b in zip(M.entries, rhs.values)),
    )
    reduced, pivots = row_reduce(augmented)
    if pivots and pivots[-1] == M.cols:
        raise NoSolution(
            f"System is inconsistent: rank([M | rhs]) = {len(pivots)} > rank(M) = {len(pivots) - 1}."
        )
    z = [0] * M.cols
    for row, c in zip(reduced, pivots):
        z[c] = row[-1]
    logger.debug(f"Solved {M.rows}x{M.cols} system with pivots {pivots}: z={z}")
    return GFVector(field=M.field, values=tuple(z))


def null_space(M: GFMatrix) -> list[GFVector]:
    """
    Basis of the right kernel {z : M·z^T = 0}, one vector per free column.
    """
    field = M.field
    reduced, pivots = row_reduce(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        z = [0] * M.cols
        z[f] = 1
        for row, c in zip(reduced, pivots):
            z[c] = neg_values(field, row[f])
        basis.append(GFVector(field=field, values=tuple(z)))
    return basis


def left_null_space(M: GFMatrix) -> list[GFVector]:
    """
    Basis of the left kernel {y : y·M = 0}.
    """
    return null_space(transpose(M))


def select_columns(G: GFMatrix, S: Iterable[int]) -> GFMatrix:
    """
    Submatrix made of the columns indexed by `S`, in ascending index order.

    Parameters
    ----------
    G: `GFMatrix`
        Source matrix
    S: `Iterable[int]`
        0-based column indices; duplicates are ignored

    Returns
    -------
    `GFMatrix`
        G restricted to the selected columns

    Raises
    ------
    `EmptySelection`
        If `S` is empty
    `IndexOutOfRange`
        If an index is outside [0, G.cols)
    """
    columns = sorted(set(S))
    if not columns:
        raise EmptySelection("Column selection must not be empty.")
    bad = [c for c in columns if not 0 <= c < G.cols]
    if bad:
        raise IndexOutOfRange(
            f"Column indices {[c + 1 for c in bad]} (1-based) outside 1..{G.cols}."
        )
    return GFMatrix(
        field=G.field,
        rows=G.rows,
        cols=len(columns),
        entries=tuple(tuple(row[c] for c in columns) for row in G.entries),
    )
