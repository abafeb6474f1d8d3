"""
Analysis of classical [n, k, d]_q codes: distance, MDS detection and the subsets B
whose complement is LOCC-assisting (rank(G_B) = k).
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from loguru import logger

from .exceptions import BudgetExceeded, ConsistencyError, IndexOutOfRange, InvalidSubset
from .gf import power_values
from .gflinalg import encode_word, rank, select_columns
from .types import (
    Budgets,
    CodeAnalysis,
    FieldParams,
    GFMatrix,
    GFVector,
    LinearCode,
    SubsetReport,
)

DEFAULT_BUDGETS = Budgets()


def linear_code(field: FieldParams, rows: Iterable[Sequence[int]]) -> LinearCode:
    return LinearCode(field=field, G=GFMatrix.from_rows(field, rows))


def repetition_code(field: FieldParams, n: int) -> LinearCode:
    """The [n, 1, n]_q repetition code, G = (1 1 ... 1)."""
    return linear_code(field, [[1] * n])


def identity_code(field: FieldParams, k: int) -> LinearCode:
    """The [k, k, 1]_q code with G = I_k."""
    return linear_code(field, [[int(i == j) for j in range(k)] for i in range(k)])


def reed_solomon_code(field: FieldParams, n: int, k: int) -> LinearCode:
    """
    Reed-Solomon code with a Vandermonde generator.

    Row i holds the i-th powers of the evaluation points, which are the first `n`
    field elements in value order (0^0 = 1). Every such code is MDS.

    Parameters
    ----------
    field: `FieldParams`
        Code alphabet; needs q >= n distinct evaluation points
    n: `int`
        Code length
    k: `int`
        Code dimension, 1 <= k <= n
    """
    if not 1 <= k <= n <= field.q:
        raise InvalidSubset(
            f"Reed-Solomon needs 1 <= k <= n <= q, got k={k}, n={n}, q={field.q}."
        )
    rows = [[power_values(field, point, i) for point in range(n)] for i in range(k)]
    return linear_code(field, rows)


def check_budget(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} exceeds the budget of {limit}.")


def messages(field: FieldParams, k: int) -> Iterator[GFVector]:
    """All x in F_q^k in index order (first coordinate most significant)."""
    for values in product(range(field.q), repeat=k):
        yield GFVector(field=field, values=values)


def codewords(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> Iterator[tuple[GFVector, GFVector]]:
    """
    Iterate (x, x·G) over every message x in F_q^k.

    Raises
    ------
    `BudgetExceeded`
        If q^k exceeds `budgets.max_codewords`
    """
    check_budget(code.q**code.k, budgets.max_codewords, "Codeword count q^k")
    for x in messages(code.field, code.k):
        yield x, encode_word(x, code.G)


def min_distance(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """
    Minimum Hamming weight over the q^k - 1 nonzero codewords.
    """
    best = code.n
    for x, word in codewords(code, budgets):
        if x.is_zero():
            continue
        weight = sum(1 for v in word.values if v)
        best = min(best, weight)
    return best


def _all_subsets_full_rank(code: LinearCode, size: int) -> bool:
    return all(
        rank(select_columns(code.G, cols)) == code.k
        for cols in combinations(range(code.n), size)
    )


def distance_via_rank(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """
    Distance as 1 + the largest r such that every n - r columns of G still have rank k.

    This is the statement that any d - 1 columns may be removed without losing
    rank; it is computed independently of the codeword weights.
    """
    check_budget(code.n, budgets.max_subset_sites, "Player count n")
    best_r = 0
    for r in range(1, code.n - code.k + 1):
        if not _all_subsets_full_rank(code, code.n - r):
            break
        best_r = r
    return best_r + 1


def is_mds(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """True iff d = n - k + 1 (Singleton bound met with equality)."""
    return min_distance(code, budgets) == code.n - code.k + 1


def recovery_threshold(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Smallest |B| for which every subset B is guaranteed assisted: n - d + 1."""
    return code.n - min_distance(code, budgets) + 1


def _normalize_subset(code: LinearCode, subset: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(subset)))
    bad = [i for i in members if not 0 <= i < code.n]
    if bad:
        raise IndexOutOfRange(
            f"Player indices {[i + 1 for i in bad]} (1-based) outside 1..{code.n}."
        )
    return members


def complement(n: int, subset: Iterable[int]) -> tuple[int, ...]:
    members = set(subset)
    return tuple(i for i in range(n) if i not in members)


def split_players(
    code: LinearCode, A: Iterable[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Sort A and pair it with its complement B.

    Raises
    ------
    `InvalidSubset`
        If A is empty, the full player set or holds out-of-range indices
    """
    try:
        A = _normalize_subset(code, A)
    except IndexOutOfRange as e:
        raise InvalidSubset(str(e)) from e
    if not A or len(A) == code.n:
        raise InvalidSubset(
            f"A must be a proper nonempty subset of the {code.n} players, got {[i + 1 for i in A]}."
        )
    return A, complement(code.n, A)


def subset_report(code: LinearCode, B: Sequence[int]) -> SubsetReport:
    r = rank(select_columns(code.G, B))
    return SubsetReport(
        n=code.n, k=code.k, subset_B=tuple(B), rank_GB=r, is_assisted=r == code.k
    )


def is_locc_assisting(code: LinearCode, A: Iterable[int]) -> SubsetReport:
    """
    Check whether measuring subset A is LOCC-assisting for its complement B.

    Parameters
    ----------
    code: `LinearCode`
        The code
    A: `Iterable[int]`
        0-based measuring players; may be empty but not the full set

    Returns
    -------
    `SubsetReport`
        rank(G_B) and the verdict rank(G_B) == k

    Raises
    ------
    `InvalidSubset`
        If A is the full player set or holds out-of-range indices
    """
    try:
        A = _normalize_subset(code, A)
    except IndexOutOfRange as e:
        raise InvalidSubset(str(e)) from e
    if len(A) == code.n:
        raise InvalidSubset("A must be a proper subset; its complement B is empty.")
    return subset_report(code, complement(code.n, A))


def proper_subsets(n: int) -> Iterator[tuple[int, ...]]:
    """Proper nonempty subsets, ascending by size then lexicographic."""
    for size in range(1, n):
        yield from combinations(range(n), size)


def _check_distance_bounds(
    code: LinearCode, reports: list[SubsetReport], budgets: Budgets
) -> None:
    d = min_distance(code, budgets)
    mds = d == code.n - code.k + 1
    for report in reports:
        size = len(report.subset_B)
        if size > code.n - d and not report.is_assisted:
            raise ConsistencyError(
                f"B={[i + 1 for i in report.subset_B]} has |B| > n - d = {code.n - d} but rank {report.rank_GB} < k."
            )
        if mds and size >= code.k and not report.is_assisted:
            raise ConsistencyError(
                f"MDS code but B={[i + 1 for i in report.subset_B]} with |B| >= k is not assisted."
            )


def enumerate_assisting(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS, jobs: int = 1
) -> list[SubsetReport]:
    """
    Report every proper nonempty subset B, ascending by |B| then lexicographic.

    The scan is checked against the distance bound: every B with |B| > n - d
    must be assisted, and for MDS codes every B with |B| >= k.

    Parameters
    ----------
    code: `LinearCode`
        The code
    budgets: `Budgets`, optional
        `max_subset_sites` bounds n
    jobs: `int`, optional
        Worker threads; results keep the stated order regardless

    Raises
    ------
    `BudgetExceeded`
        If n exceeds `budgets.max_subset_sites`
    `ConsistencyError`
        If the scan contradicts the distance bound
    """
    check_budget(code.n, budgets.max_subset_sites, "Player count n")
    subsets = list(proper_subsets(code.n))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda B: subset_report(code, B), subsets))
    else:
        reports = [subset_report(code, B) for B in subsets]

    _check_distance_bounds(code, reports, budgets)
    logger.debug(
        f"{code}: {sum(r.is_assisted for r in reports)}/{len(reports)} proper subsets assisted"
    )
    return reports


def optimal_subsets(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> list[SubsetReport]:
    """Assisted subsets of the smallest possible size |B| = k."""
    check_budget(code.n, budgets.max_subset_sites, "Player count n")
    if code.k >= code.n:
        return []
    return [
        report
        for report in (
            subset_report(code, B) for B in combinations(range(code.n), code.k)
        )
        if report.is_assisted
    ]


def analyze_code(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> CodeAnalysis:
    """
    Dimensions, both distance computations, MDS flag and the subset thresholds.
    """
    d_weight = min_distance(code, budgets)
    d_rank = distance_via_rank(code, budgets)
    if d_weight != d_rank:
        raise ConsistencyError(
            f"Minimum weight {d_weight} disagrees with rank-based distance {d_rank}."
        )
    mds = d_weight == code.n - code.k + 1
    sizes = [len(r.subset_B) for r in enumerate_assisting(code, budgets) if r.is_assisted]
    return CodeAnalysis(
        n=code.n,
        k=code.k,
        q=code.q,
        distance_weight=d_weight,
        distance_rank=d_rank,
        is_mds=mds,
        recovery_threshold=code.n - d_weight + 1,
        min_assisted_size=min(sizes) if sizes else None,
        optimal_subsets=len(optimal_subsets(code, budgets)) if mds else None,
    )
