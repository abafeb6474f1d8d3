"""
Exact state vector simulation of n qudits of dimension q = p^m.

Basis states are labeled by tuples in F_q^n; the tuple (x_1, ..., x_n) sits at
index sum x_i q^(n-i), so site 1 is the most significant digit. Phases are
powers of omega = exp(2 pi i / p) with integer exponents taken mod p.
"""

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from loguru import logger

from .code import DEFAULT_BUDGETS, messages
from .constant import DEGENERATE_NORM
from .exceptions import (
    BudgetExceeded,
    DegenerateState,
    DimensionMismatch,
    FieldMismatch,
    IndexOutOfRange,
    InvalidSubset,
)
from .gf import mul_values, trace_value
from .gflinalg import encode_word
from .types import (
    Budgets,
    FieldElement,
    FieldParams,
    GFVector,
    LinearCode,
    MeasurementRecord,
    Secret,
    StateVector,
)
from .utils import format_fixed


def index_of(field: FieldParams, digits: Sequence[int]) -> int:
    index = 0
    for d in digits:
        index = index * field.q + d
    return index


def tuple_of(field: FieldParams, sites: int, index: int) -> tuple[int, ...]:
    digits = []
    for _ in range(sites):
        index, d = divmod(index, field.q)
        digits.append(d)
    return tuple(reversed(digits))


@lru_cache(maxsize=None)
def omega_powers(p: int) -> np.ndarray:
    """omega^e for e = 0..p-1."""
    return np.exp(2j * np.pi * np.arange(p) / p)


def _digit_matrix(field: FieldParams) -> np.ndarray:
    """q x m polynomial-basis coordinates of every element, alpha^0 first."""
    powers = field.p ** np.arange(field.m, dtype=np.int64)
    return (np.arange(field.q, dtype=np.int64)[:, None] // powers) % field.p


@lru_cache(maxsize=64)
def trace_form(field: FieldParams) -> np.ndarray:
    """m x m Gram matrix tr(alpha^i alpha^j) of the trace bilinear form."""
    basis = [field.p**i for i in range(field.m)]
    return np.array(
        [[trace_value(field, mul_values(field, u, v)) for v in basis] for u in basis],
        dtype=np.int64,
    )


def trace_row(field: FieldParams, z: int) -> np.ndarray:
    """tr(x z) for every x, without building the full table."""
    digits = _digit_matrix(field)
    return (digits @ (trace_form(field) @ digits[z])) % field.p


@lru_cache(maxsize=64)
def trace_products(field: FieldParams) -> np.ndarray:
    """q x q integer table of tr(x z), by linearity of the trace in the digit coordinates."""
    digits = _digit_matrix(field)
    return (digits @ trace_form(field) @ digits.T) % field.p


def fourier_matrix(field: FieldParams, inverse: bool = False) -> np.ndarray:
    """
    Generalized Fourier matrix F with entries F[z, x] = omega^tr(x z) / sqrt(q).

    F is symmetric, so its adjoint (returned for `inverse=True`) is its complex conjugate.
    """
    F = omega_powers(field.p)[trace_products(field)] / np.sqrt(field.q)
    return F.conj() if inverse else F


def z_phases(field: FieldParams, z: int) -> np.ndarray:
    """Diagonal of the Weyl-Heisenberg operator Z^z: omega^tr(z x) for every x."""
    return omega_powers(field.p)[trace_row(field, z)]


def _check_site(state: StateVector, site: int) -> None:
    if not 0 <= site < state.sites:
        raise IndexOutOfRange(f"Site {site + 1} (1-based) outside 1..{state.sites}.")


def _normalize_sites(state: StateVector, subset: Iterable[int]) -> tuple[int, ...]:
    sites = tuple(sorted(set(subset)))
    for site in sites:
        _check_site(state, site)
    if not sites or len(sites) == state.sites:
        raise InvalidSubset(
            f"Measured subset must be proper and nonempty, got {[s + 1 for s in sites]} of {state.sites} sites."
        )
    return sites


def apply_single_site(state: StateVector, U: np.ndarray, site: int) -> StateVector:
    """Apply a q x q matrix to one site."""
    _check_site(state, site)
    psi = np.tensordot(U, state.tensor(), axes=([1], [site]))
    psi = np.moveaxis(psi, 0, site)
    return StateVector(field=state.field, sites=state.sites, amps=psi.reshape(-1))


def apply_fourier(state: StateVector, site: int, inverse: bool = False) -> StateVector:
    """
    Apply F (or its adjoint) at `site`.

    Raises
    ------
    `IndexOutOfRange`
        If `site` is not a valid 0-based site index
    """
    return apply_single_site(state, fourier_matrix(state.field, inverse), site)


def apply_z(state: StateVector, site: int, z: FieldElement) -> StateVector:
    """
    Apply Z^z at `site`: the basis component whose site digit is x picks up omega^tr(z x).

    Raises
    ------
    `IndexOutOfRange`
        If `site` is not a valid 0-based site index
    `FieldMismatch`
        If `z` does not live in the state's field
    """
    _check_site(state, site)
    if z.params != state.field:
        raise FieldMismatch(f"Z exponent lives in {z.params}, state in {state.field}.")
    shape = [1] * state.sites
    shape[site] = state.field.q
    psi = state.tensor() * z_phases(state.field, z.value).reshape(shape)
    return StateVector(field=state.field, sites=state.sites, amps=psi.reshape(-1))


def encode_secret(
    secret: Secret, code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS
) -> StateVector:
    """
    Apply the encoding isometry |x> -> |x·G> to the secret.

    Parameters
    ----------
    secret: `Secret`
        k-qudit secret over the code's field
    code: `LinearCode`
        The dealer's code
    budgets: `Budgets`, optional
        `max_amplitudes` bounds q^n

    Returns
    -------
    `StateVector`
        The n-qudit shared state sum_x c(x)|x·G>

    Raises
    ------
    `FieldMismatch`
        If the secret and code fields differ
    `DimensionMismatch`
        If secret.k != code.k
    `BudgetExceeded`
        If q^n exceeds `budgets.max_amplitudes`
    """
    if secret.field != code.field:
        raise FieldMismatch(f"Secret lives in {secret.field}, code in {code.field}.")
    if secret.k != code.k:
        raise DimensionMismatch(f"Secret has {secret.k} qudits, code encodes {code.k}.")
    dim = code.q**code.n
    if dim > budgets.max_amplitudes:
        raise BudgetExceeded(
            f"State vector of q^n = {dim} amplitudes exceeds the budget of {budgets.max_amplitudes}."
        )
    amps = np.zeros(dim, dtype=complex)
    for i, x in enumerate(messages(code.field, code.k)):
        word = encode_word(x, code.G)
        amps[index_of(code.field, word.values)] = secret.amps[i]
    return StateVector(field=code.field, sites=code.n, amps=amps)


def _split_measured(state: StateVector, A: tuple[int, ...]) -> np.ndarray:
    """Rotate A into the Fourier basis and return a q^|A| x q^|B| amplitude matrix."""
    rotated = state
    for site in A:
        rotated = apply_fourier(rotated, site, inverse=True)
    psi = np.moveaxis(rotated.tensor(), A, tuple(range(len(A))))
    q = state.field.q
    return psi.reshape(q ** len(A), q ** (state.sites - len(A)))


def fourier_outcome_distribution(state: StateVector, A: Iterable[int]) -> np.ndarray:
    """
    Outcome probabilities of measuring every site of A in the Fourier basis {F|a>}.

    Entry i is the probability of the outcome tuple `tuple_of(field, |A|, i)`.
    """
    A = _normalize_sites(state, A)
    block = _split_measured(state, A)
    return np.sum(np.abs(block) ** 2, axis=1)


def project_fourier_outcome(
    state: StateVector, A: Iterable[int], a: Sequence[int]
) -> tuple[float, StateVector]:
    """
    Project A onto the Fourier-basis outcome `a` and renormalize.

    Returns
    -------
    `tuple[float, StateVector]`
        The outcome probability and the state of the remaining sites, in ascending original order

    Raises
    ------
    `DegenerateState`
        If the outcome has (numerically) zero probability
    """
    A = _normalize_sites(state, A)
    if len(a) != len(A):
        raise DimensionMismatch(f"Need {len(A)} outcomes, got {len(a)}.")
    block = _split_measured(state, A)
    row = block[index_of(state.field, a)]
    norm = float(np.linalg.norm(row))
    if norm < DEGENERATE_NORM:
        raise DegenerateState(f"Outcome {tuple(a)} has vanishing norm {norm!r}.")
    reduced = StateVector(field=state.field, sites=state.sites - len(A), amps=row / norm)
    return norm**2, reduced


def measure_fourier(
    state: StateVector, A: Iterable[int], rng: np.random.Generator
) -> tuple[MeasurementRecord, StateVector]:
    """
    Measure every site of A in the Fourier basis and sample an outcome by the Born rule.

    Parameters
    ----------
    state: `StateVector`
        Shared state of all players
    A: `Iterable[int]`
        0-based measured sites, proper and nonempty
    rng: `numpy.random.Generator`
        Seeded random source; the only source of randomness

    Returns
    -------
    `tuple[MeasurementRecord, StateVector]`
        The outcome record (with its computed probability) and the state left on B
    """
    A = _normalize_sites(state, A)
    probs = fourier_outcome_distribution(state, A)
    index = int(rng.choice(len(probs), p=probs / probs.sum()))
    a = tuple_of(state.field, len(A), index)
    probability, reduced = project_fourier_outcome(state, A, a)
    logger.debug(f"Measured A={[s + 1 for s in A]}: a={a}, p={probability:.6f}")
    record = MeasurementRecord(
        subset_A=A,
        outcomes_a=GFVector(field=state.field, values=a),
        probability=probability,
    )
    return record, reduced


def fidelity(u: StateVector | Secret, v: StateVector | Secret) -> float:
    """
    |<u|v>|^2, insensitive to global phase.

    Raises
    ------
    `DimensionMismatch`
        If the two states have different dimensions
    """
    if u.amps.shape != v.amps.shape:
        raise DimensionMismatch(
            f"Cannot compare states of dimensions {u.amps.shape[0]} and {v.amps.shape[0]}."
        )
    return float(min(abs(np.vdot(u.amps, v.amps)) ** 2, 1.0))


def random_secret(field: FieldParams, k: int, rng: np.random.Generator) -> Secret:
    """Haar-random k-qudit secret (normalized complex Gaussian amplitudes)."""
    dim = field.q**k
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return Secret(field=field, k=k, amps=amps / np.linalg.norm(amps))


def basis_secret(field: FieldParams, k: int, index: int) -> Secret:
    dim = field.q**k
    if not 0 <= index < dim:
        raise IndexOutOfRange(f"Basis index {index} outside 0..{dim - 1}.")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return Secret(field=field, k=k, amps=amps)


def secret_as_state(secret: Secret) -> StateVector:
    return StateVector(field=secret.field, sites=secret.k, amps=secret.amps)


def format_state(state: StateVector | Secret, cutoff: float = DEGENERATE_NORM) -> str:
    """
    State dump: one line per nonzero amplitude, `index_tuple  re  im`, sorted by index.
    """
    sites = state.sites if isinstance(state, StateVector) else state.k
    lines = []
    for index in np.flatnonzero(np.abs(state.amps) > cutoff):
        label = ",".join(str(d) for d in tuple_of(state.field, sites, int(index)))
        amp = state.amps[index]
        lines.append(f"({label})  {format_fixed(amp.real)}  {format_fixed(amp.imag)}")
    return "\n".join(lines)
