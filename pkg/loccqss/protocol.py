"""
The LOCC-assisted recovery protocol.

The dealer encodes a k-qudit secret with a linear code, the players of A measure
their qudits in the Fourier basis and broadcast the outcomes a, and B applies
Z^z with G_B·z^T = G_A·a^T followed by the decoding isometry V_B.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache, reduce
from typing import Iterable, Optional, Sequence

import numpy as np
from loguru import logger

from .code import (
    DEFAULT_BUDGETS,
    check_budget,
    codewords,
    complement,
    proper_subsets,
    split_players,
    subset_report,
)
from .constant import (
    DEFAULT_SEED,
    DEFAULT_SIMULATE_TRIALS,
    DEFAULT_VERIFY_TRIALS,
    NORM_TOLERANCE,
    Direction,
    SecretKind,
    Verdict,
)
from .exceptions import ConfigError, NotAssisted, PhaseNotEliminated, SupportLeak
from .gf import add_values, mul_values, trace_value
from .gflinalg import encode_word, left_null_space, matvec, null_space, select_columns, solve
from .qsim import (
    apply_z,
    basis_secret,
    encode_secret,
    fidelity,
    index_of,
    measure_fourier,
    omega_powers,
    project_fourier_outcome,
    random_secret,
)
from .types import (
    Budgets,
    CollisionWitness,
    FieldElement,
    FieldParams,
    GFVector,
    LinearCode,
    ProtocolTranscript,
    Secret,
    StateVector,
    SubsetReport,
    Theorem1Verdict,
)
from .utils import load_secret_file, parse_secret_source

SEED_MODULUS = 2**64


def _require_assisted(code: LinearCode, B: Sequence[int]) -> SubsetReport:
    report = subset_report(code, B)
    if not report.is_assisted:
        raise NotAssisted(
            f"B={[i + 1 for i in B]} has rank(G_B) = {report.rank_GB} < k = {code.k}; "
            f"A={[i + 1 for i in report.subset_A]} is not LOCC-assisting."
        )
    return report


def _pairing(field: FieldParams, u: Sequence[int], v: Sequence[int]) -> int:
    """tr(u·v^T), an element of F_p."""
    dot = reduce(
        lambda acc, uv: add_values(field, acc, mul_values(field, *uv)), zip(u, v), 0
    )
    return trace_value(field, dot)


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise ConfigError(f"Need at least one trial, got {trials}.")


def compute_correction(
    code: LinearCode,
    A: Iterable[int],
    a: GFVector,
    rng: Optional[np.random.Generator] = None,
) -> GFVector:
    """
    Solve G_B·z^T = G_A·a^T for the correction applied on B.

    Parameters
    ----------
    code: `LinearCode`
        The dealer's code
    A: `Iterable[int]`
        0-based measuring players
    a: `GFVector`
        Outcomes broadcast by A, one per player of A in ascending order
    rng: `numpy.random.Generator`, optional
        If given, a random kernel vector of G_B is added to the canonical solution

    Returns
    -------
    `GFVector`
        z of length |B|; the canonical solution (free variables zero) unless `rng` is given

    Raises
    ------
    `NotAssisted`
        If rank(G_B) < k
    `DimensionMismatch`
        If len(a) != |A|
    """
    A, B = split_players(code, A)
    _require_assisted(code, B)
    rhs = matvec(select_columns(code.G, A), a)
    z = solve(select_columns(code.G, B), rhs)
    if rng is None:
        return z

    field = code.field
    values = list(z.values)
    for kernel in null_space(select_columns(code.G, B)):
        coeff = int(rng.integers(field.q))
        values = [
            add_values(field, v, mul_values(field, coeff, w))
            for v, w in zip(values, kernel.values)
        ]
    return GFVector(field=field, values=tuple(values))


class DecodeIsometry:
    """
    The decoding isometry V_B: |x·G_B> -> |x>.

    Built once per (code, B) through `decode_isometry` and shared by every
    outcome a; only the correction Z^z depends on the measurement.
    """

    def __init__(
        self, code: LinearCode, B: tuple[int, ...], budgets: Budgets = DEFAULT_BUDGETS
    ):
        self.code = code
        self.B = B
        field = code.field
        # sources[i] is the index of x_i·G_B in the |B|-qudit register
        self.sources = np.array(
            [
                index_of(field, [word.values[j] for j in B])
                for _, word in codewords(code, budgets)
            ],
            dtype=np.int64,
        )

    def __repr__(self):
        return f"DecodeIsometry(B={[i + 1 for i in self.B]}, code={self.code})"

    def apply(self, stateB: StateVector) -> Secret:
        """
        Move the amplitude at x·G_B to x.

        Raises
        ------
        `SupportLeak`
            If more than the norm tolerance of probability lies outside span{|x·G_B>}
        """
        amps = stateB.amps[self.sources]
        kept = float(np.sum(np.abs(amps) ** 2))
        if 1.0 - kept > NORM_TOLERANCE:
            raise SupportLeak(
                f"{1.0 - kept:.3e} of the B state lies outside the restricted code space."
            )
        return Secret(field=self.code.field, k=self.code.k, amps=amps / np.sqrt(kept))


@lru_cache(maxsize=256)
def decode_isometry(
    code: LinearCode, B: tuple[int, ...], budgets: Budgets = DEFAULT_BUDGETS
) -> DecodeIsometry:
    """
    Cached V_B for (code, B); `budgets` bounds the codeword enumeration that builds it.

    Raises
    ------
    `NotAssisted`
        If rank(G_B) < k
    """
    _require_assisted(code, B)
    logger.debug(f"Building V_B for B={[i + 1 for i in B]}")
    return DecodeIsometry(code, B, budgets)


def apply_decode_isometry(
    stateB: StateVector,
    code: LinearCode,
    B: Iterable[int],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Secret:
    return decode_isometry(code, tuple(sorted(set(B))), budgets).apply(stateB)


def apply_correction(stateB: StateVector, z: GFVector) -> StateVector:
    """Apply Z^{z_i} to the i-th site of B, sites in ascending original order."""
    for site, value in enumerate(z.values):
        stateB = apply_z(stateB, site, FieldElement(value=value, params=z.field))
    return stateB


def decode_with_phases(
    stateB: StateVector,
    code: LinearCode,
    A: Iterable[int],
    a: GFVector,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Secret:
    """
    The unfactored decoder |x·G_B> -> omega^tr(x·G_A·a^T) |x>.

    Applied to the uncorrected B state it must agree with V_B after Z^z.
    """
    A, B = split_players(code, A)
    decoder = decode_isometry(code, B, budgets)
    G_A = select_columns(code.G, A)
    omega = omega_powers(code.field.p)
    phases = np.array(
        [
            omega[_pairing(code.field, encode_word(x, G_A).values, a.values)]
            for x, _ in codewords(code, budgets)
        ]
    )
    amps = stateB.amps.copy()
    amps[decoder.sources] *= phases
    return decoder.apply(StateVector(field=stateB.field, sites=stateB.sites, amps=amps))


def _check_phase_free(
    corrected: StateVector, decoder: DecodeIsometry, secret: Secret
) -> None:
    amps = corrected.amps[decoder.sources]
    # the zero codeword carries no measurement phase and fixes the global phase
    phase = 1.0 + 0j
    if abs(secret.amps[0]) > NORM_TOLERANCE:
        phase = amps[0] / secret.amps[0]
        phase /= abs(phase)
    deviation = float(np.max(np.abs(amps - phase * secret.amps)))
    if deviation > NORM_TOLERANCE:
        raise PhaseNotEliminated(
            f"Corrected amplitudes differ from the secret by up to {deviation:.3e}."
        )


def run_protocol(
    code: LinearCode,
    A: Iterable[int],
    secret: Secret,
    seed: int = DEFAULT_SEED,
    rng: Optional[np.random.Generator] = None,
    randomize_correction: bool = False,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> ProtocolTranscript:
    """
    Encode, measure A in the Fourier basis, correct with Z^z and decode on B.

    Parameters
    ----------
    code: `LinearCode`
        The dealer's code
    A: `Iterable[int]`
        0-based measuring players, proper and nonempty
    secret: `Secret`
        The dealer's secret
    seed: `int`, optional
        Seed recorded in the transcript and used when `rng` is not given
    rng: `numpy.random.Generator`, optional
        Random source for the measurement (and the correction if randomized)
    randomize_correction: `bool`, optional
        Use a random solution of G_B·z^T = G_A·a^T instead of the canonical one
    budgets: `Budgets`, optional
        Memory ceiling for the encoded state

    Returns
    -------
    `ProtocolTranscript`
        Every intermediate result of the run

    Raises
    ------
    `NotAssisted`
        If A is not LOCC-assisting
    `PhaseNotEliminated`
        If the corrected state still carries outcome-dependent phases
    """
    A, B = split_players(code, A)
    _require_assisted(code, B)
    if rng is None:
        rng = np.random.default_rng(seed)

    state = encode_secret(secret, code, budgets)
    record, stateB = measure_fourier(state, A, rng)
    z = compute_correction(
        code, A, record.outcomes_a, rng if randomize_correction else None
    )
    if not record.is_uniform():
        logger.error(
            f"Outcome probability {record.probability:.12f} differs from "
            f"q^-|A| = {record.expected_probability():.12f}"
        )
    corrected = apply_correction(stateB, z)
    decoder = decode_isometry(code, B, budgets)
    _check_phase_free(corrected, decoder, secret)
    recovered = decoder.apply(corrected)

    transcript = ProtocolTranscript(
        code=code,
        subset_A=A,
        subset_B=B,
        secret=secret,
        outcomes_a=record.outcomes_a,
        probability=record.probability,
        outcome_uniform=record.is_uniform(),
        correction_z=z,
        recovered=recovered,
        fidelity=fidelity(secret, recovered),
        seed=seed,
        decoder=decoder,
    )
    logger.debug(f"{transcript}")
    return transcript


def correction_holds(transcript: ProtocolTranscript) -> bool:
    """Check G_B·z^T = G_A·a^T exactly."""
    G = transcript.code.G
    left = matvec(select_columns(G, transcript.subset_B), transcript.correction_z)
    right = matvec(select_columns(G, transcript.subset_A), transcript.outcomes_a)
    return left == right


def collision_witness(
    code: LinearCode,
    A: tuple[int, ...],
    B: tuple[int, ...],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> CollisionWitness:
    """
    Two messages B cannot tell apart, and the overlap of their post-measurement B states.

    x1 is zero and x2 the first left kernel vector of G_B, so x1·G_B = x2·G_B = 0.
    Both basis secrets are projected on the all-zero Fourier outcome. Any other
    outcome a only multiplies the B state of |x> by the phase omega^-tr(x·G_A·a^T),
    so the overlap is the same for every outcome.
    """
    field = code.field
    G_B = select_columns(code.G, B)
    x1 = GFVector.zeros(field, code.k)
    x2 = left_null_space(G_B)[0]
    zeros = (0,) * len(A)
    reduced = []
    for x in (x1, x2):
        secret = basis_secret(field, code.k, index_of(field, x.values))
        _, stateB = project_fourier_outcome(encode_secret(secret, code, budgets), A, zeros)
        reduced.append(stateB)
    return CollisionWitness(
        x1=x1,
        x2=x2,
        word_B=encode_word(x2, G_B),
        overlap=fidelity(*reduced),
    )


def verify_theorem1(
    code: LinearCode,
    A: Iterable[int],
    trials: int = DEFAULT_VERIFY_TRIALS,
    seed: int = DEFAULT_SEED,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Theorem1Verdict:
    """
    Check the rank criterion on one subset A in the direction that applies.

    When rank(G_B) = k, `trials` runs with random secrets must all reach fidelity 1
    and satisfy the correction equation; odd trials use a random correction.
    When rank(G_B) < k, a collision witness must exist whose post-measurement
    B states coincide up to phase.

    Raises
    ------
    `InvalidSubset`
        If A is empty or the full player set
    `BudgetExceeded`
        If a state or enumeration would exceed `budgets`
    `ConfigError`
        If `trials` is less than 1
    """
    _check_trials(trials)
    A, B = split_players(code, A)
    report = subset_report(code, B)

    if report.is_assisted:
        worst = 1.0
        ok = True
        for i in range(trials):
            trial_seed = (seed + i) % SEED_MODULUS
            rng = np.random.default_rng(trial_seed)
            secret = random_secret(code.field, code.k, rng)
            transcript = run_protocol(
                code, A, secret, trial_seed, rng, randomize_correction=bool(i % 2), budgets=budgets
            )
            worst = min(worst, transcript.fidelity)
            ok = ok and transcript.outcome_uniform and correction_holds(transcript)
        verdict = Verdict.PASS if ok and worst >= 1.0 - NORM_TOLERANCE else Verdict.FAIL
        result = Theorem1Verdict(
            subset_A=A,
            subset_B=B,
            rank_GB=report.rank_GB,
            direction=Direction.FORWARD,
            verdict=verdict,
            trials=trials,
            min_fidelity=worst,
        )
    else:
        witness = collision_witness(code, A, B, budgets)
        valid = (
            witness.x1 != witness.x2
            and encode_word(witness.x1, select_columns(code.G, B)) == witness.word_B
            and witness.overlap >= 1.0 - NORM_TOLERANCE
        )
        result = Theorem1Verdict(
            subset_A=A,
            subset_B=B,
            rank_GB=report.rank_GB,
            direction=Direction.CONVERSE,
            verdict=Verdict.PASS if valid else Verdict.FAIL,
            witness=witness,
        )

    if result.verdict == Verdict.PASS:
        logger.success(
            f"A={[i + 1 for i in A]}: {result.direction.value} direction verified"
        )
    else:
        logger.error(f"A={[i + 1 for i in A]}: {result.direction.value} direction failed")
    return result


def verify_all(
    code: LinearCode,
    trials: int = DEFAULT_VERIFY_TRIALS,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> list[Theorem1Verdict]:
    """
    `verify_theorem1` for every proper nonempty A, ordered by ascending |B| then B.
    """
    _check_trials(trials)
    check_budget(code.n, budgets.max_subset_sites, "Player count n")
    subsets_A = [complement(code.n, B) for B in proper_subsets(code.n)]

    def verify(A: tuple[int, ...]) -> Theorem1Verdict:
        return verify_theorem1(code, A, trials, seed, budgets)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(verify, subsets_A))
    return [verify(A) for A in subsets_A]


def run_batch(
    code: LinearCode,
    A: Iterable[int],
    secret_source: str = "random",
    trials: int = DEFAULT_SIMULATE_TRIALS,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> list[ProtocolTranscript]:
    """
    Run the protocol `trials` times, trial i seeded with (seed + i) mod 2^64.

    Parameters
    ----------
    secret_source: `str`, optional
        `random` draws a fresh secret per trial from the trial's seed,
        `basis:<idx>` uses |idx>, `file:<path>` loads the amplitudes once

    Returns
    -------
    `list[ProtocolTranscript]`
        Transcripts in trial order, independent of `jobs`
    """
    _check_trials(trials)
    A, B = split_players(code, A)
    _require_assisted(code, B)
    kind, payload = parse_secret_source(secret_source)
    fixed = None
    if kind == SecretKind.BASIS:
        fixed = basis_secret(code.field, code.k, int(payload))
    elif kind == SecretKind.FILE:
        fixed = load_secret_file(payload, code)

    def trial(i: int) -> ProtocolTranscript:
        trial_seed = (seed + i) % SEED_MODULUS
        rng = np.random.default_rng(trial_seed)
        secret = fixed if fixed is not None else random_secret(code.field, code.k, rng)
        return run_protocol(code, A, secret, trial_seed, rng, budgets=budgets)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            transcripts = list(pool.map(trial, range(trials)))
    else:
        transcripts = [trial(i) for i in range(trials)]
    logger.info(
        f"{trials} run(s) on A={[i + 1 for i in A]}, "
        f"min fidelity {min(t.fidelity for t in transcripts):.12f}"
    )
    return transcripts
