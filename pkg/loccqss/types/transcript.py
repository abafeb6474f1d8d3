from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..constant import Command, Direction, ExitCode, Verdict
from .code import LinearCode
from .linalg import GFVector
from .state import Secret


class ProtocolTranscript(BaseModel):
    """
    One full protocol run: encode, measure A, broadcast, correct and decode on B.

    Parameters
    ----------
    code: `LinearCode`
        The code used by the dealer
    subset_A: `tuple[int, ...]`
        0-based measuring players
    subset_B: `tuple[int, ...]`
        0-based recovering players
    secret: `Secret`
        The dealer's secret
    outcomes_a: `GFVector`
        Fourier-basis outcomes broadcast by A
    probability: `float`
        Born probability of `outcomes_a`
    outcome_uniform: `bool`
        Whether `probability` equals q^-|A|
    correction_z: `GFVector`
        Solution of G_B·z^T = G_A·a^T applied as Z^z on B
    recovered: `Secret`
        Output of the decoding isometry
    fidelity: `float`
        |<secret|recovered>|^2
    seed: `int`
        Seed of the run's random source
    decoder: `DecodeIsometry`
        The V_B instance used; shared by every run with the same (code, B). Not serialized
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    code: LinearCode
    subset_A: tuple[int, ...]
    subset_B: tuple[int, ...]
    secret: Secret
    outcomes_a: GFVector
    probability: float
    outcome_uniform: bool = True
    correction_z: GFVector
    recovered: Secret
    fidelity: float
    seed: int
    decoder: Any = Field(default=None, exclude=True)

    def __str__(self):
        return (
            f"ProtocolTranscript(A={[i + 1 for i in self.subset_A]}, a={self.outcomes_a}, "
            f"z={self.correction_z}, fidelity={self.fidelity:.12f})"
        )

    __repr__ = __str__

    def model_dump_for_output(self) -> dict:
        """
        Serialize the transcript for the JSON and msgpack formats.

        Player indices become 1-based, elements integers and amplitudes [re, im] pairs.
        """
        from ..utils import amplitudes_to_pairs, round_float

        return {
            "code": self.code.to_spec(),
            "subset_A": [i + 1 for i in self.subset_A],
            "subset_B": [i + 1 for i in self.subset_B],
            "seed": self.seed,
            "secret": amplitudes_to_pairs(self.secret.amps),
            "outcomes_a": list(self.outcomes_a.values),
            "probability": round_float(self.probability),
            "outcome_uniform": self.outcome_uniform,
            "correction_z": list(self.correction_z.values),
            "recovered": amplitudes_to_pairs(self.recovered.amps),
            "fidelity": round_float(self.fidelity),
        }


class CollisionWitness(BaseModel):
    """
    Two distinct messages that the columns of B cannot tell apart: x1·G_B = x2·G_B.
    """

    model_config = ConfigDict(frozen=True)

    x1: GFVector
    x2: GFVector
    word_B: GFVector
    # fidelity between the post-measurement B states of the basis secrets |x1> and |x2>
    overlap: float


class Theorem1Verdict(BaseModel):
    """
    Outcome of checking the rank criterion on one subset A in the applicable direction.

    Parameters
    ----------
    subset_A: `tuple[int, ...]`
        0-based measuring players
    subset_B: `tuple[int, ...]`
        0-based recovering players
    rank_GB: `int`
        Rank of the generator restricted to B
    direction: `Direction`
        FORWARD when rank_GB == k, CONVERSE otherwise
    verdict: `Verdict`
        PASS or FAIL
    trials: `int`
        Protocol runs executed (forward direction only)
    min_fidelity: `float`, optional
        Worst fidelity observed over the runs
    witness: `CollisionWitness`, optional
        Collision pair (converse direction only)
    """

    subset_A: tuple[int, ...]
    subset_B: tuple[int, ...]
    rank_GB: int
    direction: Direction
    verdict: Verdict
    trials: int = 0
    min_fidelity: Optional[float] = None
    witness: Optional[CollisionWitness] = None

    def model_dump_for_output(self) -> dict:
        from ..utils import round_float

        out = {
            "subset_A": [i + 1 for i in self.subset_A],
            "subset_B": [i + 1 for i in self.subset_B],
            "rank_GB": self.rank_GB,
            "direction": self.direction.value,
            "verdict": self.verdict.value,
            "trials": self.trials,
        }
        if self.min_fidelity is not None:
            out["min_fidelity"] = round_float(self.min_fidelity)
        if self.witness is not None:
            out["witness"] = {
                "x1": list(self.witness.x1.values),
                "x2": list(self.witness.x2.values),
                "word_B": list(self.witness.word_B.values),
                "overlap": round_float(self.witness.overlap),
            }
        return out


class CommandReport(BaseModel):
    """
    Output of one frontend command, rendered as text or as a structured object.

    Parameters
    ----------
    command: `Command`
        The command that produced the report
    data: `dict`
        Structured form, used by the json and msgpack formats and the HTTP frontend
    text: `str`
        Human-readable form
    exit_code: `ExitCode`
        OK, or FAILURE if any run or verification failed
    """

    command: Command
    data: dict
    text: str
    exit_code: ExitCode = ExitCode.OK
