import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..constant import NORM_TOLERANCE
from .field import FieldParams
from .linalg import GFVector


def _check_amplitudes(amps: np.ndarray, expected: int, what: str) -> None:
    from ..exceptions import DimensionMismatch, NormViolation

    if amps.ndim != 1 or amps.shape[0] != expected:
        raise DimensionMismatch(
            f"{what} needs {expected} amplitudes, got shape {amps.shape}."
        )
    if not np.all(np.isfinite(amps)):
        raise NormViolation(f"{what} has non-finite amplitudes.")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise NormViolation(f"{what} has norm {norm!r}, expected 1.")


class StateVector(BaseModel):
    """
    Pure state of n qudits of dimension q.

    Amplitudes are indexed by tuples in F_q^n through base-q positional encoding,
    site 1 being the most significant digit.

    Parameters
    ----------
    field: `FieldParams`
        Qudit alphabet F_q
    sites: `int`
        Number of qudits n
    amps: `numpy.ndarray`
        Complex amplitudes of length q^n, normalized
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: FieldParams
    sites: int = Field(ge=1)
    amps: np.ndarray

    @model_validator(mode="after")
    def validate_amplitudes(self) -> "StateVector":
        _check_amplitudes(self.amps, self.field.q**self.sites, "State vector")
        return self

    @property
    def dim(self) -> int:
        return self.field.q**self.sites

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site."""
        return self.amps.reshape((self.field.q,) * self.sites)

    def __str__(self):
        return f"StateVector(sites={self.sites}, field={self.field})"

    __repr__ = __str__


class Secret(BaseModel):
    """
    A k-qudit quantum secret sum_x c(x)|x>.

    Parameters
    ----------
    field: `FieldParams`
        Qudit alphabet F_q
    k: `int`
        Number of secret qudits
    amps: `numpy.ndarray`
        Normalized coefficients c(x), length q^k, same index convention as `StateVector`
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: FieldParams
    k: int = Field(ge=1)
    amps: np.ndarray

    @model_validator(mode="after")
    def validate_amplitudes(self) -> "Secret":
        _check_amplitudes(self.amps, self.field.q**self.k, "Secret")
        return self

    @property
    def dim(self) -> int:
        return self.field.q**self.k

    def __str__(self):
        return f"Secret(k={self.k}, field={self.field})"

    __repr__ = __str__


class MeasurementRecord(BaseModel):
    """
    Result of the Fourier-basis measurement of subset A.

    Parameters
    ----------
    subset_A: `tuple[int, ...]`
        0-based measured sites, ascending
    outcomes_a: `GFVector`
        Outcome label a_i for every site of A
    probability: `float`
        Born probability of the observed outcome tuple, computed from amplitudes
    """

    model_config = ConfigDict(frozen=True)

    subset_A: tuple[int, ...]
    outcomes_a: GFVector
    probability: float = Field(gt=0, le=1 + NORM_TOLERANCE)

    def expected_probability(self) -> float:
        return float(self.outcomes_a.field.q) ** -len(self.subset_A)

    def is_uniform(self, tolerance: float = NORM_TOLERANCE) -> bool:
        """True if the probability equals q^-|A|, as every valid encoded state guarantees."""
        return abs(self.probability - self.expected_probability()) <= tolerance
