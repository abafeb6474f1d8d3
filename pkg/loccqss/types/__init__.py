from .field import FieldElement, FieldParams
from .linalg import GFMatrix, GFVector
from .code import CodeAnalysis, LinearCode, SubsetReport
from .config import Budgets, RunConfig
from .state import MeasurementRecord, Secret, StateVector
from .transcript import (
    CollisionWitness,
    CommandReport,
    ProtocolTranscript,
    Theorem1Verdict,
)

__all__ = [
    "FieldParams",
    "FieldElement",
    "GFVector",
    "GFMatrix",
    "LinearCode",
    "SubsetReport",
    "CodeAnalysis",
    "Budgets",
    "RunConfig",
    "StateVector",
    "Secret",
    "MeasurementRecord",
    "ProtocolTranscript",
    "CollisionWitness",
    "Theorem1Verdict",
    "CommandReport",
]
