import json
from pathlib import Path
from typing import Any, Sequence

import msgpack
import numpy as np
from loguru import logger
from pydantic import ValidationError

from .constant import FLOAT_DECIMALS, SECRET_LOAD_TOLERANCE, SecretKind
from .exceptions import ParseError
from .gf import field_new
from .types import GFMatrix, LinearCode, Secret


def round_float(x: float) -> float:
    """Round to the fixed serialization precision, folding -0.0 into 0.0."""
    return round(float(x), FLOAT_DECIMALS) + 0.0


def format_fixed(x: float) -> str:
    return f"{round_float(x):.{FLOAT_DECIMALS}f}"


def amplitudes_to_pairs(amps: np.ndarray) -> list[list[float]]:
    return [[round_float(a.real), round_float(a.imag)] for a in amps]


def pairs_to_amplitudes(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    """
    Parse `[re, im]` pairs into a complex array.

    Raises
    ------
    `ParseError`
        If an entry is not a pair of finite numbers
    """
    try:
        amps = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=complex)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Amplitudes must be a list of [re, im] pairs: {e}")
    if not np.all(np.isfinite(amps)):
        raise ParseError("Amplitudes must be finite numbers.")
    return amps


def _exact_int(value: Any, what: str) -> int:
    # bool is an int subclass; floats like 2.9 must not be truncated
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}.")
    return value


def parse_subset(text: str) -> tuple[int, ...]:
    """
    Parse a 1-based comma-separated player list such as `1,2` into sorted 0-based indices.

    Raises
    ------
    `ParseError`
        If an entry is not a positive integer or the list is empty
    """
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise ParseError("Player list cannot be empty.")
    try:
        players = sorted({int(part) for part in parts})
    except ValueError:
        raise ParseError(f"Player list must contain integers, got {text!r}.")
    if players[0] < 1:
        raise ParseError(f"Players are numbered from 1, got {text!r}.")
    return tuple(p - 1 for p in players)


def parse_code_spec(data: Any) -> LinearCode:
    """
    Build a code from its specification object.

    Parameters
    ----------
    data: `dict`
        `{"field": {"p": .., "m": .., "poly": [..]}, "generator": [[..], ..]}` with
        elements as integers in [0, q); `m` defaults to 1 and `poly` to the built-in table

    Returns
    -------
    `LinearCode`
        The validated code

    Raises
    ------
    `ParseError`
        If the layout is wrong or the generator entries are invalid
    `FieldError`
        If the field parameters are invalid
    """
    if not isinstance(data, dict) or "field" not in data or "generator" not in data:
        raise ParseError('Code spec must be an object with "field" and "generator".')
    field_spec = data["field"]
    if not isinstance(field_spec, dict) or "p" not in field_spec:
        raise ParseError('"field" must be an object with at least "p".')
    p = _exact_int(field_spec["p"], '"field.p"')
    m = _exact_int(field_spec.get("m", 1), '"field.m"')
    poly = field_spec.get("poly")
    if poly is not None:
        if not isinstance(poly, list):
            raise ParseError('"field.poly" must be a list of coefficients.')
        poly = [_exact_int(c, '"field.poly" coefficient') for c in poly]
    try:
        field = field_new(p, m, poly)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Invalid field specification: {e}")

    rows = data["generator"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError('"generator" must be a non-empty list of rows.')
    rows = [[_exact_int(v, "Generator entry") for v in row] for row in rows]
    try:
        G = GFMatrix.from_rows(field, rows)
    except (ValidationError, ValueError, TypeError) as e:
        raise ParseError(f"Invalid generator matrix: {e}")
    return LinearCode(field=field, G=G)


def load_code_spec(source: str | Path) -> LinearCode:
    """
    Load a code specification file.

    Raises
    ------
    `ParseError`
        With line and column if the JSON is malformed, or if the file cannot be read
    """
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read code spec {path}: {e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"Malformed JSON in {path} at line {e.lineno}, column {e.colno}: {e.msg}"
        )
    logger.debug(f"Loaded code spec from {path}")
    return parse_code_spec(data)


def parse_secret_source(text: str) -> tuple[SecretKind, str]:
    """Split `random`, `basis:<idx>` or `file:<path>` into its kind and payload."""
    kind, _, payload = text.partition(":")
    try:
        kind = SecretKind(kind)
    except ValueError:
        raise ParseError(
            f"Secret source must be random, basis:<idx> or file:<path>, got {text!r}."
        )
    if kind != SecretKind.RANDOM and not payload:
        raise ParseError(f"Secret source {kind.value} needs a value after ':'.")
    if kind == SecretKind.BASIS and not payload.isdigit():
        raise ParseError(f"Basis index must be a non-negative integer, got {payload!r}.")
    return kind, payload


def load_secret_file(source: str | Path, code: LinearCode) -> Secret:
    """
    Load a secret stored as a JSON list of q^k `[re, im]` pairs.

    The amplitudes are normalized on load, with a warning if the norm deviates
    from one by more than the load tolerance.
    """
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"Cannot read secret file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(
            f"Malformed JSON in {path} at line {e.lineno}, column {e.colno}: {e.msg}"
        )
    if not isinstance(data, list):
        raise ParseError(f"Secret file {path} must hold a list of [re, im] pairs.")
    amps = pairs_to_amplitudes(data)
    dim = code.q**code.k
    if amps.shape[0] != dim:
        raise ParseError(f"Secret needs q^k = {dim} amplitudes, got {amps.shape[0]}.")
    norm = float(np.linalg.norm(amps))
    if norm == 0:
        raise ParseError("Secret amplitudes are all zero.")
    if abs(norm - 1.0) > SECRET_LOAD_TOLERANCE:
        logger.warning(f"Secret in {path} has norm {norm:.9f}; normalizing.")
    return Secret(field=code.field, k=code.k, amps=amps / norm)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2)


def dump_msgpack(obj: Any) -> bytes:
    return msgpack.packb(obj, use_bin_type=True)


def load_msgpack(data: bytes) -> Any:
    return msgpack.unpackb(data, raw=False)


__all__ = [
    "round_float",
    "format_fixed",
    "amplitudes_to_pairs",
    "pairs_to_amplitudes",
    "parse_subset",
    "parse_code_spec",
    "load_code_spec",
    "parse_secret_source",
    "load_secret_file",
    "dump_json",
    "dump_msgpack",
    "load_msgpack",
]
