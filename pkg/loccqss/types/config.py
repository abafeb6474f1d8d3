import os
import re
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..constant import (
    DEFAULT_MAX_AMPLITUDES,
    DEFAULT_MAX_CODEWORDS,
    DEFAULT_MAX_SUBSET_SITES,
    DEFAULT_SEED,
    ENV_PREFIX,
    Command,
    OutputFormat,
)

SECRET_SOURCE_PATTERN = re.compile(r"^(random|basis:\d+|file:.+)$")


class Budgets(BaseModel):
    """
    Ceilings for exhaustive enumerations and state vector sizes.

    Parameters
    ----------
    max_codewords: `int`
        Largest q^k for codeword enumeration
    max_subset_sites: `int`
        Largest n for which all 2^n player subsets are scanned
    max_amplitudes: `int`
        Largest q^n state vector that may be allocated
    """

    model_config = ConfigDict(frozen=True)

    max_codewords: int = Field(default=DEFAULT_MAX_CODEWORDS, ge=1)
    max_subset_sites: int = Field(default=DEFAULT_MAX_SUBSET_SITES, ge=1)
    max_amplitudes: int = Field(default=DEFAULT_MAX_AMPLITUDES, ge=1)

    @classmethod
    def from_env(cls, load_dotenv_file: bool = True) -> "Budgets":
        """
        Read budgets from `LOCCQSS_MAX_CODEWORDS`, `LOCCQSS_MAX_SUBSET_SITES` and
        `LOCCQSS_MAX_AMPLITUDES`, loading a `.env` file first if present.
        """
        if load_dotenv_file:
            from dotenv import load_dotenv

            load_dotenv()

        values = {}
        for name in cls.model_fields:
            raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if not raw:
                continue
            try:
                values[name] = int(raw)
            except ValueError:
                from ..exceptions import ConfigError

                raise ConfigError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}.")
        return cls(**values)


class RunConfig(BaseModel):
    """
    Validated command-line configuration.

    Parameters
    ----------
    code_file: `Path`
        Code specification file
    command: `Command`
        One of analyze, subsets, simulate, verify
    subset_a: `tuple[int, ...]`, optional
        0-based indices of the measuring subset A; required for simulate
    secret_source: `str`
        `random`, `basis:<idx>` or `file:<path>`
    seed: `int`
        Seed of the random source, defaults to `DEFAULT_SEED`
    trials: `int`
        Number of protocol runs, at least 1
    jobs: `int`
        Worker threads for batch paths
    output: `Path`, optional
        Output file, standard output if absent
    format: `OutputFormat`
        text, json or msgpack
    budgets: `Budgets`
        Enumeration and memory ceilings
    """

    code_file: Path
    command: Command
    subset_a: Optional[tuple[int, ...]] = None
    secret_source: str = "random"
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=2**64 - 1)
    trials: int = Field(default=1, ge=1)
    jobs: int = Field(default=1, ge=1)
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.TEXT
    budgets: Budgets = Field(default_factory=Budgets)
    verbose: bool = False

    @model_validator(mode="after")
    def validate_command(self) -> "RunConfig":
        """
        Validate the following:

        - `subset_a` is given for simulate.
        - `secret_source` matches one of the accepted forms.
        - msgpack output goes to a file.
        """
        if self.command == Command.SIMULATE and self.subset_a is None:
            raise ValueError("simulate requires --subset-a.")
        if not SECRET_SOURCE_PATTERN.match(self.secret_source):
            raise ValueError(
                f"Secret source must be random, basis:<idx> or file:<path>, got {self.secret_source!r}."
            )
        if self.format == OutputFormat.MSGPACK and self.output is None:
            raise ValueError("msgpack output requires --output.")
        return self
