from typing import Optional

import uvicorn
from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, ValidationError

load_dotenv()

from loccqss import __version__
from loccqss.cli import analyze_report, simulate_report, subsets_report, verify_report
from loccqss.constant import DEFAULT_SEED, DEFAULT_SIMULATE_TRIALS, DEFAULT_VERIFY_TRIALS
from loccqss.exceptions import (
    BudgetExceeded,
    ConfigError,
    NotAssisted,
    ParseError,
    QSSError,
)
from loccqss.types import Budgets, CommandReport, LinearCode
from loccqss.utils import parse_code_spec

app = FastAPI(title="loccqss", version=__version__)

budgets = Budgets.from_env(load_dotenv_file=False)


@app.exception_handler(RequestValidationError)
async def request_validation_error(request: Request, exc: RequestValidationError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


class CodeRequest(BaseModel):
    code: dict  # code specification, same layout as the --code file
    jobs: int = Field(default=1, ge=1)


class RunRequest(CodeRequest):
    subset_a: Optional[list[int]] = None  # 1-based
    secret: str = Field(default="random", pattern=r"^(random|basis:\d+)$")
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=2**64 - 1)
    # defaults per command, as on the command line
    trials: Optional[int] = Field(default=None, ge=1, le=1000)


def _zero_based(subset: Optional[list[int]]) -> Optional[tuple[int, ...]]:
    if subset is None:
        return None
    if any(i < 1 for i in subset):
        raise HTTPException(status_code=400, detail="Players are numbered from 1.")
    return tuple(i - 1 for i in subset)


def _load(spec: dict) -> LinearCode:
    try:
        return parse_code_spec(spec)
    except (ParseError, ConfigError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except QSSError as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")


def _respond(build, *args) -> dict:
    """Run a report builder and map domain errors to HTTP status codes."""
    try:
        report: CommandReport = build(*args)
    except BudgetExceeded as e:
        raise HTTPException(status_code=413, detail=str(e))
    except NotAssisted as e:
        raise HTTPException(status_code=422, detail=str(e))
    except (ParseError, ConfigError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except QSSError as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")
    return {
        "command": report.command.value,
        "exit_code": int(report.exit_code),
        "report": report.data,
        "text": report.text,
    }


@app.get("/")
def root():
    return {"message": "loccqss API is running", "version": __version__}


@app.post("/analyze")
def analyze(request: CodeRequest):
    return _respond(analyze_report, _load(request.code), budgets)


@app.post("/subsets")
def subsets(request: CodeRequest):
    return _respond(subsets_report, _load(request.code), budgets, request.jobs)


@app.post("/simulate")
def simulate(request: RunRequest):
    if request.subset_a is None:
        raise HTTPException(status_code=400, detail="simulate requires subset_a.")
    return _respond(
        simulate_report,
        _load(request.code),
        _zero_based(request.subset_a),
        request.secret,
        request.trials or DEFAULT_SIMULATE_TRIALS,
        request.seed,
        request.jobs,
        budgets,
    )


@app.post("/verify")
def verify(request: RunRequest):
    return _respond(
        verify_report,
        _load(request.code),
        _zero_based(request.subset_a),
        request.trials or DEFAULT_VERIFY_TRIALS,
        request.seed,
        request.jobs,
        budgets,
    )


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
