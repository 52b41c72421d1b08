"""HTTP service exposing the command set.

One POST endpoint per command; the body carries the raw config mapping, the
output format and the thread count. Successful responses return the rendered
document verbatim (CSV, JSON or plain text), so any client that writes the
body to disk reproduces the CLI output byte for byte. Errors come back as a
JSON envelope {"error": {"kind", "message"}} with kind config, domain or
oracle.
"""

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from ._version import VERSION
from .config import resolve_config
from .errors import BeccoolError, ConfigError, DomainError, OracleError
from .runs import COMMANDS

VALIDATION_HEADER = "x-beccool-all-pass"

_STATUS_BY_KIND = {"config": 400, "domain": 422, "oracle": 500}


class RunRequest(BaseModel):
    """Envelope for one command run."""

    model_config = ConfigDict(extra="forbid")

    config: dict[str, float | int | str] = Field(default_factory=dict)
    format: str | None = None
    threads: int = Field(default=1, ge=1, le=256)


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorInfo(BaseModel):
    kind: str
    message: str


class ErrorEnvelope(BaseModel):
    error: ErrorInfo


app = FastAPI(title="beccool", version=VERSION)


@app.exception_handler(BeccoolError)
async def _beccool_error_handler(request: Request, exc: BeccoolError) -> JSONResponse:
    envelope = ErrorEnvelope(error=ErrorInfo(kind=exc.kind, message=str(exc)))
    return JSONResponse(status_code=_STATUS_BY_KIND.get(exc.kind, 500), content=envelope.model_dump())


@app.exception_handler(RequestValidationError)
async def _request_error_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
    envelope = ErrorEnvelope(error=ErrorInfo(kind="config", message=str(exc)))
    return JSONResponse(status_code=400, content=envelope.model_dump())


@app.get("/v1/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", version=VERSION)


def _make_endpoint(command: str):
    run = COMMANDS[command]

    async def endpoint(request: RunRequest) -> Response:
        resolved = resolve_config(request.config)
        out = run(resolved, request.format, request.threads)
        headers = {}
        if out.all_pass is not None:
            headers[VALIDATION_HEADER] = "1" if out.all_pass else "0"
        return Response(content=out.body, media_type=out.media_type, headers=headers)

    endpoint.__name__ = f"run_{command.replace('-', '_')}"
    return endpoint


for _command in COMMANDS:
    app.post(f"/v1/{_command}", responses={400: {"model": ErrorEnvelope}})(_make_endpoint(_command))

__all__ = [
    "app",
    "RunRequest",
    "HealthResponse",
    "ErrorEnvelope",
    "VALIDATION_HEADER",
    "ConfigError",
    "DomainError",
    "OracleError",
]
