"""HTTP surface: one POST route per inference operation.

Domain errors map to 400, capacity errors to 413; both carry a structured
error body. Reports are serialized by the same helper the CLI uses, so a
given request yields identical bytes over HTTP and in process.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request, Response

from .. import __version__
from ..errors import CapacityError, DomainError
from . import handlers
from .schemas import (
    CIRequest,
    CoverageRequest,
    DemoRequest,
    ErrorBody,
    ErrorReport,
    HealthReport,
    MCRequest,
    PowerRequest,
    PropRequest,
    PValueRequest,
    RandTestRequest,
    dump_report,
)

JSON = "application/json"


def _report(model) -> Response:
    return Response(content=dump_report(model), media_type=JSON)


def _error(kind: str, exc: Exception, status: int) -> Response:
    body = ErrorReport(error=ErrorBody(type=kind, message=str(exc)))
    return Response(content=dump_report(body), media_type=JSON, status_code=status)


def create_app() -> FastAPI:
    app = FastAPI(title="urninference", version=__version__)

    @app.exception_handler(DomainError)
    async def domain_error(request: Request, exc: DomainError) -> Response:
        return _error("domain", exc, 400)

    @app.exception_handler(CapacityError)
    async def capacity_error(request: Request, exc: CapacityError) -> Response:
        return _error("capacity", exc, 413)

    @app.get("/health")
    def health() -> Response:
        return _report(HealthReport(status="ok", version=__version__))

    @app.post("/prop")
    def prop(req: PropRequest) -> Response:
        return _report(handlers.run_prop(req))

    @app.post("/pvalue")
    def pvalue(req: PValueRequest) -> Response:
        return _report(handlers.run_pvalue(req))

    @app.post("/randtest")
    def randtest(req: RandTestRequest) -> Response:
        return _report(handlers.run_randtest(req))

    @app.post("/ci")
    def ci(req: CIRequest) -> Response:
        return _report(handlers.run_ci(req))

    @app.post("/coverage")
    def coverage(req: CoverageRequest) -> Response:
        return _report(handlers.run_coverage(req))

    @app.post("/power")
    def power(req: PowerRequest) -> Response:
        return _report(handlers.run_power(req))

    @app.post("/mc")
    def mc(req: MCRequest) -> Response:
        return _report(handlers.run_mc(req))

    @app.get("/demo/{name}")
    def demo(
        name: str,
        opened: Optional[int] = None,
        opened_wins: Optional[bool] = None,
        draws: Optional[int] = None,
        seed: Optional[int] = None,
        places: int = 4,
    ) -> Response:
        req = DemoRequest(
            name=name,
            opened=opened,
            opened_wins=opened_wins,
            draws=draws,
            seed=seed,
            places=places,
        )
        return _report(handlers.run_demo(req))

    return app
