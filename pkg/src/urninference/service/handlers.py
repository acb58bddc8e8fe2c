"""Request-to-report logic shared by the HTTP routes and the CLI.

Each handler takes a validated request model, runs the core engine, and
returns a response model. The CLI calls these in process; the service
exposes them over HTTP. Keeping them here means both surfaces emit the
same reports byte for byte.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import List, Optional

from ..demos import DemoReport, run_demo as run_demo_core
from ..errors import DomainError
from ..families import BinaryFamily
from ..inference import (
    ConfidenceSetResult,
    METHOD_COUNTING,
    METHOD_ENUMERATION,
    PValueResult,
    RandTestResult,
    confidence_set,
    coverage_urn,
    mc_p_value,
    p_value,
    power,
    randomization_p_value,
)
from ..rational import as_rational
from ..sample_space import DEFAULT_ENUM_LIMIT
from ..stats import TestStatistic, parse_statistic
from ..urns import Urn, event_predicate, event_proportion, urn_from_json, urn_to_json
from .schemas import (
    CIPointReport,
    CIReport,
    CoverageReport,
    CoverageRequest,
    CoverageRowReport,
    CIRequest,
    DemoQuantityReport,
    DemoReportModel,
    DemoRequest,
    MCRequest,
    PowerReport,
    PowerRequest,
    ProportionReport,
    PropRequest,
    PValueReport,
    PValueRequest,
    RandTestReport,
    RandTestRequest,
    RationalModel,
    TailReport,
    UrnModel,
)

ENUM_LIMIT_ENV = "URNINFERENCE_ENUM_LIMIT"

INFINITY = "+inf"


def resolve_enum_limit(explicit: Optional[int]) -> int:
    """Explicit request limit, else the environment default, else built-in."""
    if explicit is not None:
        if explicit < 1:
            raise DomainError(f"enumeration limit must be positive, got {explicit}")
        return explicit
    raw = os.environ.get(ENUM_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{ENUM_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{ENUM_LIMIT_ENV} must be positive, got {value}")
    return value


def _urn(model: UrnModel) -> Urn:
    return urn_from_json(model.to_payload())


def _statistic(spec) -> TestStatistic:
    table = None
    if spec.table is not None:
        table = [row.model_dump() for row in spec.table]
    return parse_statistic(spec.descriptor, table=table)


def _pvalue_report(res: PValueResult, places: int) -> PValueReport:
    return PValueReport(
        p=RationalModel.of(res.p, places),
        t_obs=str(res.t_obs),
        method=res.method,
        space_size=str(res.space_size),
        n=res.n,
        tail_count=None if res.tail_count is None else str(res.tail_count),
        draws=res.draws,
        hits=res.hits,
        seed=res.seed,
        generator=res.generator,
    )


def _randtest_report(res: RandTestResult, places: int) -> RandTestReport:
    tails = [
        TailReport(
            group=t.group,
            threshold=t.threshold,
            p=RationalModel.of(t.result.p, places),
            tail_count=str(t.result.tail_count),
        )
        for t in res.tails
    ]
    return RandTestReport(
        sided=res.sided,
        n_a=res.n_a,
        n_b=res.n_b,
        fav_a=res.fav_a,
        fav_b=res.fav_b,
        p=RationalModel.of(res.p, places),
        space_size=str(res.space_size),
        tails=tails,
    )


def run_prop(req: PropRequest) -> ProportionReport:
    u = _urn(req.urn)
    predicate = event_predicate(u, req.event)
    p = event_proportion(u, predicate)
    favorable = sum(c for v, c in u.items() if predicate(v))
    return ProportionReport(
        urn=UrnModel.model_validate(urn_to_json(u)),
        event=req.event,
        favorable=str(favorable),
        total=str(u.total),
        p=RationalModel.of(p, req.places),
    )


def run_pvalue(req: PValueRequest) -> PValueReport:
    u = _urn(req.urn)
    stat = _statistic(req.stat)
    if req.method == "mc":
        if req.draws is None or req.seed is None:
            raise DomainError("method mc requires draws and seed")
        res = mc_p_value(u, req.n, stat, req.t_obs, req.draws, req.seed)
    elif req.method == "enum":
        res = p_value(
            u, req.n, stat, req.t_obs, METHOD_ENUMERATION, resolve_enum_limit(req.limit)
        )
    else:
        res = p_value(u, req.n, stat, req.t_obs, METHOD_COUNTING)
    return _pvalue_report(res, req.places)


def run_randtest(req: RandTestRequest) -> RandTestReport:
    res = randomization_p_value(req.n_a, req.n_b, req.fav_a, req.fav_b, req.sided)
    return _randtest_report(res, req.places)


def _family_grid(family: BinaryFamily, req) -> List[Fraction]:
    if req.grid is not None:
        return [as_rational(t) for t in req.grid]
    return list(family.grid(req.grid_step))


def _ci_report(res: ConfidenceSetResult, family: BinaryFamily, places: int) -> CIReport:
    points = [
        CIPointReport(
            theta=str(pt.theta),
            t_obs=str(pt.t_obs),
            p=RationalModel.of(pt.p, places),
            member=pt.member,
        )
        for pt in res.points
    ]
    return CIReport(
        alpha=str(res.alpha),
        n=res.n,
        family_size=family.size,
        points=points,
        members=[str(t) for t in res.members],
    )


def run_ci(req: CIRequest) -> CIReport:
    family = BinaryFamily(req.family_size)
    grid = _family_grid(family, req)
    res = confidence_set(family, grid, req.n, tuple(req.x_obs), req.alpha)
    return _ci_report(res, family, req.places)


def run_coverage(req: CoverageRequest) -> CoverageReport:
    family = BinaryFamily(req.family_size)
    grid = _family_grid(family, req)
    res = coverage_urn(family, grid, req.theta_star, req.n, req.alpha)
    ledger = None
    if req.ledger:
        ledger = [
            CoverageRowReport(
                composition=list(row.composition),
                weight=str(row.weight),
                p_at_truth=RationalModel.of(row.p_at_truth, req.places),
                member=row.member,
            )
            for row in res.ledger
        ]
    return CoverageReport(
        theta_star=str(res.theta_star),
        alpha=str(res.alpha),
        n=res.n,
        family_size=family.size,
        coverage=RationalModel.of(res.coverage, req.places),
        space_size=str(res.space_size),
        ledger=ledger,
    )


def run_power(req: PowerRequest) -> PowerReport:
    null_urn = _urn(req.null_urn)
    alt_urn = _urn(req.alt_urn)
    stat = _statistic(req.stat)
    res = power(null_urn, alt_urn, req.n, stat, req.alpha)
    return PowerReport(
        t_star=INFINITY if res.t_star is None else str(res.t_star),
        achieved_alpha=RationalModel.of(res.achieved_alpha, req.places),
        beta=RationalModel.of(res.beta, req.places),
        requested_alpha=str(res.requested_alpha),
        null_space_size=str(res.null_space_size),
        alt_space_size=str(res.alt_space_size),
    )


def run_mc(req: MCRequest) -> PValueReport:
    u = _urn(req.urn)
    stat = _statistic(req.stat)
    res = mc_p_value(u, req.n, stat, req.t_obs, req.draws, req.seed)
    return _pvalue_report(res, req.places)


_DEMO_PARAMS = {
    "ess": (),
    "poker": (),
    "lottery": (),
    "envelopes": ("opened", "opened_wins"),
    "trial": ("draws", "seed"),
}


def run_demo(req: DemoRequest) -> DemoReportModel:
    if req.name not in _DEMO_PARAMS:
        raise DomainError(
            f"unknown demo {req.name!r}; expected one of {', '.join(sorted(_DEMO_PARAMS))}"
        )
    allowed = _DEMO_PARAMS[req.name]
    kwargs = {}
    for param in ("opened", "opened_wins", "draws", "seed"):
        value = getattr(req, param)
        if value is None:
            continue
        if param not in allowed:
            raise DomainError(f"demo {req.name!r} does not accept {param}")
        kwargs[param] = value
    report: DemoReport = run_demo_core(req.name, **kwargs)
    quantities = [
        DemoQuantityReport(
            label=q.label, value=RationalModel.of(q.value, req.places), detail=q.detail
        )
        for q in report.quantities
    ]
    randtest = None
    if report.randtest is not None:
        randtest = _randtest_report(report.randtest, req.places)
    return DemoReportModel(
        name=report.name,
        description=report.description,
        quantities=quantities,
        randtest=randtest,
    )
