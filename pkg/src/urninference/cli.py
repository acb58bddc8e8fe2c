"""Command-line client for the inference engine.

Every subcommand builds the same request model the HTTP service accepts,
so the CLI can run the engine in process (default) or forward the request
to a running service with --server; either way the printed report is byte
for byte the same. Exit codes: 0 success, 2 domain error (bad urns,
ranges, malformed input), 3 capacity error (enumeration limit exceeded).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional, Sequence

import httpx
from pydantic import BaseModel, ValidationError

from . import __version__
from .errors import CapacityError, DomainError
from .service.handlers import (
    run_ci,
    run_coverage,
    run_demo,
    run_mc,
    run_power,
    run_prop,
    run_pvalue,
    run_randtest,
)
from .service.schemas import (
    CIReport,
    CIRequest,
    CoverageReport,
    CoverageRequest,
    DemoReportModel,
    DemoRequest,
    ErrorBody,
    ErrorReport,
    MCRequest,
    PowerReport,
    PowerRequest,
    ProportionReport,
    PropRequest,
    PValueReport,
    PValueRequest,
    RandTestReport,
    RandTestRequest,
    StatisticSpec,
    TableRowModel,
    UrnModel,
    dump_report,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CAPACITY = 3


def _load_json_arg(raw: str, what: str):
    """Parse inline JSON (starts with '{' or '[') or read a file, '-' = stdin."""
    if raw.lstrip().startswith(("{", "[")):
        text, origin = raw, "inline JSON"
    elif raw == "-":
        text, origin = sys.stdin.read(), "stdin"
    else:
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read {what} from {raw!r}: {exc}") from None
        origin = raw
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(
            f"malformed JSON for {what} ({origin}): {exc.msg} at line {exc.lineno} "
            f"column {exc.colno}"
        ) from None


def _urn_model(raw: str, what: str = "urn") -> UrnModel:
    obj = _load_json_arg(raw, what)
    try:
        return UrnModel.model_validate(obj)
    except ValidationError as exc:
        raise DomainError(f"invalid {what}: {exc.errors()[0]['msg']}") from None


def _stat_spec(descriptor: str) -> StatisticSpec:
    """Resolve a descriptor; table:<file.json> loads its rows from the file."""
    if descriptor.startswith("table:"):
        rows = _load_json_arg(descriptor[len("table:"):], "statistic table")
        if not isinstance(rows, list):
            raise DomainError("statistic table file must hold a JSON array of rows")
        try:
            parsed = [TableRowModel.model_validate(r) for r in rows]
        except ValidationError as exc:
            raise DomainError(f"invalid statistic table: {exc.errors()[0]['msg']}") from None
        return StatisticSpec(descriptor="table", table=parsed)
    return StatisticSpec(descriptor=descriptor)


def _composition(raw: str) -> List[int]:
    try:
        return [int(part.strip()) for part in raw.split(",")]
    except ValueError:
        raise DomainError(
            f"composition must be comma-separated integers, got {raw!r}"
        ) from None


def _grid(raw: Optional[str]) -> Optional[List[str]]:
    if raw is None:
        return None
    values = [part.strip() for part in raw.split(",") if part.strip()]
    if not values:
        raise DomainError("grid must list at least one theta")
    return values


def read_trial_csv(path: str):
    """Count a trial table: header group,outcome; groups A/B; outcomes
    favorable/unfavorable. Returns (n_a, n_b, fav_a, fav_b)."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise DomainError(f"cannot read trial table {path!r}: {exc}") from None
    if not rows or [cell.strip() for cell in rows[0]] != ["group", "outcome"]:
        raise DomainError("trial table must start with header: group,outcome")
    n = {"A": 0, "B": 0}
    fav = {"A": 0, "B": 0}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise DomainError(f"trial table line {lineno}: expected 2 fields, got {len(row)}")
        group, outcome = row[0].strip(), row[1].strip()
        if group not in n:
            raise DomainError(f"trial table line {lineno}: group must be A or B, got {group!r}")
        if outcome not in ("favorable", "unfavorable"):
            raise DomainError(
                f"trial table line {lineno}: outcome must be favorable or unfavorable, "
                f"got {outcome!r}"
            )
        n[group] += 1
        if outcome == "favorable":
            fav[group] += 1
    if not n["A"] or not n["B"]:
        raise DomainError("trial table must contain rows for both groups")
    return n["A"], n["B"], fav["A"], fav["B"]


# ------------------------------------------------------------- text output


def _rat(r) -> str:
    return f"{r.num}/{r.den} = {r.decimal}"


def render_text(report: BaseModel) -> str:
    lines: List[str] = []
    if isinstance(report, ProportionReport):
        lines.append(f"event {report.event}: {report.favorable} of {report.total} balls")
        lines.append(f"p = {_rat(report.p)}")
    elif isinstance(report, PValueReport):
        lines.append(f"method {report.method}, n={report.n}, space size {report.space_size}")
        if report.tail_count is not None:
            lines.append(f"tail count {report.tail_count} at t_obs = {report.t_obs}")
        if report.draws is not None:
            lines.append(
                f"{report.hits} hits in {report.draws} draws, seed {report.seed} "
                f"({report.generator})"
            )
        lines.append(f"p = {_rat(report.p)}")
    elif isinstance(report, RandTestReport):
        lines.append(
            f"randomization test {report.sided}: A {report.fav_a}/{report.n_a} favorable, "
            f"B {report.fav_b}/{report.n_b} favorable"
        )
        lines.append(f"assignments: {report.space_size}")
        for tail in report.tails:
            lines.append(
                f"tail {tail.group} >= {tail.threshold}: {tail.tail_count} assignments, "
                f"p = {_rat(tail.p)}"
            )
        lines.append(f"p = {_rat(report.p)}")
    elif isinstance(report, CIReport):
        lines.append(
            f"confidence set at alpha = {report.alpha}, n={report.n}, "
            f"family size {report.family_size}"
        )
        for pt in report.points:
            mark = "in " if pt.member else "out"
            lines.append(f"  theta {pt.theta}: t_obs {pt.t_obs}, p = {_rat(pt.p)} [{mark}]")
        lines.append("members: " + (", ".join(report.members) if report.members else "(empty)"))
    elif isinstance(report, CoverageReport):
        lines.append(
            f"coverage at theta* = {report.theta_star}, alpha = {report.alpha}, "
            f"n={report.n}, family size {report.family_size}"
        )
        lines.append(f"samples: {report.space_size}")
        if report.ledger:
            for row in report.ledger:
                mark = "in " if row.member else "out"
                lines.append(
                    f"  composition {row.composition}: weight {row.weight}, "
                    f"p(theta*) = {_rat(row.p_at_truth)} [{mark}]"
                )
        lines.append(f"coverage = {_rat(report.coverage)}")
    elif isinstance(report, PowerReport):
        lines.append(
            f"requested alpha = {report.requested_alpha}, null space "
            f"{report.null_space_size}, alt space {report.alt_space_size}"
        )
        lines.append(f"t* = {report.t_star}")
        lines.append(f"achieved alpha = {_rat(report.achieved_alpha)}")
        lines.append(f"beta = {_rat(report.beta)}")
    elif isinstance(report, DemoReportModel):
        lines.append(f"demo {report.name}: {report.description}")
        for q in report.quantities:
            detail = f" ({q.detail})" if q.detail else ""
            lines.append(f"  {q.label}: {_rat(q.value)}{detail}")
    else:
        lines.append(dump_report(report).rstrip("\n"))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- dispatch


POST_ROUTES = {
    "prop": ("/prop", ProportionReport),
    "pvalue": ("/pvalue", PValueReport),
    "randtest": ("/randtest", RandTestReport),
    "ci": ("/ci", CIReport),
    "coverage": ("/coverage", CoverageReport),
    "power": ("/power", PowerReport),
    "mc": ("/mc", PValueReport),
}

HANDLERS = {
    "prop": run_prop,
    "pvalue": run_pvalue,
    "randtest": run_randtest,
    "ci": run_ci,
    "coverage": run_coverage,
    "power": run_power,
    "mc": run_mc,
    "demo": run_demo,
}


def _forward(server: str, command: str, request: BaseModel):
    """POST (or GET, for demos) the request to a running service."""
    base = server.rstrip("/")
    try:
        if command == "demo":
            params = {
                k: v
                for k, v in request.model_dump(exclude_none=True).items()
                if k != "name"
            }
            resp = httpx.get(f"{base}/demo/{request.name}", params=params, timeout=300)
        else:
            path, _ = POST_ROUTES[command]
            resp = httpx.post(
                f"{base}{path}", json=request.model_dump(exclude_none=True), timeout=300
            )
    except httpx.HTTPError as exc:
        raise DomainError(f"server request failed: {exc}") from None
    if resp.status_code == 200:
        return resp.text
    try:
        err = ErrorReport.model_validate(resp.json())
    except (json.JSONDecodeError, ValidationError):
        raise DomainError(f"server returned status {resp.status_code}: {resp.text}") from None
    if err.error.type == "capacity":
        raise CapacityError(err.error.message)
    raise DomainError(err.error.message)


def _emit(args, command: str, request: BaseModel) -> int:
    if args.server:
        text = _forward(args.server, command, request)
        if args.output == "text":
            _, report_cls = POST_ROUTES.get(command, (None, DemoReportModel))
            report = report_cls.model_validate(json.loads(text))
            sys.stdout.write(render_text(report))
        else:
            sys.stdout.write(text)
        return EXIT_OK
    report = HANDLERS[command](request)
    if args.output == "text":
        sys.stdout.write(render_text(report))
    else:
        sys.stdout.write(dump_report(report))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urninference",
        description="Exact inference over finite urn models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", choices=("json", "text"), default="json")
        p.add_argument("--places", type=int, default=4, help="decimal rendering places")
        p.add_argument("--server", help="forward to a running service at this base URL")

    p = sub.add_parser("prop", help="proportion of an urn satisfying an event")
    p.add_argument("--urn", required=True, help="urn JSON: file path, inline, or - for stdin")
    p.add_argument("--event", required=True, help="value:<v> | ge:<v> | gt:<v> | le:<v> | lt:<v> | <label>")
    common(p)

    p = sub.add_parser("pvalue", help="exact tail proportion of a statistic")
    p.add_argument("--urn", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stat", default="sum", help="sum | mean | count:<v> | absdev:<c> | table:<file.json>")
    p.add_argument("--t-obs", required=True, help="observed statistic, exact rational")
    p.add_argument("--method", choices=("exact", "enum", "mc"), default="exact")
    p.add_argument("--limit", type=int, help="full-enumeration sample cap")
    p.add_argument("--draws", type=int, help="Monte Carlo draw count (method mc)")
    p.add_argument("--seed", type=int, help="Monte Carlo seed (method mc)")
    common(p)

    p = sub.add_parser("randtest", help="sharp-null randomization test")
    p.add_argument("--nA", type=int, dest="n_a")
    p.add_argument("--nB", type=int, dest="n_b")
    p.add_argument("--favA", type=int, dest="fav_a")
    p.add_argument("--favB", type=int, dest="fav_b")
    p.add_argument("--table", help="trial CSV with header group,outcome")
    p.add_argument("--sided", choices=("one-A", "one-B", "two"), default="two")
    common(p)

    p = sub.add_parser("ci", help="test-inversion confidence set, binary family")
    p.add_argument("--size", type=int, required=True, dest="family_size", help="model urn size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x-obs", required=True, help="observed composition: zeros,ones")
    p.add_argument("--alpha", required=True)
    p.add_argument("--grid", help="comma-separated thetas; default step grid")
    p.add_argument("--grid-step", default="0.01", help="step for the default grid")
    common(p)

    p = sub.add_parser("coverage", help="exact coverage at a true theta")
    p.add_argument("--size", type=int, required=True, dest="family_size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta-star", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--grid", help="comma-separated thetas; default step grid")
    p.add_argument("--grid-step", default="0.01")
    p.add_argument("--ledger", action="store_true", help="include the per-sample ledger")
    common(p)

    p = sub.add_parser("power", help="exact size and power of a threshold test")
    p.add_argument("--null", required=True, dest="null_urn", help="null model urn JSON")
    p.add_argument("--alt", required=True, dest="alt_urn", help="alternative model urn JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stat", default="sum")
    p.add_argument("--alpha", required=True)
    common(p)

    p = sub.add_parser("mc", help="seeded Monte Carlo cross-check of a p-value")
    p.add_argument("--urn", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stat", default="sum")
    p.add_argument("--t-obs", required=True)
    p.add_argument("--draws", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    common(p)

    p = sub.add_parser("demo", help="run a canned scenario")
    p.add_argument("name", help="ess | poker | lottery | envelopes | trial")
    p.add_argument("--open", type=int, dest="opened", help="envelopes: number opened")
    wins = p.add_mutually_exclusive_group()
    wins.add_argument("--opened-wins", action="store_true", default=None)
    wins.add_argument("--opened-loses", action="store_false", dest="opened_wins", default=None)
    p.add_argument("--draws", type=int, help="trial: Monte Carlo draw count")
    p.add_argument("--seed", type=int, help="trial: Monte Carlo seed")
    common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _build_request(args) -> BaseModel:
    if args.command == "prop":
        return PropRequest(urn=_urn_model(args.urn), event=args.event, places=args.places)
    if args.command == "pvalue":
        return PValueRequest(
            urn=_urn_model(args.urn),
            n=args.n,
            stat=_stat_spec(args.stat),
            t_obs=args.t_obs,
            method=args.method,
            limit=args.limit,
            draws=args.draws,
            seed=args.seed,
            places=args.places,
        )
    if args.command == "randtest":
        counts = (args.n_a, args.n_b, args.fav_a, args.fav_b)
        if args.table is not None:
            if any(c is not None for c in counts):
                raise DomainError("give either --table or the four counts, not both")
            n_a, n_b, fav_a, fav_b = read_trial_csv(args.table)
        else:
            if any(c is None for c in counts):
                raise DomainError("randtest needs --nA --nB --favA --favB (or --table)")
            n_a, n_b, fav_a, fav_b = counts
        return RandTestRequest(
            n_a=n_a, n_b=n_b, fav_a=fav_a, fav_b=fav_b, sided=args.sided, places=args.places
        )
    if args.command == "ci":
        return CIRequest(
            family_size=args.family_size,
            grid=_grid(args.grid),
            grid_step=args.grid_step,
            n=args.n,
            x_obs=_composition(args.x_obs),
            alpha=args.alpha,
            places=args.places,
        )
    if args.command == "coverage":
        return CoverageRequest(
            family_size=args.family_size,
            grid=_grid(args.grid),
            grid_step=args.grid_step,
            theta_star=args.theta_star,
            n=args.n,
            alpha=args.alpha,
            ledger=args.ledger,
            places=args.places,
        )
    if args.command == "power":
        return PowerRequest(
            null_urn=_urn_model(args.null_urn, "null urn"),
            alt_urn=_urn_model(args.alt_urn, "alternative urn"),
            n=args.n,
            stat=_stat_spec(args.stat),
            alpha=args.alpha,
            places=args.places,
        )
    if args.command == "mc":
        return MCRequest(
            urn=_urn_model(args.urn),
            n=args.n,
            stat=_stat_spec(args.stat),
            t_obs=args.t_obs,
            draws=args.draws,
            seed=args.seed,
            places=args.places,
        )
    if args.command == "demo":
        return DemoRequest(
            name=args.name,
            opened=args.opened,
            opened_wins=args.opened_wins,
            draws=args.draws,
            seed=args.seed,
            places=args.places,
        )
    raise DomainError(f"unknown command {args.command!r}")


def _print_error(kind: str, message: str) -> None:
    body = ErrorReport(error=ErrorBody(type=kind, message=message))
    sys.stderr.write(dump_report(body))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK
    try:
        request = _build_request(args)
        return _emit(args, args.command, request)
    except ValidationError as exc:
        _print_error("domain", exc.errors()[0]["msg"])
        return EXIT_DOMAIN
    except DomainError as exc:
        _print_error("domain", str(exc))
        return EXIT_DOMAIN
    except CapacityError as exc:
        _print_error("capacity", str(exc))
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
