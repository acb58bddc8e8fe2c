"""Request and response shapes for the service and CLI.

Numbers that can exceed 53-bit float precision travel as decimal strings:
rationals as {"num", "den"} string pairs with a rounded decimal rendering
attached, big integers (space sizes, tail counts) as bare decimal strings.
Requests accept exact rationals anywhere a threshold, level, or value is
expected ("25", "1/3", "0.05"); floats are rejected by the engine.

Field declaration order fixes JSON key order, which the byte-determinism
guarantee relies on.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict

from ..rational import render_decimal

DEFAULT_PLACES = 4

MethodName = Literal["exact", "enum", "mc"]
SidedName = Literal["one-A", "one-B", "two"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------- requests


class UrnEntryModel(StrictModel):
    value: str
    count: int
    label: Optional[str] = None


class UrnModel(StrictModel):
    entries: List[UrnEntryModel]

    def to_payload(self) -> dict:
        return self.model_dump(exclude_none=True)


class TableRowModel(StrictModel):
    composition: List[int]
    value: Union[int, str]


class StatisticSpec(StrictModel):
    """A statistic descriptor plus the table payload when kind is custom."""

    descriptor: str = "sum"
    table: Optional[List[TableRowModel]] = None


class PropRequest(StrictModel):
    urn: UrnModel
    event: str
    places: int = DEFAULT_PLACES


class PValueRequest(StrictModel):
    urn: UrnModel
    n: int
    stat: StatisticSpec = StatisticSpec()
    t_obs: Union[int, str]
    method: MethodName = "exact"
    limit: Optional[int] = None
    draws: Optional[int] = None
    seed: Optional[int] = None
    places: int = DEFAULT_PLACES


class RandTestRequest(StrictModel):
    n_a: int
    n_b: int
    fav_a: int
    fav_b: int
    sided: SidedName = "two"
    places: int = DEFAULT_PLACES


class CIRequest(StrictModel):
    family_size: int
    grid: Optional[List[Union[int, str]]] = None
    grid_step: Union[int, str] = "0.01"
    n: int
    x_obs: List[int]
    alpha: Union[int, str]
    places: int = DEFAULT_PLACES


class CoverageRequest(StrictModel):
    family_size: int
    grid: Optional[List[Union[int, str]]] = None
    grid_step: Union[int, str] = "0.01"
    theta_star: Union[int, str]
    n: int
    alpha: Union[int, str]
    ledger: bool = False
    places: int = DEFAULT_PLACES


class PowerRequest(StrictModel):
    null_urn: UrnModel
    alt_urn: UrnModel
    n: int
    stat: StatisticSpec = StatisticSpec()
    alpha: Union[int, str]
    places: int = DEFAULT_PLACES


class MCRequest(StrictModel):
    urn: UrnModel
    n: int
    stat: StatisticSpec = StatisticSpec()
    t_obs: Union[int, str]
    draws: int
    seed: int
    places: int = DEFAULT_PLACES


class DemoRequest(StrictModel):
    name: str
    opened: Optional[int] = None
    opened_wins: Optional[bool] = None
    draws: Optional[int] = None
    seed: Optional[int] = None
    places: int = DEFAULT_PLACES


# --------------------------------------------------------------- responses


class RationalModel(StrictModel):
    """Reduced exact rational with a round-half-even decimal rendering."""

    num: str
    den: str
    decimal: str

    @classmethod
    def of(cls, value: Fraction, places: int = DEFAULT_PLACES) -> "RationalModel":
        return cls(
            num=str(value.numerator),
            den=str(value.denominator),
            decimal=render_decimal(value, places),
        )

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class ProportionReport(StrictModel):
    urn: UrnModel
    event: str
    favorable: str
    total: str
    p: RationalModel


class PValueReport(StrictModel):
    p: RationalModel
    t_obs: str
    method: str
    space_size: str
    n: int
    tail_count: Optional[str] = None
    draws: Optional[int] = None
    hits: Optional[int] = None
    seed: Optional[int] = None
    generator: Optional[str] = None


class TailReport(StrictModel):
    group: str
    threshold: int
    p: RationalModel
    tail_count: str


class RandTestReport(StrictModel):
    sided: str
    n_a: int
    n_b: int
    fav_a: int
    fav_b: int
    p: RationalModel
    space_size: str
    tails: List[TailReport]


class CIPointReport(StrictModel):
    theta: str
    t_obs: str
    p: RationalModel
    member: bool


class CIReport(StrictModel):
    alpha: str
    n: int
    family_size: int
    points: List[CIPointReport]
    members: List[str]


class CoverageRowReport(StrictModel):
    composition: List[int]
    weight: str
    p_at_truth: RationalModel
    member: bool


class CoverageReport(StrictModel):
    theta_star: str
    alpha: str
    n: int
    family_size: int
    coverage: RationalModel
    space_size: str
    ledger: Optional[List[CoverageRowReport]] = None


class PowerReport(StrictModel):
    t_star: str
    achieved_alpha: RationalModel
    beta: RationalModel
    requested_alpha: str
    null_space_size: str
    alt_space_size: str


class DemoQuantityReport(StrictModel):
    label: str
    value: RationalModel
    detail: Optional[str] = None


class DemoReportModel(StrictModel):
    name: str
    description: str
    quantities: List[DemoQuantityReport]
    randtest: Optional[RandTestReport] = None


class ErrorBody(StrictModel):
    type: Literal["domain", "capacity"]
    message: str


class ErrorReport(StrictModel):
    error: ErrorBody


class HealthReport(StrictModel):
    status: Literal["ok"]
    version: str


def dump_report(model: BaseModel) -> str:
    """Canonical report serialization: declaration-order keys, no None fields.

    Both the CLI and the HTTP layer emit exactly this text, so identical
    requests produce byte-identical reports on either surface.
    """
    return json.dumps(model.model_dump(exclude_none=True), indent=2) + "\n"
