"""Test statistics: real-valued, order-symmetric functions of a sample.

A statistic sees only the sample's composition and the aligned value vector,
never an enumeration order, so permutation invariance holds by construction.
Evaluation is exact rational arithmetic throughout; ties at the observed
value must be detected exactly because tail counting uses ">=".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple

from .errors import DomainError
from .rational import RationalLike, as_rational

KIND_SUM = "sum"
KIND_MEAN = "mean"
KIND_COUNT = "count"
KIND_ABSDEV = "absdev"
KIND_TABLE = "table"

_KINDS = (KIND_SUM, KIND_MEAN, KIND_COUNT, KIND_ABSDEV, KIND_TABLE)


@dataclass(frozen=True, eq=False)
class TestStatistic:
    """A named statistic of one of the built-in kinds.

    kind "sum": total of sample values.
    kind "mean": average of sample values.
    kind "count": number of sample members equal to `target`.
    kind "absdev": |sum - center|, the two-sided discrepancy statistic.
    kind "table": caller-supplied composition -> value mapping.
    """

    name: str
    kind: str
    target: Optional[Fraction] = None
    center: Optional[Fraction] = None
    table: Optional[Mapping[Tuple[int, ...], Fraction]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown statistic kind {self.kind!r}")
        if self.kind == KIND_COUNT and self.target is None:
            raise DomainError("count statistic requires a target value")
        if self.kind == KIND_ABSDEV and self.center is None:
            raise DomainError("absdev statistic requires a center")
        if self.kind == KIND_TABLE and self.table is None:
            raise DomainError("table statistic requires a composition table")


def sum_statistic() -> TestStatistic:
    return TestStatistic(name="sum", kind=KIND_SUM)


def mean_statistic() -> TestStatistic:
    return TestStatistic(name="mean", kind=KIND_MEAN)


def count_of_value(target: RationalLike) -> TestStatistic:
    value = as_rational(target)
    return TestStatistic(name=f"count:{value}", kind=KIND_COUNT, target=value)


def abs_deviation(center: RationalLike) -> TestStatistic:
    value = as_rational(center)
    return TestStatistic(name=f"absdev:{value}", kind=KIND_ABSDEV, center=value)


def table_statistic(
    table: Mapping[Sequence[int], RationalLike], name: str = "table"
) -> TestStatistic:
    frozen = {tuple(comp): as_rational(v) for comp, v in table.items()}
    return TestStatistic(name=name, kind=KIND_TABLE, table=frozen)


def evaluate(
    stat: TestStatistic, composition: Sequence[int], values: Sequence[Fraction]
) -> Fraction:
    """Apply the statistic to the multiset of values the composition encodes."""
    if len(composition) != len(values):
        raise DomainError(
            f"composition of length {len(composition)} misaligned with "
            f"{len(values)} values"
        )
    for k in composition:
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise DomainError(f"composition entries must be non-negative integers, got {k!r}")
    n = sum(composition)
    if stat.kind == KIND_COUNT:
        return Fraction(sum(k for k, v in zip(composition, values) if v == stat.target))
    if stat.kind == KIND_TABLE:
        key = tuple(composition)
        if key not in stat.table:  # type: ignore[operator]
            raise DomainError(f"composition {key} not in statistic table")
        return stat.table[key]  # type: ignore[index]
    total = Fraction(0)
    for k, v in zip(composition, values):
        if k:
            total += k * v
    if stat.kind == KIND_SUM:
        return total
    if stat.kind == KIND_MEAN:
        if n < 1:
            raise DomainError("mean of an empty sample is undefined")
        return total / n
    return abs(total - stat.center)  # absdev


def parse_statistic(descriptor: str, table=None) -> TestStatistic:
    """Parse a CLI/service descriptor: sum | mean | count:<v> | absdev:<c> | table.

    A "table" descriptor takes the composition table separately (rows of
    {"composition": [...], "value": "..."} or an already-built mapping).
    """
    descriptor = descriptor.strip()
    if descriptor == "sum":
        return sum_statistic()
    if descriptor == "mean":
        return mean_statistic()
    if descriptor.startswith("count:"):
        return count_of_value(descriptor[len("count:"):])
    if descriptor.startswith("absdev:"):
        return abs_deviation(descriptor[len("absdev:"):])
    if descriptor == "table" or descriptor.startswith("table:"):
        if table is None:
            raise DomainError("table statistic requires table rows")
        if isinstance(table, Mapping):
            return table_statistic(table)
        mapping: dict[tuple, RationalLike] = {}
        for idx, row in enumerate(table):
            if not isinstance(row, Mapping) or "composition" not in row or "value" not in row:
                raise DomainError(
                    f'table row {idx} must be an object with "composition" and "value"'
                )
            key = tuple(row["composition"])
            if not all(isinstance(k, int) and k >= 0 for k in key):
                raise DomainError(f"table row {idx}: composition must be non-negative integers")
            if key in mapping:
                raise DomainError(f"table row {idx}: duplicate composition {key}")
            mapping[key] = row["value"]
        return table_statistic(mapping)
    raise DomainError(f"unknown statistic descriptor {descriptor!r}")
