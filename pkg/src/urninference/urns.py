"""Finite multisets of exact numeric values, and classical-probability ops.

An urn holds N >= 1 balls; each ball carries an exact rational value, and
balls with equal values are interchangeable. Counts per distinct value are
positive integers. An optional display label may ride along per value
("white", "favorable") but never affects computation or equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import DomainError
from .rational import RationalLike, as_rational, proportion


class Urn:
    """Immutable multiset of exact values with positive integer counts.

    Equality and hashing use only the value->count map; labels are display
    metadata. Instances are safe to share across threads.
    """

    __slots__ = ("_entries", "_labels", "_total", "_hash")

    def __init__(
        self,
        entries: Union[Mapping[RationalLike, int], Iterable[Tuple[RationalLike, int]]],
        labels: Optional[Mapping[RationalLike, str]] = None,
    ):
        items = entries.items() if isinstance(entries, Mapping) else entries
        parsed: dict[Fraction, int] = {}
        for raw_value, count in items:
            value = as_rational(raw_value)
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise DomainError(f"count for value {value} must be a positive integer, got {count!r}")
            if value in parsed:
                raise DomainError(f"duplicate value {value} in urn entries")
            parsed[value] = count
        if not parsed:
            raise DomainError("an urn must contain at least one ball")
        self._entries = dict(sorted(parsed.items()))
        self._total = sum(self._entries.values())
        label_map: dict[Fraction, str] = {}
        for raw_value, label in (labels or {}).items():
            value = as_rational(raw_value)
            if value not in self._entries:
                raise DomainError(f"label given for value {value} not present in urn")
            label_map[value] = label
        self._labels = label_map
        self._hash = hash(tuple(self._entries.items()))

    @classmethod
    def from_values(cls, values: Iterable[RationalLike]) -> "Urn":
        """Build an urn by counting occurrences, e.g. from_values([1, 2, 2, 3])."""
        counts: dict[Fraction, int] = {}
        for raw in values:
            value = as_rational(raw)
            counts[value] = counts.get(value, 0) + 1
        if not counts:
            raise DomainError("an urn must contain at least one ball")
        return cls(counts)

    @property
    def total(self) -> int:
        """Number of balls N."""
        return self._total

    @property
    def distinct_values(self) -> Tuple[Fraction, ...]:
        """Distinct values in ascending order; the canonical alignment."""
        return tuple(self._entries)

    @property
    def counts(self) -> Tuple[int, ...]:
        """Counts aligned with distinct_values."""
        return tuple(self._entries.values())

    def count(self, value: RationalLike) -> int:
        return self._entries.get(as_rational(value), 0)

    def label(self, value: RationalLike) -> Optional[str]:
        return self._labels.get(as_rational(value))

    def items(self) -> Iterator[Tuple[Fraction, int]]:
        return iter(self._entries.items())

    def __contains__(self, value: object) -> bool:
        try:
            return as_rational(value) in self._entries  # type: ignore[arg-type]
        except DomainError:
            return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Urn):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}:{c}" for v, c in self._entries.items())
        return f"Urn({{{inner}}})"


def urn_union(a: Urn, b: Urn) -> Urn:
    """Multiset union: counts add, so |1,2| u |2,3| = |1,2,2,3|."""
    merged = dict(a.items())
    labels: dict = {}
    for value, count in b.items():
        merged[value] = merged.get(value, 0) + count
    for source in (a, b):
        for value, _ in source.items():
            label = source.label(value)
            if label is not None and value not in labels:
                labels[value] = label
    return Urn(merged, labels=labels or None)


def event_proportion(u: Urn, predicate: Callable[[Fraction], bool]) -> Fraction:
    """Proportion of balls whose value satisfies the predicate, reduced.

    An event matching nothing yields Fraction(0) (0/1 after reduction).
    """
    hits = sum(count for value, count in u.items() if predicate(value))
    return proportion(hits, u.total)


def condition(u: Urn, removed: Union[Urn, Mapping[RationalLike, int]]) -> Urn:
    """Remove a sub-multiset of balls (observed evidence) from the urn.

    `removed` may be an Urn or a plain value->count mapping; an empty mapping
    is the identity. Removing balls the urn does not hold, or emptying the
    urn entirely, is a domain error.
    """
    to_remove: dict[Fraction, int] = {}
    for raw_value, count in removed.items():
        value = as_rational(raw_value)
        if not isinstance(count, int) or count < 0:
            raise DomainError(f"removal count for value {value} must be a non-negative integer")
        if count:
            to_remove[value] = to_remove.get(value, 0) + count
    if not to_remove:
        return u
    remaining = dict(u.items())
    for value, count in to_remove.items():
        held = remaining.get(value, 0)
        if count > held:
            raise DomainError(
                f"cannot remove {count} balls of value {value}; urn holds {held}"
            )
        if count == held:
            del remaining[value]
        else:
            remaining[value] = held - count
    if not remaining:
        raise DomainError("removal would leave the urn empty")
    labels = {v: u.label(v) for v in remaining if u.label(v) is not None}
    return Urn(remaining, labels=labels or None)  # type: ignore[arg-type]


def event_predicate(u: Urn, descriptor: str) -> Callable[[Fraction], bool]:
    """Build a value predicate from a descriptor string.

    Forms: "value:<v>" exact value, "ge:<v>"/"gt:<v>"/"le:<v>"/"lt:<v>"
    numeric comparisons, anything else matches balls by label. A label no
    ball carries is a domain error rather than an always-false event.
    """
    descriptor = descriptor.strip()
    if ":" in descriptor:
        op, _, raw = descriptor.partition(":")
        if op in ("value", "ge", "gt", "le", "lt"):
            bound = as_rational(raw)
            return {
                "value": lambda v: v == bound,
                "ge": lambda v: v >= bound,
                "gt": lambda v: v > bound,
                "le": lambda v: v <= bound,
                "lt": lambda v: v < bound,
            }[op]
    name = descriptor
    if all(u.label(v) != name for v in u.distinct_values):
        raise DomainError(f"no ball carries the label {name!r}")
    return lambda v: u.label(v) == name


def urn_to_json(u: Urn) -> dict:
    """Canonical JSON form: values as exact strings, counts as integers."""
    entries = []
    for value, count in u.items():
        entry: dict = {"value": str(value), "count": count}
        label = u.label(value)
        if label is not None:
            entry["label"] = label
        entries.append(entry)
    return {"entries": entries}


def urn_from_json(obj: object) -> Urn:
    """Parse the JSON urn form; raises DomainError on malformed input."""
    if not isinstance(obj, dict) or "entries" not in obj:
        raise DomainError('urn JSON must be an object with an "entries" list')
    raw_entries = obj["entries"]
    if not isinstance(raw_entries, list):
        raise DomainError('"entries" must be a list')
    counts: dict[str, int] = {}
    labels: dict[str, str] = {}
    seen: set[Fraction] = set()
    for idx, entry in enumerate(raw_entries):
        if not isinstance(entry, dict) or "value" not in entry or "count" not in entry:
            raise DomainError(f'entry {idx} must be an object with "value" and "count"')
        raw_value = entry["value"]
        if not isinstance(raw_value, str):
            raise DomainError(f'entry {idx}: "value" must be a string, got {raw_value!r}')
        try:
            value = as_rational(raw_value)
        except DomainError as exc:
            raise DomainError(f"entry {idx}: {exc}") from None
        if value in seen:
            raise DomainError(f"entry {idx}: duplicate value {raw_value!r}")
        seen.add(value)
        counts[raw_value] = entry["count"]
        if "label" in entry:
            if not isinstance(entry["label"], str):
                raise DomainError(f'entry {idx}: "label" must be a string')
            labels[raw_value] = entry["label"]
    return Urn(counts, labels=labels or None)
