"""The space of all size-n samples from an urn.

A sample is represented by its composition: the vector of per-value counts
aligned with the urn's distinct values (ascending). Compositions collapse the
C(N, n) distinguishable samples onto their value-equivalence classes; the
multiplicity weight of a composition (k1..km) is prod C(c_i, k_i), and the
weights sum to C(N, n) (Vandermonde). Every implemented test statistic is
order-symmetric, so compositions lose nothing.

Two strategies cover the space: composition counting (weights, never
materializes samples) and full enumeration (one item per sample, the
brute-force oracle, capped by a limit). A seeded SRS sampler provides the
Monte Carlo cross-check mode.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterator, Tuple

from .errors import CapacityError, DomainError
from .urns import Urn

Composition = Tuple[int, ...]

# Default cap for materializing a full enumeration.
DEFAULT_ENUM_LIMIT = 10_000_000

# Sampler identity recorded in Monte Carlo reports: CPython Mersenne Twister
# driven only through Random.random(), consumed by Knuth selection sampling.
# Only random() is stable across CPython versions, so nothing else is used.
SRS_GENERATOR = "mt19937-selection/1"

STRATEGY_COUNTING = "composition-counting"
STRATEGY_ENUMERATION = "full-enumeration"


def _check_n(u: Urn, n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"sample size must be an integer, got {n!r}")
    if n < 1 or n > u.total:
        raise DomainError(f"sample size {n} outside 1..{u.total}")


def space_size(u: Urn, n: int) -> int:
    """Number of size-n samples: binomial(N, n), exact."""
    _check_n(u, n)
    return comb(u.total, n)


def enumerate_compositions(u: Urn, n: int) -> Iterator[Tuple[Composition, int]]:
    """Yield every composition once with its multiplicity weight.

    Order is deterministic: counts for the first (smallest) value descend
    first, then recursively for later values. Weights sum to binomial(N, n).
    """
    _check_n(u, n)
    counts = u.counts
    m = len(counts)
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]
    prefix: list[int] = [0] * m

    def rec(i: int, remaining: int, weight: int) -> Iterator[Tuple[Composition, int]]:
        if i == m - 1:
            prefix[i] = remaining
            yield tuple(prefix), weight * comb(counts[i], remaining)
            return
        hi = min(counts[i], remaining)
        lo = max(0, remaining - suffix[i + 1])
        for k in range(hi, lo - 1, -1):
            prefix[i] = k
            yield from rec(i + 1, remaining - k, weight * comb(counts[i], k))

    return rec(0, n, 1)


def enumerate_samples(u: Urn, n: int, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[Composition]:
    """Yield the composition of every one of the binomial(N, n) samples.

    Walks actual ball subsets via itertools.combinations, independently of
    the weighted composition counting, so this is the brute-force oracle.
    Raises CapacityError if the space exceeds `limit`.
    """
    size = space_size(u, n)
    if size > limit:
        raise CapacityError(
            f"full enumeration of {size} samples exceeds the limit of {limit}"
        )
    value_index = []
    for i, c in enumerate(u.counts):
        value_index.extend([i] * c)
    m = len(u.counts)

    def gen() -> Iterator[Composition]:
        for subset in itertools.combinations(range(u.total), n):
            comp = [0] * m
            for ball in subset:
                comp[value_index[ball]] += 1
            yield tuple(comp)

    return gen()


def _draw_composition(counts: Tuple[int, ...], total: int, n: int, rng_random) -> Composition:
    # Knuth selection sampling (Algorithm S) over balls grouped by value:
    # ball t is selected with probability need/remaining, giving every size-n
    # subset probability 1/C(N, n). Consumes one rng_random() per ball seen.
    remaining = total
    need = n
    out = [0] * len(counts)
    for i, c in enumerate(counts):
        if need == 0:
            break
        for _ in range(c):
            if rng_random() * remaining < need:
                out[i] += 1
                need -= 1
            remaining -= 1
            if need == 0:
                break
    return tuple(out)


def srs_stream(u: Urn, n: int, seed: int) -> Iterator[Composition]:
    """Endless stream of independent SRS draws, reproducible from the seed."""
    _check_n(u, n)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise DomainError(f"seed must be an explicit integer, got {seed!r}")
    rng = random.Random(seed)
    rng_random = rng.random
    counts = u.counts
    total = u.total
    while True:
        yield _draw_composition(counts, total, n, rng_random)


def srs_draw(u: Urn, n: int, seed: int, position: int = 0) -> Composition:
    """The draw at `position` in the seed's hypothetical SRS sequence.

    srs_draw(u, n, seed, i) equals the i-th item of srs_stream(u, n, seed);
    different seeds give different sequences with the same limiting
    relative frequencies.
    """
    if position < 0:
        raise DomainError(f"stream position must be >= 0, got {position}")
    return next(itertools.islice(srs_stream(u, n, seed), position, None))


@dataclass(frozen=True)
class SampleSpaceView:
    """A counting or enumeration handle over the size-n sample space."""

    base: Urn
    n: int
    strategy: str
    size: int

    @classmethod
    def counting(cls, u: Urn, n: int) -> "SampleSpaceView":
        return cls(base=u, n=n, strategy=STRATEGY_COUNTING, size=space_size(u, n))

    @classmethod
    def enumeration(cls, u: Urn, n: int, limit: int = DEFAULT_ENUM_LIMIT) -> "SampleSpaceView":
        size = space_size(u, n)
        if size > limit:
            raise CapacityError(
                f"full enumeration of {size} samples exceeds the limit of {limit}"
            )
        return cls(base=u, n=n, strategy=STRATEGY_ENUMERATION, size=size)

    def weighted_compositions(self) -> Iterator[Tuple[Composition, int]]:
        """Compositions with weights under either strategy; weights sum to size."""
        if self.strategy == STRATEGY_COUNTING:
            return enumerate_compositions(self.base, self.n)
        return ((comp, 1) for comp in enumerate_samples(self.base, self.n, self.size))
