"""Exact inference over model urns.

Every operation reduces to the same move: enumerate or count the sample
space of a fully known urn and report the proportion of samples at least as
extreme as a threshold. Proportions are exact reduced rationals; the only
randomness anywhere is the single SRS that produced the observed data, so
the Monte Carlo path exists purely as a numerical cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DomainError
from .rational import RationalLike, as_rational, proportion
from .sample_space import (
    DEFAULT_ENUM_LIMIT,
    SRS_GENERATOR,
    SampleSpaceView,
    enumerate_compositions,
    space_size,
    srs_stream,
)
from .stats import TestStatistic, count_of_value, evaluate
from .urns import Urn

METHOD_COUNTING = "counting"
METHOD_ENUMERATION = "full-enumeration"
METHOD_MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class PValueResult:
    """An exact (or Monte Carlo) tail proportion Pr[T >= t_obs]."""

    p: Fraction
    t_obs: Fraction
    method: str
    space_size: int
    n: int
    tail_count: Optional[int] = None
    draws: Optional[int] = None
    hits: Optional[int] = None
    seed: Optional[int] = None
    generator: Optional[str] = None


@dataclass(frozen=True)
class TailResult:
    """One side of a randomization test: a group's tail at a threshold."""

    group: str
    threshold: int
    result: PValueResult


@dataclass(frozen=True)
class RandTestResult:
    """Sharp-null randomization test over treatment assignments."""

    sided: str
    n_a: int
    n_b: int
    fav_a: int
    fav_b: int
    p: Fraction
    space_size: int
    tails: Tuple[TailResult, ...]


@dataclass(frozen=True)
class CIPoint:
    theta: Fraction
    t_obs: Fraction
    p: Fraction
    member: bool


@dataclass(frozen=True)
class ConfidenceSetResult:
    """Test-inversion confidence set with its full p(theta) profile."""

    alpha: Fraction
    n: int
    grid: Tuple[Fraction, ...]
    points: Tuple[CIPoint, ...]

    @property
    def members(self) -> Tuple[Fraction, ...]:
        return tuple(pt.theta for pt in self.points if pt.member)


@dataclass(frozen=True)
class CoverageRow:
    composition: Tuple[int, ...]
    weight: int
    p_at_truth: Fraction
    member: bool


@dataclass(frozen=True)
class CoverageResult:
    """Exact coverage of the confidence procedure over all possible samples."""

    theta_star: Fraction
    alpha: Fraction
    n: int
    coverage: Fraction
    space_size: int
    ledger: Tuple[CoverageRow, ...]


@dataclass(frozen=True)
class PowerResult:
    """Size and power of the largest rejection region not exceeding alpha.

    t_star is None when no achievable threshold keeps the null tail within
    alpha (the empty rejection region); achieved_alpha and beta are then 0.
    """

    t_star: Optional[Fraction]
    achieved_alpha: Fraction
    beta: Fraction
    requested_alpha: Fraction
    null_space_size: int
    alt_space_size: int


def p_value(
    model: Urn,
    n: int,
    statistic: TestStatistic,
    t_obs: RationalLike,
    method: str = METHOD_COUNTING,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> PValueResult:
    """Proportion of samples whose statistic is >= t_obs, ties included.

    "counting" walks weighted compositions; "full-enumeration" walks every
    sample (subject to `limit`) and exists as the oracle path. Both agree
    exactly whenever both run.
    """
    t = as_rational(t_obs)
    if method == METHOD_COUNTING:
        view = SampleSpaceView.counting(model, n)
    elif method == METHOD_ENUMERATION:
        view = SampleSpaceView.enumeration(model, n, limit)
    else:
        raise DomainError(f"unknown p-value method {method!r}")
    values = model.distinct_values
    tail = 0
    for comp, weight in view.weighted_compositions():
        if evaluate(statistic, comp, values) >= t:
            tail += weight
    return PValueResult(
        p=proportion(tail, view.size),
        t_obs=t,
        method=method,
        space_size=view.size,
        n=n,
        tail_count=tail,
    )


def mc_p_value(
    model: Urn,
    n: int,
    statistic: TestStatistic,
    t_obs: RationalLike,
    draws: int,
    seed: int,
) -> PValueResult:
    """Hit fraction of T >= t_obs over `draws` seeded SRS samples.

    Interpretively optional: the exact proportion already is the p-value;
    this estimates it by repeated sampling as a cross-check.
    """
    if not isinstance(draws, int) or isinstance(draws, bool) or draws < 1:
        raise DomainError(f"draw count must be a positive integer, got {draws!r}")
    t = as_rational(t_obs)
    values = model.distinct_values
    hits = 0
    for comp in itertools.islice(srs_stream(model, n, seed), draws):
        if evaluate(statistic, comp, values) >= t:
            hits += 1
    return PValueResult(
        p=proportion(hits, draws),
        t_obs=t,
        method=METHOD_MONTE_CARLO,
        space_size=space_size(model, n),
        n=n,
        draws=draws,
        hits=hits,
        seed=seed,
        generator=SRS_GENERATOR,
    )


SIDED_A = "one-A"
SIDED_B = "one-B"
SIDED_TWO = "two"


def randomization_p_value(
    n_a: int, n_b: int, fav_a: int, fav_b: int, sided: str = SIDED_TWO
) -> RandTestResult:
    """Exact randomization test under the sharp null of identical effects.

    With identical outcomes per participant there are exactly K = fav_a +
    fav_b favorable responses however the N = n_a + n_b participants are
    assigned. One-sided tails count assignments giving the named group at
    least its observed favorable count. The two-sided p adds the two tails
    at the larger observed count (each group at least as favorable as the
    more favorable group actually was), capped at 1.
    """
    for label, value in (("n_a", n_a), ("n_b", n_b)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise DomainError(f"{label} must be a positive integer, got {value!r}")
    for label, fav, limit in (("fav_a", fav_a, n_a), ("fav_b", fav_b, n_b)):
        if not isinstance(fav, int) or isinstance(fav, bool) or fav < 0 or fav > limit:
            raise DomainError(f"{label} must be an integer in 0..{limit}, got {fav!r}")
    if sided not in (SIDED_A, SIDED_B, SIDED_TWO):
        raise DomainError(f"sided must be one of one-A, one-B, two; got {sided!r}")

    favorable = fav_a + fav_b
    total = n_a + n_b
    entries: dict[int, int] = {}
    labels = {}
    if total - favorable:
        entries[0] = total - favorable
        labels[0] = "unfavorable"
    if favorable:
        entries[1] = favorable
        labels[1] = "favorable"
    null_urn = Urn(entries, labels=labels)
    statistic = count_of_value(1)

    def tail(group: str, group_n: int, threshold: int) -> TailResult:
        res = p_value(null_urn, group_n, statistic, threshold)
        return TailResult(group=group, threshold=threshold, result=res)

    # C(N, n_a) == C(N, n_b): assigning group A fixes group B.
    size = space_size(null_urn, n_a)
    if sided == SIDED_A:
        t = tail("A", n_a, fav_a)
        return RandTestResult(sided, n_a, n_b, fav_a, fav_b, t.result.p, size, (t,))
    if sided == SIDED_B:
        t = tail("B", n_b, fav_b)
        return RandTestResult(sided, n_a, n_b, fav_a, fav_b, t.result.p, size, (t,))
    threshold = max(fav_a, fav_b)
    t_a = tail("A", n_a, threshold)
    t_b = tail("B", n_b, threshold)
    combined = min(Fraction(1), t_a.result.p + t_b.result.p)
    return RandTestResult(sided, n_a, n_b, fav_a, fav_b, combined, size, (t_a, t_b))


def confidence_set(
    family,
    grid: Sequence[RationalLike],
    n: int,
    x_obs: Sequence[int],
    alpha: RationalLike,
) -> ConfidenceSetResult:
    """All grid parameters whose model is not rejected at level alpha.

    For each theta the observed sample is scored by the family's
    discrepancy statistic and theta enters the set iff p(theta) >= alpha
    (ties at alpha included). The full profile is reported: the endpoints
    are guideposts, and p(theta) near the boundary carries information
    membership alone does not.
    """
    a = as_rational(alpha)
    if not 0 < a < 1:
        raise DomainError(f"alpha must be in (0, 1), got {a}")
    if not grid:
        raise DomainError("theta grid must be nonempty")
    thetas = [as_rational(t) for t in grid]
    for t in thetas:
        if not family.contains(t):
            raise DomainError(f"theta {t} outside the family's parameter set")
    composition = tuple(x_obs)
    if len(composition) != len(family.values):
        raise DomainError(
            f"observed composition of length {len(composition)} misaligned with "
            f"{len(family.values)} family values"
        )
    if any(not isinstance(k, int) or k < 0 for k in composition):
        raise DomainError("observed composition must be non-negative integers")
    if sum(composition) != n:
        raise DomainError(f"observed composition sums to {sum(composition)}, expected n={n}")

    points = []
    for theta in thetas:
        statistic = family.statistic(theta, n)
        t_obs = evaluate(statistic, composition, family.values)
        res = p_value(family.urn(theta), n, statistic, t_obs)
        points.append(CIPoint(theta=theta, t_obs=t_obs, p=res.p, member=res.p >= a))
    return ConfidenceSetResult(alpha=a, n=n, grid=tuple(thetas), points=tuple(points))


def coverage_urn(
    family,
    grid: Sequence[RationalLike],
    theta_star: RationalLike,
    n: int,
    alpha: RationalLike,
) -> CoverageResult:
    """Exact coverage when the population is the model at theta_star.

    Builds the confidence set of every possible sample (weighted by
    multiplicity) and reports the proportion containing theta_star. The
    per-sample ledger is retained so misses are inspectable.
    """
    ts = as_rational(theta_star)
    thetas = [as_rational(t) for t in grid]
    if ts not in thetas:
        raise DomainError(f"theta* {ts} is not on the grid")
    population = family.urn(ts)
    total = space_size(population, n)
    covered = 0
    rows = []
    for comp, weight in enumerate_compositions(population, n):
        x = family.align(population, comp)
        cs = confidence_set(family, thetas, n, x, alpha)
        point = next(pt for pt in cs.points if pt.theta == ts)
        if point.member:
            covered += weight
        rows.append(
            CoverageRow(composition=x, weight=weight, p_at_truth=point.p, member=point.member)
        )
    return CoverageResult(
        theta_star=ts,
        alpha=as_rational(alpha),
        n=n,
        coverage=proportion(covered, total),
        space_size=total,
        ledger=tuple(rows),
    )


def power(
    null_model: Urn,
    alt_model: Urn,
    n: int,
    statistic: TestStatistic,
    alpha: RationalLike,
) -> PowerResult:
    """Exact size and power of the test rejecting when T >= t*.

    t* is the smallest achievable statistic value whose null tail does not
    exceed alpha: the largest rejection region of honest size. Discreteness
    means the achieved size is generally below the requested alpha; the
    test is never randomized to close the gap.
    """
    a = as_rational(alpha)
    if not 0 < a <= 1:
        raise DomainError(f"alpha must be in (0, 1], got {a}")

    def tail_distribution(model: Urn):
        weights: dict[Fraction, int] = {}
        for comp, weight in enumerate_compositions(model, n):
            value = evaluate(statistic, comp, model.distinct_values)
            weights[value] = weights.get(value, 0) + weight
        return weights

    null_weights = tail_distribution(null_model)
    null_size = space_size(null_model, n)
    alt_size = space_size(alt_model, n)

    t_star: Optional[Fraction] = None
    achieved = 0
    running = 0
    for value in sorted(null_weights, reverse=True):
        running += null_weights[value]
        if Fraction(running, null_size) <= a:
            t_star = value
            achieved = running
        else:
            break

    if t_star is None:
        return PowerResult(
            t_star=None,
            achieved_alpha=proportion(0, null_size),
            beta=proportion(0, alt_size),
            requested_alpha=a,
            null_space_size=null_size,
            alt_space_size=alt_size,
        )

    beta_count = 0
    for comp, weight in enumerate_compositions(alt_model, n):
        if evaluate(statistic, comp, alt_model.distinct_values) >= t_star:
            beta_count += weight
    return PowerResult(
        t_star=t_star,
        achieved_alpha=proportion(achieved, null_size),
        beta=proportion(beta_count, alt_size),
        requested_alpha=a,
        null_space_size=null_size,
        alt_space_size=alt_size,
    )
