"""Parameter-indexed model families for confidence-set inversion.

A family maps each admissible parameter value to a fully known model urn and
to the discrepancy statistic used when testing that parameter. Any object
with the same surface (values, contains, urn, statistic, align) works with
the inversion operations; BinaryFamily is the built-in concrete family.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DomainError
from .rational import RationalLike, as_rational
from .stats import TestStatistic, abs_deviation
from .urns import Urn


class BinaryFamily:
    """Models on the values {0, 1} with success proportion theta.

    The family fixes the model-urn size D; theta must be representable as
    k/D so the urn {1: k, 0: D-k} realizes the proportion exactly. Any D
    realizing the proportion is admissible because only proportions, not
    counts, matter to the model.
    """

    def __init__(self, size: int):
        if not isinstance(size, int) or isinstance(size, bool) or size < 1:
            raise DomainError(f"family urn size must be a positive integer, got {size!r}")
        self.size = size

    @property
    def values(self) -> Tuple[Fraction, Fraction]:
        """Canonical composition alignment: (0, 1)."""
        return (Fraction(0), Fraction(1))

    def successes(self, theta: RationalLike) -> int:
        """The ball count k with theta = k/size; DomainError if not exact."""
        t = as_rational(theta)
        if t < 0 or t > 1:
            raise DomainError(f"theta {t} outside [0, 1]")
        k = t * self.size
        if k.denominator != 1:
            raise DomainError(
                f"theta {t} is not representable with an urn of size {self.size}"
            )
        return int(k)

    def contains(self, theta: RationalLike) -> bool:
        try:
            self.successes(theta)
        except DomainError:
            return False
        return True

    def urn(self, theta: RationalLike) -> Urn:
        k = self.successes(theta)
        entries: dict[int, int] = {}
        if self.size - k:
            entries[0] = self.size - k
        if k:
            entries[1] = k
        return Urn(entries)

    def statistic(self, theta: RationalLike, n: int) -> TestStatistic:
        """Two-sided discrepancy |successes(sample) - n*theta|.

        On 0/1 values the sample sum is the success count, so centering the
        absolute deviation at the expected count n*theta gives equal-tailed
        inversion.
        """
        t = as_rational(theta)
        if not self.contains(t):
            raise DomainError(
                f"theta {t} is not representable with an urn of size {self.size}"
            )
        return abs_deviation(n * t)

    def composition(self, ones: int, n: int) -> Tuple[int, int]:
        """Family-aligned composition for a sample with `ones` successes."""
        if not isinstance(ones, int) or ones < 0 or ones > n:
            raise DomainError(f"success count {ones!r} outside 0..{n}")
        return (n - ones, ones)

    def align(self, model: Urn, composition: Sequence[int]) -> Tuple[int, ...]:
        """Re-express a model-urn composition over the family's value axis.

        Degenerate urns (theta 0 or 1) carry only one distinct value; their
        compositions gain an explicit zero for the missing value.
        """
        per_value = dict(zip(model.distinct_values, composition))
        if len(per_value) != len(composition):
            raise DomainError("composition misaligned with model urn")
        return tuple(per_value.get(v, 0) for v in self.values)

    def grid(self, step: RationalLike) -> Tuple[Fraction, ...]:
        """Representable theta values on a step grid over [0, 1].

        Multiples of `step` that the family cannot realize exactly at its
        urn size are dropped; 0 is always present, 1 whenever the step
        divides it.
        """
        s = as_rational(step)
        if s <= 0 or s > 1:
            raise DomainError(f"grid step must be in (0, 1], got {s}")
        points = []
        k = 0
        while k * s <= 1:
            theta = k * s
            if self.contains(theta):
                points.append(theta)
            k += 1
        return tuple(points)

    def __repr__(self) -> str:
        return f"BinaryFamily(size={self.size})"


def theta_statistic(family, theta: RationalLike, n: int) -> TestStatistic:
    """The discrepancy statistic a family tests parameter `theta` with."""
    return family.statistic(theta, n)
