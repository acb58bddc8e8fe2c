"""Canned scenarios exercising the engine end to end.

Each demo builds a small urn model, asks the engine for exact proportions,
and packages the results for the CLI and service to render. They double as
regression anchors: every reported value is an exact rational with a known
closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import DomainError
from .inference import RandTestResult, mc_p_value, randomization_p_value
from .stats import count_of_value
from .urns import Urn, condition, event_proportion, event_predicate

DEMO_NAMES = ("ess", "poker", "lottery", "envelopes", "trial")


@dataclass(frozen=True)
class DemoQuantity:
    label: str
    value: Fraction
    detail: Optional[str] = None


@dataclass(frozen=True)
class DemoReport:
    name: str
    description: str
    quantities: Tuple[DemoQuantity, ...]
    randtest: Optional[RandTestResult] = field(default=None, repr=False)


def ess() -> DemoReport:
    """A pardon decided by one draw from 999 white balls and 1 black ball."""
    u = Urn({1: 999, 0: 1}, labels={1: "white", 0: "black"})
    white = event_proportion(u, event_predicate(u, "white"))
    return DemoReport(
        name="ess",
        description="one draw from an urn of 999 white balls and 1 black ball",
        quantities=(DemoQuantity("white", white, "proportion of white balls"),),
    )


def poker() -> DemoReport:
    """A final card dealt from 44 unseen cards, 6 of which win the hand."""
    u = Urn({1: 6, 0: 38}, labels={1: "out", 0: "blank"})
    win = event_proportion(u, event_predicate(u, "out"))
    return DemoReport(
        name="poker",
        description="one card from 44 unseen, 6 of which win",
        quantities=(DemoQuantity("win", win, "6 outs among 44 cards"),),
    )


def lottery() -> DemoReport:
    """Three digits drawn independently, one box of 10 balls per digit."""
    box = Urn({d: 1 for d in range(10)})
    digit = event_proportion(box, lambda v: v == 5)
    return DemoReport(
        name="lottery",
        description="three boxes of 10 labeled balls, one ball drawn from each",
        quantities=(
            DemoQuantity("digit", digit, "any fixed digit from one box"),
            DemoQuantity("exact-combination", digit**3, "all three digits fixed"),
        ),
    )


def envelopes(opened: int = 0, opened_wins: bool = False) -> DemoReport:
    """One winning ticket among 50 envelopes, some already opened.

    Each opened envelope removes one ball from the urn. While every opened
    envelope has lost, the holder of an unopened envelope wins with
    proportion 1/(50 - opened); once the winner is opened the proportion
    collapses to 0.
    """
    if not isinstance(opened, int) or isinstance(opened, bool) or not 0 <= opened <= 49:
        raise DomainError(f"opened must be an integer in 0..49, got {opened!r}")
    if opened_wins and opened < 1:
        raise DomainError("opened_wins requires at least one opened envelope")
    u = Urn({1: 1, 0: 49}, labels={1: "winning", 0: "losing"})
    if opened:
        removed = {1: 1, 0: opened - 1} if opened_wins else {0: opened}
        u = condition(u, {v: c for v, c in removed.items() if c})
    win = event_proportion(u, event_predicate(u, "value:1"))
    state = (
        "before any envelope is opened"
        if not opened
        else f"after {opened} opened ({'winner among them' if opened_wins else 'all losers'})"
    )
    return DemoReport(
        name="envelopes",
        description="50 envelopes, exactly one holding the winning ticket",
        quantities=(DemoQuantity("win", win, f"unopened envelope, {state}"),),
    )


def trial(draws: int = 5000, seed: int = 7) -> DemoReport:
    """A 60-participant comparative trial scored by exact randomization.

    25 of 30 in group A and 17 of 30 in group B responded favorably. Under
    the sharp null every assignment keeps 42 favorable responses, so tails
    are exact proportions over the 60-choose-30 assignments. A seeded
    Monte Carlo estimate of the one-sided tail is included as the
    repeated-sampling cross-check.
    """
    one_a = randomization_p_value(30, 30, 25, 17, sided="one-A")
    one_b = randomization_p_value(30, 30, 25, 17, sided="one-B")
    two = randomization_p_value(30, 30, 25, 17, sided="two")
    mirror = two.tails[1]
    mc = mc_p_value(_trial_null(), 30, count_of_value(1), 25, draws, seed)
    return DemoReport(
        name="trial",
        description="comparative trial, 25/30 vs 17/30 favorable, sharp-null randomization",
        quantities=(
            DemoQuantity("one-sided-A", one_a.p, "assignments with >= 25 favorable in A"),
            DemoQuantity("one-sided-B", one_b.p, "assignments with >= 17 favorable in B"),
            DemoQuantity("mirror-B", mirror.result.p, "assignments with >= 25 favorable in B"),
            DemoQuantity("two-sided", two.p, "both tails at 25, summed"),
            DemoQuantity("mc-one-sided-A", mc.p, f"{draws} seeded draws, seed {seed}"),
        ),
        randtest=two,
    )


def _trial_null() -> Urn:
    return Urn({1: 42, 0: 18}, labels={1: "favorable", 0: "unfavorable"})


def run_demo(name: str, **kwargs) -> DemoReport:
    """Dispatch by demo name; unknown names are a domain error."""
    runners = {
        "ess": ess,
        "poker": poker,
        "lottery": lottery,
        "envelopes": envelopes,
        "trial": trial,
    }
    if name not in runners:
        raise DomainError(f"unknown demo {name!r}; expected one of {', '.join(DEMO_NAMES)}")
    return runners[name](**kwargs)
