"""End-to-end acceptance checks, one test per numbered criterion.

Each test name carries its criterion number; the conftest summary hook
prints one PASS/FAIL line per criterion after the run. Tolerances are as
stated in each test: exact rational equality unless a Monte Carlo band or
a wall-clock bound is explicitly part of the criterion.
"""

import json
import math
import random
import subprocess
import time
from fractions import Fraction
from math import comb

from urninference import (
    BinaryFamily,
    Urn,
    abs_deviation,
    confidence_set,
    count_of_value,
    coverage_urn,
    enumerate_compositions,
    evaluate,
    mc_p_value,
    p_value,
    power,
    randomization_p_value,
    render_decimal,
    space_size,
    sum_statistic,
)
from urninference.cli import main
from urninference.demos import run_demo
from urninference.inference import METHOD_COUNTING, METHOD_ENUMERATION

TRIAL_ONE_SIDED = Fraction(22881739, 973228718)


def test_criterion_1_clinical_trial_reproduction():
    start = time.perf_counter()
    one = randomization_p_value(30, 30, 25, 17, "one-A")
    two = randomization_p_value(30, 30, 25, 17, "two")
    elapsed = time.perf_counter() - start
    assert one.p == TRIAL_ONE_SIDED
    assert render_decimal(one.p, 4) == "0.0235"
    assert two.p == Fraction(22881739, 486614359)
    assert render_decimal(two.p, 3) == "0.047"
    assert one.tails[0].result.method == METHOD_COUNTING
    assert elapsed < 1.0


def test_criterion_2_classical_probability_regressions():
    assert run_demo("ess").quantities[0].value == Fraction(999, 1000)
    assert run_demo("poker").quantities[0].value == Fraction(6, 44)
    assert run_demo("envelopes").quantities[0].value == Fraction(1, 50)
    assert run_demo("envelopes", opened=1).quantities[0].value == Fraction(1, 49)
    assert run_demo("envelopes", opened=1, opened_wins=True).quantities[0].value == 0


def test_criterion_3_oracle_equivalence():
    rng = random.Random(20260821)
    start = time.perf_counter()
    for _ in range(50):
        while True:
            m = rng.randint(2, 5)
            values = rng.sample(range(-3, 10), m)
            u = Urn({v: rng.randint(1, 12) for v in values})
            n = rng.randint(1, u.total)
            if comb(u.total, n) <= 100_000:
                break
        comps = [c for c, _ in enumerate_compositions(u, n)]
        base = rng.choice(comps)
        for stat in (
            sum_statistic(),
            count_of_value(rng.choice(values)),
            abs_deviation(rng.randint(-2, 8)),
        ):
            t_obs = evaluate(stat, base, u.distinct_values)
            counted = p_value(u, n, stat, t_obs, METHOD_COUNTING)
            enumerated = p_value(u, n, stat, t_obs, METHOD_ENUMERATION)
            assert counted.p == enumerated.p
            assert counted.tail_count == enumerated.tail_count
    assert time.perf_counter() - start < 60.0


def test_criterion_4_vandermonde_suite():
    rng = random.Random(4242)
    for _ in range(120):
        m = rng.randint(1, 6)
        u = Urn({v: rng.randint(1, 12) for v in range(m)})
        n = rng.randint(1, u.total)
        weights = sum(w for _, w in enumerate_compositions(u, n))
        assert weights == comb(u.total, n)


def _sweep_configs():
    for size in (8, 10, 12):
        family = BinaryFamily(size)
        grid = family.grid("0.01")
        for n in range(3, 7):
            for alpha in (Fraction(1, 20), Fraction(1, 10)):
                yield family, grid, n, alpha


def test_criterion_5_coverage_property():
    start = time.perf_counter()
    configs = 0
    for family, grid, n, alpha in _sweep_configs():
        for theta_star in grid:
            cov = coverage_urn(family, grid, theta_star, n, alpha)
            assert cov.coverage >= 1 - alpha, (family.size, n, alpha, theta_star)
            configs += 1
    assert configs == 168
    assert time.perf_counter() - start < 300.0


def test_criterion_6_inversion_consistency():
    # membership recomputed against the independent enumeration path
    for family, grid, n, alpha in _sweep_configs():
        for ones in range(n + 1):
            x = (n - ones, ones)
            cs = confidence_set(family, grid, n, x, alpha)
            for pt in cs.points:
                stat = family.statistic(pt.theta, n)
                t_obs = evaluate(stat, x, family.values)
                indep = p_value(family.urn(pt.theta), n, stat, t_obs, METHOD_ENUMERATION)
                assert pt.member == (indep.p >= alpha)


def test_criterion_7_power_exactness():
    res = power(Urn({0: 2, 1: 2}), Urn({0: 1, 1: 3}), 2, sum_statistic(), "0.2")
    assert res.t_star == 2
    assert res.achieved_alpha == Fraction(1, 6)
    assert res.beta == Fraction(1, 2)

    rng = random.Random(777)
    for _ in range(20):
        m = rng.randint(2, 4)
        u = Urn({v: rng.randint(1, 5) for v in range(m)})
        n = rng.randint(1, u.total)
        stat = rng.choice(
            [sum_statistic(), count_of_value(rng.randrange(m)), abs_deviation(rng.randint(0, 6))]
        )
        alpha = Fraction(rng.randint(1, 99), 100)
        res = power(u, u, n, stat, alpha)
        assert res.beta == res.achieved_alpha
        assert res.achieved_alpha <= alpha


def test_criterion_8_monte_carlo_convergence():
    null_urn = Urn({1: 42, 0: 18})
    stat = count_of_value(1)
    exact = p_value(null_urn, 30, stat, 25).p
    assert exact == TRIAL_ONE_SIDED
    draws = 100_000
    sigma = math.sqrt(float(exact) * (1 - float(exact)) / draws)
    within_two = 0
    for seed in range(1, 11):
        estimate = mc_p_value(null_urn, 30, stat, 25, draws, seed).p
        error = abs(float(estimate - exact))
        assert error <= 3 * sigma, (seed, error / sigma)
        if error <= 2 * sigma:
            within_two += 1
    assert within_two >= 9


def test_criterion_9_cli_determinism(capsys):
    invocations = [
        ["randtest", "--nA", "30", "--nB", "30", "--favA", "25", "--favB", "17"],
        [
            "coverage", "--size", "10", "--n", "4", "--theta-star", "0.5",
            "--alpha", "0.05", "--grid-step", "0.1", "--ledger",
        ],
        [
            "mc",
            "--urn", json.dumps({"entries": [{"value": "1", "count": 42}, {"value": "0", "count": 18}]}),
            "--n", "30", "--stat", "count:1", "--t-obs", "25",
            "--draws", "2000", "--seed", "12",
        ],
    ]
    for argv in invocations:
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    args = ["urninference", "demo", "trial", "--draws", "1000", "--seed", "5"]
    runs = [
        subprocess.run(args, capture_output=True, timeout=120).stdout for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert b"22881739" in runs[0]

    # the counting identity behind every report: weights sum to C(N, n)
    assert space_size(Urn({1: 42, 0: 18}), 30) == comb(60, 30)
