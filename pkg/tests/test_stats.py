from fractions import Fraction

import pytest

from urninference import (
    BinaryFamily,
    DomainError,
    Urn,
    abs_deviation,
    count_of_value,
    evaluate,
    mean_statistic,
    parse_statistic,
    sum_statistic,
    table_statistic,
    theta_statistic,
)

BINARY = (Fraction(0), Fraction(1))


def test_sum_and_mean():
    values = (Fraction(1), Fraction(2), Fraction(3))
    assert evaluate(sum_statistic(), (1, 2, 0), values) == 5
    assert evaluate(mean_statistic(), (1, 2, 0), values) == Fraction(5, 3)
    assert evaluate(sum_statistic(), (0, 0), BINARY) == 0


def test_count_of_value():
    stat = count_of_value(1)
    assert evaluate(stat, (5, 25), BINARY) == 25
    assert evaluate(stat, (30, 0), BINARY) == 0
    missing = count_of_value(7)
    assert evaluate(missing, (5, 25), BINARY) == 0


def test_abs_deviation():
    stat = abs_deviation(21)
    # deviation of the sum from the center
    assert evaluate(stat, (5, 25), BINARY) == 4
    assert evaluate(stat, (25, 5), BINARY) == 16
    half = abs_deviation(Fraction(3, 2))
    assert evaluate(half, (1, 1), BINARY) == Fraction(1, 2)


def test_table_statistic():
    table = {(2, 0): 10, (1, 1): "1/2", (0, 2): 0}
    stat = table_statistic(table)
    assert evaluate(stat, (1, 1), BINARY) == Fraction(1, 2)
    assert evaluate(stat, (2, 0), BINARY) == 10
    with pytest.raises(DomainError):
        evaluate(stat, (3, 0), (Fraction(0), Fraction(1)))


def test_evaluate_rejects_misalignment():
    with pytest.raises(DomainError):
        evaluate(sum_statistic(), (1, 2), (Fraction(1),))
    with pytest.raises(DomainError):
        evaluate(mean_statistic(), (0, 0), BINARY)
    with pytest.raises(DomainError):
        evaluate(sum_statistic(), (2, -1), BINARY)


def test_parse_statistic_descriptors():
    assert parse_statistic("sum").kind == "sum"
    assert parse_statistic("mean").kind == "mean"
    stat = parse_statistic("count:1")
    assert stat.target == 1
    stat = parse_statistic("absdev:3/2")
    assert stat.center == Fraction(3, 2)
    rows = [
        {"composition": [2, 0], "value": 10},
        {"composition": [1, 1], "value": "1/2"},
    ]
    stat = parse_statistic("table", table=rows)
    assert evaluate(stat, (1, 1), BINARY) == Fraction(1, 2)
    with pytest.raises(DomainError):
        parse_statistic("median")
    with pytest.raises(DomainError):
        parse_statistic("table")


def test_binary_family_basics():
    fam = BinaryFamily(10)
    assert fam.values == BINARY
    assert fam.successes("0.3") == 3
    assert fam.contains("0.3")
    assert not fam.contains("1/3")
    with pytest.raises(DomainError):
        fam.successes("1/3")
    u = fam.urn("0.3")
    assert u.count(1) == 3 and u.count(0) == 7
    assert fam.urn(0) == Urn({0: 10})
    assert fam.urn(1) == Urn({1: 10})


def test_binary_family_statistic_centers():
    fam = BinaryFamily(10)
    stat = fam.statistic("0.5", 4)
    assert stat.center == 2
    assert evaluate(stat, (2, 2), BINARY) == 0
    stat = fam.statistic("0.7", 10)
    assert stat.center == 7
    zero = fam.statistic(0, 3)
    # deviation from zero is the sum itself on binary compositions
    assert evaluate(zero, (1, 2), BINARY) == 2


def test_binary_family_label_swap_symmetry():
    fam = BinaryFamily(10)
    n = 4
    for ones in range(n + 1):
        comp = fam.composition(ones, n)
        swapped = fam.composition(n - ones, n)
        a = evaluate(fam.statistic("0.3", n), comp, BINARY)
        b = evaluate(fam.statistic("0.7", n), swapped, BINARY)
        assert a == b


def test_binary_family_align():
    fam = BinaryFamily(8)
    # degenerate urns collapse to one column; align restores both
    assert fam.align(fam.urn(0), (3,)) == (3, 0)
    assert fam.align(fam.urn(1), (3,)) == (0, 3)
    assert fam.align(fam.urn("0.5"), (1, 2)) == (1, 2)


def test_binary_family_grid_intersects_representable():
    fam = BinaryFamily(10)
    assert fam.grid("0.1") == tuple(Fraction(k, 10) for k in range(11))
    # at step 0.01 only exactly representable hundredths survive
    fam8 = BinaryFamily(8)
    assert fam8.grid("0.01") == (
        Fraction(0),
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
        Fraction(1),
    )
    with pytest.raises(DomainError):
        fam.grid(0)
    with pytest.raises(DomainError):
        fam.grid("3/2")


def test_theta_statistic_helper():
    fam = BinaryFamily(10)
    stat = theta_statistic(fam, "0.5", 4)
    assert stat.center == 2
    with pytest.raises(DomainError):
        theta_statistic(fam, "1/3", 4)
