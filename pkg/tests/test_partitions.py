from math import comb

import pytest

from popfock.partitions import (ColoredPartition, Partition,
                                colored_partitions, complement,
                                enumerate_rect, enumerate_rect_by_size,
                                fits_rectangle, rect_count)


def series_coefficient(r, m):
    """Independent oracle: coefficient of q^m in prod_{n>=1} (1-q^n)^{-r},
    via the explicit expansion of each geometric factor."""
    coeffs = [1] + [0] * m
    for n in range(1, m + 1):
        factor = [0] * (m + 1)
        for j in range(0, m // n + 1):
            # (1-q^n)^{-r}: coefficient of q^{nj} is comb(j+r-1, j)
            factor[n * j] = comb(j + r - 1, j)
        new = [0] * (m + 1)
        for a in range(m + 1):
            if coeffs[a] == 0:
                continue
            for b in range(0, m + 1 - a):
                if factor[b]:
                    new[a + b] += coeffs[a] * factor[b]
        coeffs = new
    return coeffs[m]


def test_partition_validation():
    assert Partition((3, 1)).parts == (3, 1)
    assert Partition((3, 0, 0)).parts == (3,)
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_fits_rectangle_examples():
    assert fits_rectangle(Partition((2, 1)), 2, 3)
    assert fits_rectangle(Partition(()), 0, 0)
    assert not fits_rectangle(Partition((3,)), 2, 2)


def test_complement_examples():
    assert complement(Partition((3, 1)), 2, 3) == Partition((2,))
    assert complement(Partition(()), 2, 3) == Partition((3, 3))
    assert complement(Partition((3, 3)), 2, 3) == Partition(())
    with pytest.raises(ValueError):
        complement(Partition((4,)), 2, 3)


def test_complement_involution():
    for d in range(5):
        for dp in range(5):
            for pi in enumerate_rect(d, dp):
                cc = complement(complement(pi, d, dp), d, dp)
                assert cc == pi
                assert fits_rectangle(complement(pi, d, dp), d, dp)


def test_enumerate_rect_examples():
    assert enumerate_rect(1, 1) == [Partition(()), Partition((1,))]
    assert enumerate_rect(0, 5) == [Partition(())]
    assert len(enumerate_rect(2, 2)) == 6


def test_enumerate_rect_counts():
    for d in range(7):
        for dp in range(7):
            got = enumerate_rect(d, dp)
            assert len(got) == comb(d + dp, d) == rect_count(d, dp)
            assert len(set(got)) == len(got)


def test_enumerate_rect_by_size():
    groups = enumerate_rect_by_size(2, 2)
    assert sorted(groups) == [0, 1, 2, 3, 4]
    assert sum(len(v) for v in groups.values()) == 6


def test_colored_partitions_examples():
    assert colored_partitions(1, 3, count_only=True) == 3
    assert colored_partitions(2, 2, count_only=True) == 5
    assert colored_partitions(3, 0, count_only=True) == 1
    assert len(colored_partitions(2, 2)) == 5


def test_colored_partitions_match_series():
    for r in (1, 2, 3):
        for m in range(9):
            count = colored_partitions(r, m, count_only=True)
            assert count == series_coefficient(r, m)
            enum = colored_partitions(r, m)
            assert len(enum) == count
            assert len(set(enum)) == count
            assert all(cp.size() == m for cp in enum)


def test_colored_partition_type():
    cp = ColoredPartition((Partition((2,)), Partition(())))
    assert cp.size() == 2
    assert cp.to_json() == [[2], []]
    with pytest.raises(ValueError):
        ColoredPartition(())
