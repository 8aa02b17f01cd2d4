import itertools
from math import factorial

import pytest

from coverwalk.errors import ValidationError
from coverwalk.partitions import (
    MultiplicityForm,
    Partition,
    age,
    aut_order,
    centralizer_order,
    class_size,
    normal_order,
    partitions_of,
)


def brute_partition_count(n):
    """Independent count: non-increasing positive compositions, by recursion."""

    def count(n, maxpart):
        if n == 0:
            return 1
        return sum(count(n - k, k) for k in range(1, min(n, maxpart) + 1))

    return count(n, n)


def test_partitions_of_small():
    assert [tuple(p) for p in partitions_of(0)] == [()]
    assert [tuple(p) for p in partitions_of(1)] == [(1,)]
    assert len(partitions_of(4)) == 5


def test_partitions_of_counts_match_bruteforce():
    for n in range(11):
        assert len(partitions_of(n)) == brute_partition_count(n)


def test_partitions_of_reverse_lex_and_unique():
    for n in range(1, 10):
        parts = partitions_of(n)
        assert len(set(parts)) == len(parts)
        assert all(p.n == n for p in parts)
        # reverse-lexicographic: each successor compares smaller as a tuple
        for a, b in zip(parts, parts[1:]):
            assert tuple(a) > tuple(b)


def test_partition_validation():
    with pytest.raises(ValidationError):
        Partition([0, 1])
    with pytest.raises(ValidationError):
        Partition([-2])
    assert tuple(Partition([1, 3, 2])) == (3, 2, 1)


def test_age():
    assert age(Partition([1, 1, 1])) == 0
    assert age(Partition([3])) == 2
    assert age(Partition([2, 2, 1])) == 2
    for n in range(1, 9):
        for mu in partitions_of(n):
            assert mu.age() == sum(p - 1 for p in mu)
            assert mu.age() + mu.length == n


def test_aut_order():
    assert aut_order(Partition([1, 1, 1])) == 6
    assert aut_order(Partition([2, 1])) == 1
    assert aut_order(Partition([2, 2, 1])) == 2


def test_centralizer_order_against_bruteforce():
    # brute force: centralizer of a representative permutation inside S_n
    def rep(mu):
        out = []
        start = 0
        for part in mu:
            out.extend(list(range(start + 1, start + part)) + [start])
            start += part
        return tuple(out)

    def compose(p, q):
        return tuple(p[q[i]] for i in range(len(p)))

    for n in range(1, 7):
        group = list(itertools.permutations(range(n)))
        for mu in partitions_of(n):
            sigma = rep(mu)
            brute = sum(1 for g in group if compose(g, sigma) == compose(sigma, g))
            assert centralizer_order(mu) == brute


def test_centralizer_splits_as_product():
    for n in range(1, 9):
        for mu in partitions_of(n):
            assert centralizer_order(mu) == normal_order(mu) * aut_order(mu)


def test_class_sizes():
    assert class_size(Partition([1, 1])) == 1
    assert class_size(Partition([2, 1])) == 3
    assert class_size(Partition([3])) == 2
    for n in range(1, 9):
        assert sum(class_size(mu) for mu in partitions_of(n)) == factorial(n)
        for mu in partitions_of(n):
            assert class_size(mu) * centralizer_order(mu) == factorial(n)


def test_multiplicity_form_round_trip():
    for n in range(0, 9):
        for mu in partitions_of(n):
            form = MultiplicityForm.from_partition(mu)
            assert form.n == n
            assert form.to_partition() == mu
            values = [v for v, _ in form.pairs]
            assert values == sorted(values, reverse=True)


def test_multiplicity_form_validation():
    with pytest.raises(ValidationError):
        MultiplicityForm(((2, 1), (2, 1)))
    with pytest.raises(ValidationError):
        MultiplicityForm(((1, 0),))
