import itertools
from fractions import Fraction
from math import factorial

import pytest

from coverwalk.errors import CapacityError, InfeasibleError, ValidationError
from coverwalk.hurwitz import (
    HurwitzProblem,
    branch_degree,
    cycle_type,
    hurwitz_connected,
    hurwitz_disconnected,
    simple_hurwitz,
    transitive_tuple_count,
    tuple_count,
)
from coverwalk.partitions import Partition, partitions_of


def test_problem_validation():
    with pytest.raises(ValidationError):
        HurwitzProblem(0, 3, (Partition([2]),))
    with pytest.raises(ValidationError):
        HurwitzProblem(-1, 2, ())


def test_double_cover_of_line():
    p = HurwitzProblem(0, 2, (Partition([2]), Partition([2])))
    assert hurwitz_disconnected(p) == Fraction(1, 2)
    assert hurwitz_connected(p) == Fraction(1, 2)
    assert tuple_count(p) == 1


def test_four_transpositions_degree_three():
    p = HurwitzProblem(0, 3, tuple([Partition([2, 1])] * 4))
    assert hurwitz_disconnected(p) == Fraction(9, 2)
    assert tuple_count(p) == 27
    assert transitive_tuple_count(p) == 24
    assert hurwitz_connected(p) == 4


def test_torus_unramified():
    p = HurwitzProblem(1, 2, ())
    assert hurwitz_disconnected(p) == 2
    assert tuple_count(p) == 4  # all pairs in the abelian group S_2


def test_identity_cover():
    for g in range(3):
        p = HurwitzProblem(g, 1, ())
        assert hurwitz_connected(p) == 1


def test_odd_total_age_vanishes():
    p = HurwitzProblem(0, 3, (Partition([2, 1]),))
    assert hurwitz_disconnected(p) == 0
    assert tuple_count(p) == 0


def test_formula_equals_enumeration_spot_checks():
    cases = [
        (0, 2, [[2], [2]]),
        (0, 3, [[3], [3]]),
        (0, 3, [[2, 1], [2, 1], [3]]),
        (1, 2, [[2], [2]]),
        (1, 3, [[2, 1], [2, 1]]),
        (0, 4, [[2, 2], [4]]),
        (0, 4, [[2, 1, 1], [2, 1, 1], [3, 1]]),
        (1, 4, [[2, 1, 1]]),
    ]
    for g, n, profs in cases:
        p = HurwitzProblem(g, n, tuple(Partition(x) for x in profs))
        assert hurwitz_disconnected(p) * factorial(n) == tuple_count(p)


def _orbit_partition(n, perms):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return tuple(sorted(tuple(b) for b in blocks.values()))


def _split_parts(parts, sizes):
    """All ways to split the multiset of parts into groups with the given sums."""
    if len(sizes) == 1:
        if sum(parts) == sizes[0]:
            yield (tuple(sorted(parts, reverse=True)),)
        return
    first, rest = sizes[0], sizes[1:]
    seen = set()
    indices = range(len(parts))
    for r in range(len(parts) + 1):
        for combo in itertools.combinations(indices, r):
            chosen = tuple(sorted((parts[i] for i in combo), reverse=True))
            if sum(chosen) != first or chosen in seen:
                continue
            seen.add(chosen)
            remaining = list(parts)
            for i in sorted(combo, reverse=True):
                del remaining[i]
            for tail in _split_parts(remaining, rest):
                yield (chosen,) + tail


def test_disconnected_splits_into_connected_pieces():
    """Exponential formula at fixed profiles: bucket tuples by their orbit
    partition, and recount each bucket as a product of transitive counts over
    the blocks, summed over cycle distributions."""
    cases = [
        (3, [[2, 1], [2, 1]]),
        (4, [[2, 1, 1], [2, 1, 1]]),
        (4, [[2, 2], [2, 2]]),
        (4, [[2, 1, 1], [2, 1, 1], [2, 1, 1], [2, 1, 1]]),
    ]
    for n, profs in cases:
        profiles = [Partition(x) for x in profs]
        class_lists = [
            [p for p in itertools.permutations(range(n)) if cycle_type(p) == mu]
            for mu in profiles
        ]
        ident = tuple(range(n))
        buckets = {}
        for tup in itertools.product(*class_lists):
            prod = ident
            for s in tup:
                prod = tuple(prod[s[i]] for i in range(n))
            if prod != ident:
                continue
            key = _orbit_partition(n, tup)
            buckets[key] = buckets.get(key, 0) + 1
        assert sum(buckets.values()) == tuple_count(HurwitzProblem(0, n, tuple(profiles)))
        for blocks, count in buckets.items():
            sizes = [len(b) for b in blocks]
            total = 0
            for distribution in itertools.product(
                *[_split_parts(list(mu), sizes) for mu in profiles]
            ):
                product = 1
                for j, m in enumerate(sizes):
                    block_profiles = tuple(Partition(dist[j]) for dist in distribution)
                    product *= transitive_tuple_count(HurwitzProblem(0, m, block_profiles))
                    if product == 0:
                        break
                total += product
            assert total == count, (n, profs, blocks)


def test_branch_degree():
    assert branch_degree(0, -3, 4, []) == 0  # four disjoint lines over the line
    assert branch_degree(0, 0, 2, []) == 2
    assert branch_degree(0, 1, 2, []) == 4
    with pytest.raises(InfeasibleError):
        branch_degree(1, 0, 2, [])
    with pytest.raises(ValidationError):
        branch_degree(0, 0, 3, [[2]])


def test_branch_degree_even_for_unramified_markings():
    # with a full trivial profile over one marking, m = 2h - 2 + 2n stays even
    for n in range(1, 5):
        for h in range(0, 3):
            m = branch_degree(0, h, n, [[1] * n])
            assert m == (2 * h - 2) + 2 * n
            assert m % 2 == 0


def test_simple_hurwitz_values():
    assert simple_hurwitz(0, 0, 2, [], connected=True) == Fraction(1, 2)
    assert simple_hurwitz(0, 0, 3, [], connected=True) == 4
    assert simple_hurwitz(0, 0, 1, [], connected=True) == 1
    with pytest.raises(InfeasibleError):
        simple_hurwitz(0, 1, 1, [])


def test_capacity_errors():
    with pytest.raises(CapacityError):
        hurwitz_connected(HurwitzProblem(0, 7, ()))
