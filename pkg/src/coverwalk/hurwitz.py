"""Weighted counts of branched covers of a curve with prescribed monodromy.

Two independent routes are exposed: the character-theoretic count
(`hurwitz_disconnected`, any degree the character table can handle) and direct
enumeration over permutation tuples (`tuple_count` / `transitive_tuple_count`,
small degree only).  Counts are stack-weighted: tuples divided by n!.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import factorial

from .characters import character_table
from .errors import CapacityError, InfeasibleError, ValidationError
from .partitions import Partition, centralizer_order, class_size

BRUTE_FORCE_DEGREE_BOUND = 6
_BRUTE_WORK_LIMIT = 20_000_000


# permutations are tuples p with p[i] = image of i


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose(p, q):
    """p after q."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse_perm(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycle_type(p) -> Partition:
    n = len(p)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            l += 1
        lens.append(l)
    return Partition(lens)


def perm_from_cycle_type(mu: Partition) -> tuple[int, ...]:
    """A representative permutation with the given cycle type."""
    out = []
    start = 0
    for part in mu:
        out.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return tuple(out)


@cache
def _symmetric_group(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(n)))


@cache
def _classes(n: int) -> dict:
    by_type: dict = {}
    for p in _symmetric_group(n):
        by_type.setdefault(cycle_type(p), []).append(p)
    return by_type


@cache
def _commutator_counts(n: int) -> dict:
    """Histogram h -> #{(a, b) : a b a^-1 b^-1 = h} over S_n x S_n."""
    counts: dict = {}
    group = _symmetric_group(n)
    for a in group:
        a_inv = inverse_perm(a)
        for b in group:
            h = compose(compose(a, b), compose(a_inv, inverse_perm(b)))
            counts[h] = counts.get(h, 0) + 1
    return counts


@cache
def _genus_counts(n: int, g: int) -> dict:
    """Histogram h -> #{(a_1,b_1,...,a_g,b_g) : prod [a_i,b_i] = h}."""
    if g == 0:
        return {identity_perm(n): 1}
    if g == 1:
        return _commutator_counts(n)
    prev = _genus_counts(n, g - 1)
    one = _commutator_counts(n)
    counts: dict = {}
    for h1, c1 in prev.items():
        for h2, c2 in one.items():
            h = compose(h1, h2)
            counts[h] = counts.get(h, 0) + c1 * c2
    return counts


def _is_transitive(n: int, gens) -> bool:
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            ri, rj = find(i), find(g[i])
            if ri != rj:
                parent[ri] = rj
    root = find(0)
    return all(find(i) == root for i in range(n))


@dataclass(frozen=True)
class HurwitzProblem:
    """Target genus, cover degree and ramification profiles over marked points."""

    g_target: int
    n: int
    profiles: tuple[Partition, ...]
    connected: bool = False

    def __post_init__(self):
        if self.g_target < 0 or self.n < 1:
            raise ValidationError("need g_target >= 0 and n >= 1")
        for mu in self.profiles:
            if Partition(mu).n != self.n:
                raise ValidationError(f"profile {mu} is not a partition of {self.n}")
        object.__setattr__(self, "profiles", tuple(Partition(mu) for mu in self.profiles))


def _check_brute_budget(p: HurwitzProblem):
    if p.n > BRUTE_FORCE_DEGREE_BOUND:
        raise CapacityError(f"brute force bounded at degree {BRUTE_FORCE_DEGREE_BOUND}")
    work = factorial(p.n) ** (2 * p.g_target)
    for mu in p.profiles[:-1]:
        work *= class_size(mu)
    if work > _BRUTE_WORK_LIMIT:
        raise CapacityError("brute-force budget exceeded for this input")


def tuple_count(p: HurwitzProblem) -> int:
    """#{(a_1,b_1,..,a_g,b_g, s_1,..,s_k) : s_i of type mu_i, prod [a,b] prod s = id}.

    Enumerated directly from permutations; the genus part is folded in through
    a precomputed commutator histogram.
    """
    _check_brute_budget(p)
    n = p.n
    genus_hist = _genus_counts(n, p.g_target)
    if not p.profiles:
        return genus_hist.get(identity_perm(n), 0)
    class_lists = [_classes(n)[mu] for mu in p.profiles]
    last_type = p.profiles[-1]
    total = 0

    def rec(idx, prefix):
        nonlocal total
        if idx == len(class_lists) - 1:
            # last factor is forced: prefix * s_last must be killed by the genus part
            for h, c in genus_hist.items():
                s_last = compose(inverse_perm(prefix), inverse_perm(h))
                if cycle_type(s_last) == last_type:
                    total += c
            return
        for s in class_lists[idx]:
            rec(idx + 1, compose(prefix, s))

    rec(0, identity_perm(n))
    return total


def transitive_tuple_count(p: HurwitzProblem) -> int:
    """Same count restricted to tuples whose entries generate a transitive group."""
    _check_brute_budget(p)
    n = p.n
    group = _symmetric_group(n)
    pair_lists = [group] * (2 * p.g_target)
    class_lists = [_classes(n)[mu] for mu in p.profiles]
    total = 0
    if class_lists:
        heads, last_list = class_lists[:-1], class_lists[-1]
        last_type = p.profiles[-1]
        last_set = set(last_list)
        for pairs in itertools.product(*pair_lists):
            comm = identity_perm(n)
            for i in range(0, len(pairs), 2):
                a, b = pairs[i], pairs[i + 1]
                comm = compose(comm, compose(compose(a, b), compose(inverse_perm(a), inverse_perm(b))))
            for sigmas in itertools.product(*heads):
                prod = comm
                for s in sigmas:
                    prod = compose(prod, s)
                s_last = inverse_perm(prod)
                if cycle_type(s_last) != last_type:
                    continue
                assert s_last in last_set
                if _is_transitive(n, pairs + sigmas + (s_last,)):
                    total += 1
        return total
    for pairs in itertools.product(*pair_lists):
        prod = identity_perm(n)
        for i in range(0, len(pairs), 2):
            a, b = pairs[i], pairs[i + 1]
            prod = compose(prod, compose(compose(a, b), compose(inverse_perm(a), inverse_perm(b))))
        if prod == identity_perm(n) and _is_transitive(n, pairs):
            total += 1
    return total


def hurwitz_disconnected(p: HurwitzProblem) -> Fraction:
    """Stack-weighted count of possibly-disconnected covers, by the character sum.

    value = (n!)^(2g-2) * prod |C_i| * sum_lam prod_i chi^lam(C_i) / (dim lam)^(k+2g-2)
    """
    n, g = p.n, p.g_target
    table = character_table(n)
    k = len(p.profiles)
    total = Fraction(0)
    for lam in table.irreps:
        dim = table.dimension(lam)
        term = Fraction(1, dim ** (k + 2 * g - 2)) if k + 2 * g - 2 >= 0 else Fraction(dim ** -(k + 2 * g - 2))
        for mu in p.profiles:
            term *= table.chi(lam, mu)
        total += term
    pref = Fraction(factorial(n)) ** (2 * g - 2)
    for mu in p.profiles:
        pref *= class_size(mu)
    return pref * total


def hurwitz_connected(p: HurwitzProblem) -> Fraction:
    """Stack-weighted count of connected covers, by transitive tuple enumeration."""
    return Fraction(transitive_tuple_count(p), factorial(p.n))


def hurwitz_count(p: HurwitzProblem) -> Fraction:
    return hurwitz_connected(p) if p.connected else hurwitz_disconnected(p)


def branch_degree(g_target: int, h_source: int, n: int, profiles) -> int:
    """Degree of the branching divisor forced by Riemann-Hurwitz.

    Source genus h uses the disconnected convention h = 1 - chi(O), so h may be
    negative.  m = (2h-2) - n(2g-2) - sum age(profile).
    """
    profiles = [Partition(mu) for mu in profiles]
    for mu in profiles:
        if mu.n != n:
            raise ValidationError(f"profile {mu} is not a partition of {n}")
    m = (2 * h_source - 2) - n * (2 * g_target - 2) - sum(mu.age() for mu in profiles)
    if m < 0:
        raise InfeasibleError(f"negative branching degree m={m}: no such cover")
    return m


def simple_hurwitz(g_target: int, h_source: int, n: int, profiles, connected: bool = False) -> Fraction:
    """Count covers with the given profiles plus simple branching elsewhere.

    The number of extra simple points is forced by Riemann-Hurwitz; they are
    unordered, which the class-wise tuple count already accounts for.
    """
    m = branch_degree(g_target, h_source, n, profiles)
    if m > 0 and n < 2:
        raise InfeasibleError("simple branching impossible at degree < 2")
    simple = Partition([2] + [1] * (n - 2)) if m > 0 else None
    full = tuple(Partition(mu) for mu in profiles) + tuple([simple] * m if simple else [])
    problem = HurwitzProblem(g_target, n, full, connected)
    return hurwitz_count(problem)
