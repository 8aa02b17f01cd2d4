"""Exact character tables of symmetric groups via the border-strip recursion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import factorial

from .errors import CapacityError, ValidationError
from .partitions import Partition, partitions_of

DEFAULT_BOUND = 14


def _beta_set(lam: tuple[int, ...]) -> tuple[int, ...]:
    # first-column hook lengths: lam_i + (l - 1 - i), strictly decreasing
    l = len(lam)
    return tuple(lam[i] + (l - 1 - i) for i in range(l))


def _partition_from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    l = len(beta)
    parts = [beta[i] - (l - 1 - i) for i in range(l)]
    return tuple(p for p in parts if p > 0)


@cache
def _char_value(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        # removing a k-strip = lowering one beta number; sign counts jumped entries
        height = sum(1 for x in beta if nb < x < b)
        new_beta = [x for x in beta if x != b] + [nb]
        new_lam = _partition_from_beta(new_beta)
        total += (-1) ** height * _char_value(new_lam, rest)
    return total


def irrep_dimension(lam: Partition) -> int:
    """Dimension of the irreducible labelled by lam, by the hook-length formula."""
    lam = Partition(lam)
    conj = lam.conjugate()
    d = factorial(lam.n)
    for i in range(len(lam)):
        for j in range(lam[i]):
            hook = (lam[i] - j) + (conj[j] - i) - 1
            q, r = divmod(d, hook)
            assert r == 0
            d = q
    return d


@dataclass(frozen=True)
class CharTable:
    """Full integer character table of S_n.

    Rows are irreducible labels, columns are class labels, both partitions of n
    in reverse-lexicographic order.
    """

    n: int
    irreps: tuple[Partition, ...]
    classes: tuple[Partition, ...]
    values: dict

    def chi(self, lam: Partition, mu: Partition) -> int:
        return self.values[(Partition(lam), Partition(mu))]

    def dimension(self, lam: Partition) -> int:
        return self.chi(lam, Partition([1] * self.n))


def character_table(n: int, bound: int = DEFAULT_BOUND) -> CharTable:
    if n < 1:
        raise ValidationError("character_table needs n >= 1")
    if n > bound:
        raise CapacityError(f"character table bound exceeded: n={n} > {bound}")
    labels = partitions_of(n)
    values = {}
    for lam in labels:
        for mu in labels:
            values[(lam, mu)] = _char_value(tuple(lam), tuple(mu))
    table = CharTable(n, tuple(labels), tuple(labels), values)
    for lam in labels:
        # the recursion and the hook-length formula must agree on dimensions
        assert table.dimension(lam) == irrep_dimension(lam)
    return table
