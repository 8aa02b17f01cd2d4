"""Integer partitions, conjugacy-class sizes and centralizer orders in S_n."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import ValidationError


class Partition(tuple):
    """A partition of n, stored as a non-increasing tuple of positive parts.

    The empty partition is the unique partition of 0.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValidationError(f"partition parts must be >= 1, got {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def age(self) -> int:
        """n minus the number of parts; the degree shift of the twisted sector."""
        return self.n - len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        cols = [sum(1 for p in self if p > i) for i in range(self[0])]
        return Partition(cols)

    def __repr__(self):
        return f"Partition{tuple(self)}"


@dataclass(frozen=True)
class MultiplicityForm:
    """A partition written as (value, multiplicity) pairs with strictly decreasing values."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        values = [v for v, _ in self.pairs]
        if values != sorted(set(values), reverse=True):
            raise ValidationError("values must be strictly decreasing")
        if any(v < 1 or m < 1 for v, m in self.pairs):
            raise ValidationError("values and multiplicities must be >= 1")

    @property
    def n(self) -> int:
        return sum(v * m for v, m in self.pairs)

    def to_partition(self) -> Partition:
        parts = []
        for v, m in self.pairs:
            parts.extend([v] * m)
        return Partition(parts)

    @staticmethod
    def from_partition(mu: Partition) -> "MultiplicityForm":
        pairs = []
        for p in mu:
            if pairs and pairs[-1][0] == p:
                pairs[-1][1] += 1
            else:
                pairs.append([p, 1])
        return MultiplicityForm(tuple((v, m) for v, m in pairs))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, in reverse-lexicographic order, starting with (n)."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    if n == 0:
        return [Partition()]
    out = []
    cur = (n,)
    out.append(Partition(cur))
    while True:
        # find rightmost part > 1, decrement it and repack the tail greedily
        i = len(cur) - 1
        while i >= 0 and cur[i] == 1:
            i -= 1
        if i < 0:
            return out
        rem = len(cur) - i
        cur = cur[:i] + (cur[i] - 1,)
        while rem > 0:
            nxt = min(cur[-1], rem)
            cur += (nxt,)
            rem -= nxt
        out.append(Partition(cur))


def age(mu: Partition) -> int:
    return Partition(mu).age()


def aut_order(mu: Partition) -> int:
    """Order of the group permuting equal parts: prod of m_t!."""
    out = 1
    for _, m in MultiplicityForm.from_partition(Partition(mu)).pairs:
        out *= factorial(m)
    return out


def normal_order(mu: Partition) -> int:
    """Order of the product of cyclic groups attached to the parts: prod of v^m."""
    out = 1
    for v, m in MultiplicityForm.from_partition(Partition(mu)).pairs:
        out *= v**m
    return out


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod v^m * m!, the order of the centralizer of a permutation of type mu."""
    mu = Partition(mu)
    if mu.n < 1:
        raise ValidationError("centralizer_order needs a partition of n >= 1")
    return normal_order(mu) * aut_order(mu)


def class_size(mu: Partition) -> int:
    """Number of permutations in S_n with cycle type mu: n! / z_mu."""
    mu = Partition(mu)
    z = centralizer_order(mu)
    size, rem = divmod(factorial(mu.n), z)
    assert rem == 0
    return size
