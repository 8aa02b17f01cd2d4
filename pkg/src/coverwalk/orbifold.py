"""Graded basis bookkeeping for orbifold cohomology of symmetric products.

A basis element is a cohomology-weighted partition: parts of the underlying
partition carry labels from a fixed graded label set, up to permutation of
equal parts.  Degrees shift by twice the age of the partition.  The module
also provides the rescaling onto the corresponding Hilbert-scheme basis and
the quantum relabeling rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError, ValidationError
from .partitions import MultiplicityForm, Partition, partitions_of
from .series import GaussianRational, I

_BASIS_CAP = 500_000


@dataclass(frozen=True)
class GradedLabelSet:
    """Ordered basis labels of an even-graded cohomology, as (id, degree) pairs."""

    labels: tuple[tuple[str, int], ...]

    def __post_init__(self):
        ids = [l for l, _ in self.labels]
        if len(set(ids)) != len(ids):
            raise ValidationError("label ids must be distinct")
        for _, d in self.labels:
            if d < 0:
                raise ValidationError("degrees must be >= 0")
            if d % 2 != 0:
                raise ValidationError("odd-degree labels are not supported")

    @staticmethod
    def from_betti(betti) -> "GradedLabelSet":
        """Expand Betti numbers (b_0, b_1, ...) into anonymous labels."""
        labels = []
        for d, b in enumerate(betti):
            if b and d % 2 != 0:
                raise ValidationError("odd Betti numbers are not supported")
            for j in range(b):
                labels.append((f"d{d}_{j}", d))
        return GradedLabelSet(tuple(labels))

    def degree(self, index: int) -> int:
        return self.labels[index][1]

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class WeightedPartition:
    """Pairs (part, label index), sorted descending by part then label index."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.pairs, key=lambda t: (-t[0], -t[1])))
        object.__setattr__(self, "pairs", ordered)
        Partition([p for p, _ in ordered])  # validates part positivity

    @property
    def partition(self) -> Partition:
        return Partition([p for p, _ in self.pairs])

    @property
    def n(self) -> int:
        return sum(p for p, _ in self.pairs)


def orbifold_degree(w: WeightedPartition, labels: GradedLabelSet) -> int:
    """Sum of label degrees shifted by twice the age of the partition."""
    return sum(labels.degree(i) for _, i in w.pairs) + 2 * w.partition.age()


def nakajima_degree(w: WeightedPartition, labels: GradedLabelSet) -> int:
    """Degree of the corresponding Hilbert-scheme class: sum deg + 2(part - 1)."""
    return sum(labels.degree(i) + 2 * (p - 1) for p, i in w.pairs)


def orbifold_basis(n: int, labels: GradedLabelSet) -> list[tuple[WeightedPartition, int]]:
    """One basis element per orbit of label assignments under equal-part swaps."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    idxs = range(len(labels))
    out = []
    for mu in partitions_of(n):
        groups = MultiplicityForm.from_partition(mu).pairs
        size = 1
        for _, m in groups:
            size *= _multiset_count(len(labels), m)
        if len(out) + size > _BASIS_CAP:
            raise CapacityError("orbifold basis too large to enumerate")
        shift = 2 * mu.age()
        choices = [itertools.combinations_with_replacement(idxs, m) for _, m in groups]
        for combo in itertools.product(*choices):
            pairs = []
            for (value, _), chosen in zip(groups, combo):
                pairs.extend((value, i) for i in chosen)
            w = WeightedPartition(tuple(pairs))
            deg = sum(labels.degree(i) for _, i in pairs) + shift
            out.append((w, deg))
    return out


def _multiset_count(k: int, m: int) -> int:
    num, den = 1, 1
    for j in range(m):
        num *= k + j
        den *= j + 1
    return num // den


def poincare_orbifold(n: int, labels: GradedLabelSet) -> dict[int, int]:
    """Graded dimensions, as a map degree -> count.

    Assembled per partition from the multiset degree generating polynomials,
    so large label sets never require listing the basis.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    # h[m][d] = number of size-m label multisets of total degree d,
    # built by a DP over labels (choose j copies of each in turn)
    h = [{0: 1}] + [dict() for _ in range(n)]
    for _, d in labels.labels:
        for m in range(n, 0, -1):
            for j in range(1, m + 1):
                for dd, cnt in list(h[m - j].items()):
                    h[m][dd + j * d] = h[m].get(dd + j * d, 0) + cnt
    out: dict[int, int] = {}
    for mu in partitions_of(n):
        groups = MultiplicityForm.from_partition(mu).pairs
        poly = {0: 1}
        for _, m in groups:
            nxt: dict[int, int] = {}
            for d1, c1 in poly.items():
                for d2, c2 in h[m].items():
                    nxt[d1 + d2] = nxt.get(d1 + d2, 0) + c1 * c2
            poly = nxt
        shift = 2 * mu.age()
        for d, c in poly.items():
            out[d + shift] = out.get(d + shift, 0) + c
    return out


def to_nakajima(w: WeightedPartition) -> tuple[GaussianRational, WeightedPartition]:
    """Rescale an orbit-basis class onto the Hilbert-scheme basis: (-i)^age."""
    scalar = (-I) ** w.partition.age()
    return scalar, w


def quantum_coefficient(k: int) -> tuple[int, int]:
    """Relabeling rule for a y^k tag: sign (-1)^k and an e^(iku) tag exponent."""
    return ((-1) ** int(k), int(k))


def quantum_relabel(w: WeightedPartition, k: int) -> tuple[GaussianRational, WeightedPartition, int]:
    """Compose the y^k rule with the basis rescaling: total scalar and u-tag."""
    sign, tag = quantum_coefficient(k)
    scalar, label = to_nakajima(w)
    return (scalar * sign, label, tag)
