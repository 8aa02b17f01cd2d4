"""Normalization prefactors, analytic continuation and the two-sided bridge.

One side carries series in u, the other in s with y = s^2.  Both sides of the
bridge apply their published prefactors to the same payload; the ratio of the
two end results depends only on the prefactors, never on the payload, and is
the measured consistency constant for a given exponent c and branch unit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PadeError, ValidationError
from .series import (
    GaussianRational,
    I,
    ONE,
    Series,
    UNITS,
    pade,
    sin_half_norm,
    subst_exp,
    y_to_s,
)

GW = "gw"
DT = "dt"


@dataclass(frozen=True)
class NormalizedSeries:
    """A payload series tagged with the bracket metadata it transforms under.

    side "gw" carries a u-series, side "dt" an s-series (s = y^(1/2)).
    c is the pairing of the curve class with the anticanonical degree,
    genus/points/ages describe the insertions.  Transforms only ever touch
    the payload.
    """

    side: str
    c: int
    genus: int
    points: int
    ages: tuple[int, ...]
    payload: Series

    def __post_init__(self):
        if self.side not in (GW, DT):
            raise ValidationError("side must be 'gw' or 'dt'")
        if self.c < 0:
            raise ValidationError("c must be >= 0")
        want = "u" if self.side == GW else "s"
        if self.payload.var != want:
            raise ValidationError(f"side {self.side} expects a series in {want}")

    def with_payload(self, payload: Series) -> "NormalizedSeries":
        return replace(self, payload=payload)


def half_power_prefactor(c: int) -> Series:
    """(s - s^(-1))^c * (i*s)^(-c) as an exact Laurent polynomial in s.

    Only even powers of s appear, so this is a Laurent polynomial in y.
    """
    if c < 0:
        raise ValidationError("c must be >= 0")
    base = Series("s", {1: ONE, -1: -ONE})
    return (base**c) * Series.monomial("s", -c, I ** (-c))


def neg_sqrt_prefactor(c: int) -> Series:
    """(-y)^(-c/2) realized as (i*s)^(-c) under the convention (-y)^(1/2) = i*s."""
    return Series.monomial("s", -c, I ** (-c))


def gw_normalize(x: NormalizedSeries, invert: bool = False, order=None) -> NormalizedSeries:
    """Multiply a u-side payload by sin_half_norm^(+-c)."""
    if x.side != GW:
        raise ValidationError("gw_normalize acts on the gw side")
    if x.c == 0:
        return x
    order = order if order is not None else x.payload.order
    if order is None:
        raise ValidationError("normalizing an exact payload needs an explicit order")
    factor = sin_half_norm(order + max(0, -2 * x.payload.floor)) ** x.c
    if invert:
        factor = factor.invert(order + max(0, -2 * x.payload.floor))
    return x.with_payload((x.payload * factor).truncate(order) if x.payload.order is None or x.payload.order > order else x.payload * factor)


def dt_normalize(x: NormalizedSeries, invert: bool = False, order=None) -> NormalizedSeries:
    """Multiply an s-side payload by [(s - s^(-1))^c (i s)^(-c)]^(+-1)."""
    if x.side != DT:
        raise ValidationError("dt_normalize acts on the dt side")
    if x.c == 0:
        return x
    pref = half_power_prefactor(x.c)
    if invert:
        order = order if order is not None else x.payload.order
        if order is None:
            raise ValidationError("inverting the prefactor needs an explicit order")
        pref = pref.invert(order + max(0, -x.payload.floor) + 2 * x.c)
    return x.with_payload(x.payload * pref)


def genus_regrade(x: NormalizedSeries) -> NormalizedSeries:
    """Shift a u-side payload by u^(2*points - sum(ages)).

    Converts between genus-indexed and branch-degree-indexed exponents.
    """
    if x.side != GW:
        raise ValidationError("genus_regrade acts on the gw side")
    k = 2 * x.points - sum(x.ages)
    return x if k == 0 else x.with_payload(x.payload.shift(k))


def euler_regrade(x: NormalizedSeries) -> NormalizedSeries:
    """Shift an s-side payload by y^((genus-1)*points) = s^(2(genus-1)*points).

    Converts between Euler-characteristic and third-Chern-character indexing.
    """
    if x.side != DT:
        raise ValidationError("euler_regrade acts on the dt side")
    k = 2 * (x.genus - 1) * x.points
    return x if k == 0 else x.with_payload(x.payload.shift(k))


def crc_continue(x: Series, pmax: int, qmax: int, unit: GaussianRational = I, order: int = 16) -> Series:
    """Rational reconstruction followed by evaluation at s = unit * e^(iu/2).

    The input may be a y-series or an s-series; y embeds by exponent doubling.
    Each parity class of s-exponents is reconstructed separately as a rational
    function of y, then continued exactly.  Fails when the input is not the
    expansion of a rational function at the requested degrees.
    """
    unit = GaussianRational.of(unit)
    if unit not in UNITS:
        raise ValidationError("unit must be one of 1, -1, i, -i")
    if x.var == "y":
        x = y_to_s(x)
    if x.var != "s":
        raise ValidationError("crc_continue expects a series in y or s")
    pad = order + 2 * qmax + 2 * pmax + 4
    out = Series.zero("u", pad)
    for parity in (0, 1):
        exps = [e for e in x.coeffs if e % 2 == parity]
        if not exps:
            continue
        base = min(exps)
        in_y = Series(
            "y",
            {(e - base) // 2: x.coeffs[e] for e in exps},
            None if x.order is None else (x.order - base + 1) // 2,
        )
        approx = pade(in_y, pmax, qmax)
        if approx.residual_exponent is not None:
            raise PadeError(
                f"not rational to degrees ({pmax},{qmax}): first mismatch at y^{approx.residual_exponent}"
            )
        num_s = y_to_s(approx.numerator_series("y")).shift(base)
        den_s = y_to_s(approx.denominator_series("y"))
        num_u = subst_exp(num_s, unit, pad)
        den_u = subst_exp(den_s, unit, pad)
        out = out + num_u * den_u.invert(pad)
    if out.order is None or out.order >= order:
        out = out.truncate(order)
    return out


def bridge_pipelines(
    c: int,
    genus: int,
    points: int,
    ages,
    test_payload: Series,
    order: int = 16,
    unit: GaussianRational = I,
    pmax: int = 4,
    qmax: int = 4,
) -> tuple[Series, Series, Series]:
    """Run both transform routes on one payload; returns (dt, gw, ratio).

    Route one: the half-power and inverse-square-root prefactors, the Euler
    regrading, then continuation.  Route two: the square-root prefactor and
    continuation, the u-side monomial (-iu)^c, the sine normalization, then the
    genus regrading.  The ratio is payload-independent; it records how the
    prefactor bookkeeping closes up for this c and branch unit.
    """
    ages = tuple(int(a) for a in ages)
    payload_s = y_to_s(test_payload) if test_payload.var == "y" else test_payload
    meta = dict(c=c, genus=genus, points=points, ages=ages)

    dt_ns = NormalizedSeries(side=DT, payload=payload_s, **meta)
    dt_ns = euler_regrade(dt_normalize(dt_ns))
    route_dt = crc_continue(dt_ns.payload, pmax + c, qmax, unit, order)

    gw_pre = payload_s * neg_sqrt_prefactor(c)
    continued = crc_continue(gw_pre, pmax, qmax, unit, order)
    continued = continued * Series.monomial("u", c, (-I) ** c)
    gw_ns = NormalizedSeries(side=GW, payload=continued, **meta)
    gw_ns = genus_regrade(gw_normalize(gw_ns))
    route_gw = gw_ns.payload

    return route_dt, route_gw, route_dt * route_gw.invert()


def equivalence_check(
    c: int,
    genus: int,
    points: int,
    ages,
    test_payload: Series,
    order: int = 16,
    unit: GaussianRational = I,
    pmax: int = 4,
    qmax: int = 4,
) -> Series:
    """The ratio of the two transform routes applied to one payload."""
    return bridge_pipelines(c, genus, points, ages, test_payload, order, unit, pmax, qmax)[2]


def shift_potential(table: "CorrelatorTable", mu: dict) -> "CorrelatorTable":
    """Formal substitution t -> t + mu in a finite correlator table.

    mu maps a positive degree index to a linear combination of insertion
    labels.  New entries arise by feeding mu-insertions into old correlators,
    an ordered k-tuple sum with the 1/k! symmetry factor, which collapses to
    1/prod(multiplicities!) per multiset of sources.
    """
    sources = []
    for deg, combo in mu.items():
        deg = int(deg)
        if deg < 1:
            raise ValidationError("mu degree indices must be >= 1")
        for label, coeff in combo:
            coeff = GaussianRational.of(coeff)
            if coeff:
                sources.append((str(label), deg, coeff))
    out: dict = {}

    def add_entry(key, value):
        cur = out.get(key, None)
        new = value if cur is None else cur + value
        if new:
            out[key] = new
        elif cur is not None:
            del out[key]

    for (labels, deg), value in table.entries.items():
        counted = list(labels)
        # choose, for each source, how many insertions it supplies
        def distribute(idx, remaining, extra_deg, factor):
            if idx == len(sources):
                add_entry((tuple(sorted(remaining)), deg + extra_deg), value * factor)
                return
            label, sdeg, coeff = sources[idx]
            avail = remaining.count(label)
            distribute(idx + 1, remaining, extra_deg, factor)
            taken = list(remaining)
            f = factor
            for m in range(1, avail + 1):
                taken.remove(label)
                f = f * coeff * Fraction(1, m)
                distribute(idx + 1, list(taken), extra_deg + m * sdeg, f)

        distribute(0, counted, 0, ONE)
    return CorrelatorTable(out)


@dataclass(frozen=True, eq=False)
class CorrelatorTable:
    """Finite map (insertion multiset, degree index) -> exact scalar."""

    entries: dict

    def __post_init__(self):
        clean = {}
        for (labels, deg), value in self.entries.items():
            value = GaussianRational.of(value)
            if not value:
                continue
            key = (tuple(sorted(str(l) for l in labels)), int(deg))
            if key[1] < 0:
                raise ValidationError("degree indices must be >= 0")
            clean[key] = clean.get(key, GaussianRational.of(0)) + value
        object.__setattr__(self, "entries", clean)

    def value(self, labels, deg) -> GaussianRational:
        return self.entries.get((tuple(sorted(str(l) for l in labels)), int(deg)), GaussianRational.of(0))

    def __eq__(self, other):
        if not isinstance(other, CorrelatorTable):
            return NotImplemented
        return self.entries == other.entries


def walls(d: int) -> list[tuple[int, str]]:
    """Integer chamber boundaries for total degree d, as (d0, symbolic epsilon)."""
    if d < 1:
        raise ValidationError("d must be >= 1")
    return [(d0, f"-1/ln({d0})") for d0 in range(2, d + 1)]
