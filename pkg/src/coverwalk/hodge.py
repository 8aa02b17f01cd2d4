"""Closed-form generating series of one-pointed Hodge integrals.

The two-parameter family reduces to a rational power of the normalized sine:
the series for parameters (a, b) equals sin_half_norm ** (a + b), and the
coefficient of u^(2h) is the corresponding weighted integral over the moduli
of genus-h one-pointed curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .series import Series, log_series, rational_power, sin_half_norm


@dataclass(frozen=True)
class HodgeSeries:
    a: Fraction
    b: Fraction
    series: Series

    def coefficient(self, exponent: int):
        return self.series.coeff(exponent)


def hodge_series(a, b, order: int) -> HodgeSeries:
    """The generating series for parameters (a, b); depends only on a + b."""
    a, b = Fraction(a), Fraction(b)
    if order < 2:
        raise ValidationError("order must be >= 2")
    return HodgeSeries(a, b, rational_power(sin_half_norm(order), a + b))


def hodge_integral(h: int, a, b) -> Fraction:
    """Coefficient of u^(2h): the genus-h one-pointed integral at (a, b)."""
    if h < 1:
        raise ValidationError("h must be >= 1")
    c = hodge_series(a, b, 2 * h + 1).coefficient(2 * h)
    assert c.is_rational()
    return c.re


def verify_hodge_identities(a, b, order: int) -> dict:
    """Check F(a,b)*F(-a,-b) = 1 and F(a,b)*F(-a,1-b) = F(0,1) by series arithmetic.

    Returns the maximal order to which each identity holds (== order when exact).
    """
    a, b = Fraction(a), Fraction(b)
    f = hodge_series(a, b, order).series
    inv_product = f * hodge_series(-a, -b, order).series
    shift_product = f * hodge_series(-a, 1 - b, order).series
    base = sin_half_norm(order)

    def holds_to(series: Series, target: Series) -> int:
        for e in range(series.order):
            if series.coeff(e) != target.coeff(e):
                return e
        return series.order

    one = Series.one("u", order)
    first = holds_to(inv_product, one)
    second = holds_to(shift_product, base)
    return {
        "inverse_identity_order": first,
        "shift_identity_order": second,
        "holds": first >= order and second >= order,
    }


def log_sin_half_norm(order: int) -> Series:
    """log of the normalized sine series; exponentiates back to sin_half_norm."""
    if order < 2:
        raise ValidationError("order must be >= 2")
    return log_series(sin_half_norm(order))
