"""Truncated formal Laurent series over the Gaussian rationals.

All coefficients are exact elements of Q(i).  A series carries a truncation
order T: coefficients at exponents >= T are unknown.  order None means the
series is exact (every unstored coefficient is genuinely zero), which is how
prefactors and reconstructed rational functions are represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import PadeError, ValidationError

VARS = ("u", "y", "s", "q", "z")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ValidationError(f"expected exact rational, got {type(x).__name__}")


class GaussianRational:
    """Element of Q(i) with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_frac(x))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GaussianRational.of(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_rational(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else ''}{self.im}*i)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

UNITS = (ONE, -ONE, I, -I)


class Series:
    """Laurent series in one variable, truncated at `order` (None = exact)."""

    __slots__ = ("var", "coeffs", "order", "floor")

    def __init__(self, var: str, coeffs=None, order=None, floor=None):
        if var not in VARS:
            raise ValidationError(f"unknown variable tag {var!r}")
        clean = {}
        for e, c in (coeffs or {}).items():
            c = GaussianRational.of(c)
            if c:
                clean[int(e)] = c
        if order is not None:
            order = int(order)
            bad = [e for e in clean if e >= order]
            if bad:
                raise ValidationError(f"stored exponent {max(bad)} >= order {order}")
        if floor is None:
            floor = min(clean) if clean else 0
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "floor", min(floor, *clean) if clean else floor)

    def __setattr__(self, *a):
        raise AttributeError("Series is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(var: str, order=None) -> "Series":
        return Series(var, {}, order)

    @staticmethod
    def one(var: str, order=None) -> "Series":
        return Series(var, {0: ONE}, order)

    @staticmethod
    def monomial(var: str, exp: int, coeff=ONE, order=None) -> "Series":
        return Series(var, {exp: GaussianRational.of(coeff)}, order)

    # -- basic queries ------------------------------------------------------

    def coeff(self, e: int) -> GaussianRational:
        if self.order is not None and e >= self.order:
            raise ValidationError(f"coefficient of exponent {e} unknown (order {self.order})")
        return self.coeffs.get(e, ZERO)

    def known(self, e: int) -> bool:
        return self.order is None or e < self.order

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Lowest exponent with a nonzero stored coefficient, or None if zero."""
        return min(self.coeffs) if self.coeffs else None

    def support(self):
        return sorted(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs and self.order == other.order

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.coeffs.items(), key=lambda t: t[0])), self.order))

    def __repr__(self):
        terms = [f"{c!r}*{self.var}^{e}" for e, c in sorted(self.coeffs.items())]
        body = " + ".join(terms) if terms else "0"
        tail = f" + O({self.var}^{self.order})" if self.order is not None else ""
        return body + tail

    # -- arithmetic ----------------------------------------------------------

    def _binary_order(self, other):
        if self.order is None:
            return other.order
        if other.order is None:
            return self.order
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Series.monomial(self.var, 0, GaussianRational.of(other))
        if self.var != other.var:
            raise ValidationError(f"variable mismatch: {self.var} vs {other.var}")
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, ZERO) + c
        order = self._binary_order(other)
        if order is not None:
            coeffs = {e: c for e, c in coeffs.items() if e < order}
        return Series(self.var, coeffs, order, min(self.floor, other.floor))

    __radd__ = __add__

    def __neg__(self):
        return Series(self.var, {e: -c for e, c in self.coeffs.items()}, self.order, self.floor)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Series.monomial(self.var, 0, GaussianRational.of(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.of(other)
            return Series(self.var, {e: v * c for e, v in self.coeffs.items()}, self.order, self.floor)
        if self.var != other.var:
            raise ValidationError(f"variable mismatch: {self.var} vs {other.var}")
        # truncation propagates through the floors: unknown tail of one factor
        # shifts by at least the floor of the other
        if self.order is None and other.order is None:
            order = None
        else:
            cands = []
            if self.order is not None:
                cands.append(self.order + other.floor)
            if other.order is not None:
                cands.append(other.order + self.floor)
            order = min(cands)
        coeffs = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if order is not None and e >= order:
                    continue
                coeffs[e] = coeffs.get(e, ZERO) + c1 * c2
        return Series(self.var, coeffs, order, self.floor + other.floor)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValidationError("negative powers need invert()")
        out = Series.one(self.var, None)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def shift(self, k: int) -> "Series":
        """Multiply by var^k."""
        return Series(
            self.var,
            {e + k: c for e, c in self.coeffs.items()},
            None if self.order is None else self.order + k,
            self.floor + k,
        )

    def truncate(self, order: int) -> "Series":
        if self.order is not None and self.order < order:
            raise ValidationError(f"cannot extend known order {self.order} to {order}")
        return Series(self.var, {e: c for e, c in self.coeffs.items() if e < order}, order, self.floor)

    def map_var(self, var: str) -> "Series":
        return Series(var, dict(self.coeffs), self.order, self.floor)

    def invert(self, order=None) -> "Series":
        """Multiplicative inverse; exact for monomials, truncated otherwise."""
        v = self.valuation()
        if v is None:
            raise ValidationError("cannot invert the zero series")
        if len(self.coeffs) == 1 and self.order is None:
            return Series.monomial(self.var, -v, self.coeffs[v].inverse())
        if order is None:
            if self.order is None:
                raise ValidationError("inverting an exact non-monomial series needs an explicit order")
            order = self.order - 2 * v
        elif self.order is not None:
            order = min(order, self.order - 2 * v)
        lead = self.coeffs[v]
        # self = lead * x^v * (1 + r) with val(r) >= 1
        r = {e - v: c / lead for e, c in self.coeffs.items() if e != v}
        span = order + v  # exponents of (1+r)^-1 needed: 0 .. span-1
        inv = {0: ONE}
        for k in range(1, span):
            acc = ZERO
            for j, rj in r.items():
                if 0 <= k - j < k:
                    acc = acc + rj * inv.get(k - j, ZERO)
            if acc:
                inv[k] = -acc
        coeffs = {k - v: c / lead for k, c in inv.items() if k - v < order}
        return Series(self.var, coeffs, order, -v)


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def neg(a: Series) -> Series:
    return -a


def invert(a: Series, order=None) -> Series:
    return a.invert(order)


def exp_series(a: Series, order=None) -> Series:
    """exp of a series with positive valuation."""
    if a.coeffs and min(a.coeffs) < 1:
        raise ValidationError("exp needs a series with no constant or polar part")
    if order is None:
        order = a.order
    if order is None:
        raise ValidationError("exp of an exact series needs an explicit order")
    out = Series.one(a.var, order)
    term = Series.one(a.var, order)
    at = a.truncate(order) if a.order is None or a.order > order else a
    for k in range(1, order):
        term = (term * at) * Fraction(1, k)
        if term.is_zero():
            break
        out = out + term
    return out


def log_series(a: Series, order=None) -> Series:
    """log of a series with constant term 1."""
    if a.coeff(0) != ONE or (a.coeffs and min(a.coeffs) < 0):
        raise ValidationError("log needs constant term 1 and floor 0")
    if order is None:
        order = a.order
    if order is None:
        raise ValidationError("log of an exact series needs an explicit order")
    r = (a - 1).truncate(order)
    out = Series.zero(a.var, order)
    term = Series.one(a.var, order)
    for k in range(1, order):
        term = term * r
        if term.is_zero():
            break
        out = out + term * Fraction((-1) ** (k + 1), k)
    return out


def rational_power(a: Series, e, order=None) -> Series:
    """(1 + r)^e for exact rational e, by the binomial series."""
    e = Fraction(e) if not isinstance(e, Fraction) else e
    if a.coeff(0) != ONE or (a.coeffs and min(a.coeffs) < 0):
        raise ValidationError("rational_power needs constant term 1 and floor 0")
    if order is None:
        order = a.order
    if order is None:
        raise ValidationError("rational_power of an exact series needs an explicit order")
    r = (a - 1).truncate(order)
    out = Series.one(a.var, order)
    term = Series.one(a.var, order)
    coef = Fraction(1)
    for k in range(1, order):
        coef *= (e - (k - 1)) / k
        term = term * r
        if term.is_zero() or coef == 0:
            break
        out = out + term * coef
    return out


def sin_half_norm(order: int) -> Series:
    """The normalized sine series sum_j (-1)^j u^(2j) / (4^j (2j+1)!)."""
    if order < 1:
        raise ValidationError("order must be >= 1")
    coeffs = {}
    j = 0
    while 2 * j < order:
        coeffs[2 * j] = GaussianRational(Fraction((-1) ** j, 4**j * factorial(2 * j + 1)))
        j += 1
    return Series("u", coeffs, order)


def subst_exp(a: Series, unit: GaussianRational, order: int) -> Series:
    """Substitute s^k -> unit^k * e^(i k u / 2) into an exact Laurent polynomial."""
    unit = GaussianRational.of(unit)
    if unit not in UNITS:
        raise ValidationError("unit must be one of 1, -1, i, -i")
    if a.order is not None:
        raise ValidationError("subst_exp needs an exact series (order None)")
    coeffs: dict = {}
    for k, c in a.coeffs.items():
        scale = c * (unit**k)
        base = I * Fraction(k, 2)  # exponent of e^(iku/2) per power of u
        power = ONE
        for j in range(order):
            term = scale * power * Fraction(1, factorial(j))
            if term:
                coeffs[j] = coeffs.get(j, ZERO) + term
            power = power * base
            if not power:
                break
    return Series("u", coeffs, order)


def y_to_s(a: Series) -> Series:
    """Embed a y-series into the s-world by doubling exponents (y = s^2)."""
    return Series(
        "s",
        {2 * e: c for e, c in a.coeffs.items()},
        None if a.order is None else 2 * a.order - 1,
        2 * a.floor,
    )


@dataclass(frozen=True)
class PadeResult:
    """Rational reconstruction P/Q of a Taylor series.

    residual_exponent is the first known exponent where re-expanding P/Q
    disagrees with the input, or None if they agree on the full known range.
    """

    num: tuple
    den: tuple
    residual_exponent: int | None

    def numerator_series(self, var: str) -> Series:
        return Series(var, {e: c for e, c in enumerate(self.num)})

    def denominator_series(self, var: str) -> Series:
        return Series(var, {e: c for e, c in enumerate(self.den)})

    def expand(self, var: str, order: int) -> Series:
        return self.numerator_series(var) * self.denominator_series(var).invert(order)


def _solve_exact(rows, rhs):
    """Gaussian elimination over Q(i); returns a solution with free vars 0, or None."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None  # inconsistent
    sol = [ZERO] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol


def pade(a: Series, p: int, q: int) -> PadeResult:
    """Find P/Q with deg P <= p, deg Q <= q, Q(0) = 1, P - a*Q = O(x^(p+q+1))."""
    if p < 0 or q < 0:
        raise ValidationError("degrees must be >= 0")
    if a.coeffs and min(a.coeffs) < 0:
        raise ValidationError("pade needs a Taylor series (floor >= 0)")
    needed = p + q + 1
    if a.order is not None and a.order < needed:
        raise ValidationError(f"series known to order {a.order}, need {needed}")

    def c(k):
        return a.coeffs.get(k, ZERO)

    # linear part: rows k = p+1 .. p+q in sum_j c_{k-j} Q_j = 0
    rows = []
    rhs = []
    for k in range(p + 1, p + q + 1):
        rows.append([c(k - j) for j in range(1, q + 1)])
        rhs.append(-c(k))
    if q > 0:
        sol = _solve_exact(rows, rhs)
        if sol is None:
            raise PadeError("pade system inconsistent at the requested degrees")
        den = [ONE] + sol
    else:
        den = [ONE]
    num = []
    for k in range(p + 1):
        acc = ZERO
        for j in range(min(k, q) + 1):
            acc = acc + c(k - j) * den[j]
        num.append(acc)
    # verify the defining congruence, then measure agreement on the known range
    for k in range(p + 1, p + q + 1):
        acc = ZERO
        for j in range(min(k, q) + 1):
            acc = acc + c(k - j) * den[j]
        if acc:
            raise PadeError("pade system inconsistent at the requested degrees")
    residual = None
    if a.order is not None:
        horizon = a.order
    else:
        # exact input: agreement far enough to force P - a*Q = 0 identically
        top = max(a.coeffs) if a.coeffs else 0
        horizon = max(p, top + q) + 2
    if horizon > p + q + 1:
        den_series = Series(a.var, {e: v for e, v in enumerate(den)})
        expand = Series(a.var, {e: v for e, v in enumerate(num)}) * den_series.invert(horizon)
        for k in range(horizon):
            if expand.coeff(k) != c(k):
                residual = k
                break
    return PadeResult(tuple(num), tuple(den), residual)
