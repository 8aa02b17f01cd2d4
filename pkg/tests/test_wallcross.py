import json
import random
from fractions import Fraction
from math import factorial
from pathlib import Path

import pytest

from coverwalk.errors import PadeError, ValidationError
from coverwalk.series import (
    GaussianRational,
    I,
    ONE,
    Series,
    ZERO,
    UNITS,
    sin_half_norm,
    subst_exp,
)
from coverwalk.wallcross import (
    GW,
    DT,
    CorrelatorTable,
    NormalizedSeries,
    bridge_pipelines,
    crc_continue,
    dt_normalize,
    equivalence_check,
    euler_regrade,
    genus_regrade,
    gw_normalize,
    shift_potential,
    walls,
)

FIXTURES = Path(__file__).parent / "fixtures"


def rand_gauss(rng):
    return GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))


def rand_rational_expansion(rng, order, max_deg=2):
    """Exact expansion of a random rational function with nonzero constant term."""
    p = rng.randint(0, max_deg)
    q = rng.randint(0, max_deg)
    num = {0: GaussianRational(rng.randint(1, 3))}
    for e in range(1, p + 1):
        num[e] = rand_gauss(rng)
    den = {0: ONE}
    for e in range(1, q + 1):
        den[e] = rand_gauss(rng)
    series = Series("y", num) * Series("y", den).invert(order)
    return series, p, q


def same_to(a, b, order):
    for e in range(min(a.floor, b.floor), order):
        if a.coeff(e) != b.coeff(e):
            return False
    return True


def gw_payload(series_u, c=1, genus=0, points=0, ages=()):
    return NormalizedSeries(GW, c, genus, points, tuple(ages), series_u)


def dt_payload(series_s, c=1, genus=0, points=0, ages=()):
    return NormalizedSeries(DT, c, genus, points, tuple(ages), series_s)


class TestNormalize:
    def test_gw_trivial_when_c_zero(self):
        x = gw_payload(Series("u", {0: 1, 2: 5}, 8), c=0)
        assert gw_normalize(x).payload == x.payload

    def test_gw_on_unit_payload_is_sine_power(self):
        x = gw_payload(Series.one("u", 10), c=2)
        out = gw_normalize(x).payload
        shn2 = sin_half_norm(10) * sin_half_norm(10)
        assert same_to(out, shn2, 10)
        assert out.coeff(2) == Fraction(-1, 12)
        assert out.coeff(4) == Fraction(2, 1920) + Fraction(1, 576)

    def test_gw_round_trip(self):
        rng = random.Random(21)
        for _ in range(20):
            payload = Series("u", {e: rand_gauss(rng) for e in range(-2, 6)}, 10)
            x = gw_payload(payload, c=rng.randint(1, 3))
            back = gw_normalize(gw_normalize(x), invert=True).payload
            assert same_to(back, payload, back.order)

    def test_dt_round_trip(self):
        rng = random.Random(22)
        for _ in range(20):
            payload = Series("s", {e: rand_gauss(rng) for e in range(-3, 5)}, 10)
            x = dt_payload(payload, c=rng.randint(1, 3))
            back = dt_normalize(dt_normalize(x), invert=True).payload
            assert same_to(back, payload, back.order)

    def test_metadata_untouched(self):
        x = dt_payload(Series("s", {0: 1}, 6), c=2, genus=3, points=4, ages=(1, 2))
        out = dt_normalize(x)
        assert (out.c, out.genus, out.points, out.ages) == (2, 3, 4, (1, 2))

    def test_squared_prefactor_in_y(self):
        # (s - 1/s)^2 = y - 2 + 1/y under exponent doubling
        x = dt_payload(Series.one("s"), c=2)
        pref = dt_normalize(x).payload  # includes (i s)^(-2) = -1/y factor
        base = Series("s", {1: 1, -1: -1})
        sq = base * base
        assert sq.coeffs == {2: ONE, 0: GaussianRational(-2), -2: ONE}


class TestRegrades:
    def test_trivial_shifts(self):
        x = gw_payload(Series("u", {1: 1}), points=0, ages=())
        assert genus_regrade(x).payload == x.payload
        y = dt_payload(Series("s", {0: 1}), genus=1, points=5)
        assert euler_regrade(y).payload == y.payload

    def test_stated_shift(self):
        x = gw_payload(Series("u", {0: 1}), points=2, ages=(1, 1))
        assert genus_regrade(x).payload.coeffs == {2: ONE}

    def test_euler_shift(self):
        x = dt_payload(Series("s", {0: 1}), genus=2, points=3)
        assert euler_regrade(x).payload.coeffs == {6: ONE}


def bernoulli_numbers(count):
    """B_0 .. B_{count-1} with B_1 = -1/2, by the defining recurrence."""
    from math import comb

    out = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * out[j]
        out.append(-acc / (m + 1))
    return out


def sin_half_series(order):
    coeffs = {}
    j = 0
    while 2 * j + 1 < order:
        coeffs[2 * j + 1] = GaussianRational(Fraction((-1) ** j, 2 ** (2 * j + 1) * factorial(2 * j + 1)))
        j += 1
    return Series("u", coeffs, order)


def cos_half_series(order):
    coeffs = {}
    j = 0
    while 2 * j < order:
        coeffs[2 * j] = GaussianRational(Fraction((-1) ** j, 2 ** (2 * j) * factorial(2 * j)))
        j += 1
    return Series("u", coeffs, order)


class TestCrcContinue:
    def test_constant(self):
        out = crc_continue(Series("y", {0: GaussianRational(7)}), 0, 0, I, 6)
        assert out.coeff(0) == 7
        assert all(out.coeff(k) == ZERO for k in range(1, 6))

    def test_inverse_square_family(self):
        # y/(1+y)^2 -> 1/(4 sin^2(u/2))
        payload = Series("y", {1: 1}) * (Series("y", {0: 1, 1: 1}) ** 2).invert(16)
        out = crc_continue(payload, 1, 2, I, 10)
        sh = sin_half_series(16)
        oracle = (sh * sh * 4).invert(10)
        assert same_to(out, oracle, 10)
        assert out.coeff(-2) == 1
        assert out.coeff(0) == Fraction(1, 12)
        assert out.coeff(2) == Fraction(1, 240)

    def test_geometric_bernoulli(self):
        # 1/(1+y) -> 1/(1 - e^{iu}), checked against the Bernoulli expansion
        payload = Series("y", {k: (-1) ** k for k in range(14)}, 14)
        out = crc_continue(payload, 0, 1, I, 10)
        bern = bernoulli_numbers(16)
        # 1/(1-e^{iu}) = -sum_n B_n i^{n-1} u^{n-1} / n!
        for j in range(-1, 8):
            expected = -(I ** j) * Fraction(bern[j + 1], factorial(j + 1))
            assert out.coeff(j) == expected

    def test_homomorphism(self):
        rng = random.Random(31)
        for _ in range(8):
            a, pa, qa = rand_rational_expansion(rng, 26)
            b, pb, qb = rand_rational_expansion(rng, 26)
            lhs = crc_continue(a * b, pa + pb, qa + qb, I, 8)
            rhs = crc_continue(a, pa, qa, I, 8) * crc_continue(b, pb, qb, I, 8)
            assert same_to(lhs, rhs, min(lhs.order, rhs.order))

    def test_branch_changes_sign_of_y(self):
        # with unit = 1 the substitution sends y to +e^{iu}
        payload = Series("y", {0: 1, 1: 1})  # 1 + y
        out_plus = crc_continue(payload, 1, 0, ONE, 8)
        for j in range(8):
            assert out_plus.coeff(j) == (I ** j) * Fraction(1, factorial(j)) + (1 if j == 0 else 0)

    def test_not_rational_raises(self):
        payload = Series("y", {k: Fraction(1, factorial(k)) for k in range(12)}, 12)
        with pytest.raises(PadeError):
            crc_continue(payload, 1, 1, I, 8)

    def test_odd_parity_monomial(self):
        # a bare s monomial continues to a pure exponential
        out = crc_continue(Series.monomial("s", 3), 0, 0, I, 8)
        for j in range(8):
            assert out.coeff(j) == (I**3) * (I * Fraction(3, 2)) ** j * Fraction(1, factorial(j))


def cot_half_series(order):
    pad = order + 4
    return cos_half_series(pad) * sin_half_series(pad).invert(order)


class TestEquivalence:
    def test_trivial_everything(self):
        disc = equivalence_check(0, 0, 0, (), Series("y", {0: 1}), order=8, pmax=0, qmax=0)
        assert disc.coeff(0) == 1
        assert all(disc.coeff(k) == ZERO for k in range(1, disc.order))

    def test_pure_substitution_consistency(self):
        payload = Series("y", {1: 1}) * (Series("y", {0: 1, 1: 1}) ** 2).invert(20)
        disc = equivalence_check(0, 0, 0, (), payload, order=8, pmax=1, qmax=2)
        assert disc.coeff(0) == 1
        assert all(disc.coeff(k) == ZERO for k in range(1, disc.order))

    def test_payload_independent(self):
        rng = random.Random(41)
        for c in (0, 1, 2):
            for unit in UNITS:
                reference = None
                for _ in range(6):
                    payload, p, q = rand_rational_expansion(rng, 30)
                    disc = equivalence_check(
                        2, 0, 0, (), payload, order=10, unit=unit, pmax=p, qmax=q
                    )
                    if reference is None:
                        reference = disc
                    else:
                        assert same_to(disc, reference, min(disc.order, reference.order))

    def test_real_branches_give_constants(self):
        payload = Series("y", {0: 1, 1: 2})
        for c in range(4):
            disc_plus = equivalence_check(c, 0, 0, (), payload, order=10, unit=ONE, pmax=1, qmax=0)
            disc_minus = equivalence_check(c, 0, 0, (), payload, order=10, unit=-ONE, pmax=1, qmax=0)
            for e in range(disc_plus.floor, disc_plus.order):
                assert disc_plus.coeff(e) == (GaussianRational((-1) ** c) if e == 0 else ZERO)
            for e in range(disc_minus.floor, disc_minus.order):
                assert disc_minus.coeff(e) == (ONE if e == 0 else ZERO)

    def test_imaginary_branches_give_cotangent_powers(self):
        payload = Series("y", {0: 1, 1: 2})
        for c in range(4):
            cot_c = Series.one("u", 8)
            for _ in range(c):
                cot_c = cot_c * cot_half_series(10)
            disc_i = equivalence_check(c, 0, 0, (), payload, order=12, unit=I, pmax=1, qmax=0)
            disc_mi = equivalence_check(c, 0, 0, (), payload, order=12, unit=-I, pmax=1, qmax=0)
            assert same_to(disc_i, cot_c * GaussianRational((-1) ** c), min(disc_i.order, cot_c.order))
            assert same_to(disc_mi, cot_c, min(disc_mi.order, cot_c.order))

    def test_recorded_fixture_values(self):
        with open(FIXTURES / "equivalence_discrepancies.json", encoding="utf-8") as fh:
            recorded = json.load(fh)
        assert len(recorded) == 16
        payload = Series("y", {0: 2, 1: -1})
        for entry in recorded:
            unit = {"1": ONE, "-1": -ONE, "i": I, "-i": -I}[entry["branch"]]
            disc = equivalence_check(
                entry["c"], 0, 0, (), payload,
                order=entry["request_order"], unit=unit, pmax=1, qmax=0,
            )
            assert disc.order == entry["known_order"]
            expected = {
                e: GaussianRational(Fraction(rn, rd), Fraction(im_n, im_d))
                for e, rn, rd, im_n, im_d in entry["coeffs"]
            }
            for e in range(disc.floor, disc.order):
                assert disc.coeff(e) == expected.get(e, ZERO)

    def test_metadata_shifts_discrepancy(self):
        payload = Series("y", {0: 1, 1: 1})
        base = equivalence_check(1, 1, 0, (), payload, order=10, unit=-ONE, pmax=1, qmax=0)
        shifted = equivalence_check(1, 1, 2, (1, 1), payload, order=10, unit=-ONE, pmax=1, qmax=0)
        # genus 1 keeps the euler shift trivial; the u-shift moves by 2n - sum(ages)
        assert same_to(shifted, base.shift(-2), min(shifted.order, base.order - 2))


class TestBridgePipelines:
    def test_routes_and_ratio_consistent(self):
        payload = Series("y", {0: 1, 1: 1})
        dt_route, gw_route, ratio = bridge_pipelines(2, 0, 0, (), payload, order=10, pmax=1, qmax=0)
        recomposed = ratio * gw_route
        assert same_to(recomposed, dt_route, min(recomposed.order, dt_route.order))


class TestShiftPotential:
    def test_zero_shift_identity(self):
        table = CorrelatorTable({(("x", "x"), 0): ONE, (("x", "y"), 1): I})
        assert shift_potential(table, {}) == table

    def test_single_correlator_example(self):
        table = CorrelatorTable({(("x", "x"), 0): ONE})
        shifted = shift_potential(table, {1: [("x", ONE)]})
        assert shifted.value(("x", "x"), 0) == 1
        assert shifted.value(("x",), 1) == 1
        assert shifted.value((), 2) == Fraction(1, 2)

    def test_composition_is_additive(self):
        rng = random.Random(51)
        labels = ["x", "y"]
        entries = {}
        for _ in range(5):
            size = rng.randint(0, 3)
            key = (tuple(sorted(rng.choice(labels) for _ in range(size))), rng.randint(0, 2))
            entries[key] = rand_gauss(rng)
        table = CorrelatorTable(entries)
        mu1 = {1: [("x", GaussianRational(Fraction(1, 2)))]}
        mu2 = {2: [("y", GaussianRational(3))]}
        combined = {1: mu1[1], 2: mu2[2]}
        once = shift_potential(shift_potential(table, mu1), mu2)
        both = shift_potential(table, combined)
        assert once == both

    def test_symmetric_storage(self):
        table = CorrelatorTable({(("b", "a"), 0): ONE})
        assert table.value(("a", "b"), 0) == 1


class TestWalls:
    def test_no_interior_walls(self):
        assert walls(1) == []

    def test_small_degrees(self):
        assert walls(2) == [(2, "-1/ln(2)")]
        assert walls(3) == [(2, "-1/ln(2)"), (3, "-1/ln(3)")]

    def test_validation(self):
        with pytest.raises(ValidationError):
            walls(0)
