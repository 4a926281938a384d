"""Prime scans, the shift index, both empirical routes, and exact values."""

import numpy as np
import pytest

from etaparity.density import (PrecisionError, PrimeSieve, eta_density_decomposition,
                               eta_density_direct, eta_density_exact,
                               eta_density_formula, eta_power_series,
                               density_report_row, mu_delta, odd_coeff_density,
                               odd_coeff_density_shifted, prime_array,
                               verify_bounds, REPORT_COLUMNS)
from etaparity.f2series import power
from etaparity.genforms import c_series, delta_series
from etaparity.hecke import HeckeOpSpec
from etaparity.level1 import DyadicRational

from oracles import trial_division_primes

BOUND = 20_000


class TestPrimeSieve:
    def test_against_trial_division(self):
        sieve = PrimeSieve(10_000)
        assert list(sieve.primes()) == trial_division_primes(10_000)

    def test_membership(self):
        sieve = PrimeSieve(100)
        assert sieve.is_prime(97) and not sieve.is_prime(91)

    def test_residue_classes(self):
        sieve = PrimeSieve(200)
        ps = sieve.primes_in_class(8, 3, lo=5)
        assert list(ps)[:4] == [3, 11, 19, 43][1:] + [59]


class TestMuDelta:
    def test_worked_examples(self):
        assert (mu_delta(5, 18).mu, mu_delta(5, 18).delta) == (3, 3)
        assert (mu_delta(7, 120).mu, mu_delta(7, 120).delta) == (1, 2)
        assert (mu_delta(13, 120).mu, mu_delta(13, 120).delta) == (1, 8)

    def test_rejects_obstructed_primes(self):
        for ell in (2, 3, 4, 9):
            with pytest.raises(ValueError):
                mu_delta(ell, 5)

    @pytest.mark.parametrize("r", [1, 7, 18, 24, 120, 93, 256])
    @pytest.mark.parametrize("ell", [5, 7, 11, 97, 101])
    def test_window_invariants(self, r, ell):
        from etaparity.genforms import EtaPowerParams
        p = EtaPowerParams.for_power(r)
        idx = mu_delta(ell, r)
        assert (ell * idx.mu) % p.m_r == p.b_r % p.m_r
        assert p.b_r / ell <= idx.mu < p.b_r / ell + p.m_r
        assert idx.delta == (ell * idx.mu - p.b_r) // p.m_r >= 0


class TestCoefficientDensity:
    def test_delta_cubed_quarter(self):
        f = power(delta_series(BOUND + 1), 3, BOUND + 1)
        est = odd_coeff_density(f, BOUND)
        assert abs(est.value - 0.25) < 0.02
        assert est.nearest_dyadic == DyadicRational(1, 2)

    def test_delta_vanishes(self):
        est = odd_coeff_density(delta_series(BOUND + 1), BOUND)
        assert est.value < 0.01

    def test_c_fifth_eighth(self):
        f = power(c_series(BOUND + 1), 5, BOUND + 1)
        est = odd_coeff_density(f, BOUND)
        assert abs(est.value - 0.125) < 0.02

    def test_progression_filter_sharpness(self):
        # a_ell(delta^3) = 1 exactly for ell = 3 mod 8
        f = power(delta_series(BOUND + 1), 3, BOUND + 1)
        on = odd_coeff_density(f, BOUND, progression=(8, 3))
        off = odd_coeff_density(f, BOUND, progression=(8, 1))
        assert on.value == 1.0 and off.value == 0.0

    def test_precision_guard(self):
        with pytest.raises(PrecisionError):
            odd_coeff_density(delta_series(100), 100)
        with pytest.raises(PrecisionError):
            odd_coeff_density_shifted(delta_series(100), 3, 50)

    def test_shifted_examples(self):
        n = 3 * BOUND + 1
        d3 = power(delta_series(n), 3, n)
        assert odd_coeff_density_shifted(d3, 3, BOUND).value < 0.01
        d7 = power(delta_series(n), 7, n)
        est = odd_coeff_density_shifted(d7, 3, BOUND)
        assert abs(est.value - 0.25) < 0.02  # T_3 delta^7 = delta^5
        n7 = 7 * BOUND + 1
        c7 = power(c_series(n7), 7, n7)
        assert odd_coeff_density_shifted(c7, 7, BOUND).value < 0.01  # T_7 C^7 = C


class TestDecomposition:
    def test_r18(self):
        d = eta_density_decomposition(18)
        assert d.generator == "delta" and d.b_r == 3
        assert d.terms == ((None, "delta^3"), (HeckeOpSpec("T", 3), "delta^3"))

    def test_r35_all_eight(self):
        d = eta_density_decomposition(35)
        assert len(d.terms) == 8
        assert {t[0].index for t in d.terms if t[0]} == {5, 7, 11, 13, 17, 19, 23}

    def test_r40_uses_u2(self):
        d = eta_density_decomposition(40)
        assert d.terms == ((None, "C^5"), (HeckeOpSpec("U", 2), "C^5"))


class TestEtaDensityRoutes:
    def test_direct_r9(self):
        est = eta_density_direct(9, BOUND)
        assert abs(est.value - 0.25) < 0.02

    def test_formula_r18(self):
        est = eta_density_formula(18, BOUND)
        assert abs(est.value - 0.25) < 0.02

    def test_r24s_route_collapses_to_plain_density(self):
        # m_r = 1: the decomposition is the identity alone
        series = eta_power_series(72, 72 // 24 + BOUND + 1)
        direct = odd_coeff_density(series, BOUND)
        formula = eta_density_formula(72, BOUND)
        assert formula.hits == direct.hits

    def test_routes_agree_small_r(self):
        for r in range(1, 21):
            d = eta_density_direct(r, BOUND)
            f = eta_density_formula(r, BOUND)
            assert abs(d.value - f.value) <= 0.02, r

    def test_per_class_hits_match_shifted_reads(self):
        # hits of the direct scan in the class c (mod m_r) equal hits of the
        # u_c-shifted read in that class, prime by prime beyond b_r
        r, bound = 18, 5000
        params_m, params_b = 4, 3
        series = eta_power_series(r, params_b + params_m * bound + 1)
        primes = prime_array(5, bound)
        for c in (1, 3):
            cls = primes[primes % params_m == c]
            cls = cls[cls > params_b]
            u_c = 3 if c == 1 else 1  # least u with u*c = 3 mod 4
            direct_bits = []
            for ell in cls:
                idx = mu_delta(int(ell), r)
                direct_bits.append(series.coeff(idx.ell * idx.mu))
            shifted_bits = series.coeffs_at(u_c * cls)
            assert np.array_equal(np.array(direct_bits, dtype=np.uint8),
                                  shifted_bits)


class TestExactValues:
    @pytest.mark.parametrize("r", [1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64,
                                   96, 128, 160, 144])
    def test_zero_classification(self, r):
        assert eta_density_exact(r) == DyadicRational(0, 0)

    @pytest.mark.parametrize("r,num,log", [
        (9, 1, 2), (15, 1, 2), (18, 1, 2), (27, 3, 3), (30, 1, 2),
        (33, 1, 2), (36, 1, 2), (51, 3, 3), (54, 3, 3), (60, 1, 2),
        (66, 1, 2), (72, 1, 2), (99, 3, 4), (102, 1, 3), (108, 1, 3),
        (120, 1, 2), (129, 1, 3), (132, 1, 3), (513, 1, 4), (5, 1, 3),
        (84, 1, 3), (21, 5, 3), (42, 3, 3), (114, 1, 2), (104, 1, 3),
    ])
    def test_known_values(self, r, num, log):
        assert eta_density_exact(r) == DyadicRational(num, log)

    @pytest.mark.parametrize("r", [11, 17, 45, 105, 131])
    def test_unknown_values(self, r):
        assert eta_density_exact(r) is None

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            eta_density_exact(0)


class TestBoundsAndReport:
    def test_bounds_small(self):
        rows = verify_bounds(12, BOUND)
        assert all(row.ok for row in rows)
        limits = {row.r: row.limit for row in rows}
        assert limits[3] == 1.0 and limits[6] == 0.5 and limits[8] == 0.25

    def test_report_row_schema(self):
        est = eta_density_direct(9, BOUND)
        row = density_report_row(9, BOUND, "direct", est)
        assert tuple(row) == REPORT_COLUMNS
        assert row["exact"] == "1/4" and row["m_r"] == 8
