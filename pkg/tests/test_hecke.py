"""Hecke operators on series: shift/dilation behavior, grading, duality."""

import numpy as np
import pytest

from etaparity.f2series import F2Series, power, square
from etaparity.genforms import c_series, delta_series
from etaparity.hecke import HeckeOpSpec, t_op, u_op, v_op


def supp(f):
    return [int(e) for e in f.support()]


class TestU:
    def test_left_inverse_of_squaring(self, rng):
        exps = rng.choice(700, size=30, replace=False)
        f = F2Series.from_support(sorted(exps), 700)
        assert u_op(square(f, 1400), 2) == f

    def test_u3_delta_enumeration(self):
        # a_n(U_3 delta) = 1 iff 3n is an odd square, i.e. n = 3k^2 with k odd
        got = u_op(delta_series(3000), 3)
        want = [3 * k * k for k in range(1, 20, 2) if 3 * k * k < got.valid_len]
        assert supp(got) == want
        assert supp(got)[:4] == [3, 27, 75, 147]

    def test_u2_kills_c(self):
        assert u_op(c_series(10_000), 2).is_zero()

    def test_valid_len(self):
        f = F2Series.zero(100)
        assert u_op(f, 7).valid_len == 14

    def test_rejects_index_one(self):
        with pytest.raises(ValueError):
            u_op(F2Series.zero(10), 1)


class TestV:
    def test_monomial(self):
        assert supp(v_op(F2Series.from_support([1], 5), 3)) == [3]

    def test_section_identity(self, rng):
        exps = rng.choice(200, size=20, replace=False)
        f = F2Series.from_support(sorted(exps), 200)
        assert u_op(v_op(f, 5), 5) == f

    def test_vu_keeps_multiples(self):
        f = delta_series(1000)
        vu = v_op(u_op(f, 3), 3)
        bits = f.bits(vu.valid_len)
        keep = np.zeros_like(bits)
        keep[::3] = bits[::3]
        assert np.array_equal(vu.bits(), keep)


class TestT:
    def test_t3_delta_vanishes(self):
        assert t_op(delta_series(3000), 3).is_zero()

    def test_t3_delta_cubed(self):
        n = 3000
        assert t_op(power(delta_series(n), 3, n), 3) == delta_series(n // 3)

    def test_t3_delta_fifth_vanishes(self):
        # Grading forces T_3 on the 5-graded piece into the 7-graded piece,
        # and the expansion shows the image is zero outright.
        n = 5000
        assert t_op(power(delta_series(n), 5, n), 3).is_zero()

    @pytest.mark.parametrize("ell,expect_c", [(5, True), (7, False)])
    def test_t_on_c_fifth(self, ell, expect_c):
        n = 10_000
        image = t_op(power(c_series(n), 5, n), ell)
        if expect_c:
            assert image == c_series(n // ell)
        else:
            assert image.is_zero()

    def test_rejects_two_and_composites(self):
        f = delta_series(100)
        with pytest.raises(ValueError):
            t_op(f, 2)
        with pytest.raises(ValueError):
            t_op(f, 9)
        with pytest.raises(ValueError):
            t_op(F2Series.zero(3), 5)

    def test_valid_len(self):
        assert t_op(delta_series(100), 7).valid_len == 14


class TestGradingAndDuality:
    @pytest.mark.parametrize("i", [1, 3, 5, 7])
    @pytest.mark.parametrize("ell", [3, 5, 7])
    def test_level1_grading(self, i, ell):
        n = 4000
        f = power(delta_series(n), i, n)
        image = t_op(f, ell)
        s = image.support()
        assert not len(s) or np.all(s % 8 == (ell * i) % 8)

    @pytest.mark.parametrize("i", [5, 7])
    @pytest.mark.parametrize("ell", [5, 7, 13])
    def test_level9_grading(self, i, ell):
        n = 20_000
        f = power(c_series(n), i, n)
        image = t_op(f, ell)
        s = image.support()
        assert not len(s) or np.all(s % 24 == (ell * i) % 24)

    @pytest.mark.parametrize("ell", [3, 5, 7, 11, 13, 31])
    def test_first_coefficient_duality(self, ell):
        n = 2000
        f = power(delta_series(n), 7, n)
        assert t_op(f, ell).coeff(1) == f.coeff(ell)

    def test_commutativity_sample(self):
        n = 31_000
        f = power(delta_series(n), 7, n)
        assert t_op(t_op(f, 3), 5) == t_op(t_op(f, 5), 3)


def test_op_spec_validation():
    HeckeOpSpec("T", 3)
    with pytest.raises(ValueError):
        HeckeOpSpec("W", 3)
    with pytest.raises(ValueError):
        HeckeOpSpec("U", 1)
