import cmath
import math

import pytest
from hypothesis import given, strategies as st

from tools.errors import DomainError, RepresentationOverflowError
from tools.logcomplex import (
    ComplexValue,
    LogComplex,
    ONE,
    ZERO,
    lc_div,
    lc_exp_of,
    lc_abs_log,
    lc_from_complex,
    lc_from_real,
    lc_mul,
    lc_rel_err,
    lc_to_complex,
    normalize_arg,
)


class TestConversion:
    """Test cases for complex <-> log-polar conversion"""

    def test_unit(self):
        """Test the real unit maps to (0, 0)"""
        w = lc_from_complex(ComplexValue(1.0, 0.0))
        assert w.log_mag == 0.0
        assert w.arg == 0.0

    def test_imaginary_unit(self):
        """Test i maps to (0, pi/2)"""
        w = lc_from_complex(1j)
        assert w.log_mag == 0.0
        assert w.arg == pytest.approx(math.pi / 2, abs=1e-15)

    def test_negative_real(self):
        """Test -e maps to (1, pi)"""
        w = lc_from_complex(ComplexValue(-math.e, 0.0))
        assert w.log_mag == pytest.approx(1.0, abs=1e-15)
        assert w.arg == pytest.approx(math.pi, abs=1e-15)

    def test_zero_maps_to_zero(self):
        """Test exact zero becomes the ZERO sentinel"""
        assert lc_from_complex(0j) is ZERO
        assert lc_from_real(0.0) is ZERO
        assert lc_to_complex(ZERO) == ComplexValue(0.0, 0.0)

    def test_non_finite_rejected(self):
        """Test NaN and infinite components raise a domain error"""
        with pytest.raises(DomainError):
            ComplexValue(math.nan, 0.0)
        with pytest.raises(DomainError):
            lc_from_complex(complex(math.inf, 1.0))
        with pytest.raises(DomainError):
            LogComplex(math.nan, 0.0)

    def test_overflow_on_conversion(self):
        """Test values beyond the double range refuse to convert"""
        with pytest.raises(RepresentationOverflowError):
            lc_to_complex(LogComplex(800.0, 0.0))

    def test_abs_log(self):
        """Test ln|w| including the exact zero"""
        assert lc_abs_log(ZERO) == -math.inf
        assert lc_abs_log(ONE) == 0.0
        assert lc_abs_log(lc_from_real(-math.e)) == pytest.approx(1.0, abs=1e-15)


class TestArithmetic:
    """Test cases for log-scale multiplication and exponentials"""

    def test_i_times_i(self):
        """Test i*i = -1 lands on arg pi"""
        w = lc_mul(LogComplex(0.0, math.pi / 2), LogComplex(0.0, math.pi / 2))
        assert w.log_mag == 0.0
        assert w.arg == pytest.approx(math.pi, abs=1e-15)

    def test_exponent_addition(self):
        """Test magnitudes add in log space"""
        w = lc_mul(LogComplex(3.0, 0.1), LogComplex(4.0, -0.1))
        assert w.log_mag == 7.0
        assert w.arg == pytest.approx(0.0, abs=1e-16)

    def test_zero_absorbs(self):
        """Test ZERO is absorbing under multiplication"""
        assert lc_mul(LogComplex(math.log(2.0), math.pi), ZERO) is ZERO
        assert lc_div(ZERO, ONE) is ZERO

    def test_division_by_zero(self):
        """Test dividing by ZERO raises"""
        with pytest.raises(DomainError):
            lc_div(ONE, ZERO)

    def test_exp_of_zero(self):
        """Test e^0 = 1"""
        assert lc_exp_of(0j) == LogComplex(0.0, 0.0)

    def test_exp_of_large_exponent(self):
        """Test e^{800 + i pi} stays representable in log form"""
        w = lc_exp_of(complex(800.0, math.pi))
        assert w.log_mag == 800.0
        assert w.arg == pytest.approx(math.pi, abs=1e-15)

    def test_exp_phase_wrap(self):
        """Test the phase of e^{7i} wraps into (-pi, pi]"""
        w = lc_exp_of(7j)
        assert w.log_mag == 0.0
        assert w.arg == pytest.approx(7.0 - 2.0 * math.pi, abs=1e-15)

    def test_operators(self):
        """Test * and / delegate to lc_mul and lc_div"""
        a = LogComplex(1.0, 0.5)
        b = LogComplex(2.0, -0.25)
        assert a * b == lc_mul(a, b)
        assert a / b == lc_div(a, b)


class TestRelativeError:
    """Test cases for the log-scale relative error"""

    def test_identical(self):
        """Test identical inputs give zero"""
        w = LogComplex(12.5, -1.0)
        assert lc_rel_err(w, w) == 0.0

    def test_half(self):
        """Test |1/2 - 1| = 0.5"""
        assert lc_rel_err(LogComplex(0.0, 0.0), LogComplex(math.log(2.0), 0.0)) == pytest.approx(0.5, rel=1e-15)

    def test_huge_magnitudes(self):
        """Test the quotient is formed without leaving log space"""
        err = lc_rel_err(LogComplex(1000.0, 0.001), LogComplex(1000.0, 0.0))
        assert err == pytest.approx(abs(cmath.exp(0.001j) - 1.0), rel=1e-12)

    def test_zero_numerator(self):
        """Test ZERO against a nonzero reference is a 100% error"""
        assert lc_rel_err(ZERO, ONE) == 1.0

    def test_zero_reference(self):
        """Test a ZERO reference is rejected"""
        with pytest.raises(DomainError):
            lc_rel_err(ONE, ZERO)

    def test_unbounded_quotient(self):
        """Test an unrepresentable quotient reports inf"""
        assert lc_rel_err(LogComplex(2000.0, 0.0), ONE) == math.inf

    def test_tiny_difference_keeps_precision(self):
        """Test quotients within 1e-14 of one are resolved"""
        err = lc_rel_err(LogComplex(1e-14, 0.0), ONE)
        assert err == pytest.approx(1e-14, rel=1e-6)


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False, allow_subnormal=False)
log_mags = st.floats(min_value=-700.0, max_value=700.0, allow_nan=False)
args = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


class TestProperties:
    """Property-based checks of the log-polar representation"""

    @given(re=finite, im=finite)
    def test_round_trip(self, re, im):
        """Test conversion to log form and back is close to the identity"""
        z = complex(re, im)
        back = lc_to_complex(lc_from_complex(z)).to_complex()
        assert abs(back - z) <= 1e-12 * abs(z)

    @given(theta=args)
    def test_normalized_range(self, theta):
        """Test normalized arguments lie in (-pi, pi]"""
        reduced = normalize_arg(theta)
        assert -math.pi < reduced <= math.pi
        assert math.isclose(math.cos(reduced), math.cos(theta), abs_tol=1e-12)

    @given(a_mag=log_mags, a_arg=args, b_mag=log_mags, b_arg=args)
    def test_mul_commutes(self, a_mag, a_arg, b_mag, b_arg):
        """Test multiplication is commutative"""
        a = LogComplex(a_mag, a_arg)
        b = LogComplex(b_mag, b_arg)
        assert lc_mul(a, b) == lc_mul(b, a)

    @given(a_mag=log_mags, a_arg=args, b_mag=log_mags, b_arg=args)
    def test_div_inverts_mul(self, a_mag, a_arg, b_mag, b_arg):
        """Test (a*b)/b returns a up to rounding"""
        a = LogComplex(a_mag, a_arg)
        b = LogComplex(b_mag, b_arg)
        assert lc_rel_err(lc_div(lc_mul(a, b), b), a) <= 1e-11

    @given(mag=log_mags, arg=args)
    def test_self_error_is_zero(self, mag, arg):
        """Test lc_rel_err(a, a) is exactly zero"""
        w = LogComplex(mag, arg)
        assert lc_rel_err(w, w) == 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
