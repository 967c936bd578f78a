"""Exact scalar layer: rationals, rational functions, parsing, rendering."""

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from psipascal import (
    RATIONAL_FIELD,
    RATIONAL_FUNCTION_FIELD,
    FieldMismatchError,
    PoleError,
    RationalFunction,
    ScalarParseError,
    field_of,
    parse_rational,
    parse_rational_function,
    q,
    scalar_to_latex,
    scalar_to_string,
)

from oracles import poly_mul

RF = RationalFunction

small_fracs = st.fractions(min_value=-30, max_value=30, max_denominator=12)


@st.composite
def rational_functions(draw):
    num = draw(st.lists(small_fracs, max_size=4))
    den = draw(st.lists(small_fracs, min_size=1, max_size=3).filter(lambda cs: any(cs)))
    return RF.from_coefficients(num, den)


class TestRationalBasics:
    def test_half_plus_third(self):
        assert parse_rational("1/2") + parse_rational("1/3") == Fraction(5, 6)

    def test_cube_of_negative(self):
        assert Fraction(-2, 3) ** 3 == Fraction(-8, 27)

    def test_zero_to_zero_is_one(self):
        assert Fraction(0) ** 0 == 1
        assert RF(0) ** 0 == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            q / RF(0)
        with pytest.raises(ZeroDivisionError):
            RF(1, 0)


class TestRationalFunctionNormalization:
    def test_geometric_ratio_reduces(self):
        # (1 - q^2)/(1 - q) must come out as the polynomial 1 + q
        value = (1 - q**2) / (1 - q)
        assert value == RF.from_coefficients((1, 1))
        assert value.denominator == (1,)
        # oracle: (1 + q)(1 - q) really is 1 - q^2
        assert tuple(poly_mul([1, 1], [1, -1])) == (1, 0, -1)

    def test_division_by_constant(self):
        value = RF.from_coefficients((1, 0, -1)) / RF(1)
        assert value == (1 - q) * (1 + q)

    def test_monic_denominator(self):
        value = RF(1) / RF.from_coefficients((2, -2))
        assert value.denominator == (-1, 1)
        assert str(value) == "(-1/2)/(-1 + q)"

    def test_square_expansion(self):
        # repeated multiplication oracle
        expanded = (1 + q) * (1 + q)
        assert (1 + q) ** 2 == expanded
        assert expanded.numerator == (1, 2, 1)

    def test_normalization_idempotent(self):
        value = (3 + q) / (2 - q**3)
        again = RF(value.numerator, value.denominator)
        assert again.numerator == value.numerator
        assert again.denominator == value.denominator

    def test_cross_multiplied_equality(self):
        a = (1 + q) / (1 - q)
        b = (1 - q**2) / (1 - q) ** 2
        assert a == b

    def test_constant_embeds(self):
        assert RF(Fraction(5, 3)) == Fraction(5, 3)
        assert q * 0 == 0
        assert hash(RF(5)) == hash(Fraction(5)) == hash(5)


class TestEvalAt:
    def test_direct_substitution(self):
        assert (1 + q + q**2).eval_at(2) == 7

    def test_constant(self):
        assert RF(5).eval_at(Fraction(123, 7)) == 5

    def test_pole(self):
        with pytest.raises(PoleError) as err:
            (1 / (1 - q)).eval_at(1)
        assert "q = 1" in str(err.value)


class TestTextForms:
    def test_rational_strings(self):
        assert scalar_to_string(Fraction(-8, 27)) == "-8/27"
        assert scalar_to_string(Fraction(5)) == "5"

    def test_rational_function_strings(self):
        assert scalar_to_string(1 + q**2) == "(1 + q^2)/(1)"
        assert scalar_to_string(RF(2)) == "2"
        assert scalar_to_string(1 - q) == "(1 - q)/(1)"
        assert scalar_to_string(-q) == "(-q)/(1)"
        assert scalar_to_string(Fraction(3, 2) * q**2 - 1) == "(-1 + 3/2*q^2)/(1)"

    def test_parse_error_offset(self):
        with pytest.raises(ScalarParseError) as err:
            parse_rational("5/")
        assert err.value.position == 2

    def test_parse_rejects_trailing_garbage(self):
        with pytest.raises(ScalarParseError):
            parse_rational("12x")
        with pytest.raises(ScalarParseError):
            parse_rational_function("(1 + q)/(1) extra")

    def test_parse_forms(self):
        assert parse_rational("-8/27") == Fraction(-8, 27)
        assert parse_rational_function("(1 + q^2)/(1)") == 1 + q**2
        assert parse_rational_function("q") == q
        assert parse_rational_function("3/2*q") == Fraction(3, 2) * q
        assert parse_rational_function("2") == RF(2)
        assert parse_rational_function("(-1/2)/(-1 + q)") == RF(1) / RF.from_coefficients((2, -2))

    @given(rational_functions())
    @settings(deadline=None, max_examples=60)
    def test_round_trip(self, value):
        assert parse_rational_function(scalar_to_string(value)) == value

    @given(small_fracs)
    @settings(deadline=None)
    def test_rational_round_trip(self, value):
        assert parse_rational(scalar_to_string(value)) == value

    def test_latex_rendering(self):
        assert scalar_to_latex(Fraction(-8, 27)) == "-\\frac{8}{27}"
        assert scalar_to_latex(1 + q**2) == "1 + q^{2}"
        assert "\\frac" in scalar_to_latex(1 / (1 - q))


class TestFieldDomains:
    def test_field_of(self):
        assert field_of(Fraction(1)) is RATIONAL_FIELD
        assert field_of(q) is RATIONAL_FUNCTION_FIELD

    def test_rational_field_rejects_symbols(self):
        with pytest.raises(FieldMismatchError):
            RATIONAL_FIELD.coerce(q)

    def test_embedding_upward(self):
        assert RATIONAL_FUNCTION_FIELD.coerce(Fraction(1, 2)) == RF(Fraction(1, 2))

    def test_join(self):
        assert RATIONAL_FIELD.join(RATIONAL_FUNCTION_FIELD) is RATIONAL_FUNCTION_FIELD
        assert RATIONAL_FIELD.join(RATIONAL_FIELD) is RATIONAL_FIELD


class TestFieldAxioms:
    @given(rational_functions(), rational_functions(), rational_functions())
    @settings(deadline=None, max_examples=40)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(rational_functions())
    @settings(deadline=None, max_examples=40)
    def test_inverses(self, a):
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1

    @given(st.fractions(), st.fractions(), st.fractions())
    @settings(deadline=None, max_examples=40)
    def test_rational_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c

    @given(rational_functions(), rational_functions(), small_fracs)
    @settings(deadline=None, max_examples=40)
    def test_eval_is_a_homomorphism(self, a, b, point):
        try:
            left = (a * b).eval_at(point)
            added = (a + b).eval_at(point)
        except PoleError:
            assume(False)
        try:
            av, bv = a.eval_at(point), b.eval_at(point)
        except PoleError:
            assume(False)
        assert left == av * bv
        assert added == av + bv


def _to_sympy(value, symbol):
    import sympy

    num = sum(sympy.Rational(c) * symbol**i for i, c in enumerate(value.numerator))
    den = sum(sympy.Rational(c) * symbol**i for i, c in enumerate(value.denominator))
    return sympy.together(num / den)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_arithmetic_agrees_with_sympy(seed):
    sympy = pytest.importorskip("sympy")
    symbol = sympy.Symbol("s")
    rng = random.Random(seed)

    def random_rf():
        num = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        den = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, 3))]
        if not any(den):
            den = [Fraction(1)]
        return RF.from_coefficients(num, den)

    for _ in range(5):
        a, b = random_rf(), random_rf()
        for ours, theirs in [
            (a * b, _to_sympy(a, symbol) * _to_sympy(b, symbol)),
            (a + b, _to_sympy(a, symbol) + _to_sympy(b, symbol)),
        ]:
            assert sympy.simplify(_to_sympy(ours, symbol) - theirs) == 0
