import pytest

from core.exceptions import (
    ExponentOverflowError,
    ExpressionSyntaxError,
    InvalidExponentError,
    UnknownIdentifierError,
)
from apps.polyarith.models import Poly
from apps.polyarith.parser import parse_poly, tokenize


class TestParsing:
    """Expressions that parse"""

    def test_sum_of_terms(self, ctx5):
        f = parse_poly("x^2 + 2*x*y - 3", ctx5)
        assert f.coefficient((2, 0, 0)) == 1
        assert f.coefficient((1, 1, 0)) == 2
        assert f.coefficient((0, 0, 0)) == 2

    def test_parentheses_and_powers(self, ctx2):
        assert parse_poly("(x + y)^2", ctx2) == parse_poly("x^2 + y^2", ctx2)

    def test_leading_sign(self, ctx2):
        f = parse_poly("-x", ctx2, None)
        assert f.coefficient((1, 0, 0)) == -1
        assert parse_poly("+x", ctx2) == Poly.variable(ctx2, "x")

    def test_zero_exponent(self, ctx3):
        assert parse_poly("x^0", ctx3) == 1

    def test_whitespace(self, ctx3):
        assert parse_poly("  x *\ty\n+ 1 ", ctx3) == parse_poly("x*y+1", ctx3)

    def test_precision_is_applied(self, ctx2):
        f = parse_poly("5*x", ctx2, 2)
        assert f.precision == 2
        assert f.coefficient((1, 0, 0)) == 1

    def test_tokens_record_positions(self):
        tokens = tokenize("x + 12")
        assert [(t.kind, t.position) for t in tokens] == [("name", 0), ("op", 2), ("int", 4), ("end", 6)]


class TestParseErrors:
    """Rejected expressions and where they fail"""

    @pytest.mark.parametrize(
        "text, position",
        [
            ("2x", 1),
            ("x y", 2),
            ("x $ y", 2),
            ("x^2^3", 3),
            ("(x + y", 6),
            ("x +", 3),
            ("", 0),
            ("x * )", 4),
            ("x^\u0663", 2),
            ("\u0663*x", 0),
            ("x + \uff11", 4),
        ],
    )
    def test_syntax_errors(self, ctx2, text, position):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse_poly(text, ctx2)
        assert info.value.position == position

    @pytest.mark.parametrize("text", ["x^y", "x^-1", "x^(2)"])
    def test_invalid_exponents(self, ctx2, text):
        with pytest.raises(InvalidExponentError):
            parse_poly(text, ctx2)

    def test_unknown_identifier(self, ctx2):
        with pytest.raises(UnknownIdentifierError) as info:
            parse_poly("x + t", ctx2)
        assert info.value.name == "t"
        assert info.value.position == 4

    def test_exponent_overflow(self, ctx2):
        with pytest.raises(ExponentOverflowError):
            parse_poly("x^4294967296", ctx2)
