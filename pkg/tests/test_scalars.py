import itertools
from fractions import Fraction

import pytest

from skm.scalars import (
    DomainError,
    ParseError,
    Quad,
    Rat,
    RatFunc,
    ZERO,
    as_integer,
    format_scalar,
    is_in_even_nonpositive_integers,
    is_nonpositive_integer,
    parse_scalar,
    quad,
    ratfunc,
    rational,
    scalar_arith,
    shift_param,
    sign,
)


def S(text):
    return parse_scalar(text)


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------


def test_parse_rational_literal():
    assert S("-1/2") == Rat(Fraction(-1, 2))


def test_parse_quad_root_of_qmnt_quadratic():
    # oracle: (-9+sqrt(21))/10 must be an exact zero of f(a) = 5a^2 + 9a + 3
    a = S("(-9+sqrt(21))/10")
    assert a == Quad(21, Fraction(-9, 10), Fraction(1, 10))
    f = rational(5) * a * a + rational(9) * a + rational(3)
    assert f == ZERO


def test_parse_ratfunc_literal():
    v = S("p+1")
    assert isinstance(v, RatFunc)
    assert v == ratfunc((1, 1))


def test_parse_errors():
    with pytest.raises(ParseError):
        S("1 +")
    with pytest.raises(ParseError):
        S("sqrt(4)")  # square radicand
    with pytest.raises(ParseError):
        S("sqrt(p)")
    with pytest.raises(DomainError):
        S("sqrt(2)+sqrt(3)")  # mixed radicands
    with pytest.raises(DomainError):
        S("sqrt(2)*p")
    with pytest.raises(ZeroDivisionError):
        S("1/0")
    with pytest.raises(ZeroDivisionError):
        S("1/(p-p)")


def test_parse_precedence_and_unary_minus():
    assert S("1+2*3") == rational(7)
    assert S("-2*3") == rational(-6)
    assert S("2-1-1") == ZERO
    assert S("(1+sqrt(2))*(1-sqrt(2))") == rational(-1)


# --------------------------------------------------------------------------
# arithmetic
# --------------------------------------------------------------------------


def test_arith_examples():
    assert scalar_arith(S("1/2"), S("1/3"), "add") == S("5/6")
    # product of the two roots of 5a^2+9a+3 is 3/5 (expand (81-21)/100)
    prod = scalar_arith(S("(-9+sqrt(21))/10"), S("(-9-sqrt(21))/10"), "mul")
    assert prod == rational(Fraction(81 - 21, 100)) == S("3/5")
    q = scalar_arith(S("p+1"), S("p"), "div")
    assert q == ratfunc((1, 1), (0, 1))
    assert format_scalar(q) == "(p+1)/(p)"


def test_quad_division_exact():
    a = S("(-9+sqrt(21))/10")
    assert a / a == rational(1)
    inv = rational(1) / a
    assert inv * a == rational(1)


def test_domain_promotion():
    assert S("1/2") + S("sqrt(5)") == quad(5, Fraction(1, 2), 1)
    assert S("2") * S("p") == ratfunc((0, 2))
    with pytest.raises(DomainError):
        _ = S("sqrt(5)") + S("p")


def test_field_axioms_exhaustive_small_values():
    rats = [rational(n, d) for n in (-2, -1, 0, 1, 2) for d in (1, 2)]
    quads = [quad(21, a, b) for a in (-1, 0, 1) for b in (-1, 1)]
    rfs = [ratfunc((c, 1)) for c in (-1, 0, 1)] + [ratfunc((1,), (0, 1))]
    for pool in (rats, quads, rfs):
        for x, y, z in itertools.product(pool, repeat=3):
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x + y == y + x and x * y == y * x
        for x in pool:
            assert x + ZERO == x
            assert x * rational(1) == x
            assert x + (-x) == ZERO
            if not x.is_zero():
                assert x * (rational(1) / x) == rational(1)


def test_ratfunc_reduction_and_constants():
    # (p^2-1)/(p-1) reduces to p+1
    assert ratfunc((-1, 0, 1), (-1, 1)) == ratfunc((1, 1))
    # (2p+2)/(p+1) is the constant 2
    assert ratfunc((2, 2), (1, 1)) == rational(2)
    # denominator made monic
    v = ratfunc((1,), (2, 2))
    assert isinstance(v, RatFunc)
    assert v.den == (Fraction(1), Fraction(1))


# --------------------------------------------------------------------------
# sign
# --------------------------------------------------------------------------


def test_sign_examples():
    assert sign(S("-3/4")) == -1
    assert sign(S("(-9+sqrt(21))/10")) == -1  # sqrt(21) < 9
    assert sign(S("(sqrt(21)-3)/2")) == 1  # 21 > 9
    assert sign(ZERO) == 0
    with pytest.raises(DomainError):
        sign(S("p"))


def test_sign_multiplicative():
    vals = [S("-3/4"), S("2"), S("(-9+sqrt(21))/10"), S("(3-sqrt(2))/5"), S("-1-sqrt(2)")]
    pairs = [(x, y) for x in vals for y in vals if not (isinstance(x, Quad) and isinstance(y, Quad) and x.d != y.d)]
    for x, y in pairs:
        assert sign(x * y) == sign(x) * sign(y)


def test_sign_quad_against_float_oracle():
    import math

    for d in (2, 3, 5, 21):
        for a in (-3, -1, Fraction(-1, 2), 0, Fraction(1, 2), 2):
            for b in (-2, Fraction(-1, 3), Fraction(1, 3), 1):
                v = quad(d, a, b)
                approx = float(a) + float(b) * math.sqrt(d)
                want = 0 if abs(approx) < 1e-12 else (1 if approx > 0 else -1)
                assert sign(v) == want


# --------------------------------------------------------------------------
# integrality
# --------------------------------------------------------------------------


def test_as_integer_and_predicates():
    assert as_integer(S("-2")) == -2
    assert as_integer(S("(-9+sqrt(21))/10")) is None
    assert as_integer(S("p")) is None
    assert as_integer(S("4/2")) == 2
    assert is_nonpositive_integer(S("-2"))
    assert not is_nonpositive_integer(S("1/2"))
    assert is_in_even_nonpositive_integers(S("-2"))
    assert not is_in_even_nonpositive_integers(S("-3"))
    assert is_in_even_nonpositive_integers(ZERO)


def test_quad_as_integer_brute_force_window():
    # a Quad never equals an integer: |v - k| != 0 for all k in a window
    v = S("(-9+sqrt(21))/10")
    for k in range(-10, 11):
        assert (v - rational(k)).is_zero() is False
    assert as_integer(v) is None


# --------------------------------------------------------------------------
# formatting round trips
# --------------------------------------------------------------------------


def test_format_examples():
    assert format_scalar(S("-1/2")) == "-1/2"
    assert format_scalar(quad(21, Fraction(-9, 10), Fraction(1, 10))) == "(-9+sqrt(21))/10"
    assert format_scalar(ratfunc((1, 1))) == "p+1"


@pytest.mark.parametrize(
    "text",
    [
        "0",
        "-7",
        "22/7",
        "-1/2",
        "sqrt(2)",
        "-sqrt(2)",
        "3*sqrt(5)/7",
        "(-9+sqrt(21))/10",
        "(2-3*sqrt(13))/6",
        "1+sqrt(2)",
        "p",
        "p+1",
        "-p+1/2",
        "p*p-2*p+3",
        "(p+1)/(p)",
        "(p*p-1/3)/(p+2)",
        "(-1-p)/(p*p+1)",
    ],
)
def test_parse_format_round_trip(text):
    v = S(text)
    assert parse_scalar(format_scalar(v)) == v


def test_round_trip_on_arithmetic_closure():
    seeds = [S("-1/2"), S("2"), S("(-9+sqrt(21))/10"), S("p+1"), S("(p+1)/(p)")]
    pool = list(seeds)
    for x in seeds:
        for y in seeds:
            for op in ("add", "sub", "mul", "div"):
                try:
                    pool.append(scalar_arith(x, y, op))
                except (DomainError, ZeroDivisionError):
                    pass
    for v in pool:
        assert parse_scalar(format_scalar(v)) == v


# --------------------------------------------------------------------------
# parameter shifts
# --------------------------------------------------------------------------


def test_shift_param():
    v = S("p*p-1")
    assert shift_param(v, 1) == S("(p+1)*(p+1)-1")
    assert shift_param(S("1/2"), 3) == S("1/2")
    w = S("(p+1)/(p)")
    assert shift_param(shift_param(w, 2), -2) == w
