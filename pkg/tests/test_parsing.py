import random

import pytest

from primlen.errors import ParseError
from primlen.field import GF, QQ
from primlen.metalie import LieElement, normalize_word
from primlen.multipoly import Polynomial
from primlen.parsing import lie_to_str, parse_lie, parse_poly, poly_to_str

from conftest import rand_lie, rand_poly


def test_parse_poly_example():
    f = parse_poly("x1^2 - 1/2*x2", 2, QQ)
    assert f == Polynomial(2, QQ, {(2, 0): QQ(1), (0, 1): QQ(-1, 2)})


def test_parse_lie_example():
    u = parse_lie("[x2,x1,x3] + 2*x1", 3, QQ)
    expected = normalize_word((2, 1, 3), 3, QQ) + LieElement.generator(3, QQ, 1).scale(QQ(2))
    assert u == expected


def test_parse_lie_normalizes():
    u = parse_lie("[x1,x2]", 3, QQ)
    assert u == -normalize_word((2, 1), 3, QQ)
    assert lie_to_str(u) == "-[x2,x1]"


def test_poly_precedence():
    f = parse_poly("-x1^2", 2, QQ)
    assert f == -(Polynomial.variable(2, QQ, 1) ** 2)
    f = parse_poly("2*x1+3*x2^2*x1", 2, QQ)
    assert f == Polynomial(2, QQ, {(1, 0): 2, (1, 2): 3})
    f = parse_poly("(x1+x2)^2", 2, QQ)
    assert f == parse_poly("x1^2+2*x1*x2+x2^2", 2, QQ)


def test_poly_division_by_constant_only():
    f = parse_poly("x1/2", 2, QQ)
    assert f == Polynomial.variable(2, QQ, 1).scale(QQ(1, 2))
    with pytest.raises(ParseError):
        parse_poly("x1/x2", 2, QQ)
    with pytest.raises(ParseError):
        parse_poly("x1/0", 2, QQ)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_poly("x1 + + x2", 2, QQ)
    assert info.value.position == 5
    with pytest.raises(ParseError):
        parse_poly("x3", 2, QQ)  # arity overflow
    with pytest.raises(ParseError):
        parse_poly("x1 $ x2", 2, QQ)
    with pytest.raises(ParseError):
        parse_lie("[x1]", 3, QQ)
    with pytest.raises(ParseError):
        parse_lie("3", 3, QQ)  # bare nonzero constant


def test_lie_zero_literal():
    assert parse_lie("0", 3, QQ).is_zero()
    assert lie_to_str(LieElement.zero(3, QQ)) == "0"


def test_poly_zero_literal():
    assert parse_poly("0", 2, QQ).is_zero()
    assert poly_to_str(Polynomial.zero(2, QQ)) == "0"


def test_poly_round_trip_randomized():
    rng = random.Random(61)
    for field in (QQ, GF(5)):
        for _ in range(100):
            f = rand_poly(rng, rng.randint(1, 3), rng.randint(0, 4), field=field)
            assert parse_poly(poly_to_str(f), f.arity, field) == f


def test_lie_round_trip_randomized():
    rng = random.Random(62)
    for field in (QQ, GF(2), GF(3)):
        for _ in range(100):
            u = rand_lie(rng, rng.randint(2, 4), rng.randint(1, 5), field=field)
            assert parse_lie(lie_to_str(u), u.arity, field) == u


def test_gf_scalars_print_as_residues():
    F = GF(3)
    u = normalize_word((2, 1), 3, F).scale(F(2))
    assert lie_to_str(u) == "2*[x2,x1]"
    f = Polynomial(2, F, {(1, 0): 2})
    assert poly_to_str(f) == "2*x1"


def test_canonical_order_is_graded_lex_descending():
    f = parse_poly("x2 + x1 + x1*x2 + x1^2 + 7", 2, QQ)
    assert poly_to_str(f) == "x1^2 + x1*x2 + x1 + x2 + 7"
