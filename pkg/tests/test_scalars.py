"""Exact scalar backend: closure, rejection of mixing, serialization."""

import random
from fractions import Fraction

import pytest

from flagdual import GaussRational, format_exact, parse_exact
from flagdual.errors import BackendMismatch, ParseError
from flagdual.scalars import (nearly_equal, normalize_values,
                              scalar_from_json, scalar_to_json)

from helpers import rand_gauss_rational


def test_field_operations_are_closed_and_exact():
    rng = random.Random(11)
    for _ in range(300):
        a = rand_gauss_rational(rng)
        b = rand_gauss_rational(rng)
        for v in (a + b, a - b, a * b, a / b):
            assert isinstance(v, GaussRational)
        assert (a / b) * b == a
        assert a * b.conjugate() == (a.conjugate() * b).conjugate()
        assert a.norm() == (a * a.conjugate()).re


def test_int_and_fraction_mix_into_exact():
    a = GaussRational(Fraction(1, 2), Fraction(3))
    assert 1 - a == GaussRational(Fraction(1, 2), Fraction(-3))
    assert a * 2 == GaussRational(1, 6)
    assert 1 / GaussRational(0, 1) == GaussRational(0, -1)
    assert Fraction(1, 3) + a == GaussRational(Fraction(5, 6), 3)


def test_mixed_backend_is_rejected_not_coerced():
    a = GaussRational(1, 2)
    with pytest.raises(BackendMismatch):
        a + (0.5 + 0j)
    with pytest.raises(BackendMismatch):
        (0.5 + 0j) * a
    with pytest.raises(BackendMismatch):
        a / 0.25
    with pytest.raises(BackendMismatch):
        normalize_values([a, 1.0j])


def test_zero_division_raises():
    with pytest.raises(ZeroDivisionError):
        GaussRational(1) / GaussRational(0)


def test_format_parse_round_trip():
    rng = random.Random(12)
    for _ in range(300):
        q = rand_gauss_rational(rng, span=40)
        assert parse_exact(format_exact(q)) == q
    assert format_exact(GaussRational(2)) == "2"
    assert format_exact(GaussRational(Fraction(-3, 2))) == "-3/2"
    assert format_exact(GaussRational(Fraction(1, 2), Fraction(-3, 4))) \
        == "1/2-3/4*i"


def test_parse_accepts_common_forms():
    assert parse_exact("i") == GaussRational(0, 1)
    assert parse_exact("-i") == GaussRational(0, -1)
    assert parse_exact("2*i") == GaussRational(0, 2)
    assert parse_exact("3/4*i") == GaussRational(0, Fraction(3, 4))
    assert parse_exact(" 1/2 + 3/4*i ") == GaussRational(
        Fraction(1, 2), Fraction(3, 4))


@pytest.mark.parametrize("bad", ["", "x", "1//2", "1+2", "2i+1", "1.5",
                                 "1/2+*i", "i*i"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ParseError):
        parse_exact(bad)


def test_json_encoding_per_backend():
    assert scalar_to_json(GaussRational(Fraction(1, 3))) == "1/3"
    assert scalar_to_json(0.5 - 2j) == [0.5, -2.0]
    assert scalar_from_json("1/3", "auto") == GaussRational(Fraction(1, 3))
    assert scalar_from_json([0.5, -2.0], "auto") == 0.5 - 2j
    assert scalar_from_json("1/3", "float") == complex(1 / 3)
    with pytest.raises(ParseError):
        scalar_from_json([0.5, -2.0], "exact")


def test_nearly_equal_semantics():
    assert nearly_equal(GaussRational(1, 2), GaussRational(1, 2))
    assert not nearly_equal(GaussRational(1, 2), GaussRational(1, 3))
    assert nearly_equal(1 + 1e-14 + 0j, 1 + 0j)
    assert not nearly_equal(1 + 1e-6 + 0j, 1 + 0j)
    with pytest.raises(BackendMismatch):
        nearly_equal(GaussRational(1), 1 + 0j)
