"""Binomial-basis polynomial arithmetic."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from grapeconf import binpoly
from grapeconf.binpoly import BinPoly, ONE, ZERO, binom, conv, evaluate, shift_plus
from grapeconf.errors import ParseError


def random_poly(rng: random.Random, max_deg: int = 4, span: int = 9) -> BinPoly:
    return BinPoly({j: rng.randint(-span, span) for j in range(rng.randint(0, max_deg) + 1)})


def conv_values_oracle(p: BinPoly, q: BinPoly, k: int) -> int:
    """Independent value of (p * q)(k): difference of the Cauchy-product
    partial sums S(k) = sum_{a+b=k} p(a) q(b)."""

    def s(m: int) -> int:
        if m < 0:
            return 0
        return sum(evaluate(p, a) * evaluate(q, m - a) for a in range(m + 1))

    return s(k) - s(k - 1)


def test_binom_conventions():
    assert binom(4, 2) == 6
    assert binom(4, 0) == 1
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_eval_examples():
    assert evaluate(BinPoly.basis(2), 4) == 6
    assert evaluate(ZERO, 7) == 0
    # first Hilbert polynomial of the (3,4) shape evaluates to 3 at one point
    n34 = BinPoly({j: 8 * binom(5, j - 1) - binom(5, j) for j in range(1, 7)})
    assert evaluate(n34, 1) == 3
    assert n34.coeff(6) == 8 and n34.coeff(1) == 3


def test_shift_plus_examples():
    assert evaluate(shift_plus(ONE), 3) == 4
    assert shift_plus(BinPoly.basis(1)) == BinPoly({2: 1, 1: 1})
    assert evaluate(shift_plus(BinPoly.basis(1)), 3) == 6
    assert shift_plus(ZERO) == ZERO


def test_shift_plus_is_partial_sum():
    rng = random.Random(1)
    for _ in range(30):
        p = random_poly(rng)
        sp = shift_plus(p)
        for k in range(8):
            assert evaluate(sp, k) == sum(evaluate(p, t) for t in range(k + 1))
            if k >= 1:
                assert evaluate(sp, k) - evaluate(sp, k - 1) == evaluate(p, k)


def test_conv_examples():
    n11 = BinPoly.basis(1)
    n03 = BinPoly.basis(2)
    assert conv(ONE, n11) == n11
    assert conv(BinPoly.basis(1), BinPoly.basis(1)) == BinPoly.basis(2)
    assert conv(n11, n03) == BinPoly.basis(3)


def test_conv_against_value_oracle():
    rng = random.Random(2)
    for _ in range(25):
        p, q = random_poly(rng), random_poly(rng)
        pq = conv(p, q)
        for k in range(9):
            assert evaluate(pq, k) == conv_values_oracle(p, q, k)


def test_generating_function_lemma():
    # truncated product of the value series equals the series of the shifted product
    rng = random.Random(3)
    kmax = 9
    for _ in range(15):
        p, q = random_poly(rng, 3), random_poly(rng, 3)
        lhs = [
            sum(evaluate(p, a) * evaluate(q, k - a) for a in range(k + 1))
            for k in range(kmax + 1)
        ]
        sp = shift_plus(conv(p, q))
        assert lhs == [evaluate(sp, k) for k in range(kmax + 1)]


def test_vandermonde_identity_exhaustive():
    for j1 in range(13):
        for j2 in range(13):
            for k in range(13):
                lhs = sum(binom(k1, j1) * binom(k - k1, j2) for k1 in range(k + 1))
                assert lhs == binom(k + 1, j1 + j2 + 1)


def test_conv_monoid_properties():
    rng = random.Random(4)
    for _ in range(20):
        p, q, r = (random_poly(rng, 3) for _ in range(3))
        assert conv(p, q) == conv(q, p)
        assert conv(conv(p, q), r) == conv(p, conv(q, r))
        assert conv(p, q + r) == conv(p, q) + conv(p, r)
        assert conv(ONE, p) == p


def test_monomial_conversion_examples():
    assert binpoly.to_monomial(BinPoly.basis(2)) == [Fraction(0), Fraction(-1, 2), Fraction(1, 2)]
    assert binpoly.from_monomial([0, 0, 1]) == BinPoly({1: 1, 2: 2})
    assert binpoly.to_monomial(BinPoly.const(7)) == [Fraction(7)]
    assert binpoly.to_monomial(ZERO) == []


def test_monomial_round_trip_and_leading():
    import math

    rng = random.Random(5)
    for _ in range(25):
        p = random_poly(rng)
        mono = binpoly.to_monomial(p)
        assert binpoly.from_monomial(mono) == p
        d = p.degree
        if d is not None:
            assert mono[d] == Fraction(p.blead, math.factorial(d))
        # both representations agree pointwise
        for k in range(6):
            assert sum(c * k ** t for t, c in enumerate(mono)) == evaluate(p, k)


def test_from_monomial_rejects_non_integer_valued():
    with pytest.raises(ValueError):
        binpoly.from_monomial([0, 0, Fraction(1, 2)])


def test_render_parse_round_trip():
    cases = [
        ZERO,
        ONE,
        BinPoly({2: 3, 1: -1, 0: 1}),
        BinPoly({5: -2}),
        BinPoly({3: 1, 0: -7}),
    ]
    assert binpoly.render(BinPoly({2: 3, 1: -1, 0: 1})) == "3*C(k,2) - C(k,1) + 1"
    assert binpoly.render(ZERO) == "0"
    for p in cases:
        assert binpoly.parse(binpoly.render(p)) == p
    rng = random.Random(6)
    for _ in range(30):
        p = random_poly(rng)
        assert binpoly.parse(binpoly.render(p)) == p


def test_parse_rejects_garbage():
    for bad in ["", "C(j,2)", "2 **", "x + 1", "C(k,)"]:
        with pytest.raises(ParseError):
            binpoly.parse(bad)


def test_json_round_trip():
    p = BinPoly({2: 3, 1: -1, 0: 1})
    blob = binpoly.to_json_dict(p)
    assert blob == {"binomial": {"2": 3, "1": -1, "0": 1}}
    assert binpoly.from_json_dict(blob) == p
