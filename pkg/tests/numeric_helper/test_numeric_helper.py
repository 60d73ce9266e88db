"""
Numeric Helper test — Gaussian rationals, the two coefficient domains, scalar JSON.

Run:
    python tests/numeric_helper/test_numeric_helper.py
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "src"))
from inoprodvec.numeric_helper import (
    EXACT,
    FLOAT,
    DomainError,
    GaussianRational as G,
    InoNumericHelper,
    ScalarOverflowError,
)


def _random_gaussian(rng) -> G:
    return G(Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9))),
             Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9))))


def test_conj_examples():
    assert InoNumericHelper.conj(G(3, 4)) == G(3, -4)
    assert InoNumericHelper.conj(G(16, 492)) == G(16, -492)
    assert InoNumericHelper.conj(5) == 5
    assert InoNumericHelper.conj(Fraction(1, 3)) == Fraction(1, 3)
    assert InoNumericHelper.conj(3 + 4j) == 3 - 4j


def test_conj_is_an_involutive_automorphism():
    rng = np.random.default_rng(11)
    for _ in range(200):
        x, y = _random_gaussian(rng), _random_gaussian(rng)
        assert InoNumericHelper.conj(InoNumericHelper.conj(x)) == x
        assert InoNumericHelper.conj(x * y) == InoNumericHelper.conj(x) * InoNumericHelper.conj(y)
        assert InoNumericHelper.conj(x + y) == InoNumericHelper.conj(x) + InoNumericHelper.conj(y)


def test_conj_float_agrees_with_exact():
    rng = np.random.default_rng(12)
    for _ in range(100):
        x, y = _random_gaussian(rng), _random_gaussian(rng)
        exact = InoNumericHelper.approx(InoNumericHelper.conj(x * y))
        fx, fy = InoNumericHelper.approx(x), InoNumericHelper.approx(y)
        approx = InoNumericHelper.conj(fx * fy)
        assert abs(approx - exact) <= 1e-15 * max(1.0, abs(exact)) * 4


def test_field_axioms_hold_exactly():
    rng = np.random.default_rng(5)
    for _ in range(300):
        a, b, c = _random_gaussian(rng), _random_gaussian(rng), _random_gaussian(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if a:
            assert a * (1 / a) == 1
            assert (b / a) * a == b


def test_lowest_terms():
    x = G(Fraction(2, 4), Fraction(-3, 6))
    assert x.re == Fraction(1, 2)
    assert x.im == Fraction(-1, 2)
    assert x.re.denominator > 0


def test_approx_examples():
    assert InoNumericHelper.approx(G(Fraction(1, 2))) == 0.5 + 0j
    assert InoNumericHelper.approx(G(0)) == 0j
    assert InoNumericHelper.approx(G(Fraction(1, 3))) == complex(1 / 3)
    assert InoNumericHelper.approx(G(Fraction(2, 3), -1)) == complex(2 / 3, -1)


def test_approx_overflow_is_an_error():
    try:
        InoNumericHelper.approx(G(10 ** 400))
        assert False, "expected ScalarOverflowError"
    except ScalarOverflowError:
        pass


def test_float_domain_rejects_non_finite():
    try:
        FLOAT.coerce(complex(float("inf"), 0))
        assert False, "expected ScalarOverflowError"
    except ScalarOverflowError:
        pass


def test_exact_reads_floats_by_their_decimal_form():
    assert G(0.1).re == Fraction(1, 10)
    assert G("3/7", "-1/2") == G(Fraction(3, 7), Fraction(-1, 2))
    assert G.from_complex_exact(0.1 + 0j).re == Fraction(0.1)


def test_encode_scalar():
    assert InoNumericHelper.encode_scalar(G(Fraction(1, 3), -2)) == ["1/3", "-2/1"]
    assert InoNumericHelper.encode_scalar(1.5 - 2j) == [1.5, -2.0]


def test_decode_scalar():
    assert InoNumericHelper.decode_scalar(["1/3", "-2/1"]) == G(Fraction(1, 3), -2)
    assert InoNumericHelper.decode_scalar([0.25, 1]) == G(Fraction(1, 4), 1)
    assert InoNumericHelper.decode_scalar(7) == G(7)
    assert InoNumericHelper.decode_scalar(["1/3", "0"], FLOAT) == complex(1 / 3)


def test_decode_scalar_shape_error():
    try:
        InoNumericHelper.decode_scalar([1, 2, 3])
        assert False, "expected ProdVecError"
    except ValueError:
        pass


def test_field_named():
    assert InoNumericHelper.field_named("exact") is EXACT
    assert InoNumericHelper.field_named("float") is FLOAT
    try:
        InoNumericHelper.field_named("quaternion")
        assert False, "expected DomainError"
    except DomainError:
        pass


def test_field_of():
    assert InoNumericHelper.field_of(G(1)) is EXACT
    assert InoNumericHelper.field_of(1j) is FLOAT


def test_snap():
    assert InoNumericHelper.snap(0.5000000000001 - 2.0000000000003j) == G(Fraction(1, 2), -2)
    assert InoNumericHelper.snap(1 / 3 + 0j) == G(Fraction(1, 3))


def test_float_zero_test_is_relative():
    assert FLOAT.is_zero(1e-13)
    assert not FLOAT.is_zero(1e-11)
    assert FLOAT.is_zero(1e-5, scale=1e8)
    assert EXACT.is_zero(G(0))
    assert not EXACT.is_zero(G(0, Fraction(1, 10 ** 30)))


if __name__ == "__main__":
    test_conj_examples()
    test_conj_is_an_involutive_automorphism()
    test_conj_float_agrees_with_exact()
    test_field_axioms_hold_exactly()
    test_lowest_terms()
    test_approx_examples()
    test_approx_overflow_is_an_error()
    test_float_domain_rejects_non_finite()
    test_exact_reads_floats_by_their_decimal_form()
    test_encode_scalar()
    test_decode_scalar()
    test_decode_scalar_shape_error()
    test_field_named()
    test_field_of()
    test_snap()
    test_float_zero_test_is_relative()
    print("All tests passed!")
