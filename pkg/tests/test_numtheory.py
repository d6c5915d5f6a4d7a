import math

import pytest

from nearperfect.numtheory import (
    divisors,
    exact_power,
    factorize,
    is_prime,
    is_prime_power,
    is_self_conjugate,
    mult_order,
    prime_divisors,
    strip_factor,
)


def test_factorize():
    assert factorize(92) == [(2, 2), (23, 1)]
    assert factorize(1) == []
    assert factorize(97) == [(97, 1)]
    for n in range(1, 2000):
        assert math.prod(q**r for q, r in factorize(n)) == n


def test_exact_power():
    assert exact_power(3, 6) == 1
    assert exact_power(2, 40) == 3
    assert exact_power(5, 7) == 0


def test_mult_order():
    assert mult_order(3, 10) == 4
    assert mult_order(2, 7) == 3
    assert mult_order(5, 1) == 1


def test_self_conjugate():
    assert is_self_conjugate(3, 10)
    assert not is_self_conjugate(2, 7)
    for q in (2, 3, 5, 7):
        assert is_self_conjugate(q, 1) and is_self_conjugate(q, 2)
    # 23^3 = -1 mod 9
    assert is_self_conjugate(23, 9)


def test_strip_factor():
    assert strip_factor(3, 54) == 2
    assert strip_factor(2, 7) == 7


def test_divisors():
    assert divisors(45) == [1, 3, 5, 9, 15, 45]
    assert divisors(1) == [1]
    assert divisors(97) == [1, 97]


def test_primes():
    small = [n for n in range(60) if is_prime(n)]
    assert small == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert prime_divisors(92) == [2, 23]
    assert is_prime_power(49) and is_prime_power(2) and not is_prime_power(12) and not is_prime_power(1)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)
