import random

import pytest

from monocover.errors import PreconditionError
from monocover.exactnum import (
    PowNum,
    cmp_power,
    exact_cmp,
    exact_root,
    int_nthroot,
    parse_exact,
)


def random_pownum(rng, base, max_exp=30, terms=3):
    digits = {rng.randint(0, max_exp): rng.randint(1, base * 3) for _ in range(terms)}
    return PowNum(base, digits)


def test_pownum_matches_int_arithmetic():
    rng = random.Random(0)
    for _ in range(300):
        base = rng.choice([2, 3, 9, 10, 257])
        a = random_pownum(rng, base)
        b = random_pownum(rng, base)
        ai, bi = a.to_int(), b.to_int()
        assert (a + b).to_int() == ai + bi
        assert (a * b).to_int() == ai * bi
        assert (a ** 3).to_int() == ai ** 3
        assert (a < b) == (ai < bi)
        assert (a == b) == (ai == bi)
        assert (a >= b) == (ai >= bi)
        k = rng.randint(0, 10 ** 6)
        assert (a + k).to_int() == ai + k
        assert (a * k).to_int() == ai * k
        assert (a < k) == (ai < k) and (k < a) == (k < ai)


def test_pownum_from_int_round_trip():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(0, 10 ** 18)
        base = rng.choice([2, 9, 1000])
        assert PowNum.from_int(n, base).to_int() == n


def test_pownum_string_round_trip():
    p = PowNum(9, {4672: 1, 2: 3, 0: 5})
    assert p.to_string() == "9^4672+3*9^2+5"
    assert PowNum.parse(p.to_string()) == p
    assert parse_exact("17") == 17
    assert parse_exact("3/4").numerator == 3
    assert parse_exact("2*9^3") == PowNum(9, {3: 2})


def test_pownum_refuses_mixed_bases_and_materialization():
    with pytest.raises(PreconditionError):
        PowNum(2, {0: 1}) + PowNum(3, {0: 1})
    huge = PowNum.power(9, 10 ** 15)
    with pytest.raises(PreconditionError):
        huge.to_int()
    # but comparison works without materialising
    assert huge > PowNum.power(9, 10 ** 14)


def test_cmp_power_spec_values():
    # 16 = (2^24)^(1/6), 17 is above it
    assert cmp_power(16, 2 ** 24, 1, 6) == 0
    assert cmp_power(17, 2 ** 24, 1, 6) == 1
    assert cmp_power(15, 2 ** 24, 1, 6) == -1


def test_cmp_power_schedule_identity():
    # k_{i-1} = k_i^(1/4r) for k_i = 9^((4r)^(i+1)), here r=2, i=3
    r, i = 2, 3
    k_i = PowNum.power(9, (4 * r) ** (i + 1))
    k_prev = PowNum.power(9, (4 * r) ** i)
    assert cmp_power(k_prev, k_i, 1, 4 * r) == 0
    assert cmp_power(k_prev + 1, k_i, 1, 4 * r) == 1


def test_cmp_power_with_scale():
    # x vs k^(1/2) * y: 12 vs 4 * 3 exactly
    assert cmp_power(12, 16, 1, 2, scale=3) == 0
    assert cmp_power(13, 16, 1, 2, scale=3) == 1
    assert cmp_power(11, 16, 1, 2, scale=3) == -1


def test_int_nthroot_and_exact_root():
    assert int_nthroot(2 ** 24, 6) == 16
    assert int_nthroot(2 ** 24 + 1, 6) is None
    assert int_nthroot(0, 5) == 0
    assert exact_root(2 ** 24, 8) == 8
    p = PowNum.power(9, 4096)
    assert exact_root(p, 8) == PowNum.power(9, 512)
    # 9^7 materialises and is a perfect square because 9 is one
    assert exact_root(PowNum.power(9, 7), 2) == PowNum.from_int(3 ** 7, 9)
    assert exact_root(PowNum.power(2, 7), 2) is None
    # odd exponent and far too large to materialise: conservatively None
    assert exact_root(PowNum.power(2, 10 ** 15 + 1), 2) is None


def test_exact_cmp_mixed():
    assert exact_cmp(5, PowNum.power(2, 3)) < 0
    assert exact_cmp(PowNum.power(2, 3), 8) == 0
    assert exact_cmp(9, PowNum.power(2, 3)) > 0
