import math
import random
from fractions import Fraction

import pytest

from artin_density.arith import is_squarefree, prime_divisors
from artin_density.constants import RankSequence
from artin_density.density import hooley_ratio
from artin_density.errors import DomainError
from artin_density.nf_bounds import (
    FieldData, corollary_constants, crude_upper_bound, lower_bound_constant,
    script_B, upper_bound,
)

from .oracles import primes_below

R1 = RankSequence(1)


def test_upper_bound_examples():
    assert upper_bound(FieldData(2, 2, R1)) == 2
    assert upper_bound(FieldData(6, 2, R1)) == Fraction(12, 5)
    assert upper_bound(FieldData(6, 2, RankSequence.parse("r=1,3:0"))) == 4
    with pytest.raises(DomainError):
        upper_bound(FieldData(2, 2, RankSequence.parse("r=1,2:0")))


def test_crude_upper_bound_examples():
    assert crude_upper_bound(2) == 2
    assert crude_upper_bound(6) == 4
    assert crude_upper_bound(30) == Fraction(16, 3)
    for bad in (3, 12, 0):
        with pytest.raises(DomainError):
            crude_upper_bound(bad)


def test_script_B_examples():
    assert script_B(FieldData(2, 2)) == 6
    assert script_B(FieldData(6, 2)) == 6
    # primes l with l - 1 < 12 outside B = 6 are 5, 7, 11
    assert script_B(FieldData(6, 6)) == 2 * 3 * 5 * 7 * 11


def test_lower_bound_examples():
    assert lower_bound_constant(FieldData(2, 2)) == Fraction(1, 48)
    assert lower_bound_constant(FieldData(6, 2)) == Fraction(1, 48)


def test_corollary_examples():
    assert corollary_constants(FieldData(2, 2)) == (Fraction(1, 48), 2)
    assert corollary_constants(FieldData(6, 2)) == (Fraction(1, 48), 4)
    with pytest.raises(DomainError):
        corollary_constants(FieldData(2, 2, RankSequence.parse("r=1,2:0")))


@pytest.mark.parametrize("B, Q", [(3, 3), (12, 2), (6, 3), (2, 6), (10, 6), (0, 2)])
def test_field_data_validation(B, Q):
    with pytest.raises(DomainError):
        FieldData(B, Q)


def _random_field_data(rng: random.Random) -> FieldData:
    while True:
        B = 2 * rng.randrange(1, 5000, 2)
        if is_squarefree(B):
            break
    ps = prime_divisors(B)
    Q = 2 * math.prod(p for p in ps[1:] if rng.random() < 0.3)
    r = rng.randint(1, 3)
    exc = tuple((p, rng.randrange(0, r)) for p in ps[1:] if rng.random() < 0.4)
    if rng.random() < 0.3 and r > 1:
        exc += ((2, rng.randint(1, r - 1)),)
    return FieldData(B, Q, RankSequence(r, exc))


def test_random_field_data_chain():
    rng = random.Random(2024)
    for _ in range(1000):
        d = _random_field_data(rng)
        c, up, crude = lower_bound_constant(d), upper_bound(d), crude_upper_bound(d.B)
        assert 0 < c <= 1 < up <= crude
        sb = script_B(d)
        assert sb % d.B == 0
        # every prime of script_B is at most max(B, 2Q)
        assert all(sb % (p * p) for p in primes_below(max(d.B, 2 * d.Q)))


def test_rational_specialisation_contains_hooley_ratios():
    c0, C0 = corollary_constants(FieldData(2, 2))
    assert C0 == 2
    for a in list(range(-300, 301)) + [Fraction(5, 3), (-15) ** 15, -27]:
        if a in (-1, 0, 1):
            continue
        r = hooley_ratio(a)
        if not r.zero_density:
            assert c0 <= r.ratio <= C0
