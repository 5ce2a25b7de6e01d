import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from artin_density.arith import (
    Correction, FactoredInteger, as_rational, check_nonunit, discriminant_case,
    euler_phi, factor, is_prime, is_rational_square, is_squarefree, moebius,
    power_decompose, squarefree_kernel,
)
from artin_density.errors import DomainError, ResourceError

nonzero = st.integers(-10**12, 10**12).filter(bool)


def test_factor_examples():
    assert factor(1) == FactoredInteger(1, ())
    assert factor(-1) == FactoredInteger(-1, ())
    assert factor(-45) == FactoredInteger(-1, ((3, 2), (5, 1)))
    assert factor(10403) == FactoredInteger(1, ((101, 1), (103, 1)))
    assert str(factor(-45)) == "-3^2 * 5"


def test_factor_rejects():
    with pytest.raises(DomainError):
        factor(0)
    with pytest.raises(ResourceError):
        factor(2**127)


def test_factor_large_semiprimes():
    rng = random.Random(7)
    for _ in range(20):
        p, q = sympy.randprime(2**20, 2**32), sympy.randprime(2**30, 2**80)
        assert factor(p * q).value == p * q
        assert set(factor(p * q).primes) == {p, q}
    n = (2**61 - 1) * (2**31 - 1) * 3**4
    assert factor(n).factors == ((3, 4), (2**31 - 1, 1), (2**61 - 1, 1))
    for _ in range(10):
        m = math.prod(sympy.randprime(2, 2**rng.randint(2, 24)) for _ in range(5))
        assert dict(factor(m).factors) == sympy.factorint(m)


def test_is_prime_matches_sympy():
    for n in range(-5, 5000):
        assert is_prime(n) == sympy.isprime(n), n
    rng = random.Random(1)
    for _ in range(300):
        n = rng.getrandbits(rng.choice([40, 64, 90, 120]))
        assert is_prime(n) == sympy.isprime(n), n
    # strong pseudoprimes to several small bases
    for n in (3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


@settings(max_examples=2000, deadline=None)
@given(nonzero)
def test_factor_round_trip(n):
    f = factor(n)
    assert f.value == n
    assert FactoredInteger.parse(str(f)) == f
    assert all(is_prime(p) for p in f.primes)


def test_factored_integer_invariants():
    with pytest.raises(DomainError):
        FactoredInteger(1, ((5, 1), (3, 1)))
    with pytest.raises(DomainError):
        FactoredInteger(1, ((3, 0),))
    with pytest.raises(DomainError):
        FactoredInteger(0)
    with pytest.raises(DomainError):
        FactoredInteger.parse("4 * 3")


def test_moebius_examples_and_multiplicativity():
    assert (moebius(1), moebius(15), moebius(12), moebius(7)) == (1, 1, 0, -1)
    mu = [0] + [moebius(n) for n in range(1, 1000)]
    for a in range(1, 1000):
        for b in range(1, 1000 // a + 1):
            if a * b < 1000 and math.gcd(a, b) == 1:
                assert mu[a * b] == mu[a] * mu[b]
    assert all(mu[n] == sympy.mobius(n) for n in range(1, 1000))
    with pytest.raises(DomainError):
        moebius(0)


def test_euler_phi_and_squarefree():
    assert all(euler_phi(n) == sympy.totient(n) for n in range(1, 2000))
    assert is_squarefree(30) and not is_squarefree(12) and not is_squarefree(0)


def test_as_rational():
    assert as_rational("-15/49") == Fraction(-15, 49)
    assert as_rational(" 7 ") == 7
    assert as_rational(Fraction(3, 6)) == Fraction(1, 2)
    for bad in ("1/0", "abc", "1.5", "", True, 1.5):
        with pytest.raises(DomainError):
            as_rational(bad)
    for unit in (0, 1, -1, "2/2"):
        with pytest.raises(DomainError):
            check_nonunit(unit)


def test_squarefree_kernel_examples():
    assert squarefree_kernel(-3) == -3
    assert squarefree_kernel(8) == 2
    assert squarefree_kernel("-15/49") == -15
    assert squarefree_kernel(Fraction(2, 3)) == 6
    assert squarefree_kernel(-4) == -1


def test_power_decompose_examples():
    assert (power_decompose(8).base, power_decompose(8).tau) == (2, 3)
    assert (power_decompose(-4).base, power_decompose(-4).tau) == (-4, 1)
    assert (power_decompose(-27).base, power_decompose(-27).tau) == (-3, 3)
    assert (power_decompose(Fraction(4, 9)).base, power_decompose(Fraction(4, 9)).tau) == (Fraction(2, 3), 2)
    # -64 = (-4)**3; no even tau for negatives
    assert power_decompose(-64).tau == 3


rationals = st.builds(
    lambda s, b, e: s * Fraction(b) ** e,
    st.sampled_from([1, -1]),
    st.builds(Fraction, st.integers(1, 200), st.integers(1, 200)).filter(lambda q: q != 1),
    st.integers(1, 6),
)


@settings(max_examples=500, deadline=None)
@given(rationals)
def test_power_decompose_properties(a):
    pd = power_decompose(a)
    assert pd.value == a
    if a < 0:
        assert pd.tau % 2 == 1
    # base is not a further power: gcd of exponents (odd part if negative) is 1
    rest = power_decompose(pd.base)
    assert rest.tau == 1
    if pd.tau % 2:
        assert squarefree_kernel(a) == squarefree_kernel(pd.base)


def test_rational_square():
    assert is_rational_square(Fraction(4, 9)) and is_rational_square(16)
    assert not is_rational_square(-4) and not is_rational_square(8)


def test_discriminant_case():
    assert discriminant_case(-3) is Correction.APPLIES
    assert discriminant_case(2) is Correction.NONE
    assert discriminant_case(5) is Correction.APPLIES
    assert discriminant_case(-1) is Correction.NONE
    with pytest.raises(DomainError):
        discriminant_case(0)
