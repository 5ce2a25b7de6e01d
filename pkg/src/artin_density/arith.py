"""Exact integer and rational primitives.

Factorisation, the Moebius function, the squarefree kernel of a rational
number, its maximal power decomposition and the mod-4 test on the kernel that
decides whether Hooley's correction term is present.

Rational inputs are plain :class:`fractions.Fraction` values; every public
function accepts ``int``, ``Fraction`` or a string such as ``"-15/49"``.
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DomainError, ResourceError

FACTOR_LIMIT = 1 << 127

_SMALL_PRIMES = tuple(p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1)))
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with _MR_BASES is deterministic below this bound (Sorenson & Webster).
_MR_DETERMINISTIC = 3317044064679887385961981


# ---------------------------------------------------------------------------
# primality and factorisation
# ---------------------------------------------------------------------------

def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _half_mod(x: int, n: int) -> int:
    if x % 2:
        x += n
    return (x // 2) % n


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (odd, non-square n)."""
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = _half_mod(P * U + V, n), _half_mod(D * U + P * V, n)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 3.3e24 and BPSW above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _SMALL_PRIMES[-1] ** 2:
        return True
    if n < _MR_DETERMINISTIC:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    if math.isqrt(n) ** 2 == n:
        return False
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_positive(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = None
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            d = r
        else:
            # fixed seed keeps factor() deterministic
            rng = rng or random.Random(m)
            d = _pollard_brent(m, rng)
        stack.extend((d, m // d))
    return out


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer stored as a sign and sorted ``(prime, exponent)`` pairs."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        primes = [p for p, _ in self.factors]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise DomainError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise DomainError("exponents must be positive")

    @property
    def value(self) -> int:
        return self.sign * math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        body = " * ".join(parts) if parts else "1"
        return f"-{body}" if self.sign < 0 else body

    _TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")

    @classmethod
    def parse(cls, text: str) -> FactoredInteger:
        """Inverse of ``str``: ``"-3^2 * 5"`` -> ``FactoredInteger(-1, ((3, 2), (5, 1)))``."""
        text = text.strip()
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:].strip()
        if text == "1":
            return cls(sign)
        factors = []
        for token in text.split("*"):
            m = cls._TOKEN.match(token.strip())
            if m is None:
                raise DomainError(f"cannot parse factor {token!r}")
            p, e = int(m.group(1)), int(m.group(2) or 1)
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            factors.append((p, e))
        return cls(sign, tuple(factors))


def factor(n: int) -> FactoredInteger:
    """Prime factorisation of a nonzero integer with ``|n| < 2**127``.

    >>> str(factor(-45))
    '-3^2 * 5'
    """
    n = int(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    if abs(n) >= FACTOR_LIMIT:
        raise ResourceError(f"|n| must be below 2**127, got {n.bit_length()} bits")
    fac = _factor_positive(abs(n))
    return FactoredInteger(1 if n > 0 else -1, tuple(sorted(fac.items())))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factor(n).primes


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius is defined for n >= 1, got {n}")
    f = factor(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factor(n).factors)


def euler_phi(n: int) -> int:
    return math.prod((p - 1) * p ** (e - 1) for p, e in factor(n).factors)


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def as_rational(x) -> Fraction:
    """Coerce ``int``, ``Fraction`` or ``"a"``/``"-a"``/``"a/b"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?", x)
        if m is None:
            raise DomainError(f"malformed rational {x!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise DomainError(f"zero denominator in {x!r}")
        return Fraction(int(m.group(1)), den)
    raise DomainError(f"unsupported rational input {x!r}")


def check_nonunit(alpha) -> Fraction:
    """Return ``alpha`` as a Fraction, rejecting 0, 1 and -1."""
    a = as_rational(alpha)
    if a in (0, 1, -1):
        raise DomainError(f"alpha must not be 0 or +-1, got {a}")
    return a


def _exponents(a: Fraction) -> dict[int, int]:
    """Signed prime exponents of a nonzero rational (negative for the denominator)."""
    exps = dict(factor(a.numerator).factors) if abs(a.numerator) > 1 else {}
    if a.denominator > 1:
        for p, e in factor(a.denominator).factors:
            exps[p] = -e
    return exps


def squarefree_kernel(alpha) -> int:
    """Signed squarefree ``delta`` with ``alpha / delta`` a square in Q^x.

    For ``a/b`` this is the kernel of ``a*b``: the two differ by ``(1/b)**2``.
    """
    a = as_rational(alpha)
    if a == 0:
        raise DomainError("alpha must be nonzero")
    kernel = math.prod(p for p, e in _exponents(a).items() if e % 2)
    return kernel if a > 0 else -kernel


@dataclass(frozen=True)
class PowerDecomposition:
    base: Fraction
    tau: int

    @property
    def value(self) -> Fraction:
        return self.base**self.tau


def _odd_part(n: int) -> int:
    while n and n % 2 == 0:
        n //= 2
    return n


def power_decompose(alpha) -> PowerDecomposition:
    """Write ``alpha = base**tau`` with ``tau`` maximal.

    For negative ``alpha`` only odd ``tau`` are possible, since -1 has no
    square root in Q^x.
    """
    a = check_nonunit(alpha)
    exps = _exponents(a)
    g = reduce(math.gcd, (abs(e) for e in exps.values()), 0)
    tau = _odd_part(g) if a < 0 else g
    if tau == 0:
        # |alpha| = 1 was rejected above, so this cannot happen
        raise DomainError(f"degenerate rational {a}")
    base = Fraction(math.prod(p ** (e // tau) for p, e in exps.items() if e > 0),
                    math.prod(p ** (-e // tau) for p, e in exps.items() if e < 0))
    return PowerDecomposition(-base if a < 0 else base, tau)


def is_rational_square(alpha) -> bool:
    a = as_rational(alpha)
    return a > 0 and all(e % 2 == 0 for e in _exponents(a).values())


class Correction(enum.Enum):
    APPLIES = "correction-applies"
    NONE = "no-correction"


def discriminant_case(delta: int) -> Correction:
    """Hooley's correction is present exactly when ``delta = 1 (mod 4)``."""
    if delta == 0:
        raise DomainError("delta must be nonzero")
    return Correction.APPLIES if delta % 4 == 1 else Correction.NONE
