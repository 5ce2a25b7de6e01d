"""Artin constants as exact ratios and as certified real enclosures.

The constant attached to a rank sequence ``r_l`` is

    A_R = prod over primes l of (1 - 1 / (l**r_l * (l - 1)))

and the classical ``A(tau)`` is the rank-1 sequence with ``r_l = 0`` exactly
for the primes dividing ``tau``. Ratios between two such products differ in
finitely many factors and are therefore exact rationals.

Real values are returned as :class:`EulerProductValue` enclosures. The head
product over primes ``<= y`` is evaluated in fixed point with floor/ceiling
rounding; the tail over primes ``> y`` is bounded either by the elementary
estimate ``sum_{n > y} 2/n**(r+1)`` or, once ``y >= CHEBYSHEV_START``, by
partial summation against Chebyshev's ``theta`` using Dusart's explicit bound
``|theta(t) - t| < 0.2 t / log(t)**2`` (valid for ``t >= 3594641``).
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import iv, libmp

from .arith import is_prime, prime_divisors
from .errors import DomainError, ToleranceError
from .sieve import PRIMES

DEFAULT_PREC = int(os.environ.get("ARTIN_DENSITY_PREC", "128"))
DEFAULT_MAX_PRIME = 1 << 25
CHEBYSHEV_START = 3594641
CHEBYSHEV_EPS = Fraction(1, 5)  # |theta(t) - t| < CHEBYSHEV_EPS * t / log(t)**2
_FIRST_Y = 1 << 10


# ---------------------------------------------------------------------------
# rank sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankSequence:
    """``l -> r_l``: a default rank plus finitely many exceptional primes."""

    default_rank: int = 1
    exceptions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.default_rank < 1:
            raise DomainError(f"default rank must be >= 1, got {self.default_rank}")
        exc = tuple(sorted(dict(self.exceptions).items()))
        if len(exc) != len(self.exceptions):
            raise DomainError("duplicate exceptional prime")
        for ell, r in exc:
            if not is_prime(ell):
                raise DomainError(f"exception key {ell} is not prime")
            if not 0 <= r <= self.default_rank:
                raise DomainError(f"rank r_{ell} = {r} outside [0, {self.default_rank}]")
            if r == self.default_rank:
                raise DomainError(f"r_{ell} equals the default rank; drop it")
        object.__setattr__(self, "exceptions", exc)

    @classmethod
    def from_tau(cls, tau: int) -> RankSequence:
        """Ranks of ``<alpha>`` when ``alpha`` is exactly a ``tau``-th power."""
        return cls(1, tuple((ell, 0) for ell in prime_divisors(tau))) if tau > 1 else cls(1)

    @classmethod
    def parse(cls, spec: str) -> RankSequence:
        """``"r=1,3:0,5:0"`` -> default 1 with ``r_3 = r_5 = 0``."""
        default, exceptions = None, []
        for item in filter(None, (s.strip() for s in spec.split(","))):
            if m := re.fullmatch(r"r\s*=\s*(\d+)", item):
                default = int(m.group(1))
            elif m := re.fullmatch(r"(\d+)\s*:\s*(\d+)", item):
                exceptions.append((int(m.group(1)), int(m.group(2))))
            else:
                raise DomainError(f"malformed rank item {item!r}")
        if default is None:
            raise DomainError(f"rank spec {spec!r} lacks 'r=<default>'")
        return cls(default, tuple(exceptions))

    def __str__(self) -> str:
        return ",".join([f"r={self.default_rank}", *(f"{l}:{r}" for l, r in self.exceptions)])

    def rank(self, ell: int) -> int:
        return dict(self.exceptions).get(ell, self.default_rank)

    @property
    def max_exception(self) -> int:
        return max((l for l, _ in self.exceptions), default=1)


def local_factor(ell: int, rank: int) -> Fraction:
    """``1 - 1/(ell**rank * (ell - 1))``."""
    return 1 - Fraction(1, ell**rank * (ell - 1))


def artin_ratio(tau: int) -> Fraction:
    """``A(tau) / A(1)`` for odd ``tau``."""
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if tau % 2 == 0:
        raise DomainError("A(tau) vanishes for even tau; use artin_value")
    out = Fraction(1)
    for ell in prime_divisors(tau) if tau > 1 else ():
        out *= local_factor(ell, 0) / local_factor(ell, 1)
    return out


def artin_AR_ratio(ranks: RankSequence) -> Fraction:
    """``A_R`` divided by the constant with the default rank at every prime."""
    out = Fraction(1)
    for ell, r in ranks.exceptions:
        out *= local_factor(ell, r) / local_factor(ell, ranks.default_rank)
    return out


# ---------------------------------------------------------------------------
# certified enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerProductValue:
    lower: Fraction
    upper: Fraction
    truncation_prime: int
    tail_method: str = field(default="exact", compare=False)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x) -> bool:
        x = Fraction(x) if not isinstance(x, Fraction) else x
        return self.lower <= x <= self.upper

    def scale(self, c: Fraction) -> EulerProductValue:
        """Multiply the enclosure by a nonnegative exact rational."""
        c = Fraction(c)
        if c < 0:
            raise DomainError("scale factor must be nonnegative")
        return EulerProductValue(self.lower * c, self.upper * c, self.truncation_prime, self.tail_method)

    def intersect(self, other: EulerProductValue) -> EulerProductValue:
        lo, hi = max(self.lower, other.lower), min(self.upper, other.upper)
        if lo > hi:
            raise ArithmeticError("disjoint enclosures of the same quantity")
        y = max(self.truncation_prime, other.truncation_prime)
        return EulerProductValue(lo, hi, y, self.tail_method if self.width <= other.width else other.tail_method)

    def decimal(self, digits: int = 15) -> tuple[str, str]:
        """Endpoints as decimal strings with ``digits`` places, rounded outward."""
        q = 10**digits
        lo = math.floor(self.lower * q)
        hi = math.ceil(self.upper * q)
        return _fixed(lo, digits), _fixed(hi, digits)


def _fixed(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


_ZERO = EulerProductValue(Fraction(0), Fraction(0), 2)


def _endpoints(x) -> tuple[Fraction, Fraction]:
    a, b = x._mpi_
    return Fraction(*libmp.to_rational(a)), Fraction(*libmp.to_rational(b))


def _iv(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


class _HeadProduct:
    """Fixed-point product of default-rank factors over primes <= y, extended in place."""

    def __init__(self, rank: int, prec: int):
        self.rank, self.prec = rank, prec
        self.y = 1
        self.count = 0
        one = 1 << prec
        self.lo = self.hi = one

    def extend(self, y: int, batch: int = 64) -> None:
        if y <= self.y:
            return
        ps = PRIMES.upto(y)
        new = ps[self.count:].tolist()
        r = self.rank
        for i in range(0, len(new), batch):
            chunk = new[i : i + batch]
            dens = [ell**r * (ell - 1) for ell in chunk]
            num = math.prod(d - 1 for d in dens)
            den = math.prod(dens)
            self.lo = self.lo * num // den
            self.hi = -(-self.hi * num // den)
        self.count += len(new)
        self.y = y

    def interval(self) -> tuple[Fraction, Fraction]:
        scale = 1 << self.prec
        return Fraction(self.lo, scale), Fraction(self.hi, scale)


def _theta_enclosure(y: int) -> tuple[float, float]:
    ps = PRIMES.upto(y)
    theta = math.fsum(np.log(ps.astype(np.float64)).tolist())
    # each float log is within 2 ulp of the true value; fsum is exact on its inputs
    err = 4 * len(ps) * math.log(max(y, 2)) * 2.0**-52 + 1e-9
    return theta - err, theta + err


def _e1_enclosure(z):
    """Interval for E1(z), z an interval well above 1, from the alternating asymptotic series."""
    n = max(2, min(int(z.a) - 1, 30))
    partial, term = iv.mpf(0), iv.mpf(1)
    sums = []
    for k in range(n + 2):
        partial += term
        sums.append(partial)
        term = term * (-(k + 1)) / z
    a, b = sums[-2], sums[-1]
    lo = min(a.a, b.a)
    hi = max(a.b, b.b)
    return iv.exp(-z) / z * iv.mpf([lo, hi])


def _tail_log_bounds(y: int, rank: int) -> list[tuple[str, object]]:
    """Intervals containing ``S = -log prod_{l > y} (1 - 1/(l**rank (l-1)))``."""
    r = rank
    bounds = [("elementary", iv.mpf([0, 1]) * 2 / (r * iv.mpf(y) ** r))]
    if y >= CHEBYSHEV_START:
        ly = iv.log(iv.mpf(y))
        eps = _iv(CHEBYSHEV_EPS) / ly**2
        th_lo, th_hi = _theta_enclosure(y)
        theta = iv.mpf([th_lo, th_hi])
        h_y = 1 / (iv.mpf(y) ** (r + 1) * ly)
        J = y * h_y + _e1_enclosure(r * ly)
        base = -theta * h_y
        main_lo = base + (1 - eps) * J
        main_hi = base + (1 + eps) * J
        extra = 2 / ((r + 1) * iv.mpf(y) ** (r + 1))
        cheb = iv.mpf([main_lo.a, (main_hi + extra).b])
        bounds.append(("chebyshev", cheb))
    return bounds


def enclosure_at(ranks: RankSequence, y: int, prec: int = DEFAULT_PREC) -> EulerProductValue:
    """Enclosure of ``A_R`` truncated at the prime bound ``y`` (no refinement loop)."""
    head = _HeadProduct(ranks.default_rank, prec)
    return _combine(ranks, head, max(y, ranks.max_exception), prec)


def _combine(ranks: RankSequence, head: _HeadProduct, y: int, prec: int) -> EulerProductValue:
    if any(l == 2 and r == 0 for l, r in ranks.exceptions):
        return _ZERO
    head.extend(y)
    old_prec = iv.prec
    iv.prec = prec
    try:
        h_lo, h_hi = head.interval()
        h = iv.mpf([_iv(h_lo).a, _iv(h_hi).b]) * _iv(artin_AR_ratio(ranks))
        best = None
        for method, S in _tail_log_bounds(y, ranks.default_rank):
            s_lo, s_hi = _endpoints(S)
            S = iv.mpf([_iv(max(s_lo, Fraction(0))).a, _iv(s_hi).b])
            lo, hi = _endpoints(h * iv.exp(-S))
            val = EulerProductValue(lo, hi, y, method)
            best = val if best is None else best.intersect(val)
        return best
    finally:
        iv.prec = old_prec


@lru_cache(maxsize=256)
def euler_product(ranks: RankSequence, tol: float, prec: int = DEFAULT_PREC,
                  max_prime: int = DEFAULT_MAX_PRIME) -> EulerProductValue:
    """Certified enclosure of ``A_R`` of width ``<= tol``.

    The truncation bound doubles until the width target is met; successive
    enclosures are intersected, so refinement never widens the result.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    tol_q = Fraction(tol)
    head = _HeadProduct(ranks.default_rank, prec)
    y = max(_FIRST_Y, ranks.max_exception)
    best = None
    while True:
        val = _combine(ranks, head, y, prec)
        best = val if best is None else best.intersect(val)
        if best.width <= tol_q:
            return best
        if y >= max_prime:
            raise ToleranceError(
                f"width {float(best.width):.3g} > tol {tol:g} at prime bound {y}; "
                f"raise max_prime or precision")
        nxt = 2 * y
        if y < CHEBYSHEV_START < nxt:
            nxt = CHEBYSHEV_START
        y = min(nxt, max_prime)


def artin_value(tau: int, tol: float = 1e-10, prec: int = DEFAULT_PREC,
                max_prime: int = DEFAULT_MAX_PRIME) -> EulerProductValue:
    """Enclosure of ``A(tau)``; exactly zero for even ``tau``."""
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if tau % 2 == 0:
        return _ZERO
    return euler_product(RankSequence.from_tau(tau), tol, prec, max_prime)


def artin_AR_value(ranks: RankSequence, tol: float = 1e-10, prec: int = DEFAULT_PREC,
                   max_prime: int = DEFAULT_MAX_PRIME) -> EulerProductValue:
    return euler_product(ranks, tol, prec, max_prime)
