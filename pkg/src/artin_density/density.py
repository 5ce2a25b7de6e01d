"""Hooley's primitive-root density over Q and the extremal analysis of its ratio.

For a non-square ``alpha`` with power index ``tau`` and squarefree kernel
``delta``::

    dens(alpha) / A(tau) = 1                              if delta != 1 (mod 4)
                         = 1 - mu(|delta|) f_tau(delta)   otherwise

with ``f_tau(delta)`` the product over primes ``l | delta`` of
``F(l) = 1/(l - 2)`` when ``l | tau`` and ``G(l) = 1/(l**2 - l - 1)`` otherwise.

The module also carries an independent route to the same numbers: the
inclusion-exclusion sum of ``mu(n) / [Q(zeta_n, alpha**(1/n)) : Q]`` over
squarefree ``n`` built from small primes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import (
    Correction,
    check_nonunit,
    discriminant_case,
    euler_phi,
    is_prime,
    is_rational_square,
    is_squarefree,
    moebius,
    power_decompose,
    prime_divisors,
    squarefree_kernel,
)
from .constants import DEFAULT_MAX_PRIME, DEFAULT_PREC, EulerProductValue, artin_value, local_factor
from .errors import DomainError, ResourceError

MAX_EXPANSION_PRIME = 47


# ---------------------------------------------------------------------------
# the correction factor
# ---------------------------------------------------------------------------

def F(ell: int) -> Fraction:
    """Local factor of ``f_tau`` at a prime dividing both ``delta`` and ``tau``."""
    _check_odd_prime(ell)
    return Fraction(1, ell - 2)


def G(ell: int) -> Fraction:
    """Local factor of ``f_tau`` at a prime dividing ``delta`` but not ``tau``."""
    _check_odd_prime(ell)
    return Fraction(1, ell * ell - ell - 1)


def _check_odd_prime(ell: int) -> None:
    if ell == 2 or not is_prime(ell):
        raise DomainError(f"expected an odd prime, got {ell}")


def f_tau_delta(tau: int, delta: int) -> Fraction:
    if abs(delta) <= 1:
        raise DomainError("|delta| = 1 means alpha is +- a square")
    if delta % 2 == 0 or not is_squarefree(delta):
        raise DomainError(f"delta must be odd and squarefree, got {delta}")
    out = Fraction(1)
    for ell in prime_divisors(delta):
        out *= F(ell) if tau % ell == 0 else G(ell)
    return out


class Case(enum.Enum):
    NO_CORRECTION = "no-correction"
    CORRECTED = "corrected"
    ZERO_DENSITY = "zero-density"


@dataclass(frozen=True)
class HooleyResult:
    alpha: Fraction
    tau: int
    delta: int
    mu_abs_delta: int | None
    f_value: Fraction | None
    ratio: Fraction | None
    case: Case

    @property
    def zero_density(self) -> bool:
        return self.case is Case.ZERO_DENSITY


def _ratio_from(tau: int, delta: int) -> tuple[Fraction, int | None, Fraction | None, Case]:
    if discriminant_case(delta) is Correction.NONE:
        return Fraction(1), None, None, Case.NO_CORRECTION
    mu = moebius(abs(delta))
    f = f_tau_delta(tau, delta)
    return 1 - mu * f, mu, f, Case.CORRECTED


def hooley_ratio(alpha) -> HooleyResult:
    """``dens(alpha) / A(tau)`` as an exact rational.

    Squares have density zero; they come back tagged ``Case.ZERO_DENSITY``
    with ``ratio=None`` rather than raising.

    >>> hooley_ratio(-3).ratio
    Fraction(6, 5)
    """
    a = check_nonunit(alpha)
    pd = power_decompose(a)
    delta = squarefree_kernel(a)
    if is_rational_square(a):
        return HooleyResult(a, pd.tau, delta, None, None, None, Case.ZERO_DENSITY)
    ratio, mu, f, case = _ratio_from(pd.tau, delta)
    return HooleyResult(a, pd.tau, delta, mu, f, ratio, case)


def density_value(alpha, tol: float = 1e-10, prec: int = DEFAULT_PREC,
                  max_prime: int = DEFAULT_MAX_PRIME) -> EulerProductValue:
    """Certified enclosure of ``dens(alpha)``; exactly zero for squares."""
    res = hooley_ratio(alpha)
    if res.zero_density:
        return EulerProductValue(Fraction(0), Fraction(0), 2)
    # tighten the constant so the scaled width still meets tol
    inner = tol / float(res.ratio) * 0.999
    return artin_value(res.tau, inner, prec, max_prime).scale(res.ratio)


# ---------------------------------------------------------------------------
# Published bounds and extremal search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCase:
    tau: int
    t: int
    three_divides: bool


def _check_odd_tau(tau: int) -> None:
    if tau < 1 or tau % 2 == 0:
        raise DomainError(f"tau must be a positive odd integer, got {tau}")


def bound_case(tau: int) -> BoundCase:
    _check_odd_tau(tau)
    larger = [ell for ell in (prime_divisors(tau) if tau > 1 else ()) if ell > 3]
    return BoundCase(tau, min(larger, default=0), tau % 3 == 0)


PUBLISHED_TAU1_LOWER = Fraction(84, 85)


def theorem_bounds(tau: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds for ``dens(alpha)/A(tau)`` as published, case by case.

    For ``tau = 1`` the published lower bound is 84/85, while the formula
    gives ``1 - G(3) G(5) = 94/95`` at ``alpha = -15``; this function returns
    the published value and :func:`extremal_search` the computed one.
    """
    c = bound_case(tau)
    if tau == 1:
        return PUBLISHED_TAU1_LOWER, Fraction(6, 5)
    if c.t == 0:  # tau > 1 has only the prime 3
        lower = Fraction(18, 19)
    elif c.t == 5:
        lower = Fraction(2, 3) if c.three_divides else Fraction(14, 15)
    else:
        m = min(19, c.t - 2)
        lower = 1 - Fraction(1, m) if c.three_divides else 1 - Fraction(1, 5 * m)
    return lower, Fraction(2)


# Every F(l), G(l) with l >= 23 is at most G(5) = 1/19, so larger primes never
# improve on a candidate drawn from this set.
EXTREMAL_CANDIDATES = (3, 5, 7, 11, 13, 17, 19)


def check_candidate_dominance(up_to: int = 1000) -> bool:
    """Confirm numerically that primes in ``[23, up_to]`` are dominated by G(5)."""
    g5 = G(5)
    return all(F(ell) <= g5 and G(ell) <= g5 for ell in range(23, up_to + 1) if is_prime(ell))


assert check_candidate_dominance(200)


def _sign_for_correction(n: int) -> int:
    """The one of ``+n, -n`` that is 1 mod 4 (``n`` odd)."""
    return n if n % 4 == 1 else -n


def extremal_search(tau: int, direction: str) -> tuple[int, Fraction]:
    """Extremise ``1 - mu(|delta|) f_tau(delta)`` over the sufficient candidate set.

    ``direction="max"`` scans single-prime ``delta`` (``mu = -1``),
    ``direction="min"`` two-prime ``delta`` (``mu = +1``). Ties go to the
    smaller ``|delta|``, then to the negative sign.
    """
    _check_odd_tau(tau)
    direction = direction.lower()
    pool = sorted(set(EXTREMAL_CANDIDATES) | {ell for ell in _tau_primes(tau) if ell <= 21})
    if direction == "max":
        deltas = [_sign_for_correction(ell) for ell in pool]
    elif direction == "min":
        deltas = [_sign_for_correction(a * b) for a, b in combinations(pool, 2)]
    else:
        raise DomainError(f"direction must be 'min' or 'max', got {direction!r}")
    scored = [(_ratio_from(tau, d)[0], abs(d), d > 0, d) for d in deltas]
    if direction == "max":
        best = min(scored, key=lambda s: (-s[0], s[1], s[2]))
    else:
        best = min(scored, key=lambda s: (s[0], s[1], s[2]))
    return best[3], best[0]


def _tau_primes(tau: int) -> tuple[int, ...]:
    return prime_divisors(tau) if tau > 1 else ()


# ---------------------------------------------------------------------------
# Kummer degrees and the inclusion-exclusion expansion
# ---------------------------------------------------------------------------

def kummer_degree(n: int, alpha) -> int:
    """``[Q(zeta_n, alpha**(1/n)) : Q]`` for squarefree ``n``.

    This is ``n phi(n) / gcd(n, tau)``, halved when ``sqrt(alpha)`` already
    lies in ``Q(zeta_n)``: that happens exactly when ``2 | n``,
    ``delta = 1 (mod 4)`` and ``|delta|`` divides ``n``.
    """
    if n < 1 or not is_squarefree(n):
        raise DomainError(f"n must be a squarefree positive integer, got {n}")
    a = check_nonunit(alpha)
    if is_rational_square(a):
        raise DomainError(f"{a} is a square")
    tau = power_decompose(a).tau
    delta = squarefree_kernel(a)
    deg = n * euler_phi(n) // math.gcd(n, tau)
    if n % 2 == 0 and delta % 4 == 1 and n % abs(delta) == 0:
        deg //= 2
    return deg


def _primes_upto(y: int) -> list[int]:
    return [p for p in range(2, y + 1) if is_prime(p)]


def inclusion_exclusion(alpha, y: int) -> Fraction:
    """``sum over n | prod_{l <= y} l`` of ``mu(n) / kummer_degree(n, alpha)``."""
    if y > MAX_EXPANSION_PRIME:
        raise ResourceError(f"y = {y} exceeds {MAX_EXPANSION_PRIME} (2**pi(y) terms)")
    primes = _primes_upto(y)
    total = Fraction(0)
    for k in range(len(primes) + 1):
        sign = -1 if k % 2 else 1
        for combo in combinations(primes, k):
            total += Fraction(sign, kummer_degree(math.prod(combo), alpha))
    return total


def truncated_closed_form(alpha, y: int) -> Fraction:
    """Hooley's closed form with every Euler factor cut off at the prime bound ``y``.

    The correction term only appears once all primes of ``2 |delta|`` are
    ``<= y``; before that the entanglement is invisible to the truncation.
    """
    res = hooley_ratio(alpha)
    if res.zero_density:
        raise DomainError(f"{res.alpha} is a square")
    head = Fraction(1)
    for ell in _primes_upto(y):
        head *= local_factor(ell, 0 if res.tau % ell == 0 else 1)
    visible = res.case is Case.CORRECTED and max(prime_divisors(abs(res.delta))) <= y
    return head * res.ratio if visible else head


def restricted_density(alpha, primes: frozenset[int]) -> Fraction:
    """Density of primes whose index is coprime to every ``l`` in the finite set ``primes``.

    Equals the inclusion-exclusion sum over squarefree ``n`` built from
    ``primes``, evaluated in closed form.
    """
    res = hooley_ratio(alpha)
    if res.zero_density:
        raise DomainError(f"{res.alpha} is a square")
    head = Fraction(1)
    for ell in sorted(primes):
        head *= 1 - Fraction(1, kummer_degree(ell, res.alpha))
    entangled = {2, *prime_divisors(abs(res.delta))} if res.case is Case.CORRECTED else None
    if entangled and entangled <= set(primes):
        head *= res.ratio
    return head


def cofinite_density(alpha, excluded: frozenset[int], tol: float = 1e-10,
                     prec: int = DEFAULT_PREC) -> EulerProductValue:
    """Density of primes whose index has no prime factor outside ``excluded``."""
    res = hooley_ratio(alpha)
    if res.zero_density:
        return EulerProductValue(Fraction(0), Fraction(0), 2)
    removed = Fraction(1)
    for ell in sorted(excluded):
        removed *= 1 - Fraction(1, kummer_degree(ell, res.alpha))
    if removed == 0:
        raise DomainError("excluded set contains a prime with vanishing local factor")
    factor = 1 / removed
    entangled = {2, *prime_divisors(abs(res.delta))} if res.case is Case.CORRECTED else None
    if entangled and not (entangled & set(excluded)):
        factor *= res.ratio
    return artin_value(res.tau, tol / float(factor) * 0.999, prec).scale(factor)
