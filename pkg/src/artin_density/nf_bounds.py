"""Uniform bounds for ``dens(G) / A_R`` over a number field, from its data ``(B, Q, r_l)``.

The field itself never appears: callers supply ``B`` (squarefree part of the
smallest even conductor of the maximal abelian subfield), ``Q`` (product of
the primes ``q`` with ``zeta_q`` in the field) and the rank sequence of ``G``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_prime, is_squarefree, prime_divisors
from .constants import RankSequence, local_factor
from .errors import DomainError

PROOF_ASSEMBLED = "proof-assembled"
PAPER_FORMULA = "paper-formula"


@dataclass(frozen=True)
class FieldData:
    B: int
    Q: int
    ranks: RankSequence = RankSequence(1)

    def __post_init__(self):
        if self.B < 2 or self.B % 2 or not is_squarefree(self.B):
            raise DomainError(f"B must be even and squarefree, got {self.B}")
        if self.Q < 2 or self.Q % 2 or not is_squarefree(self.Q):
            raise DomainError(f"Q must be squarefree and even (zeta_2 = -1 is in every field), got {self.Q}")
        if self.B % self.Q:
            raise DomainError(f"Q = {self.Q} must divide B = {self.B}")


def _require_r2(data: FieldData) -> None:
    if data.ranks.rank(2) == 0:
        raise DomainError("r_2 = 0: G consists of squares, so dens(G) = 0 (in particular, r_2 > 0 fails)")


def upper_bound(data: FieldData) -> Fraction:
    """``prod_{l | B} (1 - 1/(l**r_l (l - 1)))**-1``."""
    _require_r2(data)
    out = Fraction(1)
    for ell in prime_divisors(data.B):
        out /= local_factor(ell, data.ranks.rank(ell))
    return out


def crude_upper_bound(B: int) -> Fraction:
    """``2 prod_{l | B/2} (l - 1)/(l - 2)``: the worst case over all rank sequences."""
    if B < 2 or B % 2 or not is_squarefree(B):
        raise DomainError(f"B must be even and squarefree, got {B}")
    out = Fraction(2)
    for ell in prime_divisors(B // 2) if B > 2 else ():
        out *= Fraction(ell - 1, ell - 2)
    return out


def _script_B_primes(data: FieldData) -> list[int]:
    extra = [ell for ell in range(3, 2 * data.Q + 1) if is_prime(ell) and data.B % ell]
    return sorted([*prime_divisors(data.B), *extra])


def script_B(data: FieldData) -> int:
    """Smallest squarefree multiple of B such that ``l - 1 >= 2Q`` for every prime ``l`` outside it."""
    return math.prod(_script_B_primes(data))


def lower_bound_constant(data: FieldData) -> Fraction:
    """``c_B = 1 / (2**omega(Q) * Q * prod_{l | script_B} l (l - 1))``.

    Assembled from the explicit factors of the lower-bound argument rather
    than stated in closed form by it; see :data:`PROOF_ASSEMBLED`.
    """
    omega_q = len(prime_divisors(data.Q))
    degree = math.prod(ell * (ell - 1) for ell in _script_B_primes(data))
    return Fraction(1, 2**omega_q * data.Q * degree)


def corollary_constants(data: FieldData) -> tuple[Fraction, Fraction]:
    """Witnesses ``(c0, C0)`` with ``c0 <= dens(G)/A_R <= C0`` whenever ``dens(G) != 0``."""
    _require_r2(data)
    return lower_bound_constant(data), crude_upper_bound(data.B)
