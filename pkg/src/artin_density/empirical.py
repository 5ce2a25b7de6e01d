"""Count primes by the multiplicative index of ``alpha`` and compare with the predictions.

The density notions are natural-density proxies: ``count / primes_considered``
for all primes up to ``N`` not dividing numerator or denominator of ``alpha``.
The predicted values are conditional on GRH and asymptotic, so every verdict
is a tolerance check, not a proof.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import as_rational, check_nonunit, prime_divisors
from .constants import EulerProductValue
from .density import cofinite_density, density_value, restricted_density
from .errors import DomainError
from .sieve import DEFAULT_SEGMENT, primes_up_to, segments

__all__ = [
    "Condition", "CensusReport", "Comparison", "ExcludedPrime", "IndexRecord",
    "census", "compare", "index_of", "index_records", "primes_up_to",
]


class ExcludedPrime(DomainError):
    """``p`` divides the numerator or denominator of ``alpha``."""


@dataclass(frozen=True)
class IndexRecord:
    p: int
    index: int


def _order_from_factors(a: int, p: int, qs) -> int:
    # strip each prime of p - 1 from the exponent while the power still fixes 1
    order = p - 1
    for q in qs:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def _residue(alpha: Fraction, p: int) -> int:
    if alpha.numerator % p == 0 or alpha.denominator % p == 0:
        raise ExcludedPrime(f"{p} divides {alpha}")
    return alpha.numerator * pow(alpha.denominator, -1, p) % p


def index_of(alpha, p: int) -> int:
    """``(p - 1) / ord_p(alpha)``."""
    a = as_rational(alpha)
    r = _residue(a, p)
    if p == 2:
        return 1
    return (p - 1) // _order_from_factors(r, p, prime_divisors(p - 1))


def _p_minus_one_factors(ps: np.ndarray, base: list[int]) -> list[list[int]]:
    """Distinct prime factors of ``p - 1`` for every ``p`` in a segment."""
    rem = ps - 1
    out: list[list[int]] = [[] for _ in range(len(ps))]
    for q in base:
        if q * q > int(rem.max(initial=1)):
            break
        hit = np.flatnonzero(rem % q == 0)
        if not len(hit):
            continue
        for i in hit.tolist():
            out[i].append(q)
        sub = rem[hit] // q
        more = sub % q == 0
        while more.any():
            sub[more] //= q
            more = sub % q == 0
        rem[hit] = sub
    for i in np.flatnonzero(rem > 1).tolist():
        out[i].append(int(rem[i]))
    return out


def _segment_indices(alpha: Fraction, lo: int, hi: int, ps: np.ndarray,
                     base: list[int]) -> tuple[list[IndexRecord], list[int]]:
    records, excluded = [], []
    facs = _p_minus_one_factors(ps, base)
    num, den = alpha.numerator, alpha.denominator
    for p, qs in zip(ps.tolist(), facs):
        if num % p == 0 or den % p == 0:
            excluded.append(p)
            continue
        if p == 2:
            records.append(IndexRecord(2, 1))
            continue
        a = num * pow(den, -1, p) % p
        records.append(IndexRecord(p, (p - 1) // _order_from_factors(a, p, qs)))
    return records, excluded


def index_records(alpha, limit: int, segment_size: int = DEFAULT_SEGMENT):
    """Yield an :class:`IndexRecord` for every prime ``<= limit`` not dividing ``alpha``."""
    a = check_nonunit(alpha)
    base = list(primes_up_to(math.isqrt(limit) + 1))
    for lo, hi, ps in segments(limit, segment_size=segment_size):
        yield from _segment_indices(a, lo, hi, ps, base)[0]


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Condition:
    """A property of the index.

    ``index=1``       primitive root
    ``ell-free:L``    ``L`` does not divide the index
    ``B-free:B``      no prime divisor of ``B`` divides the index
    ``B-smooth:B``    every prime divisor of the index divides ``B``
    """

    kind: str
    param: int = 1
    primes: frozenset[int] = field(init=False, compare=False, repr=False)

    KINDS = ("index=1", "ell-free", "B-free", "B-smooth")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown condition {self.kind!r}")
        if self.param < 1:
            raise DomainError(f"condition parameter must be positive, got {self.param}")
        primes = frozenset(prime_divisors(self.param)) if self.param > 1 else frozenset()
        object.__setattr__(self, "primes", primes)

    @classmethod
    def parse(cls, text: str) -> Condition:
        text = text.strip()
        if text == "index=1":
            return cls("index=1")
        m = re.fullmatch(r"(ell-free|B-free|B-smooth):(\d+)", text)
        if m is None:
            raise DomainError(f"unknown condition {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def name(self) -> str:
        return self.kind if self.kind == "index=1" else f"{self.kind}:{self.param}"

    def holds(self, index: int) -> bool:
        if self.kind == "index=1":
            return index == 1
        if self.kind == "ell-free":
            return index % self.param != 0
        if self.kind == "B-free":
            return math.gcd(index, self.param) == 1
        # B-smooth: strip every prime of B from the index
        for ell in self.primes:
            while index % ell == 0:
                index //= ell
        return index == 1

    def predict(self, alpha, tol: float = 1e-10) -> EulerProductValue:
        if self.kind == "index=1":
            return density_value(alpha, tol)
        if self.kind == "ell-free":
            if len(self.primes) != 1 or self.param not in self.primes:
                raise DomainError(f"ell-free needs a prime, got {self.param}")
            v = restricted_density(alpha, self.primes)
        elif self.kind == "B-free":
            v = restricted_density(alpha, self.primes)
        else:
            return cofinite_density(alpha, self.primes, tol)
        return EulerProductValue(v, v, 0, "exact")


PRIMITIVE = Condition("index=1")
TWO_SMOOTH = Condition("B-smooth", 2)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    alpha: Fraction
    limit: int
    primes_considered: int
    excluded: list[int]
    counts: dict[str, int]
    predicted: dict[str, EulerProductValue]
    deviations: dict[str, float]
    containment: tuple[int, int] = (0, 0)

    def observed(self, name: str) -> float:
        return self.counts[name] / self.primes_considered if self.primes_considered else 0.0

    def to_text(self) -> str:
        lines = [f"# census alpha={self.alpha} limit={self.limit} "
                 f"primes_considered={self.primes_considered} excluded={len(self.excluded)}",
                 "condition\tcount\ttotal\tobserved\tpredicted_lo\tpredicted_hi\tdeviation"]
        for name, count in self.counts.items():
            lo, hi = self.predicted[name].decimal(10)
            lines.append(f"{name}\t{count}\t{self.primes_considered}\t{self.observed(name):.10f}"
                         f"\t{lo}\t{hi}\t{self.deviations[name]:+.10f}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "limit": self.limit,
            "primes_considered": self.primes_considered,
            "excluded": list(self.excluded),
            "counts": dict(self.counts),
            "predicted": {k: list(v.decimal(12)) for k, v in self.predicted.items()},
            "deviations": {k: round(v, 12) for k, v in self.deviations.items()},
            "containment": list(self.containment),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def _census_chunk(args) -> tuple[Counter, list[int], int]:
    alpha, conditions, start, stop, segment_size = args
    base = list(primes_up_to(math.isqrt(stop) + 1))
    counts: Counter = Counter()
    excluded: list[int] = []
    considered = 0
    for lo, hi, ps in segments(stop, start=start, segment_size=segment_size):
        recs, exc = _segment_indices(alpha, lo, hi, ps, base)
        excluded.extend(exc)
        considered += len(recs)
        for r in recs:
            for cond in conditions:
                if cond.holds(r.index):
                    counts[cond.name] += 1
    return counts, excluded, considered


def census(alpha, limit: int, conditions=(), workers: int = 1,
           segment_size: int = DEFAULT_SEGMENT, tol: float = 1e-10) -> CensusReport:
    """Count primes ``p <= limit`` whose index satisfies each condition.

    Work is split into contiguous prime ranges; with ``workers > 1`` they run
    in separate processes and their counters are summed.
    """
    a = check_nonunit(alpha)
    if limit < 2:
        raise DomainError(f"limit must be at least 2, got {limit}")
    conds = [Condition.parse(c) if isinstance(c, str) else c for c in conditions]
    if len({c.name for c in conds}) != len(conds):
        raise DomainError("duplicate condition")
    tracked = conds + [c for c in (PRIMITIVE, TWO_SMOOTH) if c not in conds]

    chunk = max(segment_size, -(-limit // max(workers, 1)))
    jobs = [(a, tracked, lo, min(lo + chunk - 1, limit), segment_size)
            for lo in range(2, limit + 1, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_census_chunk, jobs))
    else:
        parts = [_census_chunk(j) for j in jobs]

    counts: Counter = Counter()
    excluded: list[int] = []
    considered = 0
    for c, e, n in parts:
        counts.update(c)
        excluded.extend(e)
        considered += n

    containment = (counts[PRIMITIVE.name], counts[TWO_SMOOTH.name])
    if containment[0] > containment[1]:
        raise ArithmeticError(f"containment violated: {containment}")

    report = CensusReport(a, limit, considered, sorted(excluded), {}, {}, {}, containment)
    for cond in conds:
        report.counts[cond.name] = counts[cond.name]
        pred = cond.predict(a, tol)
        report.predicted[cond.name] = pred
        report.deviations[cond.name] = report.observed(cond.name) - float(pred.midpoint)
    return report


@dataclass(frozen=True)
class Comparison:
    verdicts: dict[str, bool]
    scores: dict[str, float]
    threshold: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", all(self.verdicts.values()))


def compare(report: CensusReport, abs_tol: float = 0.01, k: float = 3.0) -> Comparison:
    """Pass iff ``|deviation| <= max(abs_tol, k / sqrt(n))`` with ``n`` primes considered.

    The score is ``|deviation| * sqrt(n)``, a binomial-style z-value.
    """
    n = max(report.primes_considered, 1)
    threshold = max(abs_tol, k / math.sqrt(n))
    verdicts, scores = {}, {}
    for name, dev in report.deviations.items():
        verdicts[name] = abs(dev) <= threshold
        scores[name] = abs(dev) * math.sqrt(n)
    return Comparison(verdicts, scores, threshold)
