"""Finite abelian groups as a laboratory for the Galois-lattice lemma.

Let ``H1, H2, HM`` be subgroups of a finite abelian group ``G`` with
``H1 + H2 = G`` (these model ``Gal(F/L1)``, ``Gal(F/L2)``, ``Gal(F/M)`` for
``L1 & L2 = K``). The group ``G / (H2 + (H1 & HM))`` models ``Gal(E/K)`` for
``E = M L1 & L2`` and must be a quotient of a subgroup of ``G / HM``; in
particular its order and exponent divide those of ``G / HM``.

Only the Galois-group side is modelled. Isomorphism is decided through
invariant factors, never by searching for explicit maps.

Groups are written additively. Elements are encoded as integers in
``range(order)`` (mixed radix over the invariant factors) and subgroups
carry their element set as a Python ``int`` bitmask.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .arith import factor
from .errors import DomainError, ResourceError

DEFAULT_CAP = 128


def _bits(mask: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


def _mask(indices: np.ndarray) -> int:
    flags = np.zeros(int(np.max(indices)) + 1 if len(indices) else 0, dtype=bool)
    flags[indices] = True
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class FiniteAbelianGroup:
    """``Z/d1 x ... x Z/dk`` with ``d1 | d2 | ... | dk``; ``()`` is the trivial group."""

    def __init__(self, invariant_factors=(), cap: int = DEFAULT_CAP):
        factors = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in factors):
            raise DomainError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise DomainError(f"invariant factors must form a divisibility chain, got {factors}")
        if math.prod(factors) > cap:
            raise ResourceError(f"order {math.prod(factors)} exceeds cap {cap}")
        self.invariant_factors = factors
        self.order = math.prod(factors)

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({self.invariant_factors})"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and other.invariant_factors == self.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    @cached_property
    def coords(self) -> np.ndarray:
        if not self.invariant_factors:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(product(*(range(d) for d in self.invariant_factors))), dtype=np.int64)

    @cached_property
    def _strides(self) -> np.ndarray:
        s, out = 1, []
        for d in reversed(self.invariant_factors):
            out.append(s)
            s *= d
        return np.array(out[::-1], dtype=np.int64)

    def _encode(self, coords: np.ndarray) -> np.ndarray:
        d = np.array(self.invariant_factors, dtype=np.int64)
        return (coords % d) @ self._strides if len(d) else np.zeros(coords.shape[:-1], dtype=np.int64)

    def index(self, element) -> int:
        return int(self._encode(np.asarray(element, dtype=np.int64)))

    def element(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[index])

    @cached_property
    def add(self) -> np.ndarray:
        c = self.coords
        return self._encode(c[:, None, :] + c[None, :, :])

    def multiple(self, m: int) -> np.ndarray:
        """Index map ``x -> m x``."""
        return self._encode(self.coords * m)

    @cached_property
    def cyclic(self) -> list[np.ndarray]:
        """``cyclic[x]``: indices of the multiples of ``x``."""
        out = []
        for x in range(self.order):
            cyc = [0]
            while (y := int(self.add[cyc[-1], x])) != 0:
                cyc.append(y)
            out.append(np.array(cyc, dtype=np.int64))
        return out

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1


@dataclass(frozen=True)
class Subgroup:
    group: FiniteAbelianGroup = field(compare=False, repr=False)
    mask: int
    generators: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(_bits(self.mask).tolist())

    def element_tuples(self) -> list[tuple[int, ...]]:
        return [self.group.element(i) for i in sorted(self.elements)]

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & ~other.mask == 0


def _closure(g: FiniteAbelianGroup, seed: np.ndarray) -> int:
    current = np.unique(np.concatenate([[0], seed]))
    while True:
        nxt = np.unique(g.add[np.ix_(current, current)])
        if len(nxt) == len(current):
            return _mask(current)
        current = nxt


def generated_subgroup(g: FiniteAbelianGroup, generators) -> Subgroup:
    gens = tuple(tuple(int(x) for x in el) for el in generators)
    idx = np.array([g.index(el) for el in gens], dtype=np.int64)
    return Subgroup(g, _closure(g, idx), gens)


def trivial_subgroup(g: FiniteAbelianGroup) -> Subgroup:
    return Subgroup(g, 1)


def whole_group(g: FiniteAbelianGroup) -> Subgroup:
    gens = tuple(tuple(int(i == j) for j in range(len(g.invariant_factors))) for i in range(len(g.invariant_factors)))
    return Subgroup(g, g.full_mask, gens)


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    g = a.group
    mask = _mask(g.add[np.ix_(_bits(a.mask), _bits(b.mask))].ravel())
    return Subgroup(g, mask, a.generators + b.generators)


def meet(a: Subgroup, b: Subgroup) -> Subgroup:
    # generators of an intersection are not tracked; recover them lazily if needed
    return Subgroup(a.group, a.mask & b.mask)


@lru_cache(maxsize=64)
def _enumerate_masks(g: FiniteAbelianGroup) -> tuple[tuple[int, tuple[int, ...]], ...]:
    n = g.order
    found: dict[int, tuple[int, ...]] = {1: ()}
    queue = [1]
    while queue:
        h = queue.pop()
        h_idx = _bits(h)
        covered = h
        for x in range(n):
            if covered >> x & 1:
                continue
            covered |= _mask(g.add[x, h_idx])
            # <H, x> = H + <x>
            k = _mask(g.add[np.ix_(h_idx, g.cyclic[x])].ravel())
            if k not in found:
                found[k] = found[h] + (x,)
                queue.append(k)
    return tuple(sorted(found.items(), key=lambda kv: (kv[0].bit_count(), kv[0])))


def enumerate_subgroups(g: FiniteAbelianGroup) -> list[Subgroup]:
    """All subgroups, each with a generating set, ordered by size."""
    return [Subgroup(g, m, tuple(g.element(x) for x in gens)) for m, gens in _enumerate_masks(g)]


def _as_mask(g: FiniteAbelianGroup, s) -> int:
    if isinstance(s, Subgroup):
        return s.mask
    if isinstance(s, int):
        return s
    return _mask(np.array([x if isinstance(x, (int, np.integer)) else g.index(x) for x in s], dtype=np.int64))


def quotient_shape(g: FiniteAbelianGroup, numerator, denominator) -> tuple[int, ...]:
    """Invariant factors of ``numerator / denominator`` (both subgroups of ``g``).

    For each prime ``p``, the number of ``x`` in the numerator with
    ``p**j x`` in the denominator fixes how many cyclic ``p``-parts have
    exponent ``>= j``.
    """
    num, den = _as_mask(g, numerator), _as_mask(g, denominator)
    if den & ~num:
        raise DomainError("denominator is not contained in numerator")
    q_order, d_order = num.bit_count() // den.bit_count(), den.bit_count()
    if num.bit_count() % d_order:
        raise DomainError("numerator and denominator are not nested subgroups")
    if q_order == 1:
        return ()
    num_idx = _bits(num)
    in_den = np.zeros(g.order, dtype=bool)
    in_den[_bits(den)] = True
    parts: dict[int, list[int]] = {}
    for p, e in factor(q_order).factors:
        logs = [0]
        j = 0
        while logs[-1] < e:
            j += 1
            killed = int(in_den[g.multiple(p**j)[num_idx]].sum()) // d_order
            logs.append(round(math.log(killed, p)))
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        # at_least[j-1] cyclic factors have exponent >= j
        exps = [sum(1 for c in at_least if c > i) for i in range(at_least[0])]
        parts[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in parts.values())
    factors = [math.prod(p ** (v[i] if i < len(v) else 0) for p, v in parts.items()) for i in range(width)]
    return tuple(sorted(factors))


def shape_order(shape: tuple[int, ...]) -> int:
    return math.prod(shape)


def shape_exponent(shape: tuple[int, ...]) -> int:
    return shape[-1] if shape else 1


@lru_cache(maxsize=None)
def subquotient_shapes(shape: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Every shape ``S / T`` with ``T <= S <= A``, found by enumeration."""
    g = FiniteAbelianGroup(shape, cap=max(DEFAULT_CAP, shape_order(shape)))
    subs = [m for m, _ in _enumerate_masks(g)]
    reps: dict[tuple[int, ...], int] = {}
    for m in subs:
        reps.setdefault(quotient_shape(g, m, 1), m)
    out = set()
    for s in reps.values():
        for t in subs:
            if t & ~s == 0:
                out.add(quotient_shape(g, s, t))
    return frozenset(out)


def _p_partition(shape: tuple[int, ...], p: int) -> list[int]:
    out = []
    for d in shape:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            out.append(e)
    return sorted(out, reverse=True)


def is_subquotient(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Criterion via partitions: each p-part of ``a`` is dominated termwise by that of ``b``."""
    primes = {p for d in a for p, _ in factor(d).factors}
    for p in primes:
        pa, pb = _p_partition(a, p), _p_partition(b, p)
        if len(pa) > len(pb) or any(x > y for x, y in zip(pa, pb)):
            return False
    return True


# ---------------------------------------------------------------------------
# the lemma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupTriple:
    ambient: FiniteAbelianGroup
    H_L1: Subgroup
    H_L2: Subgroup
    H_M: Subgroup

    def __post_init__(self):
        if join(self.H_L1, self.H_L2).mask != self.ambient.full_mask:
            raise DomainError("H_L1 + H_L2 must be the whole group (L1 and L2 meet in K)")


@dataclass(frozen=True)
class FritzReport:
    e_shape: tuple[int, ...]
    m_shape: tuple[int, ...]
    quotient_of_subgroup: bool
    order_divides: bool
    exponent_divides: bool
    orders_agree: bool

    @property
    def ok(self) -> bool:
        return self.quotient_of_subgroup and self.order_divides and self.exponent_divides and self.orders_agree


def check_fritz(triple: SubgroupTriple) -> FritzReport:
    g, h1, h2, hm = triple.ambient, triple.H_L1, triple.H_L2, triple.H_M
    e_den = join(h2, meet(h1, hm))
    e_shape = quotient_shape(g, g.full_mask, e_den)
    m_shape = quotient_shape(g, g.full_mask, hm)
    # second expression: H1 / ((H1 & HM) + (H1 & H2))
    right = h1.order // join(meet(h1, hm), meet(h1, h2)).order
    return FritzReport(
        e_shape,
        m_shape,
        e_shape in subquotient_shapes(m_shape),
        shape_order(m_shape) % shape_order(e_shape) == 0,
        shape_exponent(m_shape) % shape_exponent(e_shape) == 0,
        shape_order(e_shape) == right,
    )


def abelian_groups(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor shapes of all abelian groups of the given order."""
    if order == 1:
        return [()]

    def partitions(n, largest=None):
        largest = n if largest is None else largest
        if n == 0:
            yield []
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield [k, *rest]

    per_prime = [[(p, part) for part in partitions(e)] for p, e in factor(order).factors]
    shapes = []
    for choice in product(*per_prime):
        width = max(len(part) for _, part in choice)
        inv = [math.prod(p ** (part[i] if i < len(part) else 0) for p, part in choice) for i in range(width)]
        shapes.append(tuple(sorted(inv)))
    return sorted(shapes)


@dataclass
class SweepReport:
    groups: int = 0
    triples: int = 0
    quotient_of_subgroup_violations: int = 0
    order_violations: int = 0
    exponent_violations: int = 0
    order_mismatch: int = 0

    @property
    def violations(self) -> int:
        return (self.quotient_of_subgroup_violations + self.order_violations
                + self.exponent_violations + self.order_mismatch)

    def merge(self, other: SweepReport) -> SweepReport:
        return SweepReport(*(a + b for a, b in zip(self._tuple(), other._tuple())))

    def _tuple(self):
        return (self.groups, self.triples, self.quotient_of_subgroup_violations,
                self.order_violations, self.exponent_violations, self.order_mismatch)


def sweep_group(shape: tuple[int, ...]) -> SweepReport:
    """Check every triple with ``H1 + H2 = G`` in the group of the given shape.

    Vectorised form of :func:`check_fritz` over lookup tables of meets,
    joins and quotient shapes.
    """
    g = FiniteAbelianGroup(shape, cap=max(DEFAULT_CAP, shape_order(shape)))
    masks = [m for m, _ in _enumerate_masks(g)]
    ns = len(masks)
    pos = {m: i for i, m in enumerate(masks)}
    members = [_bits(m) for m in masks]
    orders = np.array([m.bit_count() for m in masks], dtype=np.int64)
    meet_t = np.array([[pos[a & b] for b in masks] for a in masks], dtype=np.int64)
    join_t = np.empty((ns, ns), dtype=np.int64)
    for i in range(ns):
        for j in range(i, ns):
            k = pos[_mask(g.add[np.ix_(members[i], members[j])].ravel())]
            join_t[i, j] = join_t[j, i] = k

    q_shapes = [quotient_shape(g, g.full_mask, m) for m in masks]
    shape_ids = {s: k for k, s in enumerate(dict.fromkeys(q_shapes))}
    qs = np.array([shape_ids[s] for s in q_shapes], dtype=np.int64)
    allowed = np.zeros((len(shape_ids), len(shape_ids)), dtype=bool)
    for se, ie in shape_ids.items():
        for sm, im in shape_ids.items():
            allowed[ie, im] = se in subquotient_shapes(sm)
    q_order = g.order // orders
    q_exp = np.array([shape_exponent(s) for s in q_shapes], dtype=np.int64)

    full = pos[g.full_mask]
    i1, i2 = np.nonzero(join_t == full)
    m1 = meet_t[i1]                                   # (pairs, ns): H1 & HM
    e = join_t[i2[:, None], m1]                       # H2 + (H1 & HM)
    hm = np.arange(ns)[None, :]
    ok_a = allowed[qs[e], qs[hm]]
    ok_b = q_order[hm] % q_order[e] == 0
    ok_c = q_exp[hm] % q_exp[e] == 0
    m12 = meet_t[i1, i2][:, None]
    right = orders[i1][:, None] // orders[join_t[m1, m12]]
    agree = q_order[e] == right
    return SweepReport(1, int(e.size), int((~ok_a).sum()), int((~ok_b).sum()),
                       int((~ok_c).sum()), int((~agree).sum()))


def exhaustive_sweep(max_order: int = 32) -> SweepReport:
    report = SweepReport()
    for n in range(1, max_order + 1):
        for shape in abelian_groups(n):
            report = report.merge(sweep_group(shape))
    return report


def random_subgroup(g: FiniteAbelianGroup, rng: random.Random, max_gens: int = 3) -> Subgroup:
    gens = [g.element(rng.randrange(g.order)) for _ in range(rng.randint(0, max_gens))]
    return generated_subgroup(g, gens)


def random_triple(g: FiniteAbelianGroup, rng: random.Random) -> SubgroupTriple:
    h2 = random_subgroup(g, rng)
    h1 = random_subgroup(g, rng)
    while join(h1, h2).mask != g.full_mask:
        h1 = join(h1, generated_subgroup(g, [g.element(rng.randrange(g.order))]))
    return SubgroupTriple(g, h1, h2, random_subgroup(g, rng))


def random_sweep(samples: int = 10_000, max_order: int = DEFAULT_CAP, seed: int = 0) -> SweepReport:
    rng = random.Random(seed)
    shapes = [s for n in range(1, max_order + 1) for s in abelian_groups(n)]
    groups = {}
    report = SweepReport()
    for _ in range(samples):
        shape = rng.choice(shapes)
        g = groups.setdefault(shape, FiniteAbelianGroup(shape, cap=max(DEFAULT_CAP, max_order)))
        r = check_fritz(random_triple(g, rng))
        report.triples += 1
        report.quotient_of_subgroup_violations += not r.quotient_of_subgroup
        report.order_violations += not r.order_divides
        report.exponent_violations += not r.exponent_divides
        report.order_mismatch += not r.orders_agree
    report.groups = len(groups)
    return report
