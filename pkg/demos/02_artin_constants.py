"""Certified enclosures of Artin-type constants.

The product over primes is computed exactly up to a bound y in fixed point
with outward rounding; the tail past y is bounded analytically, once with an
elementary estimate and, beyond y ~ 3.6e6, with an explicit Chebyshev bound.
"""
# %%
import time

from artin_density import RankSequence, artin_AR_value, artin_ratio, artin_value
from artin_density.constants import enclosure_at

t = time.perf_counter()
a1 = artin_value(1, 1e-10)
print("A(1) in", a1.decimal(13), f"width {float(a1.width):.2e}", f"{time.perf_counter() - t:.2f}s")

# %% Enclosures shrink as the prime bound grows
for y in (10**3, 10**4, 10**5, 10**6, 3594641):
    v = enclosure_at(RankSequence(1), y)
    print(f"y={y:>8}  width={float(v.width):.3e}  tail={v.tail_method}")

# %% A(tau) is a rational multiple of A(1) for odd tau, and zero for even tau
for tau in (1, 3, 5, 15, 2):
    print(tau, artin_value(tau, 1e-8).decimal(10), artin_ratio(tau) if tau % 2 else "-")

# %% Rank sequences: default rank plus finitely many exceptions
for spec in ("r=1", "r=2", "r=1,3:0,5:0", "r=1,2:0"):
    print(f"{spec:<12}", artin_AR_value(RankSequence.parse(spec), 1e-9).decimal(10))
