"""Bounds on dens(alpha)/A(tau) at fixed tau, and who attains them.

The extremal search only needs primes up to 19 (every larger prime is dominated
by G(5) = 1/19), which is checked numerically at import time.
"""
# %%
from artin_density import extremal_search, theorem_bounds

print(f"{'tau':>4} {'published':>14} {'computed min':>18} {'computed max':>16}")
for tau in (1, 3, 9, 5, 15, 21, 7, 35, 105):
    lo, hi = theorem_bounds(tau)
    dmin, vmin = extremal_search(tau, "min")
    dmax, vmax = extremal_search(tau, "max")
    print(f"{tau:>4} {str(lo):>7}..{str(hi):<6} {str(vmin):>8} @ {dmin:<6} {str(vmax):>6} @ {dmax}")

# %% [markdown]
# Two things stand out. For tau = 1 the published lower bound is 84/85 while
# the smallest value the formula produces is 94/95, at delta = -15. And the
# common upper bound 2 needs 3 | tau; for tau = 5 or 7 the best is 4/3 or 6/5.
