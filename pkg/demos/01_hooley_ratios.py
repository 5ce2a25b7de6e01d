"""How far the primitive-root density of alpha drifts from Artin's constant.

Every nonzero rational alpha other than +-1 splits as base**tau with tau
maximal, and its squarefree kernel delta decides whether Hooley's correction
kicks in (it does exactly when delta = 1 mod 4).
"""
# %%
from fractions import Fraction

from artin_density import density_value, hooley_ratio, power_decompose, squarefree_kernel

for alpha in (2, 3, 5, -3, -15, 8, -27, Fraction(-15, 49), (-15) ** 15, 9):
    pd = power_decompose(alpha)
    r = hooley_ratio(alpha)
    ratio = "zero density" if r.zero_density else str(r.ratio)
    print(f"{str(alpha):>22}  base={str(pd.base):>6} tau={pd.tau:<3} delta={squarefree_kernel(alpha):<4} "
          f"case={r.case.value:<14} ratio={ratio}")

# %% [markdown]
# -3 gets the 6/5 boost, (-3)^3 doubles its constant, and (-15)^15 is the
# smallest ratio possible: 2/3. Squares never have primitive roots.

# %%
v = density_value(-3, 1e-10)
lo, hi = v.decimal(12)
print(f"dens(-3) lies in [{lo}, {hi}] (prime bound {v.truncation_prime}, {v.tail_method} tail)")
