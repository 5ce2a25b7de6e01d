"""Uniform bounds for dens(G)/A_R over a number field, from (B, Q, ranks) alone."""
# %%
from artin_density import FieldData, RankSequence, corollary_constants, crude_upper_bound, upper_bound
from artin_density.nf_bounds import lower_bound_constant, script_B

cases = [(2, 2, "r=1"), (6, 2, "r=1"), (6, 2, "r=1,3:0"), (30, 6, "r=2,3:1,5:0"), (210, 2, "r=1")]
for B, Q, spec in cases:
    d = FieldData(B, Q, RankSequence.parse(spec))
    c0, C0 = corollary_constants(d)
    print(f"B={B:<4} Q={Q:<2} {spec:<12} upper={str(upper_bound(d)):<8} crude={str(crude_upper_bound(B)):<6} "
          f"script_B={script_B(d):<8} c_B={lower_bound_constant(d)}")

# %% [markdown]
# Over the rationals (B = Q = 2) the upper bound is 2, matching the ratio
# bound from the Hooley formula; the lower constant 1/48 is far from sharp.
