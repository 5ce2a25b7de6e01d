"""A finite abelian group check of the subquotient lemma behind the lower bound.

For subgroups H1, H2, HM of G with H1 + H2 = G, the quotient G/(H2 + (H1 & HM))
should be a subquotient of G/HM, with order and exponent dividing.
"""
# %%
import time

from artin_density.group_lab import (
    FiniteAbelianGroup, SubgroupTriple, check_fritz, enumerate_subgroups, exhaustive_sweep,
    random_sweep, whole_group,
)

g = FiniteAbelianGroup((2, 4))
subs = enumerate_subgroups(g)
print(f"{g} has {len(subs)} subgroups")
t = SubgroupTriple(g, whole_group(g), subs[1], subs[2])
print(check_fritz(t))

# %%
start = time.perf_counter()
ex = exhaustive_sweep(24)
print(f"exhaustive to order 24: {ex.triples} triples over {ex.groups} groups, "
      f"{ex.violations} violations, {time.perf_counter() - start:.1f}s")
rnd = random_sweep(500, 64, seed=1)
print(f"random: {rnd.triples} triples over {rnd.groups} groups, {rnd.violations} violations")
