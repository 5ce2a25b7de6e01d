"""Counting primes by index and comparing with the predicted densities.

The predictions assume GRH and are asymptotic; the census only measures the
natural-density proxy count/pi(N), so agreement is a tolerance check.
"""
# %%
import time

from artin_density import census, compare

conditions = ["index=1", "ell-free:2", "B-free:6", "B-smooth:6"]
for alpha in (2, -3, -27):
    start = time.perf_counter()
    report = census(alpha, 300_000, conditions)
    verdict = compare(report)
    print(report.to_text().rstrip())
    print(f"# pass={verdict.passed} threshold={verdict.threshold:.4f} "
          f"containment={report.containment} ({time.perf_counter() - start:.1f}s)\n")
