"""Densities of primes with a prescribed multiplicative index.

Exact Hooley ratios, certified enclosures of Artin-type Euler products,
uniform bounds over number fields, a finite abelian group laboratory and an
empirical prime census.
"""

__version__ = "0.1.0"

from .errors import ArtinError, DomainError, ResourceError, ToleranceError
from .arith import (
    Correction, FactoredInteger, PowerDecomposition, as_rational, discriminant_case,
    factor, is_prime, moebius, power_decompose, squarefree_kernel,
)
from .constants import (
    EulerProductValue, RankSequence, artin_AR_value, artin_ratio, artin_value,
    euler_product,
)
from .density import (
    Case, HooleyResult, cofinite_density, density_value, extremal_search,
    hooley_ratio, inclusion_exclusion, kummer_degree, restricted_density,
    theorem_bounds, truncated_closed_form,
)
from .nf_bounds import FieldData, corollary_constants, crude_upper_bound, lower_bound_constant, upper_bound
from .group_lab import FiniteAbelianGroup, Subgroup, SubgroupTriple, check_fritz, enumerate_subgroups
from .empirical import CensusReport, Condition, census, compare, index_of

__all__ = [name for name in dir() if not name.startswith("_")]
