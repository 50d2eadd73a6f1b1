"""probalab: a computational probability workbench.

Distribution catalog with closed forms and seeded samplers,
characteristic-function machinery with numerical inversion, Gaussian
vectors, the classical inequality suite, limit-theorem experiments,
conditional expectation on finite partitions, and Poisson/Brownian
path constructions, all behind a deterministic CLI.
"""

from .catalog import CatalogEntry, make_law, law_names, gamma_sum_check
from .charfn import CharFn, cf_affine, cf_of_sum, invert_cdf_difference, invert_density
from .condexp import FinitePartition, cond_expect
from .gaussvec import GaussianVector, SymMatrix, eigendecompose
from .laws import (
    ContinuousLaw,
    DiscreteLaw,
    MixtureLaw,
    Moments,
    cdf_decompose,
    discrete_tail_sum,
    expectation_via_tail,
    lp_norm,
)
from .limits import TriangularSpec, berry_esseen_gap, lil_trajectory
from .normal import inverse_loi_normal, phi_oracle, proba_normale
from .processes import (
    FiniteDimFamily,
    brownian_motion,
    coherence_check,
    gaussian_process,
    gen_inverse,
    poisson_process,
    sklar_copula,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "CharFn",
    "ContinuousLaw",
    "DiscreteLaw",
    "FiniteDimFamily",
    "FinitePartition",
    "GaussianVector",
    "MixtureLaw",
    "Moments",
    "SymMatrix",
    "TriangularSpec",
    "berry_esseen_gap",
    "brownian_motion",
    "cdf_decompose",
    "cf_affine",
    "cf_of_sum",
    "coherence_check",
    "cond_expect",
    "discrete_tail_sum",
    "eigendecompose",
    "expectation_via_tail",
    "gamma_sum_check",
    "gaussian_process",
    "gen_inverse",
    "invert_cdf_difference",
    "invert_density",
    "inverse_loi_normal",
    "law_names",
    "lil_trajectory",
    "lp_norm",
    "make_law",
    "phi_oracle",
    "poisson_process",
    "proba_normale",
    "sklar_copula",
]
