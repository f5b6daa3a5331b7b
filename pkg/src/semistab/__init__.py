"""Exact-arithmetic tools for bounding the obstruction to semistable reduction
of abelian varieties: Smith normal form over local rings, perfect invariant
pairings on lattices, element orders in classical groups over finite fields,
and the Minkowski-type bound J(n)."""

from .bounds import (
    BoundReport,
    Finding,
    J,
    M_of,
    N_of,
    Q_bound,
    ReductionData,
    admissible_orders,
    advice,
    bound_report,
    s,
    safe_primes,
)
from .classical import (
    PrimePower,
    cyclotomic_factor_profile,
    cyclotomic_poly,
    gl_has_element_of_order,
    mult_order,
    sp_group_order,
    sp_has_element_of_order,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    PrecisionError,
    PreconditionError,
    RankDeficiencyError,
    SemistabError,
)
from .factored import FactoredInt
from .groups import AveragingOperator, MatrixGroup, average, close_group, fixed_sublattice, invariant_splitting
from .linalg import SnfDecomposition, kernel, snf, solve
from .pairings import (
    FormKind,
    GramForm,
    PerfectizeResult,
    Sublattice,
    double_perp_check,
    functional_preimage,
    induced_quotient_form,
    is_perfect,
    orthogonal_complement,
    perfectize,
    standard_symplectic,
)
from .rings import ZZ, LocalRing
from .spectra import OrderSpectrum, brute_force_spectrum

__version__ = "0.1.0"
