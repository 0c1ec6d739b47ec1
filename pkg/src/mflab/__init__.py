"""mflab: squarefree-pattern densities, admissible subshifts, Walsh-Hadamard
systems, Barker searches, and correlation diagnostics for the Mobius and
Liouville functions."""

from .admissible import (
    as_support,
    block_support,
    enumerate_admissible_blocks,
    enumerate_admissible_supports,
    format_block,
    is_admissible_block,
    is_admissible_support,
    parse_block,
    residue_count,
)
from .chowla import (
    AdmissibleMeasureLevel,
    CorrelationMonomial,
    SignedCylinder,
    chowla_cylinder,
    integral_from_level,
    monomial_integral_level,
    uniqueness_solve,
    verify_admissible_level,
)
from .correlations import (
    CESARO,
    LOG_HARMONIC,
    LOGARITHMIC,
    AveragingMode,
    CorrelationSpec,
    chowla_sum,
    empirical_measure_cylinder,
    harmonic_number,
    log_density,
    orbit_block_coverage,
)
from .mirsky import (
    TruncatedDensity,
    mirsky_cylinder,
    mirsky_empirical,
    squarefree_pattern_density,
)
from .sampling import (
    ResiduePoint,
    SampleConfig,
    chowla_sample,
    default_cutoff,
    mc_monomial_integral,
    mirsky_sample,
    sample_blocks,
)
from .sieve import (
    ArithFunction,
    ArithTable,
    liouville_direct,
    mobius_direct,
    primes_up_to,
    read_table,
    sieve,
    squarefree_direct,
    write_table,
)
from .walsh import (
    autocorrelations,
    barker_search,
    circulant_from_row,
    det_exact,
    fwht,
    hadamard_det_bound_check,
    is_barker,
    is_hadamard,
    solve_uniform_system,
    walsh_det_log2,
    walsh_entry,
    walsh_matrix,
)

__version__ = "0.1.0"
