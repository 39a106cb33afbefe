"""Jack polynomial algebra and the extreme-eigenvalue-ratio distribution
of singular beta-Wishart matrices, with a Monte Carlo cross-check harness."""

from .partitions import (
    Partition,
    conjugate,
    normalize,
    partitions_of,
    upper_hook_product,
    weight,
)
from .esym import (
    EPolynomial,
    LBRow,
    NotSymmetricError,
    apply_operator,
    appendix_moves,
    appendix_row,
    eigenvalue_closed_form,
    elementary_values,
    laplace_beltrami_eigenvalue,
    laplace_beltrami_row,
)
from .jack import (
    DegenerateBetaError,
    JackExpansion,
    clear_caches,
    e_to_jack,
    jack_at_identity,
    jack_evaluate,
    jack_expansion,
    jack_product,
    jack_product_with_trace_power,
    leading_elementary_coeff,
    load_expansion_cache,
    save_expansion_cache,
)
from .special import (
    SignedLogValue,
    gen_pochhammer,
    gen_pochhammer_exact,
    log_multivariate_gamma,
    pi_exponent,
    rising_factorial,
)
from .dist import (
    DistParams,
    SeriesTable,
    TruncationError,
    TruncationWarning,
    auto_converged_params,
    cdf_truncated,
    get_general_table,
    get_table,
    leading_constant,
    moment,
    pdf,
    pdf_general_beta1,
    quantile,
    summary_stats,
)
from .mc import (
    McConfig,
    empirical_moments,
    empirical_quantile,
    ks_distance,
    sample_extreme_ratio,
)

__version__ = "0.1.0"
