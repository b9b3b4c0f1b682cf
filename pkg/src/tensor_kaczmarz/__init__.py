"""Randomized Kaczmarz solvers for t-product tensor linear systems.

The package splits into the tubal algebra (:mod:`~tensor_kaczmarz.core`),
its Fourier-domain fast path (:mod:`~tensor_kaczmarz.fourier`), row-slice
projections (:mod:`~tensor_kaczmarz.projections`), the randomized solvers
(:mod:`~tensor_kaczmarz.solvers`), convergence-rate calculators
(:mod:`~tensor_kaczmarz.analysis`) and the experiment harness with its
CLI (:mod:`~tensor_kaczmarz.harness`, :mod:`~tensor_kaczmarz.cli`).
"""

__version__ = "0.1.0"

from .core import (
    ABS_TOL,
    REL_TOL,
    DimensionMismatchError,
    NotInvertibleError,
    Tensor3,
    TubeFiber,
    allclose,
    bcirc,
    bcirc_kron,
    fold,
    frobenius_norm,
    frontal_slice,
    identity,
    read_tns,
    row_slice,
    transpose,
    tprod,
    tube_inverse,
    unfold,
    write_tns,
    zeros,
)
from .fourier import FourierBlocks, bdiag, mode3_dft, mode3_idft, tprod_fft
from .projections import (
    InvertibilityReport,
    RowProjection,
    check_row_invertibility,
    pythagorean_split,
    row_projection,
)
from .solvers import (
    BlockIndexSet,
    IterateLog,
    SamplingStrategy,
    SolverConfig,
    ZeroRowError,
    block_mrk_fourier_solve,
    mrk_solve,
    residual,
    sample_row,
    trk_fourier_solve,
    trk_solve,
    trk_step,
)
from .analysis import (
    DENSE_CAP,
    RateReport,
    SizeLimitError,
    bound_curve,
    contraction_brk,
    contraction_exact,
    contraction_mrk,
    contraction_trk,
    inf2_norm,
)
from .harness import (
    ExperimentSpec,
    default_spec,
    gen_gaussian_matrix,
    gen_gaussian_tensor,
    generate_system,
    run_experiment,
    run_fig1,
    run_fig2,
    run_fig3,
    run_fig4,
    solve_files,
    stream_seed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
