"""Non-Hermitian Jaynes-Cummings blocks: spectra, metrics, dynamics, entropy.

The package works on the 2x2 invariant subspaces of the Hamiltonian
(epsilon/2) sigma_z + omega a^dag a + gamma (sigma_+ a - sigma_- a^dag):
closed-form spectra and phase classification around the exceptional points,
biorthogonal eigensystems with the metric/intertwiner construction, no-jump
conditional dynamics, spin-oscillator entanglement entropy, and parameter
sweeps with CSV/JSON/SVG export (see the `nhjc` command-line tool).
"""

from .biortho import (
    BiorthoSystem,
    MetricBundle,
    Normalization,
    eigensystem,
    eigenvector_ratios,
    intertwiner,
    metric,
    metric_divergence_exponent,
    projectors,
    pseudo_hermiticity_residual,
)
from .dynamics import (
    BlochState,
    EffectiveGenerator,
    default_time_grid,
    effective_generator,
    evolve_no_jump,
    normalized_state,
    propagator,
    survival_probability,
)
from .entropy import (
    LN2,
    EntropyPoint,
    ReducedSpectrum,
    alpha_coefficient,
    entanglement_entropy,
    entropy_curve,
    reduced_spectrum,
)
from .errors import (
    EmptySweepError,
    ExceptionalPointError,
    InsufficientSamplesError,
    NonPositiveDataError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SpecValidationError,
    WrongPhaseError,
    ZeroCouplingError,
    ZeroWeightError,
)
from .model import (
    BlockMatrix,
    Branch,
    MatrixRole,
    ModelParams,
    Phase,
    PhaseLabel,
    Spectrum,
    build_block,
    build_block_dagger,
    classify_phase,
    critical_gamma,
    ground_state_energy,
    spectrum_closed_form,
    sqrt_discriminant,
)
from .plots import render_svg
from .scan import (
    Axis,
    PhaseCell,
    SweepSpec,
    export_csv,
    export_json,
    read_csv,
    read_json,
    run_sweep,
)

__version__ = "0.1.0"
