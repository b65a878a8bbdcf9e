"""Zero-fidelity toolkit: SIC ensembles, Choi-form channels, fidelity
measures with linear bounds, spectral verification of the underlying frame
operator, and an in-house SDP solver for the extremal-fidelity programs."""

from .bounds import (
    CSV_HEADER,
    BoundsRow,
    bounds_row,
    build_fidelity_sdp,
    choi_from_solution,
    feasible_f0_range,
    format_csv,
    max_process_fidelity,
    min_process_fidelity,
    solve_fidelity_sdp,
    sweep,
)
from .channels import (
    Channel,
    CptpReport,
    SicEnsemble,
    apply_channel,
    channel_from_dict,
    channel_from_kraus,
    channel_to_dict,
    conjugate_by_unitary,
    depolarizing,
    load_channel,
    max_entangled,
    random_cptp,
    save_channel,
    sic_states,
    single_qubit_sic,
    validate_cptp,
)
from .fidelity import (
    FidelityReport,
    ShotEstimate,
    average_fidelity,
    estimate_zero_fidelity,
    fidelity_bounds,
    fidelity_report,
    process_fidelity,
    survival_probabilities,
    zero_fidelity_choi,
    zero_fidelity_direct,
)
from .frame import (
    FrameOperator,
    WitnessReport,
    eigenvalue_multiplicity,
    entangled_eigvector_residual,
    frame_operator,
    overlap_gram,
    single_qubit_gram,
    synthesis_matrix,
    witness_check,
)
from .linalg import (
    Spectrum,
    hermitian_eig,
    kron,
    partial_trace,
    real_embed,
    unembed,
)
from .sdp import (
    InfeasibleConstraintsError,
    SdpConfig,
    SdpProblem,
    SdpSolution,
    project_psd,
    solve,
)

__version__ = "0.1.0"
