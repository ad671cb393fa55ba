"""Super-radiant criticality, collective spectrum, and partition-function
pole structure of the full Dicke spin-boson model, validated against a
finite-N exact-diagonalization oracle and an entanglement toolkit."""

from .params import (
    BasisIndex,
    MatsubaraFrequency,
    ModelParams,
    basis_size,
    basis_state,
    flat_index,
    matsubara,
    thermal_factor,
    validate,
    validation_errors,
)
from .meanfield import (
    CoefficientValue,
    CriticalPoint,
    DipoleCoefficients,
    PoleComparisonReport,
    PoleError,
    SpectrumResult,
    coeff_a,
    coeff_c,
    coeff_d,
    coeff_dd,
    compare_poles,
    critical_beta_closed,
    critical_beta_numeric,
    dipole_route_denominator,
    i0_divergence_beta,
    log_partition_ratio,
    pair_denominator,
    spectrum_equation,
    spectrum_roots,
    spectrum_roots_closed,
)
from .exactdiag import (
    CutoffPolicy,
    DimensionCapError,
    HamiltonianMatrix,
    QptPoint,
    QuantumState,
    ThermalObservables,
    TruncationCapError,
    build_hamiltonian,
    converged_ground,
    ground_state,
    initial_cutoff,
    qpt_scan,
    thermal_observables,
)
from .entanglement import (
    DensityMatrix,
    EntanglementReport,
    EntropyScan,
    dicke_amplitude_matrix,
    entropy_scan,
    fluctuation_correlation,
    reduce_state,
    schmidt_decompose,
    von_neumann_entropy,
)

__version__ = "0.1.0"
