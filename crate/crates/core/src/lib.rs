//! Quantum Fisher information of N-qubit states under collective (CLU) and
//! general local (LU) unitary operations.
//!
//! The crate is organised bottom-up:
//!
//! - [`qstate`]: dense pure and mixed states, Pauli and collective spin
//!   operators, partial traces and local rotations.
//! - [`fisher`]: classical and quantum Fisher information, Cramér-Rao bounds,
//!   shot-noise and Heisenberg limits.
//! - [`covariance`]: the collective (3×3) and local (3N×3N) covariance
//!   matrices and the optimisation of the generator direction over them.
//! - [`classify`]: usefulness verdicts for pure entangled states.
//! - [`statelib`]: named states and graph-state stabilizer machinery.
//! - [`oracle`]: brute-force cross-checks used by tests and the CLI.
//! - [`sample`]: seeded random states, rotations and measurements.

pub mod classify;
pub mod config;
pub mod covariance;
pub mod error;
pub mod fisher;
mod linalg;
pub mod oracle;
pub mod qstate;
pub mod sample;
pub mod statelib;

pub use classify::{
    classify_symmetric, ghz_q_useful, locc_filter_demo, symmetric_condition, usefulness_measure,
    usefulness_measure_pure, FamilyDetection, LoccDemo, OptimalDirection, UsefulnessVerdict,
};
pub use config::{Config, Limits, Tolerances};
pub use covariance::{
    best_clu, gamma_c, gamma_c_mixed, gamma_r, gamma_r_mixed, lu_optimize, lu_upper_bound,
    symmetric_spectrum, CluOptimum, CollectiveCovariance, CovarianceSource, DirectionAssignment,
    LocalCovariance, LuOptimum, SymmetricSpectrum,
};
pub use error::{Error, Result};
pub use fisher::{
    classical_fisher, cramer_rao, heisenberg_limit, heisenberg_limit_total, qfi_mixed, qfi_pure,
    shot_noise_limit, Povm, SensitivityBound,
};
pub use qstate::{
    apply_local_rotations, collective_spin_matrix, dicke_state, expectation, is_pure_entangled,
    is_symmetric, lambda_of, partial_trace, variance, Axis, Direction, LambdaMatrix,
    LocalRotationSet, MixedState, PureState, QuantumState,
};
pub use statelib::{
    cabello_singlet, ghz_q, graph_state, grid_cluster, linear_cluster, noon, ps_state,
    ring_cluster, stabilizer_reduced_state, star_graph, twin_fock, Graph, Pauli, PauliString,
};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;
