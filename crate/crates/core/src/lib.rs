//! Quantum deficit of three-qubit pure states and the monogamy of its integer
//! powers, together with the classical counterpart for Shannon mutual
//! information of three random variables.
//!
//! Layout:
//!
//! - [`linalg`]: small dense complex matrices, Jacobi eigensolver, partial trace.
//! - [`states`]: `W`, `W̄`, `WW̄`, `GHZ` and the `θ` family, with their marginals.
//! - [`deficit`]: decohered counterparts and the deficit triple `(D_AB, D_AC, D_A:BC)`.
//! - [`monogamy`]: power scans, minimal monogamous power, θ sweeps.
//! - [`classical`]: entropies, mutual informations and their inequality chain.

#![forbid(unsafe_code)]

pub mod base;
pub mod classical;
pub mod deficit;
pub mod error;
pub mod linalg;
pub mod monogamy;
pub mod states;

pub use base::LogBase;
pub use classical::{
    conditional_entropy, entropy, mi_triple, min_mi_power, mutual_information, sample_pmf,
    verify_inequality_chain, InequalityChain, InequalityCheck, JointPmf3, MiTriple, Var,
};
pub use deficit::{
    decohere_bipartition, decohere_pair, deficit_report, quantum_deficit, report_for_state,
    DecoheredDiagonal, DeficitReport, EigenOrder,
};
pub use error::{Error, Result};
pub use linalg::{
    eigh, partial_trace, spectral_entropy_term, ComplexMatrix, DensityMatrix, EigenDecomposition,
    Qubit, Spectrum,
};
pub use monogamy::{
    min_monogamy_power, power_scan, theta_grid, theta_sweep, PowerScanRow, ResidualTangle,
    SweepPoint,
};
pub use num_complex::Complex64;
pub use states::{build_state, marginals, LocalUnitary, MarginalSet, NamedState, PureState, StateSpec};
