//! Nonlocal characterization of two-qubit gates.
//!
//! A gate is described either by its Weyl-chamber point `[c1, c2, c3]` or by
//! an arbitrary 4×4 unitary. From either form the crate computes the local
//! invariants `G1`, `G2`, the entangling power `e_P` and a perfect-entangler
//! verdict, each by more than one independent route so the routes can check
//! one another:
//!
//! * closed forms in the Weyl coordinates ([`invariants`], [`entangling`]),
//! * magic-basis trace formulas for arbitrary matrices ([`invariants::invariants_from_matrix`]),
//! * the exact 16-dimensional operator formula ([`entangling::ep_operator_exact`]),
//! * a seeded Monte-Carlo average over Haar-random product states
//!   ([`entangling::ep_monte_carlo`]).
//!
//! With the default `parallel` feature, Monte-Carlo blocks and lattice sweeps
//! run on rayon; results are bit-identical to the sequential build.

pub mod canonical;
pub mod classify;
pub mod entangling;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod par;
pub mod rng;
pub mod sampling;
pub mod suites;

pub use canonical::{
    canonical_gate, edge_point, in_weyl_chamber, mirror, named_gate, EdgeId, GateRecord, Tag, WeylPoint,
};
pub use classify::{
    classify_gate, is_pe_geometric, is_pe_invariant, verify_theorems, GateInput, PeRoute, PeVerdict, TheoremReport,
};
pub use entangling::{ep_closed_form, ep_from_g1_abs, ep_monte_carlo, ep_operator_exact, linear_entropy, EpEstimate};
pub use error::{Error, Result};
pub use invariants::{g1_abs_closed, g1_complex_closed, g2_closed, invariants_from_matrix, LocalInvariants};
pub use linalg::{Mat16, Mat2, Mat4, StateVec2, StateVec4, C64};
pub use par::Execution;

/// Numerical tolerances shared across modules.
pub mod tolerance {
    /// Unitarity defect accepted on matrices arriving from outside (files, callers).
    pub const INGEST_UNITARITY: f64 = 1e-8;
    /// Unitarity defect expected of matrices built internally.
    pub const INTERNAL_UNITARITY: f64 = 1e-12;
    /// Chamber-membership slack on each inequality.
    pub const CHAMBER: f64 = 1e-12;
    /// Slack on the perfect-entangler inequalities.
    pub const PE_BOUNDARY: f64 = 1e-9;
    /// Largest imaginary residue dropped when a quantity is real by construction.
    pub const IMAGINARY_RESIDUE: f64 = 1e-9;
    /// Agreement required between the two-trace and single-trace operator forms.
    pub const OPERATOR_SELF_CHECK: f64 = 1e-10;
    /// Agreement required between a Weyl point's closed forms and its classification routes.
    pub const RECORD_AGREEMENT: f64 = 1e-10;
}

/// Whether this build runs sweeps on rayon.
pub const PARALLEL: bool = cfg!(feature = "parallel");
