//! Candy-passing games on a cycle.
//!
//! `n ≥ 3` students sit in a circle holding candy. Every round, each student
//! holding two or more candies simultaneously passes one candy to each
//! neighbor; students with fewer than two candies do nothing. Total candy is
//! conserved, so every game is eventually periodic: it either freezes (all
//! piles ≤ 1), locks into an active fixed point (all piles ≥ 2), or falls
//! into a short limit cycle.
//!
//! The crate is organized in three layers:
//!
//! - [`dynamics`]: the pure update rule and structural predicates on a single
//!   [`Configuration`] (stepping, fixed-point test, abundance, dihedral
//!   canonical form).
//! - [`trajectory`]: iteration from one starting configuration to its
//!   attractor, with exact transient/period measurement and an audit of the
//!   abundant-pile stabilization law.
//! - [`sweep`]: exhaustive enumeration of all distributions of `c` candies
//!   among `n` students, aggregate reports, and verifiers for the known
//!   stabilization claims (`c ≥ 3n−2` fixes, `c < n` freezes, terminal
//!   pile shapes).

pub mod dynamics;
pub mod sweep;
pub mod trajectory;

pub use dynamics::{AbundanceView, ConfigError, Configuration};
pub use sweep::{
    composition_count, enumerate_compositions, sweep, tightness_scan, unrank_composition,
    verify_endgame_shapes, verify_subcritical, verify_theorem, ClaimKind, Compositions,
    OutcomeCounts, ScanRecord, SweepError, SweepOptions, SweepReport, Verdict,
};
pub use trajectory::{
    analyze, attractor_cycle, audit_abundance_stabilization, trace, Outcome, StabilizationAudit,
    TrajectoryError, TrajectorySummary,
};
