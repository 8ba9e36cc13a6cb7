//! Iteration from one starting configuration to its attractor.
//!
//! Total candy is conserved and the state space of a fixed `(n, c)` family is
//! finite, so every trajectory is eventually periodic. Detection is by exact
//! match: every visited state is recorded with its round index, and the first
//! revisit pins down the transient and period exactly in one pass.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{step_into, Configuration};

/// Round cap applied when a caller does not choose one.
pub const DEFAULT_MAX_ROUNDS: usize = 1_000_000;

/// Raised when no state recurred within the round cap. A conserved total
/// makes non-periodicity impossible, so this always means the cap was set
/// below the true transient plus period.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrajectoryError {
    #[error("no state recurred within {max_rounds} rounds; raise the round cap")]
    CapExceeded { max_rounds: usize },
}

/// How a trajectory ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    /// Fixed point with every pile ≤ 1: nobody can pass.
    Frozen,
    /// Fixed point with every pile ≥ 2: everyone passes two and receives two.
    ActiveFixed,
    /// Limit cycle of length ≥ 2.
    Periodic,
}

/// Exact measurements for one trajectory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrajectorySummary {
    /// The starting configuration.
    #[serde(rename = "counts")]
    pub initial: Configuration,
    /// Rounds before the first state that later recurs.
    pub transient: usize,
    /// Length of the recurrent cycle; 1 for fixed points.
    pub period: usize,
    pub outcome: Outcome,
    /// Lexicographically least canonical form among the states on the cycle,
    /// identical across rotated or reflected starting states.
    #[serde(rename = "attractor")]
    pub attractor_canonical: Configuration,
    /// First round from which the abundant index set and the counts at those
    /// indices stay constant for the rest of the game.
    pub abundant_fix_round: usize,
    /// Rounds actually computed: `transient + period`.
    pub rounds_computed: usize,
}

/// Audit record for the abundant-pile stabilization law: after finitely many
/// rounds the set of abundant students is fixed and their piles no longer
/// change.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationAudit {
    pub holds: bool,
    /// Earliest round from which the abundant set and its counts are constant.
    pub fix_round: usize,
    /// Rounds at which the abundant set strictly shrank.
    pub set_shrink_rounds: Vec<usize>,
    pub violation: Option<StabilizationViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationViolation {
    pub round: usize,
    pub description: String,
}

/// A fully recorded orbit: `states[0..transient + period]` are the distinct
/// visited states; the state at round `transient + period` equals
/// `states[transient]`.
struct Orbit {
    states: Vec<Vec<u64>>,
    transient: usize,
    period: usize,
}

fn explore(start: &Configuration, max_rounds: usize) -> Result<Orbit, TrajectoryError> {
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut states: Vec<Vec<u64>> = Vec::new();
    seen.insert(start.counts().to_vec(), 0);
    states.push(start.counts().to_vec());
    let mut next: Vec<u64> = Vec::with_capacity(start.student_count());
    for round in 1..=max_rounds {
        step_into(states.last().expect("states never empty"), &mut next);
        if let Some(&first_seen) = seen.get(&next) {
            return Ok(Orbit {
                states,
                transient: first_seen,
                period: round - first_seen,
            });
        }
        seen.insert(next.clone(), round);
        states.push(next.clone());
    }
    Err(TrajectoryError::CapExceeded { max_rounds })
}

/// Abundant indices of a state together with the counts held there.
fn abundance_data(counts: &[u64]) -> (Vec<usize>, Vec<u64>) {
    let indices: Vec<usize> = (0..counts.len())
        .filter(|&i| counts[i] >= crate::dynamics::ABUNDANCE_THRESHOLD)
        .collect();
    let values = indices.iter().map(|&i| counts[i]).collect();
    (indices, values)
}

impl Orbit {
    /// Round index `r` mapped into the recorded states, folding the periodic
    /// tail back onto the attractor.
    fn state_at(&self, round: usize) -> &[u64] {
        if round < self.states.len() {
            &self.states[round]
        } else {
            &self.states[self.transient + (round - self.transient) % self.period]
        }
    }

    /// First round from which the abundance data is constant over the rest of
    /// the recorded trajectory plus one full attractor cycle.
    fn abundant_fix_round(&self) -> usize {
        let horizon = self.transient + 2 * self.period;
        let last = abundance_data(self.state_at(horizon - 1));
        let mut fix = horizon - 1;
        while fix > 0 && abundance_data(self.state_at(fix - 1)) == last {
            fix -= 1;
        }
        fix
    }

    fn outcome(&self) -> Outcome {
        if self.period >= 2 {
            Outcome::Periodic
        } else if self.states[self.transient].iter().all(|&v| v <= 1) {
            Outcome::Frozen
        } else {
            Outcome::ActiveFixed
        }
    }

    /// Which cycle state is raw-lexicographically least depends on how the
    /// circle happens to be numbered, so the representative is chosen among
    /// canonical forms instead: rotated or reflected starting states then
    /// agree on it exactly.
    fn attractor_canonical(&self) -> Configuration {
        self.states[self.transient..]
            .iter()
            .map(|counts| Configuration::from_trusted_counts(counts.clone()).canonical_form())
            .min_by(|a, b| a.counts().cmp(b.counts()))
            .expect("attractor never empty")
    }
}

/// Runs the game from `start` until a state recurs, reporting the exact
/// transient, period, outcome and abundance diagnostics.
pub fn analyze(
    start: &Configuration,
    max_rounds: usize,
) -> Result<TrajectorySummary, TrajectoryError> {
    let orbit = explore(start, max_rounds)?;
    let summary = TrajectorySummary {
        initial: start.clone(),
        transient: orbit.transient,
        period: orbit.period,
        outcome: orbit.outcome(),
        attractor_canonical: orbit.attractor_canonical(),
        abundant_fix_round: orbit.abundant_fix_round(),
        rounds_computed: orbit.transient + orbit.period,
    };
    debug_assert!(summary.abundant_fix_round <= summary.transient + summary.period);
    Ok(summary)
}

/// Audits one trajectory against the abundant-pile stabilization law:
/// no student ever becomes newly abundant, and from some round on the
/// abundant set and the candy held at those indices never change.
pub fn audit_abundance_stabilization(
    start: &Configuration,
    max_rounds: usize,
) -> Result<StabilizationAudit, TrajectoryError> {
    let orbit = explore(start, max_rounds)?;
    let recorded = orbit.states.len();
    let mut set_shrink_rounds = Vec::new();
    let mut violation: Option<StabilizationViolation> = None;

    // Containment round by round, including the wrap-around pair that closes
    // the attractor cycle.
    for round in 0..recorded {
        let (cur_set, _) = abundance_data(orbit.state_at(round));
        let (next_set, _) = abundance_data(orbit.state_at(round + 1));
        let contained = next_set.iter().all(|i| cur_set.binary_search(i).is_ok());
        if !contained && violation.is_none() {
            violation = Some(StabilizationViolation {
                round: round + 1,
                description: format!(
                    "abundant set grew from {cur_set:?} to {next_set:?} at round {}",
                    round + 1
                ),
            });
        }
        if next_set.len() < cur_set.len() && round + 1 < recorded {
            set_shrink_rounds.push(round + 1);
        }
    }

    let fix_round = orbit.abundant_fix_round();
    if fix_round > orbit.transient + orbit.period && violation.is_none() {
        violation = Some(StabilizationViolation {
            round: fix_round,
            description: "abundant piles never became constant through the attractor cycle"
                .to_string(),
        });
    }

    Ok(StabilizationAudit {
        holds: violation.is_none(),
        fix_round,
        set_shrink_rounds,
        violation,
    })
}

/// The first `rounds + 1` states of the game: `start, step(start), …`.
pub fn trace(start: &Configuration, rounds: usize) -> Vec<Configuration> {
    let mut out = Vec::with_capacity(rounds + 1);
    out.push(start.clone());
    for _ in 0..rounds {
        out.push(out.last().expect("trace never empty").step());
    }
    out
}

/// The states on the recurrent cycle, starting from the attractor entry at
/// round `transient`.
pub fn attractor_cycle(
    start: &Configuration,
    max_rounds: usize,
) -> Result<Vec<Configuration>, TrajectoryError> {
    let orbit = explore(start, max_rounds)?;
    Ok(orbit.states[orbit.transient..]
        .iter()
        .map(|counts| Configuration::from_trusted_counts(counts.clone()))
        .collect())
}
