//! Exhaustive sweeps over every distribution of `c` candies among `n`
//! students, with aggregate reports and verifiers for the stabilization
//! claims.
//!
//! The universe for a family `(n, c)` is the set of compositions of `c` into
//! `n` non-negative parts, enumerated in lexicographic order. Ranks into that
//! order (via [`unrank_composition`]) partition a sweep into contiguous
//! chunks, so worker results merge into a report that is identical for every
//! parallelism degree.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{ConfigError, Configuration, MAX_TOTAL_CANDY, MIN_STUDENTS};
use crate::trajectory::{
    analyze, attractor_cycle, Outcome, TrajectoryError, TrajectorySummary,
};

/// Periodic witnesses kept per report unless a caller asks for more.
pub const DEFAULT_WITNESS_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// A claim was invoked outside the regime where it is asserted.
    #[error("{0}")]
    Precondition(String),
    #[error("composition count for n={n}, c={c} exceeds the 64-bit range")]
    CountOverflow { n: usize, c: u64 },
    #[error("composition rank {index} out of range for n={n}, c={c} ({count} compositions)")]
    IndexOutOfRange {
        index: u64,
        n: usize,
        c: u64,
        count: u64,
    },
    #[error("trajectory from {} did not recur within {max_rounds} rounds", DisplayCounts(initial))]
    CapExceeded {
        initial: Vec<u64>,
        max_rounds: usize,
    },
}

struct DisplayCounts<'a>(&'a [u64]);

impl fmt::Display for DisplayCounts<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Same admission rules as [`Configuration::new`], checked before touching a
/// whole family.
fn validate_family(n: usize, c: u64) -> Result<(), SweepError> {
    if n < MIN_STUDENTS {
        return Err(ConfigError::TooFewStudents(n).into());
    }
    if c == 0 {
        return Err(ConfigError::NoCandy.into());
    }
    if c > MAX_TOTAL_CANDY {
        return Err(ConfigError::TotalTooLarge(c).into());
    }
    Ok(())
}

/// Number of compositions of `c` into `n` non-negative parts,
/// `C(c + n − 1, n − 1)`, with overflow-checked arithmetic.
pub fn composition_count(n: usize, c: u64) -> Result<u64, SweepError> {
    if n == 0 {
        return Err(SweepError::Precondition(
            "composition count needs at least one part".to_string(),
        ));
    }
    let k = (n - 1) as u64;
    let m = c
        .checked_add(k)
        .ok_or(SweepError::CountOverflow { n, c })?;
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul(u128::from(m - k + i))
            .ok_or(SweepError::CountOverflow { n, c })?;
        // Exact: after multiplying i consecutive factors the product is
        // divisible by i!.
        acc /= u128::from(i);
    }
    u64::try_from(acc).map_err(|_| SweepError::CountOverflow { n, c })
}

/// Advances `counts` to its lexicographic successor among compositions of
/// the same total. Returns false on the last composition `[c, 0, …, 0]`.
pub(crate) fn next_composition(counts: &mut [u64]) -> bool {
    let n = counts.len();
    let z = match counts.iter().rposition(|&v| v > 0) {
        Some(z) => z,
        None => return false,
    };
    if z == 0 {
        return false;
    }
    let v = counts[z];
    counts[z] = 0;
    counts[z - 1] += 1;
    counts[n - 1] = v - 1;
    true
}

/// Lexicographic stream of every composition of `c` into `n` parts, starting
/// at `[0, …, 0, c]`. With `canonical_only`, only states equal to their own
/// dihedral canonical form are yielded: exactly one representative per
/// rotation/reflection class.
pub struct Compositions {
    state: Option<Vec<u64>>,
    canonical_only: bool,
}

impl Iterator for Compositions {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        loop {
            let current = self.state.as_mut()?;
            let item = Configuration::from_trusted_counts(current.clone());
            if !next_composition(current) {
                self.state = None;
            }
            if !self.canonical_only || item.is_canonical() {
                return Some(item);
            }
        }
    }
}

pub fn enumerate_compositions(
    n: usize,
    c: u64,
    canonical_only: bool,
) -> Result<Compositions, SweepError> {
    validate_family(n, c)?;
    let mut first = vec![0u64; n];
    first[n - 1] = c;
    Ok(Compositions {
        state: Some(first),
        canonical_only,
    })
}

/// The `index`-th composition in the same lexicographic order as
/// [`enumerate_compositions`] without canonical filtering.
pub fn unrank_composition(n: usize, c: u64, index: u64) -> Result<Configuration, SweepError> {
    validate_family(n, c)?;
    let count = composition_count(n, c)?;
    if index >= count {
        return Err(SweepError::IndexOutOfRange { index, n, c, count });
    }
    let mut counts = vec![0u64; n];
    let mut remaining = c;
    let mut rank = index;
    for (pos, slot) in counts.iter_mut().enumerate().take(n - 1) {
        let parts_right = n - 1 - pos;
        for v in 0..=remaining {
            let block = composition_count(parts_right, remaining - v)?;
            if rank < block {
                *slot = v;
                remaining -= v;
                break;
            }
            rank -= block;
        }
    }
    counts[n - 1] = remaining;
    Ok(Configuration::from_trusted_counts(counts))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Analyze only dihedral class representatives.
    pub canonical_only: bool,
    /// Round cap handed to every trajectory.
    pub max_rounds: usize,
    /// Worker count; the report does not depend on it.
    pub parallelism: usize,
    /// Cap on the periodic witness list.
    pub witness_limit: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            canonical_only: false,
            max_rounds: crate::trajectory::DEFAULT_MAX_ROUNDS,
            parallelism: 1,
            witness_limit: DEFAULT_WITNESS_LIMIT,
        }
    }
}

/// Trajectory tallies keyed by outcome.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    #[serde(rename = "Frozen")]
    pub frozen: u64,
    #[serde(rename = "ActiveFixed")]
    pub active_fixed: u64,
    #[serde(rename = "Periodic")]
    pub periodic: u64,
}

impl OutcomeCounts {
    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Frozen => self.frozen += 1,
            Outcome::ActiveFixed => self.active_fixed += 1,
            Outcome::Periodic => self.periodic += 1,
        }
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        match outcome {
            Outcome::Frozen => self.frozen,
            Outcome::ActiveFixed => self.active_fixed,
            Outcome::Periodic => self.periodic,
        }
    }

    pub fn total(&self) -> u64 {
        self.frozen + self.active_fixed + self.periodic
    }
}

/// Aggregate verdict over one `(n, c)` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub c: u64,
    pub canonical_mode: bool,
    pub total_enumerated: u64,
    pub counts_by_outcome: OutcomeCounts,
    pub max_transient: usize,
    /// Lexicographically least initial state among transient maximizers.
    pub max_transient_witness: Vec<u64>,
    pub period_histogram: BTreeMap<usize, u64>,
    /// Lexicographically least periodic initial states, capped at the
    /// witness limit.
    #[serde(rename = "witnesses")]
    pub periodic_witnesses: Vec<Vec<u64>>,
}

#[derive(Debug, Default)]
struct Partial {
    analyzed: u64,
    outcomes: OutcomeCounts,
    max_transient: Option<(usize, Vec<u64>)>,
    period_histogram: BTreeMap<usize, u64>,
    periodic_witnesses: Vec<Vec<u64>>,
}

impl Partial {
    fn observe(&mut self, summary: &TrajectorySummary, witness_limit: usize) {
        let initial = summary.initial.counts();
        self.analyzed += 1;
        self.outcomes.record(summary.outcome);
        *self.period_histogram.entry(summary.period).or_insert(0) += 1;
        match &self.max_transient {
            Some((best, witness))
                if *best > summary.transient
                    || (*best == summary.transient && witness.as_slice() <= initial) => {}
            _ => self.max_transient = Some((summary.transient, initial.to_vec())),
        }
        if summary.period >= 2 && self.periodic_witnesses.len() < witness_limit {
            // Enumeration order is lexicographic, so pushing keeps the list
            // sorted and lex-least.
            self.periodic_witnesses.push(initial.to_vec());
        }
    }

    fn merge(mut self, other: Partial, witness_limit: usize) -> Partial {
        self.analyzed += other.analyzed;
        self.outcomes.frozen += other.outcomes.frozen;
        self.outcomes.active_fixed += other.outcomes.active_fixed;
        self.outcomes.periodic += other.outcomes.periodic;
        for (period, count) in other.period_histogram {
            *self.period_histogram.entry(period).or_insert(0) += count;
        }
        self.max_transient = match (self.max_transient, other.max_transient) {
            (Some((a, wa)), Some((b, wb))) => {
                if a > b || (a == b && wa <= wb) {
                    Some((a, wa))
                } else {
                    Some((b, wb))
                }
            }
            (a, b) => a.or(b),
        };
        self.periodic_witnesses.extend(other.periodic_witnesses);
        self.periodic_witnesses.sort_unstable();
        self.periodic_witnesses.truncate(witness_limit);
        self
    }
}

fn split_ranges(total: u64, workers: u64) -> Vec<(u64, u64)> {
    let workers = workers.clamp(1, total.max(1));
    let base = total / workers;
    let extra = total % workers;
    let mut ranges = Vec::with_capacity(workers as usize);
    let mut start = 0;
    for w in 0..workers {
        let len = base + u64::from(w < extra);
        if len > 0 {
            ranges.push((start, start + len));
        }
        start += len;
    }
    ranges
}

fn sweep_range(
    n: usize,
    c: u64,
    lo: u64,
    hi: u64,
    options: &SweepOptions,
) -> Result<Partial, (u64, SweepError)> {
    let mut partial = Partial::default();
    if lo >= hi {
        return Ok(partial);
    }
    let mut counts = unrank_composition(n, c, lo)
        .map_err(|e| (lo, e))?
        .into_counts();
    let mut rank = lo;
    loop {
        let item = Configuration::from_trusted_counts(counts.clone());
        if !options.canonical_only || item.is_canonical() {
            match analyze(&item, options.max_rounds) {
                Ok(summary) => partial.observe(&summary, options.witness_limit),
                Err(TrajectoryError::CapExceeded { max_rounds }) => {
                    return Err((rank, SweepError::CapExceeded {
                        initial: counts,
                        max_rounds,
                    }));
                }
            }
        }
        rank += 1;
        if rank == hi {
            return Ok(partial);
        }
        let advanced = next_composition(&mut counts);
        debug_assert!(advanced, "ran past the composition stream");
    }
}

/// Analyzes every enumerated configuration of the `(n, c)` family and
/// aggregates outcomes. The result is independent of the parallelism degree:
/// workers take contiguous rank ranges and partial aggregates merge by
/// commutative, associative rules.
pub fn sweep(n: usize, c: u64, options: SweepOptions) -> Result<SweepReport, SweepError> {
    validate_family(n, c)?;
    let total = composition_count(n, c)?;
    let ranges = split_ranges(total, options.parallelism as u64);

    let results: Vec<Result<Partial, (u64, SweepError)>> = if ranges.len() <= 1 {
        vec![sweep_range(n, c, 0, total, &options)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(lo, hi)| {
                    let options = &options;
                    scope.spawn(move || sweep_range(n, c, lo, hi, options))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut partials = Vec::with_capacity(results.len());
    let mut first_error: Option<(u64, SweepError)> = None;
    for result in results {
        match result {
            Ok(p) => partials.push(p),
            Err((rank, error)) => {
                if first_error.as_ref().is_none_or(|(r, _)| rank < *r) {
                    first_error = Some((rank, error));
                }
            }
        }
    }
    if let Some((_, error)) = first_error {
        return Err(error);
    }

    let merged = partials
        .into_iter()
        .reduce(|a, b| a.merge(b, options.witness_limit))
        .unwrap_or_default();
    let (max_transient, max_transient_witness) = merged
        .max_transient
        .expect("non-empty family always yields at least one trajectory");
    Ok(SweepReport {
        n,
        c,
        canonical_mode: options.canonical_only,
        total_enumerated: merged.analyzed,
        counts_by_outcome: merged.outcomes,
        max_transient,
        max_transient_witness,
        period_histogram: merged.period_histogram,
        periodic_witnesses: merged.periodic_witnesses,
    })
}

/// Which claim a [`Verdict`] speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    /// Every game with `c ≥ 3n−2` reaches a fixed point.
    #[serde(rename = "theorem_3n_minus_2")]
    Theorem,
    /// Every game with `c < n` freezes.
    #[serde(rename = "subcritical_termination")]
    Subcritical,
    /// Fixed points without abundant piles have the expected pile multiset
    /// at `c ∈ {3n−2, 3n−1, 3n}`.
    #[serde(rename = "endgame_shape")]
    Endgame,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimKind::Theorem => f.write_str("theorem_3n_minus_2"),
            ClaimKind::Subcritical => f.write_str("subcritical_termination"),
            ClaimKind::Endgame => f.write_str("endgame_shape"),
        }
    }
}

/// Pass/fail of one claim over a swept family, with a re-checkable
/// counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: ClaimKind,
    pub n: usize,
    /// The swept total, or `None` for claims spanning several totals.
    pub c: Option<u64>,
    pub passed: bool,
    pub counterexample: Option<TrajectorySummary>,
}

fn re_analyze(counts: &[u64], max_rounds: usize) -> Result<TrajectorySummary, SweepError> {
    let config = Configuration::from_trusted_counts(counts.to_vec());
    analyze(&config, max_rounds).map_err(|TrajectoryError::CapExceeded { max_rounds }| {
        SweepError::CapExceeded {
            initial: counts.to_vec(),
            max_rounds,
        }
    })
}

/// Checks that every game in the `(n, c)` family reaches a fixed point.
/// Only defined for `c ≥ 3n−2`, where the claim is asserted.
pub fn verify_theorem(n: usize, c: u64, options: SweepOptions) -> Result<Verdict, SweepError> {
    validate_family(n, c)?;
    let bound = 3 * n as u64 - 2;
    if c < bound {
        return Err(SweepError::Precondition(format!(
            "stabilization is only claimed for c ≥ 3n−2 = {bound}, got c = {c}"
        )));
    }
    let mut options = options;
    options.witness_limit = options.witness_limit.max(1);
    let report = sweep(n, c, options)?;
    let passed = report.counts_by_outcome.periodic == 0;
    let counterexample = match report.periodic_witnesses.first() {
        Some(witness) if !passed => Some(re_analyze(witness, options.max_rounds)?),
        _ => None,
    };
    Ok(Verdict {
        claim: ClaimKind::Theorem,
        n,
        c: Some(c),
        passed,
        counterexample,
    })
}

/// Checks that every game in the `(n, c)` family freezes. Only defined for
/// `1 ≤ c < n`, where the claim is asserted.
pub fn verify_subcritical(n: usize, c: u64, options: SweepOptions) -> Result<Verdict, SweepError> {
    validate_family(n, c)?;
    if c >= n as u64 {
        return Err(SweepError::Precondition(format!(
            "termination is only claimed for c < n = {n}, got c = {c}"
        )));
    }
    let report = sweep(n, c, options)?;
    let passed = report.counts_by_outcome.frozen == report.total_enumerated;
    let counterexample = if passed {
        None
    } else {
        // Lexicographically least state that fails to freeze.
        let mut found = None;
        for item in enumerate_compositions(n, c, options.canonical_only)? {
            let summary = re_analyze(item.counts(), options.max_rounds)?;
            if summary.outcome != Outcome::Frozen {
                found = Some(summary);
                break;
            }
        }
        found
    };
    Ok(Verdict {
        claim: ClaimKind::Subcritical,
        n,
        c: None,
        passed,
        counterexample,
    })
}

fn expected_endgame_multiset(n: usize, c: u64) -> Vec<u64> {
    let three_n = 3 * n as u64;
    let mut shape = if c == three_n {
        vec![3u64; n]
    } else if c == three_n - 1 {
        let mut v = vec![3u64; n - 1];
        v.push(2);
        v
    } else {
        let mut v = vec![3u64; n - 2];
        v.extend([2, 2]);
        v
    };
    shape.sort_unstable();
    shape
}

/// Checks the terminal pile shapes: over full sweeps of `c = 3n`, `3n−1` and
/// `3n−2`, every attractor state with no abundant pile has pile multiset
/// all-3s, `{3×(n−1), 2}`, or `{3×(n−2), 2, 2}` respectively. Attractors
/// that still hold an abundant pile are exempt.
pub fn verify_endgame_shapes(n: usize, options: SweepOptions) -> Result<Verdict, SweepError> {
    if n < MIN_STUDENTS {
        return Err(ConfigError::TooFewStudents(n).into());
    }
    for c in [3 * n as u64 - 2, 3 * n as u64 - 1, 3 * n as u64] {
        let expected = expected_endgame_multiset(n, c);
        for item in enumerate_compositions(n, c, options.canonical_only)? {
            let cycle = attractor_cycle(&item, options.max_rounds).map_err(
                |TrajectoryError::CapExceeded { max_rounds }| SweepError::CapExceeded {
                    initial: item.counts().to_vec(),
                    max_rounds,
                },
            )?;
            for state in cycle {
                if state.abundance().m() > 0 {
                    continue;
                }
                let mut multiset = state.counts().to_vec();
                multiset.sort_unstable();
                if multiset != expected {
                    let counterexample = re_analyze(item.counts(), options.max_rounds)?;
                    return Ok(Verdict {
                        claim: ClaimKind::Endgame,
                        n,
                        c: Some(c),
                        passed: false,
                        counterexample: Some(counterexample),
                    });
                }
            }
        }
    }
    Ok(Verdict {
        claim: ClaimKind::Endgame,
        n,
        c: None,
        passed: true,
        counterexample: None,
    })
}

/// Per-total verdict for the band the stabilization claims leave open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub all_stabilize: bool,
    /// Lexicographically least periodic initial state, when one exists.
    pub witness: Option<Vec<u64>>,
}

/// Sweeps every total in `c_min..=c_max` for `n` students and records
/// whether the whole family reaches fixed points.
pub fn tightness_scan(
    n: usize,
    c_min: u64,
    c_max: u64,
    options: SweepOptions,
) -> Result<BTreeMap<u64, ScanRecord>, SweepError> {
    if c_min == 0 || c_min > c_max {
        return Err(SweepError::Precondition(format!(
            "scan range must satisfy 1 ≤ c_min ≤ c_max, got {c_min}..={c_max}"
        )));
    }
    let mut options = options;
    options.witness_limit = options.witness_limit.max(1);
    let mut records = BTreeMap::new();
    for c in c_min..=c_max {
        let report = sweep(n, c, options)?;
        records.insert(
            c,
            ScanRecord {
                all_stabilize: report.counts_by_outcome.periodic == 0,
                witness: report.periodic_witnesses.first().cloned(),
            },
        );
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_of(stream: Compositions) -> Vec<Vec<u64>> {
        stream.map(Configuration::into_counts).collect()
    }

    #[test]
    fn composition_count_known_values() {
        assert_eq!(composition_count(3, 4).unwrap(), 15);
        assert_eq!(composition_count(4, 10).unwrap(), 286);
        assert_eq!(composition_count(8, 22).unwrap(), 1_560_780);
        assert_eq!(composition_count(3, 1).unwrap(), 3);
        assert_eq!(composition_count(1, 7).unwrap(), 1);
        assert_eq!(composition_count(5, 0).unwrap(), 1);
    }

    #[test]
    fn composition_count_overflows_cleanly() {
        assert!(matches!(
            composition_count(70, 1_000_000),
            Err(SweepError::CountOverflow { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let all = counts_of(enumerate_compositions(3, 1, false).unwrap());
        assert_eq!(all, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);

        assert_eq!(enumerate_compositions(3, 4, false).unwrap().count(), 15);

        let canonical = counts_of(enumerate_compositions(3, 1, true).unwrap());
        assert_eq!(canonical, vec![vec![0, 0, 1]]);
    }

    #[test]
    fn enumeration_rejects_bad_families() {
        assert!(matches!(
            enumerate_compositions(2, 5, false),
            Err(SweepError::Config(ConfigError::TooFewStudents(2)))
        ));
        assert!(matches!(
            enumerate_compositions(3, 0, false),
            Err(SweepError::Config(ConfigError::NoCandy))
        ));
    }

    #[test]
    fn canonical_class_counts() {
        // Dihedral equivalence classes counted by brute-force filtering.
        for (n, c, classes) in [(3, 4, 4usize), (3, 6, 7), (4, 6, 16), (5, 5, 16)] {
            assert_eq!(
                enumerate_compositions(n, c, true).unwrap().count(),
                classes,
                "family ({n},{c})"
            );
        }
    }

    #[test]
    fn unrank_matches_lexicographic_order() {
        assert_eq!(unrank_composition(3, 1, 0).unwrap().counts(), &[0, 0, 1]);
        assert_eq!(unrank_composition(3, 1, 2).unwrap().counts(), &[1, 0, 0]);
        assert_eq!(unrank_composition(3, 4, 14).unwrap().counts(), &[4, 0, 0]);
        assert!(matches!(
            unrank_composition(3, 1, 3),
            Err(SweepError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn sweep_all_fixed_at_three_n() {
        let report = sweep(3, 9, SweepOptions::default()).unwrap();
        assert_eq!(report.total_enumerated, 55);
        assert_eq!(report.counts_by_outcome.active_fixed, 55);
        assert_eq!(report.counts_by_outcome.periodic, 0);
        assert_eq!(report.period_histogram, BTreeMap::from([(1, 55)]));
        assert_eq!(report.max_transient, 3);
        assert_eq!(report.max_transient_witness, vec![0, 1, 8]);
        assert!(report.periodic_witnesses.is_empty());
    }

    #[test]
    fn sweep_finds_cycles_below_the_bound() {
        // c = 3n−3 fails for n = 3: period-3 orbits appear.
        let report = sweep(3, 6, SweepOptions::default()).unwrap();
        assert_eq!(report.total_enumerated, 28);
        assert_eq!(report.counts_by_outcome.active_fixed, 10);
        assert_eq!(report.counts_by_outcome.periodic, 18);
        assert_eq!(report.period_histogram, BTreeMap::from([(1, 10), (3, 18)]));
        assert_eq!(report.max_transient, 2);
        assert_eq!(report.max_transient_witness, vec![0, 0, 6]);
        assert_eq!(report.periodic_witnesses.len(), DEFAULT_WITNESS_LIMIT);
        assert_eq!(report.periodic_witnesses[0], vec![0, 1, 5]);
        assert!(report
            .periodic_witnesses
            .contains(&vec![3, 2, 1]));
    }

    #[test]
    fn sweep_subcritical_family_freezes() {
        let report = sweep(5, 4, SweepOptions::default()).unwrap();
        assert_eq!(report.total_enumerated, 70);
        assert_eq!(report.counts_by_outcome.frozen, 70);
        assert_eq!(report.max_transient, 4);
        assert_eq!(report.max_transient_witness, vec![0, 0, 0, 0, 4]);
    }

    #[test]
    fn sweep_period_two_family() {
        let report = sweep(3, 4, SweepOptions::default()).unwrap();
        assert_eq!(report.counts_by_outcome.periodic, 15);
        assert_eq!(report.period_histogram, BTreeMap::from([(2, 15)]));
    }

    #[test]
    fn sweep_canonical_mode_counts_class_representatives() {
        let full = sweep(3, 6, SweepOptions::default()).unwrap();
        let reduced = sweep(
            3,
            6,
            SweepOptions {
                canonical_only: true,
                ..SweepOptions::default()
            },
        )
        .unwrap();
        assert_eq!(reduced.total_enumerated, 7);
        assert!(reduced.canonical_mode);
        // Same verdict in both modes: cycles exist.
        assert_eq!(
            full.counts_by_outcome.periodic > 0,
            reduced.counts_by_outcome.periodic > 0
        );
    }

    #[test]
    fn sweep_invariants_hold_on_small_families() {
        for (n, c) in [(3, 5), (4, 7), (5, 6)] {
            let report = sweep(n, c, SweepOptions::default()).unwrap();
            assert_eq!(report.total_enumerated, composition_count(n, c).unwrap());
            assert_eq!(report.counts_by_outcome.total(), report.total_enumerated);
            let fixed = report.counts_by_outcome.frozen + report.counts_by_outcome.active_fixed;
            assert_eq!(report.period_histogram.get(&1).copied().unwrap_or(0), fixed);
        }
    }

    #[test]
    fn sweep_cap_error_reports_least_rank_witness() {
        // With a one-round cap, the very first composition [0,0,4] cannot
        // close its orbit.
        for parallelism in [1, 3] {
            let err = sweep(
                3,
                4,
                SweepOptions {
                    max_rounds: 1,
                    parallelism,
                    ..SweepOptions::default()
                },
            )
            .unwrap_err();
            assert_eq!(
                err,
                SweepError::CapExceeded {
                    initial: vec![0, 0, 4],
                    max_rounds: 1
                }
            );
        }
    }

    #[test]
    fn verify_theorem_examples() {
        let v = verify_theorem(3, 7, SweepOptions::default()).unwrap();
        assert!(v.passed);
        assert_eq!(v.c, Some(7));
        assert!(v.counterexample.is_none());

        let v = verify_theorem(4, 10, SweepOptions::default()).unwrap();
        assert!(v.passed);

        assert!(matches!(
            verify_theorem(3, 6, SweepOptions::default()),
            Err(SweepError::Precondition(_))
        ));
    }

    #[test]
    fn verify_subcritical_examples() {
        let v = verify_subcritical(5, 4, SweepOptions::default()).unwrap();
        assert!(v.passed);
        let v = verify_subcritical(3, 2, SweepOptions::default()).unwrap();
        assert!(v.passed);
        assert!(matches!(
            verify_subcritical(3, 3, SweepOptions::default()),
            Err(SweepError::Precondition(_))
        ));
    }

    #[test]
    fn verify_endgame_examples() {
        let v = verify_endgame_shapes(3, SweepOptions::default()).unwrap();
        assert!(v.passed);
        assert_eq!(v.claim, ClaimKind::Endgame);
        assert!(v.c.is_none());

        // [4,2,2,2] is a fixed point of the c = 3n−2 family for n = 4 with an
        // abundant pile, so the shape check exempts it and n = 4 still passes.
        let held = Configuration::new(vec![4, 2, 2, 2]).unwrap();
        assert!(held.is_fixed_point());
        assert_eq!(held.abundance().m(), 1);
        let v = verify_endgame_shapes(4, SweepOptions::default()).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn tightness_scan_examples() {
        let records = tightness_scan(3, 6, 6, SweepOptions::default()).unwrap();
        assert!(!records[&6].all_stabilize);
        assert_eq!(records[&6].witness, Some(vec![0, 1, 5]));

        let records = tightness_scan(3, 7, 9, SweepOptions::default()).unwrap();
        assert!(records.values().all(|r| r.all_stabilize && r.witness.is_none()));

        let records = tightness_scan(3, 1, 2, SweepOptions::default()).unwrap();
        assert!(records.values().all(|r| r.all_stabilize));

        assert!(matches!(
            tightness_scan(3, 0, 5, SweepOptions::default()),
            Err(SweepError::Precondition(_))
        ));
    }

    #[test]
    fn claim_kind_identifiers() {
        assert_eq!(ClaimKind::Theorem.to_string(), "theorem_3n_minus_2");
        assert_eq!(
            serde_json::to_string(&ClaimKind::Subcritical).unwrap(),
            "\"subcritical_termination\""
        );
    }
}
