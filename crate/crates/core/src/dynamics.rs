//! The update rule and structural predicates on single configurations.
//!
//! Everything here is a pure function on immutable values: stepping never
//! mutates, so configurations can be shared freely across threads.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Fewest students the rule is defined for.
pub const MIN_STUDENTS: usize = 3;

/// A student passes candy in a round iff their pile has at least this much.
pub const PASS_THRESHOLD: u64 = 2;

/// A pile with at least this much candy counts as abundant.
pub const ABUNDANCE_THRESHOLD: u64 = 4;

/// Construction-time cap on total candy. Keeps every later sum, histogram
/// and enumeration comfortably inside 64-bit arithmetic.
pub const MAX_TOTAL_CANDY: u64 = 1 << 32;

/// Rejected inputs at the validation boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("a game needs more than 2 students, got {0}")]
    TooFewStudents(usize),
    #[error("a game needs at least one candy")]
    NoCandy,
    #[error("total candy {0} exceeds the supported maximum of 2^32")]
    TotalTooLarge(u64),
}

/// One game state: the candy count of each student around the circle.
///
/// Student `i`'s neighbors are `(i−1) mod n` and `(i+1) mod n`. The total is
/// cached at construction and conserved by [`Configuration::step`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    counts: Vec<u64>,
    total: u64,
}

impl Configuration {
    /// Validates raw counts: more than 2 students, at least one candy, and
    /// total at most 2^32.
    pub fn new(counts: Vec<u64>) -> Result<Self, ConfigError> {
        if counts.len() < MIN_STUDENTS {
            return Err(ConfigError::TooFewStudents(counts.len()));
        }
        let mut total: u64 = 0;
        for &v in &counts {
            total = total
                .checked_add(v)
                .ok_or(ConfigError::TotalTooLarge(u64::MAX))?;
        }
        if total == 0 {
            return Err(ConfigError::NoCandy);
        }
        if total > MAX_TOTAL_CANDY {
            return Err(ConfigError::TotalTooLarge(total));
        }
        Ok(Self { counts, total })
    }

    /// Wraps counts already known to satisfy the construction invariants,
    /// e.g. states produced by `step` or by the sweep enumerator.
    pub(crate) fn from_trusted_counts(counts: Vec<u64>) -> Self {
        debug_assert!(counts.len() >= MIN_STUDENTS);
        let total = counts.iter().sum();
        debug_assert!((1..=MAX_TOTAL_CANDY).contains(&total));
        Self { counts, total }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    /// Number of students, `n`.
    pub fn student_count(&self) -> usize {
        self.counts.len()
    }

    /// Total candy in play, `c`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// One synchronous round: every student holding at least two candies
    /// passes one to each neighbor, decided entirely from the round-start
    /// snapshot. Conserves the total.
    pub fn step(&self) -> Self {
        let mut next = Vec::with_capacity(self.counts.len());
        step_into(&self.counts, &mut next);
        Self {
            counts: next,
            total: self.total,
        }
    }

    /// True iff `step` returns the state unchanged; equivalently, all piles
    /// pass (≥ 2 everywhere) or none do (≤ 1 everywhere).
    pub fn is_fixed_point(&self) -> bool {
        self.counts.iter().all(|&v| v >= PASS_THRESHOLD)
            || self.counts.iter().all(|&v| v < PASS_THRESHOLD)
    }

    /// The abundant students (piles ≥ 4) of this state.
    pub fn abundance(&self) -> AbundanceView {
        AbundanceView::of_counts(&self.counts)
    }

    /// Lexicographically least sequence among all `2n` rotations and
    /// reflected rotations. Two configurations have equal canonical forms
    /// iff one is a rotation or reflection of the other.
    pub fn canonical_form(&self) -> Self {
        let mut best = self.counts.clone();
        let reversed: Vec<u64> = self.counts.iter().rev().copied().collect();
        for base in [&self.counts, &reversed] {
            for shift in 0..base.len() {
                let mut image: Vec<u64> = Vec::with_capacity(base.len());
                image.extend_from_slice(&base[shift..]);
                image.extend_from_slice(&base[..shift]);
                if image < best {
                    best = image;
                }
            }
        }
        Self {
            counts: best,
            total: self.total,
        }
    }

    /// True iff this state already is its own canonical form.
    pub fn is_canonical(&self) -> bool {
        self.canonical_form().counts == self.counts
    }

    /// The state seen when every student walks `shift` seats around the
    /// circle: `rotated(shift)[i] = counts[(i + shift) mod n]`.
    pub fn rotated(&self, shift: usize) -> Self {
        let n = self.counts.len();
        let shift = shift % n;
        let mut counts = Vec::with_capacity(n);
        counts.extend_from_slice(&self.counts[shift..]);
        counts.extend_from_slice(&self.counts[..shift]);
        Self {
            counts,
            total: self.total,
        }
    }

    /// The mirror image of the circle.
    pub fn reflected(&self) -> Self {
        Self {
            counts: self.counts.iter().rev().copied().collect(),
            total: self.total,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A configuration serializes as its bare count sequence.
impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

#[inline]
fn gives(v: u64) -> u64 {
    u64::from(v >= PASS_THRESHOLD)
}

/// Writes `step(counts)` into `next`. Shared by the trajectory loop, which
/// reuses buffers across millions of rounds.
pub(crate) fn step_into(counts: &[u64], next: &mut Vec<u64>) {
    let n = counts.len();
    next.clear();
    next.extend((0..n).map(|i| {
        let left = counts[if i == 0 { n - 1 } else { i - 1 }];
        let right = counts[if i + 1 == n { 0 } else { i + 1 }];
        counts[i] - 2 * gives(counts[i]) + gives(left) + gives(right)
    }));
}

/// The set of abundant students (piles ≥ 4) at one instant, in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceView {
    abundant_indices: Vec<usize>,
}

impl AbundanceView {
    pub(crate) fn of_counts(counts: &[u64]) -> Self {
        Self {
            abundant_indices: (0..counts.len())
                .filter(|&i| counts[i] >= ABUNDANCE_THRESHOLD)
                .collect(),
        }
    }

    /// Indices of abundant students, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.abundant_indices
    }

    /// `m`, the number of abundant students.
    pub fn m(&self) -> usize {
        self.abundant_indices.len()
    }

    /// Set containment test, used by the stabilization audit.
    pub fn is_subset_of(&self, other: &AbundanceView) -> bool {
        // Both sides are sorted.
        let mut it = other.abundant_indices.iter();
        self.abundant_indices
            .iter()
            .all(|i| it.any(|j| j == i))
    }
}
