//! Command-line surface and the range/expression syntax for sweep families.
//!
//! `--n` takes a single student count or an inclusive range (`3`, `3..6`).
//! `--c` additionally understands offsets relative to `n`, so the claim
//! bands can be written directly: `3n-2..3n+4`, `n-1`, `1..9`.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "candy",
    version,
    about = "Simulate and exhaustively verify candy-passing games on a cycle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format: line-delimited records or tabular export.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Jsonl)]
    pub format: OutputFormat,

    /// Write reports to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Add provenance fields (command line, timestamp) to the header line.
    #[arg(long, global = true)]
    pub meta: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one game to its attractor and report transient, period, outcome.
    Simulate {
        /// Comma-separated candy counts, one per student.
        #[arg(long, required = true, value_delimiter = ',', value_name = "COUNTS")]
        counts: Vec<u64>,

        /// Round cap; overrides CANDY_MAX_ROUNDS (default 1000000).
        #[arg(long, value_name = "ROUNDS")]
        max_rounds: Option<usize>,

        /// Also emit the state sequence up to the attractor entry plus one
        /// period.
        #[arg(long)]
        trace: bool,
    },

    /// Analyze every distribution of c candies among n students.
    Sweep {
        /// Students: a value or inclusive range, e.g. 3 or 3..6.
        #[arg(long, value_name = "RANGE")]
        n: NRange,

        /// Totals: value or range, absolute or relative to n (3n-2..3n+4).
        #[arg(long, value_name = "SPEC")]
        c: CSpec,

        /// Analyze one representative per rotation/reflection class.
        #[arg(long)]
        canonical: bool,

        #[arg(long, value_name = "ROUNDS")]
        max_rounds: Option<usize>,

        /// Worker threads; the report does not depend on this.
        #[arg(long, value_name = "THREADS")]
        parallelism: Option<usize>,

        /// Cap on the periodic witness list per report.
        #[arg(long, default_value_t = 16, value_name = "COUNT")]
        witness_limit: usize,

        /// Sweep even when the family exceeds the feasibility threshold.
        #[arg(long)]
        force: bool,
    },

    /// Check a stabilization claim over families of games.
    Verify {
        /// Which claim to check.
        #[arg(value_enum)]
        claim: Claim,

        /// Students: a value or inclusive range, e.g. 3 or 3..7.
        #[arg(long, value_name = "RANGE")]
        n: NRange,

        /// Totals to check. Defaults: theorem 3n-2..3n+4, subcritical
        /// 1..n-1. The endgame claim derives its totals from n.
        #[arg(long, value_name = "SPEC")]
        c: Option<CSpec>,

        /// Round cap; overrides CANDY_MAX_ROUNDS (default 1000000).
        #[arg(long, value_name = "ROUNDS")]
        max_rounds: Option<usize>,

        /// Worker threads; verdicts do not depend on this.
        #[arg(long, value_name = "THREADS")]
        parallelism: Option<usize>,

        /// Check even families beyond the feasibility threshold.
        #[arg(long)]
        force: bool,
    },

    /// Map which totals stabilize for each n (explores the open band).
    Scan {
        /// Students: a value or inclusive range, e.g. 3 or 3..6.
        #[arg(long, value_name = "RANGE")]
        n: NRange,

        /// Totals to scan: value or range, absolute or relative to n.
        #[arg(long, value_name = "SPEC")]
        c: CSpec,

        /// Round cap; overrides CANDY_MAX_ROUNDS (default 1000000).
        #[arg(long, value_name = "ROUNDS")]
        max_rounds: Option<usize>,

        /// Worker threads; records do not depend on this.
        #[arg(long, value_name = "THREADS")]
        parallelism: Option<usize>,

        /// Scan even families beyond the feasibility threshold.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    /// Every game with c ≥ 3n−2 stabilizes.
    Theorem,
    /// Every game with c < n freezes.
    Subcritical,
    /// Terminal pile shapes at c = 3n, 3n−1, 3n−2.
    Endgame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

/// Inclusive range of student counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |part: &str| -> Result<usize, String> {
            part.trim()
                .parse()
                .map_err(|_| format!("expected an integer, got {part:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange { lo, hi })
    }
}

/// One total expressed absolutely or relative to n: `c = coeff·n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CTerm {
    pub n_coeff: u64,
    pub offset: i64,
}

impl CTerm {
    pub const fn absolute(value: i64) -> Self {
        Self {
            n_coeff: 0,
            offset: value,
        }
    }

    pub const fn relative(n_coeff: u64, offset: i64) -> Self {
        Self { n_coeff, offset }
    }

    pub fn eval(&self, n: usize) -> Result<u64, String> {
        let value = (self.n_coeff as i128) * (n as i128) + self.offset as i128;
        u64::try_from(value).map_err(|_| format!("total {self} is negative for n={n}"))
    }
}

impl std::fmt::Display for CTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.n_coeff, self.offset) {
            (0, d) => write!(f, "{d}"),
            (1, 0) => write!(f, "n"),
            (k, 0) => write!(f, "{k}n"),
            (1, d) if d > 0 => write!(f, "n+{d}"),
            (1, d) => write!(f, "n{d}"),
            (k, d) if d > 0 => write!(f, "{k}n+{d}"),
            (k, d) => write!(f, "{k}n{d}"),
        }
    }
}

impl FromStr for CTerm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("cannot parse total {s:?}; expected forms like 9, n, 3n-2, n+4");
        if s.is_empty() {
            return Err(bad());
        }
        match s.find('n') {
            None => {
                let value: i64 = s.parse().map_err(|_| bad())?;
                Ok(CTerm::absolute(value))
            }
            Some(pos) => {
                let coeff_part = &s[..pos];
                let offset_part = &s[pos + 1..];
                let n_coeff: u64 = if coeff_part.is_empty() {
                    1
                } else {
                    coeff_part.parse().map_err(|_| bad())?
                };
                let offset: i64 = if offset_part.is_empty() {
                    0
                } else if offset_part.starts_with('+') || offset_part.starts_with('-') {
                    offset_part.parse().map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                Ok(CTerm::relative(n_coeff, offset))
            }
        }
    }
}

/// Inclusive range of totals, evaluated per n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CSpec {
    pub lo: CTerm,
    pub hi: CTerm,
}

impl CSpec {
    pub const fn range(lo: CTerm, hi: CTerm) -> Self {
        Self { lo, hi }
    }

    pub fn eval(&self, n: usize) -> Result<(u64, u64), String> {
        let lo = self.lo.eval(n)?;
        let hi = self.hi.eval(n)?;
        if lo > hi {
            return Err(format!(
                "empty total range for n={n}: {} evaluates past {}",
                self.lo, self.hi
            ));
        }
        Ok((lo, hi))
    }
}

impl FromStr for CSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once("..") {
            Some((lo, hi)) => Ok(CSpec {
                lo: lo.parse()?,
                hi: hi.parse()?,
            }),
            None => {
                let term: CTerm = s.parse()?;
                Ok(CSpec { lo: term, hi: term })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range_forms() {
        assert_eq!("3".parse::<NRange>().unwrap(), NRange { lo: 3, hi: 3 });
        assert_eq!("3..6".parse::<NRange>().unwrap(), NRange { lo: 3, hi: 6 });
        assert!("6..3".parse::<NRange>().is_err());
        assert!("three".parse::<NRange>().is_err());
    }

    #[test]
    fn c_term_forms() {
        assert_eq!("9".parse::<CTerm>().unwrap(), CTerm::absolute(9));
        assert_eq!("n".parse::<CTerm>().unwrap(), CTerm::relative(1, 0));
        assert_eq!("3n".parse::<CTerm>().unwrap(), CTerm::relative(3, 0));
        assert_eq!("3n-2".parse::<CTerm>().unwrap(), CTerm::relative(3, -2));
        assert_eq!("n+4".parse::<CTerm>().unwrap(), CTerm::relative(1, 4));
        assert!("3m".parse::<CTerm>().is_err());
        assert!("3n2".parse::<CTerm>().is_err());
        assert!("".parse::<CTerm>().is_err());
    }

    #[test]
    fn c_term_evaluation() {
        assert_eq!(CTerm::relative(3, -2).eval(3).unwrap(), 7);
        assert_eq!(CTerm::relative(3, 4).eval(7).unwrap(), 25);
        assert_eq!(CTerm::absolute(9).eval(5).unwrap(), 9);
        assert!(CTerm::relative(1, -5).eval(3).is_err());
    }

    #[test]
    fn c_spec_ranges() {
        let spec: CSpec = "3n-2..3n+4".parse().unwrap();
        assert_eq!(spec.eval(3).unwrap(), (7, 13));
        assert_eq!(spec.eval(7).unwrap(), (19, 25));

        let single: CSpec = "9".parse().unwrap();
        assert_eq!(single.eval(4).unwrap(), (9, 9));

        let backwards: CSpec = "3n..9".parse().unwrap();
        assert!(backwards.eval(4).is_err());
    }

    #[test]
    fn cli_parses_the_documented_invocations() {
        use clap::Parser;
        for argv in [
            vec!["candy", "simulate", "--counts", "3,1,3,3"],
            vec!["candy", "simulate", "--counts", "3,3,3", "--trace"],
            vec!["candy", "sweep", "--n", "3", "--c", "9"],
            vec!["candy", "sweep", "--n", "3..6", "--c", "3n-2..3n+4", "--canonical"],
            vec!["candy", "verify", "theorem", "--n", "3", "--c", "7"],
            vec!["candy", "verify", "subcritical", "--n", "5", "--c", "4"],
            vec!["candy", "verify", "endgame", "--n", "3..5"],
            vec!["candy", "scan", "--n", "3", "--c", "1..9"],
            vec!["candy", "sweep", "--n", "3", "--c", "9", "--format", "csv"],
        ] {
            Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
        }
    }
}
