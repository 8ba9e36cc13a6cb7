//! Command implementations. All numeric parameters are validated before any
//! computation starts; records stream out per family, so output truncates at
//! the first error.

use std::env;
use std::thread;

use candy_core::dynamics::{MAX_TOTAL_CANDY, MIN_STUDENTS};
use candy_core::trajectory::DEFAULT_MAX_ROUNDS;
use candy_core::{
    analyze, composition_count, sweep, tightness_scan, trace, verify_endgame_shapes,
    verify_subcritical, verify_theorem, Configuration, Outcome, SweepError, SweepOptions,
};
use serde::Serialize;

use crate::args::{CSpec, CTerm, Claim, Cli, Command, NRange};
use crate::error::{CliError, EXIT_REFUTED};
use crate::output::Reporter;

/// Families with more states than this are refused without --force.
const FEASIBILITY_LIMIT: u64 = 1 << 31;

const SIMULATE_COLUMNS: &[&str] = &[
    "n",
    "c",
    "counts",
    "transient",
    "period",
    "outcome",
    "attractor",
    "abundant_fix_round",
    "rounds_computed",
    "trace",
];
const SWEEP_COLUMNS: &[&str] = &[
    "n",
    "c",
    "canonical_mode",
    "total_enumerated",
    "counts_by_outcome",
    "max_transient",
    "max_transient_witness",
    "period_histogram",
    "witnesses",
];
const VERIFY_COLUMNS: &[&str] = &["claim", "n", "c", "passed", "counterexample"];
const SCAN_COLUMNS: &[&str] = &["n", "c", "all_stabilize", "witness"];

#[derive(Serialize)]
struct SimulateDoc {
    n: usize,
    c: u64,
    counts: Configuration,
    transient: usize,
    period: usize,
    outcome: Outcome,
    attractor: Configuration,
    abundant_fix_round: usize,
    rounds_computed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<Configuration>>,
}

#[derive(Serialize)]
struct ScanDoc {
    n: usize,
    c: u64,
    all_stabilize: bool,
    witness: Option<Vec<u64>>,
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let meta_command = cli
        .meta
        .then(|| env::args().collect::<Vec<_>>().join(" "));
    let mut reporter = Reporter::new(cli.output.as_deref(), cli.format, meta_command)?;
    let exit = match cli.command {
        Command::Simulate {
            counts,
            max_rounds,
            trace,
        } => cmd_simulate(&mut reporter, counts, max_rounds, trace)?,
        Command::Sweep {
            n,
            c,
            canonical,
            max_rounds,
            parallelism,
            witness_limit,
            force,
        } => cmd_sweep(
            &mut reporter,
            n,
            c,
            canonical,
            max_rounds,
            parallelism,
            witness_limit,
            force,
        )?,
        Command::Verify {
            claim,
            n,
            c,
            max_rounds,
            parallelism,
            force,
        } => cmd_verify(&mut reporter, claim, n, c, max_rounds, parallelism, force)?,
        Command::Scan {
            n,
            c,
            max_rounds,
            parallelism,
            force,
        } => cmd_scan(&mut reporter, n, c, max_rounds, parallelism, force)?,
    };
    reporter.finish()?;
    Ok(exit)
}

/// Flag wins over the CANDY_MAX_ROUNDS environment variable, which wins over
/// the built-in default.
fn resolve_max_rounds(flag: Option<usize>) -> Result<usize, CliError> {
    let value = match flag {
        Some(v) => v,
        None => match env::var("CANDY_MAX_ROUNDS") {
            Ok(raw) => raw.trim().parse().map_err(|_| {
                CliError::Invalid(format!(
                    "CANDY_MAX_ROUNDS must be a positive integer, got {raw:?}"
                ))
            })?,
            Err(_) => DEFAULT_MAX_ROUNDS,
        },
    };
    if value == 0 {
        return Err(CliError::Invalid("round cap must be at least 1".into()));
    }
    Ok(value)
}

fn resolve_parallelism(flag: Option<usize>) -> Result<usize, CliError> {
    match flag {
        Some(0) => Err(CliError::Invalid("parallelism must be at least 1".into())),
        Some(p) => Ok(p),
        None => Ok(thread::available_parallelism().map(|p| p.get()).unwrap_or(1)),
    }
}

fn validate_family(n: usize, c: u64) -> Result<(), CliError> {
    if n < MIN_STUDENTS {
        return Err(CliError::Invalid(format!(
            "a game needs more than 2 students, got n={n}"
        )));
    }
    if c == 0 {
        return Err(CliError::Invalid(format!(
            "a game needs at least one candy, got c=0 for n={n}"
        )));
    }
    if c > MAX_TOTAL_CANDY {
        return Err(CliError::Invalid(format!(
            "total candy {c} exceeds the supported maximum of 2^32"
        )));
    }
    Ok(())
}

fn check_feasible(n: usize, c: u64, force: bool) -> Result<(), CliError> {
    if force {
        return Ok(());
    }
    let too_big = match composition_count(n, c) {
        Ok(count) => count > FEASIBILITY_LIMIT,
        Err(SweepError::CountOverflow { .. }) => true,
        Err(other) => return Err(other.into()),
    };
    if too_big {
        return Err(CliError::Invalid(format!(
            "family (n={n}, c={c}) has more than 2^31 states; pass --force to sweep it anyway"
        )));
    }
    Ok(())
}

/// Expands and validates every (n, c) pair up front.
fn resolve_pairs(n: NRange, c: CSpec, force: bool) -> Result<Vec<(usize, u64)>, CliError> {
    let mut pairs = Vec::new();
    for n_value in n.iter() {
        let (lo, hi) = c.eval(n_value).map_err(CliError::Invalid)?;
        for c_value in lo..=hi {
            validate_family(n_value, c_value)?;
            check_feasible(n_value, c_value, force)?;
            pairs.push((n_value, c_value));
        }
    }
    Ok(pairs)
}

fn cmd_simulate(
    reporter: &mut Reporter,
    counts: Vec<u64>,
    max_rounds: Option<usize>,
    with_trace: bool,
) -> Result<u8, CliError> {
    let max_rounds = resolve_max_rounds(max_rounds)?;
    let config = Configuration::new(counts).map_err(|e| CliError::Invalid(e.to_string()))?;
    let summary = analyze(&config, max_rounds)?;
    let trace_states = with_trace.then(|| trace(&config, summary.rounds_computed));
    let doc = SimulateDoc {
        n: config.student_count(),
        c: config.total(),
        counts: summary.initial,
        transient: summary.transient,
        period: summary.period,
        outcome: summary.outcome,
        attractor: summary.attractor_canonical,
        abundant_fix_round: summary.abundant_fix_round,
        rounds_computed: summary.rounds_computed,
        trace: trace_states,
    };
    reporter.emit(&doc, SIMULATE_COLUMNS)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    reporter: &mut Reporter,
    n: NRange,
    c: CSpec,
    canonical: bool,
    max_rounds: Option<usize>,
    parallelism: Option<usize>,
    witness_limit: usize,
    force: bool,
) -> Result<u8, CliError> {
    let options = SweepOptions {
        canonical_only: canonical,
        max_rounds: resolve_max_rounds(max_rounds)?,
        parallelism: resolve_parallelism(parallelism)?,
        witness_limit,
    };
    let pairs = resolve_pairs(n, c, force)?;
    for (n_value, c_value) in pairs {
        let report = sweep(n_value, c_value, options)?;
        reporter.emit(&report, SWEEP_COLUMNS)?;
    }
    Ok(0)
}

fn cmd_verify(
    reporter: &mut Reporter,
    claim: Claim,
    n: NRange,
    c: Option<CSpec>,
    max_rounds: Option<usize>,
    parallelism: Option<usize>,
    force: bool,
) -> Result<u8, CliError> {
    let options = SweepOptions {
        canonical_only: false,
        max_rounds: resolve_max_rounds(max_rounds)?,
        parallelism: resolve_parallelism(parallelism)?,
        ..SweepOptions::default()
    };
    let mut all_passed = true;

    match claim {
        Claim::Theorem => {
            let spec = c.unwrap_or(CSpec::range(CTerm::relative(3, -2), CTerm::relative(3, 4)));
            let pairs = resolve_pairs(n, spec, force)?;
            for &(n_value, c_value) in &pairs {
                let bound = 3 * n_value as u64 - 2;
                if c_value < bound {
                    return Err(CliError::Invalid(format!(
                        "the theorem claim covers c ≥ 3n−2 = {bound} for n={n_value}, \
                         got c={c_value}"
                    )));
                }
            }
            for (n_value, c_value) in pairs {
                let verdict = verify_theorem(n_value, c_value, options)?;
                all_passed &= verdict.passed;
                reporter.emit(&verdict, VERIFY_COLUMNS)?;
            }
        }
        Claim::Subcritical => {
            let spec = c.unwrap_or(CSpec::range(CTerm::absolute(1), CTerm::relative(1, -1)));
            let pairs = resolve_pairs(n, spec, force)?;
            for &(n_value, c_value) in &pairs {
                if c_value >= n_value as u64 {
                    return Err(CliError::Invalid(format!(
                        "the subcritical claim covers c < n = {n_value}, got c={c_value}"
                    )));
                }
            }
            for (n_value, c_value) in pairs {
                let verdict = verify_subcritical(n_value, c_value, options)?;
                all_passed &= verdict.passed;
                reporter.emit(&verdict, VERIFY_COLUMNS)?;
            }
        }
        Claim::Endgame => {
            if c.is_some() {
                return Err(CliError::Invalid(
                    "the endgame claim derives its totals (3n-2..3n) from n; drop --c".into(),
                ));
            }
            for n_value in n.iter() {
                let three_n = 3 * n_value as u64;
                for c_value in three_n - 2..=three_n {
                    validate_family(n_value, c_value)?;
                    check_feasible(n_value, c_value, force)?;
                }
            }
            for n_value in n.iter() {
                let verdict = verify_endgame_shapes(n_value, options)?;
                all_passed &= verdict.passed;
                reporter.emit(&verdict, VERIFY_COLUMNS)?;
            }
        }
    }
    Ok(if all_passed { 0 } else { EXIT_REFUTED })
}

fn cmd_scan(
    reporter: &mut Reporter,
    n: NRange,
    c: CSpec,
    max_rounds: Option<usize>,
    parallelism: Option<usize>,
    force: bool,
) -> Result<u8, CliError> {
    let options = SweepOptions {
        max_rounds: resolve_max_rounds(max_rounds)?,
        parallelism: resolve_parallelism(parallelism)?,
        ..SweepOptions::default()
    };
    let mut bands = Vec::new();
    for n_value in n.iter() {
        let (lo, hi) = c.eval(n_value).map_err(CliError::Invalid)?;
        for c_value in lo..=hi {
            validate_family(n_value, c_value)?;
            check_feasible(n_value, c_value, force)?;
        }
        bands.push((n_value, lo, hi));
    }
    for (n_value, lo, hi) in bands {
        let records = tightness_scan(n_value, lo, hi, options)?;
        for (c_value, record) in records {
            let doc = ScanDoc {
                n: n_value,
                c: c_value,
                all_stabilize: record.all_stabilize,
                witness: record.witness,
            };
            reporter.emit(&doc, SCAN_COLUMNS)?;
        }
    }
    Ok(0)
}
