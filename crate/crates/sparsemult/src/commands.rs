//! The four subcommands, each turning an input document into an output document.

use log::{debug, info};
use sparsemult_core::dual::{
    dz, planted_triangular_system, random_system, SparseSystem, DEFAULT_BOUND, DEFAULT_K_MAX,
};
use sparsemult_core::engine::{census, mult0_all_routes, Route};
use sparsemult_core::num::rat;
use sparsemult_core::support::{check_conditions, enumerate_strata, format_subset, ConditionReport};
use sparsemult_core::{Error as CoreError, PointSet, Rational, SupportFamily};

use crate::document::{
    rational_string, ConditionSection, InputDocument, Mult0Section, OracleCheck, OracleSection, Options,
    OutputDocument, StratumRow, Totals,
};
use crate::error::{exit, CliError};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: u32 = 3;
/// Fresh instances drawn after a non-generic one, per trial.
pub const MAX_RESAMPLES: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Mult0,
    Census,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Mult0 => "mult0",
            Command::Census => "census",
            Command::Verify => "verify",
        }
    }
}

/// Parses `text`, runs `command` and reports failures inside the document.
pub fn run(command: Command, text: &str, flags: &Options) -> OutputDocument {
    let input = match InputDocument::parse(text) {
        Ok(input) => input,
        Err(e) => return failed(OutputDocument::new(command.name(), None, flags.clone()), &e),
    };
    let result = match command {
        Command::Check => cmd_check(&input, flags),
        Command::Mult0 => cmd_mult0(&input, flags),
        Command::Census => cmd_census(&input, flags),
        Command::Verify => cmd_verify(&input, flags),
    };
    result.unwrap_or_else(|e| {
        let mut doc = OutputDocument::new(command.name(), Some(input.clone()), flags.merged(&input));
        if let Ok(a) = input.family() {
            doc.conditions = Some(conditions(&check_conditions(&a)));
        }
        failed(doc, &e)
    })
}

fn failed(mut doc: OutputDocument, e: &CliError) -> OutputDocument {
    doc.error = Some(e.to_string());
    doc.exit_status = e.exit_code();
    doc
}

fn conditions(r: &ConditionReport) -> ConditionSection {
    ConditionSection { h1: r.h1, h2: r.h2, h3: r.h3, failing_i: r.failing_i.as_deref().map(format_subset) }
}

fn start(name: &str, input: &InputDocument, options: Options) -> Result<(SupportFamily, ConditionReport, OutputDocument), CliError> {
    let a = input.family()?;
    let report = check_conditions(&a);
    let mut doc = OutputDocument::new(name, Some(input.clone()), options);
    doc.conditions = Some(conditions(&report));
    Ok((a, report, doc))
}

fn route_strings(routes: &std::collections::BTreeMap<Route, u64>) -> std::collections::BTreeMap<String, String> {
    routes.iter().map(|(r, v)| (r.name().to_string(), rational_string(*v))).collect()
}

fn require_h1_h2(r: &ConditionReport) -> Result<(), CliError> {
    use sparsemult_core::Condition;
    if !r.h1 {
        return Err(CliError::Condition(CoreError::ConditionFailed { condition: Condition::H1, witness: None }));
    }
    if !r.h2 {
        let witness = r.failing_i.as_deref().map(format_subset);
        return Err(CliError::Condition(CoreError::ConditionFailed { condition: Condition::H2, witness }));
    }
    Ok(())
}

/// Condition flags and the list of valid strata.
pub fn cmd_check(input: &InputDocument, _flags: &Options) -> Result<OutputDocument, CliError> {
    let (a, _, mut doc) = start("check", input, Options::default())?;
    doc.strata = Some(
        enumerate_strata(&a)
            .into_iter()
            .map(|d| StratumRow {
                i: format_subset(&d.i),
                j: format_subset(&d.j),
                count: None,
                multiplicity: None,
                m: None,
                routes: Default::default(),
            })
            .collect(),
    );
    Ok(doc)
}

/// Multiplicity of the origin by every applicable route.
pub fn cmd_mult0(input: &InputDocument, flags: &Options) -> Result<OutputDocument, CliError> {
    let options = Options { m: flags.m.or(input.m), ..Default::default() };
    let (a, report, mut doc) = start("mult0", input, options.clone())?;
    require_h1_h2(&report)?;
    let r = mult0_all_routes(&a, options.m)?;
    info!("mult0 = {} with M = {}", r.value, r.m);
    doc.mult0 = Some(Mult0Section { value: r.value, m: r.m, routes: route_strings(&r.routes), agree: true });
    Ok(doc)
}

/// Counts and multiplicities on every valid stratum.
pub fn cmd_census(input: &InputDocument, _flags: &Options) -> Result<OutputDocument, CliError> {
    let (a, report, mut doc) = start("census", input, Options::default())?;
    let c = census(&a, true)?;
    if !(c.torus_count <= c.sm && c.sm <= c.mv_a0) {
        return Err(CliError::Breach(format!(
            "expected MV <= SM <= MV(A^0), got {} / {} / {}",
            c.torus_count, c.sm, c.mv_a0
        )));
    }
    if report.h1 && report.h2 && c.total_with_multiplicity != c.sm {
        return Err(CliError::Breach(format!(
            "total with multiplicity {} differs from SM = {}",
            c.total_with_multiplicity, c.sm
        )));
    }
    doc.strata = Some(
        c.strata
            .iter()
            .map(|r| StratumRow {
                i: format_subset(&r.stratum.i),
                j: format_subset(&r.stratum.j),
                count: Some(r.count),
                multiplicity: Some(r.multiplicity),
                m: r.m,
                routes: route_strings(&r.routes),
            })
            .collect(),
    );
    doc.totals = Some(Totals {
        mv: c.torus_count,
        sm: c.sm,
        mv_a0: c.mv_a0,
        total_with_multiplicity: c.total_with_multiplicity,
    });
    Ok(doc)
}

/// A zero whose multiplicity the oracle should reproduce.
#[derive(Clone, Debug)]
pub enum Target {
    /// The origin of a random system on the family itself.
    Origin(SupportFamily),
    /// A planted zero in a coordinate stratum: `upper` are the torus supports and
    /// `lower` the projected family `B^I`.
    Planted { upper: Vec<PointSet>, lower: Vec<PointSet> },
}

impl Target {
    fn instance(&self, seed: u64, bound: u64) -> Result<Option<(SparseSystem, Vec<Rational>)>, CoreError> {
        match self {
            Target::Origin(a) => Ok(Some((random_system(a, seed, bound)?, vec![rat(0); a.n()]))),
            Target::Planted { upper, lower } => match planted_triangular_system(upper, lower, seed, bound) {
                Ok(p) => Ok(Some((p.system, p.zeta))),
                Err(CoreError::SingularLinearPart) => Ok(None),
                Err(e) => Err(e),
            },
        }
    }
}

/// Seed of attempt `attempt` within `trial`; distinct for every pair in one run.
pub fn instance_seed(seed: u64, trial: u32, attempt: u32) -> u64 {
    seed.wrapping_add(u64::from(trial) * u64::from(MAX_RESAMPLES + 1) + u64::from(attempt))
}

/// Runs the oracle on fresh instances until it reproduces `expected`.
///
/// A generic instance has the smallest multiplicity, so a larger observation (or no
/// stabilization below the cap) is blamed on the coefficients and redrawn. A smaller
/// observation can only mean the engine is wrong and is reported at once.
pub fn oracle_check(
    target: &Target,
    label: &str,
    expected: u64,
    seed: u64,
    trial: u32,
    bound: u64,
    kmax: usize,
) -> Result<OracleCheck, CliError> {
    let cap = kmax.max(expected as usize + 1);
    let mut check = OracleCheck {
        stratum: label.into(),
        trial,
        seed,
        resamples: 0,
        expected,
        observed: None,
        k0: None,
        verdict: String::new(),
    };
    for attempt in 0..=MAX_RESAMPLES {
        let s = instance_seed(seed, trial, attempt);
        check.seed = s;
        check.resamples = attempt;
        let Some((f, zeta)) = target.instance(s, bound)? else {
            check.verdict = "mismatch: singular planted part".into();
            continue;
        };
        match dz(&f, &zeta, cap) {
            Ok(r) => {
                let got = r.multiplicity as u64;
                check.observed = Some(got);
                check.k0 = Some(r.k0);
                debug!("{label} trial {trial} seed {s}: {got} (k0 = {})", r.k0);
                if got == expected {
                    check.verdict = format!("match: {got}");
                    return Ok(check);
                }
                check.verdict = format!("mismatch: expected {expected}, got {got}");
                if got < expected {
                    return Ok(check);
                }
            }
            Err(CoreError::NoStabilization { k_max }) => {
                check.observed = None;
                check.k0 = None;
                check.verdict = format!("mismatch: expected {expected}, no stabilization by k = {k_max}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(check)
}

/// The zeros `verify` checks: the origin when it is isolated, and every valid stratum
/// strictly between the torus and the origin.
pub fn targets(a: &SupportFamily, report: &ConditionReport) -> Result<Vec<(String, u64, Target)>, CliError> {
    let n = a.n();
    let mut out = Vec::new();
    if report.h1 && report.h2 {
        let expected = mult0_all_routes(a, None)?.value;
        let all: Vec<usize> = (0..n).collect();
        out.push((format_subset(&all), expected, Target::Origin(a.clone())));
    }
    let c = census(a, true)?;
    for r in c.strata {
        let d = r.stratum;
        if d.i.is_empty() || d.i.len() == n {
            continue;
        }
        out.push((format_subset(&d.i), r.multiplicity, Target::Planted { upper: d.torus_supports, lower: d.projected }));
    }
    Ok(out)
}

/// Engine multiplicities against the dual-space oracle on seeded instances.
pub fn cmd_verify(input: &InputDocument, flags: &Options) -> Result<OutputDocument, CliError> {
    let merged = flags.merged(input);
    let seed = merged.seed.unwrap_or(DEFAULT_SEED);
    let bound = merged.bound.unwrap_or(DEFAULT_BOUND);
    let trials = merged.trials.unwrap_or(DEFAULT_TRIALS);
    let kmax = merged.kmax.unwrap_or(DEFAULT_K_MAX);
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let options = Options { m: None, seed: Some(seed), bound: Some(bound), trials: Some(trials), kmax: Some(kmax) };
    let (a, report, doc) = start("verify", input, options)?;
    let targets = targets(&a, &report)?;
    if targets.is_empty() {
        require_h1_h2(&report)?;
    }
    verify_targets(doc, &targets, seed, bound, trials, kmax)
}

/// Runs `trials` oracle checks per target and records them in `doc`; any final
/// mismatch sets the verification exit status.
pub fn verify_targets(
    mut doc: OutputDocument,
    targets: &[(String, u64, Target)],
    seed: u64,
    bound: u64,
    trials: u32,
    kmax: usize,
) -> Result<OutputDocument, CliError> {
    let mut checks = Vec::new();
    for (label, expected, target) in targets {
        for trial in 0..trials {
            let c = oracle_check(target, label, *expected, seed, trial, bound, kmax)?;
            info!("{label} trial {trial}: {}", c.verdict);
            checks.push(c);
        }
    }
    let matches = checks.iter().filter(|c| c.is_match()).count();
    let mismatches = checks.len() - matches;
    if mismatches > 0 {
        doc.exit_status = exit::MISMATCH;
        doc.error = Some(format!("{mismatches} of {} oracle checks failed", checks.len()));
    }
    doc.oracle = Some(OracleSection { seed, bound, kmax, trials, checks, matches, mismatches });
    Ok(doc)
}
