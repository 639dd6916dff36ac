//! Subcommand implementations. Each returns the rows to print and an exit status.

use std::ops::RangeInclusive;
use std::time::Instant;

use circulant::arithmetic::{
    decompose, parse_integer_list, recursion_violation, sequence_a, Decomposition,
};
use circulant::exact::tau_oracle;
use circulant::mahler::{
    associated_laurent, asymptotic_ratios, growth_rate, mahler_quadrature, mahler_root_product,
    MahlerEstimate,
};
use circulant::{tau_formula, CirculantSpec, Error, Family, OracleConfig, StepFamily, TreeCount};
use clap::ValueEnum;
use dashu_int::IBig;

use crate::record::OutputRecord;

pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const DISCONNECTED: u8 = 3;
    pub const CERTIFICATION: u8 = 4;
    pub const IO: u8 = 5;
}

/// A failure that ends the command before (or instead of) normal output.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::new(code_for(&e), e.to_string())
    }
}

pub fn code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::OrderTooSmall(_)
        | Error::ZeroStep { .. }
        | Error::DuplicateStep(_)
        | Error::EmptySteps
        | Error::InvalidArgument(_)
        | Error::CeilingExceeded { .. } => exit::PARSE,
        Error::Disconnected { .. } => exit::DISCONNECTED,
        Error::Certification { .. } | Error::NoConvergence { .. } | Error::Quadrature { .. } => {
            exit::CERTIFICATION
        }
        Error::InexactDivision | Error::Decomposition { .. } => exit::VERIFICATION,
    }
}

/// Rows plus exit status; `messages` go to stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub code: u8,
    pub messages: Vec<String>,
}

impl Outcome {
    fn rows(records: Vec<OutputRecord>) -> Self {
        Outcome {
            records,
            ..Default::default()
        }
    }

    /// Keeps the first nonzero status.
    pub fn fail(&mut self, code: u8, message: impl Into<String>) {
        if self.code == exit::OK {
            self.code = code;
        }
        self.messages.push(message.into());
    }
}

pub type CmdResult = Result<Outcome, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauMethod {
    Formula,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MahlerMethod {
    RootProduct,
    Quadrature,
    Both,
}

/// Measures wall time of `f` in milliseconds when `enabled`.
pub fn timed<T>(enabled: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let value = f();
    let ms = enabled.then(|| start.elapsed().as_secs_f64() * 1e3);
    (value, ms)
}

pub fn parse_spec(literal: &str) -> Result<CirculantSpec, CliError> {
    literal
        .parse()
        .map_err(|e: Error| CliError::new(exit::PARSE, e.to_string()))
}

pub fn parse_family(steps: &str, family: Family) -> Result<StepFamily, CliError> {
    StepFamily::parse(steps, family).map_err(|e| CliError::new(exit::PARSE, e.to_string()))
}

/// `a..b` (inclusive) or a single order.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, CliError> {
    let bad = || {
        CliError::new(
            exit::PARSE,
            format!("invalid range `{text}` (expected a..b)"),
        )
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (text.trim(), text.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// `C*(1,2)` or `C*(1,2;d)`.
pub fn family_label(family: &StepFamily) -> String {
    match family.family() {
        Family::Even => format!("C*({})", family.list()),
        Family::Diagonal => format!("C*({};d)", family.list()),
    }
}

fn spec_record(spec: &CirculantSpec) -> OutputRecord {
    OutputRecord {
        spec: Some(spec.to_string()),
        n: Some(spec.order()),
        family: Some(spec.family().to_string()),
        ..Default::default()
    }
}

fn tau_by(
    spec: &CirculantSpec,
    method: TauMethod,
    cfg: &OracleConfig,
) -> circulant::Result<TreeCount> {
    match method {
        TauMethod::Formula | TauMethod::Both => tau_formula(spec),
        TauMethod::Oracle => tau_oracle(spec, cfg),
    }
}

pub fn cmd_tau(literal: &str, method: TauMethod, cfg: &OracleConfig, timings: bool) -> CmdResult {
    let spec = parse_spec(literal)?;
    let mut record = spec_record(&spec);
    record.method = Some(format!("{method:?}").to_lowercase());
    let mut outcome = Outcome::default();
    if !spec.is_connected() {
        record.tau = Some("0".into());
        record.detail = Some(format!("{} components", spec.component_count()));
        outcome.records.push(record);
        outcome.fail(
            exit::DISCONNECTED,
            format!("{spec} is disconnected; tau = 0"),
        );
        return Ok(outcome);
    }
    let (result, ms) = timed(
        timings,
        || -> Result<(TreeCount, Option<bool>), CliError> {
            let tau = tau_by(&spec, method, cfg)?;
            if method == TauMethod::Both {
                let oracle = tau_oracle(&spec, cfg)?;
                return Ok((tau.clone(), Some(tau == oracle)));
            }
            Ok((tau, None))
        },
    );
    let (tau, agree) = result?;
    record.tau = Some(tau.to_string());
    record.timings_ms = ms;
    if let Some(agree) = agree {
        record.status = Some(if agree { "pass" } else { "fail" }.into());
        if !agree {
            outcome.fail(
                exit::VERIFICATION,
                format!("{spec}: formula and oracle disagree"),
            );
        }
    }
    outcome.records.push(record);
    Ok(outcome)
}

fn decomposition_record(label: String, d: &Decomposition) -> OutputRecord {
    OutputRecord {
        spec: Some(label),
        n: Some(d.n),
        family: Some(d.family.to_string()),
        tau: Some(d.tau.to_string()),
        coefficient: Some(d.coefficient),
        a: Some(d.a.to_string()),
        ..Default::default()
    }
}

pub fn cmd_decompose(literals: &[String], method: TauMethod, cfg: &OracleConfig) -> CmdResult {
    let mut outcome = Outcome::default();
    for literal in literals {
        let spec = parse_spec(literal)?;
        if !spec.is_connected() {
            let mut record = spec_record(&spec);
            record.tau = Some("0".into());
            outcome.records.push(record);
            outcome.fail(
                exit::DISCONNECTED,
                format!("{spec} is disconnected; tau = 0"),
            );
            continue;
        }
        let tau = tau_by(&spec, method, cfg)?;
        match decompose(&spec, &tau) {
            Ok(d) => outcome
                .records
                .push(decomposition_record(spec.to_string(), &d)),
            Err(e) => {
                let mut record = spec_record(&spec);
                record.tau = Some(tau.to_string());
                record.status = Some("fail".into());
                record.detail = Some(e.to_string());
                outcome.records.push(record);
                outcome.fail(code_for(&e), e.to_string());
            }
        }
    }
    Ok(outcome)
}

fn mahler_record(family: &StepFamily, m: &MahlerEstimate) -> OutputRecord {
    OutputRecord {
        spec: Some(family_label(family)),
        family: Some(family.family().to_string()),
        method: Some(m.method.to_string()),
        mahler: Some(m.value),
        mahler_error: Some(m.error_bound),
        small_measure: Some(m.small_measure),
        ..Default::default()
    }
}

/// Agreement tolerance between the two Mahler methods beyond their bounds.
const METHOD_SLACK: f64 = 1e-8;

pub fn cmd_mahler(family: &StepFamily, method: MahlerMethod) -> CmdResult {
    let spectrum = associated_laurent(family.steps(), family.family())?;
    let mut outcome = Outcome::default();
    let root = matches!(method, MahlerMethod::RootProduct | MahlerMethod::Both)
        .then(|| mahler_root_product(&spectrum));
    let quad = match method {
        MahlerMethod::Quadrature | MahlerMethod::Both => Some(mahler_quadrature(&spectrum)?),
        MahlerMethod::RootProduct => None,
    };
    for m in root.iter().chain(quad.iter()) {
        outcome.records.push(mahler_record(family, m));
    }
    if let (Some(a), Some(b)) = (root, quad) {
        let gap = (a.value - b.value).abs();
        if gap > a.error_bound + b.error_bound + METHOD_SLACK {
            outcome.fail(
                exit::VERIFICATION,
                format!(
                    "root product {} and quadrature {} differ by {gap:e}",
                    a.value, b.value
                ),
            );
        }
    }
    Ok(outcome)
}

pub fn cmd_asymptote(family: &StepFamily, range: RangeInclusive<u64>) -> CmdResult {
    let rate = growth_rate(family)?;
    let points = asymptotic_ratios(family, range)?;
    Ok(Outcome::rows(
        points
            .into_iter()
            .map(|p| OutputRecord {
                spec: Some(family.label_at(p.n)),
                n: Some(p.n),
                family: Some(family.family().to_string()),
                tau: Some(p.tau.to_string()),
                mahler: Some(rate.value),
                ratio: Some(p.ratio),
                ..Default::default()
            })
            .collect(),
    ))
}

pub fn cmd_sequence(
    family: &StepFamily,
    range: RangeInclusive<u64>,
    recursion: Option<&str>,
    seeds: Option<&str>,
) -> CmdResult {
    let start = *range.start();
    let rows = sequence_a(family, range)?;
    let mut outcome = Outcome::rows(
        rows.iter()
            .map(|d| decomposition_record(family.label_at(d.n), d))
            .collect(),
    );
    let Some(recursion) = recursion else {
        return Ok(outcome);
    };
    let coefficients =
        parse_integer_list(recursion).map_err(|e| CliError::new(exit::PARSE, e.to_string()))?;
    let order = coefficients.len() as u64;
    let mut terms: Vec<IBig> = match seeds {
        Some(text) => parse_integer_list(text)
            .map_err(|e| CliError::new(exit::PARSE, e.to_string()))?
            .into_iter()
            .map(IBig::from)
            .collect(),
        None => default_seeds(family, start, order)?,
    };
    if start < terms.len() as u64 {
        return Err(CliError::new(
            exit::PARSE,
            "more seeds than indices before the range",
        ));
    }
    let first_index = start - terms.len() as u64;
    terms.extend(rows.iter().map(|d| IBig::from(d.a.clone())));
    let label = family_label(family);
    match recursion_violation(first_index, &terms, &coefficients) {
        None if (terms.len() as u64) > order => outcome.messages.push(format!(
            "recursion {recursion} holds for {label} on n = {start}..{}",
            first_index + terms.len() as u64 - 1
        )),
        None => outcome.fail(
            exit::VERIFICATION,
            "not enough terms to check the recursion",
        ),
        Some(n) => outcome.fail(
            exit::VERIFICATION,
            format!("recursion {recursion} fails for {label} at n = {n}"),
        ),
    }
    Ok(outcome)
}

/// `a(n)` for the `order` indices before `start`, with `a(0) = 0`.
fn default_seeds(family: &StepFamily, start: u64, order: u64) -> Result<Vec<IBig>, CliError> {
    if start < order {
        return Err(CliError::new(
            exit::PARSE,
            format!("the range must start at n ≥ {order} or --seeds must be given"),
        ));
    }
    let from = start - order;
    let mut seeds = Vec::new();
    if from == 0 {
        seeds.push(IBig::ZERO);
    }
    let lo = from.max(1);
    if lo < start {
        seeds.extend(
            sequence_a(family, lo..=start - 1)?
                .into_iter()
                .map(|d| IBig::from(d.a)),
        );
    }
    Ok(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..20").unwrap(), 4..=20);
        assert_eq!(parse_range("4..=20").unwrap(), 4..=20);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            code_for(&Error::Disconnected { components: 2 }),
            exit::DISCONNECTED
        );
        assert_eq!(code_for(&Error::EmptySteps), exit::PARSE);
        assert_eq!(
            code_for(&Error::NoConvergence { bits: 64 }),
            exit::CERTIFICATION
        );
    }

    #[test]
    fn disconnected_tau_reports_zero() {
        let out = cmd_tau("C6(2)", TauMethod::Formula, &OracleConfig::default(), false).unwrap();
        assert_eq!(out.code, exit::DISCONNECTED);
        assert_eq!(out.records[0].tau.as_deref(), Some("0"));
    }

    #[test]
    fn seeds_start_at_zero() {
        let fam = StepFamily::new(&[2, 3], Family::Even).unwrap();
        let seeds = default_seeds(&fam, 4, 4).unwrap();
        assert_eq!(seeds, [0, 1, 1, 1].map(IBig::from));
        let out = cmd_sequence(&fam, 4..=20, Some("1,1,1,-1"), None).unwrap();
        assert_eq!(out.code, exit::OK);
        assert_eq!(out.records.len(), 17);
    }
}
