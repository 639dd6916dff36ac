//! The `verify` sweeps.

use circulant::arithmetic::decompose;
use circulant::exact::tau_oracle;
use circulant::{tau_formula, CirculantSpec, Error, Family, OracleConfig, StepFamily, TreeCount};
use rayon::prelude::*;

use crate::commands::{exit, family_label, timed, CliError, CmdResult, Outcome};
use crate::record::OutputRecord;

pub const ISO_PAIR: &str = "C16-iso-pair";

/// Parses `C*(1,2)` or `C*(1,2;d)`.
pub fn parse_pattern(pattern: &str) -> Result<StepFamily, CliError> {
    let bad = |why: &str| CliError::new(exit::PARSE, format!("invalid pattern `{pattern}`: {why}"));
    let body = pattern
        .trim()
        .strip_prefix("C*(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| bad("expected C*(s1,s2,...) or C*(s1,...;d)"))?;
    let (list, family) = match body.split_once(';') {
        Some((list, "d")) => (list, Family::Diagonal),
        Some(_) => return Err(bad("only `;d` may follow the step list")),
        None => (body, Family::Even),
    };
    StepFamily::parse(list, family).map_err(|e| bad(&e.to_string()))
}

pub fn cmd_verify(pattern: &str, n_max: u64, cfg: &OracleConfig, timings: bool) -> CmdResult {
    if pattern.trim() == ISO_PAIR {
        return verify_iso_pair(cfg);
    }
    let family = parse_pattern(pattern)?;
    let orders: Vec<u64> = (family.first_simple_order()..=n_max)
        .filter(|&n| family.is_connected_at(n))
        .collect();
    let rows: Vec<Result<(OutputRecord, Option<String>), CliError>> = orders
        .par_iter()
        .map(|&n| {
            let spec = family.at(n)?;
            let (row, ms) = timed(timings, || check_order(&spec, cfg));
            row.map(|(mut r, failure)| {
                r.timings_ms = ms;
                (r, failure)
            })
        })
        .collect();
    let mut outcome = Outcome::default();
    let mut failures = 0;
    for row in rows {
        let (record, failure) = row?;
        outcome.records.push(record);
        if let Some(f) = failure {
            failures += 1;
            outcome.fail(exit::VERIFICATION, format!("counterexample: {f}"));
        }
    }
    let label = family_label(&family);
    outcome.messages.push(if orders.is_empty() {
        format!("verify {label}: no connected simple orders up to {n_max}")
    } else {
        format!(
            "verify {label}: {} orders in {}..={n_max}, {failures} failing",
            orders.len(),
            orders[0]
        )
    });
    Ok(outcome)
}

/// Units modulo `n` other than `±1`.
fn units(n: u64) -> impl Iterator<Item = u64> {
    (2..n - 1).filter(move |&r| gcd(r, n) == 1)
}

/// A conjugate differing from `spec` if one exists, else any nontrivial one.
fn conjugate_image(spec: &CirculantSpec) -> Result<Option<CirculantSpec>, Error> {
    let mut fallback = None;
    for r in units(spec.vertex_count()) {
        let image = spec.conjugate(r)?;
        if &image != spec {
            return Ok(Some(image));
        }
        fallback.get_or_insert(image);
    }
    Ok(fallback)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Runs every check at one order; returns the row and the first failure.
fn check_order(
    spec: &CirculantSpec,
    cfg: &OracleConfig,
) -> Result<(OutputRecord, Option<String>), CliError> {
    let mut record = OutputRecord {
        spec: Some(spec.to_string()),
        n: Some(spec.order()),
        family: Some(spec.family().to_string()),
        check: Some("oracle,decompose,conjugate".into()),
        ..Default::default()
    };
    let mut notes = Vec::new();
    let mut failure = None;
    let fail = |what: String, failure: &mut Option<String>| {
        if failure.is_none() {
            *failure = Some(format!("{spec}: {what}"));
        }
    };

    let tau = tau_formula(spec)?;
    record.tau = Some(tau.to_string());
    let use_oracle = spec.vertex_count() as usize <= cfg.ceiling;
    if use_oracle {
        let oracle = tau_oracle(spec, cfg)?;
        if oracle == tau {
            notes.push("oracle=pass".to_string());
        } else {
            notes.push("oracle=fail".to_string());
            fail(format!("formula {tau} but oracle {oracle}"), &mut failure);
        }
    } else {
        notes.push("oracle=skipped".to_string());
    }

    match decompose(spec, &tau) {
        Ok(d) => {
            record.coefficient = Some(d.coefficient);
            record.a = Some(d.a.to_string());
            notes.push("decompose=pass".to_string());
        }
        Err(e) => {
            notes.push("decompose=fail".to_string());
            fail(e.to_string(), &mut failure);
        }
    }

    match conjugate_image(spec)? {
        Some(image) => {
            let image_tau: TreeCount = if use_oracle {
                tau_oracle(&image, cfg)?
            } else {
                tau_formula(&image)?
            };
            if image_tau == tau {
                notes.push(format!("conjugate=pass({image})"));
            } else {
                notes.push("conjugate=fail".to_string());
                fail(
                    format!("conjugate {image} has {image_tau} trees"),
                    &mut failure,
                );
            }
        }
        None => notes.push("conjugate=skipped".to_string()),
    }

    record.status = Some(if failure.is_none() { "pass" } else { "fail" }.into());
    record.detail = Some(notes.join(" "));
    Ok((record, failure))
}

fn verify_iso_pair(cfg: &OracleConfig) -> CmdResult {
    let a = CirculantSpec::canonicalize(16, &[1, 2, 7], false)?;
    let b = CirculantSpec::canonicalize(16, &[2, 3, 5], false)?;
    let ta = tau_oracle(&a, cfg)?;
    let tb = tau_oracle(&b, cfg)?;
    let conjugate = (1..16u64)
        .filter(|r| r % 2 == 1)
        .map(|r| a.conjugate(r))
        .collect::<Result<Vec<_>, Error>>()?
        .contains(&b);
    let mut outcome = Outcome::default();
    let pass = ta == tb && !conjugate;
    for (spec, tau) in [(&a, &ta), (&b, &tb)] {
        outcome.records.push(OutputRecord {
            spec: Some(spec.to_string()),
            n: Some(16),
            family: Some(spec.family().to_string()),
            method: Some("oracle".into()),
            tau: Some(tau.to_string()),
            check: Some("isomorphic-pair".into()),
            status: Some(if pass { "pass" } else { "fail" }.into()),
            detail: Some(
                if conjugate {
                    "conjugate"
                } else {
                    "not conjugate"
                }
                .into(),
            ),
            ..Default::default()
        });
    }
    if ta != tb {
        outcome.fail(
            exit::VERIFICATION,
            format!("counterexample: {a} has {ta} trees, {b} has {tb}"),
        );
    } else if conjugate {
        outcome.fail(exit::VERIFICATION, format!("{a} and {b} are conjugate"));
    } else {
        outcome.messages.push(format!(
            "{a} and {b}: {ta} spanning trees each, not conjugate"
        ));
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        let f = parse_pattern("C*(1,2)").unwrap();
        assert_eq!((f.steps(), f.family()), (&[1u64, 2][..], Family::Even));
        let f = parse_pattern("C*(1,2;d)").unwrap();
        assert_eq!(f.family(), Family::Diagonal);
        assert!(parse_pattern("C5(1,2)").is_err());
        assert!(parse_pattern("C*(1,2;x)").is_err());
    }

    #[test]
    fn unit_multipliers() {
        assert_eq!(units(12).next(), Some(5));
        assert_eq!(units(7).next(), Some(2));
        assert_eq!(units(6).next(), None);
        let c8 = CirculantSpec::canonicalize(8, &[1, 3], false).unwrap();
        assert_eq!(conjugate_image(&c8).unwrap(), Some(c8));
        let c7 = CirculantSpec::canonicalize(7, &[1, 2], false).unwrap();
        assert_ne!(conjugate_image(&c7).unwrap(), Some(c7));
    }

    #[test]
    fn small_sweep_passes() {
        let out = cmd_verify("C*(1,3)", 16, &OracleConfig::default(), false).unwrap();
        assert_eq!(out.code, exit::OK);
        for r in out.records.iter().filter(|r| r.n.unwrap() % 2 == 0) {
            assert_eq!(r.coefficient, Some(2));
        }
    }
}
