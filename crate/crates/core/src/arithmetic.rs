//! Square-free decomposition `τ(n) = c·n·a(n)²` and the integer sequences `a(n)`.

use std::ops::RangeInclusive;

use dashu_base::SquareRoot;
use dashu_int::{IBig, UBig};

use crate::chebyshev::tau_family;
use crate::error::{Error, Result};
use crate::exact::TreeCount;
use crate::graph::{CirculantSpec, Family, StepFamily};

/// `tau = coefficient · n · a²` with a square-free coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub family: Family,
    pub n: u64,
    pub coefficient: u64,
    pub a: UBig,
    pub tau: TreeCount,
}

/// Increments of the 2·3·5 wheel starting from 7.
const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// The unique square-free `q` with `m = q·r²`; `m ≥ 1`.
pub fn square_free_part(m: u64) -> u64 {
    assert!(m >= 1, "square_free_part needs a positive argument");
    let mut rest = m;
    let mut part = 1;
    let mut strip = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            part *= p;
        }
    };
    for p in [2, 3, 5] {
        strip(p, &mut rest);
    }
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= rest {
        strip(p, &mut rest);
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    part * rest
}

/// Coefficient `c` forced by the step parities, where `p` counts odd steps.
///
/// Even valency: `1` for odd `n`, `sfp(p)` for even `n`.
/// Diagonal: `sfp(2p + 1)` for odd `n`, `sfp(2p)` for even `n`.
pub fn expected_coefficient(spec: &CirculantSpec) -> Result<u64> {
    coefficient_for(spec.family(), spec.odd_step_count(), spec.order())
}

/// As [`expected_coefficient`] for the member of `family` at order `n`.
pub fn expected_coefficient_for(family: &StepFamily, n: u64) -> Result<u64> {
    coefficient_for(family.family(), family.odd_step_count(), n)
}

fn coefficient_for(family: Family, p: u64, n: u64) -> Result<u64> {
    let odd_n = n % 2 == 1;
    match family {
        Family::Even if odd_n => Ok(1),
        Family::Even if p == 0 => Err(Error::Disconnected { components: 2 }),
        Family::Even => Ok(square_free_part(p)),
        Family::Diagonal if odd_n => Ok(square_free_part(2 * p + 1)),
        Family::Diagonal => Ok(square_free_part(2 * p)),
    }
}

/// Splits a tree count as `c·n·a²`, failing if `c·n ∤ τ` or the quotient is
/// not a perfect square.
pub fn decompose(spec: &CirculantSpec, tau: &TreeCount) -> Result<Decomposition> {
    let c = expected_coefficient(spec)?;
    split(spec.family(), spec.order(), c, tau, &spec.to_string())
}

/// As [`decompose`] for the member of `family` at order `n`.
pub fn decompose_member(family: &StepFamily, n: u64, tau: &TreeCount) -> Result<Decomposition> {
    let c = expected_coefficient_for(family, n)?;
    split(family.family(), n, c, tau, &family.label_at(n))
}

fn split(family: Family, n: u64, c: u64, tau: &TreeCount, label: &str) -> Result<Decomposition> {
    let fail = |reason: String| Error::Decomposition {
        spec: label.to_string(),
        reason,
    };
    if tau.is_zero() {
        return Err(fail("tree count is zero".into()));
    }
    let divisor = UBig::from(c) * UBig::from(n);
    let value = tau.value();
    if value % &divisor != UBig::ZERO {
        return Err(fail(format!("{c}·{n} does not divide {tau}")));
    }
    let quotient = value / &divisor;
    let a = quotient.sqrt();
    if &a * &a != quotient {
        return Err(fail(format!(
            "{tau}/({c}·{n}) = {quotient} is not a perfect square"
        )));
    }
    Ok(Decomposition {
        family,
        n,
        coefficient: c,
        a,
        tau: tau.clone(),
    })
}

/// Decompositions of the closed-form counts of `family` over `range`.
pub fn sequence_a(family: &StepFamily, range: RangeInclusive<u64>) -> Result<Vec<Decomposition>> {
    range
        .map(|n| {
            let tau = tau_family(family, n)?;
            decompose_member(family, n, &tau)
        })
        .collect()
}

/// First index `n` at which `a(n) = Σ_i c_i·a(n − i)` fails, for a sequence
/// whose first term has index `start`. Indices with fewer than `c.len()`
/// predecessors are seeds and not checked.
pub fn recursion_violation(start: u64, terms: &[IBig], coefficients: &[i64]) -> Option<u64> {
    let order = coefficients.len();
    (order..terms.len()).find_map(|i| {
        let predicted: IBig = coefficients
            .iter()
            .enumerate()
            .map(|(j, &c)| IBig::from(c) * &terms[i - 1 - j])
            .sum();
        (predicted != terms[i]).then_some(start + i as u64)
    })
}

/// Parses a comma-separated list of integers such as `"1,1,1,-1"`.
pub fn parse_integer_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|e| Error::Parse {
                input: text.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}
