//! Mahler measures of `L(z) = 2k − Σ (z^s + z^{−s})` and `R(z) = L(z)(L(z) + 2)`,
//! which give the growth rates `A = M(L)` and `K = M(R)` of the tree counts.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroUsize;
use std::ops::RangeInclusive;

use dashu_base::BitTest;
use dashu_int::{IBig, UBig};
use gauss_quad::GaussLegendre;

use crate::chebyshev::precise::{real_abs, real_int, real_ln, to_f64, Real};
use crate::chebyshev::{find_roots, tau_family, CertifiedRoot, IntPolynomial};
use crate::error::{Error, Result};
use crate::exact::TreeCount;
use crate::graph::{Family, StepFamily};
use crate::util::gcd;

/// Working precision for the first root-finding pass.
pub const DEFAULT_ROOT_BITS: usize = 128;
const MAX_ROOT_BITS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RootProduct,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::RootProduct => "root-product",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Mahler measure `M` together with `m = log M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MahlerEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
    pub small_measure: f64,
}

/// The Laurent polynomial of a step family and its roots off the unit circle.
#[derive(Debug, Clone)]
pub struct LaurentSpectrum {
    steps: Vec<u64>,
    family: Family,
    laurent: BTreeMap<i64, i64>,
    ordinary: IntPolynomial,
    outer_roots: Vec<CertifiedRoot>,
    precision: usize,
}

/// Builds the spectrum of `L` (even family) or `R = L(L + 2)` (diagonal) on
/// the steps divided by their gcd.
pub fn associated_laurent(steps: &[u64], family: Family) -> Result<LaurentSpectrum> {
    associated_laurent_with(steps, family, DEFAULT_ROOT_BITS)
}

pub fn associated_laurent_with(
    steps: &[u64],
    family: Family,
    bits: usize,
) -> Result<LaurentSpectrum> {
    if steps.is_empty() || steps.contains(&0) {
        return Err(Error::EmptySteps);
    }
    let d = steps.iter().fold(0, |g, &s| gcd(g, s));
    let mut reduced: Vec<u64> = steps.iter().map(|s| s / d).collect();
    reduced.sort_unstable();
    reduced.dedup();

    let mut l = BTreeMap::new();
    *l.entry(0).or_insert(0) += 2 * reduced.len() as i64;
    for &s in &reduced {
        *l.entry(s as i64).or_insert(0) -= 1;
        *l.entry(-(s as i64)).or_insert(0) -= 1;
    }
    let laurent = match family {
        Family::Even => l,
        Family::Diagonal => {
            let mut shifted = l.clone();
            *shifted.entry(0).or_insert(0) += 2;
            laurent_mul(&l, &shifted)
        }
    };
    let low = *laurent.keys().next().expect("nonempty");
    let high = *laurent.keys().next_back().expect("nonempty");
    let mut coeffs = vec![IBig::ZERO; (high - low) as usize + 1];
    for (&e, &c) in &laurent {
        coeffs[(e - low) as usize] = IBig::from(c);
    }
    let ordinary = IntPolynomial::new(coeffs);

    let double_one = &IntPolynomial::linear_root(1) * &IntPolynomial::linear_root(1);
    let reduced_poly = ordinary.div_exact(&double_one)?;

    let mut bits = bits;
    loop {
        let roots = if reduced_poly.degree() == Some(0) {
            Vec::new()
        } else {
            find_roots(&reduced_poly, bits)?.roots().to_vec()
        };
        match outer_roots(&roots) {
            Some(outer) => {
                return Ok(LaurentSpectrum {
                    steps: reduced,
                    family,
                    laurent,
                    ordinary,
                    outer_roots: outer,
                    precision: bits,
                })
            }
            None if bits >= MAX_ROOT_BITS => {
                return Err(Error::Certification {
                    max_bits: bits,
                    reason: "a root cannot be separated from the unit circle".into(),
                })
            }
            None => bits *= 2,
        }
    }
}

/// Roots strictly outside the unit circle with multiplicity, or `None` if
/// some root disk meets the circle.
fn outer_roots(roots: &[CertifiedRoot]) -> Option<Vec<CertifiedRoot>> {
    let mut out = Vec::new();
    for r in roots {
        let p = r.value.precision();
        let one = real_int(&IBig::ONE, p);
        let modulus = r.value.abs();
        let gap = real_abs(&(&modulus - &one));
        if gap <= r.radius {
            return None;
        }
        if modulus > one {
            for _ in 0..r.multiplicity {
                out.push(r.clone());
            }
        }
    }
    Some(out)
}

fn laurent_mul(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (&ea, &ca) in a {
        for (&eb, &cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

impl LaurentSpectrum {
    /// Steps divided by their gcd.
    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Exponent to coefficient.
    pub fn laurent(&self) -> &BTreeMap<i64, i64> {
        &self.laurent
    }

    /// `z^e · L(z)` (or `z^e · R(z)`) with `e` the negated lowest exponent.
    pub fn ordinary(&self) -> &IntPolynomial {
        &self.ordinary
    }

    pub fn outer_roots(&self) -> &[CertifiedRoot] {
        &self.outer_roots
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_palindromic(&self) -> bool {
        self.laurent
            .iter()
            .all(|(e, c)| self.laurent.get(&-e) == Some(c))
    }

    /// Multiplicity of the root `z = 1` of the ordinary polynomial.
    pub fn multiplicity_at_one(&self) -> usize {
        let mut p = self.ordinary.clone();
        let x1 = IntPolynomial::linear_root(1);
        let mut m = 0;
        while let Ok(q) = p.div_exact(&x1) {
            p = q;
            m += 1;
        }
        m
    }

    /// `log M` at the working precision.
    fn log_measure(&self) -> Real {
        let p = self.precision;
        let lead = real_int(&self.ordinary.leading(), p);
        self.outer_roots
            .iter()
            .fold(real_ln(&real_abs(&lead)), |acc, r| {
                acc + real_ln(&r.value.abs())
            })
    }
}

/// `M = |lead| · Π_{|z|>1} |z|` over certified roots.
pub fn mahler_root_product(spectrum: &LaurentSpectrum) -> MahlerEstimate {
    let m = to_f64(&spectrum.log_measure());
    // first-order propagation of the root radii
    let relative: f64 = spectrum
        .outer_roots
        .iter()
        .map(|r| {
            let modulus = to_f64(&r.value.abs());
            to_f64(&r.radius) / (modulus - to_f64(&r.radius))
        })
        .sum();
    let value = m.exp();
    MahlerEstimate {
        value,
        error_bound: value * (relative + 4.0 * f64::EPSILON),
        method: Method::RootProduct,
        small_measure: m,
    }
}

/// Quadrature tolerance on `m = log M`.
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;
const GAUSS_NODES: usize = 16;
const MAX_PANELS: usize = 1 << 12;

/// `m = ∫₀¹ log|L(e^{2πit})| dt` with the factor `|e^{2πit} − 1|²` divided
/// out; that factor has zero mean logarithm, leaving a smooth integrand.
pub fn mahler_quadrature(spectrum: &LaurentSpectrum) -> Result<MahlerEstimate> {
    let steps = spectrum.steps.clone();
    let diagonal = spectrum.family == Family::Diagonal;
    let integrand = move |t: f64| {
        let st = (PI * t).sin();
        let mut ratio = 0.0;
        let mut sum_sq = 0.0;
        for &s in &steps {
            let ss = (PI * s as f64 * t).sin();
            ratio += (ss / st).powi(2);
            sum_sq += ss * ss;
        }
        let mut v = ratio.ln();
        if diagonal {
            v += (2.0 + 4.0 * sum_sq).ln();
        }
        v
    };
    let rule = GaussLegendre::new(NonZeroUsize::new(GAUSS_NODES).expect("nonzero"));
    let composite = |panels: usize| -> f64 {
        let h = 1.0 / panels as f64;
        (0..panels)
            .map(|i| rule.integrate(i as f64 * h, (i + 1) as f64 * h, &integrand))
            .sum()
    };
    let mut panels = 1;
    let mut previous = composite(panels);
    loop {
        panels *= 2;
        let current = composite(panels);
        let estimate = (current - previous).abs();
        if estimate <= QUADRATURE_TOLERANCE {
            let value = current.exp();
            return Ok(MahlerEstimate {
                value,
                error_bound: value * (estimate + 64.0 * f64::EPSILON),
                method: Method::Quadrature,
                small_measure: current,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::Quadrature { estimate });
        }
        previous = current;
    }
}

/// The growth rate `A` (even) or `K` (diagonal) of a step family.
pub fn growth_rate(family: &StepFamily) -> Result<MahlerEstimate> {
    Ok(mahler_root_product(&associated_laurent(
        family.steps(),
        family.family(),
    )?))
}

/// Natural logarithm of a positive big integer.
pub fn ln_ubig(x: &UBig) -> f64 {
    let bits = x.bit_len();
    if bits <= 1000 {
        return x.to_f64().value().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().value().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `τ(n)·q / (n·d²·Aⁿ)`, with an extra factor 2 for the diagonal family.
pub fn asymptotic_ratio(family: &StepFamily, n: u64) -> Result<f64> {
    let rate = growth_rate(family)?;
    ratio_with(family, n, rate.small_measure)
}

fn ratio_with(family: &StepFamily, n: u64, log_rate: f64) -> Result<f64> {
    Ok(point_with(family, n, log_rate)?.ratio)
}

fn point_with(family: &StepFamily, n: u64, log_rate: f64) -> Result<AsymptoticPoint> {
    let tau = tau_family(family, n)?;
    let d = family.step_gcd() as f64;
    let mut log_ratio = ln_ubig(tau.value()) + (family.q() as f64).ln()
        - (n as f64).ln()
        - 2.0 * d.ln()
        - n as f64 * log_rate;
    if family.family() == Family::Diagonal {
        log_ratio += std::f64::consts::LN_2;
    }
    Ok(AsymptoticPoint {
        n,
        tau,
        ratio: log_ratio.exp(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPoint {
    pub n: u64,
    pub tau: TreeCount,
    pub ratio: f64,
}

/// Asymptotic ratios over `range`, skipping orders sharing a factor with the
/// step gcd.
pub fn asymptotic_ratios(
    family: &StepFamily,
    range: RangeInclusive<u64>,
) -> Result<Vec<AsymptoticPoint>> {
    let rate = growth_rate(family)?;
    range
        .filter(|&n| family.is_connected_at(n))
        .map(|n| point_with(family, n, rate.small_measure))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub n: u64,
    /// `log τ(n) / n`
    pub value: f64,
    /// `m(L)` or `m(R)`
    pub target: f64,
}

/// `log τ(n)/n` over `range` with the limiting small measure attached.
pub fn thermo_limit(family: &StepFamily, range: RangeInclusive<u64>) -> Result<Vec<ThermoPoint>> {
    let target = growth_rate(family)?.small_measure;
    range
        .filter(|&n| family.is_connected_at(n))
        .map(|n| {
            let tau = tau_family(family, n)?;
            Ok(ThermoPoint {
                n,
                value: ln_ubig(tau.value()) / n as f64,
                target,
            })
        })
        .collect()
}
