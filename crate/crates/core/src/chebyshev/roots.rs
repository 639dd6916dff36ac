//! Certified complex roots of integer polynomials.
//!
//! Multiple roots are split off exactly by square-free decomposition. Each
//! square-free factor gets hardware-precision starting points from its
//! companion matrix, which are then Newton-refined at the requested
//! precision. A refined root `z` of a degree-`d` factor `g` is certified by
//! the inclusion disk of radius `d·|g(z)/g'(z)|`; the disks of one factor
//! must be pairwise disjoint, so each holds exactly one root.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::IntPolynomial;
use super::precise::{real_int, real_pow2, real_zero, Complex, Real};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    pub value: Complex,
    /// A true root lies within this distance of `value`.
    pub radius: Real,
    pub multiplicity: usize,
}

impl CertifiedRoot {
    pub fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedRoots {
    roots: Vec<CertifiedRoot>,
    working_precision: usize,
}

impl CertifiedRoots {
    /// Distinct roots with their multiplicities.
    pub fn roots(&self) -> &[CertifiedRoot] {
        &self.roots
    }

    pub fn working_precision(&self) -> usize {
        self.working_precision
    }

    /// Root count with multiplicity; equals the polynomial degree.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated by multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &CertifiedRoot> + '_ {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r, r.multiplicity))
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.expanded().map(|r| r.to_c64()).collect()
    }
}

/// All complex roots of a nonconstant polynomial at `precision` bits.
pub fn find_roots(p: &IntPolynomial, precision: usize) -> Result<CertifiedRoots> {
    match p.degree() {
        None | Some(0) => {
            return Err(Error::InvalidArgument(
                "root finding needs a nonconstant polynomial".into(),
            ))
        }
        _ => {}
    }
    let mut roots = Vec::new();
    for (factor, multiplicity) in p.square_free_decomposition() {
        for (value, radius) in simple_roots(&factor, precision)? {
            roots.push(CertifiedRoot {
                value,
                radius,
                multiplicity,
            });
        }
    }
    Ok(CertifiedRoots {
        roots,
        working_precision: precision,
    })
}

/// Roots of a square-free polynomial.
fn simple_roots(g: &IntPolynomial, precision: usize) -> Result<Vec<(Complex, Real)>> {
    let degree = g.degree().expect("nonconstant factor");
    let eval = Evaluator::new(g, precision);
    if degree == 1 {
        let num = real_int(&(-g.coeff(0)), precision);
        let den = real_int(&g.coeff(1), precision);
        let z = Complex::from_real(num / den);
        let radius = rounding_slack(&z, precision);
        return Ok(vec![(z, radius)]);
    }

    let starts = companion_eigenvalues(g);
    let mut zs: Vec<Complex> = starts
        .iter()
        .map(|&z| newton(&eval, Complex::from_c64(z, precision), precision))
        .collect();
    if let Some(cert) = certify(&eval, &zs, precision) {
        return Ok(cert);
    }
    zs = aberth(&eval, &starts, precision);
    certify(&eval, &zs, precision).ok_or(Error::NoConvergence { bits: precision })
}

struct Evaluator {
    coeffs: Vec<Real>,
    deriv: Vec<Real>,
    degree: usize,
}

impl Evaluator {
    fn new(g: &IntPolynomial, precision: usize) -> Self {
        let coeffs = g
            .coefficients()
            .iter()
            .map(|c| real_int(c, precision))
            .collect();
        let deriv = g
            .derivative()
            .coefficients()
            .iter()
            .map(|c| real_int(c, precision))
            .collect();
        Evaluator {
            coeffs,
            deriv,
            degree: g.degree().unwrap(),
        }
    }

    fn horner(coeffs: &[Real], z: &Complex) -> Complex {
        let p = z.precision();
        let mut acc = Complex::zero(p);
        for c in coeffs.iter().rev() {
            acc = &acc * z;
            acc.re = &acc.re + c;
        }
        acc
    }

    fn value(&self, z: &Complex) -> Complex {
        Self::horner(&self.coeffs, z)
    }

    fn derivative(&self, z: &Complex) -> Complex {
        Self::horner(&self.deriv, z)
    }

    /// Newton correction `g(z)/g'(z)`, `None` at a critical point.
    fn correction(&self, z: &Complex) -> Option<Complex> {
        let d = self.derivative(z);
        if d.is_zero() {
            return None;
        }
        Some(&self.value(z) / &d)
    }
}

fn rounding_slack(z: &Complex, precision: usize) -> Real {
    let one = real_int(&1.into(), precision);
    let scale = if z.abs() > one { z.abs() } else { one };
    scale * real_pow2(24 - precision as isize, precision)
}

fn converged(step: &Complex, z: &Complex, precision: usize) -> bool {
    let one = real_int(&1.into(), precision);
    let scale = if z.abs() > one { z.abs() } else { one };
    step.abs() <= scale * real_pow2(16 - precision as isize, precision)
}

fn iteration_budget(precision: usize) -> usize {
    64 + 4 * (usize::BITS - precision.leading_zeros()) as usize
}

fn newton(eval: &Evaluator, mut z: Complex, precision: usize) -> Complex {
    for _ in 0..iteration_budget(precision) {
        let Some(step) = eval.correction(&z) else {
            break;
        };
        z = &z - &step;
        if converged(&step, &z, precision) {
            // one more step settles the last bits
            if let Some(step) = eval.correction(&z) {
                z = &z - &step;
            }
            break;
        }
    }
    z
}

/// Aberth–Ehrlich simultaneous iteration, used when independent Newton
/// runs collapse onto the same root.
fn aberth(eval: &Evaluator, starts: &[Complex64], precision: usize) -> Vec<Complex> {
    // perturb so no two starting points coincide
    let mut zs: Vec<Complex> = starts
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let jitter = Complex64::from_polar(1e-6 * (1.0 + z.norm()), 0.7 + i as f64);
            Complex::from_c64(z + jitter, precision)
        })
        .collect();
    for _ in 0..iteration_budget(precision) * 2 {
        let mut done = true;
        for i in 0..zs.len() {
            let Some(ratio) = eval.correction(&zs[i]) else {
                continue;
            };
            let mut repulsion = Complex::zero(precision);
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    repulsion = &repulsion + &(&zs[i] - zj).recip();
                }
            }
            let one = Complex::from_int(&1.into(), precision);
            let denom = &one - &(&ratio * &repulsion);
            if denom.is_zero() {
                continue;
            }
            let step = &ratio / &denom;
            let next = &zs[i] - &step;
            if !converged(&step, &next, precision) {
                done = false;
            }
            zs[i] = next;
        }
        if done {
            break;
        }
    }
    zs
}

fn certify(eval: &Evaluator, zs: &[Complex], precision: usize) -> Option<Vec<(Complex, Real)>> {
    if zs.len() != eval.degree {
        return None;
    }
    let degree = real_int(&(eval.degree as i64).into(), precision);
    let mut out = Vec::with_capacity(zs.len());
    for z in zs {
        let radius = eval.correction(z)?.abs() * &degree + rounding_slack(z, precision);
        out.push((z.clone(), radius));
    }
    for i in 0..out.len() {
        for j in 0..i {
            let gap = (&out[i].0 - &out[j].0).abs();
            if gap <= &out[i].1 + &out[j].1 {
                return None;
            }
        }
    }
    Some(out)
}

/// Starting points: eigenvalues of the companion matrix in `f64`.
fn companion_eigenvalues(g: &IntPolynomial) -> Vec<Complex64> {
    let coeffs = g.to_f64();
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let eig = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)
        .map(|s| s.complex_eigenvalues())
        .filter(|e| e.len() == n && e.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    match eig {
        Some(e) => e.iter().map(|z| Complex64::new(z.re, z.im)).collect(),
        None => {
            // points on a circle of Cauchy-bound radius
            let bound = 1.0
                + coeffs[..n]
                    .iter()
                    .map(|c| (c / lead).abs())
                    .fold(0.0, f64::max);
            (0..n)
                .map(|k| {
                    Complex64::from_polar(bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)
                })
                .collect()
        }
    }
}

/// Residual `|p(z)|` at high precision; used by tests and diagnostics.
pub fn residual(p: &IntPolynomial, z: &Complex) -> Real {
    let precision = z.precision();
    if p.is_zero() {
        return real_zero(precision);
    }
    Evaluator::new(p, precision).value(z).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::precise::to_f64;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn linear_roots() {
        let r = find_roots(&p(&[3, 2]), 128).unwrap();
        assert_eq!(r.count(), 1);
        assert_eq!(r.to_c64(), vec![Complex64::new(-1.5, 0.0)]);
        let r = find_roots(&p(&[4, -2]), 128).unwrap();
        assert_eq!(r.to_c64(), vec![Complex64::new(2.0, 0.0)]);
    }

    #[test]
    fn double_root_is_flagged() {
        let r = find_roots(&p(&[1, -2, 1]), 128).unwrap();
        assert_eq!(r.roots().len(), 1);
        assert_eq!(r.roots()[0].multiplicity, 2);
        assert_eq!(r.count(), 2);
        assert_eq!(r.roots()[0].to_c64(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn quartic_with_complex_pairs() {
        // x^4 + 1
        let r = find_roots(&p(&[1, 0, 0, 0, 1]), 256).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = sorted(vec![
            Complex64::new(-h, -h),
            Complex64::new(-h, h),
            Complex64::new(h, -h),
            Complex64::new(h, h),
        ]);
        for (a, b) in sorted(r.to_c64()).iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
        for root in r.roots() {
            assert!(to_f64(&root.radius) < 1e-60);
            assert!(to_f64(&residual(&p(&[1, 0, 0, 0, 1]), &root.value)) < 1e-60);
        }
    }

    #[test]
    fn clustered_roots_are_separated() {
        // (x - 1)(x - 1 - 2^-30): roots closer than f64 eigenvalues resolve comfortably
        let scale = 1i64 << 30;
        let f = &p(&[-1, 1]) * &p(&[-(scale + 1), scale]);
        let r = find_roots(&f, 256).unwrap();
        let mut v = sorted(r.to_c64());
        v.dedup();
        assert_eq!(v.len(), 2);
        assert!((v[1].re - v[0].re - 2f64.powi(-30)).abs() < 1e-20);
    }

    #[test]
    fn chebyshev_like_degree_twenty() {
        // product of (x - k/7) for k = -10..=9, scaled to integers
        let mut f = p(&[1]);
        for k in -10..10 {
            f = &f * &p(&[-k, 7]);
        }
        let r = find_roots(&f, 200).unwrap();
        assert_eq!(r.count(), 20);
        let mut got: Vec<f64> = r.to_c64().iter().map(|z| z.re * 7.0).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, k) in got.iter().zip(-10..10) {
            assert!((g - k as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_is_rejected() {
        assert!(find_roots(&p(&[5]), 64).is_err());
    }
}
