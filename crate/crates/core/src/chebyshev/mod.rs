//! Chebyshev closed forms for spanning-tree counts.
//!
//! For `C_n(s_1,…,s_k)` with `q = Σ s_j²`,
//!
//! ```text
//! τ(n) = (n/q) · Π_p |2·T_n(w_p) − 2|
//! ```
//!
//! over the roots `w_p` of `P(w) = Σ (T_{s_j}(w) − 1)/(w − 1)`. For the odd
//! valency circulant `C_{2n}(s_1,…,s_k,n)` with `P(w) = 2k + 1 − 2 Σ T_{s_j}(w)`,
//!
//! ```text
//! τ(n) = (n·4^{s_k−1}/q) · Π (T_n(u_p) − 1) · Π (T_n(v_p) + 1)
//! ```
//!
//! with `u_p` the roots of `(P(u) − 1)/(u − 1)` and `v_p` those of `P(v) + 1`.
//!
//! The products are evaluated over certified roots at a working precision
//! that doubles until the value is certified as an integer (see
//! [`Certification`]).

pub mod poly;
pub mod precise;
pub mod roots;

use dashu_base::Sign;
use dashu_int::{IBig, UBig};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::TreeCount;
use crate::graph::{CirculantSpec, Family, StepFamily};

pub use poly::IntPolynomial;
use precise::{real_abs, real_int, real_pow2, Complex, Real};
pub use roots::{find_roots, CertifiedRoot, CertifiedRoots};

/// Chebyshev polynomial of the first kind, `T_m(cos θ) = cos(mθ)`.
pub fn cheb_t(m: usize) -> IntPolynomial {
    three_term(
        IntPolynomial::constant(1),
        IntPolynomial::from_i64(&[0, 1]),
        m,
    )
}

/// Chebyshev polynomial of the second kind, `U_m(cos θ) = sin((m+1)θ)/sin θ`.
pub fn cheb_u(m: usize) -> IntPolynomial {
    three_term(
        IntPolynomial::constant(1),
        IntPolynomial::from_i64(&[0, 2]),
        m,
    )
}

/// `X_m = 2w·X_{m−1} − X_{m−2}` from the two seeds.
fn three_term(first: IntPolynomial, second: IntPolynomial, m: usize) -> IntPolynomial {
    if m == 0 {
        return first;
    }
    let two_w = IntPolynomial::from_i64(&[0, 2]);
    let (mut prev, mut cur) = (first, second);
    for _ in 1..m {
        let next = &(&two_w * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Q(w) = Σ (T_{s_j}(w) − 1)`.
pub fn even_sum_poly(steps: &[u64]) -> IntPolynomial {
    let one = IntPolynomial::constant(1);
    steps.iter().fold(IntPolynomial::zero(), |acc, &s| {
        &acc + &(&cheb_t(s as usize) - &one)
    })
}

/// `P(w) = Q(w)/(w − 1)`, of degree `s_k − 1` with `P(1) = Σ s_j²`.
pub fn build_even_char(steps: &[u64]) -> Result<IntPolynomial> {
    even_sum_poly(steps).div_exact(&IntPolynomial::linear_root(1))
}

/// `P(w) = 2k + 1 − 2 Σ T_{s_j}(w)`, of degree `s_k` with `P(1) = 1`.
pub fn build_odd_char(steps: &[u64]) -> IntPolynomial {
    let sum = steps
        .iter()
        .fold(IntPolynomial::zero(), |acc, &s| &acc + &cheb_t(s as usize));
    let constant = IntPolynomial::constant(2 * steps.len() as i64 + 1);
    &constant - &sum.scale(&IBig::from(2))
}

/// The branch `q = w ± √(w² − 1)` with `|q| ≥ 1`.
fn joukowski_outer(w: &Complex) -> Complex {
    let p = w.precision();
    let one = Complex::from_int(&IBig::ONE, p);
    let root = (&(w * w) - &one).sqrt();
    let plus = w + &root;
    let minus = w - &root;
    if plus.norm_sqr() >= minus.norm_sqr() {
        plus
    } else {
        minus
    }
}

/// `T_n(w) = (qⁿ + q⁻ⁿ)/2` in `O(log n)` multiplications at the precision of `w`.
pub fn cheb_eval_large(w: &Complex, n: u64) -> Complex {
    let q = joukowski_outer(w);
    let qn = q.powu(n);
    let half = real_pow2(-1, w.precision());
    (&qn + &qn.recip()).scale(&half)
}

/// `U_m(x) = (q^{m+1} − q^{−(m+1)})/(q − q⁻¹)`; needs `x ≠ ±1`.
pub fn cheb_u_eval_large(x: &Complex, m: u64) -> Complex {
    let q = joukowski_outer(x);
    let qm = q.powu(m + 1);
    &(&qm - &qm.recip()) / &(&q - &q.recip())
}

/// Precision schedule for the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certification {
    /// Base working precision before growth headroom is added.
    pub initial_bits: usize,
    pub max_bits: usize,
    /// Accepted distance from the nearest integer, as a power of two.
    pub integer_tolerance_log2: isize,
}

impl Default for Certification {
    fn default() -> Self {
        Certification {
            initial_bits: 128,
            max_bits: 8192,
            integer_tolerance_log2: -20,
        }
    }
}

/// `τ` for a connected even-valency spec via the absolute-value product form.
pub fn tau_even(spec: &CirculantSpec) -> Result<TreeCount> {
    require_family(spec, Family::Even)?;
    require_connected(spec)?;
    even_closed_form(spec.steps(), spec.order(), &Certification::default())
}

/// `τ` for a connected even-valency spec via second-kind polynomials,
/// `τ = n·|Π U_{n−1}(√((w_p + 1)/2))|²`.
pub fn tau_even_u_form(spec: &CirculantSpec) -> Result<TreeCount> {
    require_family(spec, Family::Even)?;
    require_connected(spec)?;
    even_u_form(spec.steps(), spec.order(), &Certification::default())
}

/// `τ` for a connected diagonal (odd-valency) spec.
pub fn tau_odd(spec: &CirculantSpec) -> Result<TreeCount> {
    require_family(spec, Family::Diagonal)?;
    require_connected(spec)?;
    odd_closed_form(spec.steps(), spec.order(), &Certification::default())
}

/// Dispatches to [`tau_even`] or [`tau_odd`].
pub fn tau_formula(spec: &CirculantSpec) -> Result<TreeCount> {
    match spec.family() {
        Family::Even => tau_even(spec),
        Family::Diagonal => tau_odd(spec),
    }
}

/// Closed-form count for the member of `family` at order `n`. Where steps
/// collide this counts the multigraph with Laplacian `L(T)`.
pub fn tau_family(family: &StepFamily, n: u64) -> Result<TreeCount> {
    tau_family_with(family, n, &Certification::default())
}

pub fn tau_family_with(family: &StepFamily, n: u64, policy: &Certification) -> Result<TreeCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if !family.is_connected_at(n) {
        return Err(Error::Disconnected {
            components: crate::util::gcd(family.step_gcd(), n),
        });
    }
    match family.family() {
        Family::Even => even_closed_form(family.steps(), n, policy),
        Family::Diagonal => odd_closed_form(family.steps(), n, policy),
    }
}

fn require_family(spec: &CirculantSpec, family: Family) -> Result<()> {
    if spec.family() != family {
        return Err(Error::InvalidArgument(format!(
            "{spec} is not in the {family} family"
        )));
    }
    Ok(())
}

fn require_connected(spec: &CirculantSpec) -> Result<()> {
    match spec.component_count() {
        1 => Ok(()),
        components => Err(Error::Disconnected { components }),
    }
}

fn q_of(steps: &[u64]) -> u64 {
    steps.iter().map(|s| s * s).sum()
}

/// Bits of growth `n·Σ log₂|z|` over the outer Joukowski preimages of `roots`.
fn growth_bits(polys: &[&IntPolynomial], n: u64) -> usize {
    let mut bits = 0.0;
    for p in polys {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        // double precision is plenty for a size estimate
        if let Ok(r) = find_roots(p, 64) {
            for w in r.to_c64() {
                let s = (w * w - 1.0).sqrt();
                let z = (w + s).norm().max((w - s).norm());
                bits += z.log2().max(0.0);
            }
        }
    }
    (bits * n as f64).ceil() as usize + 64 - (n.max(1)).leading_zeros() as usize
}

/// Runs `evaluate` at growing precision until the value certifies as the
/// integer `qτ` with `q | qτ`, and two consecutive precisions agree.
fn certify<F>(q: u64, headroom: usize, policy: &Certification, mut evaluate: F) -> Result<TreeCount>
where
    F: FnMut(usize) -> Result<Real>,
{
    let mut bits = policy.initial_bits + headroom;
    let mut previous: Option<UBig> = None;
    let mut last_reason = String::from("no evaluation attempted");
    while bits <= policy.max_bits.max(policy.initial_bits + headroom) {
        match evaluate(bits).and_then(|v| round_certified(&v, q, bits, policy)) {
            Ok(tau) => {
                if previous.as_ref() == Some(&tau) {
                    return Ok(TreeCount::new(tau));
                }
                previous = Some(tau);
            }
            Err(e) => {
                last_reason = e.to_string();
                previous = None;
            }
        }
        if bits >= policy.max_bits {
            break;
        }
        bits = (bits * 2).min(policy.max_bits.max(bits + 1));
    }
    Err(Error::Certification {
        max_bits: bits,
        reason: last_reason,
    })
}

/// `pre_division ≈ q·τ`: returns `τ` if `pre_division/q` is within the
/// tolerance of an integer and `round(pre_division)` is a multiple of `q`.
fn round_certified(
    pre_division: &Real,
    q: u64,
    bits: usize,
    policy: &Certification,
) -> Result<UBig> {
    let q_real = real_int(&IBig::from(q), bits);
    let tau_real = pre_division / &q_real;
    let nearest = tau_real.round();
    let gap = real_abs(&(&tau_real - &nearest));
    if gap > real_pow2(policy.integer_tolerance_log2, bits) {
        return Err(Error::Certification {
            max_bits: bits,
            reason: format!(
                "value is {:.3e} away from an integer",
                precise::to_f64(&gap)
            ),
        });
    }
    let tau = nearest.to_int().value();
    let whole = pre_division.round().to_int().value();
    if whole != &tau * IBig::from(q) {
        return Err(Error::Certification {
            max_bits: bits,
            reason: format!("pre-division value is not divisible by q = {q}"),
        });
    }
    if tau.sign() == Sign::Negative || tau == IBig::ZERO {
        return Err(Error::Certification {
            max_bits: bits,
            reason: "closed form produced a nonpositive count".into(),
        });
    }
    Ok(tau.try_into().expect("positive"))
}

fn even_closed_form(steps: &[u64], n: u64, policy: &Certification) -> Result<TreeCount> {
    let p = build_even_char(steps)?;
    let q = q_of(steps);
    if p.degree() == Some(0) {
        // single step 1: the cycle, empty product
        return Ok(TreeCount::from(n));
    }
    let headroom = growth_bits(&[&p], n);
    certify(q, headroom, policy, |bits| {
        let roots = find_roots(&p, bits)?;
        let two = real_int(&IBig::from(2), bits);
        let mut product = real_int(&IBig::from(n), bits);
        for root in roots.expanded() {
            let t = cheb_eval_large(&root.value, n);
            let mut factor = t.scale(&two);
            factor.re = &factor.re - &two;
            product *= factor.abs();
        }
        Ok(product)
    })
}

fn even_u_form(steps: &[u64], n: u64, policy: &Certification) -> Result<TreeCount> {
    let p = build_even_char(steps)?;
    if p.degree() == Some(0) {
        return Ok(TreeCount::from(n));
    }
    let headroom = growth_bits(&[&p], n);
    certify(1, headroom, policy, |bits| {
        let roots = find_roots(&p, bits)?;
        let one = Complex::from_int(&IBig::ONE, bits);
        let half = real_pow2(-1, bits);
        let mut product = one.clone();
        for root in roots.expanded() {
            let x = (&root.value + &one).scale(&half).sqrt();
            product = &product * &cheb_u_eval_large(&x, n - 1);
        }
        Ok(product.norm_sqr() * real_int(&IBig::from(n), bits))
    })
}

/// The two root sets of the odd-valency formula:
/// `(P(u) − 1)/(u − 1)` and `P(v) + 1`.
pub fn odd_root_polys(steps: &[u64]) -> Result<(IntPolynomial, IntPolynomial)> {
    let p = build_odd_char(steps);
    let one = IntPolynomial::constant(1);
    let u_poly = (&p - &one).div_exact(&IntPolynomial::linear_root(1))?;
    let v_poly = &p + &one;
    Ok((u_poly, v_poly))
}

fn odd_closed_form(steps: &[u64], n: u64, policy: &Certification) -> Result<TreeCount> {
    let (u_poly, v_poly) = odd_root_polys(steps)?;
    let q = q_of(steps);
    let sk = *steps.iter().max().expect("steps") as usize;
    let headroom = growth_bits(&[&u_poly, &v_poly], n);
    certify(q, headroom, policy, |bits| {
        let one = Complex::from_int(&IBig::ONE, bits);
        let scale = IBig::from(n) * IBig::from(4).pow(sk - 1);
        let mut product = Complex::from_int(&scale, bits);
        if u_poly.degree().unwrap_or(0) > 0 {
            for root in find_roots(&u_poly, bits)?.expanded() {
                product = &product * &(&cheb_eval_large(&root.value, n) - &one);
            }
        }
        for root in find_roots(&v_poly, bits)?.expanded() {
            product = &product * &(&cheb_eval_large(&root.value, n) + &one);
        }
        // conjugate pairs make the product real
        let im = real_abs(&product.im);
        let mag = product.abs();
        if im > mag * real_pow2(-(bits as isize) / 2, bits) {
            return Err(Error::Certification {
                max_bits: bits,
                reason: "product has a non-negligible imaginary part".into(),
            });
        }
        Ok(product.re)
    })
}

/// `w = (z + 1/z)/2` inverted to the outer preimage `|z| ≥ 1`, in `f64`.
pub fn outer_preimage(w: Complex64) -> Complex64 {
    let s = (w * w - 1.0).sqrt();
    let (a, b) = (w + s, w - s);
    if a.norm() >= b.norm() {
        a
    } else {
        b
    }
}
