//! Ground-truth spanning-tree counts from the matrix-tree theorem.

use std::fmt;
use std::str::FromStr;

use dashu_int::{IBig, UBig};

use crate::error::{Error, Result};
use crate::graph::{CirculantSpec, IntegerMatrix, StepFamily};

/// Number of spanning trees; an arbitrary-precision nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCount(UBig);

impl TreeCount {
    pub fn new(value: UBig) -> Self {
        TreeCount(value)
    }

    pub fn zero() -> Self {
        TreeCount(UBig::ZERO)
    }

    pub fn value(&self) -> &UBig {
        &self.0
    }

    pub fn into_inner(self) -> UBig {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == UBig::ZERO
    }
}

impl From<u64> for TreeCount {
    fn from(v: u64) -> Self {
        TreeCount(UBig::from(v))
    }
}

impl fmt::Display for TreeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for TreeCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UBig::from_str(s.trim())
            .map(TreeCount)
            .map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: "not a nonnegative decimal integer".into(),
            })
    }
}

pub const DEFAULT_ORACLE_CEILING: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count the oracle accepts.
    pub ceiling: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

/// Exact spanning-tree count of a canonical spec; zero when disconnected.
pub fn tau_oracle(spec: &CirculantSpec, config: &OracleConfig) -> Result<TreeCount> {
    let vertices = spec.vertex_count() as usize;
    check_ceiling(vertices, config)?;
    if !spec.is_connected() {
        return Ok(TreeCount::zero());
    }
    laplacian_tree_count(&spec.laplacian())
}

/// Exact count for the member of a step family at order `n`, taken from the
/// multigraph Laplacian `L(T)` (equal to [`tau_oracle`] where the member is simple).
pub fn tau_oracle_family(family: &StepFamily, n: u64, config: &OracleConfig) -> Result<TreeCount> {
    let vertices = family.vertex_count(n) as usize;
    check_ceiling(vertices, config)?;
    if vertices == 1 {
        return Ok(TreeCount::from(1));
    }
    laplacian_tree_count(&family.multigraph_laplacian(n))
}

fn check_ceiling(vertices: usize, config: &OracleConfig) -> Result<()> {
    if vertices > config.ceiling {
        return Err(Error::CeilingExceeded {
            vertices,
            ceiling: config.ceiling,
        });
    }
    Ok(())
}

/// Kirchhoff: any cofactor of a Laplacian counts spanning trees.
pub fn laplacian_tree_count(laplacian: &IntegerMatrix) -> Result<TreeCount> {
    if laplacian.dim() <= 1 {
        return Ok(TreeCount::from(1));
    }
    let det = bareiss_determinant(laplacian.minor(0));
    // a reduced Laplacian is positive semidefinite
    if det < IBig::ZERO {
        return Err(Error::InvalidArgument(
            "negative cofactor: input is not a Laplacian".into(),
        ));
    }
    Ok(TreeCount(det.try_into().expect("nonnegative")))
}

/// Fraction-free Gaussian elimination. Every intermediate entry is an
/// integer (a minor of the input), and each division is exact.
pub fn bareiss_determinant(matrix: IntegerMatrix) -> IBig {
    let n = matrix.dim();
    if n == 0 {
        return IBig::ONE;
    }
    let mut a = matrix.into_entries();
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..n - 1 {
        if a[k * n + k] == IBig::ZERO {
            // sequential pivot vanished: swap in a later row, or the matrix is singular
            match (k + 1..n).find(|&r| a[r * n + k] != IBig::ZERO) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return IBig::ZERO,
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&a[i * n + j] * &pivot - &lead * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            a[i * n + k] = IBig::ZERO;
        }
        prev = pivot;
    }
    sign * a[n * n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn spec(order: u64, steps: &[i64], diagonal: bool) -> CirculantSpec {
        CirculantSpec::canonicalize(order, steps, diagonal).unwrap()
    }

    fn oracle(s: &CirculantSpec) -> UBig {
        tau_oracle(s, &OracleConfig::default())
            .unwrap()
            .into_inner()
    }

    #[test]
    fn small_known_counts() {
        assert_eq!(oracle(&spec(3, &[1], false)), UBig::from(3u8));
        assert_eq!(oracle(&spec(2, &[1], true)), UBig::from(16u8));
        assert_eq!(oracle(&spec(5, &[1, 2], false)), UBig::from(125u8));
        assert_eq!(oracle(&spec(6, &[2], false)), UBig::ZERO);
        assert_eq!(oracle(&spec(7, &[2, 3], false)), UBig::from(1183u16));
        assert_eq!(oracle(&spec(6, &[1, 2], false)), UBig::from(384u16));
    }

    #[test]
    fn complete_graphs_follow_cayley() {
        for n in 3..=11u64 {
            let raw: Vec<i64> = (1..=n as i64 / 2).collect();
            let s = spec(n, &raw, false);
            assert_eq!(oracle(&s), UBig::from(n).pow(n as usize - 2), "K_{n}");
        }
    }

    #[test]
    fn cycles_have_n_trees() {
        for n in 3..=30 {
            assert_eq!(oracle(&spec(n, &[1], false)), UBig::from(n));
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let cfg = OracleConfig { ceiling: 10 };
        assert_eq!(
            tau_oracle(&spec(11, &[1], false), &cfg),
            Err(Error::CeilingExceeded {
                vertices: 11,
                ceiling: 10
            })
        );
        assert!(tau_oracle(&spec(5, &[1], true), &cfg).is_ok());
    }

    #[test]
    fn bareiss_general_matrices() {
        let m = IntegerMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]);
        // 0·(0-3) - 2·(0-12) + 1·(1-0) = 25
        assert_eq!(bareiss_determinant(m), IBig::from(25));
        let singular = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(bareiss_determinant(singular), IBig::ZERO);
        let swap = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(bareiss_determinant(swap), IBig::from(-1));
    }

    #[test]
    fn family_oracle_counts_multigraphs() {
        let fam = StepFamily::new(&[2, 3], Family::Even).unwrap();
        let cfg = OracleConfig::default();
        let got: Vec<u64> = (1..=6)
            .map(|n| {
                tau_oracle_family(&fam, n, &cfg)
                    .unwrap()
                    .to_string()
                    .parse()
                    .unwrap()
            })
            .collect();
        assert_eq!(got, vec![1, 2, 3, 36, 80, 294]);
    }

    #[test]
    fn tree_count_parses_decimal() {
        let t: TreeCount = "33525997568".parse().unwrap();
        assert_eq!(t.to_string(), "33525997568");
        assert!("-3".parse::<TreeCount>().is_err());
    }
}
