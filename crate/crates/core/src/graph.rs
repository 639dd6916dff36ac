//! Circulant graph descriptors, step families and exact Laplacians.
//!
//! A [`CirculantSpec`] is always canonical: steps are folded into
//! `1..=N/2`, sorted and distinct, and a step equal to `N/2` is carried by
//! the `diagonal` flag instead of the step list. With the flag set, `order`
//! holds the half-order `n` and the graph has `2n` vertices.

use std::fmt;
use std::str::FromStr;

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::util::gcd;

/// Valency family of a circulant: `C_n(s_1,…,s_k)` has even degree `2k`,
/// `C_{2n}(s_1,…,s_k,n)` has odd degree `2k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Even,
    Diagonal,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Even => "even",
            Family::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Family::Even),
            "diagonal" | "odd" | "diag" => Ok(Family::Diagonal),
            other => Err(Error::InvalidArgument(format!(
                "unknown family `{other}` (expected `even` or `diagonal`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantSpec {
    order: u64,
    steps: Vec<u64>,
    diagonal: bool,
}

impl CirculantSpec {
    /// Builds the canonical representative of a circulant.
    ///
    /// Raw steps are reduced modulo the vertex count `N` (which is
    /// `2 * order` when `diagonal` is set) and folded by `s -> min(s, N - s)`.
    /// In the even form a step folding to `N/2` switches the result to the
    /// diagonal form with half-order `N/2`.
    pub fn canonicalize(order: u64, raw_steps: &[i64], diagonal: bool) -> Result<Self> {
        let vertices = if diagonal { 2 * order } else { order };
        if vertices < 3 {
            return Err(Error::OrderTooSmall(vertices));
        }
        let modulus = vertices as i64;
        let mut has_diagonal = diagonal;
        let mut steps = Vec::with_capacity(raw_steps.len());
        for &raw in raw_steps {
            let r = raw.rem_euclid(modulus) as u64;
            if r == 0 {
                return Err(Error::ZeroStep {
                    step: raw,
                    modulus: vertices,
                });
            }
            let folded = r.min(vertices - r);
            if vertices % 2 == 0 && folded == vertices / 2 {
                if has_diagonal {
                    return Err(Error::DuplicateStep(folded));
                }
                has_diagonal = true;
            } else {
                steps.push(folded);
            }
        }
        steps.sort_unstable();
        if let Some(w) = steps.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateStep(w[0]));
        }
        if steps.is_empty() {
            return Err(Error::EmptySteps);
        }
        let order = if has_diagonal { vertices / 2 } else { vertices };
        Ok(CirculantSpec {
            order,
            steps,
            diagonal: has_diagonal,
        })
    }

    /// `n`: the vertex count for even specs, the half-order for diagonal ones.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn family(&self) -> Family {
        if self.diagonal {
            Family::Diagonal
        } else {
            Family::Even
        }
    }

    pub fn vertex_count(&self) -> u64 {
        if self.diagonal {
            2 * self.order
        } else {
            self.order
        }
    }

    pub fn largest_step(&self) -> u64 {
        *self.steps.last().expect("canonical specs have steps")
    }

    /// Sum of squared steps.
    pub fn q(&self) -> u64 {
        self.steps.iter().map(|s| s * s).sum()
    }

    /// Number of odd steps (the diagonal step is not counted).
    pub fn odd_step_count(&self) -> u64 {
        self.steps.iter().filter(|s| *s % 2 == 1).count() as u64
    }

    /// The step family this spec belongs to.
    pub fn step_family(&self) -> StepFamily {
        StepFamily {
            steps: self.steps.clone(),
            family: self.family(),
        }
    }

    /// `gcd(s_1, …, s_k, [n,] N)`: the number of connected components.
    pub fn component_count(&self) -> u64 {
        let mut d = self.vertex_count();
        if self.diagonal {
            d = gcd(d, self.order);
        }
        self.steps.iter().fold(d, |acc, &s| gcd(acc, s))
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn degree(&self) -> u64 {
        2 * self.steps.len() as u64 + u64::from(self.diagonal)
    }

    /// Exact Laplacian `D - A`.
    pub fn laplacian(&self) -> IntegerMatrix {
        let n = self.vertex_count() as usize;
        let mut m = IntegerMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, IBig::from(self.degree()));
            for &s in &self.steps {
                let s = s as usize;
                m.set(i, (i + s) % n, IBig::from(-1));
                m.set(i, (i + n - s) % n, IBig::from(-1));
            }
            if self.diagonal {
                m.set(i, (i + n / 2) % n, IBig::from(-1));
            }
        }
        m
    }

    /// Laplacian eigenvalue `λ_j`, `j` in `0..N`.
    pub fn eigenvalue(&self, j: u64) -> f64 {
        let n = self.vertex_count();
        let mut lambda: f64 = self
            .steps
            .iter()
            .map(|&s| {
                // 2 - 2cos(2πx) = 4 sin²(πx), with x reduced to keep the argument small
                let x = ((j % n) * s % n) as f64 / n as f64;
                4.0 * (std::f64::consts::PI * x).sin().powi(2)
            })
            .sum();
        if self.diagonal && j % 2 == 1 {
            lambda += 2.0;
        }
        lambda
    }

    /// The multiplier image `{r·s mod N}`, canonicalized. `r` must be a unit mod `N`.
    pub fn conjugate(&self, r: u64) -> Result<Self> {
        let n = self.vertex_count();
        if gcd(r % n, n) != 1 {
            return Err(Error::InvalidArgument(format!(
                "multiplier {r} is not a unit modulo {n}"
            )));
        }
        let mut raw: Vec<i64> = self
            .steps
            .iter()
            .map(|&s| ((r % n) * s % n) as i64)
            .collect();
        if self.diagonal {
            raw.push(self.order as i64);
        }
        Self::canonicalize(n, &raw, false)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}(", self.order)?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        if self.diagonal {
            f.write_str(";d")?;
        }
        f.write_str(")")
    }
}

impl FromStr for CirculantSpec {
    type Err = Error;

    /// Parses `C<n>(<s1>,<s2>,...)` with an optional trailing `;d`.
    fn from_str(input: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let body = input
            .trim()
            .strip_prefix('C')
            .ok_or_else(|| parse_err("expected leading `C`"))?;
        let open = body.find('(').ok_or_else(|| parse_err("missing `(`"))?;
        let inner = body[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| parse_err("missing trailing `)`"))?;
        let order: u64 = body[..open]
            .trim()
            .parse()
            .map_err(|_| parse_err("order is not a positive integer"))?;
        let (list, diagonal) = match inner.split_once(';') {
            Some((list, marker)) if marker.trim() == "d" => (list, true),
            Some(_) => return Err(parse_err("only `;d` may follow the step list")),
            None => (inner, false),
        };
        let raw = parse_step_list(list).map_err(|reason| parse_err(&reason))?;
        Self::canonicalize(order, &raw, diagonal)
    }
}

fn parse_step_list(list: &str) -> std::result::Result<Vec<i64>, String> {
    let list = list.trim();
    if list.is_empty() {
        return Err("empty step list".into());
    }
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{}` is not an integer step", t.trim()))
        })
        .collect()
}

/// A fixed step set swept over the order `n`: the sequence
/// `C_n(s_1,…,s_k)` or `C_{2n}(s_1,…,s_k,n)`.
///
/// Evaluated at an order where steps collide (`s_k >= n/2`, resp.
/// `s_k >= n`) the family denotes the multigraph with Laplacian
/// `L(T)`, `T` the cyclic shift; that is the object the closed forms count
/// and the one integer sequences such as `a(n)` are indexed on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFamily {
    steps: Vec<u64>,
    family: Family,
}

impl StepFamily {
    pub fn new(steps: &[u64], family: Family) -> Result<Self> {
        let mut steps = steps.to_vec();
        steps.sort_unstable();
        if steps.is_empty() {
            return Err(Error::EmptySteps);
        }
        if steps[0] == 0 {
            return Err(Error::ZeroStep {
                step: 0,
                modulus: 0,
            });
        }
        if let Some(w) = steps.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateStep(w[0]));
        }
        Ok(StepFamily { steps, family })
    }

    /// Parses a comma-separated step list such as `1,2,3`.
    pub fn parse(list: &str, family: Family) -> Result<Self> {
        let raw = parse_step_list(list).map_err(|reason| Error::Parse {
            input: list.to_string(),
            reason,
        })?;
        if raw.iter().any(|&s| s <= 0) {
            return Err(Error::Parse {
                input: list.to_string(),
                reason: "steps must be positive".into(),
            });
        }
        let steps: Vec<u64> = raw.into_iter().map(|s| s as u64).collect();
        Self::new(&steps, family)
    }

    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn largest_step(&self) -> u64 {
        *self.steps.last().unwrap()
    }

    /// `gcd(s_1, …, s_k)`.
    pub fn step_gcd(&self) -> u64 {
        self.steps.iter().fold(0, |acc, &s| gcd(acc, s))
    }

    pub fn q(&self) -> u64 {
        self.steps.iter().map(|s| s * s).sum()
    }

    pub fn odd_step_count(&self) -> u64 {
        self.steps.iter().filter(|s| *s % 2 == 1).count() as u64
    }

    /// The family with every step divided by the step gcd.
    pub fn reduced(&self) -> StepFamily {
        let d = self.step_gcd();
        StepFamily {
            steps: self.steps.iter().map(|s| s / d).collect(),
            family: self.family,
        }
    }

    pub fn vertex_count(&self, n: u64) -> u64 {
        match self.family {
            Family::Even => n,
            Family::Diagonal => 2 * n,
        }
    }

    /// Connectivity at order `n`; for the diagonal family this is
    /// `gcd(s_1,…,s_k,n) = 1`.
    pub fn is_connected_at(&self, n: u64) -> bool {
        n >= 1 && gcd(self.step_gcd(), n) == 1
    }

    /// Whether the member at order `n` is a simple circulant (no folded steps).
    pub fn is_simple_at(&self, n: u64) -> bool {
        match self.family {
            Family::Even => 2 * self.largest_step() < n,
            Family::Diagonal => self.largest_step() < n,
        }
    }

    /// Smallest order at which the member is a simple circulant.
    pub fn first_simple_order(&self) -> u64 {
        match self.family {
            Family::Even => 2 * self.largest_step() + 1,
            Family::Diagonal => self.largest_step() + 1,
        }
    }

    /// The canonical simple graph at order `n`.
    pub fn at(&self, n: u64) -> Result<CirculantSpec> {
        let raw: Vec<i64> = self.steps.iter().map(|&s| s as i64).collect();
        CirculantSpec::canonicalize(n, &raw, self.family == Family::Diagonal)
    }

    /// The Laplacian `L(T)` at order `n`, with multi-edges where steps collide.
    pub fn multigraph_laplacian(&self, n: u64) -> IntegerMatrix {
        let size = self.vertex_count(n) as usize;
        let mut m = IntegerMatrix::zeros(size);
        let mut bump = |i: usize, j: usize| {
            if i != j {
                m.add(i, j, -1);
                m.add(i, i, 1);
            }
        };
        for i in 0..size {
            for &s in &self.steps {
                let s = (s % size as u64) as usize;
                bump(i, (i + s) % size);
                bump(i, (i + size - s) % size);
            }
            if self.family == Family::Diagonal {
                bump(i, (i + size / 2) % size);
            }
        }
        m
    }

    /// Literal for the member at order `n` (not canonicalized).
    pub fn label_at(&self, n: u64) -> String {
        let list = self.list();
        match self.family {
            Family::Even => format!("C{n}({list})"),
            Family::Diagonal => format!("C{n}({list};d)"),
        }
    }

    /// The step list as `1,2,3`.
    pub fn list(&self) -> String {
        self.steps
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Dense square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<IBig>,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![IBig::ZERO; dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntegerMatrix {
            dim,
            entries: rows.iter().flatten().map(|&x| IBig::from(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &IBig {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: IBig) {
        self.entries[i * self.dim + j] = value;
    }

    fn add(&mut self, i: usize, j: usize, delta: i64) {
        let e = &mut self.entries[i * self.dim + j];
        *e += delta;
    }

    pub fn row(&self, i: usize) -> &[IBig] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rows_sum_to_zero(&self) -> bool {
        (0..self.dim).all(|i| self.row(i).iter().sum::<IBig>() == IBig::ZERO)
    }

    /// Copy with row `k` and column `k` removed.
    pub fn minor(&self, k: usize) -> IntegerMatrix {
        let dim = self.dim - 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in (0..self.dim).filter(|&i| i != k) {
            for j in (0..self.dim).filter(|&j| j != k) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix { dim, entries }
    }

    pub(crate) fn into_entries(self) -> Vec<IBig> {
        self.entries
    }
}
