//! Double Schur functions `S_λ(X, Y)`, as a ratio of alternants and as a
//! sum over semistandard tableaux, and the factorial Cauchy determinant
//! written through them.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cauchy::SequencePair;
use crate::error::{Error, Result};
use crate::exact::{det, falling_factorial, int, shifted_power, Matrix, Rational};
use crate::shapes::{Cell, Partition};

/// A semistandard filling of a straight shape with entries in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Rows must weakly increase, columns strictly increase, and the row
    /// lengths must form a partition.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Partition::new(rows.iter().map(Vec::len).collect())?;
        for (i, row) in rows.iter().enumerate() {
            if row.contains(&0) {
                return Err(Error::Parse("tableau entries start at 1".into()));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Parse(format!("row {} decreases", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(b, a)| b <= a) {
                return Err(Error::Parse(format!("column strictness fails in row {}", i + 1)));
            }
        }
        Ok(Tableau { rows })
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("validated")
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// `T(α)` for a 1-based cell.
    pub fn entry(&self, c: Cell) -> usize {
        self.rows[c.row - 1][c.col - 1]
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &e)| (Cell::new(i + 1, j + 1), e)))
    }
}

/// Calls `f` on every semistandard tableau of shape `λ` with entries `≤ n`,
/// filling row by row and pruning on column strictness.
pub fn for_each_tableau(lambda: &Partition, n: usize, mut f: impl FnMut(&Tableau)) {
    let mut t = Tableau { rows: lambda.parts().iter().map(|&l| vec![0; l]).collect() };
    fn fill(t: &mut Tableau, i: usize, j: usize, n: usize, f: &mut dyn FnMut(&Tableau)) {
        if i == t.rows.len() {
            f(t);
            return;
        }
        if j == t.rows[i].len() {
            return fill(t, i + 1, 0, n, f);
        }
        let left = if j > 0 { t.rows[i][j - 1] } else { 1 };
        let above = if i > 0 { t.rows[i - 1][j] + 1 } else { 1 };
        for e in left.max(above)..=n {
            t.rows[i][j] = e;
            fill(t, i, j + 1, n, f);
        }
    }
    fill(&mut t, 0, 0, n, &mut f);
}

pub fn tableaux(lambda: &Partition, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    for_each_tableau(lambda, n, |t| out.push(t.clone()));
    out
}

/// `∏_{i<j}(x_i − x_j)`.
pub fn vandermonde(x: &[Rational]) -> Rational {
    let mut d = Rational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            d *= &x[i] - &x[j];
        }
    }
    d
}

fn check_length(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::TooManyParts { len: lambda.len(), n });
    }
    Ok(())
}

/// Number of `y` entries either definition may touch.
pub fn y_needed(lambda: &Partition, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        lambda.first() + n - 1
    }
}

/// `det((x_i|Y)_{λ_j+n−j}) / Δ(X)` with `n = |x|`.
pub fn double_schur_det(lambda: &Partition, x: &[Rational], y: &[Rational]) -> Result<Rational> {
    let n = x.len();
    check_length(lambda, n)?;
    let needed = y_needed(lambda, n);
    if y.len() < needed {
        return Err(Error::InsufficientYSequence { needed, got: y.len() });
    }
    let delta = vandermonde(x);
    if delta.is_zero() {
        return Err(Error::RepeatedX);
    }
    let mut entries = Vec::with_capacity(n * n);
    for xi in x {
        for j in 0..n {
            entries.push(shifted_power(xi, y, lambda.part(j + 1) + n - 1 - j)?);
        }
    }
    Ok(det(&Matrix::new(n, n, entries)?)? / delta)
}

/// `Σ_T ∏_α (x_{T(α)} − y_{T(α)+τ(α)})` over tableaux with entries `≤ |x|`.
pub fn double_schur_comb(lambda: &Partition, x: &[Rational], y: &[Rational]) -> Result<Rational> {
    let n = x.len();
    check_length(lambda, n)?;
    let needed = y_needed(lambda, n);
    if y.len() < needed {
        return Err(Error::InsufficientYSequence { needed, got: y.len() });
    }
    let mut sum = Rational::zero();
    for_each_tableau(lambda, n, |t| sum += tableau_weight(t, x, y));
    Ok(sum)
}

/// `∏_α (x_{T(α)} − y_{T(α)+τ(α)})`.
pub fn tableau_weight(t: &Tableau, x: &[Rational], y: &[Rational]) -> Rational {
    t.cells().fold(Rational::one(), |acc, (c, e)| acc * tableau_factor(c, e, x, y))
}

fn tableau_factor(c: Cell, e: usize, x: &[Rational], y: &[Rational]) -> Rational {
    let k = (e as i64 + c.content()) as usize;
    &x[e - 1] - &y[k - 1]
}

/// The shape and points that turn `F(A, B)` into a double Schur function:
/// `λ_j = b_n − b_j + j − n`, `x_i = a_i − b_n + 1`, `y_j = 1 − j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialSubstitution {
    pub lambda: Partition,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    /// `∏_k (a_k)_{b_n}`.
    pub denominator: Rational,
}

impl FactorialSubstitution {
    /// Requires a factorial pair without zero entries, i.e. `a_n > b_n − 1`.
    pub fn new(pair: &SequencePair) -> Result<Self> {
        let n = pair.len();
        if n == 0 {
            return Ok(FactorialSubstitution {
                lambda: Partition::empty(),
                x: Vec::new(),
                y: Vec::new(),
                denominator: Rational::one(),
            });
        }
        if !pair.predicts_nonzero(n - 1, n - 1) {
            return Err(Error::HasZeroEntries);
        }
        let (a, b) = (pair.a(), pair.b());
        let bn = &b[n - 1];
        let bn_usize = bn.to_integer().try_into().expect("b_n is a small positive integer");
        let lambda = Partition::new(
            (0..n)
                .map(|j| (bn - &b[j] + int(j as i64 + 1 - n as i64)).to_integer().try_into().expect("λ_j ≥ 0"))
                .collect(),
        )?;
        let x = a.iter().map(|ai| ai - bn + int(1)).collect();
        let y = (1..=y_needed(&lambda, n)).map(|j| int(1 - j as i64)).collect();
        let denominator = a.iter().fold(Rational::one(), |acc, ak| acc * falling_factorial(ak, bn_usize));
        Ok(FactorialSubstitution { lambda, x, y, denominator })
    }

    /// Whether every tableau factor `x_{T(α)} − y_{T(α)+τ(α)}` is positive.
    pub fn factors_positive(&self) -> bool {
        let mut ok = true;
        for_each_tableau(&self.lambda, self.x.len(), |t| {
            ok &= t.cells().all(|(c, e)| tableau_factor(c, e, &self.x, &self.y) > Rational::zero());
        });
        ok
    }
}

/// `det F(A, B)` computed as `Δ(X) S_λ(X, Y) / ∏_k (a_k)_{b_n}`.
pub fn fc_det_via_double_schur(a: Vec<Rational>, b: Vec<Rational>) -> Result<Rational> {
    let pair = SequencePair::factorial(a, b)?;
    let sub = FactorialSubstitution::new(&pair)?;
    let s = double_schur_det(&sub.lambda, &sub.x, &sub.y)?;
    Ok(vandermonde(&sub.x) * s / sub.denominator)
}
