//! Restricted Cauchy, factorial Cauchy and inverse binomial matrices.
//!
//! All three are built from a strictly decreasing `A` and a strictly
//! increasing `B`. An entry vanishes exactly when `a_i` falls below `b_j`
//! (shifted by one in the factorial case), so the zeros always fill a
//! staircase in the lower right corner. The determinant is nonzero with sign
//! `(−1)^ω`, `ω` being the number of zero entries.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, det, falling_factorial, int, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// `c_ij = 1/(a_i − b_j)` if `a_i > b_j`.
    Restricted,
    /// `f_ij = 1/(a_i)_{b_j}` if `a_i > b_j − 1`.
    Factorial,
}

impl Mode {
    /// Shift `s` such that entry `(i, j)` is nonzero iff `a_i > b_j − s`.
    fn shift(self) -> Rational {
        match self {
            Mode::Restricted => Rational::zero(),
            Mode::Factorial => Rational::one(),
        }
    }
}

/// A validated pair `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequencePair {
    a: Vec<Rational>,
    b: Vec<Rational>,
    mode: Mode,
}

impl SequencePair {
    /// `A` strictly decreasing, `B` strictly increasing, `a_i ≠ b_j` and
    /// `a_i > b_{n+1−i}`.
    pub fn restricted(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        Self::validated(a, b, Mode::Restricted)
    }

    /// As [`SequencePair::restricted`] with every `b_j` replaced by
    /// `b_j − 1`; additionally the `b_j` must be positive integers.
    pub fn factorial(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        Self::validated(a, b, Mode::Factorial)
    }

    fn validated(a: Vec<Rational>, b: Vec<Rational>, mode: Mode) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
        }
        if a.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotMonotone { which: "A", expected: "decreasing" });
        }
        if b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotMonotone { which: "B", expected: "increasing" });
        }
        if mode == Mode::Factorial {
            if let Some(j) = b.iter().position(|x| !x.is_integer() || *x <= Rational::zero()) {
                return Err(Error::NotPositiveInteger { j: j + 1 });
            }
        }
        let shift = mode.shift();
        for (i, ai) in a.iter().enumerate() {
            if let Some(j) = b.iter().position(|bj| *ai == bj - &shift) {
                return Err(match mode {
                    Mode::Restricted => Error::CollisionAB { i: i + 1, j: j + 1 },
                    Mode::Factorial => Error::CollisionShifted { i: i + 1, j: j + 1 },
                });
            }
        }
        let n = a.len();
        for i in 0..n {
            let bj = &b[n - 1 - i];
            if a[i] <= bj - &shift {
                let condition = match mode {
                    Mode::Restricted => format!("a_{} = {} must exceed b_{} = {}", i + 1, a[i], n - i, bj),
                    Mode::Factorial => format!("a_{} = {} must exceed b_{} - 1 = {}", i + 1, a[i], n - i, bj - Rational::one()),
                };
                return Err(Error::AntiDiagonalViolation { i: i + 1, condition });
            }
        }
        Ok(SequencePair { a, b, mode })
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Whether entry `(i, j)` (0-based) is nonzero, read off the sequences.
    pub fn predicts_nonzero(&self, i: usize, j: usize) -> bool {
        self.a[i] > &self.b[j] - self.mode.shift()
    }

    /// First row `i ≥ 2` (1-based) with `a_i` not above `b_{n+2−i}` (shifted).
    pub fn reducible_at(&self) -> Option<usize> {
        let n = self.len();
        (2..=n).find(|&i| !self.predicts_nonzero(i - 1, n + 1 - i))
    }

    pub fn is_irreducible(&self) -> bool {
        self.reducible_at().is_none()
    }

    /// `A` without `a_i` and `B` without `b_j` (1-based), revalidated.
    pub fn delete(&self, i: usize, j: usize) -> Result<SequencePair> {
        let a = self.a.iter().enumerate().filter(|&(k, _)| k + 1 != i).map(|(_, x)| x.clone()).collect();
        let b = self.b.iter().enumerate().filter(|&(k, _)| k + 1 != j).map(|(_, x)| x.clone()).collect();
        Self::validated(a, b, self.mode)
    }
}

/// Determinant together with the zero count it was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDeterminant {
    pub value: Rational,
    pub omega: usize,
}

impl SignedDeterminant {
    pub fn sign(&self) -> i32 {
        exact::sign(&self.value)
    }

    /// `(−1)^ω`.
    pub fn predicted_sign(&self) -> i32 {
        if self.omega % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Common view of the structured matrices.
pub trait ZeroPattern {
    fn pair(&self) -> &SequencePair;
    fn entries(&self) -> &Matrix<Rational>;
}

/// Number of zero entries, counted on the entries themselves.
pub fn omega(m: &impl ZeroPattern) -> usize {
    m.entries().entries().iter().filter(|x| x.is_zero()).count()
}

pub fn is_irreducible(m: &impl ZeroPattern) -> bool {
    m.pair().is_irreducible()
}

/// A zero at `(i, j)` forces zeros at every `(i, j')`, `j' > j`, and every
/// `(i', j)`, `i' > i`.
pub fn is_staircase(m: &Matrix<Rational>) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            !m.get(i, j).is_zero()
                || ((j + 1..m.cols()).all(|k| m.get(i, k).is_zero())
                    && (i + 1..m.rows()).all(|k| m.get(k, j).is_zero()))
        })
    })
}

/// Checks the zero pattern against the sequences, then the sign law.
fn checked_det(m: &impl ZeroPattern, name: &str) -> Result<SignedDeterminant> {
    let (pair, entries) = (m.pair(), m.entries());
    let n = pair.len();
    for i in 0..n {
        for j in 0..n {
            if pair.predicts_nonzero(i, j) == entries.get(i, j).is_zero() {
                return Err(Error::TheoremViolation(format!(
                    "{name}: entry ({}, {}) disagrees with the predicted zero pattern",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if !is_staircase(entries) {
        return Err(Error::TheoremViolation(format!("{name}: zeros do not form a staircase")));
    }
    let d = SignedDeterminant { value: det(entries)?, omega: omega(m) };
    if d.sign() != d.predicted_sign() {
        return Err(Error::TheoremViolation(format!(
            "{name}: determinant {} with omega = {} has the wrong sign",
            d.value, d.omega
        )));
    }
    Ok(d)
}

/// `C(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedCauchyMatrix {
    pair: SequencePair,
    entries: Matrix<Rational>,
}

impl ZeroPattern for RestrictedCauchyMatrix {
    fn pair(&self) -> &SequencePair {
        &self.pair
    }

    fn entries(&self) -> &Matrix<Rational> {
        &self.entries
    }
}

pub fn restricted_cauchy(a: Vec<Rational>, b: Vec<Rational>) -> Result<RestrictedCauchyMatrix> {
    RestrictedCauchyMatrix::from_pair(SequencePair::restricted(a, b)?)
}

impl RestrictedCauchyMatrix {
    pub fn from_pair(pair: SequencePair) -> Result<Self> {
        if pair.mode() != Mode::Restricted {
            return Err(Error::Parse("expected a restricted-mode pair".into()));
        }
        let n = pair.len();
        let entries = Matrix::from_fn(n, n, |i, j| {
            let (a, b) = (&pair.a[i], &pair.b[j]);
            if a > b {
                (a - b).recip()
            } else {
                Rational::zero()
            }
        });
        Ok(RestrictedCauchyMatrix { pair, entries })
    }
}

/// Exact determinant of `C(A, B)` with its sign checked against `(−1)^ω`.
pub fn rc_det(m: &RestrictedCauchyMatrix) -> Result<SignedDeterminant> {
    checked_det(m, "restricted Cauchy matrix")
}

/// `∏_{i<j}(a_i − a_j) ∏_{i<j}(b_j − b_i) / ∏_{i,j}(a_i − b_j)`, valid when
/// every `a_i > b_j`.
pub fn cauchy_product_formula(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
    }
    if a.iter().any(|x| b.iter().any(|y| x <= y)) {
        return Err(Error::HasZeroEntries);
    }
    let n = a.len();
    let mut num = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (&a[i] - &a[j]) * (&b[j] - &b[i]);
        }
    }
    let den = a.iter().fold(Rational::one(), |acc, x| b.iter().fold(acc, |acc, y| acc * (x - y)));
    Ok(num / den)
}

/// Sequences of the minor `M_ij` (1-based) of an irreducible `C(A, B)`.
///
/// The result is revalidated; a failure would contradict the minor lemma
/// and is reported as [`Error::TheoremViolation`].
pub fn minor_sequences(m: &RestrictedCauchyMatrix, i: usize, j: usize) -> Result<SequencePair> {
    if let Some(row) = m.pair.reducible_at() {
        return Err(Error::NotIrreducible { i: row });
    }
    m.pair.delete(i, j).map_err(|e| Error::TheoremViolation(format!("minor ({i}, {j}) is not restricted Cauchy: {e}")))
}

/// `F(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialCauchyMatrix {
    pair: SequencePair,
    entries: Matrix<Rational>,
}

impl ZeroPattern for FactorialCauchyMatrix {
    fn pair(&self) -> &SequencePair {
        &self.pair
    }

    fn entries(&self) -> &Matrix<Rational> {
        &self.entries
    }
}

fn b_as_usize(b: &Rational) -> usize {
    num_traits::ToPrimitive::to_usize(&b.to_integer()).expect("validated positive integer")
}

pub fn factorial_cauchy(a: Vec<Rational>, b: Vec<Rational>) -> Result<FactorialCauchyMatrix> {
    let pair = SequencePair::factorial(a, b)?;
    let n = pair.len();
    let entries = Matrix::from_fn(n, n, |i, j| {
        if pair.predicts_nonzero(i, j) {
            falling_factorial(&pair.a[i], b_as_usize(&pair.b[j])).recip()
        } else {
            Rational::zero()
        }
    });
    Ok(FactorialCauchyMatrix { pair, entries })
}

/// Exact determinant of `F(A, B)` with its sign checked against `(−1)^ω`.
pub fn fc_det(m: &FactorialCauchyMatrix) -> Result<SignedDeterminant> {
    checked_det(m, "factorial Cauchy matrix")
}

/// `R(A, B)` with entries `1/C(a_i, b_j)` or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseBinomialMatrix {
    pair: SequencePair,
    entries: Matrix<Rational>,
    /// `det R(A, B)`, computed from the entries above.
    pub det: SignedDeterminant,
    /// `det F(A, B)` of the same pair.
    pub factorial_det: Rational,
}

impl ZeroPattern for InverseBinomialMatrix {
    fn pair(&self) -> &SequencePair {
        &self.pair
    }

    fn entries(&self) -> &Matrix<Rational> {
        &self.entries
    }
}

/// Builds `R(A, B)` and checks `det R = det F · ∏ b_j!` and the sign law.
pub fn inverse_binomial(a: &[u64], b: &[u64]) -> Result<InverseBinomialMatrix> {
    if let Some(i) = a.iter().position(|&x| x == 0) {
        return Err(Error::NotPositiveIntegerA { i: i + 1 });
    }
    let to_rat = |v: &[u64]| v.iter().map(|&x| int(x as i64)).collect::<Vec<_>>();
    let f = factorial_cauchy(to_rat(a), to_rat(b))?;
    let factorial_det = fc_det(&f)?.value;
    let n = a.len();
    let entries = Matrix::from_fn(n, n, |i, j| {
        if a[i] >= b[j] {
            Rational::from_integer(exact::binomial(a[i], b[j])).recip()
        } else {
            Rational::zero()
        }
    });
    let mut m = InverseBinomialMatrix {
        pair: f.pair,
        entries,
        det: SignedDeterminant { value: Rational::zero(), omega: 0 },
        factorial_det,
    };
    m.det = checked_det(&m, "inverse binomial matrix")?;
    let scale = b.iter().fold(BigInt::one(), |acc, &x| acc * exact::factorial(x));
    if m.det.value != &m.factorial_det * Rational::from_integer(scale) {
        return Err(Error::TheoremViolation(format!(
            "det R = {} differs from det F * prod b_j! = {} * prod b_j!",
            m.det.value, m.factorial_det
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn rows(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    }

    #[test]
    fn restricted_construction() {
        let m = restricted_cauchy(ints(&[3, 1]), ints(&[0, 2])).unwrap();
        assert_eq!(rows(m.entries()), vec![vec![ratio(1, 3), int(1)], vec![int(1), int(0)]]);
        assert_eq!(omega(&m), 1);
        assert!(!is_irreducible(&m));
        let d = rc_det(&m).unwrap();
        assert_eq!(d.value, int(-1));
        assert_eq!(d.sign(), -1);

        let c = restricted_cauchy(ints(&[2, 1]), ints(&[-1, 0])).unwrap();
        assert_eq!(rows(c.entries()), vec![vec![ratio(1, 3), ratio(1, 2)], vec![ratio(1, 2), int(1)]]);
        assert_eq!(omega(&c), 0);
        assert!(is_irreducible(&c));
        assert_eq!(rc_det(&c).unwrap().value, ratio(1, 12));
        assert_eq!(cauchy_product_formula(c.pair().a(), c.pair().b()).unwrap(), ratio(1, 12));
    }

    #[test]
    fn restricted_validation() {
        assert!(matches!(
            restricted_cauchy(ints(&[1]), ints(&[2])),
            Err(Error::AntiDiagonalViolation { i: 1, .. })
        ));
        assert_eq!(restricted_cauchy(ints(&[3, 2]), ints(&[0, 2])), Err(Error::CollisionAB { i: 2, j: 2 }));
        assert!(matches!(restricted_cauchy(ints(&[1, 3]), ints(&[0, 2])), Err(Error::NotMonotone { which: "A", .. })));
        assert!(matches!(restricted_cauchy(ints(&[3, 1]), ints(&[2, 0])), Err(Error::NotMonotone { which: "B", .. })));
        assert!(matches!(restricted_cauchy(ints(&[3]), ints(&[0, 2])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn one_by_one() {
        let m = restricted_cauchy(vec![ratio(7, 2)], vec![ratio(1, 3)]).unwrap();
        assert!(is_irreducible(&m));
        assert_eq!(rc_det(&m).unwrap().value, ratio(6, 19));
        assert_eq!(cauchy_product_formula(&[ratio(7, 2)], &[ratio(1, 3)]).unwrap(), ratio(6, 19));
    }

    #[test]
    fn reducible_three_by_three() {
        let m = restricted_cauchy(vec![int(5), int(3), ratio(1, 2)], ints(&[0, 2, 4])).unwrap();
        assert_eq!(omega(&m), 3);
        assert_eq!(m.pair().reducible_at(), Some(2));
        assert_eq!(minor_sequences(&m, 1, 1), Err(Error::NotIrreducible { i: 2 }));
        assert_eq!(rc_det(&m).unwrap().value, int(-2));
    }

    #[test]
    fn product_formula_needs_full_matrix() {
        assert_eq!(cauchy_product_formula(&ints(&[3, 1]), &ints(&[0, 2])), Err(Error::HasZeroEntries));
    }

    #[test]
    fn minors_of_irreducible_matrix() {
        let m = restricted_cauchy(ints(&[6, 5, 3]), ints(&[0, 2, 4])).unwrap();
        assert!(is_irreducible(&m));
        assert_eq!(omega(&m), 1);
        let p = minor_sequences(&m, 1, 1).unwrap();
        assert_eq!((p.a(), p.b()), (&ints(&[5, 3])[..], &ints(&[2, 4])[..]));
        for i in 1..=3 {
            for j in 1..=3 {
                let minor = RestrictedCauchyMatrix::from_pair(minor_sequences(&m, i, j).unwrap()).unwrap();
                assert_eq!(minor.entries(), &m.entries().minor(i - 1, j - 1));
                rc_det(&minor).unwrap();
            }
        }
        let c = restricted_cauchy(ints(&[2, 1]), ints(&[-1, 0])).unwrap();
        let p = minor_sequences(&c, 2, 2).unwrap();
        assert_eq!((p.a(), p.b()), (&ints(&[2])[..], &ints(&[-1])[..]));
    }

    #[test]
    fn factorial_matrices() {
        let m = factorial_cauchy(ints(&[4, 2]), ints(&[1, 2])).unwrap();
        assert_eq!(rows(m.entries()), vec![vec![ratio(1, 4), ratio(1, 12)], vec![ratio(1, 2), ratio(1, 2)]]);
        assert_eq!(fc_det(&m).unwrap(), SignedDeterminant { value: ratio(1, 12), omega: 0 });

        let m = factorial_cauchy(ints(&[4, 2]), ints(&[1, 4])).unwrap();
        assert_eq!(rows(m.entries()), vec![vec![ratio(1, 4), ratio(1, 24)], vec![ratio(1, 2), int(0)]]);
        assert_eq!(fc_det(&m).unwrap(), SignedDeterminant { value: ratio(-1, 48), omega: 1 });

        let m = factorial_cauchy(ints(&[2]), ints(&[1])).unwrap();
        assert_eq!(fc_det(&m).unwrap().value, ratio(1, 2));
    }

    #[test]
    fn factorial_validation() {
        assert_eq!(factorial_cauchy(ints(&[4, 1]), ints(&[1, 2])), Err(Error::CollisionShifted { i: 2, j: 2 }));
        assert_eq!(factorial_cauchy(vec![int(4), int(2)], vec![ratio(1, 2), int(2)]), Err(Error::NotPositiveInteger { j: 1 }));
        assert!(matches!(factorial_cauchy(ints(&[1]), ints(&[3])), Err(Error::AntiDiagonalViolation { .. })));
        // Non-integer A is allowed.
        let m = factorial_cauchy(vec![ratio(9, 2), ratio(3, 2)], ints(&[1, 3])).unwrap();
        assert_eq!(omega(&m), 1);
        assert!(fc_det(&m).unwrap().sign() < 0);
    }

    #[test]
    fn inverse_binomial_matrices() {
        let r = inverse_binomial(&[4, 2], &[1, 2]).unwrap();
        assert_eq!(rows(r.entries()), vec![vec![ratio(1, 4), ratio(1, 6)], vec![ratio(1, 2), int(1)]]);
        assert_eq!(r.det.value, ratio(1, 6));
        assert_eq!(r.factorial_det, ratio(1, 12));

        let r = inverse_binomial(&[3], &[2]).unwrap();
        assert_eq!(rows(r.entries()), vec![vec![ratio(1, 3)]]);

        let r = inverse_binomial(&[4, 2], &[1, 4]).unwrap();
        assert!(r.entries().get(1, 1).is_zero());
        assert_eq!(r.det.value, ratio(-1, 2));
        assert_eq!(omega(&r), 1);

        assert_eq!(inverse_binomial(&[0], &[1]), Err(Error::NotPositiveIntegerA { i: 1 }));
    }

    #[test]
    fn staircase_detection() {
        let ok = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(0)]]);
        assert!(is_staircase(&ok));
        let bad = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]);
        assert!(!is_staircase(&bad));
    }
}
