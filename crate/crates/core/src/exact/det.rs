//! Exact determinants.
//!
//! Rational matrices are lifted row by row to integers (each row times the
//! lcm of its denominators) and reduced with Bareiss' fraction-free
//! elimination. The elimination first runs in checked `i128` and falls back
//! to big integers on overflow.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{int, Matrix, Poly, Rational};
use crate::error::Result;

pub fn det(m: &Matrix<Rational>) -> Result<Rational> {
    let n = m.require_square()?;
    let mut scale = BigInt::one();
    let mut lifted = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        lifted.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        scale *= l;
    }
    Ok(Rational::new(det_integer(lifted, n), scale))
}

/// Determinant of an `n × n` integer matrix given row-major.
pub fn det_integer(entries: Vec<BigInt>, n: usize) -> BigInt {
    assert_eq!(entries.len(), n * n);
    let small: Option<Vec<i128>> = entries.iter().map(ToPrimitive::to_i128).collect();
    if let Some(mut small) = small {
        if let Some(d) = det_i128(&mut small, n) {
            return BigInt::from(d);
        }
    }
    bareiss_big(entries, n)
}

/// Bareiss elimination in place; `None` if an intermediate overflows.
pub(crate) fn det_i128(a: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(p)?.checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = x / prev;
            }
        }
        prev = p;
    }
    a[n * n - 1].checked_mul(sign)
}

/// [`det_i128`] in 64-bit arithmetic, for the many tiny determinants of the
/// verification campaigns.
pub(crate) fn det_i64(a: &mut [i64], n: usize) -> Option<i64> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(p)?.checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = x / prev;
            }
        }
        prev = p;
    }
    a[n * n - 1].checked_mul(sign)
}

fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let p = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let x = &a[i * n + j] * &p - &lead * &a[k * n + j];
                a[i * n + j] = x / &prev;
            }
        }
        prev = p;
    }
    let d = a.swap_remove(n * n - 1);
    if negate {
        -d
    } else {
        d
    }
}

/// Polynomial determinant by evaluation at `t = 0, 1, …, D` and
/// interpolation, where `D` bounds the degree of every term of the Leibniz
/// expansion (the smaller of the row-wise and column-wise degree sums).
pub fn det_poly(m: &Matrix<Poly>) -> Result<Poly> {
    let n = m.require_square()?;
    let deg = |i: usize, j: usize| m.get(i, j).degree();
    let bound = |by_row: bool| -> Option<usize> {
        (0..n)
            .map(|a| {
                (0..n).filter_map(|b| if by_row { deg(a, b) } else { deg(b, a) }).max()
            })
            .sum()
    };
    let Some(d) = bound(true).zip(bound(false)).map(|(r, c)| r.min(c)) else {
        // Some row or column is identically zero.
        return Ok(Poly::zero());
    };
    let values = (0..=d)
        .map(|t0| {
            let t0 = int(t0 as i64);
            det(&m.map(|p| p.eval(&t0)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::interpolate(&values))
}

/// Laplace expansion along the first row. Exponential; meant for small
/// matrices and cross-checks.
pub fn det_cofactor<T>(m: &Matrix<T>) -> Result<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    fn rec<T>(m: &Matrix<T>, row: usize, cols: &mut Vec<usize>) -> T
    where
        T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
    {
        if cols.is_empty() {
            return T::one();
        }
        let mut acc = T::zero();
        for k in 0..cols.len() {
            let c = cols.remove(k);
            let entry = m.get(row, c);
            if !entry.is_zero() {
                let term = entry.clone() * rec(m, row + 1, cols);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            cols.insert(k, c);
        }
        acc
    }
    let n = m.require_square()?;
    Ok(rec(m, 0, &mut (0..n).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::ratio;

    fn rat_matrix(rows: &[&[(i64, i64)]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect()).collect())
    }

    #[test]
    fn small_rational_determinants() {
        let m = rat_matrix(&[&[(1, 3), (1, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(det(&m).unwrap(), int(-1));
        let m = rat_matrix(&[&[(1, 3), (1, 2)], &[(1, 2), (1, 1)]]);
        assert_eq!(det(&m).unwrap(), ratio(1, 12));
        let id = Matrix::from_fn(5, 5, |i, j| int((i == j) as i64));
        assert_eq!(det(&id).unwrap(), int(1));
        assert_eq!(det(&Matrix::<Rational>::from_rows(vec![])).unwrap(), int(1));
    }

    #[test]
    fn not_square() {
        let m = Matrix::from_fn(2, 3, |_, _| int(1));
        assert_eq!(det(&m), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert!(det_cofactor(&m).is_err());
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(3), int(4)]]);
        assert_eq!(det(&m).unwrap(), int(-6));
        let singular = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(0), int(4)]]);
        assert_eq!(det(&singular).unwrap(), int(0));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = BigInt::from(10).pow(30);
        let entries = vec![big.clone(), BigInt::from(1), BigInt::from(1), big.clone()];
        assert_eq!(det_integer(entries, 2), &big * &big - 1);
    }

    #[test]
    fn polynomial_determinants() {
        let t = Poly::t();
        assert_eq!(det_poly(&Matrix::from_rows(vec![vec![t.clone()]])).unwrap(), t);
        let diag = Matrix::from_rows(vec![vec![t.clone(), Poly::zero()], vec![Poly::zero(), t.clone()]]);
        assert_eq!(det_poly(&diag).unwrap(), &t * &t);

        // Jacobi–Trudi matrix of (2,1): [[h2, h3], [h0, h1]].
        let h2 = Poly::from_coeffs(vec![int(0), ratio(1, 2), ratio(1, 2)]);
        let h3 = Poly::from_coeffs(vec![int(0), ratio(1, 3), ratio(1, 2), ratio(1, 6)]);
        let m = Matrix::from_rows(vec![vec![h2, h3], vec![Poly::one(), t.clone()]]);
        let expected = Poly::from_coeffs(vec![int(0), ratio(-1, 3), int(0), ratio(1, 3)]);
        assert_eq!(det_poly(&m).unwrap(), expected);
        assert_eq!(det_cofactor(&m).unwrap(), expected);
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = Matrix::from_rows(vec![vec![Poly::zero(), Poly::zero()], vec![Poly::t(), Poly::one()]]);
        assert_eq!(det_poly(&m).unwrap(), Poly::zero());
    }
}
