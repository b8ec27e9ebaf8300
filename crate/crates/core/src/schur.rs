//! Principal specialization `s_{λ/μ}(1^t)` and the zrank.
//!
//! The specialization is taken entrywise in the Jacobi–Trudi matrix,
//! `h_k(1^t) = C(t+k−1, k)`, before the determinant. Since `s_{λ/μ}(1^m)`
//! is an integer for every integer `m ≥ 0`, the polynomial is recovered from
//! integer determinants at `t = 0, …, |λ/μ|`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exact::{det_i128, det_integer, int, Matrix, Poly, Rational};
use crate::rank::{jt_matrix, BorderStrip, Step};
use crate::shapes::{make_skew, Cell, SkewShape};

/// `h_k(1^t)` as a polynomial in `t`.
pub fn h_spec(k: i64) -> Poly {
    if k < 0 {
        return Poly::zero();
    }
    let mut p = Poly::constant(int(1));
    let mut fact = int(1);
    for i in 0..k {
        p = &p * &Poly::linear(int(i));
        fact *= int(i + 1);
    }
    p.scale(&(Rational::from_integer(1.into()) / fact))
}

/// `h_k(1^t)` at a nonnegative integer `t`, if it fits in an `i128`.
fn h_value_small(k: i64, t: u64) -> Option<i128> {
    if k < 0 {
        return Some(0);
    }
    if k == 0 {
        return Some(1);
    }
    if t == 0 {
        return Some(0);
    }
    // C(t+k−1, k), accumulated so every partial product is itself binomial.
    let n = (t + k as u64 - 1) as i128;
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn h_value(k: i64, t: u64) -> BigInt {
    match h_value_small(k, t) {
        Some(v) => v.into(),
        None => crate::exact::binomial(t + k as u64 - 1, k as u64),
    }
}

/// The Jacobi–Trudi matrix with every `h_k` specialized at `1^t`.
pub fn jt_poly_matrix(s: &SkewShape) -> Matrix<Poly> {
    jt_matrix(s).subscripts().map(|&k| h_spec(k))
}

/// `s_{λ/μ}(1^m)` for `m = 0, …, max_t`.
pub fn skew_schur_values(s: &SkewShape, max_t: u64) -> Vec<BigInt> {
    let jt = jt_matrix(s);
    let n = jt.order();
    (0..=max_t)
        .map(|t| {
            let small: Option<Vec<i128>> = jt.subscripts().entries().iter().map(|&k| h_value_small(k, t)).collect();
            if let Some(v) = small.and_then(|mut m| det_i128(&mut m, n)) {
                return BigInt::from(v);
            }
            det_integer(jt.subscripts().entries().iter().map(|&k| h_value(k, t)).collect(), n)
        })
        .collect()
}

/// `s_{λ/μ}(1^t)`; its degree is `|λ/μ|`.
pub fn skew_schur_spec(s: &SkewShape) -> Poly {
    let values: Vec<Rational> =
        skew_schur_values(s, s.size() as u64).into_iter().map(Rational::from_integer).collect();
    Poly::interpolate(&values)
}

/// Exponent of the largest power of `t` dividing `s_{λ/μ}(1^t)`.
pub fn zrank(s: &SkewShape) -> usize {
    skew_schur_spec(s).valuation().expect("s_{λ/μ}(1^t) is a nonzero polynomial")
}

/// The basic skew shape whose diagram is a translate of `r`.
pub fn ribbon_to_skew(r: &BorderStrip) -> SkewShape {
    let top = r.end().row;
    let left = r.start().col;
    let rows = r.height() + 1;
    let mut outer = vec![0; rows];
    let mut inner = vec![usize::MAX; rows];
    for c in r.cells() {
        let i = c.row - top;
        let j = c.col - left + 1;
        outer[i] = outer[i].max(j);
        inner[i] = inner[i].min(j - 1);
    }
    let s = make_skew(&outer, &inner).expect("a ribbon is a skew shape");
    debug_assert!(s.normalization().is_identity());
    s
}

/// Ribbon with `len` cells whose `i`-th step is up iff bit `i` of `bits` is set.
pub fn ribbon_from_bits(len: usize, bits: u64) -> BorderStrip {
    assert!(len >= 1);
    let steps: Vec<Step> =
        (0..len - 1).map(|i| if bits >> i & 1 == 1 { Step::Up } else { Step::Right }).collect();
    let ups = steps.iter().filter(|&&s| s == Step::Up).count();
    BorderStrip::from_steps(Cell::new(ups + 1, 1), &steps).expect("stays inside the first quadrant")
}

/// Longest ribbon kept in the value table.
pub(crate) const RIBBON_TABLE_LEN: usize = 12;
/// Largest `t` kept in the value table.
pub(crate) const RIBBON_TABLE_T: usize = 12;

/// `s_ribbon(1^t)` for every ribbon of length `≤ RIBBON_TABLE_LEN` and
/// `t ≤ RIBBON_TABLE_T`, indexed by `2^(len−1) − 1 + bits`.
fn ribbon_table() -> &'static [[i64; RIBBON_TABLE_T + 1]] {
    static TABLE: OnceLock<Vec<[i64; RIBBON_TABLE_T + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(1 << RIBBON_TABLE_LEN);
        for len in 1..=RIBBON_TABLE_LEN {
            for bits in 0..1u64 << (len - 1) {
                let s = ribbon_to_skew(&ribbon_from_bits(len, bits));
                let mut row = [0i64; RIBBON_TABLE_T + 1];
                for (t, v) in skew_schur_values(&s, RIBBON_TABLE_T as u64).into_iter().enumerate() {
                    row[t] = v.to_i64().expect("ribbon values fit in i64");
                }
                out.push(row);
            }
        }
        out
    })
}

/// All tabulated values `s_ribbon(1^t)`, `t ≤ RIBBON_TABLE_T`, of one ribbon.
pub(crate) fn ribbon_row(len: usize, bits: u64) -> Option<&'static [i64; RIBBON_TABLE_T + 1]> {
    (len <= RIBBON_TABLE_LEN).then(|| &ribbon_table()[(1usize << (len - 1)) - 1 + bits as usize])
}

/// `s_ribbon(1^t)` for the ribbon with `len` cells and step bits `bits`.
pub(crate) fn ribbon_value(len: usize, bits: u64, t: usize) -> i128 {
    if len <= RIBBON_TABLE_LEN && t <= RIBBON_TABLE_T {
        return ribbon_table()[(1usize << (len - 1)) - 1 + bits as usize][t] as i128;
    }
    let s = ribbon_to_skew(&ribbon_from_bits(len, bits));
    let v = skew_schur_values(&s, t as u64).pop().expect("at least one value");
    v.to_i128().expect("ribbon value fits in i128")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det_poly, ratio};
    use crate::rank::rank_diagonal;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn complete_symmetric_specialisations() {
        assert_eq!(h_spec(1), Poly::t());
        assert_eq!(h_spec(0), Poly::constant(int(1)));
        assert_eq!(h_spec(2), Poly::from_coeffs(vec![int(0), ratio(1, 2), ratio(1, 2)]));
        assert_eq!(h_spec(-1), Poly::zero());
        for k in 0..6 {
            for t in 0..6 {
                assert_eq!(Rational::from_integer(h_value(k, t)), h_spec(k).eval(&int(t as i64)));
            }
        }
    }

    #[test]
    fn small_specialisations() {
        assert_eq!(skew_schur_spec(&shape("1")), Poly::t());
        let hook = Poly::from_coeffs(vec![int(0), ratio(-1, 3), int(0), ratio(1, 3)]);
        assert_eq!(skew_schur_spec(&shape("2,1")), hook);
        assert_eq!(zrank(&shape("2,1")), 1);
        assert_eq!(zrank(&shape("1")), 1);
    }

    #[test]
    fn figure_one_specialisation() {
        let s = shape("6,5,5,3/2,1,1");
        let f = skew_schur_spec(&s);
        assert_eq!(f.degree(), Some(15));
        assert_eq!(f.valuation(), Some(3));
        assert_eq!(zrank(&s), rank_diagonal(&s));
    }

    #[test]
    fn agrees_with_polynomial_determinant() {
        for s in ["3,2/1", "4,2,1/1", "2,2", "3,3,1/2"] {
            let s = shape(s);
            assert_eq!(det_poly(&jt_poly_matrix(&s)).unwrap(), skew_schur_spec(&s), "{s}");
        }
    }

    #[test]
    fn ribbons_to_shapes() {
        let horiz = BorderStrip::from_steps(Cell::new(5, 4), &[Step::Right, Step::Right]).unwrap();
        assert_eq!(ribbon_to_skew(&horiz).to_string(), "3");
        let vert = BorderStrip::from_steps(Cell::new(3, 3), &[Step::Up]).unwrap();
        assert_eq!(ribbon_to_skew(&vert).to_string(), "1,1");
        let zig = BorderStrip::new(vec![Cell::new(2, 1), Cell::new(2, 2), Cell::new(1, 2), Cell::new(1, 3)]).unwrap();
        assert_eq!(ribbon_to_skew(&zig).to_string(), "3,2/1");
    }

    #[test]
    fn ribbon_table_matches_direct_evaluation() {
        for (len, bits) in [(1, 0), (3, 0b10), (6, 0b10110), (12, 0b101_0011_0101)] {
            let s = ribbon_to_skew(&ribbon_from_bits(len, bits));
            let direct = skew_schur_values(&s, 12);
            for (t, v) in direct.iter().enumerate() {
                assert_eq!(BigInt::from(ribbon_value(len, bits, t)), *v);
            }
        }
        assert_eq!(ribbon_value(13, 0, 2), 14);
    }
}
