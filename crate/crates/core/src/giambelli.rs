//! Outside decompositions, their Giambelli-type (Hamel–Goulden) matrices,
//! and the content multisets `P` and `Q` of border strip decompositions.
//!
//! An outside decomposition is determined by a direction, up or right, for
//! each nonempty diagonal but the last. Every cell is joined to its
//! neighbor in its diagonal's direction, and the maximal chains are the
//! strips. The same word, read as a path, is the cutting strip `φ`: the
//! matrix entry for rows `p` and columns `q` is the piece of `φ` running
//! from diagonal `τ(p)` to diagonal `τ(q)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cauchy::{omega, rc_det, restricted_cauchy, RestrictedCauchyMatrix};
use crate::error::{Error, Result};
use crate::exact::{det, det_i128, det_i64, det_integer, int, Matrix, Poly, Rational};
use crate::rank::{parse_steps, steps_to_string, BorderStrip, SearchBounds, Step, StripDecomposition};
use crate::schur::{ribbon_from_bits, ribbon_row, ribbon_value, RIBBON_TABLE_T};
use crate::shapes::{CellIndex, SkewShape};

/// The path `φ` with one cell per nonempty diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuttingStrip {
    /// Contents of the nonempty diagonals, increasing.
    contents: Vec<i64>,
    directions: Vec<Step>,
    phi: BorderStrip,
}

impl CuttingStrip {
    pub fn new(contents: Vec<i64>, directions: Vec<Step>) -> Result<Self> {
        let k = contents.len();
        if k == 0 {
            return Err(Error::Parse("a cutting strip needs at least one diagonal".into()));
        }
        if directions.len() != k - 1 {
            return Err(Error::WordLength { expected: k - 1, got: directions.len() });
        }
        let bits = directions.iter().enumerate().fold(0u64, |w, (i, s)| w | ((*s == Step::Up) as u64) << i);
        Ok(CuttingStrip { phi: ribbon_from_bits(k, bits), contents, directions })
    }

    pub fn contents(&self) -> &[i64] {
        &self.contents
    }

    pub fn directions(&self) -> &[Step] {
        &self.directions
    }

    pub fn word(&self) -> String {
        steps_to_string(&self.directions)
    }

    pub fn phi(&self) -> &BorderStrip {
        &self.phi
    }

    pub fn index_of(&self, content: i64) -> Option<usize> {
        self.contents.binary_search(&content).ok()
    }

    fn bits(&self) -> u64 {
        self.directions.iter().enumerate().fold(0, |w, (i, s)| w | ((*s == Step::Up) as u64) << i)
    }

    /// `[α, β]`: the cells of `φ` on diagonals `α` through `β`.
    pub fn segment(&self, alpha: i64, beta: i64) -> Option<BorderStrip> {
        let (a, b) = (self.index_of(alpha)?, self.index_of(beta)?);
        (a <= b).then(|| BorderStrip::new(self.phi.cells()[a..=b].to_vec()).expect("pieces of a strip are strips"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideDecomposition {
    shape: SkewShape,
    /// Ordered by decreasing content of the starting cell.
    strips: Vec<BorderStrip>,
    cutting: CuttingStrip,
}

impl OutsideDecomposition {
    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn strips(&self) -> &[BorderStrip] {
        &self.strips
    }

    pub fn cutting(&self) -> &CuttingStrip {
        &self.cutting
    }

    pub fn len(&self) -> usize {
        self.strips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }

    /// `τ(p(θ_i))`, decreasing.
    pub fn p_contents(&self) -> Vec<i64> {
        self.strips.iter().map(|s| s.start().content()).collect()
    }

    /// `τ(q(θ_j))`, in strip order.
    pub fn q_contents(&self) -> Vec<i64> {
        self.strips.iter().map(|s| s.end().content()).collect()
    }

    pub fn as_strip_decomposition(&self) -> StripDecomposition {
        StripDecomposition::new(&self.shape, self.strips.clone()).expect("validated on construction")
    }
}

const NONE: usize = usize::MAX;

/// Precomputed data for building outside decompositions of one shape.
pub(crate) struct Cutter {
    shape: SkewShape,
    index: CellIndex,
    contents: Vec<i64>,
    /// Diagonal number of each cell in the dense index.
    diag_of: Vec<usize>,
    up: Vec<usize>,
    right: Vec<usize>,
    /// Cells on the left or bottom perimeter, and on the right or top one.
    start_ok: Vec<bool>,
    end_ok: Vec<bool>,
}

impl Cutter {
    pub(crate) fn new(s: &SkewShape) -> Self {
        let index = CellIndex::new(s);
        let contents: Vec<i64> = s.diagonals().iter().map(|d| d.content).collect();
        let pos: HashMap<i64, usize> = contents.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = index.len();
        let diag_of = (0..n).map(|i| pos[&index.cell(i).content()]).collect();
        let up = (0..n).map(|i| index.up(i).unwrap_or(NONE)).collect();
        let right = (0..n).map(|i| index.right(i).unwrap_or(NONE)).collect();
        let has = |r: usize, c: usize| r >= 1 && c >= 1 && s.contains(crate::Cell::new(r, c));
        let start_ok = (0..n)
            .map(|i| {
                let c = index.cell(i);
                !has(c.row, c.col - 1) || !has(c.row + 1, c.col)
            })
            .collect();
        let end_ok = (0..n)
            .map(|i| {
                let c = index.cell(i);
                !has(c.row, c.col + 1) || !has(c.row - 1, c.col)
            })
            .collect();
        Cutter { shape: s.clone(), index, contents, diag_of, up, right, start_ok, end_ok }
    }

    /// Endpoint data of the decomposition cut by `word`, checked against the
    /// outside decomposition properties without materializing the strips.
    pub(crate) fn tags(&self, word: u64) -> Result<CutTags> {
        let n = self.index.len();
        let k = self.contents.len();
        let mut next = vec![NONE; n];
        let mut has_pred = vec![false; n];
        for i in 0..n {
            let d = self.diag_of[i];
            if d + 1 == k {
                continue;
            }
            let j = if word >> d & 1 == 1 { self.up[i] } else { self.right[i] };
            if j != NONE {
                next[i] = j;
                has_pred[j] = true;
            }
        }
        let bad = |msg: String| Err(Error::ReconstructionInvalid(msg));
        let mut ends = Vec::new();
        let (mut pmask, mut qmask, mut covered) = (0u64, 0u64, 0usize);
        for start in (0..n).filter(|&i| !has_pred[i]) {
            let mut at = start;
            covered += 1;
            while next[at] != NONE {
                at = next[at];
                covered += 1;
            }
            if !self.start_ok[start] || !self.end_ok[at] {
                return bad(format!("strip from {} to {} is not outside", self.index.cell(start), self.index.cell(at)));
            }
            let (dp, dq) = (self.diag_of[start], self.diag_of[at]);
            if pmask >> dp & 1 == 1 || qmask >> dq & 1 == 1 {
                return bad("two strips share an end diagonal".into());
            }
            pmask |= 1 << dp;
            qmask |= 1 << dq;
            ends.push((dp, dq));
        }
        if covered != n {
            return bad(format!("strips cover {covered} of {n} cells"));
        }
        ends.sort_by_key(|e| std::cmp::Reverse(e.0));
        Ok(CutTags {
            word,
            p: ends.iter().map(|e| self.contents[e.0]).collect(),
            q: ends.iter().map(|e| self.contents[e.1]).collect(),
            ip: ends.iter().map(|e| e.0).collect(),
            iq: ends.iter().map(|e| e.1).collect(),
        })
    }

    pub(crate) fn diagonals(&self) -> usize {
        self.contents.len()
    }

    /// Strips as chains of dense cell indices; bit `i` of `word` set means
    /// diagonal `i` points up.
    fn chains(&self, word: u64) -> Vec<Vec<usize>> {
        let n = self.index.len();
        let mut next = vec![usize::MAX; n];
        let mut has_pred = vec![false; n];
        for i in 0..n {
            let d = self.diag_of[i];
            if d + 1 == self.contents.len() {
                continue;
            }
            let to = if word >> d & 1 == 1 { self.index.up(i) } else { self.index.right(i) };
            if let Some(j) = to {
                next[i] = j;
                has_pred[j] = true;
            }
        }
        let mut out = Vec::new();
        for start in (0..n).filter(|&i| !has_pred[i]) {
            let mut chain = vec![start];
            let mut at = start;
            while next[at] != usize::MAX {
                at = next[at];
                chain.push(at);
            }
            out.push(chain);
        }
        out
    }

    pub(crate) fn decompose(&self, word: u64) -> Result<OutsideDecomposition> {
        let k = self.contents.len();
        let directions = (0..k.saturating_sub(1)).map(|i| if word >> i & 1 == 1 { Step::Up } else { Step::Right }).collect();
        let cutting = CuttingStrip::new(self.contents.clone(), directions)?;
        let mut strips = Vec::new();
        for chain in self.chains(word) {
            let cells = chain.iter().map(|&i| self.index.cell(i)).collect();
            strips.push(BorderStrip::new(cells).map_err(|e| Error::ReconstructionInvalid(e.to_string()))?);
        }
        strips.sort_by_key(|s| std::cmp::Reverse(s.start().content()));
        let d = OutsideDecomposition { shape: self.shape.clone(), strips, cutting };
        validate(&d)?;
        Ok(d)
    }
}

/// Strip endpoints of one cut, ordered by decreasing start content: contents
/// `p`, `q` and their positions `ip`, `iq` along the cutting strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CutTags {
    pub(crate) word: u64,
    pub(crate) p: Vec<i64>,
    pub(crate) q: Vec<i64>,
    pub(crate) ip: Vec<usize>,
    pub(crate) iq: Vec<usize>,
}

fn lcm_all(v: impl Iterator<Item = i128>) -> i128 {
    v.fold(1, |acc, x| num_integer::Integer::lcm(&acc, &x))
}

/// `det` of `num/den` entries, rows scaled to integers.
fn det_fractions(entries: &[(i128, i128)], m: usize) -> Rational {
    let scales: Vec<i128> = (0..m).map(|r| lcm_all(entries[r * m..(r + 1) * m].iter().map(|e| e.1))).collect();
    let mut ints: Vec<i128> = entries.iter().enumerate().map(|(k, &(a, b))| a * (scales[k / m] / b)).collect();
    let scale: Option<i128> = scales.iter().try_fold(1i128, |acc, &x| acc.checked_mul(x));
    match (det_i128(&mut ints, m), scale) {
        (Some(v), Some(s)) => Rational::new(v.into(), s.into()),
        _ => det(&Matrix::from_fn(m, m, |i, j| {
            let (a, b) = entries[i * m + j];
            Rational::new(a.into(), b.into())
        }))
        .expect("square"),
    }
}

impl CutTags {
    pub(crate) fn grank(&self) -> usize {
        self.p.iter().filter(|&&a| !self.q.contains(&(a - 1))).count()
    }

    pub(crate) fn hg_values(&self, max_t: usize) -> Vec<BigInt> {
        hg_values_from_tags(&self.p, &self.q, &self.ip, &self.iq, self.word, max_t)
    }

    /// The checks of [`lowest_order_matrix`] and [`check_lowest_coefficient`]
    /// in machine integers; `coeff` is the coefficient of `t^grank` in
    /// `s_{λ/μ}(1^t)`.
    pub(crate) fn check_lowest_order(&self, coeff: &Rational) -> Result<()> {
        let fail = |msg: String| Err(Error::TheoremViolation(msg));
        let rows: Vec<usize> = (0..self.p.len()).filter(|&i| !self.q.contains(&(self.p[i] - 1))).collect();
        let cols: Vec<usize> = (0..self.q.len()).filter(|&j| !self.p.contains(&(self.q[j] + 1))).collect();
        let m = rows.len();
        if cols.len() != m {
            return fail(format!("{m} rows but {} columns without a one", cols.len()));
        }
        let mut l = Vec::with_capacity(m * m);
        for &i in &rows {
            for &j in &cols {
                let (alpha, beta) = (self.p[i], self.q[j]);
                l.push(if alpha <= beta {
                    let ups = (self.word >> self.ip[i] & ((1u64 << (self.iq[j] - self.ip[i])) - 1)).count_ones();
                    (if ups % 2 == 0 { 1 } else { -1 }, (beta + 1 - alpha) as i128)
                } else {
                    (0, 1)
                });
            }
        }
        let det_l = det_fractions(&l, m);
        if det_l.is_zero() {
            return fail("lowest-order matrix is singular".into());
        }
        if det_l.abs() != coeff.abs() {
            return fail(format!("coefficient of t^{m} is {coeff}, lowest-order determinant is {det_l}"));
        }

        let mut a: Vec<i64> = cols.iter().map(|&j| self.q[j] + 1).collect();
        let mut b: Vec<i64> = rows.iter().map(|&i| self.p[i]).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable();
        if let Some(i) = (0..m).find(|&i| a[i] <= b[m - 1 - i]) {
            return fail(format!("lowest-order matrix fails the anti-diagonal condition at {}", i + 1));
        }
        let c: Vec<(i128, i128)> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| if x > y { (1, (x - y) as i128) } else { (0, 1) }))
            .collect();
        let omega = c.iter().filter(|e| e.0 == 0).count();
        let sign = crate::exact::sign(&det_fractions(&c, m));
        if sign != if omega % 2 == 0 { 1 } else { -1 } {
            return fail(format!("Cauchy determinant has sign {sign} with omega = {omega}"));
        }
        Ok(())
    }
}

/// Checks the defining properties of an outside decomposition.
pub fn validate(d: &OutsideDecomposition) -> Result<()> {
    let bad = |msg: String| Err(Error::ReconstructionInvalid(msg));
    let s = &d.shape;
    if let Err(e) = StripDecomposition::new(s, d.strips.clone()) {
        return bad(e.to_string());
    }
    for st in &d.strips {
        let (p, q) = (st.start(), st.end());
        let left_or_bottom = p.col == 1
            || !s.contains(crate::Cell::new(p.row, p.col - 1))
            || !s.contains(crate::Cell::new(p.row + 1, p.col));
        let right_or_top = q.row == 1
            || !s.contains(crate::Cell::new(q.row, q.col + 1))
            || !s.contains(crate::Cell::new(q.row - 1, q.col));
        if !left_or_bottom {
            return bad(format!("strip {st} starts inside the diagram"));
        }
        if !right_or_top {
            return bad(format!("strip {st} ends inside the diagram"));
        }
        for (c, step) in st.cells().iter().zip(st.steps()) {
            let Some(i) = d.cutting.index_of(c.content()) else {
                return bad(format!("{c} lies on no diagonal of the cutting strip"));
            };
            if d.cutting.directions[i] != step {
                return bad(format!("{c} does not follow the direction of its diagonal"));
            }
        }
    }
    for (name, mut tags) in [("start", d.p_contents()), ("end", d.q_contents())] {
        tags.sort_unstable();
        if tags.windows(2).any(|w| w[0] == w[1]) {
            return bad(format!("two strips {name} on the same diagonal"));
        }
    }
    Ok(())
}

/// The outside decomposition cut by `word` (one letter per nonempty diagonal
/// except the last, `U` or `R`).
pub fn outside_decomposition(s: &SkewShape, word: &[Step]) -> Result<OutsideDecomposition> {
    let cutter = Cutter::new(s);
    let k = cutter.diagonals();
    if word.len() + 1 != k {
        return Err(Error::WordLength { expected: k.saturating_sub(1), got: word.len() });
    }
    let bits = word.iter().enumerate().fold(0u64, |w, (i, st)| w | ((*st == Step::Up) as u64) << i);
    cutter.decompose(bits)
}

pub fn parse_cut(s: &SkewShape, word: &str) -> Result<OutsideDecomposition> {
    outside_decomposition(s, &parse_steps(word)?)
}

/// One decomposition per direction word, in increasing order of the word
/// read as a binary number (bit `i` set when diagonal `i` points up).
pub fn enumerate_outside_decompositions(s: &SkewShape, bounds: &SearchBounds) -> Result<Vec<OutsideDecomposition>> {
    let cutter = Cutter::new(s);
    let k = cutter.diagonals();
    if k > bounds.outside_diagonals {
        return Err(Error::SearchBoundExceeded { cells: k, bound: bounds.outside_diagonals });
    }
    (0..1u64 << k.saturating_sub(1)).map(|w| cutter.decompose(w)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HgEntry {
    Ribbon(BorderStrip),
    One,
    Zero,
}

/// `(s_{[τ(p_i), τ(q_j)]})` with entries classified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HgMatrix {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    entries: Vec<HgEntry>,
}

impl HgMatrix {
    pub fn order(&self) -> usize {
        self.p.len()
    }

    /// 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &HgEntry {
        &self.entries[i * self.order() + j]
    }

    pub fn row_has_one(&self, i: usize) -> bool {
        (0..self.order()).any(|j| *self.entry(i, j) == HgEntry::One)
    }

    pub fn col_has_one(&self, j: usize) -> bool {
        (0..self.order()).any(|i| *self.entry(i, j) == HgEntry::One)
    }
}

impl fmt::Display for HgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let shown = Matrix::from_fn(n, n, |i, j| match self.entry(i, j) {
            HgEntry::Zero => "0".to_string(),
            HgEntry::One => "1".to_string(),
            HgEntry::Ribbon(_) => format!("[{},{}]", self.p[i], self.q[j]),
        });
        shown.fmt(f)
    }
}

pub fn hg_matrix(d: &OutsideDecomposition) -> HgMatrix {
    let (p, q) = (d.p_contents(), d.q_contents());
    let mut entries = Vec::with_capacity(p.len() * q.len());
    for &alpha in &p {
        for &beta in &q {
            entries.push(if alpha <= beta {
                HgEntry::Ribbon(d.cutting.segment(alpha, beta).expect("endpoint contents lie on φ"))
            } else if alpha == beta + 1 {
                HgEntry::One
            } else {
                HgEntry::Zero
            });
        }
    }
    HgMatrix { p, q, entries }
}

/// Rows of the matrix without a `1`.
pub fn grank(d: &OutsideDecomposition) -> usize {
    let (p, q) = (d.p_contents(), d.q_contents());
    p.iter().filter(|&&a| !q.contains(&(a - 1))).count()
}

/// `det(s_{[τ(p_i), τ(q_j)]}(1^t))` for `t = 0, …, max_t`.
pub fn hg_det_values(d: &OutsideDecomposition, max_t: usize) -> Vec<BigInt> {
    let (p, q) = (d.p_contents(), d.q_contents());
    let cut = &d.cutting;
    let bits = cut.bits();
    let idx_p: Vec<usize> = p.iter().map(|&a| cut.index_of(a).expect("on φ")).collect();
    let idx_q: Vec<usize> = q.iter().map(|&b| cut.index_of(b).expect("on φ")).collect();
    hg_values_from_tags(&p, &q, &idx_p, &idx_q, bits, max_t)
}

/// Shared by [`hg_det_values`] and the verification campaigns.
pub(crate) fn hg_values_from_tags(
    p: &[i64],
    q: &[i64],
    idx_p: &[usize],
    idx_q: &[usize],
    bits: u64,
    max_t: usize,
) -> Vec<BigInt> {
    let m = p.len();
    let entry = |i: usize, j: usize, t: usize| -> i128 {
        if p[i] <= q[j] {
            let len = idx_q[j] - idx_p[i] + 1;
            ribbon_value(len, bits >> idx_p[i] & ((1u64 << (len - 1)) - 1), t)
        } else if p[i] == q[j] + 1 {
            1
        } else {
            0
        }
    };
    // Tabulated rows for every ribbon entry; `None` marks a one or a zero.
    let rows: Option<Vec<Option<&[i64; RIBBON_TABLE_T + 1]>>> = (0..m * m)
        .map(|k| {
            let (i, j) = (k / m, k % m);
            if p[i] <= q[j] {
                let len = idx_q[j] - idx_p[i] + 1;
                ribbon_row(len, bits >> idx_p[i] & ((1u64 << (len - 1)) - 1)).map(Some)
            } else {
                Some(None)
            }
        })
        .collect();
    let mut small = vec![0i64; m * m];
    (0..=max_t)
        .map(|t| {
            if let (Some(rows), true) = (&rows, t <= RIBBON_TABLE_T) {
                for (k, x) in small.iter_mut().enumerate() {
                    *x = match rows[k] {
                        Some(r) => r[t],
                        None => (p[k / m] == q[k % m] + 1) as i64,
                    };
                }
                if let Some(v) = det_i64(&mut small, m) {
                    return BigInt::from(v);
                }
            }
            let mut wide: Vec<i128> = (0..m * m).map(|k| entry(k / m, k % m, t)).collect();
            match det_i128(&mut wide, m) {
                Some(v) => BigInt::from(v),
                None => det_integer((0..m * m).map(|k| BigInt::from(entry(k / m, k % m, t))).collect(), m),
            }
        })
        .collect()
}

/// The matrix specialized at `1^t`, as an exact polynomial determinant.
pub fn hg_det_spec(d: &OutsideDecomposition) -> Poly {
    let values: Vec<Rational> =
        hg_det_values(d, d.shape.size()).into_iter().map(Rational::from_integer).collect();
    Poly::interpolate(&values)
}

/// The lowest-degree part of the specialized matrix, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestOrder {
    /// Rows and columns of the full matrix that survive (0-based).
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Entries `(−1)^(p_i − q_j) / (τ(q_j) + 1 − τ(p_i))` or zero.
    pub matrix: Matrix<Rational>,
    pub det: Rational,
    /// The unsigned, transposed and sorted matrix as a restricted Cauchy
    /// matrix with `a = τ(q) + 1` and `b = τ(p)`.
    pub cauchy: RestrictedCauchyMatrix,
}

/// Deletes rows and columns holding a `1` and keeps the coefficient of `t`
/// of every remaining entry. The result must be a restricted Cauchy matrix
/// up to signs and reordering, with nonzero determinant.
pub fn lowest_order_matrix(d: &OutsideDecomposition) -> Result<LowestOrder> {
    let hg = hg_matrix(d);
    let n = hg.order();
    let rows: Vec<usize> = (0..n).filter(|&i| !hg.row_has_one(i)).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| !hg.col_has_one(j)).collect();
    if rows.len() != cols.len() {
        return Err(Error::TheoremViolation(format!(
            "{} rows but {} columns without a one",
            rows.len(),
            cols.len()
        )));
    }
    let phi = d.cutting.phi();
    let phi_row = |content: i64| phi.cells()[d.cutting.index_of(content).expect("on φ")].row as i64;
    let matrix = Matrix::from_fn(rows.len(), cols.len(), |r, c| {
        let (i, j) = (rows[r], cols[c]);
        match hg.entry(i, j) {
            HgEntry::Ribbon(_) => {
                let (alpha, beta) = (hg.p[i], hg.q[j]);
                let sign = if (phi_row(alpha) - phi_row(beta)) % 2 == 0 { 1 } else { -1 };
                Rational::new(sign.into(), (beta + 1 - alpha).into())
            }
            HgEntry::Zero => Rational::zero(),
            HgEntry::One => unreachable!("rows and columns with ones are gone"),
        }
    });

    let mut a_order = cols.clone();
    a_order.sort_by_key(|&j| std::cmp::Reverse(hg.q[j]));
    let mut b_order = rows.clone();
    b_order.sort_by_key(|&i| hg.p[i]);
    let a: Vec<Rational> = a_order.iter().map(|&j| int(hg.q[j] + 1)).collect();
    let b: Vec<Rational> = b_order.iter().map(|&i| int(hg.p[i])).collect();
    let cauchy = restricted_cauchy(a, b)
        .map_err(|e| Error::TheoremViolation(format!("lowest-order matrix is not restricted Cauchy: {e}")))?;
    let pos = |v: &[usize], x: usize| v.iter().position(|&y| y == x).expect("member");
    for (ci, &j) in a_order.iter().enumerate() {
        for (cj, &i) in b_order.iter().enumerate() {
            let ours = matrix.get(pos(&rows, i), pos(&cols, j)).abs();
            if &ours != crate::cauchy::ZeroPattern::entries(&cauchy).get(ci, cj) {
                return Err(Error::TheoremViolation(format!(
                    "lowest-order entry for p = {}, q = {} is {ours}",
                    hg.p[i], hg.q[j]
                )));
            }
        }
    }
    rc_det(&cauchy)?;
    let value = det(&matrix)?;
    if value.is_zero() {
        return Err(Error::TheoremViolation(format!(
            "lowest-order matrix is singular (omega = {})",
            omega(&cauchy)
        )));
    }
    Ok(LowestOrder { rows, cols, matrix, det: value, cauchy })
}

/// Checks that the coefficient of `t^grank` in the specialized determinant
/// equals `± det` of the lowest-order matrix.
pub fn check_lowest_coefficient(d: &OutsideDecomposition, low: &LowestOrder, spec: &Poly) -> Result<()> {
    let g = grank(d);
    let coeff = spec.coeff(g);
    if spec.valuation() != Some(g) || coeff.abs() != low.det.abs() {
        return Err(Error::TheoremViolation(format!(
            "coefficient of t^{g} is {coeff}, lowest-order determinant is {}",
            low.det
        )));
    }
    Ok(())
}

/// Endpoint contents of a border strip decomposition, as multisets:
/// `P = {τ(p(θ))}` and `Q = {τ(q(θ)) + 1}`, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PqSets {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

fn multiset_difference(x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut rest = y.to_vec();
    let mut out = Vec::new();
    for &v in x {
        match rest.iter().position(|&w| w == v) {
            Some(k) => {
                rest.swap_remove(k);
            }
            None => out.push(v),
        }
    }
    out
}

impl PqSets {
    pub fn new(strips: &[BorderStrip]) -> Self {
        let mut p: Vec<i64> = strips.iter().map(|s| s.start().content()).collect();
        let mut q: Vec<i64> = strips.iter().map(|s| s.end().content() + 1).collect();
        p.sort_unstable();
        q.sort_unstable();
        PqSets { p, q }
    }

    pub fn p_minus_q(&self) -> Vec<i64> {
        multiset_difference(&self.p, &self.q)
    }

    pub fn q_minus_p(&self) -> Vec<i64> {
        multiset_difference(&self.q, &self.p)
    }

    pub fn intersection(&self) -> Vec<i64> {
        multiset_difference(&self.p, &self.p_minus_q())
    }
}

pub fn pq_sets(strips: &[BorderStrip]) -> PqSets {
    PqSets::new(strips)
}

/// Coefficient of `t` in `s_{[α,β]}(1^t)` predicted from the ribbon's
/// height: `(−1)^height / length`.
pub fn predicted_linear_coefficient(r: &BorderStrip) -> Rational {
    let sign: BigInt = if r.height() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Rational::new(sign, BigInt::from(r.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::rank::{jt_matrix, rank_diagonal, JtEntry};
    use crate::schur::skew_schur_spec;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn all_right_gives_rows() {
        let s = shape("5,4,3,2/2,1,1");
        let k = s.diagonals().len();
        let d = outside_decomposition(&s, &vec![Step::Right; k - 1]).unwrap();
        assert_eq!(d.len(), 4);
        for (i, st) in d.strips().iter().enumerate() {
            assert!(st.cells().iter().all(|c| c.row == i + 1));
        }
        let cols = outside_decomposition(&s, &vec![Step::Up; k - 1]).unwrap();
        assert_eq!(cols.len(), s.num_cols());
        for st in cols.strips() {
            assert!(st.cells().iter().all(|c| c.col == st.start().col));
        }
    }

    #[test]
    fn figure_one_has_256_decompositions() {
        let s = shape("6,5,5,3/2,1,1");
        let all = enumerate_outside_decompositions(&s, &SearchBounds::default()).unwrap();
        assert_eq!(all.len(), 256);
        for d in &all {
            assert_eq!(grank(d), 3);
        }
    }

    #[test]
    fn row_decomposition_matches_jacobi_trudi_transposed() {
        for text in ["6,5,5,3/2,1,1", "5,4,3,2/2,1,1", "3,2/1", "4,4,1/2"] {
            let s = shape(text);
            let k = s.diagonals().len();
            let d = outside_decomposition(&s, &vec![Step::Right; k - 1]).unwrap();
            let hg = hg_matrix(&d);
            let jt = jt_matrix(&s);
            assert_eq!(hg.order(), jt.order());
            for i in 0..hg.order() {
                for j in 0..hg.order() {
                    let same = match (hg.entry(i, j), jt.entry(j, i)) {
                        (HgEntry::Zero, JtEntry::Zero) | (HgEntry::One, JtEntry::One) => true,
                        (HgEntry::Ribbon(r), JtEntry::H(len)) => r.len() == len && r.height() == 0,
                        _ => false,
                    };
                    assert!(same, "{text} ({i},{j})");
                }
            }
            assert_eq!(hg_det_spec(&d), skew_schur_spec(&s), "{text}");
        }
        let s = shape("6,5,5,3/2,1,1");
        let d = parse_cut(&s, "RRRRRRRR").unwrap();
        let hg = hg_matrix(&d);
        assert_eq!(*hg.entry(0, 3), HgEntry::Zero);
        assert_eq!(*hg.entry(1, 3), HgEntry::One);
        assert_eq!(grank(&d), 3);
    }

    #[test]
    fn single_strip() {
        let s = shape("3,2/1");
        let d = parse_cut(&s, "RUR").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(grank(&d), 1);
        assert!(matches!(hg_matrix(&d).entry(0, 0), HgEntry::Ribbon(r) if r.len() == 4));
        assert_eq!(hg_det_spec(&d), skew_schur_spec(&s));
    }

    #[test]
    fn every_cut_of_small_shapes_gives_the_schur_function() {
        for text in ["3,2/1", "2,2", "3,3,2/1,1", "2,1/1", "4,2,2/3,1"] {
            let s = shape(text);
            let target = skew_schur_spec(&s);
            for d in enumerate_outside_decompositions(&s, &SearchBounds::default()).unwrap() {
                assert_eq!(hg_det_spec(&d), target, "{text} {}", d.cutting().word());
                assert_eq!(grank(&d), rank_diagonal(&s));
                let low = lowest_order_matrix(&d).unwrap();
                check_lowest_coefficient(&d, &low, &target).unwrap();
            }
        }
    }

    #[test]
    fn word_length_is_checked() {
        let s = shape("3,2/1");
        assert_eq!(parse_cut(&s, "RR"), Err(Error::WordLength { expected: 3, got: 2 }));
        assert!(parse_cut(&s, "RXR").is_err());
    }

    #[test]
    fn lowest_order_entries() {
        let s = shape("1");
        let d = parse_cut(&s, "").unwrap();
        assert_eq!(lowest_order_matrix(&d).unwrap().matrix.entries(), &[int(1)]);
        let s = shape("2");
        let d = parse_cut(&s, "R").unwrap();
        assert_eq!(lowest_order_matrix(&d).unwrap().matrix.entries(), &[ratio(1, 2)]);
        let s = shape("1,1");
        let d = parse_cut(&s, "U").unwrap();
        assert_eq!(lowest_order_matrix(&d).unwrap().matrix.entries(), &[ratio(-1, 2)]);
        let s = shape("6,5,5,3/2,1,1");
        let low = lowest_order_matrix(&parse_cut(&s, "RRRRRRRR").unwrap()).unwrap();
        assert_eq!(low.matrix.rows(), 3);
        assert!(!low.det.is_zero());
    }

    #[test]
    fn pq_examples() {
        let s = shape("5,4,3,2/2,1,1");
        let d = parse_cut(&s, "RRRRRRR").unwrap();
        let pq = pq_sets(d.strips());
        assert_eq!(pq.p, vec![-3, -1, 0, 2]);
        assert_eq!(pq.q, vec![-1, 1, 3, 5]);
        assert_eq!(pq.p_minus_q(), vec![-3, 0, 2]);
        assert_eq!(pq.q_minus_p(), vec![1, 3, 5]);
        assert_eq!(pq.intersection(), vec![-1]);

        let single = shape("3,2/1");
        let pq = pq_sets(parse_cut(&single, "RUR").unwrap().strips());
        assert_eq!((pq.p_minus_q(), pq.q_minus_p()), (vec![-1], vec![3]));
    }

    #[test]
    fn disconnected_shapes_use_nonempty_diagonals() {
        let s = shape("2,1/1");
        assert_eq!(s.diagonals().len(), 2);
        for w in ["R", "U"] {
            let d = parse_cut(&s, w).unwrap();
            assert_eq!(d.len(), 2);
            assert_eq!(hg_det_spec(&d), skew_schur_spec(&s));
        }
    }

    #[test]
    fn fast_tags_match_full_decompositions() {
        for s in crate::shapes::basic_shapes_up_to(6) {
            let cutter = Cutter::new(&s);
            let spec = skew_schur_spec(&s);
            let r = rank_diagonal(&s);
            for w in 0..1u64 << (cutter.diagonals() - 1) {
                let d = cutter.decompose(w).unwrap();
                let tags = cutter.tags(w).unwrap();
                assert_eq!((tags.p.clone(), tags.q.clone()), (d.p_contents(), d.q_contents()), "{s} {w}");
                assert_eq!(tags.grank(), grank(&d));
                assert_eq!(tags.hg_values(s.size()), hg_det_values(&d, s.size()));
                let low = lowest_order_matrix(&d).unwrap();
                check_lowest_coefficient(&d, &low, &spec).unwrap();
                tags.check_lowest_order(&spec.coeff(r)).unwrap();
            }
        }
    }

    #[test]
    fn fast_check_rejects_wrong_coefficients() {
        let s = shape("3,2/1");
        let tags = Cutter::new(&s).tags(0).unwrap();
        assert!(matches!(tags.check_lowest_order(&int(5)), Err(Error::TheoremViolation(_))));
    }

    #[test]
    fn linear_coefficients_of_small_ribbons() {
        let r = ribbon_from_bits(3, 0b01);
        assert_eq!(predicted_linear_coefficient(&r), ratio(-1, 3));
        let p = skew_schur_spec(&crate::schur::ribbon_to_skew(&r));
        assert_eq!(p.coeff(1), ratio(-1, 3));
    }
}
