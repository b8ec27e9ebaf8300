//! Four characterizations of `rank(λ/μ)`.
//!
//! * [`rank_diagonal`]: cells on outer diagonals minus cells on inner diagonals.
//! * [`rank_code`]: number of `1`-over-`0` columns of the reduced code.
//! * [`jrank`]: rows of the Jacobi–Trudi matrix without an entry `h_0 = 1`.
//! * [`min_strip_rank`]: fewest border strips partitioning the diagram.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::shapes::{Cell, CellIndex, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    Up,
    Right,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Right => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' | 'u' => Some(Step::Up),
            'R' | 'r' => Some(Step::Right),
            _ => None,
        }
    }
}

pub fn steps_to_string(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.trim()
        .chars()
        .map(|c| Step::from_char(c).ok_or_else(|| Error::Parse(format!("bad direction {c:?} in {text:?}"))))
        .collect()
}

/// A connected run of cells with no 2×2 block, listed from its lower-left
/// end `p(θ)` to its upper-right end `q(θ)`; each step goes up or right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BorderStrip {
    cells: Vec<Cell>,
}

impl BorderStrip {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::NotBorderStrip("empty".into()));
        }
        for w in cells.windows(2) {
            let up = w[1].row + 1 == w[0].row && w[1].col == w[0].col;
            let right = w[1].row == w[0].row && w[1].col == w[0].col + 1;
            if !(up || right) {
                return Err(Error::NotBorderStrip(format!("{} does not step up or right to {}", w[0], w[1])));
            }
        }
        Ok(BorderStrip { cells })
    }

    pub fn from_steps(start: Cell, steps: &[Step]) -> Result<Self> {
        let mut cells = vec![start];
        let mut at = start;
        for s in steps {
            at = match s {
                Step::Right => Cell::new(at.row, at.col + 1),
                Step::Up if at.row > 1 => Cell::new(at.row - 1, at.col),
                Step::Up => return Err(Error::NotBorderStrip("leaves the first row".into())),
            };
            cells.push(at);
        }
        BorderStrip::new(cells)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `p(θ)`, the lower-left end.
    pub fn start(&self) -> Cell {
        self.cells[0]
    }

    /// `q(θ)`, the upper-right end.
    pub fn end(&self) -> Cell {
        *self.cells.last().expect("strips are nonempty")
    }

    pub fn steps(&self) -> Vec<Step> {
        self.cells.windows(2).map(|w| if w[1].col > w[0].col { Step::Right } else { Step::Up }).collect()
    }

    /// Number of up steps, one less than the number of rows it meets.
    pub fn height(&self) -> usize {
        self.start().row - self.end().row
    }
}

impl fmt::Display for BorderStrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start(), steps_to_string(&self.steps()))
    }
}

/// Border strips partitioning a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripDecomposition {
    strips: Vec<BorderStrip>,
}

impl StripDecomposition {
    /// Checks that `strips` cover every cell of `shape` exactly once.
    pub fn new(shape: &SkewShape, mut strips: Vec<BorderStrip>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for st in &strips {
            for &c in st.cells() {
                if !shape.contains(c) {
                    return Err(Error::NotADecomposition(format!("{c} is outside {shape}")));
                }
                if !seen.insert(c) {
                    return Err(Error::NotADecomposition(format!("{c} is covered twice")));
                }
            }
        }
        if seen.len() != shape.size() {
            return Err(Error::NotADecomposition(format!("{} of {} cells covered", seen.len(), shape.size())));
        }
        strips.sort();
        Ok(StripDecomposition { strips })
    }

    pub fn strips(&self) -> &[BorderStrip] {
        &self.strips
    }

    pub fn len(&self) -> usize {
        self.strips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }
}

/// Exhaustive-search limits. Enumeration is exponential in these sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Cell limit for [`min_strip_rank`].
    pub min_strip_cells: usize,
    /// Cell limit for [`enumerate_strip_decompositions`].
    pub enumeration_cells: usize,
    /// Diagonal limit for enumerating outside decompositions.
    pub outside_diagonals: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { min_strip_cells: 16, enumeration_cells: 10, outside_diagonals: 12 }
    }
}

/// `d⁺ − d⁻` over the outer and inner corner diagonals.
pub fn rank_diagonal(s: &SkewShape) -> usize {
    let has = |r: usize, c: usize| r >= 1 && c >= 1 && s.contains(Cell::new(r, c));
    let diagonal_len = |cell: Cell| (0..).take_while(|&p| has(cell.row + p, cell.col + p)).count();
    let (mut plus, mut minus) = (0usize, 0usize);
    for cell in s.cells() {
        let (i, j) = (cell.row, cell.col);
        let left = has(i, j - 1);
        let above = has(i - 1, j);
        let corner = has(i - 1, j - 1);
        if left && above && !corner {
            minus += diagonal_len(cell);
        } else if !left && !above && !corner {
            plus += diagonal_len(cell);
        }
    }
    plus.checked_sub(minus).expect("d+ >= d-")
}

pub fn rank_code(s: &SkewShape) -> usize {
    s.reduced_code().one_over_zero_columns().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JtEntry {
    Zero,
    One,
    H(usize),
}

/// Subscripts `λ_i − μ_j − i + j` of the Jacobi–Trudi matrix, `i, j ≤ ℓ(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtMatrix {
    subscripts: Matrix<i64>,
}

impl JtMatrix {
    pub fn order(&self) -> usize {
        self.subscripts.rows()
    }

    pub fn subscripts(&self) -> &Matrix<i64> {
        &self.subscripts
    }

    /// 0-based entry classification.
    pub fn entry(&self, i: usize, j: usize) -> JtEntry {
        match *self.subscripts.get(i, j) {
            k if k < 0 => JtEntry::Zero,
            0 => JtEntry::One,
            k => JtEntry::H(k as usize),
        }
    }

    pub fn row_has_one(&self, i: usize) -> bool {
        (0..self.order()).any(|j| self.entry(i, j) == JtEntry::One)
    }
}

impl fmt::Display for JtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = Matrix::from_fn(self.order(), self.order(), |i, j| match self.entry(i, j) {
            JtEntry::Zero => "0".to_string(),
            JtEntry::One => "1".to_string(),
            JtEntry::H(k) => format!("h{k}"),
        });
        shown.fmt(f)
    }
}

pub fn jt_matrix(s: &SkewShape) -> JtMatrix {
    let n = s.num_rows();
    let (outer, inner) = (s.outer(), s.inner());
    JtMatrix {
        subscripts: Matrix::from_fn(n, n, |i, j| {
            outer.part(i + 1) as i64 - inner.part(j + 1) as i64 - i as i64 + j as i64
        }),
    }
}

pub fn jrank(s: &SkewShape) -> usize {
    let jt = jt_matrix(s);
    (0..jt.order()).filter(|&i| !jt.row_has_one(i)).count()
}

/// Every border strip inside a shape as a bit mask over the dense cell
/// index, grouped by lowest set bit (the strip's row-major first cell).
struct Ribbons {
    index: CellIndex,
    by_anchor: Vec<Vec<u64>>,
}

impl Ribbons {
    fn new(s: &SkewShape) -> Self {
        let index = CellIndex::new(s);
        let n = index.len();
        assert!(n <= 64, "ribbon masks hold at most 64 cells");
        let mut by_anchor = vec![Vec::new(); n];
        fn extend(index: &CellIndex, at: usize, mask: u64, by_anchor: &mut [Vec<u64>]) {
            by_anchor[mask.trailing_zeros() as usize].push(mask);
            for next in [index.up(at), index.right(at)].into_iter().flatten() {
                extend(index, next, mask | 1 << next, by_anchor);
            }
        }
        for start in 0..n {
            extend(&index, start, 1 << start, &mut by_anchor);
        }
        Ribbons { index, by_anchor }
    }

    fn full(&self) -> u64 {
        match self.index.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    fn strip(&self, mask: u64) -> BorderStrip {
        let mut cells: Vec<Cell> =
            (0..self.index.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.index.cell(i)).collect();
        cells.sort_by_key(|c| c.content());
        BorderStrip::new(cells).expect("paths of up/right steps are strips")
    }

    fn decomposition(&self, s: &SkewShape, masks: &[u64]) -> StripDecomposition {
        StripDecomposition::new(s, masks.iter().map(|&m| self.strip(m)).collect())
            .expect("exact cover of the diagram")
    }
}

fn check_bound(s: &SkewShape, bound: usize) -> Result<()> {
    if s.size() > bound || s.size() > 64 {
        return Err(Error::SearchBoundExceeded { cells: s.size(), bound: bound.min(64) });
    }
    Ok(())
}

/// Memoized exhaustive search for the fewest strips covering `mask`.
struct MinCover<'a> {
    ribbons: &'a Ribbons,
    dense: Vec<u8>,
    sparse: HashMap<u64, u8>,
}

impl MinCover<'_> {
    const UNKNOWN: u8 = u8::MAX;

    fn new(ribbons: &Ribbons) -> MinCover<'_> {
        let n = ribbons.index.len();
        let dense = if n <= 20 { vec![Self::UNKNOWN; 1 << n] } else { Vec::new() };
        MinCover { ribbons, dense, sparse: HashMap::new() }
    }

    fn lookup(&self, mask: u64) -> Option<u8> {
        if self.dense.is_empty() {
            self.sparse.get(&mask).copied()
        } else {
            Some(self.dense[mask as usize]).filter(|&v| v != Self::UNKNOWN)
        }
    }

    fn store(&mut self, mask: u64, v: u8) {
        if self.dense.is_empty() {
            self.sparse.insert(mask, v);
        } else {
            self.dense[mask as usize] = v;
        }
    }

    fn solve(&mut self, mask: u64) -> u8 {
        if mask == 0 {
            return 0;
        }
        if let Some(v) = self.lookup(mask) {
            return v;
        }
        let anchor = mask.trailing_zeros() as usize;
        let ribbons = self.ribbons;
        let mut best = u8::MAX;
        for &r in &ribbons.by_anchor[anchor] {
            if r & !mask == 0 && best > 1 {
                best = best.min(1 + self.solve(mask & !r));
            }
        }
        self.store(mask, best);
        best
    }

    fn witness(&mut self, mut mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while mask != 0 {
            let need = self.solve(mask);
            let anchor = mask.trailing_zeros() as usize;
            let r = *self.ribbons.by_anchor[anchor]
                .iter()
                .find(|&&r| r & !mask == 0 && 1 + self.solve(mask & !r) == need)
                .expect("optimal move exists");
            out.push(r);
            mask &= !r;
        }
        out
    }
}

/// Fewest border strips partitioning the diagram, by exhaustive search.
///
/// The search always covers the row-major first uncovered cell next, so
/// each decomposition is reached along exactly one path; covered subsets are
/// memoized.
pub fn min_strip_rank(s: &SkewShape, bounds: &SearchBounds) -> Result<usize> {
    check_bound(s, bounds.min_strip_cells)?;
    let ribbons = Ribbons::new(s);
    Ok(MinCover::new(&ribbons).solve(ribbons.full()) as usize)
}

/// One decomposition attaining [`min_strip_rank`].
pub fn min_strip_decomposition(s: &SkewShape, bounds: &SearchBounds) -> Result<StripDecomposition> {
    check_bound(s, bounds.min_strip_cells)?;
    let ribbons = Ribbons::new(s);
    let masks = MinCover::new(&ribbons).witness(ribbons.full());
    Ok(ribbons.decomposition(s, &masks))
}

/// All border strip decompositions, in search order.
pub fn enumerate_strip_decompositions(s: &SkewShape, bounds: &SearchBounds) -> Result<Vec<StripDecomposition>> {
    check_bound(s, bounds.enumeration_cells)?;
    let ribbons = Ribbons::new(s);
    let mut out = Vec::new();
    fn rec(r: &Ribbons, mask: u64, stack: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if mask == 0 {
            out.push(stack.clone());
            return;
        }
        for &rib in &r.by_anchor[mask.trailing_zeros() as usize] {
            if rib & !mask == 0 {
                stack.push(rib);
                rec(r, mask & !rib, stack, out);
                stack.pop();
            }
        }
    }
    rec(&ribbons, ribbons.full(), &mut Vec::new(), &mut out);
    Ok(out.iter().map(|m| ribbons.decomposition(s, m)).collect())
}

/// Number of border strip decompositions, without materializing them.
pub fn count_strip_decompositions(s: &SkewShape, bounds: &SearchBounds) -> Result<u64> {
    check_bound(s, bounds.enumeration_cells)?;
    let ribbons = Ribbons::new(s);
    fn rec(r: &Ribbons, mask: u64, memo: &mut HashMap<u64, u64>) -> u64 {
        if mask == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = r.by_anchor[mask.trailing_zeros() as usize]
            .iter()
            .filter(|&&rib| rib & !mask == 0)
            .map(|&rib| rec(r, mask & !rib, memo))
            .sum();
        memo.insert(mask, v);
        v
    }
    Ok(rec(&ribbons, ribbons.full(), &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn bounds() -> SearchBounds {
        SearchBounds::default()
    }

    #[test]
    fn figure_one_rank() {
        let s = shape("6,5,5,3/2,1,1");
        assert_eq!(rank_diagonal(&s), 3);
        assert_eq!(rank_code(&s), 3);
        assert_eq!(jrank(&s), 3);
        assert_eq!(min_strip_rank(&s, &bounds()).unwrap(), 3);
    }

    #[test]
    fn figure_two_rank() {
        let s = shape("5,4,3,2/2,1,1");
        assert_eq!(rank_diagonal(&s), 3);
        assert_eq!(rank_code(&s), 3);
        assert_eq!(jrank(&s), 3);
        assert_eq!(min_strip_rank(&s, &bounds()).unwrap(), 3);
        assert_eq!(min_strip_decomposition(&s, &bounds()).unwrap().len(), 3);
    }

    #[test]
    fn straight_shapes_use_durfee_square() {
        assert_eq!(rank_diagonal(&shape("3,2")), 2);
        assert_eq!(rank_code(&shape("1")), 1);
        for p in ["4,4,2,1", "1,1,1", "5", "3,3,3"] {
            let s = shape(p);
            assert_eq!(rank_diagonal(&s), s.outer().durfee(), "{p}");
        }
    }

    #[test]
    fn jt_subscripts() {
        let jt = jt_matrix(&shape("6,5,5,3/2,1,1"));
        let rows: Vec<Vec<i64>> = (0..4).map(|i| jt.subscripts().row(i).to_vec()).collect();
        assert_eq!(rows, vec![vec![4, 6, 7, 9], vec![2, 4, 5, 7], vec![1, 3, 4, 6], vec![-2, 0, 1, 3]]);
        assert_eq!(jt.entry(3, 0), JtEntry::Zero);
        assert_eq!(jt.entry(3, 1), JtEntry::One);
        assert_eq!(jt.entry(3, 2), JtEntry::H(1));
        assert_eq!(jt_matrix(&shape("4")).subscripts().entries(), &[4]);
        assert_eq!(jt_matrix(&shape("2,1")).subscripts().entries(), &[2, 3, 0, 1]);
        assert_eq!(jrank(&shape("4")), 1);
    }

    #[test]
    fn single_strip_has_rank_one() {
        for s in ["5", "1,1,1", "3,2/1", "4,4,2/3,1"] {
            assert_eq!(min_strip_rank(&shape(s), &bounds()).unwrap(), 1, "{s}");
        }
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_strip_decompositions(&shape("1"), &bounds()).unwrap().len(), 1);
        assert_eq!(enumerate_strip_decompositions(&shape("2"), &bounds()).unwrap().len(), 2);
        assert_eq!(enumerate_strip_decompositions(&shape("2,1"), &bounds()).unwrap().len(), 4);
        assert_eq!(count_strip_decompositions(&shape("2,1"), &bounds()).unwrap(), 4);
    }

    #[test]
    fn search_bounds_are_enforced() {
        let tight = SearchBounds { min_strip_cells: 3, enumeration_cells: 3, outside_diagonals: 3 };
        let s = shape("2,2");
        assert_eq!(min_strip_rank(&s, &tight), Err(Error::SearchBoundExceeded { cells: 4, bound: 3 }));
        assert!(enumerate_strip_decompositions(&s, &tight).is_err());
    }

    #[test]
    fn strips_validate_steps() {
        let ok = BorderStrip::from_steps(Cell::new(2, 1), &[Step::Right, Step::Up, Step::Right]).unwrap();
        assert_eq!(ok.cells(), &[Cell::new(2, 1), Cell::new(2, 2), Cell::new(1, 2), Cell::new(1, 3)]);
        assert_eq!(ok.height(), 1);
        assert_eq!(ok.to_string(), "(2,1):RUR");
        assert!(BorderStrip::new(vec![Cell::new(1, 1), Cell::new(2, 1)]).is_err());
        assert!(BorderStrip::from_steps(Cell::new(1, 1), &[Step::Up]).is_err());
        assert_eq!(parse_steps("rUr").unwrap(), vec![Step::Right, Step::Up, Step::Right]);
        assert!(parse_steps("RX").is_err());
    }

    #[test]
    fn decomposition_validation() {
        let s = shape("2");
        let one = BorderStrip::new(vec![Cell::new(1, 1)]).unwrap();
        assert!(matches!(StripDecomposition::new(&s, vec![one.clone()]), Err(Error::NotADecomposition(_))));
        assert!(StripDecomposition::new(&s, vec![one.clone(), one]).is_err());
    }
}
