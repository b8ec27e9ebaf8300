//! Partitions, skew shapes and the data read off their diagrams.
//!
//! Cells are 1-indexed with row 1 at the top, so `(i, j)` is the cell in
//! row `i` from the top and column `j` from the left. Every [`SkewShape`] is
//! kept in basic form: no row and no column of the diagram is empty.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; any other non-monotone input is rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        Self::checked(parts, "partition")
    }

    fn checked(mut parts: Vec<usize>, what: &'static str) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing { what, parts });
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (1-based); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((1..=cols).map(|j| self.0.iter().take_while(|&&p| p >= j).count()).collect())
    }

    /// Side of the Durfee square, `#{i : λ_i ≥ i}`.
    pub fn durfee(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &p)| p > *i).count()
    }

    /// `self ⊆ other` as diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All partitions contained in the rectangle with `rows` rows and `cols` columns.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition(prefix.clone()));
            if prefix.len() == rows {
                return;
            }
            for p in 1..=max {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn content(self) -> i64 {
        content(self)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Content `τ(i, j) = j − i`.
pub fn content(c: Cell) -> i64 {
    c.col as i64 - c.row as i64
}

/// Rows and columns removed while bringing a shape to basic form, as
/// 1-based indices of the input diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub deleted_rows: Vec<usize>,
    pub deleted_cols: Vec<usize>,
}

impl Normalization {
    pub fn is_identity(&self) -> bool {
        self.deleted_rows.is_empty() && self.deleted_cols.is_empty()
    }
}

/// A basic skew shape `λ/μ`.
#[derive(Clone, Debug, Serialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
    normalization: Normalization,
}

impl PartialEq for SkewShape {
    fn eq(&self, other: &Self) -> bool {
        self.outer == other.outer && self.inner == other.inner
    }
}

impl Eq for SkewShape {}

impl std::hash::Hash for SkewShape {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.outer.hash(state);
        self.inner.hash(state);
    }
}

/// Builds the basic form of `outer/inner`.
///
/// Rows with `λ_i = μ_i` and columns without cells are deleted; what was
/// removed is kept in [`SkewShape::normalization`].
pub fn make_skew(outer: &[usize], inner: &[usize]) -> Result<SkewShape> {
    let outer = Partition::checked(outer.to_vec(), "outer partition")?;
    let inner = Partition::checked(inner.to_vec(), "inner partition")?;
    for i in 1..=inner.len() {
        if inner.part(i) > outer.part(i) {
            return Err(Error::NotContained { row: i, inner: inner.part(i), outer: outer.part(i) });
        }
    }

    let mut normalization = Normalization::default();
    let mut rows: Vec<(usize, usize)> = Vec::new();
    for i in 1..=outer.len() {
        let (m, l) = (inner.part(i), outer.part(i));
        if m == l {
            normalization.deleted_rows.push(i);
        } else {
            rows.push((m, l));
        }
    }

    // Columns are deleted right to left so that earlier indices stay valid.
    let width = outer.first();
    let mut empty_cols: Vec<usize> =
        (1..=width).filter(|&j| !rows.iter().any(|&(m, l)| m < j && j <= l)).collect();
    normalization.deleted_cols = empty_cols.clone();
    empty_cols.reverse();
    for j in empty_cols {
        for (m, l) in rows.iter_mut() {
            if *l >= j {
                *l -= 1;
            }
            if *m >= j {
                *m -= 1;
            }
        }
    }

    Ok(SkewShape {
        outer: Partition(rows.iter().map(|r| r.1).collect()),
        inner: Partition::checked(rows.iter().map(|r| r.0).collect(), "inner partition")?,
        normalization,
    })
}

impl SkewShape {
    pub fn new(outer: &[usize], inner: &[usize]) -> Result<Self> {
        make_skew(outer, inner)
    }

    pub fn straight(parts: &[usize]) -> Result<Self> {
        make_skew(parts, &[])
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn normalization(&self) -> &Normalization {
        &self.normalization
    }

    /// `ℓ(λ)`; every row is nonempty in basic form.
    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    /// `λ_1`; every column is nonempty in basic form.
    pub fn num_cols(&self) -> usize {
        self.outer.first()
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_empty(&self) -> bool {
        self.outer.is_empty()
    }

    /// First and last column of row `row`, both inclusive.
    pub fn row_span(&self, row: usize) -> (usize, usize) {
        (self.inner.part(row) + 1, self.outer.part(row))
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1
            && c.row <= self.num_rows()
            && c.col > self.inner.part(c.row)
            && c.col <= self.outer.part(c.row)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for r in 1..=self.num_rows() {
            let (a, b) = self.row_span(r);
            out.extend((a..=b).map(|c| Cell::new(r, c)));
        }
        out
    }

    /// Smallest content, `1 − ℓ(λ)` in basic form.
    pub fn min_content(&self) -> i64 {
        1 - self.num_rows() as i64
    }

    /// Largest content, `λ_1 − 1` in basic form.
    pub fn max_content(&self) -> i64 {
        self.num_cols() as i64 - 1
    }

    pub fn is_connected(&self) -> bool {
        (1..self.num_rows()).all(|i| self.inner.part(i) < self.outer.part(i + 1))
    }

    pub fn diagonals(&self) -> Vec<Diagonal> {
        diagonals(self)
    }

    pub fn reduced_code(&self) -> ReducedCode {
        reduced_code(self)
    }

    /// Inverse of [`reduced_code`].
    pub fn from_reduced_code(code: &ReducedCode) -> Result<Self> {
        if code.top.len() != code.bottom.len() {
            return Err(Error::Parse("reduced code rows have different lengths".into()));
        }
        let ones = |w: &[bool]| w.iter().filter(|&&b| b).count();
        if ones(&code.top) != ones(&code.bottom) {
            return Err(Error::Parse("reduced code rows have different numbers of ones".into()));
        }
        let outer = parts_from_path(&code.bottom);
        let inner = parts_from_path(&code.top);
        make_skew(&outer, &inner)
    }
}

/// Reads a boundary word (bottom-left to top-right, `1` = up) back into parts.
fn parts_from_path(word: &[bool]) -> Vec<usize> {
    let mut zeros = 0;
    let mut bottom_up = Vec::new();
    for &up in word {
        if up {
            bottom_up.push(zeros);
        } else {
            zeros += 1;
        }
    }
    bottom_up.reverse();
    bottom_up
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, self.outer.parts())?;
        if !self.inner.is_empty() {
            f.write_str("/")?;
            write_parts(f, self.inner.parts())?;
        }
        Ok(())
    }
}

fn parse_parts(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad part {p:?}: {e}")))
        })
        .collect()
}

/// Parses `"6,5,5,3/2,1,1"`; the `/inner` part is optional.
impl FromStr for SkewShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (outer, inner) = match s.split_once('/') {
            Some((o, i)) => (o, i),
            None => (s, ""),
        };
        if inner.contains('/') {
            return Err(Error::Parse(format!("more than one '/' in {s:?}")));
        }
        make_skew(&parse_parts(outer)?, &parse_parts(inner)?)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

/// The cells of one content, top-left to bottom-right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagonal {
    pub content: i64,
    pub cells: Vec<Cell>,
}

impl Diagonal {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Nonempty diagonals by increasing content.
///
/// Disconnected shapes may skip contents, so the list can be shorter than
/// `ℓ(λ) + λ_1 − 1`.
pub fn diagonals(s: &SkewShape) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for c in s.min_content()..=s.max_content() {
        let cells: Vec<Cell> = (1..=s.num_rows())
            .filter_map(|r| {
                let col = r as i64 + c;
                (col >= 1).then(|| Cell::new(r, col as usize))
            })
            .filter(|&cell| s.contains(cell))
            .collect();
        if !cells.is_empty() {
            out.push(Diagonal { content: c, cells });
        }
    }
    out
}

/// Two boundary words of length `ℓ(λ) + λ_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCode {
    pub top: Vec<bool>,
    pub bottom: Vec<bool>,
}

impl ReducedCode {
    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top_string(&self) -> String {
        bits(&self.top)
    }

    pub fn bottom_string(&self) -> String {
        bits(&self.bottom)
    }

    /// Positions (1-based) of the columns with `1` over `0`.
    pub fn one_over_zero_columns(&self) -> Vec<usize> {
        self.top
            .iter()
            .zip(&self.bottom)
            .enumerate()
            .filter(|(_, (&t, &b))| t && !b)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

fn bits(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for ReducedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.top_string())?;
        write!(f, "{}", self.bottom_string())
    }
}

/// Boundary word of `parts` (padded to `rows` parts) inside the
/// `rows × cols` box: `0` for a right step, `1` for an up step.
fn boundary_word(parts: &Partition, rows: usize, cols: usize) -> Vec<bool> {
    let mut w = Vec::with_capacity(rows + cols);
    let mut at = 0;
    for i in (1..=rows).rev() {
        let p = parts.part(i);
        w.extend(std::iter::repeat_n(false, p - at));
        w.push(true);
        at = p;
    }
    w.extend(std::iter::repeat_n(false, cols - at));
    w
}

pub fn reduced_code(s: &SkewShape) -> ReducedCode {
    let (rows, cols) = (s.num_rows(), s.num_cols());
    ReducedCode {
        top: boundary_word(&s.inner, rows, cols),
        bottom: boundary_word(&s.outer, rows, cols),
    }
}

/// Every basic skew shape with exactly `size` cells.
///
/// Rows are `(μ_i, λ_i]`; basic form means `μ_i < λ_i`, `μ_i ≤ λ_{i+1}` and
/// `μ_ℓ = 0`.
pub fn basic_shapes(size: usize) -> Vec<SkewShape> {
    fn rec(rows: &mut Vec<(usize, usize)>, size: usize, left: usize, out: &mut Vec<SkewShape>) {
        let &(pm, pl) = rows.last().expect("at least one row");
        if left == 0 && pm == 0 {
            out.push(SkewShape {
                outer: Partition(rows.iter().map(|r| r.1).collect()),
                inner: Partition(rows.iter().map(|r| r.0).filter(|&m| m > 0).collect()),
                normalization: Normalization::default(),
            });
        }
        for l in pm.max(1)..=pl {
            for m in 0..=pm.min(l - 1) {
                if l - m <= left {
                    rows.push((m, l));
                    rec(rows, size, left - (l - m), out);
                    rows.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    // Every column holds a cell, so λ_1 ≤ size.
    for l in 1..=size {
        for m in 0..l {
            if l - m <= size {
                let mut rows = vec![(m, l)];
                rec(&mut rows, size, size - (l - m), &mut out);
            }
        }
    }
    out
}

pub fn basic_shapes_up_to(max_cells: usize) -> Vec<SkewShape> {
    (1..=max_cells).flat_map(basic_shapes).collect()
}

/// Dense row-major indexing of a shape's cells.
#[derive(Clone, Debug)]
pub(crate) struct CellIndex {
    cells: Vec<Cell>,
    row_start: Vec<usize>,
    spans: Vec<(usize, usize)>,
}

impl CellIndex {
    pub(crate) fn new(s: &SkewShape) -> Self {
        let cells = s.cells();
        let mut row_start = vec![0; s.num_rows() + 2];
        let mut spans = vec![(1, 0); s.num_rows() + 2];
        let mut at = 0;
        for r in 1..=s.num_rows() {
            row_start[r] = at;
            spans[r] = s.row_span(r);
            at += spans[r].1 + 1 - spans[r].0;
        }
        CellIndex { cells, row_start, spans }
    }

    pub(crate) fn len(&self) -> usize {
        self.cells.len()
    }

    pub(crate) fn cell(&self, idx: usize) -> Cell {
        self.cells[idx]
    }

    pub(crate) fn index(&self, c: Cell) -> Option<usize> {
        if c.row == 0 || c.row + 1 >= self.spans.len() {
            return None;
        }
        let (a, b) = self.spans[c.row];
        (c.col >= a && c.col <= b).then(|| self.row_start[c.row] + c.col - a)
    }

    pub(crate) fn up(&self, idx: usize) -> Option<usize> {
        let c = self.cells[idx];
        if c.row == 1 {
            return None;
        }
        self.index(Cell::new(c.row - 1, c.col))
    }

    pub(crate) fn right(&self, idx: usize) -> Option<usize> {
        let c = self.cells[idx];
        self.index(Cell::new(c.row, c.col + 1))
    }
}
