//! Young diagrams in an `l x r` frame, standing in for threshold bipartite
//! graphs: row `i` of length `λ_i` is the left vertex `x_i` adjacent to
//! `y_1..y_{λ_i}`. Matchings are non-attacking rook placements.
//!
//! Two moves never increase any rook number: the out-block move (shift an
//! out-corner to an in-corner further from the origin) and a legal partial
//! transpose (conjugate the sub-board weakly below and right of a box).
//! [`minimize_to_lex`] alternates them until the lex diagram is reached.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, is_bipartite_threshold, BipartiteGraph};
use crate::matchings::MatchingVector;

/// A box `(row, col)` of a diagram, 1-indexed in matrix numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Coordinate sum `s(P)`.
    pub fn sum(&self) -> usize {
        self.row + self.col
    }
}

impl From<[usize; 2]> for Cell {
    fn from([row, col]: [usize; 2]) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for [usize; 2] {
    fn from(c: Cell) -> Self {
        [c.row, c.col]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition with at most `rows` parts, each at most `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    rows: usize,
    cols: usize,
    parts: Vec<usize>,
}

impl YoungDiagram {
    /// Pads `parts` with zeros to `rows` entries and checks the shape.
    pub fn new(rows: usize, cols: usize, parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        if parts.len() > rows {
            if parts[rows..].iter().any(|&p| p != 0) {
                return Err(Error::InvalidDiagram(format!(
                    "{} nonzero parts do not fit in {rows} rows",
                    parts.iter().filter(|&&p| p > 0).count()
                )));
            }
            parts.truncate(rows);
        }
        parts.resize(rows, 0);
        if let Some(w) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "row {} is longer than row {}",
                w + 2,
                w + 1
            )));
        }
        if parts.first().is_some_and(|&p| p > cols) {
            return Err(Error::InvalidDiagram(format!(
                "row 1 has length {} > {cols} columns",
                parts[0]
            )));
        }
        Ok(YoungDiagram { rows, cols, parts })
    }

    /// `L_{rows,cols}(e)`: the first `e` boxes in row-major order.
    pub fn lex(rows: usize, cols: usize, e: usize) -> Result<Self> {
        if e > rows * cols {
            return Err(Error::EdgeCountOutOfRange {
                e,
                max: rows * cols,
            });
        }
        let mut parts = vec![0; rows];
        if let Some(q) = e.checked_div(cols) {
            let c = e % cols;
            parts[..q].fill(cols);
            if c > 0 {
                parts[q] = c;
            }
        }
        YoungDiagram::new(rows, cols, parts)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Length of row `i`, zero outside the frame.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.row <= self.rows && c.col <= self.row_len(c.row)
    }

    pub fn is_lex(&self) -> bool {
        YoungDiagram::lex(self.rows, self.cols, self.size()).is_ok_and(|l| &l == self)
    }

    /// The full transpose, living in the `cols x rows` frame.
    pub fn conjugate(&self) -> YoungDiagram {
        let parts = (1..=self.cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        YoungDiagram {
            rows: self.cols,
            cols: self.rows,
            parts,
        }
    }

    pub fn boxes(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }

    /// Every diagram in the frame, in reverse lex order of the part vectors.
    pub fn all_in_frame(rows: usize, cols: usize) -> Vec<YoungDiagram> {
        fn rec(
            rows: usize,
            cols: usize,
            max: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<YoungDiagram>,
        ) {
            if cur.len() == rows {
                out.push(YoungDiagram {
                    rows,
                    cols,
                    parts: cur.clone(),
                });
                return;
            }
            for p in (0..=max).rev() {
                cur.push(p);
                rec(rows, cols, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, cols, &mut Vec::with_capacity(rows), &mut out);
        out
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `"l r : λ1,λ2,..."`.
impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} : ", self.rows, self.cols)?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("diagram {s:?}: {why}"));
        let (frame, parts) = s
            .split_once(':')
            .ok_or_else(|| bad("expected \"l r : parts\""))?;
        let dims: Vec<usize> = frame
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("frame must be two integers")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(bad("frame must be two integers"));
        };
        let parts: Vec<usize> = parts
            .split([',', ' ', '\t'])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad("parts must be integers")))
            .collect::<Result<_>>()?;
        YoungDiagram::new(rows, cols, parts)
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for YoungDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A threshold bipartite graph as a diagram, with the orders used to line
/// neighborhoods up as row prefixes: row `i` is left vertex
/// `left_order[i - 1]`, column `j` is right vertex `right_order[j - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEmbedding {
    pub diagram: YoungDiagram,
    pub left_order: Vec<usize>,
    pub right_order: Vec<usize>,
}

pub fn diagram_from_bipartite(b: &BipartiteGraph) -> Result<DiagramEmbedding> {
    if !is_bipartite_threshold(b) {
        return Err(Error::NotBipartiteThreshold);
    }
    let mut left_order: Vec<usize> = (1..=b.left()).collect();
    let ld = b.left_degrees();
    left_order.sort_by_key(|&i| (std::cmp::Reverse(ld[i - 1]), i));
    let mut right_order: Vec<usize> = (1..=b.right()).collect();
    let rd = b.right_degrees();
    right_order.sort_by_key(|&j| (std::cmp::Reverse(rd[j - 1]), j));

    let parts: Vec<usize> = left_order.iter().map(|&i| ld[i - 1]).collect();
    for (row, &i) in left_order.iter().enumerate() {
        let want = right_order[..parts[row]].iter().fold(0, |m, &j| m | bit(j));
        debug_assert_eq!(
            b.left_mask(i),
            want,
            "chain neighborhoods are degree prefixes"
        );
    }
    Ok(DiagramEmbedding {
        diagram: YoungDiagram::new(b.left(), b.right(), parts)?,
        left_order,
        right_order,
    })
}

/// `x_i ~ y_j` exactly when `j <= λ_i`.
pub fn bipartite_from_diagram(d: &YoungDiagram) -> BipartiteGraph {
    let masks = d
        .parts
        .iter()
        .map(|&p| if p == 64 { u64::MAX } else { (1u64 << p) - 1 })
        .collect();
    BipartiteGraph::from_masks(d.rows, d.cols, masks).expect("diagram fits its frame")
}

/// Rook numbers `m_k(D)`.
///
/// Peeling the shortest nonzero row (length `t`) gives
/// `m_k(λ) = m_k(λ') + t * m_{k-1}(λ' - 1)`, since every longer row loses
/// exactly the column the peeled rook takes. Unrolled from the shortest
/// row upward: a row of length `a` above `k - 1` placed rooks has
/// `a - (k - 1)` free columns.
pub fn rook_vector(d: &YoungDiagram) -> MatchingVector {
    let width = (d.rows + d.cols) / 2 + 1;
    let mut f = vec![BigUint::zero(); width];
    f[0] = BigUint::one();
    for &a in d.parts.iter().rev().filter(|&&a| a > 0) {
        for k in (1..width).rev() {
            let free = a.saturating_sub(k - 1);
            if free > 0 && !f[k - 1].is_zero() {
                let add = &f[k - 1] * BigUint::from(free);
                f[k] += add;
            }
        }
    }
    MatchingVector::new(f)
}

/// Boxes with nothing to the right or below, top row first.
pub fn out_corners(d: &YoungDiagram) -> Vec<Cell> {
    (1..=d.rows)
        .filter(|&i| d.row_len(i) >= 1 && (i == d.rows || d.row_len(i + 1) < d.row_len(i)))
        .map(|i| Cell::new(i, d.row_len(i)))
        .collect()
}

/// Frame positions where adding a box yields a diagram, top row first.
pub fn in_corners(d: &YoungDiagram) -> Vec<Cell> {
    (1..=d.rows)
        .filter(|&i| d.row_len(i) < d.cols && (i == 1 || d.row_len(i - 1) > d.row_len(i)))
        .map(|i| Cell::new(i, d.row_len(i) + 1))
        .collect()
}

/// `D - P + P'` for an out-corner `P` and in-corner `P'` with
/// `s(P) < s(P')`, in different rows and columns.
pub fn out_block_move(d: &YoungDiagram, p: Cell, p2: Cell) -> Result<YoungDiagram> {
    if !out_corners(d).contains(&p) {
        return Err(Error::NotOutCorner(p));
    }
    if !in_corners(d).contains(&p2) {
        return Err(Error::NotInCorner(p2));
    }
    if p.sum() >= p2.sum() {
        return Err(Error::NotFurtherOut(p.sum(), p2.sum()));
    }
    if p.row == p2.row || p.col == p2.col {
        return Err(Error::SharedLine(p, p2));
    }
    let mut parts = d.parts.clone();
    parts[p.row - 1] -= 1;
    parts[p2.row - 1] += 1;
    YoungDiagram::new(d.rows, d.cols, parts)
}

/// First valid out-block move, preferring the lowest out-corner and then
/// the in-corner with the largest coordinate sum.
pub fn find_out_block_move(d: &YoungDiagram) -> Option<(Cell, Cell)> {
    let outs = out_corners(d);
    let mut ins = in_corners(d);
    ins.sort_by_key(|c| (std::cmp::Reverse(c.sum()), c.row));
    outs.iter().rev().find_map(|&p| {
        ins.iter()
            .find(|&&q| p.sum() < q.sum() && p.row != q.row && p.col != q.col)
            .map(|&q| (p, q))
    })
}

/// Conjugates the boxes `(a, b)` with `a >= i`, `b >= j` through
/// `(a, b) -> (b - j + i, a - i + j)`, keeping the rest.
pub fn transpose_at(d: &YoungDiagram, at: Cell) -> Result<YoungDiagram> {
    if !d.contains(at) {
        return Err(Error::BoxNotInDiagram(at));
    }
    let (i, j) = (at.row, at.col);
    let span = d.rows + d.cols + 1;
    let mut grid = vec![vec![false; span + 1]; span + 1];
    for c in d.boxes() {
        let (a, b) = if c.row >= i && c.col >= j {
            (c.col - j + i, c.row - i + j)
        } else {
            (c.row, c.col)
        };
        grid[a][b] = true;
    }
    let illegal = |row: usize, reason: String| Error::IllegalTranspose { at, row, reason };
    let mut parts = Vec::with_capacity(d.rows);
    let mut above = usize::MAX;
    for (a, line) in grid.iter().enumerate().skip(1) {
        let len = line.iter().skip(1).take_while(|&&x| x).count();
        if line.iter().skip(len + 2).any(|&x| x) {
            return Err(illegal(a, "is not left-justified".into()));
        }
        if len == 0 {
            if a <= d.rows {
                parts.push(0);
            }
            above = 0;
            continue;
        }
        if a > d.rows {
            return Err(illegal(
                a,
                format!("lies outside the {} frame rows", d.rows),
            ));
        }
        if len > d.cols {
            return Err(illegal(a, format!("needs length {len} > {}", d.cols)));
        }
        if len > above {
            return Err(illegal(
                a,
                format!("has length {len} > {above} of the row above"),
            ));
        }
        above = len;
        parts.push(len);
    }
    YoungDiagram::new(d.rows, d.cols, parts)
}

/// `D1 < D2` when the row-major-least box of `D1 Δ D2` lies in `D1`, i.e.
/// at the first differing row `D1` is longer.
pub fn lex_compare(a: &YoungDiagram, b: &YoungDiagram) -> Result<Ordering> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::FrameMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    Ok(b.parts.cmp(&a.parts))
}

/// For a non-lex diagram with no out-block move (and `rows <= cols`), a
/// legal transpose that moves strictly earlier in lex order.
///
/// With `P` the lowest out-corner and `Q` the highest in-corner, try
/// `S = (ρ(Q), c(P))`, then `S' = (ρ(Q), r - v(P, Q))`.
pub fn lex_decreasing_transpose(d: &YoungDiagram) -> Result<(Cell, YoungDiagram)> {
    if d.rows > d.cols {
        return Err(Error::FrameNotNormalized(d.rows, d.cols));
    }
    if d.is_lex() {
        return Err(Error::AlreadyLex);
    }
    if find_out_block_move(d).is_some() {
        return Err(Error::HasOutBlockMove);
    }
    // a non-lex diagram is neither empty nor full, so both corner lists are nonempty
    let p = *out_corners(d).last().expect("non-lex diagram has a box");
    let q = *in_corners(d)
        .first()
        .expect("non-lex diagram has a free cell");
    let v = p.row.abs_diff(q.row);
    let s = Cell::new(q.row, p.col);
    let s_alt = Cell::new(q.row, d.cols.saturating_sub(v));

    for at in [s, s_alt] {
        if let Ok(next) = transpose_at(d, at) {
            if lex_compare(&next, d)? == Ordering::Less {
                return Ok((at, next));
            }
        }
    }
    Err(Error::TheoryGap {
        diagram: d.to_string(),
        s,
        s_alt,
    })
}

/// One step of a [`MoveTrace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Move {
    #[serde(rename = "outblock")]
    OutBlock {
        #[serde(rename = "P")]
        from: Cell,
        #[serde(rename = "P2")]
        to: Cell,
    },
    Transpose {
        #[serde(rename = "P")]
        at: Cell,
    },
    /// Whole-diagram transpose swapping the frame to `rows <= cols`.
    Conjugate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveTrace {
    pub steps: Vec<Move>,
}

impl MoveTrace {
    /// Re-applies every step from `start`.
    pub fn replay(&self, start: &YoungDiagram) -> Result<YoungDiagram> {
        let mut cur = start.clone();
        for (n, step) in self.steps.iter().enumerate() {
            cur = match *step {
                Move::OutBlock { from, to } => out_block_move(&cur, from, to),
                Move::Transpose { at } => transpose_at(&cur, at),
                Move::Conjugate => Ok(cur.conjugate()),
            }
            .map_err(|e| Error::ReplayMismatch(n, e.to_string()))?;
        }
        Ok(cur)
    }
}

/// Drives `d` to the lex diagram with out-block moves, falling back to
/// lex-decreasing transposes. The pair (total rook count, lex rank) drops
/// at every step.
pub fn minimize_to_lex(d: &YoungDiagram) -> Result<(YoungDiagram, MoveTrace)> {
    let mut trace = MoveTrace::default();
    let mut cur = d.clone();
    if cur.rows > cur.cols {
        cur = cur.conjugate();
        trace.steps.push(Move::Conjugate);
    }
    while !cur.is_lex() {
        if let Some((from, to)) = find_out_block_move(&cur) {
            cur = out_block_move(&cur, from, to)?;
            trace.steps.push(Move::OutBlock { from, to });
        } else {
            let (at, next) = lex_decreasing_transpose(&cur)?;
            cur = next;
            trace.steps.push(Move::Transpose { at });
        }
    }
    Ok((cur, trace))
}
