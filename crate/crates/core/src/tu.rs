//! Recursive quadrant TU elimination over GF(p).
//!
//! A window `R x C` is split into NW, NE, SW, SE. NW is eliminated
//! recursively; its row operations span whole rows, so NE is carried along
//! (`B_1 = L_1 * NE`). Each SW row is then cleared against the NW pivots by
//! triangular back-substitution, which is `N_1 = -SW * U_1^{-1}` applied
//! without forming the inverse, and updates SE to `E_1 = SE + N_1 * B_1`.
//! The rows left without a pivot are eliminated recursively, first on the
//! left columns still open in SW, then on the right half. Windows at or
//! below the threshold fall back to column-scan Gaussian elimination.
//!
//! The final image is normalized to reduced echelon form with the pivot
//! columns swapped to the front, so it reads `[I_r X; 0 0]` through
//! Cartesian indices. That form is unique, which makes the output
//! independent of the storage layout and of the threshold.

use std::fmt;

use crate::codec::Curve;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{LayoutMatrix, Window};

/// One elementary operation on the working matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `row *= factor`
    RowScale {
        row: usize,
        factor: u32,
    },
    /// `dst += factor * src`
    RowAxpy {
        dst: usize,
        src: usize,
        factor: u32,
    },
    RowSwap {
        a: usize,
        b: usize,
    },
    ColSwap {
        a: usize,
        b: usize,
    },
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Transform::RowScale { row, factor } => write!(f, "scale {row} {factor}"),
            Transform::RowAxpy { dst, src, factor } => write!(f, "axpy {dst} {src} {factor}"),
            Transform::RowSwap { a, b } => write!(f, "rowswap {a} {b}"),
            Transform::ColSwap { a, b } => write!(f, "colswap {a} {b}"),
        }
    }
}

/// Ordered record of the operations applied during an elimination.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransformLog {
    entries: Vec<Transform>,
}

impl TransformLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[Transform] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, t: Transform) {
        self.entries.push(t);
    }

    pub fn count_col_swaps(&self) -> usize {
        self.entries
            .iter()
            .filter(|t| matches!(t, Transform::ColSwap { .. }))
            .count()
    }

    /// Check indices against side `n` and factors against GF(p).
    pub fn validate(&self, n: usize, field: PrimeField) -> Result<()> {
        let p = field.modulus();
        for (k, t) in self.entries.iter().enumerate() {
            let ok = match *t {
                Transform::RowScale { row, factor } => row < n && factor != 0 && factor < p,
                Transform::RowAxpy { dst, src, factor } => {
                    dst < n && src < n && dst != src && factor < p
                }
                Transform::RowSwap { a, b } | Transform::ColSwap { a, b } => a < n && b < n,
            };
            if !ok {
                return Err(Error::Correctness(format!(
                    "log entry {k} `{t}` invalid for n={n}, p={p}"
                )));
            }
        }
        Ok(())
    }

    /// Apply every entry, in order, to `target`.
    pub fn apply(&self, target: &mut LayoutMatrix) -> Result<()> {
        let n = target.n();
        self.validate(n, target.field())?;
        for t in &self.entries {
            match *t {
                Transform::RowScale { row, factor } => target.row_scale_from(row, factor, 0),
                Transform::RowAxpy { dst, src, factor } => {
                    target.row_axpy_from(dst, src, factor, 0)
                }
                Transform::RowSwap { a, b } => target.swap_rows_unchecked(a, b),
                Transform::ColSwap { a, b } => target.swap_cols_unchecked(a, b),
            }
        }
        Ok(())
    }

    /// Replay against a pristine copy of the input.
    pub fn replay(&self, original: &LayoutMatrix) -> Result<LayoutMatrix> {
        let mut m = original.clone();
        self.apply(&mut m)?;
        Ok(m)
    }
}

impl fmt::Display for TransformLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.entries {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TuOptions {
    /// Side at or below which a window is eliminated directly.
    pub threshold: usize,
    pub record_log: bool,
}

impl TuOptions {
    pub fn new(threshold: usize) -> Self {
        TuOptions {
            threshold,
            record_log: true,
        }
    }

    pub fn without_log(mut self) -> Self {
        self.record_log = false;
        self
    }
}

#[derive(Debug, Clone)]
pub struct TuResult {
    pub rank: usize,
    /// `[I_r X; 0 0]` in the input's layout.
    pub eliminated: LayoutMatrix,
    /// Original column index of each pivot, ascending.
    pub pivot_cols: Vec<usize>,
    /// Empty when logging was disabled.
    pub log: TransformLog,
}

#[derive(Debug, Clone)]
pub struct Step1Outcome {
    /// Rank `r` of NW.
    pub rank: usize,
    /// NW pivot columns before they were swapped to the front.
    pub pivot_cols: Vec<usize>,
    /// Number of leading log entries produced while eliminating NW alone.
    pub nw_ops: usize,
    pub log: TransformLog,
}

struct Engine<'a> {
    a: &'a mut LayoutMatrix,
    field: PrimeField,
    threshold: usize,
    log: Option<TransformLog>,
    /// Rows entering a window are zero left of it, so updates may start at
    /// the pivot column.
    left_clean: bool,
}

impl<'a> Engine<'a> {
    fn new(a: &'a mut LayoutMatrix, threshold: usize, record_log: bool, left_clean: bool) -> Self {
        let field = a.field();
        Engine {
            a,
            field,
            threshold,
            log: record_log.then(TransformLog::new),
            left_clean,
        }
    }

    fn record(&mut self, t: Transform) {
        if let Some(log) = self.log.as_mut() {
            log.push(t);
        }
    }

    fn log_len(&self) -> usize {
        self.log.as_ref().map_or(0, TransformLog::len)
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_rows_unchecked(x, y);
            self.record(Transform::RowSwap { a: x, b: y });
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_cols_unchecked(x, y);
            self.record(Transform::ColSwap { a: x, b: y });
        }
    }

    /// Zero `a[dst][col]` using pivot row `src` whose pivot sits at `col`.
    fn eliminate(&mut self, dst: usize, src: usize, col: usize) {
        let v = self.a.at(dst, col);
        if v == 0 {
            return;
        }
        let piv = self.a.at(src, col);
        let inv = self.field.inv(piv).expect("pivot is nonzero");
        let factor = self.field.neg(self.field.mul(v, inv));
        let from = if self.left_clean { col } else { 0 };
        self.a.row_axpy_from(dst, src, factor, from);
        self.record(Transform::RowAxpy { dst, src, factor });
    }

    /// Echelon form of window `w`: pivots land on rows `w.row0..w.row0 + k`
    /// with strictly increasing columns, remaining window rows are zero
    /// inside the window. Returns the pivot columns.
    fn reduce(&mut self, w: Window) -> Vec<usize> {
        if w.is_empty() {
            return Vec::new();
        }
        let small = w.rows <= self.threshold && w.cols <= self.threshold;
        if small || w.rows == 1 || w.cols == 1 {
            return self.base_case(w);
        }
        let [nw, _ne, sw, _se] = w.split(w.rows / 2, w.cols / 2);
        let left = Window::new(w.row0, w.col0, w.rows, nw.cols);

        let p1 = self.reduce(nw);
        let k1 = p1.len();
        self.clear_against(sw, w.row0, &p1);

        let p2 = self.reduce(sw);
        let k2 = p2.len();
        let mut pivots = self.merge(left, w.row0, &p1, sw.row0, &p2);
        debug_assert_eq!(pivots.len(), k1 + k2);

        let rest = Window::new(
            w.row0 + k1 + k2,
            w.col0 + nw.cols,
            w.rows - k1 - k2,
            w.cols - nw.cols,
        );
        pivots.extend(self.reduce(rest));
        pivots
    }

    /// Clear the pivot columns of every row of `target` against the echelon
    /// rows `top..top + pivots.len()`.
    fn clear_against(&mut self, target: Window, top: usize, pivots: &[usize]) {
        for row in target.row0..target.row0 + target.rows {
            for (k, &col) in pivots.iter().enumerate() {
                self.eliminate(row, top + k, col);
            }
        }
    }

    /// Interleave two echelon row blocks into a single staircase at the top
    /// of `w` using row swaps.
    fn merge(
        &mut self,
        w: Window,
        top1: usize,
        p1: &[usize],
        top2: usize,
        p2: &[usize],
    ) -> Vec<usize> {
        let mut want: Vec<(usize, usize)> = p1
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, top1 + k))
            .chain(p2.iter().enumerate().map(|(k, &c)| (c, top2 + k)))
            .collect();
        want.sort_unstable();
        // pos[r]: current row of the row originally at r; at[r]: inverse
        let base = w.row0;
        let mut pos: Vec<usize> = (0..w.rows).collect();
        let mut at: Vec<usize> = (0..w.rows).collect();
        for (dest, &(_, orig)) in want.iter().enumerate() {
            let cur = pos[orig - base];
            if cur != dest {
                self.swap_rows(base + dest, base + cur);
                let displaced = at[dest];
                at.swap(dest, cur);
                pos[orig - base] = dest;
                pos[displaced] = cur;
            }
        }
        want.into_iter().map(|(c, _)| c).collect()
    }

    /// Row-pivoted Gaussian elimination: leftmost column first, topmost
    /// nonzero row as pivot.
    fn base_case(&mut self, w: Window) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut cur = w.row0;
        let end = w.row0 + w.rows;
        for col in w.col0..w.col0 + w.cols {
            if cur == end {
                break;
            }
            let Some(pr) = (cur..end).find(|&r| self.a.at(r, col) != 0) else {
                continue;
            };
            self.swap_rows(cur, pr);
            for r in cur + 1..end {
                self.eliminate(r, cur, col);
            }
            pivots.push(col);
            cur += 1;
        }
        pivots
    }

    /// Scale pivots to one, clear above them, move pivot columns to the front.
    fn normalize(&mut self, pivots: &[usize]) {
        for (k, &col) in pivots.iter().enumerate().rev() {
            let piv = self.a.at(k, col);
            if piv != 1 {
                let inv = self.field.inv(piv).expect("pivot is nonzero");
                self.a.row_scale_from(k, inv, col);
                self.record(Transform::RowScale {
                    row: k,
                    factor: inv,
                });
            }
            for r in 0..k {
                self.eliminate(r, k, col);
            }
        }
        for (k, &col) in pivots.iter().enumerate() {
            self.swap_cols(k, col);
        }
    }
}

fn check_threshold(threshold: usize, n: usize) -> Result<()> {
    if threshold == 0 || !threshold.is_power_of_two() || threshold > n {
        return Err(Error::Spec(format!(
            "threshold {threshold} must be a power of two in [1, {n}]"
        )));
    }
    Ok(())
}

/// Full decomposition. Requires a binary-curve layout (power-of-two side)
/// and a power-of-two threshold no larger than the side.
pub fn tu_decompose(mut m: LayoutMatrix, opts: TuOptions) -> Result<TuResult> {
    if m.spec().curve == Curve::Peano {
        return Err(Error::Spec(format!("side {} is not a power of two", m.n())));
    }
    let n = m.n();
    check_threshold(opts.threshold, n)?;
    let mut eng = Engine::new(&mut m, opts.threshold, opts.record_log, true);
    let pivots = eng.reduce(Window::new(0, 0, n, n));
    eng.normalize(&pivots);
    let log = eng.log.take().unwrap_or_default();
    Ok(TuResult {
        rank: pivots.len(),
        eliminated: m,
        pivot_cols: pivots,
        log,
    })
}

/// One quadrant step on `window`: eliminate NW recursively, clear SW against
/// the NW pivots, then swap the pivot columns to the front of NW. Afterwards
/// NW reads `(U_1 G_1; 0 0)` with `U_1` upper triangular `r x r`, SW is zero
/// in its first `r` columns, NE holds `B_1` and SE holds `E_1`.
pub fn tu_step1(m: &mut LayoutMatrix, window: Window, threshold: usize) -> Result<Step1Outcome> {
    if threshold == 0 {
        return Err(Error::Spec("threshold must be at least 1".into()));
    }
    let nw = window.quadrant(crate::matrix::Quadrant::NW)?;
    let sw = window.quadrant(crate::matrix::Quadrant::SW)?;
    m.view(window)?;
    let left_clean =
        (window.row0..window.row0 + window.rows).all(|i| (0..window.col0).all(|j| m.at(i, j) == 0));
    let mut eng = Engine::new(m, threshold, true, left_clean);
    let pivots = eng.reduce(nw);
    let nw_ops = eng.log_len();
    eng.clear_against(sw, nw.row0, &pivots);
    for (k, &col) in pivots.iter().enumerate() {
        eng.swap_cols(nw.col0 + k, col);
    }
    let log = eng.log.take().unwrap_or_default();
    Ok(Step1Outcome {
        rank: pivots.len(),
        pivot_cols: pivots,
        nw_ops,
        log,
    })
}

/// Direct elimination of one window; returns its rank.
pub fn base_case_eliminate(
    m: &mut LayoutMatrix,
    window: Window,
    log: &mut TransformLog,
) -> Result<usize> {
    m.view(window)?;
    let left_clean =
        (window.row0..window.row0 + window.rows).all(|i| (0..window.col0).all(|j| m.at(i, j) == 0));
    let mut eng = Engine::new(m, usize::MAX, true, left_clean);
    let rank = eng.base_case(window).len();
    if let Some(entries) = eng.log.take() {
        log.entries.extend(entries.entries);
    }
    Ok(rank)
}

/// Rank by plain row reduction on a row-major copy.
pub fn rank_oracle(m: &LayoutMatrix) -> usize {
    let n = m.n();
    let p = m.field().modulus() as u64;
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j) as u64).collect())
        .collect();
    let inv = |a: u64| {
        // a^(p-2)
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let pinv = inv(rows[rank][col]);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] * pinv % p;
                for (v, &pv) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *v = (*v + (p - f) * pv) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
