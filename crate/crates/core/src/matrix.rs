//! Finite-field matrices stored in one linear array under a [`LayoutSpec`].
//!
//! The cell at Cartesian `(i, j)` lives at `storage[encode(i, j)]`; every
//! access goes through the layout's encoder. Sub-matrices are addressed by
//! [`Window`] descriptors and never copied.

use std::hash::Hasher;
use std::io::{BufRead, Write};

use fnv::FnvHasher;

use crate::codec::{CartesianIndex, LayoutSpec, LinearIndex};
use crate::error::{check_range, Axis, Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Largest side accepted for an in-memory matrix.
pub const MAX_SIDE: u64 = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutMatrix {
    spec: LayoutSpec,
    field: PrimeField,
    n: usize,
    storage: Vec<u32>,
}

/// A cell visited by a row or column traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub index: CartesianIndex,
    pub offset: LinearIndex,
    pub value: u32,
}

impl LayoutMatrix {
    pub fn zeros(spec: LayoutSpec, field: PrimeField) -> Result<Self> {
        spec.validate()?;
        let n = spec.side();
        if n > MAX_SIDE {
            return Err(Error::TooLarge(format!("side {n} exceeds {MAX_SIDE}")));
        }
        let n = n as usize;
        Ok(LayoutMatrix {
            spec,
            field,
            n,
            storage: vec![0; n * n],
        })
    }

    /// Build a matrix whose `(i, j)` entry is `f(i, j)` reduced mod p.
    pub fn from_fn(
        spec: LayoutSpec,
        field: PrimeField,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Result<Self> {
        let mut m = Self::zeros(spec, field)?;
        for i in 0..m.n {
            for j in 0..m.n {
                let v = field.reduce(f(i, j));
                m.put(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn identity(spec: LayoutSpec, field: PrimeField) -> Result<Self> {
        Self::from_fn(spec, field, |i, j| (i == j) as u64)
    }

    /// Load residues given in row-major order (`entries[i * n + j]`).
    pub fn from_dense(spec: LayoutSpec, field: PrimeField, entries: &[u32]) -> Result<Self> {
        let mut m = Self::zeros(spec, field)?;
        if entries.len() != m.n * m.n {
            return Err(Error::Incompatible(format!(
                "{} entries for a {}x{} layout",
                entries.len(),
                m.n,
                m.n
            )));
        }
        let n = m.n;
        for (k, &v) in entries.iter().enumerate() {
            m.put(k / n, k % n, field.reduce(v as u64));
        }
        Ok(m)
    }

    /// Residues in row-major order, independent of the storage layout.
    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(self.at(i, j));
            }
        }
        out
    }

    pub fn spec(&self) -> &LayoutSpec {
        &self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn storage(&self) -> &[u32] {
        &self.storage
    }

    #[inline]
    pub fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        self.spec.encode_unchecked(i as u64, j as u64) as usize
    }

    /// Unchecked read; `i, j < n` is a caller invariant.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.storage[self.offset(i, j)]
    }

    /// Unchecked write of an already-reduced residue.
    #[inline]
    pub fn put(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.modulus());
        let k = self.offset(i, j);
        self.storage[k] = v;
    }

    fn check(&self, idx: CartesianIndex) -> Result<(usize, usize)> {
        check_range(Axis::Row, idx.i, self.n as u64)?;
        check_range(Axis::Col, idx.j, self.n as u64)?;
        Ok((idx.i as usize, idx.j as usize))
    }

    pub fn get(&self, idx: CartesianIndex) -> Result<u32> {
        let (i, j) = self.check(idx)?;
        Ok(self.at(i, j))
    }

    pub fn element(&self, idx: CartesianIndex) -> Result<FieldElement> {
        Ok(self.field.element(self.get(idx)? as u64))
    }

    /// Store `value mod p` at `idx`.
    pub fn set(&mut self, idx: CartesianIndex, value: u64) -> Result<()> {
        let (i, j) = self.check(idx)?;
        let v = self.field.reduce(value);
        self.put(i, j, v);
        Ok(())
    }

    fn entry(&self, i: usize, j: usize) -> Entry {
        let k = self.offset(i, j);
        Entry {
            index: CartesianIndex::new(i as u64, j as u64),
            offset: LinearIndex(k as u64),
            value: self.storage[k],
        }
    }

    /// Cells of row `i` in ascending column order.
    pub fn row_iter(&self, i: usize) -> Result<impl Iterator<Item = Entry> + '_> {
        check_range(Axis::Row, i as u64, self.n as u64)?;
        Ok((0..self.n).map(move |j| self.entry(i, j)))
    }

    /// Cells of column `j` in ascending row order.
    pub fn col_iter(&self, j: usize) -> Result<impl Iterator<Item = Entry> + '_> {
        check_range(Axis::Col, j as u64, self.n as u64)?;
        Ok((0..self.n).map(move |i| self.entry(i, j)))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<()> {
        check_range(Axis::Row, a as u64, self.n as u64)?;
        check_range(Axis::Row, b as u64, self.n as u64)?;
        self.swap_rows_unchecked(a, b);
        Ok(())
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) -> Result<()> {
        check_range(Axis::Col, a as u64, self.n as u64)?;
        check_range(Axis::Col, b as u64, self.n as u64)?;
        self.swap_cols_unchecked(a, b);
        Ok(())
    }

    pub(crate) fn swap_rows_unchecked(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            let (x, y) = (self.offset(a, j), self.offset(b, j));
            self.storage.swap(x, y);
        }
    }

    pub(crate) fn swap_cols_unchecked(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n {
            let (x, y) = (self.offset(i, a), self.offset(i, b));
            self.storage.swap(x, y);
        }
    }

    /// `row[dst] += factor * row[src]` over columns `from..n`.
    pub(crate) fn row_axpy_from(&mut self, dst: usize, src: usize, factor: u32, from: usize) {
        let f = self.field;
        for j in from..self.n {
            let s = self.at(src, j);
            if s != 0 {
                let k = self.offset(dst, j);
                self.storage[k] = f.mul_add(self.storage[k], factor, s);
            }
        }
    }

    /// `row[i] *= factor` over columns `from..n`.
    pub(crate) fn row_scale_from(&mut self, i: usize, factor: u32, from: usize) {
        let f = self.field;
        for j in from..self.n {
            let k = self.offset(i, j);
            self.storage[k] = f.mul(self.storage[k], factor);
        }
    }

    /// Copy into a new storage order, preserving every Cartesian read.
    pub fn relayout(&self, target: LayoutSpec) -> Result<LayoutMatrix> {
        target.validate()?;
        if target.side() != self.n as u64 {
            return Err(Error::Incompatible(format!(
                "cannot move a {0}x{0} matrix into {target} with side {1}",
                self.n,
                target.side()
            )));
        }
        if target == self.spec {
            return Ok(self.clone());
        }
        let mut out = LayoutMatrix::zeros(target, self.field)?;
        for i in 0..self.n {
            for j in 0..self.n {
                out.put(i, j, self.at(i, j));
            }
        }
        Ok(out)
    }

    pub fn window(&self) -> Window {
        Window::new(0, 0, self.n, self.n)
    }

    pub fn view(&self, window: Window) -> Result<QuadrantView<'_>> {
        if window.row0 + window.rows > self.n || window.col0 + window.cols > self.n {
            return Err(Error::Split {
                rows: window.rows,
                cols: window.cols,
            });
        }
        Ok(QuadrantView {
            matrix: self,
            window,
        })
    }

    pub fn quadrant(&self, which: Quadrant) -> Result<QuadrantView<'_>> {
        self.view(self.window().quadrant(which)?)
    }

    /// 64-bit FNV-1a over the row-major residues, 4 little-endian bytes each.
    pub fn checksum(&self) -> u64 {
        let mut h = FnvHasher::default();
        for i in 0..self.n {
            for j in 0..self.n {
                h.write(&self.at(i, j).to_le_bytes());
            }
        }
        h.finish()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.at(i, j) == 0))
    }

    pub fn write_text<W: Write>(&self, out: W) -> Result<()> {
        MatrixFile {
            modulus: self.field.modulus(),
            n: self.n,
            entries: self.to_dense(),
        }
        .write(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    NW,
    NE,
    SW,
    SE,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NW, Quadrant::NE, Quadrant::SW, Quadrant::SE];
}

/// Rectangular window `[row0, row0 + rows) x [col0, col0 + cols)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub row0: usize,
    pub col0: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Window {
    pub const fn new(row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Window {
            row0,
            col0,
            rows,
            cols,
        }
    }

    pub fn origin(&self) -> CartesianIndex {
        CartesianIndex::new(self.row0 as u64, self.col0 as u64)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Split after `top` rows and `left` columns into NW, NE, SW, SE.
    pub fn split(&self, top: usize, left: usize) -> [Window; 4] {
        debug_assert!(top <= self.rows && left <= self.cols);
        let (bottom, right) = (self.rows - top, self.cols - left);
        [
            Window::new(self.row0, self.col0, top, left),
            Window::new(self.row0, self.col0 + left, top, right),
            Window::new(self.row0 + top, self.col0, bottom, left),
            Window::new(self.row0 + top, self.col0 + left, bottom, right),
        ]
    }

    /// One of the four equal quadrants; both extents must be even.
    pub fn quadrant(&self, which: Quadrant) -> Result<Window> {
        if !self.rows.is_multiple_of(2) || !self.cols.is_multiple_of(2) || self.is_empty() {
            return Err(Error::Split {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let parts = self.split(self.rows / 2, self.cols / 2);
        Ok(parts[which as usize])
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (self.row0..self.row0 + self.rows).contains(&i)
            && (self.col0..self.col0 + self.cols).contains(&j)
    }
}

/// Read-only window onto a parent matrix; local `(r, c)` reads the parent at
/// `(row0 + r, col0 + c)`.
#[derive(Debug, Clone, Copy)]
pub struct QuadrantView<'a> {
    matrix: &'a LayoutMatrix,
    window: Window,
}

impl<'a> QuadrantView<'a> {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn origin(&self) -> CartesianIndex {
        self.window.origin()
    }

    pub fn rows(&self) -> usize {
        self.window.rows
    }

    pub fn cols(&self) -> usize {
        self.window.cols
    }

    pub fn parent(&self) -> &'a LayoutMatrix {
        self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> Result<u32> {
        check_range(Axis::Row, r as u64, self.window.rows as u64)?;
        check_range(Axis::Col, c as u64, self.window.cols as u64)?;
        Ok(self.matrix.at(self.window.row0 + r, self.window.col0 + c))
    }

    pub fn quadrant(&self, which: Quadrant) -> Result<QuadrantView<'a>> {
        Ok(QuadrantView {
            matrix: self.matrix,
            window: self.window.quadrant(which)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        let w = self.window;
        (w.row0..w.row0 + w.rows)
            .all(|i| (w.col0..w.col0 + w.cols).all(|j| self.matrix.at(i, j) == 0))
    }
}

/// Text interchange format: a `sfc-matrix v1 p=<p> n=<n>` header, then `n`
/// lines of `n` space-separated residues in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub modulus: u32,
    pub n: usize,
    pub entries: Vec<u32>,
}

impl MatrixFile {
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "sfc-matrix v1 p={} n={}", self.modulus, self.n)?;
        let mut line = String::new();
        for row in self.entries.chunks(self.n.max(1)).take(self.n) {
            line.clear();
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    line.push(' ');
                }
                line.push_str(&v.to_string());
            }
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read<R: BufRead>(input: R) -> Result<MatrixFile> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty input".into()))??;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("sfc-matrix") || parts.next() != Some("v1") {
            return Err(Error::Format(format!("bad header `{header}`")));
        }
        let field = |part: Option<&str>, key: &str| -> Result<u64> {
            part.and_then(|s| s.strip_prefix(key))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Format(format!("bad header `{header}`")))
        };
        let modulus = field(parts.next(), "p=")?;
        let n = field(parts.next(), "n=")? as usize;
        if parts.next().is_some() {
            return Err(Error::Format(format!("bad header `{header}`")));
        }
        let modulus =
            u32::try_from(modulus).map_err(|_| Error::Format("modulus too large".into()))?;
        PrimeField::new(modulus)?;
        if n as u64 > MAX_SIDE {
            return Err(Error::TooLarge(format!("side {n} exceeds {MAX_SIDE}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing row {row}")))??;
            let before = entries.len();
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Format(format!("bad entry `{tok}` in row {row}")))?;
                if v >= modulus {
                    return Err(Error::Format(format!(
                        "entry {v} in row {row} not reduced mod {modulus}"
                    )));
                }
                entries.push(v);
            }
            if entries.len() - before != n {
                return Err(Error::Format(format!(
                    "row {row} has {} entries, expected {n}",
                    entries.len() - before
                )));
            }
        }
        if let Some(extra) = lines.next() {
            if !extra?.trim().is_empty() {
                return Err(Error::Format("trailing data after last row".into()));
            }
        }
        Ok(MatrixFile {
            modulus,
            n,
            entries,
        })
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.modulus)
    }

    /// Load into `spec`, which must have side `n`.
    pub fn into_matrix(self, spec: LayoutSpec) -> Result<LayoutMatrix> {
        let field = self.field()?;
        LayoutMatrix::from_dense(spec, field, &self.entries)
    }
}
