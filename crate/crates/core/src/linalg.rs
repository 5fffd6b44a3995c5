//! Exact linear algebra over F_q: incremental row echelon forms, kernels,
//! and span membership. Dense rows are used up to [`DENSE_COL_LIMIT`]
//! columns; above that systems are eliminated in sparse form with a
//! fill-reducing pivot choice.

use crate::field::{FqElem, FqField};

/// Column threshold between dense and sparse elimination.
pub const DENSE_COL_LIMIT: usize = 4096;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FqElem>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            rows,
            cols,
            data: vec![FqElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, FqElem::ONE);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<FqElem>>) -> FqMatrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        FqMatrix {
            rows: n,
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, f: &FqField, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![FqElem::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = FqElem::ZERO;
            let row = self.row(i);
            for (j, &x) in v.iter().enumerate() {
                if !x.is_zero() && !row[j].is_zero() {
                    acc = f.add(acc, f.mul(row[j], x));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn mat_mul(&self, f: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FqMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.set(i, j, f.add(out.get(i, j), f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { FqElem::ONE } else { FqElem::ZERO };
                if self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Incremental dense row-echelon accumulator. Rows are normalized so the
/// pivot entry is 1; at most one echelon row per pivot column.
pub struct Echelon<'f> {
    f: &'f FqField,
    pub cols: usize,
    rows: Vec<Vec<FqElem>>,
    pivot_cols: Vec<usize>,
    col_to_row: Vec<i32>,
}

impl<'f> Echelon<'f> {
    pub fn new(f: &'f FqField, cols: usize) -> Echelon<'f> {
        Echelon {
            f,
            cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            col_to_row: vec![-1; cols],
        }
    }

    /// Reduce a row against the current basis; insert the remainder if it
    /// is nonzero. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<FqElem>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let f = self.f;
        let mut j = 0;
        while j < self.cols {
            if row[j].is_zero() {
                j += 1;
                continue;
            }
            let r = self.col_to_row[j];
            if r < 0 {
                let c = f.inv(row[j]);
                for x in row[j..].iter_mut() {
                    *x = f.mul(*x, c);
                }
                self.col_to_row[j] = self.rows.len() as i32;
                self.pivot_cols.push(j);
                self.rows.push(row);
                return true;
            }
            let c = row[j];
            let er = &self.rows[r as usize];
            // row -= c * er, from j on
            for k in j..self.cols {
                let e = er[k];
                if !e.is_zero() {
                    row[k] = f.sub(row[k], f.mul(c, e));
                }
            }
            j += 1;
        }
        false
    }

    /// Reduce a row without inserting; returns the reduced remainder.
    pub fn reduce(&self, mut row: Vec<FqElem>) -> Vec<FqElem> {
        let f = self.f;
        let mut j = 0;
        while j < self.cols {
            if row[j].is_zero() {
                j += 1;
                continue;
            }
            let r = self.col_to_row[j];
            if r < 0 {
                j += 1;
                continue;
            }
            let c = row[j];
            let er = &self.rows[r as usize];
            for k in j..self.cols {
                let e = er[k];
                if !e.is_zero() {
                    row[k] = f.sub(row[k], f.mul(c, e));
                }
            }
        }
        row
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Fully reduce above pivots (RREF).
    pub fn reduce_upward(&mut self) {
        let f = self.f;
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..self.rows.len()).collect();
            idx.sort_by_key(|&r| self.pivot_cols[r]);
            idx
        };
        for &r in &order {
            let pc = self.pivot_cols[r];
            for r2 in 0..self.rows.len() {
                if r2 == r {
                    continue;
                }
                let c = self.rows[r2][pc];
                if c.is_zero() {
                    continue;
                }
                let src = self.rows[r].clone();
                let dst = &mut self.rows[r2];
                for k in pc..self.cols {
                    if !src[k].is_zero() {
                        dst[k] = f.sub(dst[k], f.mul(c, src[k]));
                    }
                }
            }
        }
    }

    /// Basis of the right kernel of the accumulated row space, deterministic:
    /// one vector per free column, in ascending column order.
    pub fn kernel_basis(&mut self) -> Vec<Vec<FqElem>> {
        self.reduce_upward();
        let f = self.f;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if self.col_to_row[free] >= 0 {
                continue;
            }
            let mut v = vec![FqElem::ZERO; self.cols];
            v[free] = FqElem::ONE;
            for (r, row) in self.rows.iter().enumerate() {
                let pc = self.pivot_cols[r];
                if pc < free {
                    v[pc] = f.neg(row[free]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Sparse row: (column, value) pairs sorted by column, values nonzero.
pub type SparseRow = Vec<(u32, FqElem)>;

/// Incremental sparse echelon for wide systems.
pub struct SparseEchelon<'f> {
    f: &'f FqField,
    pub cols: usize,
    rows: Vec<SparseRow>,
    col_to_row: Vec<i32>,
}

impl<'f> SparseEchelon<'f> {
    pub fn new(f: &'f FqField, cols: usize) -> SparseEchelon<'f> {
        SparseEchelon {
            f,
            cols,
            rows: Vec::new(),
            col_to_row: vec![-1; cols],
        }
    }

    fn axpy(f: &FqField, row: &SparseRow, c: FqElem, er: &SparseRow) -> SparseRow {
        // row - c*er, merged
        let mut out = Vec::with_capacity(row.len() + er.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < row.len() || j < er.len() {
            if j >= er.len() || (i < row.len() && row[i].0 < er[j].0) {
                out.push(row[i]);
                i += 1;
            } else if i >= row.len() || er[j].0 < row[i].0 {
                let v = f.neg(f.mul(c, er[j].1));
                if !v.is_zero() {
                    out.push((er[j].0, v));
                }
                j += 1;
            } else {
                let v = f.sub(row[i].1, f.mul(c, er[j].1));
                if !v.is_zero() {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        let f = self.f;
        loop {
            let Some(&(lead, v)) = row.first() else {
                return false;
            };
            let r = self.col_to_row[lead as usize];
            if r < 0 {
                let c = f.inv(v);
                for (_, x) in row.iter_mut() {
                    *x = f.mul(*x, c);
                }
                self.col_to_row[lead as usize] = self.rows.len() as i32;
                self.rows.push(row);
                return true;
            }
            let er = &self.rows[r as usize];
            row = Self::axpy(f, &row, v, er);
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Deterministic kernel basis of a dense matrix (pivot order by column
/// index); dimension is cols - rank.
pub fn kernel_basis(f: &FqField, m: &FqMatrix) -> Vec<Vec<FqElem>> {
    let mut ech = Echelon::new(f, m.cols);
    for i in 0..m.rows {
        ech.insert(m.row(i).to_vec());
    }
    ech.kernel_basis()
}

pub fn rank(f: &FqField, m: &FqMatrix) -> usize {
    let mut ech = Echelon::new(f, m.cols);
    for i in 0..m.rows {
        ech.insert(m.row(i).to_vec());
    }
    ech.rank()
}

/// Span tracker that can express new vectors as combinations of the
/// vectors that enlarged the span. Augments each row with bookkeeping
/// coordinates; a bookkeeping slot is only consumed by successful
/// inserts, so coefficient i always refers to the i-th vector for which
/// `insert` returned true.
pub struct RowSpan<'f> {
    f: &'f FqField,
    cols: usize,
    cap: usize,
    rows: Vec<Vec<FqElem>>, // width cols + cap
    col_to_row: Vec<i32>,
}

impl<'f> RowSpan<'f> {
    pub fn new(f: &'f FqField, cols: usize, cap: usize) -> RowSpan<'f> {
        RowSpan {
            f,
            cols,
            cap,
            rows: Vec::new(),
            col_to_row: vec![-1; cols],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; true if it enlarged the span.
    pub fn insert(&mut self, v: &[FqElem]) -> bool {
        assert!(self.rows.len() < self.cap, "RowSpan capacity exceeded");
        let mut row = Vec::with_capacity(self.cols + self.cap);
        row.extend_from_slice(v);
        row.extend(vec![FqElem::ZERO; self.cap]);
        // tentative slot: reclaimed if the vector turns out dependent
        row[self.cols + self.rows.len()] = FqElem::ONE;
        let f = self.f;
        let mut j = 0;
        while j < self.cols {
            if row[j].is_zero() {
                j += 1;
                continue;
            }
            let r = self.col_to_row[j];
            if r < 0 {
                let c = f.inv(row[j]);
                for x in row[j..].iter_mut() {
                    *x = f.mul(*x, c);
                }
                self.col_to_row[j] = self.rows.len() as i32;
                self.rows.push(row);
                return true;
            }
            let c = row[j];
            let er = self.rows[r as usize].clone();
            for k in j..self.cols + self.cap {
                if !er[k].is_zero() {
                    row[k] = f.sub(row[k], f.mul(c, er[k]));
                }
            }
        }
        false
    }

    /// Coefficients expressing v over the span-enlarging vectors, if v
    /// lies in the span.
    pub fn express(&self, v: &[FqElem]) -> Option<Vec<FqElem>> {
        let f = self.f;
        let mut row = Vec::with_capacity(self.cols + self.cap);
        row.extend_from_slice(v);
        row.extend(vec![FqElem::ZERO; self.cap]);
        let mut j = 0;
        while j < self.cols {
            if row[j].is_zero() {
                j += 1;
                continue;
            }
            let r = self.col_to_row[j];
            if r < 0 {
                return None;
            }
            let c = row[j];
            let er = &self.rows[r as usize];
            for k in j..self.cols + self.cap {
                if !er[k].is_zero() {
                    row[k] = f.sub(row[k], f.mul(c, er[k]));
                }
            }
        }
        // v - sum matched: the bookkeeping tail holds -coefficients
        Some(
            row[self.cols..self.cols + self.rows.len()]
                .iter()
                .map(|&x| f.neg(x))
                .collect(),
        )
    }
}
