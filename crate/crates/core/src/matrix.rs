//! Dense matrices over a [`Field`], with reduced row echelon form, rank,
//! kernel, and the block operations the lifting construction needs.
//!
//! Matrices are small (ambient dimensions of a few dozen at most), so the
//! representation is a flat row-major `Vec<u32>` of canonical element values.
//! Rank over GF(2) has a bit-packed fast path used by the exhaustive
//! distance scans.

use std::fmt;

use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GFMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> GFMatrix {
        GFMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> GFMatrix {
        let mut m = GFMatrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw row value slices.
    ///
    /// `cols` is explicit so the shape is defined even with no rows.
    /// Panics if a row has the wrong length or an entry is out of range.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> GFMatrix {
        let q = field.order();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length must equal the column count");
            for &v in row {
                assert!(v < q, "entry {v} is out of range for {field}");
                data.push(v);
            }
        }
        GFMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.data[r * self.cols + c])
    }

    pub(crate) fn raw(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        // element() on the round-trip asserts the value range; the field
        // identity check happens through add with zero.
        let v = self.field.add(value, self.field.zero()).value();
        self.data[r * self.cols + c] = v;
    }

    /// Row `r` as raw canonical values.
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut t = GFMatrix::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn assert_same_shape(&self, other: &GFMatrix) {
        assert!(self.field == other.field, "matrices over different fields");
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    pub fn add(&self, other: &GFMatrix) -> GFMatrix {
        self.assert_same_shape(other);
        self.zip_entries(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &GFMatrix) -> GFMatrix {
        self.assert_same_shape(other);
        self.zip_entries(other, |f, a, b| f.sub(a, b))
    }

    fn zip_entries(
        &self,
        other: &GFMatrix,
        op: impl Fn(&Field, FieldElement, FieldElement) -> FieldElement,
    ) -> GFMatrix {
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(f, f.element(a), f.element(b)).value())
            .collect();
        GFMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: FieldElement) -> GFMatrix {
        let f = &self.field;
        let data = self
            .data
            .iter()
            .map(|&a| f.mul(f.element(a), s).value())
            .collect();
        GFMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &GFMatrix) -> GFMatrix {
        assert!(self.field == other.field, "matrices over different fields");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = GFMatrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let a = f.element(a);
                for c in 0..other.cols {
                    let b = f.element(other.data[k * other.cols + c]);
                    let cur = f.element(out.data[r * other.cols + c]);
                    out.data[r * other.cols + c] = f.add(cur, f.mul(a, b)).value();
                }
            }
        }
        out
    }

    /// Vertical concatenation. Panics on width or field mismatch.
    pub fn stack(&self, other: &GFMatrix) -> GFMatrix {
        assert!(self.field == other.field, "matrices over different fields");
        assert_eq!(self.cols, other.cols, "stacked matrices must share a width");
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        GFMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with zero rows removed, plus the pivot
    /// column indices (0-based, strictly increasing, one per returned row).
    pub fn rref(&self) -> (GFMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| m.data[i * m.cols + c] != 0) else {
                continue;
            };
            if pivot_row != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, pivot_row * m.cols + j);
                }
            }
            let inv = f.inv(f.element(m.data[r * m.cols + c]));
            for j in c..m.cols {
                let v = f.element(m.data[r * m.cols + j]);
                m.data[r * m.cols + j] = f.mul(v, inv).value();
            }
            for i in 0..m.rows {
                if i == r || m.data[i * m.cols + c] == 0 {
                    continue;
                }
                let factor = f.element(m.data[i * m.cols + c]);
                for j in c..m.cols {
                    let v = f.element(m.data[i * m.cols + j]);
                    let sub = f.mul(factor, f.element(m.data[r * m.cols + j]));
                    m.data[i * m.cols + j] = f.sub(v, sub).value();
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if let Some(rows) = self.packed_rows() {
            return packed_rank(rows);
        }
        self.rref().1.len()
    }

    /// Basis of the right null space {x : Mx = 0}, one vector per row.
    /// The zero map (including a matrix with no rows) has the full ambient
    /// space as kernel, so the result then has `cols` rows.
    pub fn kernel(&self) -> GFMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = GFMatrix::zero(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.data[row * self.cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = f.neg(f.element(r.data[i * self.cols + fc]));
                out.data[row * self.cols + pc] = v.value();
            }
        }
        out
    }

    /// Rows packed into u64 words, bit `cols - 1 - j` holding column j.
    /// Available over GF(2) with at most 64 columns.
    pub(crate) fn packed_rows(&self) -> Option<Vec<u64>> {
        if self.field.order() != 2 || self.cols > 64 {
            return None;
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut word = 0u64;
            for c in 0..self.cols {
                word = (word << 1) | self.data[r * self.cols + c] as u64;
            }
            out.push(word);
        }
        Some(out)
    }
}

/// Rank of a set of GF(2) row vectors packed into u64 words.
pub(crate) fn packed_rank(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut slots = [0u64; 64];
    let mut rank = 0;
    for mut row in rows {
        while row != 0 {
            let lead = 63 - row.leading_zeros() as usize;
            if slots[lead] == 0 {
                slots[lead] = row;
                rank += 1;
                break;
            }
            row ^= slots[lead];
        }
    }
    rank
}

impl fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GFMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}
