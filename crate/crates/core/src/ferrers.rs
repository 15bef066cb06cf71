//! Echelon Ferrers forms of binary vectors, their Ferrers diagrams, the
//! dimension bound for rank-metric codes supported on a diagram, and the
//! lifting of diagram fillings to subspaces.
//!
//! For a nonzero binary vector v of weight k, the echelon Ferrers form
//! EF(v) is the k x n pattern whose rows carry a leading 1 at each support
//! position of v and a free cell ("dot") at every position that is right of
//! the row's leading 1 and not a support column. Substituting field values
//! for the dots yields exactly the RREF generator matrices with pivot set
//! supp(v), so lifted subspaces need no re-canonicalization.

use std::fmt;

use thiserror::Error;

use crate::matrix::GFMatrix;
use crate::subspace::{BinaryVector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FerrersError {
    #[error("the zero vector has no echelon Ferrers form")]
    ZeroVector,
    #[error("filling must be {expected_rows}x{expected_cols}, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("filling has a nonzero entry at ({row}, {col}), outside the diagram")]
    EntryOutsideDiagram { row: usize, col: usize },
}

/// The echelon Ferrers form of a nonzero binary vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonFerrersForm {
    v: BinaryVector,
    pivots: Vec<usize>,
}

impl EchelonFerrersForm {
    pub fn new(v: BinaryVector) -> Result<EchelonFerrersForm, FerrersError> {
        if v.weight() == 0 {
            return Err(FerrersError::ZeroVector);
        }
        let pivots = v.support().collect();
        Ok(EchelonFerrersForm { v, pivots })
    }

    pub fn identifying_vector(&self) -> BinaryVector {
        self.v
    }

    /// Leading-one columns, one per row, ascending (0-based).
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.v.len()
    }

    /// True where row i has a free cell at column j.
    pub fn is_dot(&self, i: usize, j: usize) -> bool {
        j > self.pivots[i] && !self.v.get(j)
    }

    pub fn dot_count(&self) -> usize {
        let k = self.rows();
        let n = self.cols();
        (0..k)
            .map(|i| (self.pivots[i] + 1..n).filter(|&j| !self.v.get(j)).count())
            .sum()
    }

    /// The Ferrers diagram: the dot pattern restricted to the columns that
    /// carry at least one dot.
    pub fn diagram(&self) -> FerrersDiagram {
        let n = self.cols();
        let columns: Vec<usize> = (0..n)
            .filter(|&j| !self.v.get(j) && j > self.pivots[0])
            .collect();
        let row_dots: Vec<usize> = self
            .pivots
            .iter()
            .map(|&p| columns.iter().filter(|&&j| j > p).count())
            .collect();
        FerrersDiagram {
            v: self.v,
            columns,
            row_dots,
        }
    }

    /// Grid rendering: '1' at leading ones, the dot glyph at free cells,
    /// '0' elsewhere; cells separated by single spaces.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows() {
            let cells: Vec<&str> = (0..self.cols())
                .map(|j| {
                    if j == self.pivots[i] {
                        "1"
                    } else if self.is_dot(i, j) {
                        "\u{2022}"
                    } else {
                        "0"
                    }
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// A top-right-justified Ferrers diagram extracted from an echelon Ferrers
/// form. Row i carries `row_dots(i)` dots, right-justified; row dot counts
/// are non-increasing.
#[derive(Clone, PartialEq, Eq)]
pub struct FerrersDiagram {
    v: BinaryVector,
    /// Ambient columns hosting the diagram, ascending.
    columns: Vec<usize>,
    /// Dots per row; row i occupies the last `row_dots[i]` diagram columns.
    row_dots: Vec<usize>,
}

impl FerrersDiagram {
    pub fn of(v: BinaryVector) -> Result<FerrersDiagram, FerrersError> {
        Ok(EchelonFerrersForm::new(v)?.diagram())
    }

    pub fn identifying_vector(&self) -> BinaryVector {
        self.v
    }

    /// Number of rows of the untrimmed pattern (the weight of v).
    pub fn rows(&self) -> usize {
        self.row_dots.len()
    }

    /// Number of diagram columns.
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Number of rows that carry at least one dot (the trimmed box height).
    pub fn box_rows(&self) -> usize {
        self.row_dots.iter().filter(|&&d| d > 0).count()
    }

    /// Ambient columns hosting the diagram, ascending (0-based).
    pub fn ambient_columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn row_dot_count(&self, i: usize) -> usize {
        self.row_dots[i]
    }

    pub fn is_dot(&self, i: usize, s: usize) -> bool {
        s < self.cols() && i < self.rows() && s >= self.cols() - self.row_dots[i]
    }

    pub fn dot_count(&self) -> usize {
        self.row_dots.iter().sum()
    }

    /// Largest dimension of a linear rank-metric code supported on this
    /// diagram with minimum rank distance `delta`: the smaller of the dot
    /// count of the last `box_rows - delta + 1` rows and the dot count of
    /// the first `cols - delta + 1` columns, zero when a window is empty.
    pub fn dimension_bound(&self, delta: usize) -> usize {
        assert!(delta >= 1, "rank distance is at least 1");
        let m = self.box_rows();
        let t = self.cols();
        if delta > m || delta > t {
            return 0;
        }
        let row_window: usize = (delta - 1..m).map(|i| self.row_dots[i]).sum();
        let col_window: usize = (0..=t - delta)
            .map(|s| (0..m).filter(|&i| self.is_dot(i, s)).count())
            .sum();
        row_window.min(col_window)
    }

    /// Lifts a filling of the diagram to the subspace generated by the
    /// corresponding echelon Ferrers form: leading ones at supp(v), the
    /// filling's entries at the dots. The result is canonical by
    /// construction.
    ///
    /// The filling must be rows() x cols() and zero outside the dots.
    pub fn lift(&self, filling: &GFMatrix) -> Result<Subspace, FerrersError> {
        let (k, t) = (self.rows(), self.cols());
        if filling.rows() != k || filling.cols() != t {
            return Err(FerrersError::ShapeMismatch {
                expected_rows: k,
                expected_cols: t,
                got_rows: filling.rows(),
                got_cols: filling.cols(),
            });
        }
        let n = self.v.len();
        let field = filling.field();
        let mut gen = GFMatrix::zero(field, k, n);
        let pivots: Vec<usize> = self.v.support().collect();
        for (i, &p) in pivots.iter().enumerate() {
            gen.set(i, p, field.one());
        }
        for i in 0..k {
            for s in 0..t {
                let value = filling.entry(i, s);
                if self.is_dot(i, s) {
                    gen.set(i, self.columns[s], value);
                } else if !value.is_zero() {
                    return Err(FerrersError::EntryOutsideDiagram { row: i, col: s });
                }
            }
        }
        Ok(Subspace::from_canonical(gen))
    }

    /// Inverse of [`FerrersDiagram::lift`]: reads the dot entries back out
    /// of a subspace whose identifying vector matches this diagram's.
    pub fn extract_filling(&self, s: &Subspace) -> GFMatrix {
        assert_eq!(
            s.identifying_vector(),
            self.v,
            "subspace belongs to a different diagram"
        );
        let gen = s.generator();
        let mut filling = GFMatrix::zero(gen.field(), self.rows(), self.cols());
        for i in 0..self.rows() {
            for (idx, &j) in self.columns.iter().enumerate() {
                if self.is_dot(i, idx) {
                    filling.set(i, idx, gen.entry(i, j));
                }
            }
        }
        filling
    }

    /// Grid rendering: the dot glyph at dots, blank elsewhere.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.box_rows() {
            let cells: Vec<&str> = (0..self.cols())
                .map(|s| if self.is_dot(i, s) { "\u{2022}" } else { " " })
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FerrersDiagram(v = {}, rows = {:?}, columns = {:?})",
            self.v, self.row_dots, self.columns
        )
    }
}
