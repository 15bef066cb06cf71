//! Linear rank-metric codes: maximum-rank-distance codes from q-linearized
//! evaluation polynomials, and their zero-constrained subcodes supported on
//! a Ferrers diagram.
//!
//! Codewords are m x t matrices over a prime field GF(q). The construction
//! works in the extension GF(q^M) with M = max(m, t): a codeword is the
//! evaluation of f(x) = sum a_i x^(q^i), with degree index at most
//! min(m, t) - delta, at the points 1, alpha, ..., alpha^(min(m,t)-1),
//! each symbol expanded to a q-ary column over the polynomial basis. When
//! m < t the matrices are transposed into shape; rank is transpose
//! invariant, so the distance is unaffected.

use thiserror::Error;

use crate::ferrers::FerrersDiagram;
use crate::field::{Field, FieldError};
use crate::matrix::GFMatrix;

/// Exhaustive rank-distance scans refuse codes with more than this many
/// codewords.
pub const RANK_SCAN_GUARD: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankMetricError {
    #[error("rank distance {delta} is out of range for {m}x{t} matrices")]
    DeltaOutOfRange { m: usize, t: usize, delta: usize },
    #[error("matrix codes need at least one row and one column")]
    EmptyShape,
    #[error("the construction works over a prime base field, got {0}")]
    NonPrimeBase(Field),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("code of dimension {dimension} over order {order} exceeds the rank scan guard of {guard} codewords")]
    ScanTooLarge {
        dimension: usize,
        order: u32,
        guard: u128,
    },
}

/// Rank distance between equal-shaped matrices: rank(x - y).
pub fn rank_distance(x: &GFMatrix, y: &GFMatrix) -> usize {
    x.sub(y).rank()
}

/// A linear code of m x t matrices over GF(q), stored by a basis.
///
/// The code is the row space of the basis over the base field; codewords
/// are indexed by base-q digit vectors of coefficients.
#[derive(Debug, Clone)]
pub struct LinearMatrixCode {
    field: Field,
    rows: usize,
    cols: usize,
    basis: Vec<GFMatrix>,
    designed_distance: usize,
    support: Option<FerrersDiagram>,
    attains_bound: Option<bool>,
}

impl LinearMatrixCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Codeword shape (rows, cols).
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of codewords, q^dimension.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.dimension() as u32)
            .expect("code size overflows u128")
    }

    pub fn basis(&self) -> &[GFMatrix] {
        &self.basis
    }

    /// The minimum rank distance the construction guarantees.
    pub fn designed_distance(&self) -> usize {
        self.designed_distance
    }

    /// The Ferrers diagram the code is supported on, if it was built as a
    /// diagram-constrained subcode.
    pub fn support(&self) -> Option<&FerrersDiagram> {
        self.support.as_ref()
    }

    /// Whether the dimension reaches the diagram's dimension bound.
    /// `None` for codes without a diagram constraint.
    pub fn attains_bound(&self) -> Option<bool> {
        self.attains_bound
    }

    /// Codeword for a coefficient index in 0..size(): the base-q digits of
    /// the index are the basis coefficients, least significant digit first.
    pub fn codeword(&self, index: u128) -> GFMatrix {
        let q = self.field.order() as u128;
        let mut rest = index;
        let mut word = GFMatrix::zero(&self.field, self.rows, self.cols);
        for b in &self.basis {
            if rest == 0 {
                break;
            }
            let digit = (rest % q) as u32;
            rest /= q;
            if digit != 0 {
                word = word.add(&b.scale(self.field.element(digit)));
            }
        }
        assert_eq!(rest, 0, "codeword index out of range");
        word
    }

    pub fn codewords(&self) -> impl Iterator<Item = GFMatrix> + '_ {
        (0..self.size()).map(|i| self.codeword(i))
    }
}

/// Maximum-rank-distance code of m x t matrices over a prime field, with
/// minimum rank distance exactly `delta` and dimension
/// max(m, t) * (min(m, t) - delta + 1).
pub fn gabidulin(
    field: &Field,
    m: usize,
    t: usize,
    delta: usize,
) -> Result<LinearMatrixCode, RankMetricError> {
    if field.extension_degree() != 1 {
        return Err(RankMetricError::NonPrimeBase(field.clone()));
    }
    if m == 0 || t == 0 {
        return Err(RankMetricError::EmptyShape);
    }
    let (big, small) = (m.max(t), m.min(t));
    if delta < 1 || delta > small {
        return Err(RankMetricError::DeltaOutOfRange { m, t, delta });
    }
    let p = field.characteristic();
    let ext = Field::new(p, big as u32)?;
    let alpha = if big > 1 { ext.element(p) } else { ext.one() };
    let points: Vec<_> = (0..small).map(|j| ext.pow(alpha, j as u64)).collect();
    let q = field.order() as u64;
    let mut basis = Vec::with_capacity(big * (small - delta + 1));
    for i in 0..=small - delta {
        // q^i stays below the extension order, which is capped at 2^16
        let qi = q.pow(i as u32);
        for b in 0..big {
            let mult = ext.pow(alpha, b as u64);
            let mut word = GFMatrix::zero(field, big, small);
            for (j, &g) in points.iter().enumerate() {
                let val = ext.mul(mult, ext.pow(g, qi));
                let coords = ext.coordinates(field, val).expect("prime base field");
                for (r, &c) in coords.iter().enumerate() {
                    word.set(r, j, c);
                }
            }
            basis.push(if m >= t { word } else { word.transpose() });
        }
    }
    Ok(LinearMatrixCode {
        field: field.clone(),
        rows: m,
        cols: t,
        basis,
        designed_distance: delta,
        support: None,
        attains_bound: None,
    })
}

/// Largest-known linear code supported on a Ferrers diagram with minimum
/// rank distance at least `delta`: the subcode of the maximum-rank-distance
/// code on the diagram's bounding box whose codewords vanish at every cell
/// outside the diagram.
///
/// Codewords have the diagram's untrimmed shape (weight x columns) so they
/// feed [`FerrersDiagram::lift`] directly; rows below the box are zero.
/// `attains_bound` records whether the dimension reaches
/// [`FerrersDiagram::dimension_bound`].
pub fn ferrers_code(
    diagram: &FerrersDiagram,
    delta: usize,
    field: &Field,
) -> Result<LinearMatrixCode, RankMetricError> {
    let k = diagram.rows();
    let t = diagram.cols();
    let box_rows = diagram.box_rows();
    if delta < 1 {
        return Err(RankMetricError::DeltaOutOfRange {
            m: box_rows,
            t,
            delta,
        });
    }
    let bound = diagram.dimension_bound(delta);
    if t == 0 || delta > box_rows.min(t) {
        return Ok(LinearMatrixCode {
            field: field.clone(),
            rows: k,
            cols: t,
            basis: Vec::new(),
            designed_distance: delta,
            support: Some(diagram.clone()),
            attains_bound: Some(bound == 0),
        });
    }
    let mrd = gabidulin(field, box_rows, t, delta)?;
    let off_cells: Vec<(usize, usize)> = (0..box_rows)
        .flat_map(|i| {
            (0..t)
                .filter(move |&s| !diagram.is_dot(i, s))
                .map(move |s| (i, s))
        })
        .collect();
    // Rows of the constraint matrix evaluate one off-diagram cell across the
    // basis; its kernel is the coefficient space of the subcode.
    let mut constraints = GFMatrix::zero(field, off_cells.len(), mrd.dimension());
    for (r, &(i, s)) in off_cells.iter().enumerate() {
        for (d, b) in mrd.basis().iter().enumerate() {
            constraints.set(r, d, b.entry(i, s));
        }
    }
    let kernel = constraints.kernel();
    let mut basis = Vec::with_capacity(kernel.rows());
    for z in 0..kernel.rows() {
        let mut word = GFMatrix::zero(field, k, t);
        for (d, b) in mrd.basis().iter().enumerate() {
            let coeff = field.element(kernel.raw(z, d));
            if coeff.is_zero() {
                continue;
            }
            for i in 0..box_rows {
                for s in 0..t {
                    let cur = word.entry(i, s);
                    word.set(i, s, field.add(cur, field.mul(coeff, b.entry(i, s))));
                }
            }
        }
        debug_assert!(
            (0..k).all(|i| (0..t).all(|s| diagram.is_dot(i, s) || word.entry(i, s).is_zero())),
            "subcode word leaks outside the diagram"
        );
        basis.push(word);
    }
    let dim = basis.len();
    Ok(LinearMatrixCode {
        field: field.clone(),
        rows: k,
        cols: t,
        basis,
        designed_distance: delta,
        support: Some(diagram.clone()),
        attains_bound: Some(dim == bound),
    })
}

/// Exact minimum rank distance by scanning the nonzero codewords (for a
/// linear code the minimum distance equals the minimum nonzero rank).
/// `None` for the zero code, whose minimum distance is vacuous.
pub fn min_rank_distance(code: &LinearMatrixCode) -> Result<Option<usize>, RankMetricError> {
    if code.dimension() == 0 {
        return Ok(None);
    }
    let words = (code.field().order() as u128)
        .checked_pow(code.dimension() as u32)
        .filter(|&w| w <= RANK_SCAN_GUARD)
        .ok_or(RankMetricError::ScanTooLarge {
            dimension: code.dimension(),
            order: code.field().order(),
            guard: RANK_SCAN_GUARD,
        })?;
    let mut min = usize::MAX;
    for x in 1..words {
        min = min.min(code.codeword(x).rank());
    }
    Ok(Some(min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::BinaryVector;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf2() -> Field {
        Field::binary()
    }

    fn diagram(s: &str) -> FerrersDiagram {
        FerrersDiagram::of(s.parse::<BinaryVector>().unwrap()).unwrap()
    }

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut StdRng) -> GFMatrix {
        let data: Vec<Vec<u32>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..f.order())).collect())
            .collect();
        GFMatrix::from_rows(f, cols, &data)
    }

    #[test]
    fn rank_distance_of_known_pair() {
        let f = gf2();
        let x = GFMatrix::identity(&f, 2);
        let y = GFMatrix::from_rows(&f, 2, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(rank_distance(&x, &y), 1);
        assert_eq!(rank_distance(&x, &x), 0);
    }

    #[test]
    fn rank_distance_is_a_metric_on_samples() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..500 {
            let q = [2u32, 3][rng.gen_range(0..2)];
            let f = if q == 2 {
                gf2()
            } else {
                Field::new(3, 1).unwrap()
            };
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let x = random_matrix(&f, rows, cols, &mut rng);
            let y = random_matrix(&f, rows, cols, &mut rng);
            let z = random_matrix(&f, rows, cols, &mut rng);
            assert_eq!(rank_distance(&x, &y), rank_distance(&y, &x));
            assert_eq!(rank_distance(&x, &y) == 0, x == y);
            assert!(rank_distance(&x, &z) <= rank_distance(&x, &y) + rank_distance(&y, &z));
            assert_eq!(
                rank_distance(&x, &y),
                rank_distance(&x.transpose(), &y.transpose())
            );
        }
    }

    #[test]
    fn mrd_code_3x3_delta_2() {
        let code = gabidulin(&gf2(), 3, 3, 2).unwrap();
        assert_eq!(code.dimension(), 6);
        assert_eq!(code.size(), 64);
        assert_eq!(min_rank_distance(&code).unwrap(), Some(2));
    }

    #[test]
    fn mrd_code_4x3_delta_3() {
        let code = gabidulin(&gf2(), 4, 3, 3).unwrap();
        assert_eq!(code.shape(), (4, 3));
        assert_eq!(code.dimension(), 4);
        assert_eq!(code.size(), 16);
        assert_eq!(min_rank_distance(&code).unwrap(), Some(3));
    }

    #[test]
    fn distance_one_code_is_the_full_space() {
        let code = gabidulin(&gf2(), 2, 3, 1).unwrap();
        assert_eq!(code.dimension(), 6);
        assert_eq!(min_rank_distance(&code).unwrap(), Some(1));
    }

    #[test]
    fn basis_matrices_are_linearly_independent() {
        for (m, t, delta) in [(3, 3, 2), (4, 3, 3), (2, 4, 2), (1, 1, 1), (4, 4, 4)] {
            let code = gabidulin(&gf2(), m, t, delta).unwrap();
            let flat: Vec<Vec<u32>> = code
                .basis()
                .iter()
                .map(|b| (0..m).flat_map(|r| b.row(r).to_vec()).collect())
                .collect();
            let mat = GFMatrix::from_rows(&gf2(), m * t, &flat);
            assert_eq!(mat.rank(), code.dimension());
        }
    }

    #[test]
    fn construction_errors() {
        let f = gf2();
        assert_eq!(
            gabidulin(&f, 3, 3, 0).unwrap_err(),
            RankMetricError::DeltaOutOfRange {
                m: 3,
                t: 3,
                delta: 0
            }
        );
        assert_eq!(
            gabidulin(&f, 3, 2, 3).unwrap_err(),
            RankMetricError::DeltaOutOfRange {
                m: 3,
                t: 2,
                delta: 3
            }
        );
        assert_eq!(
            gabidulin(&f, 0, 2, 1).unwrap_err(),
            RankMetricError::EmptyShape
        );
        let gf4 = Field::new(2, 2).unwrap();
        assert!(matches!(
            gabidulin(&gf4, 2, 2, 1),
            Err(RankMetricError::NonPrimeBase(_))
        ));
    }

    #[test]
    fn diagram_subcode_attains_its_bound() {
        let f = gf2();
        let code = ferrers_code(&diagram("100110"), 2, &f).unwrap();
        assert_eq!(code.dimension(), 2);
        assert_eq!(code.attains_bound(), Some(true));
        assert_eq!(code.shape(), (3, 3));
        let min = min_rank_distance(&code).unwrap().unwrap();
        assert!(min >= 2, "designed distance violated: {min}");
    }

    #[test]
    fn full_box_subcode_is_the_whole_mrd_code() {
        let f = gf2();
        let code = ferrers_code(&diagram("111000"), 2, &f).unwrap();
        assert_eq!(code.dimension(), 6);
        assert_eq!(code.attains_bound(), Some(true));
        assert_eq!(min_rank_distance(&code).unwrap(), Some(2));
    }

    #[test]
    fn single_dot_diagram_gives_the_zero_code() {
        let f = gf2();
        let code = ferrers_code(&diagram("001011"), 2, &f).unwrap();
        assert_eq!(code.dimension(), 0);
        assert_eq!(code.size(), 1);
        assert_eq!(code.attains_bound(), Some(true));
        assert_eq!(min_rank_distance(&code).unwrap(), None);
    }

    #[test]
    fn distance_one_subcode_fills_every_dot() {
        let f = gf2();
        for s in ["0110100", "100110", "11101000"] {
            let d = diagram(s);
            let code = ferrers_code(&d, 1, &f).unwrap();
            assert_eq!(code.dimension(), d.dot_count(), "{s}");
            assert_eq!(code.attains_bound(), Some(true));
        }
    }

    #[test]
    fn subcode_words_stay_inside_the_diagram() {
        let f = gf2();
        let d = diagram("0110100");
        let code = ferrers_code(&d, 2, &f).unwrap();
        assert_eq!(code.dimension(), 5);
        assert_eq!(code.attains_bound(), Some(true));
        for word in code.codewords() {
            for i in 0..d.rows() {
                for s in 0..d.cols() {
                    if !d.is_dot(i, s) {
                        assert!(word.entry(i, s).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn scan_guard_trips_on_large_codes() {
        let code = gabidulin(&gf2(), 5, 5, 1).unwrap();
        assert_eq!(code.dimension(), 25);
        assert!(matches!(
            min_rank_distance(&code),
            Err(RankMetricError::ScanTooLarge { .. })
        ));
    }
}
