//! Puncturing a constant-dimension code through a hyperplane: the punctured
//! code collects the codewords that lie inside the hyperplane Q together
//! with the traces c intersect Q of the codewords through a distinguished
//! vector v outside Q, all mapped onto coordinates of Q. Dimensions drop
//! from {k} to {k-1, k} and the claimed minimum distance drops by one.
//!
//! The exhaustive pairwise distance scan used to verify punctured (and
//! constructed) codes lives here as well.

use rayon::prelude::*;
use thiserror::Error;

use crate::field::Field;
use crate::matrix::{packed_rank, GFMatrix};
use crate::multilevel::SubspaceCode;
use crate::subspace::{intersection, subspace_distance, BinaryVector, Subspace};

/// Exhaustive pairwise scans refuse codes with more than this many pairs.
pub const PAIR_SCAN_GUARD: u128 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PunctureError {
    #[error("a hyperplane of F_q^{n} must have dimension {expected}, got {got}")]
    WrongDimension {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("coordinate index {index} is out of range for ambient dimension {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("the distinguished vector must be a single row of length {n}")]
    VectorShape { n: usize },
    #[error("the distinguished vector is zero")]
    ZeroVector,
    #[error("the distinguished vector lies in the hyperplane")]
    VectorInHyperplane,
    #[error(
        "ambient dimension mismatch: hyperplane lives in F_q^{hyperplane}, code in F_q^{code}"
    )]
    AmbientMismatch { hyperplane: usize, code: usize },
    #[error("the code, hyperplane, and vector must share one field instance")]
    FieldMismatch,
    #[error("puncturing needs a constant-dimension code")]
    MixedDimension,
    #[error("a distance scan needs at least two codewords")]
    Singleton,
    #[error("scan over {pairs} pairs exceeds the guard of {guard}")]
    ScanTooLarge { pairs: u128, guard: u128 },
}

/// An (n-1)-dimensional subspace of F_q^n, with the coefficient
/// isomorphism onto F_q^(n-1) given by its generator's pivot coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    space: Subspace,
    pivots: Vec<usize>,
}

impl Hyperplane {
    /// The hyperplane {x : x_index = 0}, whose coefficient isomorphism
    /// deletes that coordinate.
    pub fn coordinate(field: &Field, n: usize, index: usize) -> Result<Hyperplane, PunctureError> {
        if index >= n {
            return Err(PunctureError::CoordinateOutOfRange { index, n });
        }
        let rows: Vec<Vec<u32>> = (0..n)
            .filter(|&j| j != index)
            .map(|j| {
                let mut row = vec![0u32; n];
                row[j] = 1;
                row
            })
            .collect();
        let space = Subspace::from_rows(field, n, &rows).expect("coordinate rows are well formed");
        Ok(Hyperplane::from_subspace(space).expect("n - 1 independent rows"))
    }

    /// Wraps an arbitrary subspace of dimension n - 1.
    pub fn from_subspace(space: Subspace) -> Result<Hyperplane, PunctureError> {
        let n = space.ambient();
        if space.dim() + 1 != n {
            return Err(PunctureError::WrongDimension {
                n,
                expected: n.saturating_sub(1),
                got: space.dim(),
            });
        }
        let (_, pivots) = space.generator().rref();
        Ok(Hyperplane { space, pivots })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn contains_subspace(&self, c: &Subspace) -> bool {
        c.is_subspace_of(&self.space)
    }

    pub fn contains_vector(&self, v: &GFMatrix) -> bool {
        self.space.contains(v)
    }

    /// Maps a subspace contained in this hyperplane onto F_q^(n-1) by
    /// reading generator coordinates at the hyperplane's pivot columns.
    /// For a coordinate hyperplane this deletes the dropped coordinate.
    pub fn project(&self, s: &Subspace) -> Subspace {
        debug_assert!(
            self.contains_subspace(s),
            "projection needs s inside the hyperplane"
        );
        let gen = s.generator();
        let rows: Vec<Vec<u32>> = (0..gen.rows())
            .map(|r| self.pivots.iter().map(|&p| gen.raw(r, p)).collect())
            .collect();
        Subspace::from_generator(&GFMatrix::from_rows(s.field(), self.pivots.len(), &rows))
    }
}

/// Survivor counts for one identifying-vector fiber of the input code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSurvivors {
    pub vector: BinaryVector,
    /// Codewords of the fiber contained in the hyperplane.
    pub contained: usize,
    /// Codewords of the fiber passing through the distinguished vector.
    pub through_vector: usize,
}

/// Accounting of a puncturing operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureReport {
    pub input_size: usize,
    pub output_size: usize,
    /// Codewords contained in the hyperplane (kept at full dimension).
    pub contained: usize,
    /// Codewords through the distinguished vector (traced down one
    /// dimension).
    pub through_vector: usize,
    /// Output collisions between the two parts; zero whenever the input is
    /// constant-dimension, since the parts land in different dimensions.
    pub overlap: usize,
    /// Per-fiber survivor counts, in first-appearance order of the input
    /// code's identifying vectors.
    pub fibers: Vec<FiberSurvivors>,
}

/// Punctures a constant-dimension code through hyperplane `q` at the
/// distinguished vector `v` (which must lie outside `q`).
///
/// The output unites the projections of the codewords contained in `q`
/// with the projections of c intersect q for the codewords c through `v`,
/// in input order (contained part first), deduplicated keep-first. The
/// claimed distance drops by one.
pub fn puncture(
    code: &SubspaceCode,
    q: &Hyperplane,
    v: &GFMatrix,
) -> Result<(SubspaceCode, PunctureReport), PunctureError> {
    let n = code.ambient();
    if q.ambient() != n {
        return Err(PunctureError::AmbientMismatch {
            hyperplane: q.ambient(),
            code: n,
        });
    }
    if q.subspace().field() != code.field() || v.field() != code.field() {
        return Err(PunctureError::FieldMismatch);
    }
    if v.rows() != 1 || v.cols() != n {
        return Err(PunctureError::VectorShape { n });
    }
    if v.is_zero() {
        return Err(PunctureError::ZeroVector);
    }
    if q.contains_vector(v) {
        return Err(PunctureError::VectorInHyperplane);
    }
    if !code.is_empty() && code.constant_dimension().is_none() {
        return Err(PunctureError::MixedDimension);
    }

    let mut contained_words = Vec::new();
    let mut through_words = Vec::new();
    let mut fibers: Vec<FiberSurvivors> = Vec::new();
    for word in code.words() {
        let iv = word.identifying_vector();
        let pos = match fibers.iter().position(|f| f.vector == iv) {
            Some(p) => p,
            None => {
                fibers.push(FiberSurvivors {
                    vector: iv,
                    contained: 0,
                    through_vector: 0,
                });
                fibers.len() - 1
            }
        };
        tally_word(
            word,
            q,
            v,
            &mut fibers[pos],
            &mut contained_words,
            &mut through_words,
        );
    }

    let contained = contained_words.len();
    let through_vector = through_words.len();
    let mut seen = std::collections::HashSet::new();
    let mut words = Vec::with_capacity(contained + through_vector);
    let mut overlap = 0;
    for w in contained_words.into_iter().chain(through_words) {
        if seen.insert(w.clone()) {
            words.push(w);
        } else {
            overlap += 1;
        }
    }
    let report = PunctureReport {
        input_size: code.len(),
        output_size: words.len(),
        contained,
        through_vector,
        overlap,
        fibers,
    };
    let claimed = code
        .claimed_distance()
        .and_then(|d| (d >= 2).then_some(d - 1));
    let out = SubspaceCode::new(code.field(), n - 1, claimed, words);
    Ok((out, report))
}

fn tally_word(
    word: &Subspace,
    q: &Hyperplane,
    v: &GFMatrix,
    entry: &mut FiberSurvivors,
    contained_words: &mut Vec<Subspace>,
    through_words: &mut Vec<Subspace>,
) {
    if q.contains_subspace(word) {
        entry.contained += 1;
        contained_words.push(q.project(word));
    } else if word.contains(v) {
        entry.through_vector += 1;
        let trace = intersection(word, q.subspace());
        assert_eq!(
            trace.dim(),
            word.dim() - 1,
            "a codeword through v meets the hyperplane in one dimension less"
        );
        through_words.push(q.project(&trace));
    }
}

/// Result of an exhaustive pairwise minimum-distance scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceScan {
    pub minimum: usize,
    pub pairs: u64,
    pub expected: Option<usize>,
    /// Whether `minimum >= expected`; `None` without an expectation.
    pub satisfied: Option<bool>,
}

/// Scans every codeword pair and returns the exact minimum subspace
/// distance, in parallel, with a bit-packed rank kernel over GF(2).
pub fn verify_min_distance(
    code: &SubspaceCode,
    expected: Option<usize>,
) -> Result<DistanceScan, PunctureError> {
    let n = code.len();
    if n < 2 {
        return Err(PunctureError::Singleton);
    }
    let pairs = n as u128 * (n as u128 - 1) / 2;
    if pairs > PAIR_SCAN_GUARD {
        return Err(PunctureError::ScanTooLarge {
            pairs,
            guard: PAIR_SCAN_GUARD,
        });
    }
    let packed: Option<Vec<(usize, &[u64])>> = code
        .words()
        .iter()
        .map(|w| w.packed_generator().map(|p| (w.dim(), p)))
        .collect();
    let minimum = match packed {
        Some(rows) => (0..n - 1)
            .into_par_iter()
            .map(|i| {
                let (di, ri) = rows[i];
                let mut best = usize::MAX;
                for &(dj, rj) in &rows[i + 1..] {
                    let rank = packed_rank(ri.iter().chain(rj).copied());
                    best = best.min(2 * rank - di - dj);
                }
                best
            })
            .min()
            .expect("n >= 2"),
        None => (0..n - 1)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| subspace_distance(&code.words()[i], &code.words()[j]))
                    .min()
                    .expect("inner range nonempty")
            })
            .min()
            .expect("n >= 2"),
    };
    Ok(DistanceScan {
        minimum,
        pairs: pairs as u64,
        expected,
        satisfied: expected.map(|e| minimum >= e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilevel::construct_code;

    fn gf2() -> Field {
        Field::binary()
    }

    fn row(f: &Field, bits: &[u32]) -> GFMatrix {
        GFMatrix::from_rows(f, bits.len(), &[bits.to_vec()])
    }

    #[test]
    fn coordinate_hyperplane_drops_one_coordinate() {
        let f = gf2();
        let q = Hyperplane::coordinate(&f, 4, 3).unwrap();
        assert_eq!(q.subspace().dim(), 3);
        let inside = Subspace::from_rows(&f, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let outside = Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 1]]).unwrap();
        assert!(q.contains_subspace(&inside));
        assert!(!q.contains_subspace(&outside));
        let projected = q.project(&inside);
        assert_eq!(projected.ambient(), 3);
        assert_eq!(projected.generator().row(0), &[1, 1, 0]);
        assert_eq!(projected.generator().row(1), &[0, 0, 1]);
    }

    #[test]
    fn general_hyperplane_projection_is_dimension_preserving() {
        let f = gf2();
        // x1 + x2 + x3 + x4 = 0
        let q = Hyperplane::from_subspace(
            Subspace::from_rows(
                &f,
                4,
                &[vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]],
            )
            .unwrap(),
        )
        .unwrap();
        let inside = Subspace::from_rows(&f, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert!(q.contains_subspace(&inside));
        assert_eq!(q.project(&inside).dim(), 2);
    }

    #[test]
    fn hyperplane_requires_codimension_one() {
        let f = gf2();
        let thin = Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(
            Hyperplane::from_subspace(thin).unwrap_err(),
            PunctureError::WrongDimension {
                n: 4,
                expected: 3,
                got: 1
            }
        );
        assert_eq!(
            Hyperplane::coordinate(&f, 4, 4).unwrap_err(),
            PunctureError::CoordinateOutOfRange { index: 4, n: 4 }
        );
    }

    #[test]
    fn puncture_validates_its_inputs() {
        let f = gf2();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let q = Hyperplane::coordinate(&f, 6, 5).unwrap();
        let in_plane = row(&f, &[1, 0, 0, 0, 0, 0]);
        assert_eq!(
            puncture(&code, &q, &in_plane).unwrap_err(),
            PunctureError::VectorInHyperplane
        );
        let zero = GFMatrix::zero(&f, 1, 6);
        assert_eq!(
            puncture(&code, &q, &zero).unwrap_err(),
            PunctureError::ZeroVector
        );
        let short = row(&f, &[1, 0, 0, 0, 0]);
        assert_eq!(
            puncture(&code, &q, &short).unwrap_err(),
            PunctureError::VectorShape { n: 6 }
        );
        let q5 = Hyperplane::coordinate(&f, 5, 4).unwrap();
        assert_eq!(
            puncture(&code, &q5, &row(&f, &[1, 0, 0, 0, 0, 1])).unwrap_err(),
            PunctureError::AmbientMismatch {
                hyperplane: 5,
                code: 6
            }
        );
    }

    #[test]
    fn punctured_code_counts_are_consistent() {
        let f = gf2();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let q = Hyperplane::coordinate(&f, 6, 5).unwrap();
        let v = row(&f, &[1, 0, 0, 0, 0, 1]);
        let (out, report) = puncture(&code, &q, &v).unwrap();
        assert_eq!(report.input_size, 71);
        assert_eq!(report.overlap, 0);
        assert_eq!(report.output_size, report.contained + report.through_vector);
        assert_eq!(out.len(), report.output_size);
        assert_eq!(out.ambient(), 5);
        assert_eq!(out.claimed_distance(), Some(3));
        let profile = out.dimension_profile();
        assert!(profile.keys().all(|&d| d == 2 || d == 3));
        let fiber_contained: usize = report.fibers.iter().map(|f| f.contained).sum();
        let fiber_through: usize = report.fibers.iter().map(|f| f.through_vector).sum();
        assert_eq!(fiber_contained, report.contained);
        assert_eq!(fiber_through, report.through_vector);
        let scan = verify_min_distance(&out, Some(3)).unwrap();
        assert_eq!(scan.satisfied, Some(true));
    }

    #[test]
    fn distance_scan_matches_the_claimed_distance() {
        let f = gf2();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let scan = verify_min_distance(&code, Some(4)).unwrap();
        assert_eq!(scan.minimum, 4);
        assert_eq!(scan.pairs, 71 * 70 / 2);
        assert_eq!(scan.satisfied, Some(true));
    }

    #[test]
    fn distance_scan_needs_two_codewords() {
        let f = gf2();
        let lone = SubspaceCode::new(
            &f,
            4,
            None,
            vec![Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 0]]).unwrap()],
        );
        assert_eq!(
            verify_min_distance(&lone, None).unwrap_err(),
            PunctureError::Singleton
        );
    }

    #[test]
    fn distance_scan_guard_trips() {
        let f = gf2();
        let n = 15;
        let mut words = Vec::new();
        for bits in 1u64..=20001 {
            let rows = vec![(0..n)
                .map(|j| ((bits >> (n - 1 - j)) & 1) as u32)
                .collect::<Vec<u32>>()];
            words.push(Subspace::from_rows(&f, n, &rows).unwrap());
        }
        let code = SubspaceCode::new(&f, n, None, words);
        assert!(matches!(
            verify_min_distance(&code, None),
            Err(PunctureError::ScanTooLarge { .. })
        ));
    }
}
