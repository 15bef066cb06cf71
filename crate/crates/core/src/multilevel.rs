//! The multilevel construction: a constant-weight binary skeleton code
//! selects a set of echelon Ferrers forms, each fiber is filled with a
//! diagram-constrained rank-metric code, and the lifted fibers are united
//! into a constant-dimension subspace code.
//!
//! Two distance laws make the union work when the skeleton has minimum
//! Hamming distance 2*delta and every fiber code has minimum rank distance
//! delta: codewords from different fibers are at subspace distance at least
//! the Hamming distance of their identifying vectors, and codewords from
//! the same fiber are at subspace distance exactly twice the rank distance
//! of their fillings. [`verify_fiber_distances`] checks both laws directly.

use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::ferrers::{FerrersDiagram, FerrersError};
use crate::field::Field;
use crate::rank_metric::{ferrers_code, rank_distance, RankMetricError};
use crate::subspace::{subspace_distance, BinaryVector, Subspace};

/// Fibers refuse to enumerate more than this many codewords.
pub const FIBER_GUARD: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("minimum Hamming distance must be a positive even number, got {0}")]
    OddDistance(usize),
    #[error("weight {k} exceeds the length {n}")]
    WeightExceedsLength { k: usize, n: usize },
    #[error("skeleton length {n} exceeds the supported maximum {max}")]
    LengthTooLarge { n: usize, max: usize },
    #[error("skeleton word {word} has length {got}, expected {expected}")]
    SkeletonLength {
        word: BinaryVector,
        expected: usize,
        got: usize,
    },
    #[error("skeleton word {word} has weight {got}, expected {expected}")]
    SkeletonWeight {
        word: BinaryVector,
        expected: usize,
        got: usize,
    },
    #[error("skeleton word {0} appears twice")]
    SkeletonDuplicate(BinaryVector),
    #[error(
        "skeleton words {a} and {b} are at Hamming distance {got}, below the required {required}"
    )]
    SkeletonDistance {
        a: BinaryVector,
        b: BinaryVector,
        got: usize,
        required: usize,
    },
    #[error("skeleton must contain at least one word")]
    EmptySkeleton,
    #[error("fiber {vector} holds {size} codewords, above the enumeration guard of {guard}")]
    FiberTooLarge {
        vector: BinaryVector,
        size: u128,
        guard: u128,
    },
    #[error("distance law checks need a constant-dimension code")]
    MixedDimension,
    #[error(transparent)]
    Ferrers(#[from] FerrersError),
    #[error(transparent)]
    RankMetric(#[from] RankMetricError),
}

/// All weight-k binary vectors of length n in descending lexicographic
/// order, so 1^k 0^(n-k) comes first.
pub fn weight_k_vectors(n: usize, k: usize) -> Vec<BinaryVector> {
    assert!(n <= 24, "length {n} exceeds the supported maximum 24");
    assert!(k <= n, "weight cannot exceed the length");
    let mut out = Vec::new();
    for bits in (0..1u64 << n).rev() {
        if bits.count_ones() as usize == k {
            out.push(BinaryVector::new(n, bits));
        }
    }
    out
}

/// A constant-weight binary code used as the skeleton of the multilevel
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonCode {
    n: usize,
    weight: usize,
    min_distance: Option<usize>,
    words: Vec<BinaryVector>,
}

impl SkeletonCode {
    /// Validates and wraps an explicit word list: uniform length n, uniform
    /// weight, no duplicates. Word order is preserved.
    pub fn from_words(
        n: usize,
        weight: usize,
        words: &[BinaryVector],
    ) -> Result<SkeletonCode, ConstructionError> {
        if words.is_empty() {
            return Err(ConstructionError::EmptySkeleton);
        }
        let mut seen = HashSet::new();
        for &w in words {
            if w.len() != n {
                return Err(ConstructionError::SkeletonLength {
                    word: w,
                    expected: n,
                    got: w.len(),
                });
            }
            if w.weight() != weight {
                return Err(ConstructionError::SkeletonWeight {
                    word: w,
                    expected: weight,
                    got: w.weight(),
                });
            }
            if !seen.insert(w) {
                return Err(ConstructionError::SkeletonDuplicate(w));
            }
        }
        let min_distance = pairwise_min_distance(words);
        Ok(SkeletonCode {
            n,
            weight,
            min_distance,
            words: words.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BinaryVector] {
        &self.words
    }

    /// Minimum pairwise Hamming distance; `None` for fewer than two words.
    pub fn min_distance(&self) -> Option<usize> {
        self.min_distance
    }
}

fn pairwise_min_distance(words: &[BinaryVector]) -> Option<usize> {
    let mut min = None;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = a.hamming_distance(b);
            min = Some(min.map_or(d, |m: usize| m.min(d)));
        }
    }
    min
}

/// Greedy constant-weight lexicode: sweep the weight-k vectors in
/// descending lexicographic order and keep each vector at Hamming distance
/// at least d from everything kept so far. The all-ones-prefix vector
/// 1^k 0^(n-k) is always kept first.
pub fn lexicode_skeleton(n: usize, k: usize, d: usize) -> Result<SkeletonCode, ConstructionError> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(ConstructionError::OddDistance(d));
    }
    if k > n {
        return Err(ConstructionError::WeightExceedsLength { k, n });
    }
    if n > 24 {
        return Err(ConstructionError::LengthTooLarge { n, max: 24 });
    }
    let mut kept: Vec<BinaryVector> = Vec::new();
    for v in weight_k_vectors(n, k) {
        if kept.iter().all(|u| u.hamming_distance(&v) >= d) {
            kept.push(v);
        }
    }
    SkeletonCode::from_words(n, k, &kept)
}

/// Construction record for one fiber of the multilevel construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub vector: BinaryVector,
    pub dimension: usize,
    pub bound: usize,
    pub attains_bound: bool,
    pub size: u128,
}

/// A code in projective space: a finite set of subspaces of F_q^n.
///
/// Codes built by [`construct_code`] are constant-dimension and carry a
/// per-fiber construction record; punctured and parsed codes may not.
#[derive(Debug, Clone)]
pub struct SubspaceCode {
    pub(crate) field: Field,
    pub(crate) ambient: usize,
    pub(crate) claimed_distance: Option<usize>,
    pub(crate) words: Vec<Subspace>,
    pub(crate) fibers: Option<Vec<FiberReport>>,
    pub(crate) comments: Vec<String>,
}

impl SubspaceCode {
    pub fn new(
        field: &Field,
        ambient: usize,
        claimed_distance: Option<usize>,
        words: Vec<Subspace>,
    ) -> SubspaceCode {
        for w in &words {
            assert!(w.field() == field, "codeword over a different field");
            assert_eq!(
                w.ambient(),
                ambient,
                "codeword in a different ambient space"
            );
        }
        debug_assert_eq!(
            words.iter().collect::<HashSet<_>>().len(),
            words.len(),
            "duplicate codewords"
        );
        SubspaceCode {
            field: field.clone(),
            ambient,
            claimed_distance,
            words,
            fibers: None,
            comments: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The minimum subspace distance the construction claims; verification
    /// is separate.
    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Per-fiber construction record, present on codes built by
    /// [`construct_code`].
    pub fn fibers(&self) -> Option<&[FiberReport]> {
        self.fibers.as_deref()
    }

    /// Free-form annotation lines carried through the file format.
    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Codeword count per dimension, ascending by dimension.
    pub fn dimension_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for w in &self.words {
            *profile.entry(w.dim()).or_insert(0) += 1;
        }
        profile
    }

    /// The common dimension, if every codeword has the same one.
    pub fn constant_dimension(&self) -> Option<usize> {
        let mut dims = self.words.iter().map(|w| w.dim());
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    /// Codeword count per identifying vector, in vector order.
    pub fn identifying_histogram(&self) -> BTreeMap<BinaryVector, usize> {
        let mut hist = BTreeMap::new();
        for w in &self.words {
            *hist.entry(w.identifying_vector()).or_insert(0) += 1;
        }
        hist
    }
}

/// Runs the multilevel construction over F_q^n with subspace dimension k
/// and fiber rank distance delta, aiming at minimum subspace distance
/// 2*delta.
///
/// `skeleton` defaults to [`lexicode_skeleton`] with distance 2*delta. A
/// provided skeleton must have length n, weight k, and minimum distance at
/// least 2*delta. Codewords are ordered fiber by fiber in skeleton order,
/// lexicographically by generator entries within each fiber.
pub fn construct_code(
    field: &Field,
    n: usize,
    k: usize,
    delta: usize,
    skeleton: Option<&SkeletonCode>,
) -> Result<SubspaceCode, ConstructionError> {
    assert!(delta >= 1, "rank distance is at least 1");
    if k > n {
        return Err(ConstructionError::WeightExceedsLength { k, n });
    }
    let required = 2 * delta;
    let owned;
    let skeleton = match skeleton {
        Some(s) => s,
        None => {
            owned = lexicode_skeleton(n, k, required)?;
            &owned
        }
    };
    for &w in skeleton.words() {
        if w.len() != n {
            return Err(ConstructionError::SkeletonLength {
                word: w,
                expected: n,
                got: w.len(),
            });
        }
        if w.weight() != k {
            return Err(ConstructionError::SkeletonWeight {
                word: w,
                expected: k,
                got: w.weight(),
            });
        }
    }
    let words_list = skeleton.words();
    for (i, &a) in words_list.iter().enumerate() {
        for &b in &words_list[i + 1..] {
            let got = a.hamming_distance(&b);
            if got == 0 {
                return Err(ConstructionError::SkeletonDuplicate(a));
            }
            if got < required {
                return Err(ConstructionError::SkeletonDistance {
                    a,
                    b,
                    got,
                    required,
                });
            }
        }
    }

    let mut words = Vec::new();
    let mut fibers = Vec::with_capacity(skeleton.len());
    let mut seen: HashSet<Subspace> = HashSet::new();
    for &v in skeleton.words() {
        let diagram = FerrersDiagram::of(v)?;
        let fiber = ferrers_code(&diagram, delta, field)?;
        let size = fiber.size();
        if size > FIBER_GUARD {
            return Err(ConstructionError::FiberTooLarge {
                vector: v,
                size,
                guard: FIBER_GUARD,
            });
        }
        let mut lifted: Vec<Subspace> = fiber
            .codewords()
            .map(|w| diagram.lift(&w).expect("fiber codewords fit their diagram"))
            .collect();
        lifted.sort();
        for s in &lifted {
            assert!(seen.insert(s.clone()), "lifted codewords collide");
        }
        fibers.push(FiberReport {
            vector: v,
            dimension: fiber.dimension(),
            bound: diagram.dimension_bound(delta),
            attains_bound: fiber.attains_bound().unwrap_or(false),
            size,
        });
        words.extend(lifted);
    }
    let mut code = SubspaceCode::new(field, n, Some(required), words);
    code.fibers = Some(fibers);
    Ok(code)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Same identifying vector: subspace distance must equal twice the rank
    /// distance of the fillings.
    SameFiber,
    /// Different identifying vectors: subspace distance must be at least
    /// their Hamming distance.
    CrossFiber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceLawViolation {
    pub kind: ViolationKind,
    /// Codeword indices into the checked code.
    pub left: usize,
    pub right: usize,
    pub distance: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceLawReport {
    pub pairs: u64,
    pub same_fiber_pairs: u64,
    pub cross_fiber_pairs: u64,
    pub violations: Vec<DistanceLawViolation>,
}

impl DistanceLawReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pair selection for the verification scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// Checks the two fiber distance laws on codeword pairs, either all of
/// them or a seeded random sample. Works on any constant-dimension code:
/// the canonical generators with a common pivot set are exactly the
/// fillings of that echelon Ferrers form, so the laws are testable without
/// construction metadata.
pub fn verify_fiber_distances(
    code: &SubspaceCode,
    mode: CheckMode,
) -> Result<DistanceLawReport, ConstructionError> {
    if code.len() >= 2 && code.constant_dimension().is_none() {
        return Err(ConstructionError::MixedDimension);
    }
    if code.len() < 2 || code.constant_dimension() == Some(0) {
        return Ok(DistanceLawReport {
            pairs: 0,
            same_fiber_pairs: 0,
            cross_fiber_pairs: 0,
            violations: Vec::new(),
        });
    }
    let vectors: Vec<BinaryVector> = code
        .words()
        .iter()
        .map(|w| w.identifying_vector())
        .collect();
    let mut diagrams: BTreeMap<BinaryVector, FerrersDiagram> = BTreeMap::new();
    for &v in &vectors {
        diagrams
            .entry(v)
            .or_insert_with(|| FerrersDiagram::of(v).expect("nonzero identifying vector"));
    }
    let fillings: Vec<_> = code
        .words()
        .iter()
        .zip(&vectors)
        .map(|(w, v)| diagrams[v].extract_filling(w))
        .collect();

    let mut report = DistanceLawReport {
        pairs: 0,
        same_fiber_pairs: 0,
        cross_fiber_pairs: 0,
        violations: Vec::new(),
    };
    let check_pair = |i: usize, j: usize, report: &mut DistanceLawReport| {
        let d = subspace_distance(&code.words()[i], &code.words()[j]);
        report.pairs += 1;
        if vectors[i] == vectors[j] {
            report.same_fiber_pairs += 1;
            let required = 2 * rank_distance(&fillings[i], &fillings[j]);
            if d != required {
                report.violations.push(DistanceLawViolation {
                    kind: ViolationKind::SameFiber,
                    left: i,
                    right: j,
                    distance: d,
                    required,
                });
            }
        } else {
            report.cross_fiber_pairs += 1;
            let required = vectors[i].hamming_distance(&vectors[j]);
            if d < required {
                report.violations.push(DistanceLawViolation {
                    kind: ViolationKind::CrossFiber,
                    left: i,
                    right: j,
                    distance: d,
                    required,
                });
            }
        }
    };
    match mode {
        CheckMode::Exhaustive => {
            for i in 0..code.len() {
                for j in i + 1..code.len() {
                    check_pair(i, j, &mut report);
                }
            }
        }
        CheckMode::Sample { count, seed } => {
            if code.len() >= 2 {
                let mut rng = StdRng::seed_from_u64(seed);
                for _ in 0..count {
                    let i = rng.gen_range(0..code.len());
                    let mut j = rng.gen_range(0..code.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    check_pair(i.min(j), i.max(j), &mut report);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BinaryVector {
        s.parse().unwrap()
    }

    fn bvs(words: &[&str]) -> Vec<BinaryVector> {
        words.iter().map(|s| bv(s)).collect()
    }

    #[test]
    fn weight_k_vectors_are_descending() {
        let all = weight_k_vectors(4, 2);
        assert_eq!(all, bvs(&["1100", "1010", "1001", "0110", "0101", "0011"]));
        assert_eq!(weight_k_vectors(3, 0), bvs(&["000"]));
    }

    #[test]
    fn lexicode_6_3_4_is_pinned() {
        let s = lexicode_skeleton(6, 3, 4).unwrap();
        assert_eq!(s.words(), bvs(&["111000", "100110", "010101", "001011"]));
        assert_eq!(s.min_distance(), Some(4));
    }

    #[test]
    fn lexicode_7_3_4_is_pinned() {
        let s = lexicode_skeleton(7, 3, 4).unwrap();
        assert_eq!(
            s.words(),
            bvs(&["1110000", "1001100", "1000011", "0101010", "0100101", "0011001", "0010110"])
        );
    }

    #[test]
    fn lexicode_8_4_4_is_pinned() {
        let s = lexicode_skeleton(8, 4, 4).unwrap();
        assert_eq!(
            s.words(),
            bvs(&[
                "11110000", "11001100", "11000011", "10101010", "10100101", "10011001", "10010110",
                "01101001", "01100110", "01011010", "01010101", "00111100", "00110011", "00001111"
            ])
        );
    }

    #[test]
    fn lexicode_with_distance_two_keeps_every_vector() {
        let s = lexicode_skeleton(5, 2, 2).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.words(), weight_k_vectors(5, 2).as_slice());
    }

    #[test]
    fn lexicode_rejects_bad_parameters() {
        assert_eq!(
            lexicode_skeleton(6, 3, 3).unwrap_err(),
            ConstructionError::OddDistance(3)
        );
        assert_eq!(
            lexicode_skeleton(6, 3, 0).unwrap_err(),
            ConstructionError::OddDistance(0)
        );
        assert_eq!(
            lexicode_skeleton(3, 4, 2).unwrap_err(),
            ConstructionError::WeightExceedsLength { k: 4, n: 3 }
        );
    }

    #[test]
    fn skeleton_validation_catches_malformed_words() {
        assert!(matches!(
            SkeletonCode::from_words(6, 3, &bvs(&["111000", "11010"])),
            Err(ConstructionError::SkeletonLength { .. })
        ));
        assert!(matches!(
            SkeletonCode::from_words(6, 3, &bvs(&["111000", "110110"])),
            Err(ConstructionError::SkeletonWeight { .. })
        ));
        assert!(matches!(
            SkeletonCode::from_words(6, 3, &bvs(&["111000", "111000"])),
            Err(ConstructionError::SkeletonDuplicate(_))
        ));
        assert!(matches!(
            SkeletonCode::from_words(6, 3, &[]),
            Err(ConstructionError::EmptySkeleton)
        ));
    }

    #[test]
    fn construction_6_3_yields_71_codewords() {
        let f = Field::binary();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        assert_eq!(code.len(), 71);
        assert_eq!(code.claimed_distance(), Some(4));
        assert_eq!(code.constant_dimension(), Some(3));
        let fibers = code.fibers().unwrap();
        let dims: Vec<usize> = fibers.iter().map(|f| f.dimension).collect();
        assert_eq!(dims, vec![6, 2, 1, 0]);
        let sizes: Vec<u128> = fibers.iter().map(|f| f.size).collect();
        assert_eq!(sizes, vec![64, 4, 2, 1]);
        assert!(fibers.iter().all(|f| f.attains_bound));
        assert_eq!(code.len() as u128, sizes.iter().sum::<u128>());
    }

    #[test]
    fn construction_7_3_yields_289_codewords() {
        let f = Field::binary();
        let code = construct_code(&f, 7, 3, 2, None).unwrap();
        assert_eq!(code.len(), 289);
        let dims: Vec<usize> = code.fibers().unwrap().iter().map(|f| f.dimension).collect();
        assert_eq!(dims, vec![8, 4, 0, 3, 1, 2, 1]);
        assert!(code.fibers().unwrap().iter().all(|f| f.attains_bound));
    }

    #[test]
    fn codewords_follow_skeleton_order_then_generator_order() {
        let f = Field::binary();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let ivs: Vec<BinaryVector> = code
            .words()
            .iter()
            .map(|w| w.identifying_vector())
            .collect();
        let expected: Vec<BinaryVector> = bvs(&["111000"; 64])
            .into_iter()
            .chain(bvs(&["100110"; 4]))
            .chain(bvs(&["010101"; 2]))
            .chain(bvs(&["001011"; 1]))
            .collect();
        assert_eq!(ivs, expected);
        // first codeword is the zero filling of the first fiber
        assert_eq!(code.words()[0].generator().row(0), &[1, 0, 0, 0, 0, 0]);
        for fiber in [&code.words()[..64], &code.words()[64..68]] {
            let mut sorted = fiber.to_vec();
            sorted.sort();
            assert_eq!(fiber, sorted.as_slice());
        }
    }

    #[test]
    fn explicit_skeleton_must_match_parameters() {
        let f = Field::binary();
        let wrong_weight = SkeletonCode::from_words(6, 2, &bvs(&["110000", "001100"])).unwrap();
        assert!(matches!(
            construct_code(&f, 6, 3, 2, Some(&wrong_weight)),
            Err(ConstructionError::SkeletonWeight { .. })
        ));
        let close = SkeletonCode::from_words(6, 3, &bvs(&["111000", "110100"])).unwrap();
        assert!(matches!(
            construct_code(&f, 6, 3, 2, Some(&close)),
            Err(ConstructionError::SkeletonDistance { .. })
        ));
    }

    #[test]
    fn identifying_vectors_come_from_the_skeleton() {
        let f = Field::binary();
        let code = construct_code(&f, 7, 3, 2, None).unwrap();
        let skeleton: HashSet<BinaryVector> = lexicode_skeleton(7, 3, 4)
            .unwrap()
            .words()
            .iter()
            .copied()
            .collect();
        for w in code.words() {
            assert!(skeleton.contains(&w.identifying_vector()));
        }
    }

    #[test]
    fn distance_laws_hold_exhaustively_on_the_smallest_code() {
        let f = Field::binary();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let report = verify_fiber_distances(&code, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.pairs, 71 * 70 / 2);
        assert_eq!(
            report.pairs,
            report.same_fiber_pairs + report.cross_fiber_pairs
        );
        assert!(report.pass(), "violations: {:?}", report.violations);
    }

    #[test]
    fn sampled_distance_law_check_is_deterministic() {
        let f = Field::binary();
        let code = construct_code(&f, 6, 3, 2, None).unwrap();
        let mode = CheckMode::Sample {
            count: 500,
            seed: 7,
        };
        let a = verify_fiber_distances(&code, mode).unwrap();
        let b = verify_fiber_distances(&code, mode).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pairs, 500);
        assert!(a.pass());
    }

    #[test]
    fn distance_law_check_rejects_mixed_dimensions() {
        let f = Field::binary();
        let words = vec![
            Subspace::from_rows(&f, 4, &[vec![1, 0, 0, 0]]).unwrap(),
            Subspace::from_rows(&f, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap(),
        ];
        let code = SubspaceCode::new(&f, 4, None, words);
        assert_eq!(
            verify_fiber_distances(&code, CheckMode::Exhaustive).unwrap_err(),
            ConstructionError::MixedDimension
        );
    }
}
