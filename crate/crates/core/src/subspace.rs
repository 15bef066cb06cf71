//! Subspaces of F_q^n in canonical form, the subspace metric, and
//! enumeration of Grassmannians.
//!
//! A subspace is stored as its reduced-row-echelon generator matrix with
//! zero rows removed, which is unique per subspace, so equality and hashing
//! are structural.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::Field;
use crate::matrix::{packed_rank, GFMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("row has length {got}, expected {expected}")]
    RowLength { expected: usize, got: usize },
    #[error("entry {entry} is out of range for a field of order {order}")]
    EntryRange { entry: u32, order: u32 },
    #[error("subspace dimension {k} exceeds the ambient dimension {n}")]
    KExceedsN { k: usize, n: usize },
    #[error("Grassmannian holds {total} subspaces, above the enumeration guard of {guard}")]
    EnumerationTooLarge { total: u128, guard: u128 },
    #[error("Gaussian coefficient overflows 128 bits")]
    Overflow,
    #[error("binary vector contains a character other than 0 or 1")]
    BadBinaryVector,
    #[error("binary vectors longer than 64 are not supported")]
    VectorTooLong,
}

/// A fixed-length vector over GF(2), packed into a u64.
///
/// Coordinate 0 is the leftmost character of the string form and the most
/// significant packed bit, so numeric order on equal-length vectors matches
/// lexicographic order on their string forms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    bits: u64,
}

impl BinaryVector {
    pub fn new(len: usize, bits: u64) -> BinaryVector {
        assert!(len <= 64, "binary vectors longer than 64 are not supported");
        assert!(
            len == 64 || bits < 1u64 << len,
            "bits out of range for length {len}"
        );
        BinaryVector { len, bits }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bits >> (self.len - 1 - i)) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn hamming_distance(&self, other: &BinaryVector) -> usize {
        assert_eq!(
            self.len, other.len,
            "Hamming distance requires equal lengths"
        );
        (self.bits ^ other.bits).count_ones() as usize
    }
}

impl FromStr for BinaryVector {
    type Err = SubspaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > 64 {
            return Err(SubspaceError::VectorTooLong);
        }
        let mut bits = 0u64;
        for ch in s.chars() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(SubspaceError::BadBinaryVector),
                };
        }
        Ok(BinaryVector { len: s.len(), bits })
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subspace of F_q^n, held as its canonical RREF generator matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    gen: GFMatrix,
    /// Generator rows packed for the GF(2) rank fast path.
    packed: Option<Box<[u64]>>,
}

impl Subspace {
    /// Builds the row span of the given rows. Dependent and zero rows are
    /// tolerated; the canonical generator keeps only a basis.
    pub fn from_rows(
        field: &Field,
        n: usize,
        rows: &[Vec<u32>],
    ) -> Result<Subspace, SubspaceError> {
        for row in rows {
            if row.len() != n {
                return Err(SubspaceError::RowLength {
                    expected: n,
                    got: row.len(),
                });
            }
            for &v in row {
                if v >= field.order() {
                    return Err(SubspaceError::EntryRange {
                        entry: v,
                        order: field.order(),
                    });
                }
            }
        }
        Ok(Subspace::from_generator(&GFMatrix::from_rows(
            field, n, rows,
        )))
    }

    /// Builds the row span of an arbitrary generator matrix.
    pub fn from_generator(m: &GFMatrix) -> Subspace {
        let (gen, _) = m.rref();
        Subspace::from_canonical(gen)
    }

    /// Wraps a matrix that is already in RREF with no zero rows.
    pub(crate) fn from_canonical(gen: GFMatrix) -> Subspace {
        debug_assert_eq!(gen.rref().0, gen, "generator must already be canonical");
        let packed = gen.packed_rows().map(Vec::into_boxed_slice);
        Subspace { gen, packed }
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn ambient(&self) -> usize {
        self.gen.cols()
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    /// Canonical RREF generator matrix, one basis row per dimension.
    pub fn generator(&self) -> &GFMatrix {
        &self.gen
    }

    pub(crate) fn packed_generator(&self) -> Option<&[u64]> {
        self.packed.as_deref()
    }

    /// Membership test for a 1 x n row vector.
    pub fn contains(&self, vector: &GFMatrix) -> bool {
        assert_eq!(vector.rows(), 1, "membership expects a single row vector");
        assert_eq!(vector.cols(), self.ambient(), "ambient dimension mismatch");
        if vector.is_zero() {
            return true;
        }
        self.gen.stack(vector).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(
            self.ambient(),
            other.ambient(),
            "ambient dimension mismatch"
        );
        if self.dim() > other.dim() {
            return false;
        }
        other.gen.stack(&self.gen).rank() == other.dim()
    }

    /// The binary vector with ones exactly at the pivot columns of the
    /// canonical generator. Requires an ambient dimension of at most 64.
    pub fn identifying_vector(&self) -> BinaryVector {
        let n = self.ambient();
        assert!(n <= 64, "identifying vectors need ambient dimension <= 64");
        let (_, pivots) = self.gen.rref();
        let mut bits = 0u64;
        for p in pivots {
            bits |= 1u64 << (n - 1 - p);
        }
        BinaryVector::new(n, bits)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Total order: ambient, then row-major generator data, then dimension.
    /// Within one Grassmannian this is lexicographic order on the canonical
    /// generator entries.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient()
            .cmp(&other.ambient())
            .then_with(|| {
                let a = (0..self.dim()).flat_map(|r| self.gen.row(r).iter());
                let b = (0..other.dim()).flat_map(|r| other.gen.row(r).iter());
                a.cmp(b)
            })
            .then_with(|| self.dim().cmp(&other.dim()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of F^{}, ", self.dim(), self.ambient())?;
        let rows: Vec<String> = (0..self.dim())
            .map(|r| {
                self.gen
                    .row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<String>()
            })
            .collect();
        write!(f, "[{}])", rows.join(";"))
    }
}

/// Subspace distance: dim U + dim V - 2 dim(U intersect V), computed as
/// 2 rank(stack(U, V)) - dim U - dim V. Panics if the operands live in
/// different ambient spaces or fields.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> usize {
    assert!(u.field() == v.field(), "subspaces over different fields");
    assert_eq!(u.ambient(), v.ambient(), "ambient dimension mismatch");
    let rank = match (u.packed_generator(), v.packed_generator()) {
        (Some(a), Some(b)) => packed_rank(a.iter().chain(b.iter()).copied()),
        _ => u.gen.stack(&v.gen).rank(),
    };
    2 * rank - u.dim() - v.dim()
}

/// Intersection of two subspaces, via the left kernel of the stacked
/// generators. Slower than the rank identity used by
/// [`subspace_distance`], and kept as its independent cross-check as well
/// as for puncturing.
pub fn intersection(u: &Subspace, v: &Subspace) -> Subspace {
    assert!(u.field() == v.field(), "subspaces over different fields");
    assert_eq!(u.ambient(), v.ambient(), "ambient dimension mismatch");
    let stacked = u.gen.stack(&v.gen);
    let left_kernel = stacked.transpose().kernel();
    let mut rows = GFMatrix::zero(u.field(), 0, u.ambient());
    for z in 0..left_kernel.rows() {
        // The first dim(U) kernel coordinates combine rows of U into a
        // vector that the remaining coordinates also reach inside V.
        let coeffs = GFMatrix::from_rows(
            u.field(),
            u.dim(),
            &[left_kernel.row(z)[..u.dim()].to_vec()],
        );
        rows = rows.stack(&coeffs.mul(&u.gen));
    }
    Subspace::from_generator(&rows)
}

/// Number of k-dimensional subspaces of F_q^n (the Gaussian binomial
/// coefficient), by the q-Pascal recurrence with checked arithmetic.
pub fn gaussian_coefficient(n: usize, k: usize, q: u64) -> Result<u128, SubspaceError> {
    if k > n {
        return Err(SubspaceError::KExceedsN { k, n });
    }
    // row[j] holds the coefficient for (i, j) as i sweeps 0..=n
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        let top = k.min(i);
        for j in (1..=top).rev() {
            let qj = (q as u128)
                .checked_pow(j as u32)
                .ok_or(SubspaceError::Overflow)?;
            let scaled = row[j].checked_mul(qj).ok_or(SubspaceError::Overflow)?;
            row[j] = row[j - 1]
                .checked_add(scaled)
                .ok_or(SubspaceError::Overflow)?;
        }
    }
    Ok(row[k])
}

const ENUMERATION_GUARD: u128 = 1 << 20;

/// Every k-dimensional subspace of F_q^n, duplicate-free, in a fixed
/// deterministic order (pivot sets ascending, then generator entries
/// ascending). Guarded by the Grassmannian size.
pub fn enumerate_grassmannian(
    field: &Field,
    n: usize,
    k: usize,
) -> Result<Vec<Subspace>, SubspaceError> {
    let total = gaussian_coefficient(n, k, field.order() as u64)?;
    if total > ENUMERATION_GUARD {
        return Err(SubspaceError::EnumerationTooLarge {
            total,
            guard: ENUMERATION_GUARD,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    if k == 0 {
        out.push(Subspace::from_canonical(GFMatrix::zero(field, 0, n)));
        return Ok(out);
    }
    let q = field.order();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free cells of this pivot pattern: right of the row's pivot and
        // not a pivot column themselves.
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let count = (q as u64).pow(free.len() as u32);
        for x in 0..count {
            let mut m = GFMatrix::zero(field, k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, field.one());
            }
            let mut rest = x;
            for &(i, j) in free.iter().rev() {
                m.set(i, j, field.element((rest % q as u64) as u32));
                rest /= q as u64;
            }
            out.push(Subspace::from_canonical(m));
        }
        // advance the pivot combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return finish_enumeration(out, total);
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn finish_enumeration(out: Vec<Subspace>, total: u128) -> Result<Vec<Subspace>, SubspaceError> {
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}
