//! Bott matrix combinatorics: enumeration, generator lifting, torus rank,
//! orientability, and a bounded GL(n,Z) matrix-conjugacy diagnostic.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::affine::{AffineMap, Dyadic, DyVec, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BottError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("cannot parse {0:?} as a Bott matrix")]
    Parse(String),
    #[error("matrix is not upper unitriangular 0/1")]
    NotBottForm,
}

/// An n x n upper-unitriangular 0/1 matrix encoding a (Z_2)^n action on T^n.
///
/// The strict upper part is stored as a bit list in row-major order
/// (a_12, a_13, ..., a_1n, a_23, ...). Bit k of the stable integer id is the
/// k-th entry of that list, so ids run over `0..2^(n(n-1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BottMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BottMatrix {
    /// Number of strict-upper entries for dimension `n`.
    pub fn bit_len(n: usize) -> usize {
        n * (n - 1) / 2
    }

    pub fn identity(n: usize) -> BottMatrix {
        BottMatrix {
            n,
            bits: vec![false; Self::bit_len(n)],
        }
    }

    pub fn from_bits(n: usize, bits: Vec<bool>) -> BottMatrix {
        assert_eq!(bits.len(), Self::bit_len(n), "bit list length mismatch");
        BottMatrix { n, bits }
    }

    pub fn from_id(n: usize, id: u64) -> BottMatrix {
        let m = Self::bit_len(n);
        assert!(m < 64 && id < (1u64 << m), "id out of range");
        BottMatrix {
            n,
            bits: (0..m).map(|k| (id >> k) & 1 == 1).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<BottMatrix, BottError> {
        let n = rows.len();
        if n == 0 {
            return Err(BottError::ZeroDimension);
        }
        let mut bits = Vec::with_capacity(Self::bit_len(n));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(BottError::NotBottForm);
            }
            for (j, &e) in row.iter().enumerate() {
                match (i.cmp(&j), e) {
                    (std::cmp::Ordering::Equal, 1) => {}
                    (std::cmp::Ordering::Greater, 0) => {}
                    (std::cmp::Ordering::Less, 0) | (std::cmp::Ordering::Less, 1) => {
                        bits.push(e == 1)
                    }
                    _ => return Err(BottError::NotBottForm),
                }
            }
        }
        Ok(BottMatrix { n, bits })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The stable integer id: bit k is the k-th row-major strict-upper entry.
    pub fn id(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k))
    }

    /// Row-major strict-upper bit at position k.
    pub fn bit(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Entry a_ij for 0-indexed i < j.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < j && j < self.n);
        // row i starts after rows 0..i: sum_{r<i} (n-1-r) entries
        let offset: usize = (0..i).map(|r| self.n - 1 - r).sum();
        self.bits[offset + (j - i - 1)]
    }

    /// Full n x n rows, including the unit diagonal.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            1
                        } else if i < j && self.entry(i, j) {
                            1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows())
    }

    /// Compact text form `n=4;bits=010011` (row-major strict upper).
    pub fn compact(&self) -> String {
        let bits: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        format!("n={};bits={}", self.n, bits)
    }

    pub fn from_compact(s: &str) -> Result<BottMatrix, BottError> {
        let bad = || BottError::Parse(s.to_string());
        let (npart, bpart) = s.split_once(';').ok_or_else(bad)?;
        let n: usize = npart.strip_prefix("n=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(BottError::ZeroDimension);
        }
        let bits_str = bpart.strip_prefix("bits=").ok_or_else(bad)?;
        if bits_str.len() != Self::bit_len(n) {
            return Err(bad());
        }
        let bits = bits_str
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BottMatrix { n, bits })
    }

    /// Bit string of the strict upper part, row-major (`"010011"`).
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(n: usize, s: &str) -> Result<BottMatrix, BottError> {
        Self::from_compact(&format!("n={n};bits={s}"))
    }

    /// True iff column j (0-indexed) has some nonzero strict-upper entry,
    /// i.e. coordinate j is conjugated by some generator.
    pub fn column_nonzero(&self, j: usize) -> bool {
        (0..j).any(|i| self.entry(i, j))
    }

    /// The diagonal of the holonomy part D_i of the lifted generator i:
    /// d_j = (-1)^{a_ij} for j > i, and 1 otherwise.
    pub fn generator_diagonal(&self, i: usize) -> Vec<i64> {
        (0..self.n)
            .map(|j| if j > i && self.entry(i, j) { -1 } else { 1 })
            .collect()
    }

    /// The sign character of column j: bit i set iff generator i negates
    /// coordinate j. Columns with equal characters are exactly the
    /// coordinates no bounded conjugator can tell apart.
    pub fn column_character(&self, j: usize) -> u32 {
        let mut c = 0u32;
        for i in 0..j {
            if self.entry(i, j) {
                c |= 1 << i;
            }
        }
        c
    }
}

impl Serialize for BottMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            rows: Vec<Vec<i64>>,
        }
        Repr {
            n: self.n,
            rows: self.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BottMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<BottMatrix, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            rows: Vec<Vec<i64>>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.rows.len() != r.n {
            return Err(D::Error::custom("row count must equal n"));
        }
        BottMatrix::from_rows(&r.rows).map_err(D::Error::custom)
    }
}

impl std::fmt::Display for BottMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.compact())
    }
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// All `2^(n(n-1)/2)` Bott matrices of dimension n in ascending id order.
pub fn enumerate(n: usize) -> Result<Vec<BottMatrix>, BottError> {
    if n == 0 {
        return Err(BottError::ZeroDimension);
    }
    let m = BottMatrix::bit_len(n);
    assert!(m < 40, "enumeration not supported for this dimension");
    Ok((0..(1u64 << m)).map(|id| BottMatrix::from_id(n, id)).collect())
}

/// The lifted generators g~_i = (1/2 e_i, D_i) of the Bott group of `a`.
pub fn lift_generators(a: &BottMatrix) -> Vec<AffineMap> {
    (0..a.dim())
        .map(|i| {
            AffineMap::new(
                DyVec::scaled_unit(a.dim(), i, Dyadic::HALF),
                IntMatrix::diagonal(&a.generator_diagonal(i)),
            )
        })
        .collect()
}

/// Rank k of the maximal T^k-action on M(A): the number of coordinates no
/// generator conjugates, i.e. zero strict-upper columns.
pub fn torus_rank(a: &BottMatrix) -> usize {
    (0..a.dim()).filter(|&j| !a.column_nonzero(j)).count()
}

/// M(A) is orientable iff every lifted generator has determinant +1, i.e.
/// every row of the strict upper part has an even number of ones.
pub fn orientable(a: &BottMatrix) -> bool {
    (0..a.dim()).all(|i| {
        (i + 1..a.dim()).filter(|&j| a.entry(i, j)).count() % 2 == 0
    })
}

/// Search for P in GL(n,Z) with entries in [-bound, bound] and
/// `P A P^-1 = A'`, i.e. `P A = A' P`. Returns the first such P in a fixed
/// column-lexicographic order, or `None` if none exists in the box —
/// which is *not* a proof of non-conjugacy.
///
/// Matrix conjugacy is a diagnostic: the paper leaves open whether it is
/// implied by (or implies) diffeomorphism of the towers.
pub fn matrix_conjugacy(a: &BottMatrix, b: &BottMatrix, bound: i64) -> Option<IntMatrix> {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let n = a.dim();
    let amat = a.to_int_matrix();
    let bmat = b.to_int_matrix();

    // Column j of the equation P A = A' P reads
    //   (A' - I) P[:,j] = sum_{k<j} a_kj P[:,k]
    // because A is upper unitriangular. Enumerate columns left to right.
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(n);
    fn det_of_cols(cols: &[Vec<i64>]) -> i64 {
        let n = cols.len();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        IntMatrix::from_rows(&rows).det()
    }

    fn rec(
        j: usize,
        n: usize,
        bound: i64,
        amat: &IntMatrix,
        bmat: &IntMatrix,
        cols: &mut Vec<Vec<i64>>,
    ) -> Option<IntMatrix> {
        if j == n {
            let det = det_of_cols(cols);
            if det == 1 || det == -1 {
                let rows: Vec<Vec<i64>> =
                    (0..n).map(|i| (0..n).map(|c| cols[c][i]).collect()).collect();
                return Some(IntMatrix::from_rows(&rows));
            }
            return None;
        }
        // rhs = sum_{k<j} a_kj P[:,k]
        let mut rhs = vec![0i64; n];
        for k in 0..j {
            if amat.get(k, j) != 0 {
                for i in 0..n {
                    rhs[i] += cols[k][i];
                }
            }
        }
        // enumerate candidate columns v with (A' - I) v = rhs
        let mut v = vec![-bound; n];
        loop {
            let ok = (0..n).all(|i| {
                let mut acc = 0i64;
                for k in 0..n {
                    // (A' - I)[i][k]
                    let c = bmat.get(i, k) - i64::from(i == k);
                    acc += c * v[k];
                }
                acc == rhs[i]
            });
            if ok {
                cols.push(v.clone());
                if let Some(res) = rec(j + 1, n, bound, amat, bmat, cols) {
                    return Some(res);
                }
                cols.pop();
            }
            // increment v in lexicographic order
            let mut idx = n;
            loop {
                if idx == 0 {
                    return None;
                }
                idx -= 1;
                if v[idx] < bound {
                    v[idx] += 1;
                    for w in &mut v[idx + 1..] {
                        *w = -bound;
                    }
                    break;
                }
            }
        }
    }

    rec(0, n, bound, &amat, &bmat, &mut cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::LabelTable;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(3).unwrap().len(), 8);
        assert_eq!(enumerate(4).unwrap().len(), 64);
        assert_eq!(enumerate(1).unwrap().len(), 1);
        assert_eq!(enumerate(0), Err(BottError::ZeroDimension));
    }

    #[test]
    fn ids_distinct_and_round_trip() {
        let all = enumerate(4).unwrap();
        for (i, m) in all.iter().enumerate() {
            assert_eq!(m.id(), i as u64);
            assert_eq!(BottMatrix::from_id(4, m.id()), *m);
            assert_eq!(BottMatrix::from_compact(&m.compact()).unwrap(), *m);
            let json = serde_json::to_string(m).unwrap();
            assert_eq!(serde_json::from_str::<BottMatrix>(&json).unwrap(), *m);
        }
    }

    #[test]
    fn entry_accessor_matches_rows() {
        for m in enumerate(4).unwrap() {
            let rows = m.rows();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    assert_eq!(m.entry(i, j), rows[i][j] == 1);
                }
            }
        }
    }

    #[test]
    fn lift_worked_example() {
        // Matrix with a13 = a23 = 1: generators (1/2 e1, diag(1,1,-1)),
        // (1/2 e2, diag(1,1,-1)), (1/2 e3, I).
        let a = BottMatrix::from_bit_string(3, "011").unwrap();
        let gens = lift_generators(&a);
        assert_eq!(*gens[0].linear_part(), IntMatrix::diagonal(&[1, 1, -1]));
        assert_eq!(*gens[1].linear_part(), IntMatrix::diagonal(&[1, 1, -1]));
        assert_eq!(*gens[2].linear_part(), IntMatrix::identity(3));
        assert_eq!(
            *gens[0].translation_part(),
            DyVec::scaled_unit(3, 0, Dyadic::HALF)
        );
    }

    #[test]
    fn lift_identity_matrix() {
        let gens = lift_generators(&BottMatrix::identity(3));
        for (i, g) in gens.iter().enumerate() {
            assert!(g.linear_part().is_identity());
            assert_eq!(
                *g.translation_part(),
                DyVec::scaled_unit(3, i, Dyadic::HALF)
            );
        }
    }

    #[test]
    fn lift_a1() {
        // A1 (a12 = 1): g~1 = (1/2 e1, diag(1,-1,1)), others pure translations
        let t = LabelTable::for_dim(3).unwrap();
        let a1 = t.matrix("A1").unwrap();
        let gens = lift_generators(&a1);
        assert_eq!(*gens[0].linear_part(), IntMatrix::diagonal(&[1, -1, 1]));
        assert!(gens[1].linear_part().is_identity());
        assert!(gens[2].linear_part().is_identity());
    }

    #[test]
    fn generators_square_to_unit_translations() {
        for n in 1..=4 {
            for a in enumerate(n).unwrap() {
                for (i, g) in lift_generators(&a).iter().enumerate() {
                    let sq = g.compose(g).unwrap();
                    assert!(sq.linear_part().is_identity());
                    assert_eq!(
                        *sq.translation_part(),
                        DyVec::scaled_unit(n, i, Dyadic::ONE)
                    );
                }
            }
        }
    }

    #[test]
    fn torus_rank_examples() {
        let t = LabelTable::for_dim(3).unwrap();
        assert_eq!(torus_rank(&t.matrix("I3").unwrap()), 3);
        assert_eq!(torus_rank(&t.matrix("A1").unwrap()), 2);
        assert_eq!(torus_rank(&t.matrix("A5").unwrap()), 1);
        assert_eq!(torus_rank(&t.matrix("A7").unwrap()), 1);
        let t4 = LabelTable::for_dim(4).unwrap();
        assert_eq!(torus_rank(&t4.matrix("Aa15").unwrap()), 1);
    }

    #[test]
    fn torus_rank_column_formula_matches_commuting_check() {
        // brute-force check: coordinate i admits a circle action iff the
        // i-th coordinate is never conjugated, i.e. a_ji = 0 for all j < i
        for a in enumerate(4).unwrap() {
            let brute = (0..4)
                .filter(|&i| (0..i).all(|j| !a.entry(j, i)))
                .count();
            assert_eq!(torus_rank(&a), brute);
        }
    }

    #[test]
    fn orientable_examples() {
        let t = LabelTable::for_dim(3).unwrap();
        assert!(orientable(&t.matrix("A7").unwrap()));
        assert!(!orientable(&t.matrix("A1").unwrap()));
        assert!(orientable(&BottMatrix::identity(4)));
    }

    #[test]
    fn orientable_iff_generators_special() {
        for a in enumerate(4).unwrap() {
            let dets_one = lift_generators(&a)
                .iter()
                .all(|g| g.linear_part().det() == 1);
            assert_eq!(orientable(&a), dets_one);
        }
    }

    #[test]
    fn matrix_conjugacy_finds_permutation() {
        let t = LabelTable::for_dim(3).unwrap();
        let a1 = t.matrix("A1").unwrap();
        let a3 = t.matrix("A3").unwrap();
        let p = matrix_conjugacy(&a1, &a3, 1).expect("A1 ~ A3 by permutation");
        // verify P A1 = A3 P
        assert_eq!(
            p.mul(&a1.to_int_matrix()),
            a3.to_int_matrix().mul(&p)
        );
    }

    #[test]
    fn matrix_conjugacy_none_when_rank_differs() {
        let t = LabelTable::for_dim(3).unwrap();
        assert!(matrix_conjugacy(&t.matrix("I3").unwrap(), &t.matrix("A1").unwrap(), 1).is_none());
    }

    #[test]
    fn matrix_conjugacy_a5_a6() {
        let t = LabelTable::for_dim(3).unwrap();
        let a5 = t.matrix("A5").unwrap();
        let a6 = t.matrix("A6").unwrap();
        let p = matrix_conjugacy(&a5, &a6, 1).expect("A5 ~ A6");
        assert_eq!(p.mul(&a5.to_int_matrix()), a6.to_int_matrix().mul(&p));
    }

    #[test]
    fn matrix_conjugacy_witness_inverts() {
        let t = LabelTable::for_dim(3).unwrap();
        let a1 = t.matrix("A1").unwrap();
        let a2 = t.matrix("A2").unwrap();
        let p = matrix_conjugacy(&a1, &a2, 1).unwrap();
        let pinv = p.inverse().unwrap();
        assert_eq!(
            pinv.mul(&a2.to_int_matrix()),
            a1.to_int_matrix().mul(&pinv)
        );
    }
}
