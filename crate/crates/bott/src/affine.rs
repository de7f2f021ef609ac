//! Exact arithmetic for affine motions of R^n with dyadic translation parts
//! and integer linear parts.
//!
//! Every number this crate ever produces has a power-of-two denominator
//! (generators translate by 1/2, conjugators by 1/4), so [`Dyadic`] is the
//! whole scalar story: no rounding, no floats, and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from affine-map operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear part is not unimodular (det = {det})")]
    NotUnimodular { det: i64 },
    #[error("cannot parse {0:?} as a dyadic rational")]
    ParseDyadic(String),
}

// ---------------------------------------------------------------------------
// Dyadic
// ---------------------------------------------------------------------------

/// A dyadic rational `numerator / 2^exponent` in canonical form: the
/// numerator is odd or the exponent is zero.
///
/// Arithmetic is exact and panics on `i64` overflow rather than wrapping or
/// rounding; the n <= 4 workloads in this crate stay far below that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    num: i64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    /// `numerator / 2^exponent`, normalized.
    pub fn new(numerator: i64, exponent: u32) -> Dyadic {
        let mut d = Dyadic {
            num: numerator,
            exp: exponent,
        };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(&self) -> Option<i64> {
        if self.exp == 0 {
            Some(self.num)
        } else {
            None
        }
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: i64) -> Dyadic {
        Dyadic::new(checked_mul(self.num, k), self.exp)
    }

    /// `self mod 1`, reduced into `[0, 1)`.
    pub fn rem_euclid_one(&self) -> Dyadic {
        let den = 1i64
            .checked_shl(self.exp)
            .unwrap_or_else(|| panic!("dyadic overflow: 2^{}", self.exp));
        Dyadic::new(self.num.rem_euclid(den), self.exp)
    }

    /// Value `2^k * self`; negative `k` is allowed only when exact.
    pub fn mul_pow2(&self, k: i32) -> Dyadic {
        if k >= 0 {
            let shift = k as u32;
            if self.exp >= shift {
                Dyadic::new(self.num, self.exp - shift)
            } else {
                Dyadic::new(checked_shl(self.num, shift - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num, self.exp + (-k) as u32)
        }
    }
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("dyadic overflow in multiplication")
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("dyadic overflow in addition")
}

fn checked_shl(a: i64, k: u32) -> i64 {
    if k >= 62 {
        panic!("dyadic overflow: shift by {k}");
    }
    a.checked_mul(1i64 << k).expect("dyadic overflow in shift")
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = checked_shl(self.num, exp - self.exp);
        let b = checked_shl(rhs.num, exp - rhs.exp);
        Dyadic::new(checked_add(a, b), exp)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(checked_mul(self.num, rhs.num), self.exp + rhs.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl std::str::FromStr for Dyadic {
    type Err = AffineError;

    /// Accepts `"p"` or `"p/2^k"` (and `"p/2"` for `k = 1`).
    fn from_str(s: &str) -> Result<Dyadic, AffineError> {
        let bad = || AffineError::ParseDyadic(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Dyadic::from_int).map_err(|_| bad()),
            Some((num, den)) => {
                let num = num.trim().parse::<i64>().map_err(|_| bad())?;
                let den = den.trim();
                let exp = if den == "2" {
                    1
                } else {
                    let rest = den.strip_prefix("2^").ok_or_else(bad)?;
                    rest.parse::<u32>().map_err(|_| bad())?
                };
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Dyadic, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// DyVec
// ---------------------------------------------------------------------------

/// A fixed-length vector of dyadic rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DyVec(Vec<Dyadic>);

impl DyVec {
    pub fn zero(n: usize) -> DyVec {
        DyVec(vec![Dyadic::ZERO; n])
    }

    /// `c * e_i` in dimension `n`.
    pub fn scaled_unit(n: usize, i: usize, c: Dyadic) -> DyVec {
        let mut v = DyVec::zero(n);
        v.0[i] = c;
        v
    }

    pub fn from_entries(entries: Vec<Dyadic>) -> DyVec {
        DyVec(entries)
    }

    pub fn from_ints(entries: &[i64]) -> DyVec {
        DyVec(entries.iter().map(|&x| Dyadic::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Dyadic] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Dyadic {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: Dyadic) {
        self.0[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Dyadic::is_zero)
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Dyadic::is_integer)
    }

    /// The integer entries, if all entries are integers.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Dyadic::to_integer).collect()
    }

    pub fn add(&self, rhs: &DyVec) -> DyVec {
        assert_eq!(self.dim(), rhs.dim(), "DyVec dimension mismatch");
        DyVec(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &DyVec) -> DyVec {
        assert_eq!(self.dim(), rhs.dim(), "DyVec dimension mismatch");
        DyVec(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> DyVec {
        DyVec(self.0.iter().map(|&a| -a).collect())
    }
}

impl fmt::Display for DyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// A square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix {
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn diagonal(diag: &[i64]) -> IntMatrix {
        let n = diag.len();
        let mut m = IntMatrix {
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = diag[i];
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// The diagonal, if the matrix is diagonal with entries +-1.
    pub fn as_diagonal_signs(&self) -> Option<Vec<i64>> {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if i == j {
                    if e != 1 && e != -1 {
                        return None;
                    }
                } else if e != 0 {
                    return None;
                }
            }
        }
        Some((0..self.n).map(|i| self.get(i, i)).collect())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "IntMatrix dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix {
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &DyVec) -> DyVec {
        assert_eq!(self.n, v.dim(), "IntMatrix/DyVec dimension mismatch");
        let mut out = DyVec::zero(self.n);
        for i in 0..self.n {
            let mut acc = Dyadic::ZERO;
            for j in 0..self.n {
                let a = self.get(i, j);
                if a != 0 {
                    acc = acc + v.get(j).scale(a);
                }
            }
            out.set(i, acc);
        }
        out
    }

    pub fn mul_int_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by cofactor expansion; exact, fine for the small n here.
    pub fn det(&self) -> i64 {
        match self.n {
            0 => 1,
            1 => self.get(0, 0),
            _ => {
                let mut acc = 0i64;
                for j in 0..self.n {
                    let a = self.get(0, j);
                    if a == 0 {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    acc += sign * a * minor.det();
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n - 1;
        let mut out = IntMatrix {
            n,
            entries: Vec::with_capacity(n * n),
        };
        for i in 0..self.n {
            if i == row {
                continue;
            }
            for j in 0..self.n {
                if j == col {
                    continue;
                }
                out.entries.push(self.get(i, j));
            }
        }
        out
    }

    /// Exact inverse of a unimodular matrix (adjugate divided by det = +-1).
    pub fn inverse(&self) -> Result<IntMatrix, AffineError> {
        let det = self.det();
        if det != 1 && det != -1 {
            return Err(AffineError::NotUnimodular { det });
        }
        let n = self.n;
        let mut adj = IntMatrix {
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adjugate = transpose of cofactor matrix
                adj.set(j, i, sign * self.minor(i, j).det());
            }
        }
        if det == -1 {
            for e in &mut adj.entries {
                *e = -*e;
            }
        }
        Ok(adj)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix rows must all have length n"));
        }
        Ok(IntMatrix::from_rows(&rows))
    }
}

// ---------------------------------------------------------------------------
// AffineMap
// ---------------------------------------------------------------------------

/// An affine motion `x -> Bx + b` with integer linear part `B` and dyadic
/// translation part `b`. Rigid motions of the groups here are the special
/// case where `B` is diagonal +-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(rename = "b")]
    translation: DyVec,
    #[serde(rename = "B")]
    linear: IntMatrix,
}

impl AffineMap {
    pub fn new(translation: DyVec, linear: IntMatrix) -> AffineMap {
        assert_eq!(
            translation.dim(),
            linear.dim(),
            "translation/linear dimension mismatch"
        );
        AffineMap {
            translation,
            linear,
        }
    }

    pub fn identity(n: usize) -> AffineMap {
        AffineMap {
            translation: DyVec::zero(n),
            linear: IntMatrix::identity(n),
        }
    }

    /// Pure translation by `t`.
    pub fn translation_by(t: DyVec) -> AffineMap {
        let n = t.dim();
        AffineMap {
            translation: t,
            linear: IntMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    /// The rotational part `L(f)`.
    pub fn linear_part(&self) -> &IntMatrix {
        &self.linear
    }

    /// The translational part `T(f)`. Unlike `L`, `T` is not a homomorphism.
    pub fn translation_part(&self) -> &DyVec {
        &self.translation
    }

    /// Split into `(L(f), T(f))`.
    pub fn decompose(&self) -> (IntMatrix, DyVec) {
        (self.linear.clone(), self.translation.clone())
    }

    fn check_dim(&self, found: usize) -> Result<(), AffineError> {
        if self.dim() == found {
            Ok(())
        } else {
            Err(AffineError::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    /// Evaluate `Bx + b`.
    pub fn apply(&self, x: &DyVec) -> Result<DyVec, AffineError> {
        self.check_dim(x.dim())?;
        Ok(self.linear.mul_vec(x).add(&self.translation))
    }

    /// Composition `(self ∘ g)(x) = self(g(x))`: `(Mt + s, MN)` for
    /// `self = (s, M)`, `g = (t, N)`.
    pub fn compose(&self, g: &AffineMap) -> Result<AffineMap, AffineError> {
        self.check_dim(g.dim())?;
        Ok(AffineMap {
            translation: self.linear.mul_vec(&g.translation).add(&self.translation),
            linear: self.linear.mul(&g.linear),
        })
    }

    /// Inverse `(-M^-1 s, M^-1)`; requires det = +-1.
    pub fn inverse(&self) -> Result<AffineMap, AffineError> {
        let inv = self.linear.inverse()?;
        Ok(AffineMap {
            translation: inv.mul_vec(&self.translation).neg(),
            linear: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.linear.is_identity()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.translation, self.linear.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn vec3(a: &str, b: &str, c: &str) -> DyVec {
        DyVec::from_entries(vec![dy(a), dy(b), dy(c)])
    }

    /// The generator (1/2 e1, diag(1,1,-1)) from the worked n=3 example.
    fn g1() -> AffineMap {
        AffineMap::new(
            DyVec::scaled_unit(3, 0, Dyadic::HALF),
            IntMatrix::diagonal(&[1, 1, -1]),
        )
    }

    #[test]
    fn dyadic_canonical_form() {
        assert_eq!(Dyadic::new(4, 2), Dyadic::from_int(1));
        assert_eq!(Dyadic::new(6, 1), Dyadic::from_int(3));
        assert_eq!(Dyadic::new(0, 7), Dyadic::ZERO);
        let q = Dyadic::new(3, 2);
        assert_eq!(q.numerator(), 3);
        assert_eq!(q.exponent(), 2);
    }

    #[test]
    fn dyadic_arithmetic_exact() {
        let h = Dyadic::HALF;
        assert_eq!(h + h, Dyadic::ONE);
        assert_eq!(h - h, Dyadic::ZERO);
        assert_eq!(h * h, Dyadic::new(1, 2));
        assert_eq!(dy("3/2^2") + dy("1/2^2"), Dyadic::ONE);
        assert_eq!(dy("1/2^2").scale(-3), dy("-3/2^2"));
    }

    #[test]
    fn dyadic_parse_display_round_trip() {
        for s in ["0", "5", "-7", "1/2^1", "-3/2^2", "13/2^5"] {
            let d = dy(s);
            assert_eq!(d.to_string().parse::<Dyadic>().unwrap(), d);
        }
        assert_eq!(dy("1/2"), Dyadic::HALF);
        assert!("x/2^1".parse::<Dyadic>().is_err());
        assert!("1/3".parse::<Dyadic>().is_err());
    }

    #[test]
    fn apply_translation_of_origin() {
        let x = vec3("0", "0", "0");
        assert_eq!(g1().apply(&x).unwrap(), vec3("1/2", "0", "0"));
    }

    #[test]
    fn apply_identity() {
        let id = AffineMap::identity(3);
        let x = vec3("1/2^2", "-5", "3/2");
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn apply_quarter_point() {
        // ((1/2 e1, diag(1,1,-1)), x=(1/4,1/4,1/4)) -> (3/4, 1/4, -1/4)
        let x = vec3("1/2^2", "1/2^2", "1/2^2");
        assert_eq!(
            g1().apply(&x).unwrap(),
            vec3("3/2^2", "1/2^2", "-1/2^2")
        );
    }

    #[test]
    fn apply_dimension_mismatch() {
        let x = DyVec::zero(2);
        assert_eq!(
            g1().apply(&x),
            Err(AffineError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn compose_substitution() {
        // (1/2 e1, diag(1,1,-1)) ∘ (1/2 e3, I) = (1/2 e1 - 1/2 e3, diag(1,1,-1))
        let g3 = AffineMap::translation_by(vec3("0", "0", "1/2"));
        let c = g1().compose(&g3).unwrap();
        assert_eq!(*c.translation_part(), vec3("1/2", "0", "-1/2"));
        assert_eq!(*c.linear_part(), IntMatrix::diagonal(&[1, 1, -1]));
    }

    #[test]
    fn compose_identity() {
        let id = AffineMap::identity(3);
        assert_eq!(g1().compose(&id).unwrap(), g1());
        assert_eq!(id.compose(&g1()).unwrap(), g1());
    }

    #[test]
    fn generator_squares_to_unit_translation() {
        // g~1 ∘ g~1 = (e1, I) for the Bott group of the worked example
        let sq = g1().compose(&g1()).unwrap();
        assert_eq!(sq, AffineMap::translation_by(vec3("1", "0", "0")));
    }

    #[test]
    fn inverse_cases() {
        let id = AffineMap::identity(3);
        assert_eq!(id.inverse().unwrap(), id);

        let inv = g1().inverse().unwrap();
        assert_eq!(*inv.translation_part(), vec3("-1/2", "0", "0"));
        assert_eq!(*inv.linear_part(), IntMatrix::diagonal(&[1, 1, -1]));
        assert!(g1().compose(&inv).unwrap().is_identity());

        let q = AffineMap::translation_by(vec3("0", "1/2^2", "0"));
        assert_eq!(
            *q.inverse().unwrap().translation_part(),
            vec3("0", "-1/2^2", "0")
        );
    }

    #[test]
    fn inverse_rejects_singular() {
        let m = AffineMap::new(DyVec::zero(2), IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]));
        assert_eq!(m.inverse(), Err(AffineError::NotUnimodular { det: 2 }));
    }

    #[test]
    fn decompose_parts() {
        let (l, t) = g1().decompose();
        assert_eq!(l, IntMatrix::diagonal(&[1, 1, -1]));
        assert_eq!(t, vec3("1/2", "0", "0"));
        let (l, t) = AffineMap::identity(3).decompose();
        assert_eq!(l, IntMatrix::identity(3));
        assert_eq!(t, DyVec::zero(3));
    }

    fn fixture_maps() -> Vec<AffineMap> {
        vec![
            AffineMap::identity(3),
            g1(),
            AffineMap::translation_by(vec3("0", "1/2", "0")),
            AffineMap::new(
                vec3("1/2^2", "0", "-1/2"),
                IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]),
            ),
            AffineMap::new(vec3("1", "-1/2", "3/2^2"), IntMatrix::diagonal(&[-1, 1, -1])),
        ]
    }

    #[test]
    fn l_is_a_homomorphism() {
        for f in fixture_maps() {
            for g in fixture_maps() {
                let c = f.compose(&g).unwrap();
                assert_eq!(*c.linear_part(), f.linear_part().mul(g.linear_part()));
            }
        }
    }

    #[test]
    fn t_is_not_a_homomorphism() {
        // exhibit a pair with T(fg) != T(f) + T(g)
        let f = g1();
        let g = AffineMap::translation_by(vec3("0", "0", "1/2"));
        let c = f.compose(&g).unwrap();
        let sum = f.translation_part().add(g.translation_part());
        assert_ne!(*c.translation_part(), sum);
    }

    #[test]
    fn composition_is_associative_on_fixtures() {
        let maps = fixture_maps();
        for f in &maps {
            for g in &maps {
                for h in &maps {
                    let a = f.compose(g).unwrap().compose(h).unwrap();
                    let b = f.compose(&g.compose(h).unwrap()).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn action_compatibility_on_fixtures() {
        let xs = [
            vec3("0", "0", "0"),
            vec3("1/2^2", "-1/2", "3"),
            vec3("1/2^3", "1/2^3", "-1/2^2"),
        ];
        for f in fixture_maps() {
            for g in fixture_maps() {
                let c = f.compose(&g).unwrap();
                for x in &xs {
                    assert_eq!(
                        c.apply(x).unwrap(),
                        f.apply(&g.apply(x).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn affine_map_json_round_trip() {
        let m = fixture_maps().pop().unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"b\""));
        assert!(json.contains("\"B\""));
        let back: AffineMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
