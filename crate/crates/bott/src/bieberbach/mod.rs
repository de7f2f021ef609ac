//! The Bott group Γ(A): canonical element representation, group law,
//! membership, and algebraic invariants.
//!
//! Elements are pairs (v, s) with v in Z^n and s a holonomy selector in
//! F_2^n; the pair realizes the rigid motion (v + t(s), D(s)) where
//! (t(s), D(s)) is the ordered product of the lifted generators selected by
//! s. That section choice makes the translation table computable in closed
//! form and the 2-cocycle vanish on ordered pairs.

mod quotient;

pub use quotient::{finite_quotient_fingerprint, Fingerprint, FingerprintError};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::affine::{AffineMap, Dyadic, DyVec, IntMatrix};
use crate::bott::{lift_generators, BottMatrix};
use crate::lattice::{hermite_basis, smith_invariant_factors};

/// Selector bitmask helpers: bit i selects generator i (0-indexed).
pub fn selector_to_string(s: u32, n: usize) -> String {
    (0..n).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn selector_from_string(text: &str) -> Option<u32> {
    let mut s = 0u32;
    for (i, c) in text.chars().enumerate() {
        match c {
            '1' => s |= 1 << i,
            '0' => {}
            _ => return None,
        }
    }
    Some(s)
}

/// Canonical form of an element of Γ(A): lattice part `v` and holonomy
/// selector `s`. The realized rigid motion is `(v + t(s), D(s))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub v: Vec<i64>,
    pub s: u32,
}

impl GroupElement {
    pub fn identity(n: usize) -> GroupElement {
        GroupElement { v: vec![0; n], s: 0 }
    }

    pub fn translation(v: Vec<i64>) -> GroupElement {
        GroupElement { v, s: 0 }
    }

    pub fn generator(n: usize, i: usize) -> GroupElement {
        assert!(i < n);
        GroupElement { v: vec![0; n], s: 1 << i }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn is_identity(&self) -> bool {
        self.s == 0 && self.v.iter().all(|&x| x == 0)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            v: &'a [i64],
            s: String,
        }
        Repr {
            v: &self.v,
            s: selector_to_string(self.s, self.v.len()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<GroupElement, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            v: Vec<i64>,
            s: String,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.s.len() != r.v.len() {
            return Err(D::Error::custom("selector length must equal dimension"));
        }
        let s = selector_from_string(&r.s)
            .ok_or_else(|| D::Error::custom("selector must be a 0/1 string"))?;
        Ok(GroupElement { v: r.v, s })
    }
}

/// Canonical invariant factors of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Nontrivial invariant factors, each dividing the next.
    pub torsion: Vec<i64>,
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators of the center of Γ(A), reduced to an independent basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDescription {
    pub rank: usize,
    pub generators: Vec<GroupElement>,
}

/// The holonomy group L(Γ) as a set of diagonal sign vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Holonomy {
    /// F_2-rank of the image; the order is `2^rank`.
    pub rank: usize,
    /// The distinct sign vectors, sorted.
    pub elements: Vec<Vec<i64>>,
}

/// Γ(A) with its cached selector tables.
///
/// `d(s)` is the diagonal of the rotational part and `t(s)` the translation
/// of the ordered product of selected generators; `f(s,u)` is the resulting
/// integer 2-cocycle `t(s) + D(s) t(u) - t(s xor u)`.
#[derive(Debug, Clone)]
pub struct BottGroup {
    matrix: BottMatrix,
    n: usize,
    generators: Vec<AffineMap>,
    d_table: Vec<Vec<i64>>,
    t_table: Vec<DyVec>,
    f_table: Vec<Vec<i64>>,
}

impl BottGroup {
    pub fn new(matrix: BottMatrix) -> BottGroup {
        let n = matrix.dim();
        assert!(n <= 20, "selector tables would not fit for n = {n}");
        let generators = lift_generators(&matrix);
        let count = 1usize << n;
        let mut d_table = Vec::with_capacity(count);
        let mut t_table = Vec::with_capacity(count);
        for s in 0..count as u32 {
            let mut acc = AffineMap::identity(n);
            for i in 0..n {
                if s >> i & 1 == 1 {
                    acc = acc.compose(&generators[i]).expect("same dimension");
                }
            }
            let diag = acc
                .linear_part()
                .as_diagonal_signs()
                .expect("ordered products of lifted generators are diagonal");
            d_table.push(diag);
            t_table.push(acc.translation_part().clone());
        }
        let mut f_table = Vec::with_capacity(count * count);
        for s in 0..count {
            for u in 0..count {
                let mut w = t_table[s].clone();
                for k in 0..n {
                    w.set(k, w.get(k) + t_table[u].get(k).scale(d_table[s][k]));
                }
                let f = w.sub(&t_table[s ^ u]);
                f_table.push(
                    f.to_integers()
                        .expect("the Bott cocycle is integer-valued"),
                );
            }
        }
        BottGroup {
            matrix,
            n,
            generators,
            d_table,
            t_table,
            f_table,
        }
    }

    pub fn matrix(&self) -> &BottMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn selector_count(&self) -> usize {
        1 << self.n
    }

    /// The lifted generators g~_1 .. g~_n as affine maps.
    pub fn generators(&self) -> &[AffineMap] {
        &self.generators
    }

    /// Diagonal of D(s).
    pub fn holonomy_diagonal(&self, s: u32) -> &[i64] {
        &self.d_table[s as usize]
    }

    /// Representative translation t(s) of the canonical section.
    pub fn section_translation(&self, s: u32) -> &DyVec {
        &self.t_table[s as usize]
    }

    /// The integer cocycle value f(s, u).
    pub fn cocycle(&self, s: u32, u: u32) -> &[i64] {
        &self.f_table[(s as usize) * self.selector_count() + u as usize]
    }

    /// The section representative (t(s), D(s)); `representative(0)` is the
    /// identity.
    pub fn representative(&self, s: u32) -> AffineMap {
        AffineMap::new(
            self.t_table[s as usize].clone(),
            IntMatrix::diagonal(&self.d_table[s as usize]),
        )
    }

    /// Realize a canonical element as a rigid motion `(v + t(s), D(s))`.
    pub fn realize(&self, x: &GroupElement) -> AffineMap {
        assert_eq!(x.dim(), self.n);
        let mut t = self.t_table[x.s as usize].clone();
        for k in 0..self.n {
            t.set(k, t.get(k) + Dyadic::from_int(x.v[k]));
        }
        AffineMap::new(t, IntMatrix::diagonal(&self.d_table[x.s as usize]))
    }

    /// The group law `(v, s)(w, u) = (v + D(s) w + f(s, u), s xor u)`.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        assert_eq!(x.dim(), self.n);
        assert_eq!(y.dim(), self.n);
        let f = self.cocycle(x.s, y.s);
        let d = &self.d_table[x.s as usize];
        let v = (0..self.n)
            .map(|k| x.v[k] + d[k] * y.v[k] + f[k])
            .collect();
        GroupElement { v, s: x.s ^ y.s }
    }

    pub fn inverse_element(&self, x: &GroupElement) -> GroupElement {
        let f = self.cocycle(x.s, x.s);
        let d = &self.d_table[x.s as usize];
        let v = (0..self.n).map(|k| -d[k] * (x.v[k] + f[k])).collect();
        let inv = GroupElement { v, s: x.s };
        debug_assert!(self.multiply(x, &inv).is_identity());
        inv
    }

    /// Membership test: the unique `(v, s)` realizing `m`, if any.
    ///
    /// Scans every selector whose D(s) matches the linear part; the map
    /// s -> D(s) need not be injective, but at most one coset can give an
    /// integral lattice part.
    pub fn canonicalize(&self, m: &AffineMap) -> Option<GroupElement> {
        if m.dim() != self.n {
            return None;
        }
        let diag = m.linear_part().as_diagonal_signs()?;
        for s in 0..self.selector_count() as u32 {
            if self.d_table[s as usize] != diag {
                continue;
            }
            let delta = m.translation_part().sub(&self.t_table[s as usize]);
            if let Some(v) = delta.to_integers() {
                return Some(GroupElement { v, s });
            }
        }
        None
    }

    pub fn contains(&self, m: &AffineMap) -> bool {
        self.canonicalize(m).is_some()
    }

    /// The holonomy group L(Γ): image of s -> D(s).
    pub fn holonomy(&self) -> Holonomy {
        let mut elements: Vec<Vec<i64>> = self.d_table.clone();
        elements.sort();
        elements.dedup();
        let order = elements.len();
        debug_assert!(order.is_power_of_two());
        Holonomy {
            rank: order.trailing_zeros() as usize,
            elements,
        }
    }

    /// For each holonomy element, the count of -1 entries; a multiset
    /// invariant because any abstract isomorphism conjugates holonomy groups
    /// by a single matrix, preserving each element's eigenvalue multiset.
    pub fn neg_count_multiset(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self
            .holonomy()
            .elements
            .iter()
            .map(|d| d.iter().filter(|&&x| x == -1).count())
            .collect();
        counts.sort();
        counts
    }

    /// True iff no coset of the lattice contains torsion: for every s != 0
    /// some coordinate has D(s)_jj = +1 and t(s)_j not an integer. Holds for
    /// every Bott matrix.
    pub fn torsion_free_check(&self) -> bool {
        (1..self.selector_count()).all(|s| {
            coset_has_no_torsion(&self.d_table[s], &self.t_table[s])
        })
    }

    /// Abelianization via Smith normal form of the relation lattice derived
    /// from generator commutators; for Bott groups this is
    /// Z^torus_rank + (Z/2)^(n - torus_rank).
    pub fn abelianization(&self) -> AbelianInvariants {
        let n = self.n;
        // Relations over generators x_1..x_n and lattice basis y_1..y_n:
        //   squares            g~_i^2 = t_i          ->  2 x_i - y_i = 0
        //   commutators        [g~_i, g~_j] = (c, 0) ->  c . y = 0
        //   lattice conjugacy  [g~_i, t_j]  = (c, 0) ->  c . y = 0
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut row = vec![0i64; 2 * n];
            row[i] = 2;
            row[n + i] = -1;
            rows.push(row);
        }
        for i in 0..n {
            for j in i + 1..n {
                let gi = GroupElement::generator(n, i);
                let gj = GroupElement::generator(n, j);
                let c = self.commutator(&gi, &gj);
                assert_eq!(c.s, 0, "generator commutators are translations");
                let mut row = vec![0i64; 2 * n];
                row[n..].copy_from_slice(&c.v);
                rows.push(row);
            }
        }
        for i in 0..n {
            let d = &self.d_table[1 << i];
            for j in 0..n {
                if d[j] == -1 {
                    let mut row = vec![0i64; 2 * n];
                    row[n + j] = -2;
                    rows.push(row);
                }
            }
        }
        let factors = smith_invariant_factors(&rows);
        AbelianInvariants {
            free_rank: 2 * n - factors.len(),
            torsion: factors.into_iter().filter(|&f| f > 1).collect(),
        }
    }

    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        let inv = self.multiply(&self.inverse_element(x), &self.inverse_element(y));
        self.multiply(&xy, &inv)
    }

    /// Generators of the center, found by solving the commutation conditions
    /// over all 2^n holonomy selectors and reducing to an independent basis.
    ///
    /// Center elements are pure translations of R^n (their rotational part is
    /// the identity), so the center embeds into (1/2)Z^n by its realized
    /// translation; the basis is the Hermite form of that lattice.
    pub fn center_basis(&self) -> CenterDescription {
        let n = self.n;
        let mut doubled: Vec<Vec<i64>> = Vec::new();
        // central translations: coordinates never conjugated
        for j in 0..n {
            if !self.matrix.column_nonzero(j) {
                let mut row = vec![0i64; n];
                row[j] = 2;
                doubled.push(row);
            }
        }
        // elements (v, s) with s != 0 commuting with every generator
        'sel: for s in 1..self.selector_count() as u32 {
            let mut v: Vec<Option<i64>> = vec![None; n];
            for i in 0..n {
                let ei = 1u32 << i;
                let lhs = self.cocycle(ei, s).to_vec();
                let rhs = self.cocycle(s, ei).to_vec();
                let d = &self.d_table[ei as usize];
                for j in 0..n {
                    let delta = lhs[j] - rhs[j];
                    if d[j] == 1 {
                        if delta != 0 {
                            continue 'sel;
                        }
                    } else {
                        if delta % 2 != 0 {
                            continue 'sel;
                        }
                        let want = delta / 2;
                        match v[j] {
                            None => v[j] = Some(want),
                            Some(prev) if prev != want => continue 'sel,
                            _ => {}
                        }
                    }
                }
            }
            let v: Vec<i64> = v.into_iter().map(|o| o.unwrap_or(0)).collect();
            let candidate = GroupElement { v, s };
            debug_assert!((0..n).all(|i| {
                let g = GroupElement::generator(n, i);
                self.multiply(&candidate, &g) == self.multiply(&g, &candidate)
            }));
            let tr = self.realize(&candidate);
            let twice: Vec<i64> = (0..n)
                .map(|k| {
                    tr.translation_part()
                        .get(k)
                        .mul_pow2(1)
                        .to_integer()
                        .expect("doubled center translation is integral")
                })
                .collect();
            doubled.push(twice);
        }
        let basis = hermite_basis(&doubled);
        let generators: Vec<GroupElement> = basis
            .iter()
            .map(|row| {
                let half = DyVec::from_entries(
                    row.iter().map(|&x| Dyadic::new(x, 1)).collect(),
                );
                self.canonicalize(&AffineMap::translation_by(half))
                    .expect("center basis vectors realize group elements")
            })
            .collect();
        CenterDescription {
            rank: generators.len(),
            generators,
        }
    }

    /// Doubled translation vectors of the center lattice (basis rows).
    pub fn center_lattice_doubled(&self) -> Vec<Vec<i64>> {
        self.center_basis()
            .generators
            .iter()
            .map(|g| {
                let m = self.realize(g);
                (0..self.n)
                    .map(|k| {
                        m.translation_part()
                            .get(k)
                            .mul_pow2(1)
                            .to_integer()
                            .expect("center translations are half-integral")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Torsion criterion for a single lattice coset `(Z^n + t, D)`: the coset is
/// torsion-free iff some coordinate has `D_jj = +1` and `t_j` non-integral.
pub fn coset_has_no_torsion(diag: &[i64], t: &DyVec) -> bool {
    diag.iter()
        .zip(t.entries())
        .any(|(&d, e)| d == 1 && !e.is_integer())
}
