//! Finite quotients Γ/mZ^n (optionally also by the center) and their
//! isomorphism-invariant fingerprints.
//!
//! The reference lattice Z^n is generated by the squares of the generators;
//! in fact it is generated by the squares of *all* elements of Γ, so it is
//! fully characteristic and any abstract isomorphism carries mZ^n to mZ^n.
//! Fingerprints of these quotients are therefore isomorphism invariants of
//! the Bott groups themselves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AbelianInvariants, BottGroup, GroupElement};
use crate::lattice::hermite_basis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FingerprintError {
    #[error("modulus must be 2 or 4, got {0}")]
    BadModulus(u32),
    #[error("quotient order {order} exceeds the enumeration budget 2^20")]
    BudgetExceeded { order: u64 },
}

/// Isomorphism-invariant summary of a finite quotient of Γ.
///
/// Multisets are stored sorted so that equal fingerprints serialize to
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u64,
    /// element order -> multiplicity
    pub element_orders: BTreeMap<u64, u64>,
    pub center_order: u64,
    pub commutator_order: u64,
    pub abelianization: AbelianInvariants,
    /// conjugacy class sizes, sorted ascending
    pub class_sizes: Vec<u64>,
}

const BUDGET: u64 = 1 << 20;

/// Fingerprint of the finite group Γ/L where L = mZ^n, or L = mZ^n together
/// with the center when `mod_center` is set. All fields are computed by
/// direct enumeration.
pub fn finite_quotient_fingerprint(
    group: &BottGroup,
    modulus: u32,
    mod_center: bool,
) -> Result<Fingerprint, FingerprintError> {
    if modulus != 2 && modulus != 4 {
        return Err(FingerprintError::BadModulus(modulus));
    }
    let n = group.dim();
    let order = (modulus as u64).pow(n as u32) << n;
    if order > BUDGET {
        return Err(FingerprintError::BudgetExceeded { order });
    }
    let q = PairQuotient::new(group, modulus);
    let generators: Vec<usize> = (0..n)
        .map(|i| q.encode(&GroupElement::generator(n, i)))
        .collect();

    if !mod_center {
        return Ok(fingerprint_of(&q, &generators));
    }

    // Quotient additionally by the image of the center. Center elements are
    // central in Γ, hence central in the quotient; the image subgroup is
    // normal and the coset group is computed directly.
    let center = group.center_basis();
    let cgens: Vec<usize> = center
        .generators
        .iter()
        .map(|z| {
            q.encode(&GroupElement {
                v: z.v.iter().map(|&x| x.rem_euclid(modulus as i64)).collect(),
                s: z.s,
            })
        })
        .collect();
    let sub = q.subgroup_closure(&cgens);
    let cosets = q.coset_group(&sub);
    let qgens: Vec<usize> = generators.iter().map(|&g| cosets.class_of[g]).collect();
    Ok(fingerprint_of(&cosets, &qgens))
}

/// A finite group given by element count and a multiplication callback.
trait FiniteGroup {
    fn size(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
}

/// Γ/mZ^n on packed pairs (v mod m, s).
struct PairQuotient<'g> {
    group: &'g BottGroup,
    modulus: i64,
    n: usize,
}

impl<'g> PairQuotient<'g> {
    fn new(group: &'g BottGroup, modulus: u32) -> Self {
        PairQuotient {
            group,
            modulus: modulus as i64,
            n: group.dim(),
        }
    }

    fn encode(&self, x: &GroupElement) -> usize {
        let mut idx = 0usize;
        for k in (0..self.n).rev() {
            idx = idx * self.modulus as usize + x.v[k].rem_euclid(self.modulus) as usize;
        }
        idx + ((x.s as usize) * (self.modulus as usize).pow(self.n as u32))
    }

    fn decode(&self, idx: usize) -> GroupElement {
        let base = (self.modulus as usize).pow(self.n as u32);
        let s = (idx / base) as u32;
        let mut rest = idx % base;
        let mut v = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            v.push((rest % self.modulus as usize) as i64);
            rest /= self.modulus as usize;
        }
        GroupElement { v, s }
    }

    fn subgroup_closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.size()];
        member[self.identity()] = true;
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        member
    }

    fn coset_group(&self, sub: &[bool]) -> CosetGroup<'_, Self> {
        CosetGroup::new(self, sub)
    }
}

impl FiniteGroup for PairQuotient<'_> {
    fn size(&self) -> usize {
        (self.modulus as usize).pow(self.n as u32) << self.n
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let x = self.decode(a);
        let y = self.decode(b);
        self.encode(&self.group.multiply(&x, &y))
    }
}

/// Quotient of a finite group by a (central, here) normal subgroup, as the
/// partition into cosets.
struct CosetGroup<'a, G: FiniteGroup> {
    base: &'a G,
    /// element -> coset id
    class_of: Vec<usize>,
    /// coset id -> representative element
    reps: Vec<usize>,
}

impl<'a, G: FiniteGroup> CosetGroup<'a, G> {
    fn new(base: &'a G, sub: &[bool]) -> Self {
        let subgroup: Vec<usize> = (0..base.size()).filter(|&i| sub[i]).collect();
        let mut class_of = vec![usize::MAX; base.size()];
        let mut reps = Vec::new();
        for x in 0..base.size() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            for &h in &subgroup {
                class_of[base.mul(x, h)] = id;
            }
            reps.push(x);
        }
        CosetGroup {
            base,
            class_of,
            reps,
        }
    }
}

impl<G: FiniteGroup> FiniteGroup for CosetGroup<'_, G> {
    fn size(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> usize {
        self.class_of[self.base.identity()]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.class_of[self.base.mul(self.reps[a], self.reps[b])]
    }
}

fn fingerprint_of<G: FiniteGroup>(g: &G, generators: &[usize]) -> Fingerprint {
    let size = g.size();
    let e = g.identity();

    // element orders; 2-groups throughout, so repeated squaring suffices
    let mut element_orders: BTreeMap<u64, u64> = BTreeMap::new();
    let mut order_of = vec![0u64; size];
    for x in 0..size {
        let mut y = x;
        let mut ord = 1u64;
        while y != e {
            y = g.mul(y, y);
            ord *= 2;
        }
        order_of[x] = ord;
        *element_orders.entry(ord).or_insert(0) += 1;
    }

    // inverses
    let mut inv = vec![0usize; size];
    for x in 0..size {
        let mut y = x;
        let mut prev = e;
        while y != e {
            prev = y;
            y = g.mul(y, x);
        }
        inv[x] = if x == e { e } else { prev };
    }

    let center_order = (0..size)
        .filter(|&x| generators.iter().all(|&gen| g.mul(x, gen) == g.mul(gen, x)))
        .count() as u64;

    // commutator subgroup: normal closure of generator commutators
    let mut member = vec![false; size];
    member[e] = true;
    let mut frontier = Vec::new();
    for &a in generators {
        for &b in generators {
            let c = g.mul(g.mul(a, b), g.mul(inv[a], inv[b]));
            if !member[c] {
                member[c] = true;
                frontier.push(c);
            }
        }
    }
    // close under multiplication and conjugation by generators
    while let Some(x) = frontier.pop() {
        for y in 0..size {
            if member[y] {
                let p = g.mul(x, y);
                if !member[p] {
                    member[p] = true;
                    frontier.push(p);
                }
            }
        }
        for &gen in generators {
            let c = g.mul(g.mul(gen, x), inv[gen]);
            if !member[c] {
                member[c] = true;
                frontier.push(c);
            }
        }
    }
    let commutator: Vec<usize> = (0..size).filter(|&x| member[x]).collect();
    let commutator_order = commutator.len() as u64;

    // abelianization of the quotient: coset group of the commutator subgroup
    let abelianization = {
        let cosets = CosetGroup::new(g, &member);
        // finite abelian 2-group: recover invariant factors from the counts
        // N_j = #{x : x^(2^j) = 1}
        let qsize = cosets.size();
        let qe = cosets.identity();
        let mut max_log = 0u32;
        let mut orders = Vec::with_capacity(qsize);
        for x in 0..qsize {
            let mut y = x;
            let mut log = 0u32;
            while y != qe {
                y = cosets.mul(y, y);
                log += 1;
            }
            orders.push(log);
            max_log = max_log.max(log);
        }
        let mut exponents = Vec::new();
        // r_j = log2 N_j - log2 N_{j-1} = #{invariant factors with a_i >= j}
        let mut prev = 0u32;
        let mut rs = Vec::new();
        for j in 1..=max_log {
            let nj = orders.iter().filter(|&&l| l <= j).count();
            let log_nj = nj.trailing_zeros();
            rs.push(log_nj - prev);
            prev = log_nj;
        }
        for (j, &rj) in rs.iter().enumerate().rev() {
            let higher: u32 = rs.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(rj.saturating_sub(higher)) {
                exponents.push((j + 1) as u32);
            }
        }
        exponents.sort();
        AbelianInvariants {
            free_rank: 0,
            torsion: exponents.into_iter().map(|a| 1i64 << a).collect(),
        }
    };

    // conjugacy classes: orbits under conjugation by generators
    let mut class_sizes = Vec::new();
    let mut seen = vec![false; size];
    for x in 0..size {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            i += 1;
            for &gen in generators {
                let c = g.mul(g.mul(gen, y), inv[gen]);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
        }
        class_sizes.push(orbit.len() as u64);
    }
    class_sizes.sort();

    Fingerprint {
        order: size as u64,
        element_orders,
        center_order,
        commutator_order,
        abelianization,
        class_sizes,
    }
}

/// The image of the reference lattice Z^n inside Γ/mZ^n, as packed indices.
/// Used by the lattice-preserving isomorphism search in `classify`.
pub(crate) fn quotient_tables(
    group: &BottGroup,
    modulus: u32,
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = group.dim();
    let count = group.selector_count();
    let d: Vec<Vec<i64>> = (0..count)
        .map(|s| group.holonomy_diagonal(s as u32).to_vec())
        .collect();
    let mut f = Vec::with_capacity(count * count);
    for s in 0..count as u32 {
        for u in 0..count as u32 {
            f.push(
                group
                    .cocycle(s, u)
                    .iter()
                    .map(|&x| x.rem_euclid(modulus as i64))
                    .collect(),
            );
        }
    }
    (d, f)
}

/// Center translation lattice doubled and Hermite reduced; exposed for the
/// mod-center fingerprint docs/tests.
pub fn center_lattice_basis(group: &BottGroup) -> Vec<Vec<i64>> {
    hermite_basis(&group.center_lattice_doubled())
}
