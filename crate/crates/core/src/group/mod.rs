//! Finite groups stored as multiplication tables.
//!
//! Elements are the indices `0..order`. Every group carries its identity and
//! inverse map; subgroups are passed around as sorted element-index vectors.

mod homs;
mod named;
mod series;
mod sylow;

pub use homs::{find_embedding, for_each_homomorphism, homomorphisms, isomorphism, Homomorphism};
pub use named::{named_family, named_group, product};
pub use series::{composition_series, is_simple, normal_subgroups, CompositionSeries};
pub use sylow::{sylow_classification, SylowReport, SylowSubgroup};

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Default cap on the order of any table we are willing to store.
pub const DEFAULT_MAX_ORDER: usize = 5040;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table must be {order}x{order} with entries below {order}")]
    BadTable { order: usize },
    #[error("empty group")]
    Empty,
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("unknown group spec {0:?}")]
    UnknownSpec(String),
    #[error("group order {order} exceeds the cap {cap}")]
    SizeLimitExceeded { order: usize, cap: usize },
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("search exceeded the node budget of {0}")]
    SearchBudgetExceeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Serialized form: `{"label": str, "order": n, "table": [[int]]}`.
#[derive(Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default)]
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a multiplication table and derives identity and inverses.
    pub fn from_table(order: usize, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order || table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(GroupError::BadTable { order });
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] == x && flat[x * order + e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| flat[x * order + y] == identity && flat[y * order + x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverse.push(inv);
        }
        let group = FiniteGroup { label: String::new(), order, table: flat, identity, inverse };
        if let Some((x, y, z)) = group.associativity_failure() {
            return Err(GroupError::NotAssociative(x, y, z));
        }
        Ok(group)
    }

    /// Builds a group from a product function that is associative by
    /// construction; identity and inverses are still derived from the table.
    pub(crate) fn from_fn(label: impl Into<String>, order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(mul(x, y));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x))
            .expect("constructed table has an identity");
        let inverse = (0..order)
            .map(|x| (0..order).find(|&y| table[x * order + y] == identity).expect("constructed table has inverses"))
            .collect();
        FiniteGroup { label: label.into(), order, table, identity, inverse }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { label: self.label.clone(), order: self.order, table: self.rows() }
    }

    pub fn from_json(json: &GroupJson) -> Result<Self, GroupError> {
        Ok(Self::from_table(json.order, &json.table)?.with_label(json.label.clone()))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least `d` with `x^d = 1` for every element.
    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.element_order(x)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Light's test: associativity only needs checking against a generating set.
    pub(crate) fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let gens = self.magma_generators();
        for &a in &gens {
            for x in self.elements() {
                let xa = self.mul(x, a);
                for y in self.elements() {
                    if self.mul(xa, y) != self.mul(x, self.mul(a, y)) {
                        return Some((x, a, y));
                    }
                }
            }
        }
        None
    }

    fn magma_generators(&self) -> Vec<usize> {
        let mut reached = vec![false; self.order];
        let mut gens = Vec::new();
        for x in self.elements() {
            if reached[x] {
                continue;
            }
            gens.push(x);
            reached[x] = true;
            let mut members: Vec<usize> = (0..self.order).filter(|&y| reached[y]).collect();
            // close under left and right multiplication by generators
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for &g in &gens {
                    for z in [self.mul(y, g), self.mul(g, y)] {
                        if !reached[z] {
                            reached[z] = true;
                            members.push(z);
                        }
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Smallest subgroup containing `set`, sorted.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let gens: Vec<usize> = set.to_vec();
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            inside[x] = true;
        }
        inside[self.identity] && set.iter().all(|&x| inside[self.inv(x)] && set.iter().all(|&y| inside[self.mul(x, y)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        set.iter().for_each(|&x| inside[x] = true);
        self.is_subgroup(set) && self.elements().all(|g| set.iter().all(|&n| inside[self.conjugate(g, n)]))
    }

    /// Normal closure of `set` inside the subgroup `within`.
    pub(crate) fn normal_closure_in(&self, within: &[usize], set: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in set {
            for &g in within {
                let c = self.conjugate(g, x);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    /// Greedy generating set: scan elements in index order, keep those not yet
    /// in the span of the earlier picks.
    pub fn generating_set(&self, within: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &x in within {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// The subgroup on `set` as a standalone group. Elements are renumbered in
    /// increasing order of their index here, so the returned embedding is
    /// monotone.
    pub fn restrict(&self, set: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(set) {
            return Err(GroupError::NotSubgroup);
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut position = vec![usize::MAX; self.order];
        for (i, &x) in sorted.iter().enumerate() {
            position[x] = i;
        }
        let sub = FiniteGroup::from_fn(format!("sub({})", self.label), sorted.len(), |i, j| {
            position[self.mul(sorted[i], sorted[j])]
        });
        Ok((sub, sorted))
    }

    /// `G / N` with cosets ordered by their least element.
    pub fn quotient_by(&self, normal: &[usize]) -> Result<(FiniteGroup, Homomorphism), GroupError> {
        let all: Vec<usize> = self.elements().collect();
        let q = self.quotient_of_subgroup(&all, normal)?;
        let map = q.coset_of.iter().map(|c| c.expect("every element lies in a coset")).collect();
        Ok((q.group, Homomorphism::new(map)))
    }

    /// Quotient `M / N` for subgroups `N ⊴ M` of this group.
    pub fn quotient_of_subgroup(&self, m: &[usize], n: &[usize]) -> Result<Quotient, GroupError> {
        if !self.is_subgroup(m) || !self.is_subgroup(n) {
            return Err(GroupError::NotSubgroup);
        }
        let mut in_n = vec![false; self.order];
        n.iter().for_each(|&x| in_n[x] = true);
        let mut in_m = vec![false; self.order];
        m.iter().for_each(|&x| in_m[x] = true);
        if n.iter().any(|&x| !in_m[x]) {
            return Err(GroupError::NotSubgroup);
        }
        if m.iter().any(|&g| n.iter().any(|&x| !in_n[self.conjugate(g, x)])) {
            return Err(GroupError::NotNormal);
        }
        let mut sorted_m = m.to_vec();
        sorted_m.sort_unstable();
        let mut coset_of = vec![None; self.order];
        let mut representatives = Vec::new();
        for &g in &sorted_m {
            if coset_of[g].is_some() {
                continue;
            }
            let c = representatives.len();
            representatives.push(g);
            for &x in n {
                coset_of[self.mul(g, x)] = Some(c);
            }
        }
        let reps = representatives.clone();
        let label = format!("{}/N", self.label);
        let group = FiniteGroup::from_fn(label, reps.len(), |i, j| {
            coset_of[self.mul(reps[i], reps[j])].expect("product stays in M")
        });
        Ok(Quotient { group, coset_of, representatives })
    }
}

/// A quotient `M / N` together with the projection from `M` (indexed by the
/// ambient group) and the least element of every coset.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub coset_of: Vec<Option<usize>>,
    pub representatives: Vec<usize>,
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_associative(g: &FiniteGroup) -> bool {
        g.elements().all(|x| g.elements().all(|y| g.elements().all(|z| g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)))))
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(1, &[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn klein_four_from_xor() {
        let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        let g = FiniteGroup::from_table(4, &table).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.identity(), 0);
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn rejects_noninvertible() {
        let err = FiniteGroup::from_table(2, &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NoInverse(1) | GroupError::NotAssociative(..)));
    }

    #[test]
    fn rejects_nonassociative_quasigroup() {
        // Latin square with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(5, &t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn light_test_agrees_with_brute_force_on_corpus() {
        for spec in ["cyclic:6", "dihedral:5", "symmetric:4", "quaternion", "product:(cyclic:2,dihedral:3)"] {
            let g = named_group(spec, DEFAULT_MAX_ORDER).unwrap();
            assert!(brute_associative(&g), "{spec}");
            assert!(g.associativity_failure().is_none(), "{spec}");
        }
    }

    #[test]
    fn generated_subgroups() {
        let s3 = named_group("symmetric:3", DEFAULT_MAX_ORDER).unwrap();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let c = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(s3.subgroup_generated(&[t]).len(), 2);
        assert_eq!(s3.subgroup_generated(&[]), vec![s3.identity()]);
        assert_eq!(s3.subgroup_generated(&[c, t]).len(), 6);
    }

    #[test]
    fn quotients() {
        let s3 = named_group("symmetric:3", DEFAULT_MAX_ORDER).unwrap();
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        let (q, proj) = s3.quotient_by(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_homomorphism(&s3, &q));

        let z4 = named_group("cyclic:4", DEFAULT_MAX_ORDER).unwrap();
        let (q, proj) = z4.quotient_by(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        let kernel: Vec<usize> = z4.elements().filter(|&x| proj.map[x] == q.identity()).collect();
        assert_eq!(kernel, vec![0, 2]);

        let (q, _) = z4.quotient_by(&[0]).unwrap();
        assert!(isomorphism(&q, &z4, u64::MAX).unwrap().is_some());
    }

    #[test]
    fn quotient_errors() {
        let s3 = named_group("symmetric:3", DEFAULT_MAX_ORDER).unwrap();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let mut h = vec![0, t];
        h.sort();
        assert_eq!(s3.quotient_by(&h).unwrap_err(), GroupError::NotNormal);
        assert_eq!(s3.quotient_by(&[0, t, 5]).unwrap_err(), GroupError::NotSubgroup);
    }

    #[test]
    fn exponents() {
        let g = |s| named_group(s, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g("cyclic:1").exponent(), 1);
        assert_eq!(g("symmetric:3").exponent(), 6);
        assert_eq!(g("quaternion").exponent(), 4);
    }
}
