use super::{algebra_isomorphism, FiniteAlgebra, ModelError};
use std::collections::HashSet;

/// A partition of the universe, blocks numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    pub fn identity(size: usize) -> Self {
        Congruence { blocks: (0..size).collect() }
    }

    pub fn total(size: usize) -> Self {
        Congruence { blocks: vec![0; size] }
    }

    /// Canonical partition from arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let blocks = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.blocks.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other`
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.block_count()];
        self.blocks.iter().zip(&other.blocks).all(|(&b, &o)| {
            if image[b] == usize::MAX {
                image[b] = o;
            }
            image[b] == o
        })
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let k = other.block_count();
        Congruence::from_labels(&self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| a * k + b).collect::<Vec<_>>())
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.blocks.len());
        for rel in [&self.blocks, &other.blocks] {
            let mut first = vec![usize::MAX; rel.len()];
            for (x, &b) in rel.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        uf.into_congruence()
    }

    /// Least related pair `(a, b)` with `a < b`.
    pub fn least_pair(&self) -> Option<(usize, usize)> {
        let n = self.blocks.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.related(a, b))
    }

    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        let n = alg.size();
        alg.operations().iter().all(|op| {
            let cells = n.pow(op.arity as u32);
            let mut args = vec![0; op.arity];
            let mut rep = vec![usize::MAX; self.block_count().pow(op.arity as u32)];
            (0..cells).all(|mut idx| {
                for slot in args.iter_mut().rev() {
                    *slot = idx % n;
                    idx /= n;
                }
                let key = args.iter().fold(0, |acc, &a| acc * self.block_count() + self.blocks[a]);
                let value = self.blocks[op.apply(n, &args)];
                if rep[key] == usize::MAX {
                    rep[key] = value;
                }
                rep[key] == value
            })
        })
    }

    pub fn quotient(&self, alg: &FiniteAlgebra) -> FiniteAlgebra {
        alg.quotient_by_blocks(&self.blocks, self.block_count())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

/// Least congruence containing `pairs`. Every pair that joins two classes is
/// pushed through each operation in each argument position, with all other
/// arguments ranging freely, until nothing new merges.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    let mut args = Vec::new();
    while let Some((a, b)) = work.pop() {
        for op in alg.operations() {
            if op.arity == 0 {
                continue;
            }
            let others = n.pow(op.arity as u32 - 1);
            args.resize(op.arity, 0);
            for pos in 0..op.arity {
                for mut idx in 0..others {
                    for k in (0..op.arity).rev() {
                        if k == pos {
                            continue;
                        }
                        args[k] = idx % n;
                        idx /= n;
                    }
                    args[pos] = a;
                    let fa = op.apply(n, &args);
                    args[pos] = b;
                    let fb = op.apply(n, &args);
                    if uf.union(fa, fb) {
                        work.push((fa, fb));
                    }
                }
            }
        }
    }
    uf.into_congruence()
}

/// `Cg(a, b)` for every `a < b`, in lexicographic order of the pair.
pub fn principal_congruences(alg: &FiniteAlgebra) -> Vec<((usize, usize), Congruence)> {
    let n = alg.size();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(((a, b), congruence_generated(alg, &[(a, b)])));
        }
    }
    out
}

/// `Some(pair)` when `alg` is subdirectly irreducible, where `pair` is the
/// least pair generating the monolith; `None` otherwise (including for the
/// one-element algebra).
pub fn is_subdirectly_irreducible(alg: &FiniteAlgebra) -> Option<(usize, usize)> {
    let n = alg.size();
    if n < 2 {
        return None;
    }
    let mut meet = Congruence::total(n);
    for (_, c) in principal_congruences(alg) {
        meet = meet.meet(&c);
        if meet.is_identity() {
            return None;
        }
    }
    meet.least_pair()
}

/// Every congruence, as joins of principal ones, ordered by decreasing block
/// count and then by block vector.
pub fn congruence_lattice(
    alg: &FiniteAlgebra,
    size_cap: usize,
    lattice_cap: usize,
) -> Result<Vec<Congruence>, ModelError> {
    let n = alg.size();
    if n > size_cap {
        return Err(ModelError::BudgetExceeded { needed: n as u128, cap: size_cap as u64 });
    }
    let principals: Vec<Congruence> = {
        let mut seen = HashSet::new();
        principal_congruences(alg).into_iter().map(|(_, c)| c).filter(|c| seen.insert(c.clone())).collect()
    };
    let identity = Congruence::identity(n);
    let mut seen: HashSet<Congruence> = HashSet::from([identity.clone()]);
    let mut all = vec![identity];
    let mut i = 0;
    while i < all.len() {
        for p in &principals {
            let j = all[i].join(p);
            if seen.insert(j.clone()) {
                all.push(j);
                if all.len() > lattice_cap {
                    return Err(ModelError::BudgetExceeded { needed: all.len() as u128, cap: lattice_cap as u64 });
                }
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.blocks.cmp(&b.blocks)));
    Ok(all)
}

/// Congruences below the total one with a unique upper cover: the meet of
/// everything strictly above them is strictly above them.
pub fn meet_irreducible_congruences(
    alg: &FiniteAlgebra,
    size_cap: usize,
    lattice_cap: usize,
) -> Result<Vec<Congruence>, ModelError> {
    let lattice = congruence_lattice(alg, size_cap, lattice_cap)?;
    let n = alg.size();
    Ok(lattice
        .iter()
        .filter(|c| !c.is_total())
        .filter(|c| {
            let above =
                lattice.iter().filter(|d| *d != *c && c.refines(d)).fold(Congruence::total(n), |m, d| m.meet(d));
            above != **c
        })
        .cloned()
        .collect())
}

/// Quotients by the meet-irreducible congruences, one per isomorphism type,
/// largest first.
pub fn si_quotients(alg: &FiniteAlgebra, size_cap: usize) -> Result<Vec<FiniteAlgebra>, ModelError> {
    let mut out: Vec<FiniteAlgebra> = Vec::new();
    for c in meet_irreducible_congruences(alg, size_cap, 100_000)? {
        let q = c.quotient(alg);
        if !out.iter().any(|o| algebra_isomorphism(o, &q).is_some()) {
            out.push(q);
        }
    }
    Ok(out)
}
