use super::{FiniteGroup, GroupError};
use serde::{Deserialize, Serialize};

/// A map between groups given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.map.len() == source.order()
            && self.map.iter().all(|&y| y < target.order())
            && source
                .elements()
                .all(|x| source.elements().all(|y| self.map[source.mul(x, y)] == target.mul(self.map[x], self.map[y])))
    }

    pub fn kernel(&self, target: &FiniteGroup) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == target.identity()).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.iter().max().map_or(0, |m| m + 1)];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// Backtracking over images of a generating set of `source`. Each partial
/// assignment is propagated to the subgroup it generates; a clash there means
/// some relation among the assigned generators is violated and the branch is cut.
struct HomSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    budget: u64,
    nodes: u64,
    injective: bool,
}

impl HomSearch<'_> {
    /// Extends `partial` by closing under right multiplication by the first
    /// `k` generators. Returns false on an inconsistency.
    fn propagate(&self, partial: &mut [usize], k: usize) -> bool {
        const UNSET: usize = usize::MAX;
        let mut queue: Vec<usize> = (0..partial.len()).filter(|&x| partial[x] != UNSET).collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in &self.gens[..k] {
                let xg = self.source.mul(x, g);
                let image = self.target.mul(partial[x], partial[g]);
                if partial[xg] == UNSET {
                    partial[xg] = image;
                    queue.push(xg);
                } else if partial[xg] != image {
                    return false;
                }
            }
        }
        true
    }

    fn run(
        &mut self,
        partial: Vec<usize>,
        k: usize,
        visit: &mut dyn FnMut(Homomorphism) -> bool,
    ) -> Result<bool, GroupError> {
        if k == self.gens.len() {
            return Ok(visit(Homomorphism::new(partial)));
        }
        let g = self.gens[k];
        let order = self.source.element_order(g);
        for image in self.target.elements() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GroupError::SearchBudgetExceeded(self.budget));
            }
            let image_order = self.target.element_order(image);
            if !order.is_multiple_of(image_order) || (self.injective && order != image_order) {
                continue;
            }
            let mut next = partial.clone();
            if next[g] != usize::MAX && next[g] != image {
                continue;
            }
            next[g] = image;
            if self.propagate(&mut next, k + 1)
                && (!self.injective || injective_so_far(&next))
                && !self.run(next, k + 1, visit)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Visits every homomorphism `source -> target` in a fixed order until the
/// visitor returns false.
pub fn for_each_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: u64,
    visit: &mut dyn FnMut(Homomorphism) -> bool,
) -> Result<(), GroupError> {
    let all: Vec<usize> = source.elements().collect();
    let gens = source.generating_set(&all);
    let mut partial = vec![usize::MAX; source.order()];
    partial[source.identity()] = target.identity();
    let mut search = HomSearch { source, target, gens, budget, nodes: 0, injective: false };
    search.run(partial, 0, visit)?;
    Ok(())
}

fn injective_so_far(partial: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    partial.iter().filter(|&&y| y != usize::MAX).all(|&y| seen.insert(y))
}

/// First injective homomorphism `source -> target` in the enumeration order,
/// searching only generator images of matching order and cutting any branch
/// whose partial map already identifies two elements.
pub fn find_embedding(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: u64,
) -> Result<Option<Homomorphism>, GroupError> {
    if !target.order().is_multiple_of(source.order()) {
        return Ok(None);
    }
    let all: Vec<usize> = source.elements().collect();
    let gens = source.generating_set(&all);
    let mut partial = vec![usize::MAX; source.order()];
    partial[source.identity()] = target.identity();
    let mut search = HomSearch { source, target, gens, budget, nodes: 0, injective: true };
    let mut found = None;
    search.run(partial, 0, &mut |phi| {
        found = Some(phi);
        false
    })?;
    Ok(found)
}

/// All homomorphisms `source -> target`, deterministic order.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup, budget: u64) -> Result<Vec<Homomorphism>, GroupError> {
    let mut out = Vec::new();
    for_each_homomorphism(source, target, budget, &mut |h| {
        out.push(h);
        true
    })?;
    Ok(out)
}

/// First bijective homomorphism `a -> b`, if any.
pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup, budget: u64) -> Result<Option<Homomorphism>, GroupError> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let mut found = None;
    for_each_homomorphism(a, b, budget, &mut |h| {
        if h.is_injective() {
            found = Some(h);
            false
        } else {
            true
        }
    })?;
    Ok(found)
}
