use super::{prime_factors, FiniteGroup};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SylowSubgroup {
    pub prime: usize,
    pub elements: Vec<usize>,
    pub is_abelian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowReport {
    pub subgroups: Vec<SylowSubgroup>,
    pub has_nonabelian_sylow: bool,
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// One Sylow subgroup per prime divisor. A `p`-subgroup is grown by absorbing
/// any element that keeps it a `p`-group, until no element does; a maximal
/// `p`-subgroup is Sylow.
pub fn sylow_classification(g: &FiniteGroup) -> SylowReport {
    let mut subgroups = Vec::new();
    for p in prime_factors(g.order()) {
        let mut full = g.order();
        let mut target = 1;
        while full.is_multiple_of(p) {
            full /= p;
            target *= p;
        }
        let mut current = vec![g.identity()];
        let mut changed = true;
        while changed && current.len() < target {
            changed = false;
            for x in g.elements() {
                if current.binary_search(&x).is_ok() || !is_power_of(g.element_order(x), p) {
                    continue;
                }
                let mut seed = current.clone();
                seed.push(x);
                let candidate = g.subgroup_generated(&seed);
                if is_power_of(candidate.len(), p) {
                    current = candidate;
                    changed = true;
                }
            }
        }
        assert_eq!(current.len(), target, "maximal p-subgroup must be Sylow");
        let is_abelian = current.iter().all(|&x| current.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        subgroups.push(SylowSubgroup { prime: p, elements: current, is_abelian });
    }
    let has_nonabelian_sylow = subgroups.iter().any(|s| !s.is_abelian);
    SylowReport { subgroups, has_nonabelian_sylow }
}
