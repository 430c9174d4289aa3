use super::FiniteGroup;
use std::collections::BTreeSet;

/// `{e} = H_0 ⊴ H_1 ⊴ … ⊴ H_m = G` with simple factors `H_{i+1}/H_i`.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// Sorted element sets, bottom (trivial) first.
    pub subgroups: Vec<Vec<usize>>,
    /// `factors[i]` is `H_{i+1} / H_i`.
    pub factors: Vec<FiniteGroup>,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.subgroups.iter().map(Vec::len).collect()
    }
}

/// Lexicographically least maximal normal subgroup of the subgroup `top`.
///
/// Scanning elements in index order and absorbing every element whose normal
/// closure together with the current subgroup stays proper yields exactly the
/// least sorted element set among all maximal normal subgroups: all elements
/// below the first one not yet absorbed are already inside, so including it
/// whenever possible can only make the sequence smaller.
fn least_maximal_normal(g: &FiniteGroup, top: &[usize]) -> Vec<usize> {
    let mut current = vec![g.identity()];
    for &x in top {
        if current.binary_search(&x).is_ok() {
            continue;
        }
        let mut seed = g.generating_set(&current);
        seed.push(x);
        let candidate = g.normal_closure_in(top, &seed);
        if candidate.len() < top.len() {
            current = candidate;
        }
    }
    current
}

pub fn composition_series(g: &FiniteGroup) -> CompositionSeries {
    let mut top: Vec<usize> = g.elements().collect();
    let mut chain = vec![top.clone()];
    while top.len() > 1 {
        top = least_maximal_normal(g, &top);
        chain.push(top.clone());
    }
    chain.reverse();
    let factors =
        chain.windows(2).map(|w| g.quotient_of_subgroup(&w[1], &w[0]).expect("series step is normal").group).collect();
    CompositionSeries { subgroups: chain, factors }
}

/// Every normal subgroup, each as a sorted element set, ordered by size then
/// lexicographically.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let all: Vec<usize> = g.elements().collect();
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let trivial = vec![g.identity()];
    found.insert((1, trivial.clone()));
    let mut frontier = vec![trivial];
    while let Some(n) = frontier.pop() {
        for x in g.elements() {
            if n.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = n.clone();
            seed.push(x);
            let bigger = g.normal_closure_in(&all, &seed);
            if found.insert((bigger.len(), bigger.clone())) {
                frontier.push(bigger);
            }
        }
    }
    found.into_iter().map(|(_, s)| s).collect()
}

/// True when the group has no proper nontrivial normal subgroup.
pub fn is_simple(g: &FiniteGroup) -> bool {
    g.order() > 1 && normal_subgroups(g).len() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, DEFAULT_MAX_ORDER};

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn cyclic_four() {
        let s = composition_series(&g("cyclic:4"));
        assert_eq!(s.orders(), vec![1, 2, 4]);
        assert_eq!(s.length(), 2);
        assert!(s.factors.iter().all(|f| f.order() == 2));
    }

    #[test]
    fn trivial() {
        let s = composition_series(&g("trivial"));
        assert_eq!(s.orders(), vec![1]);
        assert_eq!(s.length(), 0);
    }

    #[test]
    fn s3_goes_through_a3() {
        let s = composition_series(&g("symmetric:3"));
        assert_eq!(s.orders(), vec![1, 3, 6]);
        assert_eq!(s.factors[0].order(), 3);
        assert_eq!(s.factors[1].order(), 2);
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&g("symmetric:3")).len(), 3);
        assert_eq!(normal_subgroups(&g("symmetric:4")).len(), 4);
        assert_eq!(normal_subgroups(&g("quaternion")).len(), 6);
        assert_eq!(normal_subgroups(&g("klein")).len(), 5);
        assert!(is_simple(&g("alternating:5")));
        assert!(!is_simple(&g("alternating:4")));
    }

    /// Oracle: among all normal subgroups, the maximal proper ones, least first.
    fn lex_least_maximal(g: &FiniteGroup) -> Vec<usize> {
        let normals = normal_subgroups(g);
        let proper: Vec<&Vec<usize>> = normals.iter().filter(|n| n.len() < g.order()).collect();
        let maximal: Vec<&Vec<usize>> = proper
            .iter()
            .filter(|n| !proper.iter().any(|m| m.len() > n.len() && n.iter().all(|x| m.binary_search(x).is_ok())))
            .copied()
            .collect();
        maximal.into_iter().min().unwrap().clone()
    }

    #[test]
    fn greedy_choice_matches_exhaustive_lex_least() {
        for spec in [
            "cyclic:12",
            "dihedral:6",
            "symmetric:4",
            "quaternion",
            "product:(cyclic:2,cyclic:6)",
            "product:(cyclic:3,symmetric:3)",
            "product:(klein,cyclic:2)",
            "alternating:4",
        ] {
            let grp = g(spec);
            let all: Vec<usize> = grp.elements().collect();
            assert_eq!(least_maximal_normal(&grp, &all), lex_least_maximal(&grp), "{spec}");
        }
    }

    #[test]
    fn series_invariants_on_corpus() {
        for spec in ["cyclic:24", "symmetric:4", "dihedral:12", "product:(quaternion,cyclic:3)", "alternating:5"] {
            let grp = g(spec);
            let s = composition_series(&grp);
            assert_eq!(s.subgroups[0], vec![grp.identity()]);
            assert_eq!(s.subgroups.last().unwrap().len(), grp.order());
            assert_eq!(s.factors.iter().map(|f| f.order()).product::<usize>(), grp.order());
            assert!(s.factors.iter().all(is_simple), "{spec}");
            assert!(s.length() <= (grp.order() as f64).log2().floor() as usize);
            for w in s.subgroups.windows(2) {
                let (upper, _) = grp.restrict(&w[1]).unwrap();
                let inner: Vec<usize> = w[0].iter().map(|x| w[1].binary_search(x).unwrap()).collect();
                assert!(upper.is_normal(&inner));
            }
        }
    }
}
