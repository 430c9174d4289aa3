use serde::{Deserialize, Serialize};

/// Search budgets shared by the exhaustive procedures. Every algorithm in the
/// crate is deterministic; these only bound the work.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest group order we build a table for.
    pub max_group_order: usize,
    /// Node cap for homomorphism and assignment backtracking.
    pub hom_nodes: u64,
    /// Cap on `|A|^vars` for exhaustive satisfaction checks.
    pub assignments: u64,
    /// Coset-table cap for Todd–Coxeter; `None` means `20 * |target|`.
    pub max_cosets: Option<usize>,
    /// Largest algebra handled by congruence-lattice procedures.
    pub algebra_size: usize,
    /// Longest equation enumerated by the equation search.
    pub equation_length: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_group_order: crate::group::DEFAULT_MAX_ORDER,
            hom_nodes: 10_000_000,
            assignments: 100_000_000,
            max_cosets: None,
            algebra_size: 64,
            equation_length: 12,
        }
    }
}

impl Budgets {
    pub fn cosets_for(&self, target_order: usize) -> usize {
        self.max_cosets.unwrap_or(20 * target_order.max(1))
    }
}
