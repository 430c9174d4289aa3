//! Membership in the quasivariety `SP(G)` and in the variety of `♭(G)`, with
//! certificates.

mod growth;
mod witness;

pub use growth::{growth_experiment, write_growth_csv, GrowthRecord};
pub use witness::{
    witness_equation_flat, witness_quasi_equation, word_to_term, EquationWitness, FlatCheck, GroupCheck, QuasiWitness,
};

use crate::flat::{recognize_flat, FlatError, FlatRecognition};
use crate::group::{find_embedding, normal_subgroups, sylow_classification, FiniteGroup, GroupError, Homomorphism};
use crate::model::{candidate_equations, satisfies_equation, Equation, FiniteAlgebra, ModelError};
use crate::presentation::PresentationError;
use crate::Budgets;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MembershipError {
    #[error("{0} already lies in the quasivariety, so no witness exists")]
    PreconditionViolated(String),
    #[error("certificate failed its own check: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Flat(#[from] FlatError),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug)]
pub enum Verdict {
    InQuasivariety,
    /// A non-identity element sent to the identity by every homomorphism.
    NotInQuasivariety {
        witness: usize,
    },
    InVariety,
    /// A subdirectly irreducible quotient that is not `♭(H)` for any `H ∈ SP(G)`.
    NotInVariety {
        witness: FiniteAlgebra,
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Homomorphism(Homomorphism),
    QuasiEquation(String),
    Equation(String),
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Verdict::InQuasivariety | Verdict::InVariety)
    }

    pub fn witness_element(&self) -> Option<usize> {
        match self.verdict {
            Verdict::NotInQuasivariety { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::InQuasivariety => json!({ "kind": "InQuasivariety" }),
            Verdict::NotInQuasivariety { witness } => {
                json!({ "kind": "NotInQuasivariety", "witness": witness })
            }
            Verdict::InVariety => json!({ "kind": "InVariety" }),
            Verdict::NotInVariety { witness, reason } => {
                json!({ "kind": "NotInVariety", "witness": witness.to_json(), "reason": reason })
            }
        };
        let certificates: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| match c {
                Certificate::Homomorphism(h) => json!({ "homomorphism": h.map }),
                Certificate::QuasiEquation(q) => json!({ "quasi_equation": q }),
                Certificate::Equation(e) => json!({ "equation": e }),
            })
            .collect();
        json!({ "verdict": verdict, "certificates": certificates })
    }
}

/// `H ∈ SP(G)` exactly when the kernels of all homomorphisms `H → G`
/// intersect trivially. The kernels are the normal subgroups `N` with `H/N`
/// embeddable in `G`; they are tried smallest first, skipping any `N` that
/// already contains the running intersection. A member comes with a separating
/// family, one homomorphism per kernel used; a non-member with the least
/// non-identity element of the intersection and homomorphisms whose kernels
/// cut it out.
pub fn in_quasivariety(h: &FiniteGroup, g: &FiniteGroup, budget: u64) -> Result<MembershipVerdict, MembershipError> {
    let mut common: Vec<usize> = h.elements().collect();
    let mut family = Vec::new();
    for n in normal_subgroups(h) {
        if common.len() == 1 {
            break;
        }
        if common.iter().all(|x| n.binary_search(x).is_ok()) {
            continue;
        }
        let (quotient, projection) = h.quotient_by(&n)?;
        if let Some(embedding) = find_embedding(&quotient, g, budget)? {
            common.retain(|x| n.binary_search(x).is_ok());
            family.push(Certificate::Homomorphism(Homomorphism::new(
                projection.map.iter().map(|&q| embedding.map[q]).collect(),
            )));
        }
    }
    let verdict = match common.iter().find(|&&x| x != h.identity()) {
        Some(&witness) => Verdict::NotInQuasivariety { witness },
        None => Verdict::InQuasivariety,
    };
    Ok(MembershipVerdict { verdict, certificates: family })
}

/// Every map `H → G` that respects the whole multiplication table, found by
/// assigning images element by element and checking every product among the
/// elements assigned so far.
fn all_homomorphisms_naive(h: &FiniteGroup, g: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>, GroupError> {
    fn extend(
        h: &FiniteGroup,
        g: &FiniteGroup,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<(), GroupError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(GroupError::SearchBudgetExceeded(budget));
        }
        let x = map.len();
        if x == h.order() {
            out.push(map.clone());
            return Ok(());
        }
        for y in g.elements() {
            map.push(y);
            let ok = (0..=x).all(|a| {
                (0..=x).all(|b| {
                    let ab = h.mul(a, b);
                    ab > x || map[ab] == g.mul(map[a], map[b])
                })
            });
            if ok {
                extend(h, g, map, out, nodes, budget)?;
            }
            map.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    extend(h, g, &mut Vec::new(), &mut out, &mut 0, budget)?;
    Ok(out)
}

/// Independent check of [`in_quasivariety`]: builds a separating family
/// greedily from a naive homomorphism enumeration and verifies that the
/// product map `H → G^k` is an injective homomorphism.
pub fn embedding_oracle(h: &FiniteGroup, g: &FiniteGroup, budget: u64) -> Result<bool, MembershipError> {
    let homs = all_homomorphisms_naive(h, g, budget)?;
    let mut family: Vec<&Vec<usize>> = Vec::new();
    for x in h.elements().filter(|&x| x != h.identity()) {
        if family.iter().any(|phi| phi[x] != g.identity()) {
            continue;
        }
        match homs.iter().find(|phi| phi[x] != g.identity()) {
            Some(phi) => family.push(phi),
            None => return Ok(false),
        }
    }
    let tuple = |x: usize| -> Vec<usize> { family.iter().map(|phi| phi[x]).collect() };
    let images: Vec<Vec<usize>> = h.elements().map(tuple).collect();
    let injective = (0..images.len()).all(|i| (i + 1..images.len()).all(|j| images[i] != images[j]));
    let multiplicative = h.elements().all(|a| {
        h.elements().all(|b| {
            let ab = &images[h.mul(a, b)];
            (0..family.len()).all(|k| ab[k] == g.mul(images[a][k], images[b][k]))
        })
    });
    Ok(injective && multiplicative)
}

/// `B ∈ V(♭(G))` exactly when every subdirectly irreducible quotient of `B`
/// is `♭(H)` for some `H ∈ SP(G)`.
pub fn in_variety_of_flat(
    b: &FiniteAlgebra,
    g: &FiniteGroup,
    budgets: &Budgets,
) -> Result<MembershipVerdict, MembershipError> {
    for q in crate::model::si_quotients(b, budgets.algebra_size)? {
        match recognize_flat(&q) {
            FlatRecognition::NotFlat(reason) => {
                return Ok(MembershipVerdict {
                    verdict: Verdict::NotInVariety { witness: q, reason: format!("not a flat extension: {reason}") },
                    certificates: vec![],
                });
            }
            FlatRecognition::FlatOf { group, .. } => {
                let inner = in_quasivariety(&group, g, budgets.hom_nodes)?;
                if let Verdict::NotInQuasivariety { witness } = inner.verdict {
                    let reason = format!(
                        "flat extension of a group of order {} outside SP(G); element {witness} dies under every homomorphism",
                        group.order()
                    );
                    let mut certificates = inner.certificates;
                    if let Ok(w) = witness_quasi_equation(g, &group, budgets) {
                        certificates.push(Certificate::QuasiEquation(w.quasi_equation.to_string()));
                    }
                    return Ok(MembershipVerdict {
                        verdict: Verdict::NotInVariety { witness: q, reason },
                        certificates,
                    });
                }
            }
        }
    }
    Ok(MembershipVerdict { verdict: Verdict::InVariety, certificates: vec![] })
}

/// First equation, in order of length and then text, that holds on `a` and
/// fails on `b`; `None` when there is none up to `max_len`.
pub fn shortest_failing_equation(
    b: &FiniteAlgebra,
    a: &FiniteAlgebra,
    max_len: usize,
    budgets: &Budgets,
) -> Result<Option<Equation>, MembershipError> {
    if max_len > budgets.equation_length {
        return Err(ModelError::BudgetExceeded { needed: max_len as u128, cap: budgets.equation_length as u64 }.into());
    }
    for e in candidate_equations(&a.signature(), max_len) {
        if satisfies_equation(a, &e, budgets.assignments)?.holds()
            && !satisfies_equation(b, &e, budgets.assignments)?.holds()
        {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

pub const BOUNDED_PREDICTION: &str = "finitely based — bounded complexity predicted";
pub const UNBOUNDED_PREDICTION: &str = "unbounded, O(log³) witnesses";

/// Growth class of the quasi-equational complexity of `G` and the equational
/// complexity of `♭(G)`: bounded exactly when every Sylow subgroup is abelian.
pub fn predicted_complexity(g: &FiniteGroup) -> &'static str {
    if sylow_classification(g).has_nonabelian_sylow {
        UNBOUNDED_PREDICTION
    } else {
        BOUNDED_PREDICTION
    }
}
