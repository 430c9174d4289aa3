use super::{in_quasivariety, MembershipError, Verdict};
use crate::flat::{flat_extension, translate_qe_to_eq, FlatSignature};
use crate::group::FiniteGroup;
use crate::model::{
    evaluate, satisfies_equation, satisfies_quasiequation, Assignment, Equation, FiniteAlgebra, ModelError,
    QuasiEquation, Satisfaction, Signature, Term,
};
use crate::presentation::{build_short_presentation, verify_presents, GroupWord, ShortPresentation, SimpleCatalog};
use crate::Budgets;

/// A group word as a left-associated product; the empty word is `1`.
pub fn word_to_term(w: &GroupWord, names: &[String]) -> Term {
    let letters = w.letters().iter().map(|l| {
        let v = Term::var(names[l.generator].clone());
        if l.inverse {
            Term::inv(v)
        } else {
            v
        }
    });
    Term::product(letters).unwrap_or_else(Term::one)
}

/// A quasi-equation true in `G` and false in `H`, with the data it came from.
#[derive(Clone, Debug)]
pub struct QuasiWitness {
    /// Least element of `H` killed by every homomorphism into `G`.
    pub element: usize,
    /// Normal-form word for `element` over the short presentation.
    pub word: GroupWord,
    pub short: ShortPresentation,
    pub quasi_equation: QuasiEquation,
    /// Generators sent to their images in `H`: premises hold, conclusion fails.
    pub falsifying: Assignment,
    pub g_check: GroupCheck,
}

/// How `G ⊨ φ` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupCheck {
    /// Backtracking over all assignments of the generators into `G`.
    Assignments,
    /// The assignment search ran over budget. Coset enumeration confirmed
    /// that the premises present `H`, so satisfying assignments are exactly
    /// the homomorphisms `H → G`, and every kernel contains the element.
    Kernels,
}

/// `(⋀_{u ∈ R} u ≈ 1) → w ≈ 1` for the short presentation `⟨C | R⟩` of `H`
/// and the word `w` of the least element of `H` killed by all homomorphisms
/// into `G`. Both `G ⊨ φ` and `H ⊭ φ` are checked before returning; see
/// [`GroupCheck`] for the two ways the first is established.
pub fn witness_quasi_equation(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budgets: &Budgets,
) -> Result<QuasiWitness, MembershipError> {
    let verdict = in_quasivariety(h, g, budgets.hom_nodes)?;
    let Verdict::NotInQuasivariety { witness: element } = verdict.verdict else {
        return Err(MembershipError::PreconditionViolated(h.label().to_string()));
    };
    let short = build_short_presentation(h, &mut SimpleCatalog::new(), budgets.hom_nodes)?;
    let names = &short.presentation.generators;
    let premises = short
        .presentation
        .relations
        .iter()
        .map(|r| Equation::new(word_to_term(&r.lhs, names), word_to_term(&r.rhs, names)))
        .collect();
    let word = short.express_element(element).clone();
    let phi = QuasiEquation::new(premises, Equation::new(word_to_term(&word, names), Term::one()));

    let sig = Signature::group();
    let g_alg = FiniteAlgebra::from_group(g, &sig)?;
    let g_check = match satisfies_quasiequation(&g_alg, &phi, budgets.hom_nodes) {
        Ok(Satisfaction::Holds) => GroupCheck::Assignments,
        Ok(Satisfaction::Fails(a)) => {
            return Err(MembershipError::VerificationFailed(format!("the quasi-equation fails on G at {a}")))
        }
        Err(ModelError::BudgetExceeded { .. }) => {
            let v = verify_presents(&short.presentation, &short.images, h, budgets.cosets_for(h.order()))?;
            if !v.presents() {
                return Err(MembershipError::VerificationFailed(format!(
                    "the premises do not present H: {:?}",
                    v.diagnostics
                )));
            }
            GroupCheck::Kernels
        }
        Err(e) => return Err(e.into()),
    };
    let h_alg = FiniteAlgebra::from_group(h, &sig)?;
    let falsifying = Assignment(names.iter().cloned().zip(short.images.iter().copied()).collect());
    check_falsified(&h_alg, &phi, &falsifying)?;
    Ok(QuasiWitness { element, word, short, quasi_equation: phi, falsifying, g_check })
}

fn check_falsified(alg: &FiniteAlgebra, phi: &QuasiEquation, at: &Assignment) -> Result<(), MembershipError> {
    let holds =
        |e: &Equation| -> Result<bool, ModelError> { Ok(evaluate(alg, &e.lhs, at)? == evaluate(alg, &e.rhs, at)?) };
    for p in &phi.premises {
        if !holds(p)? {
            return Err(MembershipError::VerificationFailed(format!("premise {p} is false in H at {at}")));
        }
    }
    if holds(&phi.conclusion)? {
        return Err(MembershipError::VerificationFailed(format!("conclusion holds in H at {at}")));
    }
    Ok(())
}

/// How `♭(G) ⊨ ρ♭` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatCheck {
    Exhaustive,
    /// `|♭(G)|^vars` exceeded the assignment budget; not checked.
    OverBudget {
        needed: u128,
    },
}

#[derive(Clone, Debug)]
pub struct EquationWitness {
    pub quasi: QuasiWitness,
    pub exponent: usize,
    pub equation: Equation,
    pub flat_g_check: FlatCheck,
    /// An assignment into `♭(H)` where the two sides differ.
    pub falsifying: Assignment,
}

/// Translates the quasi-equation witness with `d = exponent(G)` into an
/// equation true in `♭(G)` and false in `♭(H)`. The first is checked
/// exhaustively when the budget allows; the second exhaustively when the
/// budget allows and at the generator assignment otherwise.
pub fn witness_equation_flat(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budgets: &Budgets,
) -> Result<EquationWitness, MembershipError> {
    let quasi = witness_quasi_equation(g, h, budgets)?;
    let exponent = g.exponent();
    let equation = translate_qe_to_eq(&quasi.quasi_equation, exponent, true)?;

    let flat_g = flat_extension(g, FlatSignature::WithIdentity).algebra;
    let flat_g_check = match satisfies_equation(&flat_g, &equation, budgets.assignments) {
        Ok(Satisfaction::Holds) => FlatCheck::Exhaustive,
        Ok(Satisfaction::Fails(a)) => {
            return Err(MembershipError::VerificationFailed(format!(
                "the equation fails on the flat extension of G at {a}"
            )))
        }
        Err(ModelError::BudgetExceeded { needed, .. }) => FlatCheck::OverBudget { needed },
        Err(e) => return Err(e.into()),
    };

    let flat_h = flat_extension(h, FlatSignature::WithIdentity).algebra;
    let falsifying = match satisfies_equation(&flat_h, &equation, budgets.assignments) {
        Ok(Satisfaction::Fails(a)) => a,
        Ok(Satisfaction::Holds) => {
            return Err(MembershipError::VerificationFailed("the equation holds on the flat extension of H".into()))
        }
        Err(ModelError::BudgetExceeded { .. }) => {
            let at = generator_assignment(&equation, &quasi.falsifying);
            if evaluate(&flat_h, &equation.lhs, &at)? == evaluate(&flat_h, &equation.rhs, &at)? {
                return Err(MembershipError::VerificationFailed(format!(
                    "the equation holds on the flat extension of H at {at}"
                )));
            }
            at
        }
        Err(e) => return Err(e.into()),
    };
    Ok(EquationWitness { quasi, exponent, equation, flat_g_check, falsifying })
}

/// The quasi-equation's falsifying assignment restricted and ordered to the
/// variables of `e`.
fn generator_assignment(e: &Equation, from: &Assignment) -> Assignment {
    Assignment(e.variables().into_iter().map(|v| (v.clone(), from.get(&v).unwrap_or(0))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, DEFAULT_MAX_ORDER};
    use crate::model::prefix_length;

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn cyclic_four_over_two() {
        let b = Budgets::default();
        let w = witness_quasi_equation(&g("cyclic:2"), &g("cyclic:4"), &b).unwrap();
        assert_eq!(w.element, 2);
        assert_eq!(w.quasi_equation.to_string(), "* a a = 1 , * * * a b inv a inv b = 1 , * * inv a b b = 1 -> a = 1");
        assert_eq!(w.falsifying.to_string(), "a=2, b=1");
        assert_eq!(prefix_length(&w.quasi_equation), (3 + 1) + (9 + 1) + (6 + 1) + 2);
        assert_eq!(w.g_check, GroupCheck::Assignments);
    }

    #[test]
    fn kernel_fallback() {
        let tight = Budgets { hom_nodes: 5, ..Budgets::default() };
        let w = witness_quasi_equation(&g("cyclic:2"), &g("product:(cyclic:2,dihedral:4)"), &tight).unwrap();
        assert_eq!(w.g_check, GroupCheck::Kernels);
        let full =
            witness_quasi_equation(&g("cyclic:2"), &g("product:(cyclic:2,dihedral:4)"), &Budgets::default()).unwrap();
        assert_eq!(full.g_check, GroupCheck::Assignments);
        assert_eq!(w.quasi_equation, full.quasi_equation);
    }

    #[test]
    fn cyclic_two_over_three() {
        let w = witness_quasi_equation(&g("cyclic:3"), &g("cyclic:2"), &Budgets::default()).unwrap();
        assert_eq!(w.quasi_equation.to_string(), "* a a = 1 -> a = 1");
    }

    #[test]
    fn members_have_no_witness() {
        let err = witness_quasi_equation(&g("cyclic:4"), &g("cyclic:2"), &Budgets::default()).unwrap_err();
        assert!(matches!(err, MembershipError::PreconditionViolated(_)));
        assert!(witness_equation_flat(&g("cyclic:4"), &g("cyclic:2"), &Budgets::default()).is_err());
    }

    #[test]
    fn flat_equation_witnesses() {
        let b = Budgets::default();
        let w = witness_equation_flat(&g("cyclic:2"), &g("cyclic:4"), &b).unwrap();
        assert_eq!(w.exponent, 2);
        assert_eq!(w.flat_g_check, FlatCheck::Exhaustive);
        let t = witness_equation_flat(&g("trivial"), &g("cyclic:2"), &b).unwrap();
        assert_eq!(t.exponent, 1);
        assert_eq!(t.flat_g_check, FlatCheck::Exhaustive);
        let fz2 = flat_extension(&g("cyclic:2"), FlatSignature::WithIdentity).algebra;
        assert!(!satisfies_equation(&fz2, &t.equation, 1000).unwrap().holds());
    }

    #[test]
    fn empty_word_becomes_identity() {
        assert_eq!(word_to_term(&GroupWord::empty(), &[]), Term::one());
    }
}
