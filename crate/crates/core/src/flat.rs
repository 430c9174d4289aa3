//! Flat extensions of groups and the translation of quasi-equations into
//! equations over them.
//!
//! `♭(G)` has universe `G ∪ {0}` with `0 = |G|` absorbing for `·` and `⁻¹`,
//! and the flat meet `x ∧ y = x` when `x = y`, `0` otherwise.

use crate::group::FiniteGroup;
use crate::model::{
    satisfies_equation, Assignment, Equation, FiniteAlgebra, ModelError, Operation, QuasiEquation, Signature, Term,
};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlatError {
    #[error("variable {0:?} of the conclusion does not occur in any premise")]
    UncoveredVariable(String),
    #[error("the quasi-equation has no premises")]
    EmptyPremises,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Which operations a flat extension carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum FlatSignature {
    /// `{·, ⁻¹, ∧}`
    Inverse,
    /// `{·, ⁻¹, ∧, 1}`
    #[default]
    WithIdentity,
    /// `{·, ∧}`
    Semiring,
}

impl FlatSignature {
    pub fn signature(self) -> Signature {
        match self {
            FlatSignature::Inverse => Signature::flat(),
            FlatSignature::WithIdentity => Signature::flat_with_identity(),
            FlatSignature::Semiring => Signature::semiring(),
        }
    }
}

impl fmt::Display for FlatSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlatSignature::Inverse => "*,inv,&",
            FlatSignature::WithIdentity => "*,inv,&,1",
            FlatSignature::Semiring => "*,&",
        })
    }
}

impl std::str::FromStr for FlatSignature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "*,inv,&" | "inverse" => Ok(FlatSignature::Inverse),
            "*,inv,&,1" | "identity" => Ok(FlatSignature::WithIdentity),
            "*,&" | "semiring" => Ok(FlatSignature::Semiring),
            other => Err(format!("unknown flat signature {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlatAlgebra {
    pub algebra: FiniteAlgebra,
    pub group: FiniteGroup,
    pub tag: FlatSignature,
}

impl FlatAlgebra {
    pub fn zero(&self) -> usize {
        self.group.order()
    }
}

pub fn flat_extension(g: &FiniteGroup, tag: FlatSignature) -> FlatAlgebra {
    let n = g.order();
    let zero = n;
    let size = n + 1;
    let mul = (0..size * size)
        .map(|i| {
            let (x, y) = (i / size, i % size);
            if x == zero || y == zero {
                zero
            } else {
                g.mul(x, y)
            }
        })
        .collect();
    let meet = (0..size * size).map(|i| if i / size == i % size { i / size } else { zero }).collect();
    let inv = (0..size).map(|x| if x == zero { zero } else { g.inv(x) }).collect();
    let mut ops = vec![Operation { symbol: "*".into(), arity: 2, table: mul }];
    if tag != FlatSignature::Semiring {
        ops.push(Operation { symbol: "inv".into(), arity: 1, table: inv });
    }
    ops.push(Operation { symbol: "&".into(), arity: 2, table: meet });
    if tag == FlatSignature::WithIdentity {
        ops.push(Operation { symbol: "1".into(), arity: 0, table: vec![g.identity()] });
    }
    let algebra = FiniteAlgebra::new(size, ops).expect("flat tables are total and closed");
    FlatAlgebra { algebra, group: g.clone(), tag }
}

/// Outcome of [`recognize_flat`].
#[derive(Clone, Debug)]
pub enum FlatRecognition {
    /// `group` element `i` is algebra element `elements[i]`.
    FlatOf {
        group: FiniteGroup,
        zero: usize,
        elements: Vec<usize>,
    },
    NotFlat(String),
}

impl FlatRecognition {
    pub fn group(&self) -> Option<&FiniteGroup> {
        match self {
            FlatRecognition::FlatOf { group, .. } => Some(group),
            FlatRecognition::NotFlat(_) => None,
        }
    }
}

/// Decides whether `a` is the flat extension of a group and recovers the group.
pub fn recognize_flat(a: &FiniteAlgebra) -> FlatRecognition {
    let not = |m: String| FlatRecognition::NotFlat(m);
    for (symbol, arity) in &a.signature().ops {
        if !matches!((symbol.as_str(), arity), ("*", 2) | ("&", 2) | ("inv", 1) | ("1", 0)) {
            return not(format!("operation {symbol:?} is not in a flat signature"));
        }
    }
    let (Some(mul), Some(meet)) = (a.op("*"), a.op("&")) else {
        return not("a flat algebra needs both * and &".into());
    };
    let n = a.size();
    let Some(zero) = (0..n).find(|&z| (0..n).all(|x| meet.table[z * n + x] == z)) else {
        return not("no bottom element for &".into());
    };
    for x in 0..n {
        for y in 0..n {
            let expected = if x == y { x } else { zero };
            if meet.table[x * n + y] != expected {
                return not(format!("& is not flat: {x} & {y} = {}", meet.table[x * n + y]));
            }
        }
        if mul.table[x * n + zero] != zero || mul.table[zero * n + x] != zero {
            return not(format!("{zero} does not absorb {x} under *"));
        }
    }
    if let Some(inv) = a.op("inv") {
        if inv.table[zero] != zero {
            return not(format!("inv does not fix {zero}"));
        }
    }
    let elements: Vec<usize> = (0..n).filter(|&x| x != zero).collect();
    if elements.is_empty() {
        return not("no nonzero elements".into());
    }
    let index = |x: usize| elements.iter().position(|&e| e == x);
    let mut rows = Vec::with_capacity(elements.len());
    for &x in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for &y in &elements {
            match index(mul.table[x * n + y]) {
                Some(i) => row.push(i),
                None => return not(format!("nonzero part is not closed: {x} * {y} = {zero}")),
            }
        }
        rows.push(row);
    }
    let group = match FiniteGroup::from_table(elements.len(), &rows) {
        Ok(g) => g,
        Err(e) => return not(format!("nonzero part is not a group: {e}")),
    };
    if let Some(inv) = a.op("inv") {
        for (i, &x) in elements.iter().enumerate() {
            if inv.table[x] != elements[group.inv(i)] {
                return not(format!("inv {x} is not the group inverse"));
            }
        }
    }
    if let Some(one) = a.op("1") {
        if one.table[0] != elements[group.identity()] {
            return not("constant 1 is not the group identity".into());
        }
    }
    FlatRecognition::FlatOf { group, zero, elements }
}

/// Makes every conclusion variable occur in a premise by appending `x ≈ x`
/// for each one that does not. With no premises and a ground conclusion the
/// premise `t ≈ t` is added, `t` the conclusion's left side.
pub fn pad_premises(rho: &QuasiEquation) -> QuasiEquation {
    let mut out = rho.clone();
    let mut covered = Vec::new();
    for p in &rho.premises {
        p.lhs.collect_variables(&mut covered);
        p.rhs.collect_variables(&mut covered);
    }
    for v in rho.conclusion.variables() {
        if !covered.contains(&v) {
            out.premises.push(Equation::new(Term::var(&v), Term::var(&v)));
        }
    }
    if out.premises.is_empty() {
        out.premises.push(Equation::new(rho.conclusion.lhs.clone(), rho.conclusion.lhs.clone()));
    }
    out
}

/// `(∏ᵢ(uᵢ∧vᵢ))^d · (u₀∧v₀)^d ≈ (∏ᵢ(uᵢ∧vᵢ))^d`, products and powers
/// associated to the left. With `pad` the premises are first completed by
/// [`pad_premises`]; without it an uncovered variable is an error.
pub fn translate_qe_to_eq(rho: &QuasiEquation, d: usize, pad: bool) -> Result<Equation, FlatError> {
    if d == 0 {
        return Err(FlatError::ZeroExponent);
    }
    let rho = if pad {
        pad_premises(rho)
    } else {
        if rho.premises.is_empty() {
            return Err(FlatError::EmptyPremises);
        }
        let mut covered = Vec::new();
        for p in &rho.premises {
            p.lhs.collect_variables(&mut covered);
            p.rhs.collect_variables(&mut covered);
        }
        if let Some(v) = rho.conclusion.variables().into_iter().find(|v| !covered.contains(v)) {
            return Err(FlatError::UncoveredVariable(v));
        }
        rho.clone()
    };
    let meets = rho.premises.iter().map(|e| Term::meet(e.lhs.clone(), e.rhs.clone()));
    let product = Term::product(meets).expect("padded premises are nonempty");
    let premise_power = Term::power(&product, d);
    let conclusion = Term::meet(rho.conclusion.lhs.clone(), rho.conclusion.rhs.clone());
    Ok(Equation::new(Term::mul(premise_power.clone(), Term::power(&conclusion, d)), premise_power))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub equation: String,
    pub assignment: Assignment,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}) fails at {}", self.axiom, self.equation, self.assignment)
    }
}

const SEMIRING_AXIOMS: [(&str, &str); 6] = [
    ("meet commutative", "& x y = & y x"),
    ("meet associative", "& & x y z = & x & y z"),
    ("meet idempotent", "& x x = x"),
    ("product associative", "* * x y z = * x * y z"),
    ("left distributive", "* x & y z = & * x y * x z"),
    ("right distributive", "* & x y z = & * x z * y z"),
];

const INVERSE_AXIOMS: [(&str, &str); 6] = [
    ("inverse involution", "inv inv x = x"),
    ("inverse reverses products", "inv * x y = * inv y inv x"),
    ("regularity", "* * x inv x x = x"),
    ("idempotents commute", "* * x inv x * y inv y = * * y inv y * x inv x"),
    ("natural order", "& x y = * * x inv & x y & x y"),
    ("central idempotents", "* * x inv x y = * y * x inv x"),
];

fn check_axioms<'a>(
    a: &FiniteAlgebra,
    axioms: impl IntoIterator<Item = &'a (&'static str, &'static str)>,
) -> Result<Option<AxiomFailure>, ModelError> {
    let sig = a.signature();
    for &(axiom, text) in axioms {
        let e = Equation::parse(text, &sig)?;
        if let crate::model::Satisfaction::Fails(assignment) = satisfies_equation(a, &e, u64::MAX)? {
            return Ok(Some(AxiomFailure { axiom, equation: text.to_string(), assignment }));
        }
    }
    Ok(None)
}

/// Naturally semilattice-ordered Clifford semigroup axioms in `{·, ⁻¹, ∧}`;
/// returns the first failing axiom, if any.
pub fn verify_nsoc_axioms(a: &FiniteAlgebra) -> Result<Option<AxiomFailure>, ModelError> {
    check_axioms(a, SEMIRING_AXIOMS.iter().chain(INVERSE_AXIOMS.iter()))
}

/// Additively idempotent semiring axioms in `{·, ∧}`.
pub fn verify_semiring_axioms(a: &FiniteAlgebra) -> Result<Option<AxiomFailure>, ModelError> {
    check_axioms(a, SEMIRING_AXIOMS.iter())
}
