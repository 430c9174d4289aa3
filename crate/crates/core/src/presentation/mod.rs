//! Group words and presentations.
//!
//! A presentation is an ordered generator list plus relations `lhs = rhs`;
//! ordinary relators are relations with an empty right-hand side. Text form:
//!
//! ```text
//! gens: a b
//! a a
//! a b a' b'
//! a' b b
//! ```
//!
//! A trailing `'` marks an inverse letter; a line containing `=` is a relation
//! between two words.

mod builder;
mod coset;
mod lift;
mod signature;

pub use builder::{
    base_presentation, build_short_presentation, CatalogEntry, PresentationMetrics, ShortPresentation, SimpleCatalog,
    StageMetrics,
};
pub use coset::todd_coxeter;
pub use lift::{lift_presentation, minimal_words, Lift, WordAlphabet};
pub use signature::{translate_signature, PresentationSignature};

use crate::group::{FiniteGroup, GroupError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator {0} has no image")]
    UnboundGenerator(usize),
    #[error("group is not simple")]
    NotSimple,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element {element} required in N but {reason}")]
    GeneratorImageNotInN { element: usize, reason: &'static str },
    #[error("coset enumeration exceeded {max_cosets} cosets")]
    Inconclusive { max_cosets: usize },
    #[error("cannot translate to signature {0}")]
    UnsupportedTarget(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub generator: usize,
    pub inverse: bool,
}

impl Literal {
    pub fn pos(generator: usize) -> Self {
        Literal { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Literal { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Literal { generator: self.generator, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(pub Vec<Literal>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Literal] {
        &self.0
    }

    /// `w^{-1}`: reversed, every letter inverted.
    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        GroupWord(letters)
    }

    pub fn shifted(&self, offset: usize) -> Self {
        GroupWord(self.0.iter().map(|l| Literal { generator: l.generator + offset, inverse: l.inverse }).collect())
    }

    pub fn power(generator: usize, k: usize) -> Self {
        GroupWord(vec![Literal::pos(generator); k])
    }

    pub fn has_inverse_letters(&self) -> bool {
        self.0.iter().any(|l| l.inverse)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|l| if l.inverse { format!("{}'", names[l.generator]) } else { names[l.generator].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Product of the signed generator images, left to right.
pub fn eval_word(g: &FiniteGroup, images: &[usize], w: &GroupWord) -> Result<usize, PresentationError> {
    w.0.iter().try_fold(g.identity(), |acc, l| {
        let x = *images.get(l.generator).ok_or(PresentationError::UnboundGenerator(l.generator))?;
        Ok(g.mul(acc, if l.inverse { g.inv(x) } else { x }))
    })
}

/// `lhs = rhs`; a relator is the case `rhs = 1` (empty word).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

impl Relation {
    pub fn relator(word: GroupWord) -> Self {
        Relation { lhs: word, rhs: GroupWord::empty() }
    }

    pub fn len(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The relator `lhs · rhs^{-1}`.
    pub fn as_relator(&self) -> GroupWord {
        self.lhs.concat(&self.rhs.inverse())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub signature: PresentationSignature,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Self {
        Presentation {
            generators,
            relations: relators.into_iter().map(Relation::relator).collect(),
            signature: PresentationSignature::Group,
        }
    }

    pub fn trivial() -> Self {
        Presentation::new(Vec::new(), Vec::new())
    }

    /// Sum of relation lengths, counted in letters.
    pub fn total_length(&self) -> usize {
        self.relations.iter().map(Relation::len).sum()
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(Relation::len).max().unwrap_or(0)
    }

    pub fn relators(&self) -> Vec<GroupWord> {
        self.relations.iter().map(Relation::as_relator).collect()
    }

    pub fn is_well_formed(&self) -> bool {
        let mut names = self.generators.clone();
        names.sort();
        names.dedup();
        names.len() == self.generators.len()
            && self.relations.iter().all(|r| {
                r.lhs
                    .0
                    .iter()
                    .chain(&r.rhs.0)
                    .all(|l| l.generator < self.generators.len() && (self.signature.has_inverse() || !l.inverse))
            })
    }

    pub fn relations_hold(&self, g: &FiniteGroup, images: &[usize]) -> Result<bool, PresentationError> {
        for r in &self.relations {
            if eval_word(g, images, &r.lhs)? != eval_word(g, images, &r.rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) =
            lines.next().ok_or(PresentationError::Parse { line: 1, message: "missing gens line".into() })?;
        let names = header
            .strip_prefix("gens:")
            .ok_or(PresentationError::Parse { line: line_no, message: "expected `gens:`".into() })?;
        let generators: Vec<String> = names.split_whitespace().map(str::to_string).collect();
        if let Some(bad) = generators.iter().find(|g| g.ends_with('\'')) {
            return Err(PresentationError::Parse { line: line_no, message: format!("bad generator name {bad:?}") });
        }
        let word = |line: usize, s: &str| -> Result<GroupWord, PresentationError> {
            s.split_whitespace()
                .map(|tok| {
                    let (name, inverse) = match tok.strip_suffix('\'') {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    generators
                        .iter()
                        .position(|g| g == name)
                        .map(|generator| Literal { generator, inverse })
                        .ok_or_else(|| PresentationError::Parse {
                            line,
                            message: format!("unknown generator {name:?}"),
                        })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(GroupWord)
        };
        let mut relations = Vec::new();
        for (line, text) in lines {
            let relation = match text.split_once('=') {
                Some((l, r)) => Relation { lhs: word(line, l)?, rhs: word(line, r)? },
                None => Relation::relator(word(line, text)?),
            };
            relations.push(relation);
        }
        let has_inverse =
            relations.iter().any(|r: &Relation| r.lhs.has_inverse_letters() || r.rhs.has_inverse_letters());
        let has_equations = relations.iter().any(|r| !r.rhs.is_empty());
        let signature = match (has_inverse, has_equations) {
            (_, false) => PresentationSignature::Group,
            (true, true) => PresentationSignature::InverseSemigroup,
            (false, true) => PresentationSignature::Semigroup,
        };
        Ok(Presentation { generators, relations, signature })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            writeln!(f, "gens:")?;
        } else {
            writeln!(f, "gens: {}", self.generators.join(" "))?;
        }
        for r in &self.relations {
            if r.rhs.is_empty() {
                writeln!(f, "{}", r.lhs.display(&self.generators))?;
            } else {
                writeln!(f, "{} = {}", r.lhs.display(&self.generators), r.rhs.display(&self.generators))?;
            }
        }
        Ok(())
    }
}

/// Outcome of [`verify_presents`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub relations_hold: bool,
    pub generates: bool,
    pub presented_order: usize,
    pub target_order: usize,
    pub diagnostics: Vec<String>,
}

impl Verification {
    pub fn presents(&self) -> bool {
        self.relations_hold && self.generates && self.presented_order == self.target_order
    }
}

/// Checks that `pres` together with `images` presents `target`: relations hold,
/// the images generate, and coset enumeration finds exactly `|target|` cosets.
pub fn verify_presents(
    pres: &Presentation,
    images: &[usize],
    target: &FiniteGroup,
    max_cosets: usize,
) -> Result<Verification, PresentationError> {
    let mut diagnostics = Vec::new();
    let relations_hold = pres.relations_hold(target, images)?;
    if !relations_hold {
        for (i, r) in pres.relations.iter().enumerate() {
            if eval_word(target, images, &r.lhs)? != eval_word(target, images, &r.rhs)? {
                diagnostics.push(format!("relation {i} ({}) fails", r.as_relator().display(&pres.generators)));
                break;
            }
        }
    }
    let span = target.subgroup_generated(images).len();
    let generates = span == target.order();
    if !generates {
        diagnostics.push(format!("images generate a subgroup of order {span}, not {}", target.order()));
    }
    let presented_order = todd_coxeter(pres, max_cosets)?;
    if presented_order != target.order() {
        diagnostics.push(format!(
            "presentation defines a group of order {presented_order}, target has order {}",
            target.order()
        ));
    }
    Ok(Verification { relations_hold, generates, presented_order, target_order: target.order(), diagnostics })
}

/// Generator names `a, b, …, z, a1, b1, …`.
pub(crate) fn generator_name(index: usize) -> String {
    let letter = (b'a' + (index % 26) as u8) as char;
    if index < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", index / 26)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, DEFAULT_MAX_ORDER};

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn word_evaluation() {
        let z4 = g("cyclic:4");
        assert_eq!(eval_word(&z4, &[1], &GroupWord::empty()).unwrap(), 0);
        assert_eq!(eval_word(&z4, &[1], &GroupWord::power(0, 2)).unwrap(), 2);
        assert_eq!(eval_word(&z4, &[1], &GroupWord(vec![Literal::neg(0)])).unwrap(), 3);
        assert_eq!(
            eval_word(&z4, &[1], &GroupWord(vec![Literal::pos(1)])).unwrap_err(),
            PresentationError::UnboundGenerator(1)
        );
    }

    #[test]
    fn text_round_trip() {
        let text = "gens: a b\na a\na b a' b'\na' b b\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.generators, vec!["a", "b"]);
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.total_length(), 9);
        assert_eq!(p.to_string(), text);
        assert!(p.is_well_formed());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Presentation::parse("a a"), Err(PresentationError::Parse { line: 1, .. })));
        assert!(matches!(Presentation::parse("gens: a\na c"), Err(PresentationError::Parse { line: 2, .. })));
    }

    #[test]
    fn verify_z4() {
        let p = Presentation::parse("gens: a b\na a\na b a' b'\na' b b").unwrap();
        let z4 = g("cyclic:4");
        let v = verify_presents(&p, &[2, 1], &z4, 80).unwrap();
        assert!(v.presents(), "{v:?}");

        let z2 = g("cyclic:2");
        let v = verify_presents(&p, &[0, 1], &z2, 80).unwrap();
        assert!(v.relations_hold && v.generates);
        assert_eq!(v.presented_order, 4);
        assert!(!v.presents());

        let aa = Presentation::parse("gens: a\na a").unwrap();
        let v = verify_presents(&aa, &[1], &z4, 80).unwrap();
        assert!(!v.relations_hold);
        assert!(!v.presents());
    }

    #[test]
    fn names() {
        assert_eq!(generator_name(0), "a");
        assert_eq!(generator_name(25), "z");
        assert_eq!(generator_name(26), "a1");
    }
}
