use super::{GroupWord, Literal, Presentation, PresentationError, Relation};
use std::fmt;
use std::str::FromStr;

/// Operation symbols available for writing relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationSignature {
    /// `{·, ⁻¹, 1}`
    Group,
    /// `{·, 1}`
    Monoid,
    /// `{·, ⁻¹}`
    InverseSemigroup,
    /// `{·}`
    Semigroup,
}

impl PresentationSignature {
    pub fn has_inverse(self) -> bool {
        matches!(self, Self::Group | Self::InverseSemigroup)
    }

    pub fn has_identity(self) -> bool {
        matches!(self, Self::Group | Self::Monoid)
    }
}

impl fmt::Display for PresentationSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Group => "*,inv,1",
            Self::Monoid => "*,1",
            Self::InverseSemigroup => "*,inv",
            Self::Semigroup => "*",
        })
    }
}

impl FromStr for PresentationSignature {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "group" | "*,inv,1" => Ok(Self::Group),
            "monoid" | "*,1" => Ok(Self::Monoid),
            "inverse-semigroup" | "*,inv" => Ok(Self::InverseSemigroup),
            "semigroup" | "*" => Ok(Self::Semigroup),
            other => Err(PresentationError::UnsupportedTarget(other.to_string())),
        }
    }
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Rewrites a `{·,⁻¹,1}` presentation into a smaller signature.
///
/// Dropping `⁻¹` adds a formal generator `x^-1` per generator, replaces inverse
/// letters by it, and adds the relator `x·x^-1`. Dropping `1` adds a generator
/// `e`, turns each relator `u` into the relation `u = e`, and adds `g·e = g`
/// and `e·g = g` for every generator `g`, `e` included.
pub fn translate_signature(
    pres: &Presentation,
    target: PresentationSignature,
) -> Result<Presentation, PresentationError> {
    if pres.signature != PresentationSignature::Group || pres.relations.iter().any(|r| !r.rhs.is_empty()) {
        return Err(PresentationError::UnsupportedTarget(format!("{target} from {}", pres.signature)));
    }
    let mut generators = pres.generators.clone();
    let mut relations = pres.relations.clone();

    if !target.has_inverse() {
        let k = generators.len();
        for i in 0..k {
            let name = fresh_name(&generators, &format!("{}^-1", pres.generators[i]));
            generators.push(name);
        }
        let positive = |w: &GroupWord| {
            GroupWord(w.letters().iter().map(|l| if l.inverse { Literal::pos(l.generator + k) } else { *l }).collect())
        };
        relations = relations.iter().map(|r| Relation::relator(positive(&r.lhs))).collect();
        for i in 0..k {
            relations.push(Relation::relator(GroupWord(vec![Literal::pos(i), Literal::pos(i + k)])));
        }
    }

    if !target.has_identity() {
        let e = generators.len();
        generators.push(fresh_name(&generators, "e"));
        let e_word = GroupWord(vec![Literal::pos(e)]);
        relations = relations
            .into_iter()
            .filter(|r| !r.lhs.is_empty())
            .map(|r| Relation { lhs: r.lhs, rhs: e_word.clone() })
            .collect();
        for g in 0..=e {
            let gw = GroupWord(vec![Literal::pos(g)]);
            relations.push(Relation { lhs: gw.concat(&e_word), rhs: gw.clone() });
            if g != e {
                relations.push(Relation { lhs: e_word.concat(&gw), rhs: gw });
            }
        }
    }

    Ok(Presentation { generators, relations, signature: target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::todd_coxeter;

    fn parse(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    #[test]
    fn monoid_translation() {
        let p = translate_signature(&parse("gens: a\na a"), PresentationSignature::Monoid).unwrap();
        assert_eq!(p.to_string(), "gens: a a^-1\na a\na a^-1\n");
        assert!(p.is_well_formed());
    }

    #[test]
    fn empty_to_semigroup() {
        let p = translate_signature(&Presentation::trivial(), PresentationSignature::Semigroup).unwrap();
        assert_eq!(p.to_string(), "gens: e\ne e = e\n");
    }

    #[test]
    fn mixed_relator_becomes_positive() {
        let p = translate_signature(&parse("gens: a b\na b' a"), PresentationSignature::Monoid).unwrap();
        assert_eq!(p.relations[0].lhs.display(&p.generators), "a b^-1 a");
        assert!(p.relations.iter().all(|r| !r.lhs.has_inverse_letters()));
    }

    #[test]
    fn orders_are_preserved() {
        let s3 = parse("gens: a b\na a a\na a b a' b'\nb b");
        let before = todd_coxeter(&s3, 200).unwrap();
        for target in
            [PresentationSignature::Monoid, PresentationSignature::InverseSemigroup, PresentationSignature::Semigroup]
        {
            let t = translate_signature(&s3, target).unwrap();
            assert!(t.is_well_formed());
            assert_eq!(todd_coxeter(&t, 400).unwrap(), before, "{target}");
            // only a constant-factor blowup
            assert!(t.total_length() <= 4 * s3.total_length() + 4 * t.generators.len());
        }
    }

    #[test]
    fn rejects_non_group_source() {
        let t = translate_signature(&parse("gens: a\na a"), PresentationSignature::Semigroup).unwrap();
        assert!(translate_signature(&t, PresentationSignature::Monoid).is_err());
        assert!("lattice".parse::<PresentationSignature>().is_err());
    }
}
