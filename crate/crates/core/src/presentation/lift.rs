use super::{eval_word, GroupWord, Literal, Presentation, PresentationError, PresentationSignature, Relation};
use crate::group::{FiniteGroup, Quotient};
use std::collections::VecDeque;

/// Letters allowed in minimal words.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WordAlphabet {
    /// Generators only: words are plain products of generators.
    #[default]
    Positive,
    /// Generators and their inverses, ordered `a < a' < b < b'`.
    WithInverses,
}

/// Shortest word for every element reachable from the identity by right
/// multiplication with `images`; among shortest words the lexicographically
/// least in generator order. Indexed by element of `g`.
pub fn minimal_words(g: &FiniteGroup, images: &[usize], alphabet: WordAlphabet) -> Vec<Option<GroupWord>> {
    let mut letters = Vec::new();
    for i in 0..images.len() {
        letters.push(Literal::pos(i));
        if alphabet == WordAlphabet::WithInverses {
            letters.push(Literal::neg(i));
        }
    }
    let mut words: Vec<Option<GroupWord>> = vec![None; g.order()];
    words[g.identity()] = Some(GroupWord::empty());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &l in &letters {
            let step = if l.inverse { g.inv(images[l.generator]) } else { images[l.generator] };
            let y = g.mul(x, step);
            if words[y].is_none() {
                let mut w = words[x].clone().expect("queued elements have words");
                w.0.push(l);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words
}

/// Output of one lifting step.
#[derive(Clone, Debug)]
pub struct Lift {
    pub presentation: Presentation,
    /// Images in the ambient group: the `a`-images, then the lifted `b`-images.
    pub images: Vec<usize>,
    /// Normal-form word `w_a w_b` for every element of `M` (ambient-indexed).
    pub element_words: Vec<Option<GroupWord>>,
    /// Relation counts from families (1), (2), (3).
    pub family_sizes: [usize; 3],
}

/// Lifts presentations of `N` and `M/N` to one of `M`, where `M` and `N` are
/// subgroups of `ambient` given as element sets.
///
/// `lower` presents `N` with images in `ambient`; `upper` presents the quotient
/// with images in `quotient.group`. Each upper generator is lifted to the least
/// element of its coset. The relators are, in order: the relators of `N`; for
/// every upper generator `b` and lower generator `a`, `w·b·a⁻¹·b⁻¹` with `w` the
/// minimal `a`-word equal to `b·a·b⁻¹`; and for every upper relator `v`, `u⁻¹·v`
/// with `u` the minimal `a`-word equal to `v` in `M`.
pub fn lift_presentation(
    ambient: &FiniteGroup,
    n: &[usize],
    lower: (&Presentation, &[usize]),
    quotient: &Quotient,
    upper: (&Presentation, &[usize]),
    alphabet: WordAlphabet,
) -> Result<Lift, PresentationError> {
    let (lower_pres, lower_images) = lower;
    let (upper_pres, upper_images) = upper;
    let k = lower_pres.generators.len();
    let mut generators = lower_pres.generators.clone();
    for name in &upper_pres.generators {
        if generators.contains(name) {
            return Err(PresentationError::DuplicateGenerator(name.clone()));
        }
        generators.push(name.clone());
    }
    let mut in_n = vec![false; ambient.order()];
    n.iter().for_each(|&x| in_n[x] = true);
    if let Some(&bad) = lower_images.iter().find(|&&x| !in_n[x]) {
        return Err(PresentationError::GeneratorImageNotInN { element: bad, reason: "a lower image lies outside N" });
    }
    let lifted: Vec<usize> = upper_images
        .iter()
        .map(|&q| quotient.representatives.get(q).copied().ok_or(PresentationError::UnboundGenerator(q)))
        .collect::<Result<_, _>>()?;

    let a_words = minimal_words(ambient, lower_images, alphabet);
    let a_word = |x: usize| -> Result<GroupWord, PresentationError> {
        if !in_n[x] {
            return Err(PresentationError::GeneratorImageNotInN { element: x, reason: "it lies outside N" });
        }
        a_words[x]
            .clone()
            .ok_or(PresentationError::GeneratorImageNotInN { element: x, reason: "the lower images do not reach it" })
    };

    let mut relations: Vec<Relation> = lower_pres.relations.clone();
    // family (2)
    for (bi, &b) in lifted.iter().enumerate() {
        for (aj, &a) in lower_images.iter().enumerate() {
            let w = a_word(ambient.conjugate(b, a))?;
            let mut letters = w.0;
            letters.extend([Literal::pos(k + bi), Literal::neg(aj), Literal::neg(k + bi)]);
            relations.push(Relation::relator(GroupWord(letters)));
        }
    }
    // family (3)
    let mut images = lower_images.to_vec();
    images.extend_from_slice(&lifted);
    for rel in &upper_pres.relations {
        let v = rel.as_relator().shifted(k);
        let u = a_word(eval_word(ambient, &images, &v)?)?;
        relations.push(Relation::relator(u.inverse().concat(&v)));
    }
    let family_sizes = [lower_pres.relations.len(), lifted.len() * k, upper_pres.relations.len()];

    // normal forms w_a w_b
    let b_words = minimal_words(&quotient.group, upper_images, alphabet);
    let mut element_words = vec![None; ambient.order()];
    for h in ambient.elements() {
        let Some(q) = quotient.coset_of[h] else {
            continue;
        };
        let b_word = b_words[q]
            .clone()
            .ok_or(PresentationError::GeneratorImageNotInN {
                element: h,
                reason: "the upper images do not generate M/N",
            })?
            .shifted(k);
        let r = eval_word(ambient, &images, &b_word)?;
        let w_a = a_word(ambient.mul(h, ambient.inv(r)))?;
        element_words[h] = Some(w_a.concat(&b_word));
    }

    Ok(Lift {
        presentation: Presentation { generators, relations, signature: PresentationSignature::Group },
        images,
        element_words,
        family_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, DEFAULT_MAX_ORDER};
    use crate::presentation::{todd_coxeter, verify_presents};

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    fn one_gen(name: &str, power: usize) -> Presentation {
        Presentation::new(vec![name.into()], vec![GroupWord::power(0, power)])
    }

    #[test]
    fn z4_over_z2() {
        let z4 = g("cyclic:4");
        let q = z4.quotient_of_subgroup(&[0, 1, 2, 3], &[0, 2]).unwrap();
        let lift = lift_presentation(
            &z4,
            &[0, 2],
            (&one_gen("a", 2), &[2]),
            &q,
            (&one_gen("b", 2), &[1]),
            WordAlphabet::Positive,
        )
        .unwrap();
        assert_eq!(lift.presentation.to_string(), "gens: a b\na a\na b a' b'\na' b b\n");
        assert_eq!(lift.images, vec![2, 1]);
        assert!(verify_presents(&lift.presentation, &lift.images, &z4, 80).unwrap().presents());
    }

    #[test]
    fn s3_over_a3() {
        let s3 = g("symmetric:3");
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        let c = a3[1];
        let all: Vec<usize> = s3.elements().collect();
        let q = s3.quotient_of_subgroup(&all, &a3).unwrap();
        let lift =
            lift_presentation(&s3, &a3, (&one_gen("a", 3), &[c]), &q, (&one_gen("b", 2), &[1]), WordAlphabet::Positive)
                .unwrap();
        assert_eq!(lift.presentation.to_string(), "gens: a b\na a a\na a b a' b'\nb b\n");
        assert_eq!(lift.presentation.total_length(), 10);
        assert_eq!(todd_coxeter(&lift.presentation, 200).unwrap(), 6);
        for h in s3.elements() {
            let w = lift.element_words[h].as_ref().unwrap();
            assert_eq!(eval_word(&s3, &lift.images, w).unwrap(), h);
        }
    }

    #[test]
    fn degenerate_trivial_kernel() {
        let z2 = g("cyclic:2");
        let q = z2.quotient_of_subgroup(&[0, 1], &[0]).unwrap();
        let lift = lift_presentation(
            &z2,
            &[0],
            (&Presentation::trivial(), &[]),
            &q,
            (&one_gen("b", 2), &[1]),
            WordAlphabet::Positive,
        )
        .unwrap();
        assert_eq!(lift.family_sizes, [0, 0, 1]);
        assert_eq!(lift.presentation.to_string(), "gens: b\nb b\n");
    }

    #[test]
    fn broken_lower_map_is_rejected() {
        let z4 = g("cyclic:4");
        let q = z4.quotient_of_subgroup(&[0, 1, 2, 3], &[0, 2]).unwrap();
        let err = lift_presentation(
            &z4,
            &[0, 2],
            (&one_gen("a", 2), &[1]),
            &q,
            (&one_gen("b", 2), &[1]),
            WordAlphabet::Positive,
        )
        .unwrap_err();
        assert!(matches!(err, PresentationError::GeneratorImageNotInN { element: 1, .. }));
    }

    #[test]
    fn inverse_alphabet_shortens_conjugation_words() {
        let s3 = g("symmetric:3");
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        let all: Vec<usize> = s3.elements().collect();
        let q = s3.quotient_of_subgroup(&all, &a3).unwrap();
        let lift = lift_presentation(
            &s3,
            &a3,
            (&one_gen("a", 3), &[a3[1]]),
            &q,
            (&one_gen("b", 2), &[1]),
            WordAlphabet::WithInverses,
        )
        .unwrap();
        assert_eq!(lift.presentation.to_string(), "gens: a b\na a a\na' b a' b'\nb b\n");
        assert_eq!(todd_coxeter(&lift.presentation, 200).unwrap(), 6);
    }

    /// All words over the positive alphabet of length <= max, brute force.
    fn all_words(gens: usize, max: usize) -> Vec<GroupWord> {
        let mut out = vec![GroupWord::empty()];
        let mut layer = vec![GroupWord::empty()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..gens {
                    let mut v = w.clone();
                    v.0.push(Literal::pos(i));
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn bfs_words_are_minimal() {
        for spec in ["cyclic:12", "dihedral:6", "symmetric:3", "quaternion", "product:(cyclic:2,cyclic:6)"] {
            let grp = g(spec);
            let all: Vec<usize> = grp.elements().collect();
            let gens = grp.generating_set(&all);
            let words = minimal_words(&grp, &gens, WordAlphabet::Positive);
            let longest = words.iter().map(|w| w.as_ref().unwrap().len()).max().unwrap();
            let mut best = vec![usize::MAX; grp.order()];
            for w in all_words(gens.len(), longest) {
                let x = eval_word(&grp, &gens, &w).unwrap();
                best[x] = best[x].min(w.len());
            }
            for x in grp.elements() {
                assert_eq!(words[x].as_ref().unwrap().len(), best[x], "{spec} element {x}");
            }
        }
    }
}
