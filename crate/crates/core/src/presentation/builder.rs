use super::{
    generator_name, lift_presentation, minimal_words, GroupWord, Presentation, PresentationError, WordAlphabet,
};
use crate::group::{composition_series, is_prime, is_simple, isomorphism, CompositionSeries, FiniteGroup};
use serde::Serialize;

/// A simple group with its fixed presentation.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub presentation: Presentation,
    pub images: Vec<usize>,
    /// Longest minimal positive word needed for an element.
    pub max_word_length: usize,
}

/// `Z_p` gets `<a | a^p>`; any other simple group gets its multiplication-table
/// presentation (one generator per element, relator `g_x g_y g_{xy}^{-1}`).
pub fn base_presentation(s: &FiniteGroup) -> Result<(Presentation, Vec<usize>), PresentationError> {
    if is_prime(s.order()) {
        let a = s.elements().find(|&x| x != s.identity()).expect("prime order group is nontrivial");
        return Ok((Presentation::new(vec!["a".into()], vec![GroupWord::power(0, s.order())]), vec![a]));
    }
    if !is_simple(s) {
        return Err(PresentationError::NotSimple);
    }
    let generators: Vec<String> = s.elements().map(|x| format!("g{x}")).collect();
    let mut relators = Vec::with_capacity(s.order() * s.order());
    for x in s.elements() {
        for y in s.elements() {
            use super::Literal;
            relators.push(GroupWord(vec![Literal::pos(x), Literal::pos(y), Literal::neg(s.mul(x, y))]));
        }
    }
    Ok((Presentation::new(generators, relators), s.elements().collect()))
}

/// Fixed presentations for the simple groups met so far.
#[derive(Clone, Debug, Default)]
pub struct SimpleCatalog {
    pub entries: Vec<CatalogEntry>,
}

impl SimpleCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: &FiniteGroup) -> Result<usize, PresentationError> {
        let (presentation, images) = base_presentation(s)?;
        let max_word_length = minimal_words(s, &images, WordAlphabet::Positive)
            .iter()
            .map(|w| w.as_ref().map_or(0, GroupWord::len))
            .max()
            .unwrap_or(0);
        self.entries.push(CatalogEntry { group: s.clone(), presentation, images, max_word_length });
        Ok(self.entries.len() - 1)
    }

    /// Finds an entry isomorphic to `s`, inserting one if none exists, and
    /// returns it with the entry's generator images carried over to `s`.
    pub fn resolve(&mut self, s: &FiniteGroup, budget: u64) -> Result<(usize, Vec<usize>), PresentationError> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.group.order() == s.order() {
                if let Some(iso) = isomorphism(&e.group, s, budget)? {
                    return Ok((i, e.images.iter().map(|&x| iso.map[x]).collect()));
                }
            }
        }
        let i = self.insert(s)?;
        Ok((i, self.entries[i].images.clone()))
    }

    pub fn max_generators(&self) -> usize {
        self.entries.iter().map(|e| e.presentation.generators.len()).max().unwrap_or(0)
    }

    pub fn max_word_length(&self) -> usize {
        self.entries.iter().map(|e| e.max_word_length).max().unwrap_or(0)
    }

    pub fn max_relations(&self) -> usize {
        self.entries.iter().map(|e| e.presentation.relations.len()).max().unwrap_or(0)
    }

    pub fn max_relation_length(&self) -> usize {
        self.entries.iter().map(|e| e.presentation.max_relation_length()).max().unwrap_or(0)
    }
}

/// Counts after stage `i` (the presentation of `H_i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageMetrics {
    pub gen: usize,
    pub len: usize,
    pub rel: usize,
    pub rellen: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationMetrics {
    /// `stages[i]` describes `H_i`; `stages[0]` is the trivial group.
    pub stages: Vec<StageMetrics>,
    pub catalog_gen: usize,
    pub catalog_len: usize,
    pub catalog_rel: usize,
    pub catalog_rellen: usize,
    pub generator_count: usize,
    pub total_length: usize,
}

impl PresentationMetrics {
    /// Checks the stage recurrences
    /// `gen(i) ≤ i·#gen`, `len(i) ≤ i·#len`,
    /// `rel(i+1) ≤ rel(i) + #gen·gen(i) + #gen` and
    /// `rellen(i+1) ≤ max(rellen(i), 3 + len(i), #len + len(i))`,
    /// plus `rel(1) ≤ #rel` and `rellen(1) ≤ #rellen` for the first stage.
    /// Returns a description of every violation.
    pub fn recurrence_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (cg, cl) = (self.catalog_gen, self.catalog_len);
        for (i, s) in self.stages.iter().enumerate() {
            if s.gen > i * cg {
                out.push(format!("gen({i}) = {} > {i}*{cg}", s.gen));
            }
            if s.len > i * cl {
                out.push(format!("len({i}) = {} > {i}*{cl}", s.len));
            }
        }
        if let Some(first) = self.stages.get(1) {
            if first.rel > self.catalog_rel {
                out.push(format!("rel(1) = {} > #rel = {}", first.rel, self.catalog_rel));
            }
            if first.rellen > self.catalog_rellen {
                out.push(format!("rellen(1) = {} > #rellen = {}", first.rellen, self.catalog_rellen));
            }
        }
        for i in 1..self.stages.len().saturating_sub(1) {
            let (s, t) = (&self.stages[i], &self.stages[i + 1]);
            let rel_bound = s.rel + cg * s.gen + cg;
            if t.rel > rel_bound {
                out.push(format!("rel({}) = {} > {rel_bound}", i + 1, t.rel));
            }
            let rellen_bound = s.rellen.max(3 + s.len).max(cl + s.len);
            if t.rellen > rellen_bound {
                out.push(format!("rellen({}) = {} > {rellen_bound}", i + 1, t.rellen));
            }
        }
        out
    }
}

/// Output of [`build_short_presentation`].
#[derive(Clone, Debug)]
pub struct ShortPresentation {
    pub presentation: Presentation,
    pub images: Vec<usize>,
    pub metrics: PresentationMetrics,
    /// Normal-form word for every element of the group.
    pub element_words: Vec<GroupWord>,
    pub series: CompositionSeries,
}

impl ShortPresentation {
    pub fn express_element(&self, h: usize) -> &GroupWord {
        &self.element_words[h]
    }

    pub fn max_word_length(&self) -> usize {
        self.element_words.iter().map(GroupWord::len).max().unwrap_or(0)
    }
}

/// Lifts catalog presentations along the composition series of `h`, one
/// factor per stage. Factors with no isomorphic catalog entry are added to the
/// catalog on the fly.
pub fn build_short_presentation(
    h: &FiniteGroup,
    catalog: &mut SimpleCatalog,
    hom_budget: u64,
) -> Result<ShortPresentation, PresentationError> {
    let series = composition_series(h);
    let mut pres = Presentation::trivial();
    let mut images: Vec<usize> = Vec::new();
    let mut words: Vec<Option<GroupWord>> = vec![None; h.order()];
    words[h.identity()] = Some(GroupWord::empty());
    let mut stages = vec![StageMetrics { gen: 0, len: 0, rel: 0, rellen: 0 }];

    for i in 0..series.length() {
        let (lower, upper) = (&series.subgroups[i], &series.subgroups[i + 1]);
        let quotient = h.quotient_of_subgroup(upper, lower)?;
        let (entry, upper_images) = catalog.resolve(&quotient.group, hom_budget)?;
        let mut upper_pres = catalog.entries[entry].presentation.clone();
        let k = pres.generators.len();
        upper_pres.generators = (k..k + upper_pres.generators.len()).map(generator_name).collect();

        let lift = lift_presentation(
            h,
            lower,
            (&pres, &images),
            &quotient,
            (&upper_pres, &upper_images),
            WordAlphabet::Positive,
        )?;
        pres = lift.presentation;
        images = lift.images;
        words = lift.element_words;
        stages.push(StageMetrics {
            gen: pres.generators.len(),
            len: words.iter().flatten().map(GroupWord::len).max().unwrap_or(0),
            rel: pres.relations.len(),
            rellen: pres.max_relation_length(),
        });
    }

    let element_words: Vec<GroupWord> =
        words.into_iter().map(|w| w.expect("the last stage covers the whole group")).collect();
    let metrics = PresentationMetrics {
        stages,
        catalog_gen: catalog.max_generators(),
        catalog_len: catalog.max_word_length(),
        catalog_rel: catalog.max_relations(),
        catalog_rellen: catalog.max_relation_length(),
        generator_count: pres.generators.len(),
        total_length: pres.total_length(),
    };
    Ok(ShortPresentation { presentation: pres, images, metrics, element_words, series })
}
