use super::{Presentation, PresentationError};

const NONE: usize = usize::MAX;

/// Coset table over the trivial subgroup; columns are `2g` for generator `g`
/// and `2g + 1` for its inverse.
struct CosetTable {
    columns: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    max_cosets: usize,
    queue: Vec<usize>,
}

impl CosetTable {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let columns = 2 * generators;
        CosetTable { columns, table: vec![NONE; columns], parent: vec![0], max_cosets, queue: Vec::new() }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.columns + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: usize) {
        self.table[c * self.columns + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), PresentationError> {
        if self.parent.len() >= self.max_cosets {
            return Err(PresentationError::Inconclusive { max_cosets: self.max_cosets });
        }
        let b = self.parent.len();
        self.parent.push(b);
        self.table.extend(std::iter::repeat_n(NONE, self.columns));
        self.set(c, x, b);
        self.set(b, x ^ 1, c);
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.columns {
                let delta = self.get(gamma, x);
                if delta == NONE {
                    continue;
                }
                self.set(delta, x ^ 1, NONE);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                if self.get(mu, x) != NONE {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != NONE {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<(), PresentationError> {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0, word.len());
        loop {
            while i < j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j > i && self.get(b, word[j - 1] ^ 1) != NONE {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// HLT coset enumeration of `pres` over the trivial subgroup. Returns the
/// order of the presented group, or `Inconclusive` once more than
/// `max_cosets` cosets would be needed.
pub fn todd_coxeter(pres: &Presentation, max_cosets: usize) -> Result<usize, PresentationError> {
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|l| 2 * l.generator + usize::from(l.inverse)).collect())
        .collect();
    let mut ct = CosetTable::new(pres.generators.len(), max_cosets.max(1));
    let mut alpha = 0;
    while alpha < ct.parent.len() {
        for r in &relators {
            if !ct.is_live(alpha) {
                break;
            }
            ct.scan_and_fill(alpha, r)?;
        }
        for x in 0..ct.columns {
            if !ct.is_live(alpha) {
                break;
            }
            if ct.get(alpha, x) == NONE {
                ct.define(alpha, x)?;
            }
        }
        alpha += 1;
    }
    Ok((0..ct.parent.len()).filter(|&c| ct.is_live(c)).count())
}
