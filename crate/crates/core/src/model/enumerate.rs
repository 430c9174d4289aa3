use super::{satisfies_equation, Equation, FiniteAlgebra, ModelError, Signature, Term};
use crate::Budgets;
use std::collections::{BTreeSet, HashMap};

const HOLE: &str = "_";

/// Canonical variable names: `x y z u v w`, then `x6 x7 …`.
pub fn variable_name(i: usize) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    NAMES.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string())
}

/// Term shapes of exactly `size` tokens, with `_` for variable positions.
fn shapes(sig: &Signature, size: usize, memo: &mut HashMap<usize, Vec<Term>>) -> Vec<Term> {
    if let Some(s) = memo.get(&size) {
        return s.clone();
    }
    let mut out = Vec::new();
    if size == 1 {
        out.push(Term::var(HOLE));
    }
    for (symbol, arity) in &sig.ops {
        if *arity == 0 {
            if size == 1 {
                out.push(Term::app(symbol.clone(), vec![]));
            }
            continue;
        }
        if size < 1 + arity {
            continue;
        }
        for split in compositions(size - 1, *arity) {
            let mut partial: Vec<Vec<Term>> = vec![vec![]];
            for part in split {
                let options = shapes(sig, part, memo);
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut p = prefix.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|args| Term::app(symbol.clone(), args)));
        }
    }
    memo.insert(size, out.clone());
    out
}

/// Ordered ways of writing `total` as `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    (1..total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn holes(t: &Term) -> usize {
    match t {
        Term::Var(_) => 1,
        Term::App(_, args) => args.iter().map(holes).sum(),
    }
}

fn fill(t: &Term, names: &mut impl Iterator<Item = String>) -> Term {
    match t {
        Term::Var(_) => Term::Var(names.next().expect("one name per hole")),
        Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| fill(a, names)).collect()),
    }
}

/// Restricted growth strings of length `k`: every variable pattern up to renaming.
fn growth_strings(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let next = s.iter().max().map_or(0, |m| m + 1);
                (0..=next).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Renames variables to `x, y, z, …` by first appearance.
pub fn canonical_renaming(e: &Equation) -> Equation {
    let vars = e.variables();
    let rename = |v: &str| variable_name(vars.iter().position(|w| w == v).expect("known variable"));
    Equation::new(e.lhs.rename(&rename), e.rhs.rename(&rename))
}

/// The orientation whose canonical text is smaller.
pub fn canonical_form(e: &Equation) -> Equation {
    let a = canonical_renaming(e);
    let b = canonical_renaming(&e.swapped());
    if b.to_string() < a.to_string() {
        b
    } else {
        a
    }
}

/// Every equation in the signature of `alg` with prefix length at most
/// `max_len`, one per class under variable renaming and side swap, ordered by
/// length and then by text.
pub fn candidate_equations(sig: &Signature, max_len: usize) -> Vec<Equation> {
    let mut memo = HashMap::new();
    let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
    let mut out: HashMap<String, Equation> = HashMap::new();
    for left in 1..max_len {
        for right in 1..=(max_len - left) {
            let (ls, rs) = (shapes(sig, left, &mut memo), shapes(sig, right, &mut memo));
            for l in &ls {
                for r in &rs {
                    let k = holes(l) + holes(r);
                    for pattern in growth_strings(k) {
                        let mut names = pattern.iter().map(|&v| variable_name(v));
                        let e = Equation::new(fill(l, &mut names), fill(r, &mut names));
                        let c = canonical_form(&e);
                        let text = c.to_string();
                        if seen.insert((c.len(), text.clone())) {
                            out.insert(text, c);
                        }
                    }
                }
            }
        }
    }
    seen.into_iter().map(|(_, text)| out.remove(&text).expect("stored with key")).collect()
}

/// The equations of [`candidate_equations`] that hold on `alg`.
pub fn enumerate_equations(
    alg: &FiniteAlgebra,
    max_len: usize,
    budgets: &Budgets,
) -> Result<Vec<Equation>, ModelError> {
    if max_len > budgets.equation_length {
        return Err(ModelError::BudgetExceeded { needed: max_len as u128, cap: budgets.equation_length as u64 });
    }
    let mut out = Vec::new();
    for e in candidate_equations(&alg.signature(), max_len) {
        if satisfies_equation(alg, &e, budgets.assignments)?.holds() {
            out.push(e);
        }
    }
    Ok(out)
}
