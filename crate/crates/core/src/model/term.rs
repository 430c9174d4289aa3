use super::ModelError;
use std::fmt;

/// Operation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(ops: &[(&str, usize)]) -> Self {
        Signature { ops: ops.iter().map(|&(s, a)| (s.to_string(), a)).collect() }
    }

    pub fn group() -> Self {
        Self::new(&[("*", 2), ("inv", 1), ("1", 0)])
    }

    pub fn monoid() -> Self {
        Self::new(&[("*", 2), ("1", 0)])
    }

    pub fn inverse_semigroup() -> Self {
        Self::new(&[("*", 2), ("inv", 1)])
    }

    pub fn semigroup() -> Self {
        Self::new(&[("*", 2)])
    }

    /// `{·, ⁻¹, ∧}`
    pub fn flat() -> Self {
        Self::new(&[("*", 2), ("inv", 1), ("&", 2)])
    }

    /// `{·, ⁻¹, ∧, 1}`: the flat signature with the group identity as a constant.
    pub fn flat_with_identity() -> Self {
        Self::new(&[("*", 2), ("inv", 1), ("&", 2), ("1", 0)])
    }

    /// `{·, ∧}`
    pub fn semiring() -> Self {
        Self::new(&[("*", 2), ("&", 2)])
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.ops.iter().find(|(s, _)| s == symbol).map(|&(_, a)| a)
    }

    pub fn has(&self, symbol: &str) -> bool {
        self.arity(symbol).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(symbol.into(), args)
    }

    pub fn one() -> Self {
        Term::app("1", vec![])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Self {
        Term::app("*", vec![a, b])
    }

    pub fn inv(a: Term) -> Self {
        Term::app("inv", vec![a])
    }

    pub fn meet(a: Term, b: Term) -> Self {
        Term::app("&", vec![a, b])
    }

    /// Left-associated product `((t₁·t₂)·t₃)…`; `None` for an empty list.
    pub fn product(factors: impl IntoIterator<Item = Term>) -> Option<Term> {
        factors.into_iter().reduce(Term::mul)
    }

    /// `t^k` as `((t·t)·t)…`, `k ≥ 1`.
    pub fn power(t: &Term, k: usize) -> Term {
        assert!(k >= 1, "power exponent must be positive");
        Term::product(std::iter::repeat_n(t.clone(), k)).expect("k >= 1")
    }

    /// Number of tokens in the prefix form.
    pub fn len(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::len).sum::<usize>(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    pub fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| a.rename(f)).collect()),
        }
    }

    fn write_tokens(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::App(s, args) => {
                out.push(s.clone());
                args.iter().for_each(|a| a.write_tokens(out));
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = Vec::new();
        self.write_tokens(&mut tokens);
        f.write_str(&tokens.join(" "))
    }
}

fn is_variable_name(token: &str) -> bool {
    let mut chars = token.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_tokens(tokens: &[&str], pos: &mut usize, sig: &Signature) -> Result<Term, ModelError> {
    let token = tokens[*pos];
    *pos += 1;
    match sig.arity(token) {
        Some(arity) => {
            let mut args = Vec::with_capacity(arity);
            for _ in 0..arity {
                if *pos >= tokens.len() {
                    return Err(ModelError::ArityMismatch { symbol: token.to_string(), arity });
                }
                args.push(parse_tokens(tokens, pos, sig)?);
            }
            Ok(Term::App(token.to_string(), args))
        }
        None if is_variable_name(token) => Ok(Term::Var(token.to_string())),
        None => Err(ModelError::UnknownSymbol(token.to_string())),
    }
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ModelError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(ModelError::EmptyTerm);
    }
    let mut pos = 0;
    let term = parse_tokens(&tokens, &mut pos, sig)?;
    if pos < tokens.len() {
        return Err(ModelError::TrailingTokens(tokens[pos..].join(" ")));
    }
    Ok(term)
}

pub fn format_term(t: &Term) -> String {
    t.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Self, ModelError> {
        let (l, r) = text.split_once('=').ok_or_else(|| ModelError::MalformedEquation(text.trim().to_string()))?;
        if r.contains('=') {
            return Err(ModelError::MalformedEquation(text.trim().to_string()));
        }
        Ok(Equation { lhs: parse_term(l, sig)?, rhs: parse_term(r, sig)? })
    }

    pub fn len(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_variables(&mut out);
        self.rhs.collect_variables(&mut out);
        out
    }

    pub fn swapped(&self) -> Self {
        Equation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `premises → conclusion`; an empty premise list is an ordinary equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiEquation {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiEquation {
    pub fn new(premises: Vec<Equation>, conclusion: Equation) -> Self {
        QuasiEquation { premises, conclusion }
    }

    /// Parses `p1 = q1 , p2 = q2 -> l = r`. The premise part may be empty, and
    /// text without `->` is read as a bare equation.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self, ModelError> {
        let Some((premises, conclusion)) = text.split_once("->") else {
            return Ok(QuasiEquation { premises: vec![], conclusion: Equation::parse(text, sig)? });
        };
        let premises = if premises.trim().is_empty() {
            vec![]
        } else {
            premises.split(',').map(|p| Equation::parse(p, sig)).collect::<Result<_, _>>()?
        };
        Ok(QuasiEquation { premises, conclusion: Equation::parse(conclusion, sig)? })
    }

    pub fn len(&self) -> usize {
        self.premises.iter().map(Equation::len).sum::<usize>() + self.conclusion.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variables in reading order: premises first, then the conclusion.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            e.lhs.collect_variables(&mut out);
            e.rhs.collect_variables(&mut out);
        }
        out
    }
}

impl From<Equation> for QuasiEquation {
    fn from(e: Equation) -> Self {
        QuasiEquation { premises: vec![], conclusion: e }
    }
}

impl fmt::Display for QuasiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(Equation::to_string).collect();
        if premises.is_empty() {
            write!(f, "-> {}", self.conclusion)
        } else {
            write!(f, "{} -> {}", premises.join(" , "), self.conclusion)
        }
    }
}

/// Anything with a prefix length.
pub trait PrefixLength {
    fn prefix_length(&self) -> usize;
}

impl PrefixLength for Equation {
    fn prefix_length(&self) -> usize {
        self.len()
    }
}

impl PrefixLength for QuasiEquation {
    fn prefix_length(&self) -> usize {
        self.len()
    }
}

pub fn prefix_length(x: &impl PrefixLength) -> usize {
    x.prefix_length()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let sig = Signature::group();
        let t = parse_term("* x * y inv y", &sig).unwrap();
        assert_eq!(t, Term::mul(Term::var("x"), Term::mul(Term::var("y"), Term::inv(Term::var("y")))));
        assert_eq!(format_term(&t), "* x * y inv y");
        assert_eq!(parse_term("x", &sig).unwrap(), Term::var("x"));
        assert_eq!(parse_term("1", &sig).unwrap(), Term::one());
    }

    #[test]
    fn parse_errors() {
        let sig = Signature::group();
        assert!(matches!(parse_term("* x y z", &sig), Err(ModelError::TrailingTokens(t)) if t == "z"));
        assert!(matches!(parse_term("* x", &sig), Err(ModelError::ArityMismatch { arity: 2, .. })));
        assert!(matches!(parse_term("& x y", &sig), Err(ModelError::UnknownSymbol(s)) if s == "&"));
        assert!(matches!(parse_term("1", &Signature::semigroup()), Err(ModelError::UnknownSymbol(_))));
        assert_eq!(parse_term("  ", &sig), Err(ModelError::EmptyTerm));
        assert!(Equation::parse("x = y = z", &sig).is_err());
    }

    #[test]
    fn worked_lengths() {
        let sig = Signature::group();
        let e = Equation::parse("* x * y inv y = x", &sig).unwrap();
        assert_eq!(prefix_length(&e), 7);
        let q = QuasiEquation::parse("* x y = * y x -> x = y", &sig).unwrap();
        assert_eq!(prefix_length(&q), 8);
        assert_eq!(prefix_length(&Equation::parse("x = x", &sig).unwrap()), 2);
    }

    #[test]
    fn quasi_equation_text() {
        let sig = Signature::group();
        let q = QuasiEquation::parse("* x x = 1 , x = x -> x = 1", &sig).unwrap();
        assert_eq!(q.premises.len(), 2);
        assert_eq!(q.to_string(), "* x x = 1 , x = x -> x = 1");
        assert_eq!(QuasiEquation::parse(&q.to_string(), &sig).unwrap(), q);
        let bare = QuasiEquation::parse("-> x = x", &sig).unwrap();
        assert!(bare.premises.is_empty());
        assert_eq!(QuasiEquation::parse("x = x", &sig).unwrap(), bare);
        assert_eq!(q.variables(), vec!["x"]);
    }

    #[test]
    fn powers_are_left_associated() {
        let x = Term::var("x");
        assert_eq!(Term::power(&x, 3).to_string(), "* * x x x");
        assert_eq!(Term::power(&x, 1), x);
    }
}
