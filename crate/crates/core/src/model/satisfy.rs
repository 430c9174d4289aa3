use super::{Equation, FiniteAlgebra, ModelError, QuasiEquation, Term};
use serde::Serialize;
use std::fmt;

/// Values for variables, listed in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment(pub Vec<(String, usize)>);

impl Assignment {
    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.iter().find(|(v, _)| v == var).map(|&(_, x)| x)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, x)| format!("{v}={x}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Satisfaction {
    Holds,
    Fails(Assignment),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }
}

#[derive(Clone, Copy)]
enum Instr {
    Var(usize),
    Const(usize),
    Unary(usize),
    Binary(usize),
    Op(usize),
}

/// A term compiled to postfix code against one algebra and variable order.
pub(crate) struct Compiled {
    code: Vec<Instr>,
}

impl Compiled {
    pub(crate) fn new(t: &Term, alg: &FiniteAlgebra, vars: &[String]) -> Result<Self, ModelError> {
        let mut code = Vec::with_capacity(t.len());
        compile(t, alg, vars, &mut code)?;
        Ok(Compiled { code })
    }

    #[inline]
    pub(crate) fn eval(&self, alg: &FiniteAlgebra, values: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        let n = alg.size();
        let ops = alg.operations();
        for instr in &self.code {
            match *instr {
                Instr::Var(i) => stack.push(values[i]),
                Instr::Const(op) => stack.push(ops[op].table[0]),
                Instr::Unary(op) => {
                    let a = stack.pop().expect("well-formed code");
                    stack.push(ops[op].table[a]);
                }
                Instr::Binary(op) => {
                    let b = stack.pop().expect("well-formed code");
                    let a = stack.pop().expect("well-formed code");
                    stack.push(ops[op].table[a * n + b]);
                }
                Instr::Op(op) => {
                    let arity = ops[op].arity;
                    let args = stack.split_off(stack.len() - arity);
                    stack.push(ops[op].apply(n, &args));
                }
            }
        }
        stack[0]
    }
}

fn compile(t: &Term, alg: &FiniteAlgebra, vars: &[String], code: &mut Vec<Instr>) -> Result<(), ModelError> {
    match t {
        Term::Var(v) => {
            let i = vars.iter().position(|w| w == v).expect("variable list covers the term");
            code.push(Instr::Var(i));
        }
        Term::App(s, args) => {
            let op = alg
                .operations()
                .iter()
                .position(|o| &o.symbol == s && o.arity == args.len())
                .ok_or_else(|| ModelError::MissingOperation(s.clone()))?;
            for a in args {
                compile(a, alg, vars, code)?;
            }
            code.push(match args.len() {
                0 => Instr::Const(op),
                1 => Instr::Unary(op),
                2 => Instr::Binary(op),
                _ => Instr::Op(op),
            });
        }
    }
    Ok(())
}

/// Value of `t` with variables bound by `env`.
pub fn evaluate(alg: &FiniteAlgebra, t: &Term, env: &Assignment) -> Result<usize, ModelError> {
    let vars: Vec<String> = env.0.iter().map(|(v, _)| v.clone()).collect();
    let values: Vec<usize> = env.0.iter().map(|&(_, x)| x).collect();
    if let Some(missing) = t.variables().into_iter().find(|v| !vars.contains(v)) {
        return Err(ModelError::UnknownSymbol(missing));
    }
    Ok(Compiled::new(t, alg, &vars)?.eval(alg, &values, &mut Vec::new()))
}

struct CompiledEquation {
    lhs: Compiled,
    rhs: Compiled,
    /// Number of leading variables that must be bound before this can be tested.
    level: usize,
}

impl CompiledEquation {
    fn new(e: &Equation, alg: &FiniteAlgebra, vars: &[String]) -> Result<Self, ModelError> {
        let level = e.variables().iter().map(|v| vars.iter().position(|w| w == v).unwrap() + 1).max().unwrap_or(0);
        Ok(CompiledEquation { lhs: Compiled::new(&e.lhs, alg, vars)?, rhs: Compiled::new(&e.rhs, alg, vars)?, level })
    }

    #[inline]
    fn holds(&self, alg: &FiniteAlgebra, values: &[usize], stack: &mut Vec<usize>) -> bool {
        self.lhs.eval(alg, values, stack) == self.rhs.eval(alg, values, stack)
    }
}

struct Search<'a> {
    alg: &'a FiniteAlgebra,
    premises: Vec<CompiledEquation>,
    conclusion: CompiledEquation,
    values: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn premises_at(&mut self, level: usize) -> bool {
        let Search { alg, premises, values, stack, .. } = self;
        premises.iter().filter(|p| p.level == level).all(|p| p.holds(alg, values, stack))
    }

    /// Depth-first in lexicographic order; returns true at the first failure.
    fn run(&mut self, depth: usize) -> Result<bool, ModelError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(ModelError::BudgetExceeded { needed: u128::from(self.nodes), cap: self.cap });
        }
        if !self.premises_at(depth) {
            return Ok(false);
        }
        if depth == self.values.len() {
            return Ok(!self.conclusion.holds(self.alg, &self.values, &mut self.stack));
        }
        for x in 0..self.alg.size() {
            self.values[depth] = x;
            if self.run(depth + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search(alg: &FiniteAlgebra, q: &QuasiEquation, cap: u64) -> Result<Satisfaction, ModelError> {
    let vars = q.variables();
    let premises = q.premises.iter().map(|p| CompiledEquation::new(p, alg, &vars)).collect::<Result<_, _>>()?;
    let conclusion = CompiledEquation::new(&q.conclusion, alg, &vars)?;
    let mut s = Search { alg, premises, conclusion, values: vec![0; vars.len()], stack: Vec::new(), nodes: 0, cap };
    if s.run(0)? {
        Ok(Satisfaction::Fails(Assignment(vars.into_iter().zip(s.values).collect())))
    } else {
        Ok(Satisfaction::Holds)
    }
}

/// Checks `e` under every assignment; the reported failure is the first in
/// lexicographic order with variables in order of first appearance.
/// Refuses when `|A|^vars` exceeds `cap`.
pub fn satisfies_equation(alg: &FiniteAlgebra, e: &Equation, cap: u64) -> Result<Satisfaction, ModelError> {
    let vars = e.variables().len() as u32;
    let needed = (alg.size() as u128).checked_pow(vars).unwrap_or(u128::MAX);
    if needed > u128::from(cap) {
        return Err(ModelError::BudgetExceeded { needed, cap });
    }
    search(alg, &QuasiEquation::from(e.clone()), u64::MAX)
}

/// Checks `q` by backtracking over assignments in lexicographic order,
/// abandoning a branch as soon as a fully bound premise is false. The first
/// failing assignment is the same one a plain enumeration would find.
/// `cap` bounds the number of search nodes.
pub fn satisfies_quasiequation(alg: &FiniteAlgebra, q: &QuasiEquation, cap: u64) -> Result<Satisfaction, ModelError> {
    search(alg, q, cap)
}
