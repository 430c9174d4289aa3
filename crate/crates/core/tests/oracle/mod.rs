//! Reference implementations used to cross-check the library: plain coset
//! enumeration, direct term evaluation, exhaustive and backtracking model
//! checking, naive congruence closure and a pairwise Sylow test.

#![allow(dead_code)]

use lowgrowth::group::{named_group, FiniteGroup};
use lowgrowth::model::{Equation, QuasiEquation, Term};
use lowgrowth::presentation::GroupWord;

/// Named groups of order at most 24, the dihedral groups of orders 8 to 24,
/// and the cyclic and elementary abelian 2-groups up to order 256.
pub fn corpus() -> Vec<String> {
    let mut specs: Vec<String> = vec!["trivial".into(), "klein".into(), "quaternion".into()];
    specs.extend((2..=24).map(|n| format!("cyclic:{n}")));
    specs.extend((2..=12).map(|n| format!("dihedral:{n}")));
    specs.extend(["symmetric:3", "symmetric:4", "alternating:4"].map(String::from));
    specs.extend(
        [
            "product:(cyclic:2,cyclic:4)",
            "product:(cyclic:2,cyclic:6)",
            "product:(cyclic:2,cyclic:8)",
            "product:(cyclic:4,cyclic:4)",
            "product:(cyclic:3,cyclic:3)",
            "product:(cyclic:2,cyclic:10)",
            "product:(cyclic:2,cyclic:12)",
            "product:(cyclic:2,symmetric:3)",
            "product:(cyclic:3,symmetric:3)",
            "product:(cyclic:4,symmetric:3)",
            "product:(cyclic:2,dihedral:4)",
            "product:(cyclic:2,quaternion)",
            "product:(cyclic:3,quaternion)",
            "product:(cyclic:2,alternating:4)",
            "product:(cyclic:2,dihedral:5)",
            "product:(cyclic:2,product:(cyclic:2,symmetric:3))",
        ]
        .map(String::from),
    );
    specs.extend((5..=8).map(|k| format!("cyclic:{}", 1usize << k)));
    let mut elementary = "cyclic:2".to_string();
    for _ in 2..=8 {
        elementary = format!("product:(cyclic:2,{elementary})");
        specs.push(elementary.clone());
    }
    specs
}

pub fn group(spec: &str) -> FiniteGroup {
    named_group(spec, 5040).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn letters(w: &GroupWord) -> Vec<(usize, bool)> {
    w.0.iter().map(|l| (l.generator, l.inverse)).collect()
}

pub fn eval_word(g: &FiniteGroup, images: &[usize], w: &GroupWord) -> usize {
    letters(w).into_iter().fold(g.identity(), |acc, (x, inv)| {
        let y = images[x];
        g.mul(acc, if inv { g.inv(y) } else { y })
    })
}

pub fn generated_order(g: &FiniteGroup, gens: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut stack = vec![g.identity()];
    seen[g.identity()] = true;
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

/// Index of the trivial subgroup in `⟨gens | relators⟩`, by HLT coset
/// enumeration with a cap on the number of cosets ever defined.
pub fn coset_enumeration(gens: usize, relators: &[GroupWord], cap: usize) -> Option<usize> {
    let cols = 2 * gens;
    let col = |(g, inv): (usize, bool)| 2 * g + inv as usize;
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| letters(r).into_iter().map(col).collect()).collect();
    let mut tc = Tc { table: vec![vec![None; cols]], parent: vec![0], queue: Vec::new() };
    let mut c = 0;
    while c < tc.table.len() {
        for r in &rels {
            if tc.parent[c] != c {
                break;
            }
            tc.scan_and_fill(c, r, cap)?;
        }
        for x in 0..cols {
            if tc.parent[c] == c && tc.table[c][x].is_none() {
                tc.define(c, x, cap)?;
            }
        }
        c += 1;
    }
    Some((0..tc.table.len()).filter(|&i| tc.parent[i] == i).count())
}

struct Tc {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

impl Tc {
    fn define(&mut self, c: usize, x: usize, cap: usize) -> Option<()> {
        if self.table.len() >= cap {
            return None;
        }
        let n = self.table.len();
        self.table.push(vec![None; self.table[0].len()]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
        Some(())
    }

    fn scan_and_fill(&mut self, c: usize, r: &[usize], cap: usize) -> Option<()> {
        if r.is_empty() {
            return Some(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, r.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][r[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i as isize > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Some(());
            }
            while j >= i as isize {
                match self.table[b][r[j as usize] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i as isize {
                self.table[f][r[i]] = Some(b);
                self.table[b][r[i] ^ 1] = Some(f);
                return Some(());
            }
            self.define(f, r[i], cap)?;
        }
    }

    fn rep(&mut self, mut k: usize) -> usize {
        while self.parent[k] != k {
            self.parent[k] = self.parent[self.parent[k]];
            k = self.parent[k];
        }
        k
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k != l {
            let (m, n) = (k.min(l), k.max(l));
            self.parent[n] = m;
            self.queue.push(n);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut next = 0;
        while next < self.queue.len() {
            let e = self.queue[next];
            next += 1;
            for x in 0..self.table[e].len() {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][x ^ 1] = None;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(y) = self.table[e1][x] {
                    self.merge(f1, y);
                } else if let Some(z) = self.table[f1][x ^ 1] {
                    self.merge(e1, z);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][x ^ 1] = Some(e1);
                }
            }
        }
        self.queue.clear();
    }
}

type Interpreter<'a> = Box<dyn Fn(&str, &[usize]) -> usize + 'a>;

/// A finite algebra given by its size and an operation interpreter.
pub struct Model<'a> {
    pub size: usize,
    pub op: Interpreter<'a>,
}

pub fn group_model(g: &FiniteGroup) -> Model<'_> {
    Model {
        size: g.order(),
        op: Box::new(move |s, a| match s {
            "*" => g.mul(a[0], a[1]),
            "inv" => g.inv(a[0]),
            "1" => g.identity(),
            _ => panic!("no operation {s}"),
        }),
    }
}

/// `G ∪ {0}` with `0` absorbing for `*`, `x & y = x` when `x = y` and `0`
/// otherwise; zero is the last element.
pub fn flat_model(g: &FiniteGroup) -> Model<'_> {
    let zero = g.order();
    Model {
        size: zero + 1,
        op: Box::new(move |s, a| match s {
            "*" if a[0] == zero || a[1] == zero => zero,
            "*" => g.mul(a[0], a[1]),
            "inv" if a[0] == zero => zero,
            "inv" => g.inv(a[0]),
            "&" if a[0] == a[1] => a[0],
            "&" => zero,
            "1" => g.identity(),
            _ => panic!("no operation {s}"),
        }),
    }
}

enum Node {
    Var(usize),
    App(String, Vec<Node>),
}

fn compile(t: &Term, vars: &[String]) -> Node {
    match t {
        Term::Var(v) => Node::Var(vars.iter().position(|w| w == v).expect("variable listed")),
        Term::App(s, args) => Node::App(s.clone(), args.iter().map(|a| compile(a, vars)).collect()),
    }
}

fn run(n: &Node, m: &Model, env: &[usize]) -> usize {
    match n {
        Node::Var(i) => env[*i],
        Node::App(s, args) => {
            let vals: Vec<usize> = args.iter().map(|a| run(a, m, env)).collect();
            (m.op)(s, &vals)
        }
    }
}

fn max_var(n: &Node) -> usize {
    match n {
        Node::Var(i) => *i,
        Node::App(_, args) => args.iter().map(max_var).max().unwrap_or(0),
    }
}

pub fn evaluate(m: &Model, t: &Term, names: &[String], values: &[usize]) -> usize {
    run(&compile(t, names), m, values)
}

pub fn equation_at(m: &Model, e: &Equation, names: &[String], values: &[usize]) -> bool {
    evaluate(m, &e.lhs, names, values) == evaluate(m, &e.rhs, names, values)
}

/// Every assignment in lexicographic order; returns the first failing one.
pub fn exhaustive_counterexample(m: &Model, q: &QuasiEquation) -> Option<Vec<usize>> {
    let names = q.variables();
    let comp = |e: &Equation| (compile(&e.lhs, &names), compile(&e.rhs, &names));
    let premises: Vec<_> = q.premises.iter().map(comp).collect();
    let conclusion = comp(&q.conclusion);
    let mut env = vec![0; names.len()];
    loop {
        let holds = |(l, r): &(Node, Node)| run(l, m, &env) == run(r, m, &env);
        if premises.iter().all(holds) && !holds(&conclusion) {
            return Some(env);
        }
        let mut i = names.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            env[i] += 1;
            if env[i] < m.size {
                break;
            }
            env[i] = 0;
        }
    }
}

/// Depth-first over assignments, testing each premise as soon as its
/// variables are bound.
pub fn pruned_counterexample(m: &Model, q: &QuasiEquation) -> Option<Vec<usize>> {
    let names = q.variables();
    let k = names.len();
    let mut by_level: Vec<Vec<(Node, Node)>> = (0..=k).map(|_| Vec::new()).collect();
    for e in &q.premises {
        let (l, r) = (compile(&e.lhs, &names), compile(&e.rhs, &names));
        let level = if e.variables().is_empty() { 0 } else { max_var(&l).max(max_var(&r)) + 1 };
        by_level[level].push((l, r));
    }
    let conclusion = (compile(&q.conclusion.lhs, &names), compile(&q.conclusion.rhs, &names));
    fn go(m: &Model, levels: &[Vec<(Node, Node)>], c: &(Node, Node), env: &mut Vec<usize>) -> bool {
        let depth = env.len();
        if !levels[depth].iter().all(|(l, r)| run(l, m, env) == run(r, m, env)) {
            return false;
        }
        if depth + 1 == levels.len() {
            return run(&c.0, m, env) != run(&c.1, m, env);
        }
        for v in 0..m.size {
            env.push(v);
            if go(m, levels, c, env) {
                return true;
            }
            env.pop();
        }
        false
    }
    let mut env = Vec::with_capacity(k);
    go(m, &by_level, &conclusion, &mut env).then_some(env)
}

/// Number of symbols in the formatted prefix text, connectives excluded.
pub fn token_length(text: &str) -> usize {
    text.split_whitespace().filter(|t| !matches!(*t, "=" | "," | "->")).count()
}

/// Congruence generated by `(a, b)` as a block label per element, by
/// repeated closure under every operation until nothing changes.
pub fn principal_congruence(m: &Model, ops: &[(&str, usize)], a: usize, b: usize) -> Vec<usize> {
    let n = m.size;
    let mut label: Vec<usize> = (0..n).collect();
    let relabel = |label: &mut Vec<usize>, x: usize, y: usize| -> bool {
        let (lx, ly) = (label[x], label[y]);
        if lx == ly {
            return false;
        }
        let (keep, drop) = (lx.min(ly), lx.max(ly));
        label.iter_mut().filter(|l| **l == drop).for_each(|l| *l = keep);
        true
    };
    relabel(&mut label, a, b);
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                if x == y || label[x] != label[y] {
                    continue;
                }
                for &(s, arity) in ops {
                    match arity {
                        1 => changed |= relabel(&mut label, (m.op)(s, &[x]), (m.op)(s, &[y])),
                        2 => {
                            for z in 0..n {
                                changed |= relabel(&mut label, (m.op)(s, &[x, z]), (m.op)(s, &[y, z]));
                                changed |= relabel(&mut label, (m.op)(s, &[z, x]), (m.op)(s, &[z, y]));
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    label
}

/// Subdirect irreducibility: the principal congruences of distinct pairs
/// have a common nontrivial pair.
pub fn is_si(m: &Model, ops: &[(&str, usize)]) -> bool {
    let n = m.size;
    let mut common: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(m, ops, a, b);
            common.retain(|&(x, y)| c[x] == c[y]);
        }
    }
    n > 1 && !common.is_empty()
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Some Sylow subgroup is nonabelian exactly when two noncommuting elements
/// generate a `p`-subgroup for some prime `p`.
pub fn has_nonabelian_sylow(g: &FiniteGroup) -> bool {
    for x in g.elements() {
        for y in g.elements() {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            let order = generated_order(g, &[x, y]);
            let p = (2..=order).find(|p| order.is_multiple_of(*p)).expect("nontrivial");
            if is_power_of(order, p) {
                return true;
            }
        }
    }
    false
}
