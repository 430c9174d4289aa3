use super::{ModelError, Signature};
use crate::group::FiniteGroup;
use serde_json::{json, Map, Value};

/// One operation table. Arguments `(a₀,…,a_{k-1})` index the table at
/// `Σ aᵢ·n^{k-1-i}`; a constant has a single entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    #[inline]
    pub fn apply(&self, size: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * size + a);
        self.table[idx]
    }
}

/// A finite algebra on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    ops: Vec<Operation>,
}

impl FiniteAlgebra {
    pub fn new(size: usize, ops: Vec<Operation>) -> Result<Self, ModelError> {
        if size == 0 {
            return Err(ModelError::BadAlgebra("empty universe".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.symbol == op.symbol) {
                return Err(ModelError::BadAlgebra(format!("duplicate operation {:?}", op.symbol)));
            }
            let expected = size.checked_pow(op.arity as u32).unwrap_or(usize::MAX);
            if op.table.len() != expected {
                return Err(ModelError::BadAlgebra(format!(
                    "operation {:?} needs {expected} entries, found {}",
                    op.symbol,
                    op.table.len()
                )));
            }
            if let Some(&bad) = op.table.iter().find(|&&v| v >= size) {
                return Err(ModelError::BadAlgebra(format!(
                    "operation {:?} yields {bad}, outside 0..{size}",
                    op.symbol
                )));
            }
        }
        Ok(FiniteAlgebra { size, ops })
    }

    /// The group `g` as an algebra in the operations of `sig` drawn from
    /// `*`, `inv` and `1`.
    pub fn from_group(g: &FiniteGroup, sig: &Signature) -> Result<Self, ModelError> {
        let n = g.order();
        let mut ops = Vec::new();
        for (symbol, arity) in &sig.ops {
            let table = match (symbol.as_str(), arity) {
                ("*", 2) => (0..n * n).map(|i| g.mul(i / n, i % n)).collect(),
                ("inv", 1) => g.elements().map(|x| g.inv(x)).collect(),
                ("1", 0) => vec![g.identity()],
                _ => return Err(ModelError::MissingOperation(symbol.clone())),
            };
            ops.push(Operation { symbol: symbol.clone(), arity: *arity, table });
        }
        Self::new(n, ops)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, symbol: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.symbol == symbol)
    }

    pub fn signature(&self) -> Signature {
        Signature { ops: self.ops.iter().map(|o| (o.symbol.clone(), o.arity)).collect() }
    }

    pub fn apply(&self, symbol: &str, args: &[usize]) -> Result<usize, ModelError> {
        let op = self.op(symbol).ok_or_else(|| ModelError::MissingOperation(symbol.to_string()))?;
        Ok(op.apply(self.size, args))
    }

    /// The same universe with only the listed operations kept.
    pub fn reduct(&self, symbols: &[&str]) -> Result<Self, ModelError> {
        let ops = symbols
            .iter()
            .map(|s| self.op(s).cloned().ok_or_else(|| ModelError::MissingOperation(s.to_string())))
            .collect::<Result<_, _>>()?;
        Self::new(self.size, ops)
    }

    /// `{"size": n, "ops": {"*": [[..]], "inv": [..], "1": k}}`
    pub fn to_json(&self) -> Value {
        let n = self.size;
        let mut ops = Map::new();
        for op in &self.ops {
            let v = match op.arity {
                0 => json!(op.table[0]),
                1 => json!(op.table),
                2 => json!(op.table.chunks(n).collect::<Vec<_>>()),
                _ => json!(op.table),
            };
            ops.insert(op.symbol.clone(), v);
        }
        json!({ "size": n, "ops": ops })
    }

    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        let bad = |m: &str| ModelError::BadAlgebra(m.to_string());
        let size = v.get("size").and_then(Value::as_u64).ok_or_else(|| bad("missing \"size\""))? as usize;
        let ops_obj = v.get("ops").and_then(Value::as_object).ok_or_else(|| bad("missing \"ops\" object"))?;
        let entry = |x: &Value| x.as_u64().map(|k| k as usize).ok_or_else(|| bad("table entries must be integers"));
        let mut ops = Vec::new();
        for (symbol, table) in ops_obj {
            let op = match table {
                Value::Number(_) => Operation { symbol: symbol.clone(), arity: 0, table: vec![entry(table)?] },
                Value::Array(rows) if rows.first().is_some_and(Value::is_array) => {
                    let mut flat = Vec::with_capacity(size * size);
                    for row in rows {
                        let row = row.as_array().ok_or_else(|| bad("binary table rows must be arrays"))?;
                        if row.len() != size {
                            return Err(bad(&format!("row of {symbol:?} has {} entries, expected {size}", row.len())));
                        }
                        for x in row {
                            flat.push(entry(x)?);
                        }
                    }
                    Operation { symbol: symbol.clone(), arity: 2, table: flat }
                }
                Value::Array(items) if size == 0 || items.len() == size => Operation {
                    symbol: symbol.clone(),
                    arity: 1,
                    table: items.iter().map(entry).collect::<Result<_, _>>()?,
                },
                _ => return Err(bad(&format!("cannot read table for {symbol:?}"))),
            };
            ops.push(op);
        }
        Self::new(size, ops)
    }

    /// Quotient by a partition given as a block id per element, with blocks
    /// numbered `0..k` in order of first appearance. The caller guarantees
    /// compatibility.
    pub(crate) fn quotient_by_blocks(&self, blocks: &[usize], count: usize) -> Self {
        let mut rep = vec![usize::MAX; count];
        for (x, &b) in blocks.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = x;
            }
        }
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let cells = count.pow(op.arity as u32);
                let mut args = vec![0; op.arity];
                let table = (0..cells)
                    .map(|mut idx| {
                        for slot in args.iter_mut().rev() {
                            *slot = rep[idx % count];
                            idx /= count;
                        }
                        blocks[op.apply(self.size, &args)]
                    })
                    .collect();
                Operation { symbol: op.symbol.clone(), arity: op.arity, table }
            })
            .collect();
        FiniteAlgebra { size: count, ops }
    }
}

/// First bijection `a → b` preserving every operation, found by backtracking
/// in element order with partial-table checks.
pub fn algebra_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size != b.size || a.ops.len() != b.ops.len() {
        return None;
    }
    let pairs: Vec<(&Operation, &Operation)> =
        a.ops.iter().map(|o| b.op(&o.symbol).filter(|p| p.arity == o.arity).map(|p| (o, p))).collect::<Option<_>>()?;
    let mut map = vec![usize::MAX; a.size];
    let mut used = vec![false; b.size];
    for (oa, ob) in &pairs {
        if oa.arity == 0 {
            map[oa.table[0]] = ob.table[0];
            used[ob.table[0]] = true;
        }
    }
    // constants must be consistent with each other
    for (oa, ob) in &pairs {
        if oa.arity == 0 && map[oa.table[0]] != ob.table[0] {
            return None;
        }
    }
    if extend_iso(a, b, &pairs, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

fn consistent(a: &FiniteAlgebra, pairs: &[(&Operation, &Operation)], map: &[usize]) -> bool {
    let n = a.size;
    let mut args = Vec::new();
    let mut image = Vec::new();
    for (oa, ob) in pairs {
        let cells = n.pow(oa.arity as u32);
        args.resize(oa.arity, 0);
        image.resize(oa.arity, 0);
        'cell: for mut idx in 0..cells {
            for k in (0..oa.arity).rev() {
                args[k] = idx % n;
                idx /= n;
                if map[args[k]] == usize::MAX {
                    continue 'cell;
                }
                image[k] = map[args[k]];
            }
            let r = oa.apply(n, &args);
            if map[r] != usize::MAX && map[r] != ob.apply(n, &image) {
                return false;
            }
        }
    }
    true
}

fn extend_iso(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    pairs: &[(&Operation, &Operation)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let Some(x) = (next..a.size).find(|&x| map[x] == usize::MAX) else {
        return consistent(a, pairs, map);
    };
    for y in 0..b.size {
        if used[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, pairs, map) && extend_iso(a, b, pairs, map, used, x + 1) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}
