//! Table-driven finite algebras and their JSON file format.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{eval, Algebra, Assignment, Counting, Solutions};
use crate::error::{Error, Result};
use crate::terms::{Signature, Symbol, Term, Var};

/// One operation of positive arity. The table is indexed lexicographically by
/// argument tuple: `args[0]` is the most significant digit in base `|A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub symbol: Symbol,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    /// Tabulates `f` over all argument tuples of a carrier of size `n`.
    pub fn from_fn(symbol: &str, arity: usize, n: usize, f: impl Fn(&[usize]) -> usize) -> Operation {
        let rows = n.pow(arity as u32);
        let mut args = vec![0; arity];
        let table = (0..rows)
            .map(|idx| {
                decode(idx, n, &mut args);
                f(&args)
            })
            .collect();
        Operation {
            symbol: Symbol::new(symbol),
            arity,
            table,
        }
    }

    fn index(&self, n: usize, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * n + a)
    }
}

/// Writes the base-`n` digits of `idx` into `out` (most significant first).
fn decode(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// A finite algebra with elements addressed by dense index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    carrier: Vec<String>,
    constants: Vec<(Symbol, usize)>,
    ops: Vec<Operation>,
}

impl FiniteAlgebra {
    /// Validates and builds an algebra. Constants are kept sorted by symbol.
    pub fn new(
        name: &str,
        carrier: Vec<String>,
        constants: Vec<(Symbol, usize)>,
        ops: Vec<Operation>,
    ) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("the carrier is empty".into()));
        }
        let mut labels = HashSet::new();
        for l in &carrier {
            if !labels.insert(l.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate carrier label `{l}`")));
            }
        }
        let mut seen = HashSet::new();
        for (s, v) in &constants {
            check_symbol_name(s)?;
            if !seen.insert(s.clone()) {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
            if *v >= n {
                return Err(Error::InvalidAlgebra(format!("constant `{s}` points outside the carrier")));
            }
        }
        for op in &ops {
            check_symbol_name(&op.symbol)?;
            if !seen.insert(op.symbol.clone()) {
                return Err(Error::DuplicateSymbol(op.symbol.to_string()));
            }
            if op.arity == 0 {
                return Err(Error::InvalidAlgebra(format!(
                    "operation `{}` has arity 0; declare it as a constant",
                    op.symbol
                )));
            }
            if op.table.len() != n.pow(op.arity as u32) {
                return Err(Error::InvalidAlgebra(format!("operation `{}` has a partial table", op.symbol)));
            }
            if op.table.iter().any(|&v| v >= n) {
                return Err(Error::InvalidAlgebra(format!(
                    "operation `{}` leaves the carrier",
                    op.symbol
                )));
            }
        }
        let mut constants = constants;
        constants.sort();
        Ok(FiniteAlgebra {
            name: name.to_string(),
            carrier,
            constants,
            ops,
        })
    }

    /// Convenience constructor with labels given as string slices.
    pub fn build(
        name: &str,
        carrier: &[&str],
        constants: &[(&str, &str)],
        ops: Vec<Operation>,
    ) -> Result<Self> {
        let carrier: Vec<String> = carrier.iter().map(|s| s.to_string()).collect();
        let constants = constants
            .iter()
            .map(|(s, l)| {
                let idx = carrier
                    .iter()
                    .position(|c| c == l)
                    .ok_or_else(|| Error::UnknownElement(l.to_string()))?;
                Ok((Symbol::new(s), idx))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(name, carrier, constants, ops)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.carrier
    }

    pub fn label(&self, i: usize) -> &str {
        &self.carrier[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.carrier
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn constants(&self) -> &[(Symbol, usize)] {
        &self.constants
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn signature(&self) -> Signature {
        let syms = self
            .constants
            .iter()
            .map(|(s, _)| (s.clone(), 0))
            .chain(self.ops.iter().map(|o| (o.symbol.clone(), o.arity)));
        Signature::new(syms).expect("symbols validated at construction")
    }

    pub fn constant(&self, symbol: &Symbol) -> Option<usize> {
        self.constants.iter().find(|(s, _)| s == symbol).map(|(_, v)| *v)
    }

    pub fn operation(&self, symbol: &Symbol) -> Option<&Operation> {
        self.ops.iter().find(|o| &o.symbol == symbol)
    }

    /// Table lookup for operation number `op`.
    pub fn apply_op(&self, op: usize, args: &[usize]) -> usize {
        let o = &self.ops[op];
        o.table[o.index(self.size(), args)]
    }

    /// An algebra on `n` elements labelled `e0, e1, ...` whose constants and
    /// operation tables are drawn uniformly from `rng`. Symbols of arity 0
    /// become constants.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, symbols: &[(&str, usize)]) -> Result<FiniteAlgebra> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("the carrier is empty".into()));
        }
        let carrier: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut constants = Vec::new();
        let mut ops = Vec::new();
        for &(name, arity) in symbols {
            if arity == 0 {
                constants.push((Symbol::new(name), rng.gen_range(0..n)));
            } else {
                let table = (0..n.pow(arity as u32)).map(|_| rng.gen_range(0..n)).collect();
                ops.push(Operation {
                    symbol: Symbol::new(name),
                    arity,
                    table,
                });
            }
        }
        FiniteAlgebra::new("random", carrier, constants, ops)
    }

    /// The algebra transported along the bijection `i ↦ perm[i]`; element
    /// `perm[i]` of the result carries the label of element `i`.
    pub fn transport(&self, perm: &[usize]) -> Result<FiniteAlgebra> {
        let n = self.size();
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Precondition("not a permutation of the carrier".into()));
            }
            inv[p] = i;
        }
        if perm.len() != n {
            return Err(Error::Precondition("not a permutation of the carrier".into()));
        }
        let carrier = (0..n).map(|j| self.carrier[inv[j]].clone()).collect();
        let constants = self.constants.iter().map(|(s, v)| (s.clone(), perm[*v])).collect();
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(k, o)| {
                Operation::from_fn(o.symbol.as_str(), o.arity, n, |args| {
                    let pre: Vec<usize> = args.iter().map(|&a| inv[a]).collect();
                    perm[self.apply_op(k, &pre)]
                })
            })
            .collect();
        FiniteAlgebra::new(&self.name, carrier, constants, ops)
    }

    /// The direct product with `other` (same signature), labelled `(x,y)`.
    /// Element `(i, j)` has index `i * |other| + j`.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        if self.signature() != other.signature() {
            return Err(Error::Precondition("product of algebras with different signatures".into()));
        }
        let m = other.size();
        let carrier = self
            .carrier
            .iter()
            .flat_map(|x| other.carrier.iter().map(move |y| format!("({x},{y})")))
            .collect();
        let constants = self
            .constants
            .iter()
            .map(|(s, v)| (s.clone(), v * m + other.constant(s).expect("same signature")))
            .collect();
        let n = self.size() * m;
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let k2 = other.ops.iter().position(|p| p.symbol == o.symbol).expect("same signature");
                Operation::from_fn(o.symbol.as_str(), o.arity, n, |args| {
                    let left: Vec<usize> = args.iter().map(|a| a / m).collect();
                    let right: Vec<usize> = args.iter().map(|a| a % m).collect();
                    self.apply_op(k, &left) * m + other.apply_op(k2, &right)
                })
            })
            .collect();
        FiniteAlgebra::new(&format!("{}x{}", self.name, other.name), carrier, constants, ops)
    }

    /// All assignments of the given variables, in lexicographic order.
    pub fn assignments(&self, vars: &[Var]) -> impl Iterator<Item = Assignment<usize>> + '_ {
        let n = self.size();
        let total = n.checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
        let vars = vars.to_vec();
        (0..total).map(move |idx| {
            let mut digits = vec![0; vars.len()];
            decode(idx, n, &mut digits);
            vars.iter().copied().zip(digits).collect()
        })
    }

    /// Serializes to the canonical file representation.
    pub fn to_file(&self) -> AlgebraFile {
        let n = self.size();
        AlgebraFile {
            name: self.name.clone(),
            carrier: self.carrier.clone(),
            constants: self
                .constants
                .iter()
                .map(|(s, v)| (s.to_string(), self.carrier[*v].clone()))
                .collect(),
            ops: self
                .ops
                .iter()
                .map(|o| {
                    let mut args = vec![0; o.arity];
                    OpFile {
                        symbol: o.symbol.to_string(),
                        arity: o.arity,
                        table: o
                            .table
                            .iter()
                            .enumerate()
                            .map(|(idx, &v)| {
                                decode(idx, n, &mut args);
                                RowFile {
                                    args: args.iter().map(|&a| self.carrier[a].clone()).collect(),
                                    value: self.carrier[v].clone(),
                                }
                            })
                            .collect(),
                    }
                })
                .collect(),
        }
    }

    /// Validates a parsed file: every label known, every tuple present once.
    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let carrier = file.carrier.clone();
        let lookup = |l: &str, ctx: &str| -> Result<usize> {
            carrier
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| Error::InvalidAlgebra(format!("{ctx}: unknown element `{l}`")))
        };
        let n = carrier.len();
        let constants = file
            .constants
            .iter()
            .map(|(s, l)| Ok((Symbol::new(s), lookup(l, &format!("constant `{s}`"))?)))
            .collect::<Result<Vec<_>>>()?;
        let mut ops = Vec::new();
        for op in &file.ops {
            if op.arity == 0 {
                return Err(Error::InvalidAlgebra(format!(
                    "operation `{}` has arity 0; declare it under `constants`",
                    op.symbol
                )));
            }
            let rows = n.pow(op.arity as u32);
            let mut table: Vec<Option<usize>> = vec![None; rows];
            for (r, row) in op.table.iter().enumerate() {
                let ctx = format!("operation `{}`, row {}", op.symbol, r + 1);
                if row.args.len() != op.arity {
                    return Err(Error::InvalidAlgebra(format!(
                        "{ctx}: expected {} argument(s), found {}",
                        op.arity,
                        row.args.len()
                    )));
                }
                let idx = row
                    .args
                    .iter()
                    .try_fold(0, |acc, a| Ok::<_, Error>(acc * n + lookup(a, &ctx)?))?;
                let value = lookup(&row.value, &ctx)?;
                if table[idx].replace(value).is_some() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{ctx}: duplicate row for ({})",
                        row.args.join(",")
                    )));
                }
            }
            let mut args = vec![0; op.arity];
            let table = table
                .into_iter()
                .enumerate()
                .map(|(idx, v)| {
                    v.ok_or_else(|| {
                        decode(idx, n, &mut args);
                        let tuple: Vec<&str> = args.iter().map(|&a| carrier[a].as_str()).collect();
                        Error::InvalidAlgebra(format!(
                            "operation `{}` is missing the row for ({})",
                            op.symbol,
                            tuple.join(",")
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ops.push(Operation {
                symbol: Symbol::new(&op.symbol),
                arity: op.arity,
                table,
            });
        }
        FiniteAlgebra::new(&file.name, carrier, constants, ops)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidAlgebra(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        FiniteAlgebra::from_file(&file)
    }
}

fn check_symbol_name(s: &Symbol) -> Result<()> {
    let name = s.as_str();
    if name.is_empty()
        || Var::from_name(name).is_some()
        || name.contains("->")
        || name.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
    {
        return Err(Error::InvalidAlgebra(format!("`{name}` is not a valid symbol name")));
    }
    Ok(())
}

/// On-disk representation of a finite algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub carrier: Vec<String>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    #[serde(default)]
    pub ops: Vec<OpFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpFile {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<RowFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowFile {
    pub args: Vec<String>,
    pub value: String,
}

impl Algebra for FiniteAlgebra {
    type Elem = usize;

    fn apply(&self, symbol: &Symbol, args: &[usize]) -> Result<usize> {
        if args.is_empty() {
            if let Some(v) = self.constant(symbol) {
                return Ok(v);
            }
        }
        let k = self
            .ops
            .iter()
            .position(|o| &o.symbol == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        let op = &self.ops[k];
        if op.arity != args.len() {
            return Err(Error::Arity {
                symbol: symbol.to_string(),
                expected: op.arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        Ok(self.apply_op(k, args))
    }
}

impl Counting for FiniteAlgebra {
    fn solutions(&self, s: &Term, a: &usize) -> Result<Solutions<usize>> {
        Ok(Solutions::Finite(solution_set(s, *a, self)?))
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        let vars: Vec<Var> = t.vars().into_iter().collect();
        let mut seen = HashSet::new();
        for alpha in self.assignments(&vars) {
            if !seen.insert(eval(t, &alpha, self)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// ⟨s,a⟩ over a finite algebra, by exhaustive scan of assignments to X(s).
pub fn solution_set(s: &Term, a: usize, algebra: &FiniteAlgebra) -> Result<Vec<Assignment<usize>>> {
    let vars: Vec<Var> = s.vars().into_iter().collect();
    let mut out = Vec::new();
    for alpha in algebra.assignments(&vars) {
        if eval(s, &alpha, algebra)? == a {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// Whether `h` (indexed by element of `a`) commutes with every operation and
/// constant. Algebras with different signatures are never related.
pub fn check_homomorphism(h: &[usize], a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    if h.len() != a.size() || h.iter().any(|&x| x >= b.size()) || a.signature() != b.signature() {
        return false;
    }
    let consts_ok = a.constants().iter().all(|(s, v)| b.constant(s) == Some(h[*v]));
    consts_ok
        && a.operations().iter().enumerate().all(|(k, op)| {
            let kb = b.operations().iter().position(|o| o.symbol == op.symbol).expect("same signature");
            let mut args = vec![0; op.arity];
            (0..op.table.len()).all(|idx| {
                decode(idx, a.size(), &mut args);
                let mapped: Vec<usize> = args.iter().map(|&x| h[x]).collect();
                h[a.apply_op(k, &args)] == b.apply_op(kb, &mapped)
            })
        })
}
