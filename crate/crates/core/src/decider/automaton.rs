//! Deterministic behavior automata: every reachable state is the complete
//! evaluation table of some term over all assignments of `x1..xk`.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::terms::{Symbol, Term, Var};

/// Default bound on the number of reachable states.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// The behavior of a term in one or more algebras sharing a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BehaviorState {
    /// One evaluation table per algebra, indexed by the assignment code
    /// `α(x1)·n^(k-1) + … + α(xk)`.
    pub tables: Vec<Box<[u32]>>,
    /// Bit `i` is set when `x(i+1)` occurs.
    pub used: u64,
    /// Occurrence count per variable; empty when occurrences are unbounded.
    pub occ: Box<[u32]>,
}

impl BehaviorState {
    pub fn used_vars(&self) -> BTreeSet<Var> {
        (0..64).filter(|i| self.used >> i & 1 == 1).map(|i| Var(i + 1)).collect()
    }
}

/// How a state was first reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Var(Var),
    Const(Symbol),
    App(usize, Vec<usize>),
}

/// Two algebras have the same ranked symbols (order ignored).
pub fn same_signature(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    let set = |x: &FiniteAlgebra| x.signature().symbols().iter().cloned().collect::<BTreeSet<_>>();
    set(a) == set(b)
}

/// The reachable part of the joint behavior automaton of several algebras
/// for the fragment with `k` variables each occurring at most `l` times.
#[derive(Clone, Debug)]
pub struct BehaviorAutomaton {
    sizes: Vec<usize>,
    k: usize,
    l: Option<usize>,
    /// Function symbols with their rank and, per algebra, the op index.
    functions: Vec<(Symbol, usize, Vec<usize>)>,
    states: Vec<BehaviorState>,
    origins: Vec<Origin>,
    depths: Vec<usize>,
    index: HashMap<BehaviorState, usize>,
    /// Per algebra, the operation tables in `functions` order.
    tables: Vec<Vec<Vec<usize>>>,
}

impl BehaviorAutomaton {
    pub fn build(algebras: &[&FiniteAlgebra], k: usize, l: Option<usize>) -> Result<Self> {
        Self::build_with_cap(algebras, k, l, DEFAULT_STATE_CAP)
    }

    pub fn build_with_cap(algebras: &[&FiniteAlgebra], k: usize, l: Option<usize>, cap: usize) -> Result<Self> {
        let first = algebras
            .first()
            .ok_or_else(|| Error::Precondition("at least one algebra is required".into()))?;
        if let Some(other) = algebras.iter().find(|a| !same_signature(first, a)) {
            return Err(Error::InvalidAlgebra(format!(
                "algebras `{}` and `{}` have different signatures",
                first.name(),
                other.name()
            )));
        }
        if k > 32 {
            return Err(Error::Unsupported(format!("k = {k} variables")));
        }
        let sizes: Vec<usize> = algebras.iter().map(|a| a.size()).collect();
        let rows: Vec<usize> = sizes
            .iter()
            .map(|&n| n.checked_pow(k as u32))
            .collect::<Option<_>>()
            .ok_or(Error::StateCap { cap })?;
        let functions: Vec<(Symbol, usize, Vec<usize>)> = first
            .operations()
            .iter()
            .map(|op| {
                let idx = algebras
                    .iter()
                    .map(|a| a.operations().iter().position(|o| o.symbol == op.symbol).expect("same signature"))
                    .collect();
                (op.symbol.clone(), op.arity, idx)
            })
            .collect();
        let tables = algebras
            .iter()
            .enumerate()
            .map(|(j, a)| functions.iter().map(|(_, _, idx)| a.operations()[idx[j]].table.clone()).collect())
            .collect();
        let mut aut = BehaviorAutomaton {
            sizes: sizes.clone(),
            k,
            l,
            functions,
            states: Vec::new(),
            origins: Vec::new(),
            depths: Vec::new(),
            index: HashMap::new(),
            tables,
        };

        let occ_len = if l.is_some() { k } else { 0 };
        for i in 0..k {
            let tables = sizes
                .iter()
                .zip(&rows)
                .map(|(&n, &r)| (0..r).map(|code| digit(code, n, k, i) as u32).collect())
                .collect();
            let mut occ = vec![0; occ_len].into_boxed_slice();
            if let Some(slot) = occ.get_mut(i) {
                *slot = 1;
            }
            if l == Some(0) {
                continue;
            }
            let st = BehaviorState { tables, used: 1 << i, occ };
            aut.insert(st, Origin::Var(Var(i as u32 + 1)), 0, cap)?;
        }
        for (sym, _) in first.constants() {
            let tables = algebras
                .iter()
                .zip(&rows)
                .map(|(a, &r)| vec![a.constant(sym).expect("same signature") as u32; r].into_boxed_slice())
                .collect();
            let st = BehaviorState {
                tables,
                used: 0,
                occ: vec![0; occ_len].into_boxed_slice(),
            };
            aut.insert(st, Origin::Const(sym.clone()), 0, cap)?;
        }

        // Semi-naive saturation: each round combines at least one state
        // discovered in the previous round.
        let mut lo = 0;
        let mut hi = aut.states.len();
        let mut depth = 0;
        while lo < hi {
            depth += 1;
            for f in 0..aut.functions.len() {
                let r = aut.functions[f].1;
                for first_new in 0..r {
                    let mut tuple = vec![0usize; r];
                    aut.for_tuples(&mut tuple, 0, first_new, lo, hi, &mut |aut, tuple| {
                        if let Some(st) = aut.compute(f, tuple) {
                            if !aut.index.contains_key(&st) {
                                aut.insert(st, Origin::App(f, tuple.to_vec()), depth, cap)?;
                            }
                        }
                        Ok(())
                    })?;
                }
            }
            lo = hi;
            hi = aut.states.len();
        }
        Ok(aut)
    }

    /// Enumerates argument tuples whose first component from the last round
    /// sits at `first_new`: earlier slots take older states, later ones any.
    fn for_tuples(
        &mut self,
        tuple: &mut Vec<usize>,
        pos: usize,
        first_new: usize,
        lo: usize,
        hi: usize,
        f: &mut dyn FnMut(&mut Self, &[usize]) -> Result<()>,
    ) -> Result<()> {
        if pos == tuple.len() {
            return f(self, tuple);
        }
        let range = if pos < first_new {
            0..lo
        } else if pos == first_new {
            lo..hi
        } else {
            0..hi
        };
        for s in range {
            tuple[pos] = s;
            self.for_tuples(tuple, pos + 1, first_new, lo, hi, f)?;
        }
        Ok(())
    }

    fn insert(&mut self, st: BehaviorState, origin: Origin, depth: usize, cap: usize) -> Result<()> {
        if self.index.contains_key(&st) {
            return Ok(());
        }
        if self.states.len() >= cap {
            return Err(Error::StateCap { cap });
        }
        self.index.insert(st.clone(), self.states.len());
        self.states.push(st);
        self.origins.push(origin);
        self.depths.push(depth);
        Ok(())
    }

    /// The state of `f(children)`, or `None` when it leaves the fragment.
    fn compute(&self, f: usize, children: &[usize]) -> Option<BehaviorState> {
        let mut occ = vec![0u32; self.states[children[0]].occ.len()].into_boxed_slice();
        let mut used = 0;
        for &c in children {
            let st = &self.states[c];
            used |= st.used;
            for (o, x) in occ.iter_mut().zip(st.occ.iter()) {
                *o += x;
            }
        }
        if let Some(l) = self.l {
            if occ.iter().any(|&o| o as usize > l) {
                return None;
            }
        }
        let tables = (0..self.sizes.len())
            .map(|j| {
                let n = self.sizes[j];
                let table = &self.tables[j][f];
                let rows = self.states[children[0]].tables[j].len();
                (0..rows)
                    .map(|code| {
                        let idx = children
                            .iter()
                            .fold(0, |acc, &c| acc * n + self.states[c].tables[j][code] as usize);
                        table[idx] as u32
                    })
                    .collect()
            })
            .collect();
        Some(BehaviorState { tables, used, occ })
    }

    /// The transition on function symbol number `f`.
    pub fn step(&self, f: usize, children: &[usize]) -> Option<usize> {
        if children.len() != self.functions.get(f)?.1 {
            return None;
        }
        self.compute(f, children).and_then(|st| self.index.get(&st).copied())
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> Option<usize> {
        self.l
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn states(&self) -> &[BehaviorState] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &BehaviorState {
        &self.states[id]
    }

    /// Function symbols with their ranks, in transition numbering.
    pub fn functions(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.functions.iter().map(|(s, r, _)| (s, *r))
    }

    /// The round in which the state was discovered, which is the least depth
    /// of a term reaching it.
    pub fn depth(&self, id: usize) -> usize {
        self.depths[id]
    }

    /// A term of least depth reaching the state.
    pub fn representative(&self, id: usize) -> Term {
        match &self.origins[id] {
            Origin::Var(v) => Term::Var(*v),
            Origin::Const(s) => Term::App(s.clone(), vec![]),
            Origin::App(f, cs) => Term::App(
                self.functions[*f].0.clone(),
                cs.iter().map(|&c| self.representative(c)).collect(),
            ),
        }
    }

    /// The size of [`representative`](Self::representative).
    pub fn representative_size(&self, id: usize) -> usize {
        match &self.origins[id] {
            Origin::App(_, cs) => 1 + cs.iter().map(|&c| self.representative_size(c)).sum::<usize>(),
            _ => 1,
        }
    }
}

/// Digit `i` (0 = most significant) of `code` written with `k` base-`n` digits.
fn digit(code: usize, n: usize, k: usize, i: usize) -> usize {
    code / n.pow((k - 1 - i) as u32) % n
}
