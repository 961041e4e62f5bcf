//! A brute-force reference: terms are enumerated level by level and
//! evaluated with [`eval`], and arrow proportions are decided by literal set
//! comparisons over the resulting rule universe.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::algebra::{eval, Assignment, FiniteAlgebra};
use crate::decider::{Reason, Verdict};
use crate::error::{Error, Result};
use crate::terms::{RewriteRule, Signature, Term, Var};

fn occurrences_ok(t: &Term, k: usize, l: Option<usize>) -> bool {
    match l {
        None => true,
        Some(l) => (1..=k as u32).all(|i| t.count_occurrences(Var(i)) <= l),
    }
}

/// Every term over `x1..xk` of depth at most `depth` in which no variable
/// occurs more than `l` times. Terms are listed by depth; within a depth by
/// symbol in signature order and then by the positions of the children in the
/// list itself. Variables and constants have depth 0.
pub fn enumerate_terms(sig: &Signature, k: usize, l: Option<usize>, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = (1..=k as u32).map(Term::var).collect();
    all.extend(sig.constants().map(|c| Term::App(c.clone(), vec![])));
    all.retain(|t| occurrences_ok(t, k, l));
    let mut depths = vec![0; all.len()];
    for d in 1..=depth {
        let known = all.len();
        let mut level = Vec::new();
        for (f, r) in sig.functions() {
            let mut idx = vec![0usize; r];
            'tuples: loop {
                if idx.iter().any(|&i| depths[i] == d - 1) {
                    let t = Term::App(f.clone(), idx.iter().map(|&i| all[i].clone()).collect());
                    if occurrences_ok(&t, k, l) {
                        level.push(t);
                    }
                }
                for slot in (0..r).rev() {
                    idx[slot] += 1;
                    if idx[slot] < known {
                        continue 'tuples;
                    }
                    idx[slot] = 0;
                }
                break;
            }
        }
        if level.is_empty() {
            break;
        }
        depths.extend(std::iter::repeat_n(d, level.len()));
        all.extend(level);
    }
    all
}

/// Every rule `s→t` over terms from [`enumerate_terms`] with `X(t) ⊆ X(s)`
/// and some assignment `α` with `s(α) = a` and `t(α) = b`.
pub fn oracle_justifications(
    a: usize,
    b: usize,
    algebra: &FiniteAlgebra,
    k: usize,
    l: Option<usize>,
    depth: usize,
) -> Result<Vec<RewriteRule>> {
    let terms = enumerate_terms(&algebra.signature(), k, l, depth);
    let vars: Vec<Var> = (1..=k as u32).map(Var).collect();
    let assignments: Vec<Assignment<usize>> = algebra.assignments(&vars).collect();
    let values = terms
        .iter()
        .map(|t| assignments.iter().map(|al| eval(t, al, algebra)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, s) in terms.iter().enumerate() {
        for (j, t) in terms.iter().enumerate() {
            if !t.vars().is_subset(&s.vars()) {
                continue;
            }
            if (0..assignments.len()).any(|x| values[i][x] == a && values[j][x] == b) {
                out.push(RewriteRule::new(s.clone(), t.clone())?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    values: [Vec<usize>; 2],
    vars: BTreeSet<Var>,
    occ: Vec<usize>,
}

/// The rule universe of a pair of algebras up to a depth bound, with terms
/// of equal behavior (values in both algebras, variables, occurrence counts)
/// merged into one representative of least depth.
#[derive(Clone, Debug)]
pub struct Oracle {
    sizes: [usize; 2],
    terms: Vec<Term>,
    exact: bool,
    levels: usize,
    rules: Vec<(usize, usize)>,
    /// Per side, for every arrow `x→y` (index `x·n + y`), the rules justifying it.
    jus: [Vec<FixedBitSet>; 2],
    trivial: FixedBitSet,
}

impl Oracle {
    pub fn new(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>, depth: usize) -> Result<Self> {
        let sig = a.signature();
        let same = |s: &Signature| s.symbols().iter().cloned().collect::<BTreeSet<_>>();
        if same(&sig) != same(&b.signature()) {
            return Err(Error::InvalidAlgebra("the algebras have different signatures".into()));
        }
        let vars: Vec<Var> = (1..=k as u32).map(Var).collect();
        let algebras = [a, b];
        let assignments: [Vec<Assignment<usize>>; 2] = algebras.map(|alg| alg.assignments(&vars).collect());
        let key_of = |t: &Term| -> Result<Key> {
            let mut values = [Vec::new(), Vec::new()];
            for j in 0..2 {
                values[j] = assignments[j]
                    .iter()
                    .map(|al| eval(t, al, algebras[j]))
                    .collect::<Result<_>>()?;
            }
            let occ = match l {
                Some(_) => vars.iter().map(|&v| t.count_occurrences(v)).collect(),
                None => vec![],
            };
            Ok(Key { values, vars: t.vars(), occ })
        };

        let mut seen: HashMap<Key, usize> = HashMap::new();
        let mut terms: Vec<Term> = Vec::new();
        let mut level_of: Vec<usize> = Vec::new();
        let leaves = (1..=k as u32)
            .map(Term::var)
            .chain(sig.constants().map(|c| Term::App(c.clone(), vec![])));
        for t in leaves {
            if occurrences_ok(&t, k, l) {
                let key = key_of(&t)?;
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(terms.len());
                    terms.push(t);
                    level_of.push(0);
                }
            }
        }
        let mut exact = false;
        let mut levels = 0;
        for d in 1..=depth + 1 {
            let known = terms.len();
            let mut fresh = Vec::new();
            let mut fresh_keys = HashSet::new();
            for (f, r) in sig.functions() {
                let mut idx = vec![0usize; r];
                if known == 0 {
                    break;
                }
                'tuples: loop {
                    if idx.iter().any(|&i| level_of[i] == d - 1) {
                        let t = Term::App(f.clone(), idx.iter().map(|&i| terms[i].clone()).collect());
                        if occurrences_ok(&t, k, l) {
                            let key = key_of(&t)?;
                            if !seen.contains_key(&key) && fresh_keys.insert(key.clone()) {
                                fresh.push((key, t));
                            }
                        }
                    }
                    for slot in (0..r).rev() {
                        idx[slot] += 1;
                        if idx[slot] < known {
                            continue 'tuples;
                        }
                        idx[slot] = 0;
                    }
                    break;
                }
            }
            if fresh.is_empty() {
                exact = true;
                break;
            }
            if d == depth + 1 {
                break;
            }
            levels = d;
            for (key, t) in fresh {
                seen.insert(key, terms.len());
                terms.push(t);
                level_of.push(d);
            }
        }

        // Values are recomputed from the representatives for the rule masks.
        let mut by_term: Vec<Key> = Vec::with_capacity(terms.len());
        for t in &terms {
            by_term.push(key_of(t)?);
        }
        let mut rules = Vec::new();
        for s in 0..terms.len() {
            for t in 0..terms.len() {
                if by_term[t].vars.is_subset(&by_term[s].vars) {
                    rules.push((s, t));
                }
            }
        }
        let sizes = [a.size(), b.size()];
        let mut jus = sizes.map(|n| vec![FixedBitSet::with_capacity(rules.len()); n * n]);
        let mut trivial = FixedBitSet::with_capacity(rules.len());
        for (r, &(s, t)) in rules.iter().enumerate() {
            let mut full = true;
            for j in 0..2 {
                let n = sizes[j];
                let mut hit = vec![false; n * n];
                for (x, y) in by_term[s].values[j].iter().zip(&by_term[t].values[j]) {
                    hit[x * n + y] = true;
                }
                for (p, h) in hit.iter().enumerate() {
                    if *h {
                        jus[j][p].insert(r);
                    }
                }
                full &= hit.iter().all(|&h| h);
            }
            if full {
                trivial.insert(r);
            }
        }
        Ok(Oracle {
            sizes,
            terms,
            exact,
            levels,
            rules,
            jus,
            trivial,
        })
    }

    /// Whether the enumeration reached a level adding no new behavior within
    /// the depth bound, so that every behavior has a representative.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The number of non-empty levels above the leaves.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn representatives(&self) -> &[Term] {
        &self.terms
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    fn rule(&self, r: usize) -> RewriteRule {
        let (s, t) = self.rules[r];
        RewriteRule::new(self.terms[s].clone(), self.terms[t].clone()).expect("vars checked")
    }

    fn arrow(&self, side: usize, a: usize, b: usize, c: usize, d: usize, index: usize) -> Verdict {
        let other = 1 - side;
        let (n, m) = (self.sizes[side], self.sizes[other]);
        let left = &self.jus[side][a * n + b];
        let right = &self.jus[other][c * m + d];
        let make = |holds, reason, witness| Verdict {
            holds,
            reason,
            witness,
            arrow: index,
        };
        let unilateral: FixedBitSet = left | right;
        if unilateral.difference(&self.trivial).next().is_none() {
            return make(true, Reason::AllTrivial, None);
        }
        let shared: FixedBitSet = left & right;
        let nontrivial: Vec<usize> = shared.difference(&self.trivial).collect();
        if nontrivial.is_empty() {
            return make(false, Reason::EmptyIntersection, None);
        }
        for d2 in 0..m {
            if d2 == d {
                continue;
            }
            let other_shared: FixedBitSet = left & &self.jus[other][c * m + d2];
            if shared.is_subset(&other_shared) && !other_shared.is_subset(&shared) {
                return make(false, Reason::NotMaximal { better: d2 }, None);
            }
        }
        let size = |r: usize| self.terms[self.rules[r].0].size() + self.terms[self.rules[r].1].size();
        let best = nontrivial.into_iter().min_by_key(|&r| (size(r), r)).expect("non-empty");
        make(true, Reason::Maximal, Some(self.rule(best)))
    }

    pub fn decide_arrow(&self, a: usize, b: usize, c: usize, d: usize) -> Verdict {
        self.arrow(0, a, b, c, d, 0)
    }

    pub fn decide_proportion(&self, a: usize, b: usize, c: usize, d: usize) -> Verdict {
        let arrows = [
            self.arrow(0, a, b, c, d, 0),
            self.arrow(0, b, a, d, c, 1),
            self.arrow(1, c, d, a, b, 2),
            self.arrow(1, d, c, b, a, 3),
        ];
        match arrows.iter().find(|v| !v.holds) {
            Some(v) => v.clone(),
            None => arrows[0].clone(),
        }
    }

    pub fn solve(&self, a: usize, b: usize, c: usize) -> Vec<usize> {
        (0..self.sizes[1]).filter(|&d| self.decide_proportion(a, b, c, d).holds).collect()
    }
}

/// One-shot reference decision of `a:b::c:d`.
#[allow(clippy::too_many_arguments)]
pub fn oracle_decide(
    q: [usize; 4],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    k: usize,
    l: Option<usize>,
    depth: usize,
) -> Result<Verdict> {
    Ok(Oracle::new(a, b, k, l, depth)?.decide_proportion(q[0], q[1], q[2], q[3]))
}
