//! Exact decision, solving and enumeration of `a:b::c:d` over pairs of finite
//! algebras in the `(k,ℓ)` fragment, plus justification verification.

mod automaton;
mod verify;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::Result;
use crate::terms::RewriteRule;

pub use automaton::{same_signature, BehaviorAutomaton, BehaviorState, Origin, DEFAULT_STATE_CAP};
pub use verify::{functional_solve, verify_characteristic, verify_characteristic_proportion};

/// Why an arrow proportion holds or fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reason {
    /// Every justification of either arrow is trivial.
    AllTrivial,
    /// The shared justifications are maximal among all candidate `d′`.
    Maximal,
    /// The shared justifications are strictly contained in those for `better`
    /// (an element of the second algebra of the arrow).
    NotMaximal { better: usize },
    /// No nontrivial justification is shared.
    EmptyIntersection,
}

/// The outcome of an arrow or proportion query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub reason: Reason,
    /// A smallest nontrivial shared justification when `reason` is `Maximal`.
    pub witness: Option<RewriteRule>,
    /// Which of the four arrows the verdict describes: 0 for `a→b :· c→d`,
    /// 1 for `b→a :· d→c`, 2 for `c→d :· a→b`, 3 for `d→c :· b→a`. A holding
    /// proportion reports arrow 0, a failing one its first failing arrow.
    pub arrow: usize,
}

/// The arrows whose conjunction is the proportion: element order and the
/// side (0 for the first algebra) of the left-hand arrow.
const ARROWS: [([usize; 4], usize); 4] = [([0, 1, 2, 3], 0), ([1, 0, 3, 2], 0), ([2, 3, 0, 1], 1), ([3, 2, 1, 0], 1)];

/// One class of rules sharing a behavior in both algebras.
#[derive(Clone, Debug)]
struct RuleClass {
    lhs: usize,
    rhs: usize,
    size: usize,
}

/// The justification structure of a pair of algebras `(𝔄,𝔅)` for one
/// fragment. Rules are grouped by their pair masks: the set of `(a,b)` they
/// justify in `𝔄` and of `(c,d)` in `𝔅`; every decision depends only on these.
#[derive(Clone, Debug)]
pub struct Decider {
    automaton: BehaviorAutomaton,
    classes: Vec<usize>,
    rules: Vec<RuleClass>,
    /// `jus[side][x * n + y]`: rule groups justifying `x → y` on that side.
    jus: [Vec<FixedBitSet>; 2],
    trivial: FixedBitSet,
}

impl Decider {
    pub fn new(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>) -> Result<Self> {
        Self::with_cap(a, b, k, l, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>, cap: usize) -> Result<Self> {
        let automaton = BehaviorAutomaton::build_with_cap(&[a, b], k, l, cap)?;
        Ok(Self::from_automaton(automaton))
    }

    /// Groups the automaton's states into classes by (tables, used
    /// variables) and the admissible class pairs by their pair masks.
    pub fn from_automaton(automaton: BehaviorAutomaton) -> Self {
        // (transition tables, used-variable mask) of a state
        type ClassKey<'a> = (&'a [Box<[u32]>], u64);
        let mut seen: HashMap<ClassKey, usize> = HashMap::new();
        let mut classes = Vec::new();
        for (id, st) in automaton.states().iter().enumerate() {
            seen.entry((&st.tables, st.used)).or_insert_with(|| {
                classes.push(id);
                id
            });
        }
        let sizes = [automaton.sizes()[0], automaton.sizes()[1]];
        let mut groups: HashMap<[FixedBitSet; 2], usize> = HashMap::new();
        let mut rules: Vec<RuleClass> = Vec::new();
        let mut masks: Vec<[FixedBitSet; 2]> = Vec::new();
        for &s in &classes {
            let ss = automaton.state(s);
            for &t in &classes {
                let ts = automaton.state(t);
                if ts.used & !ss.used != 0 {
                    continue;
                }
                let key = [0, 1].map(|j| {
                    let n = sizes[j];
                    let mut m = FixedBitSet::with_capacity(n * n);
                    for (x, y) in ss.tables[j].iter().zip(ts.tables[j].iter()) {
                        m.insert(*x as usize * n + *y as usize);
                    }
                    m
                });
                let size = automaton.representative_size(s) + automaton.representative_size(t);
                match groups.get(&key) {
                    Some(&g) => {
                        if size < rules[g].size {
                            rules[g] = RuleClass { lhs: s, rhs: t, size };
                        }
                    }
                    None => {
                        groups.insert(key.clone(), rules.len());
                        rules.push(RuleClass { lhs: s, rhs: t, size });
                        masks.push(key);
                    }
                }
            }
        }
        let r = rules.len();
        let jus = [0, 1].map(|j| {
            let n = sizes[j];
            (0..n * n)
                .map(|pair| {
                    let mut set = FixedBitSet::with_capacity(r);
                    for (g, m) in masks.iter().enumerate() {
                        if m[j].contains(pair) {
                            set.insert(g);
                        }
                    }
                    set
                })
                .collect()
        });
        let mut trivial = FixedBitSet::with_capacity(r);
        for (g, m) in masks.iter().enumerate() {
            if m[0].is_full() && m[1].is_full() {
                trivial.insert(g);
            }
        }
        Decider {
            automaton,
            classes,
            rules,
            jus,
            trivial,
        }
    }

    pub fn automaton(&self) -> &BehaviorAutomaton {
        &self.automaton
    }

    /// States chosen as representatives of the (tables, used variables)
    /// classes.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// The number of distinct pair-mask groups of admissible rules.
    pub fn rule_groups(&self) -> usize {
        self.rules.len()
    }

    fn size(&self, side: usize) -> usize {
        self.automaton.sizes()[side]
    }

    /// Class pairs `(σ, τ)` (as representative state ids) justifying
    /// `a→b` in the first algebra and `c→d` in the second.
    pub fn justification_classes(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &s in &self.classes {
            let ss = self.automaton.state(s);
            for &t in &self.classes {
                let ts = self.automaton.state(t);
                if ts.used & !ss.used != 0 {
                    continue;
                }
                let hits = |j: usize, x: usize, y: usize| {
                    ss.tables[j]
                        .iter()
                        .zip(ts.tables[j].iter())
                        .any(|(&p, &q)| p as usize == x && q as usize == y)
                };
                if hits(0, a, b) && hits(1, c, d) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// Whether the class pair justifies every arrow in both algebras.
    pub fn is_trivial_class(&self, pair: (usize, usize)) -> bool {
        let (ss, ts) = (self.automaton.state(pair.0), self.automaton.state(pair.1));
        (0..2).all(|j| {
            let n = self.size(j);
            let mut m = FixedBitSet::with_capacity(n * n);
            for (x, y) in ss.tables[j].iter().zip(ts.tables[j].iter()) {
                m.insert(*x as usize * n + *y as usize);
            }
            m.is_full()
        })
    }

    /// Whether every justification of `x→y` (in the first algebra for
    /// `side = 0`, the second for `side = 1`) is trivial in the pair.
    pub fn all_trivial(&self, side: usize, x: usize, y: usize) -> bool {
        self.jus(side, x, y).is_subset(&self.trivial)
    }

    /// The rule realizing a class pair, built from least-depth representatives.
    pub fn class_rule(&self, pair: (usize, usize)) -> RewriteRule {
        RewriteRule::new(self.automaton.representative(pair.0), self.automaton.representative(pair.1))
            .expect("admissible class pairs keep rhs variables within the lhs")
    }

    fn jus(&self, side: usize, x: usize, y: usize) -> &FixedBitSet {
        &self.jus[side][x * self.size(side) + y]
    }

    /// The arrow `a→b :· c→d` where `a,b` live on `side` and `c,d` on the other.
    fn arrow(&self, side: usize, a: usize, b: usize, c: usize, d: usize) -> Verdict {
        let other = 1 - side;
        let left = self.jus(side, a, b);
        let right = self.jus(other, c, d);
        let verdict = |holds, reason, witness| Verdict {
            holds,
            reason,
            witness,
            arrow: 0,
        };
        if left.is_subset(&self.trivial) && right.is_subset(&self.trivial) {
            return verdict(true, Reason::AllTrivial, None);
        }
        let mut shared = left.clone();
        shared.intersect_with(right);
        let mut nontrivial = shared.clone();
        nontrivial.difference_with(&self.trivial);
        if nontrivial.is_clear() {
            return verdict(false, Reason::EmptyIntersection, None);
        }
        for d2 in (0..self.size(other)).filter(|&d2| d2 != d) {
            let mut alt = left.clone();
            alt.intersect_with(self.jus(other, c, d2));
            if shared.is_subset(&alt) && !alt.is_subset(&shared) {
                return verdict(false, Reason::NotMaximal { better: d2 }, None);
            }
        }
        let best = nontrivial.ones().min_by_key(|&g| (self.rules[g].size, g)).expect("non-empty");
        let rule = self.class_rule((self.rules[best].lhs, self.rules[best].rhs));
        verdict(true, Reason::Maximal, Some(rule))
    }

    /// `a→b :· c→d` with `a,b` in the first algebra and `c,d` in the second.
    pub fn decide_arrow(&self, a: usize, b: usize, c: usize, d: usize) -> Verdict {
        self.arrow(0, a, b, c, d)
    }

    /// `a:b::c:d`, the conjunction of its four arrows.
    pub fn decide_proportion(&self, a: usize, b: usize, c: usize, d: usize) -> Verdict {
        let q = [a, b, c, d];
        let mut first = None;
        for (i, (order, side)) in ARROWS.iter().enumerate() {
            let [w, x, y, z] = order.map(|o| q[o]);
            let mut v = self.arrow(*side, w, x, y, z);
            v.arrow = i;
            if !v.holds {
                return v;
            }
            first.get_or_insert(v);
        }
        first.expect("four arrows")
    }

    /// All `d` with `a:b::c:d`.
    pub fn solve(&self, a: usize, b: usize, c: usize) -> Vec<usize> {
        (0..self.size(1)).filter(|&d| self.decide_proportion(a, b, c, d).holds).collect()
    }

    /// Every holding quadruple, in lexicographic order.
    pub fn enumerate_all(&self) -> Vec<[usize; 4]> {
        let (n, m) = (self.size(0), self.size(1));
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..m {
                    for d in 0..m {
                        if self.decide_proportion(a, b, c, d).holds {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }
}

/// The reachable behavior automaton of one algebra.
pub fn behavior_automaton(a: &FiniteAlgebra, k: usize, l: Option<usize>) -> Result<BehaviorAutomaton> {
    BehaviorAutomaton::build(&[a], k, l)
}

/// One-shot form of [`Decider::decide_arrow`].
pub fn decide_arrow(
    q: [usize; 4],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    k: usize,
    l: Option<usize>,
) -> Result<Verdict> {
    Ok(Decider::new(a, b, k, l)?.decide_arrow(q[0], q[1], q[2], q[3]))
}

/// One-shot form of [`Decider::decide_proportion`].
pub fn decide_proportion(
    q: [usize; 4],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    k: usize,
    l: Option<usize>,
) -> Result<Verdict> {
    Ok(Decider::new(a, b, k, l)?.decide_proportion(q[0], q[1], q[2], q[3]))
}

/// One-shot form of [`Decider::solve`].
pub fn solve(
    abc: [usize; 3],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    k: usize,
    l: Option<usize>,
) -> Result<Vec<usize>> {
    Ok(Decider::new(a, b, k, l)?.solve(abc[0], abc[1], abc[2]))
}

/// One-shot form of [`Decider::enumerate_all`].
pub fn enumerate_all(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>) -> Result<Vec<[usize; 4]>> {
    Ok(Decider::new(a, b, k, l)?.enumerate_all())
}
