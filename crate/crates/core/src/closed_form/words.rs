//! Monolinear word proportions and the factor-aligned relation on words.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{Item, WordPattern};
use crate::error::{Error, Result};
use crate::terms::{RewriteRule, Symbol, Var};

/// The split witnessing `a = a1 a2 a3`, `b = b1 a2 b3`, `c = a1 b2 a3`,
/// `d = b1 b2 b3`. Pieces may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFactorization<S> {
    pub a1: Vec<S>,
    pub a2: Vec<S>,
    pub a3: Vec<S>,
    pub b1: Vec<S>,
    pub b2: Vec<S>,
    pub b3: Vec<S>,
}

fn cat<S: Clone>(parts: &[&[S]]) -> Vec<S> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

impl<S: Clone> WordFactorization<S> {
    /// The four words `(a, b, c, d)` the split describes.
    pub fn words(&self) -> [Vec<S>; 4] {
        [
            cat(&[&self.a1, &self.a2, &self.a3]),
            cat(&[&self.b1, &self.a2, &self.b3]),
            cat(&[&self.a1, &self.b2, &self.a3]),
            cat(&[&self.b1, &self.b2, &self.b3]),
        ]
    }
}

/// Calls `f` for every split consistent with `a`, `b`, `c`, stopping when it
/// returns `true`.
fn for_each_split<S: Eq + Clone>(a: &[S], b: &[S], c: &[S], mut f: impl FnMut(WordFactorization<S>) -> bool) {
    for i in 0..=a.len() {
        let a1 = &a[..i];
        if !c.starts_with(a1) {
            continue;
        }
        for j in i..=a.len() {
            let (a2, a3) = (&a[i..j], &a[j..]);
            if c.len() < a1.len() + a3.len() || !c.ends_with(a3) {
                continue;
            }
            let b2 = &c[a1.len()..c.len() - a3.len()];
            if b.len() < a2.len() {
                continue;
            }
            for p in 0..=b.len() - a2.len() {
                if &b[p..p + a2.len()] != a2 {
                    continue;
                }
                let split = WordFactorization {
                    a1: a1.to_vec(),
                    a2: a2.to_vec(),
                    a3: a3.to_vec(),
                    b1: b[..p].to_vec(),
                    b2: b2.to_vec(),
                    b3: b[p + a2.len()..].to_vec(),
                };
                if f(split) {
                    return;
                }
            }
        }
    }
}

/// A witnessing factorization of the monolinear word proportion, if any.
pub fn decide_mono_word<S: Eq + Clone>(a: &[S], b: &[S], c: &[S], d: &[S]) -> Option<WordFactorization<S>> {
    let mut found = None;
    for_each_split(a, b, c, |split| {
        let ok = split.b1.len() + split.b2.len() + split.b3.len() == d.len()
            && d.starts_with(&split.b1)
            && d.ends_with(&split.b3)
            && d[split.b1.len()..d.len() - split.b3.len()] == split.b2[..];
        if ok {
            found = Some(split);
        }
        ok
    });
    found
}

/// All `d` with `a:b::c:d` monolinearly, sorted and deduplicated.
pub fn solve_mono_word<S: Ord + Clone>(a: &[S], b: &[S], c: &[S]) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    for_each_split(a, b, c, |split| {
        out.push(cat(&[&split.b1, &split.b2, &split.b3]));
        false
    });
    out.sort();
    out.dedup();
    out
}

/// Aligned factors `a = a_1…a_n`, ... with `(a_i = b_i ∧ c_i = d_i) ∨
/// (a_i = c_i ∧ b_i = d_i)` at every index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyFactorization<S> {
    pub a: Vec<Vec<S>>,
    pub b: Vec<Vec<S>>,
    pub c: Vec<Vec<S>>,
    pub d: Vec<Vec<S>>,
}

impl<S> SyFactorization<S> {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Whether every factor is a single letter.
    pub fn is_letterwise(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|fs| fs.iter().all(|f| f.len() == 1))
    }
}

fn letterwise<S: Eq + Clone>(a: &[S], b: &[S], c: &[S], d: &[S]) -> Option<SyFactorization<S>> {
    let n = a.len();
    if n == 0 || b.len() != n || c.len() != n || d.len() != n {
        return None;
    }
    let ok = (0..n).all(|i| (a[i] == b[i] && c[i] == d[i]) || (a[i] == c[i] && b[i] == d[i]));
    let split = |w: &[S]| w.iter().map(|x| vec![x.clone()]).collect();
    ok.then(|| SyFactorization {
        a: split(a),
        b: split(b),
        c: split(c),
        d: split(d),
    })
}

/// Searches aligned factorizations by breadth-first search over the four
/// split positions; the letterwise factorization is preferred when it exists.
/// Empty factors are allowed only with `allow_empty` (never all four at once).
pub fn decide_sy_word<S: Eq + Clone>(a: &[S], b: &[S], c: &[S], d: &[S], allow_empty: bool) -> Option<SyFactorization<S>> {
    if let Some(f) = letterwise(a, b, c, d) {
        return Some(f);
    }
    type Pos = (usize, usize, usize, usize);
    let start: Pos = (0, 0, 0, 0);
    let goal: Pos = (a.len(), b.len(), c.len(), d.len());
    let min = usize::from(!allow_empty);
    let mut parent: HashMap<Pos, Pos> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, start);
    while let Some(pos @ (i, j, k, l)) = queue.pop_front() {
        if pos == goal {
            break;
        }
        let mut next = Vec::new();
        // a_i = b_i and c_i = d_i
        for p in min..=(a.len() - i).min(b.len() - j) {
            if a[i..i + p] != b[j..j + p] {
                continue;
            }
            for r in min..=(c.len() - k).min(d.len() - l) {
                if p + r > 0 && c[k..k + r] == d[l..l + r] {
                    next.push((i + p, j + p, k + r, l + r));
                }
            }
        }
        // a_i = c_i and b_i = d_i
        for p in min..=(a.len() - i).min(c.len() - k) {
            if a[i..i + p] != c[k..k + p] {
                continue;
            }
            for q in min..=(b.len() - j).min(d.len() - l) {
                if p + q > 0 && b[j..j + q] == d[l..l + q] {
                    next.push((i + p, j + q, k + p, l + q));
                }
            }
        }
        for n in next {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(n) {
                e.insert(pos);
                queue.push_back(n);
            }
        }
    }
    if !parent.contains_key(&goal) || goal == start {
        return None;
    }
    let mut path = vec![goal];
    while *path.last().expect("non-empty") != start {
        path.push(parent[path.last().expect("non-empty")]);
    }
    path.reverse();
    let mut f = SyFactorization {
        a: vec![],
        b: vec![],
        c: vec![],
        d: vec![],
    };
    for w in path.windows(2) {
        let ((i0, j0, k0, l0), (i1, j1, k1, l1)) = (w[0], w[1]);
        f.a.push(a[i0..i1].to_vec());
        f.b.push(b[j0..j1].to_vec());
        f.c.push(c[k0..k1].to_vec());
        f.d.push(d[l0..l1].to_vec());
    }
    Some(f)
}

/// The characteristic justification of a letterwise aligned proportion.
/// Positions with `a_i = c_i` and `b_i = d_i` keep their letters `a_i → b_i`;
/// every other position `i` becomes the variable `x_i` on both sides. When
/// `a = c` and `b = d` the result is the ground rule `a → b`.
pub fn sy_witness_rule(a: &[Symbol], b: &[Symbol], c: &[Symbol], d: &[Symbol]) -> Result<RewriteRule> {
    let letters = |w: &[Symbol]| WordPattern(w.iter().cloned().map(Item::Letter).collect());
    if a == c && b == d {
        return RewriteRule::new(letters(a).to_term(), letters(b).to_term());
    }
    if letterwise(a, b, c, d).is_none() {
        return Err(Error::Precondition(
            "the words have no letterwise aligned factorization".into(),
        ));
    }
    let mut s = Vec::new();
    let mut t = Vec::new();
    for i in 0..a.len() {
        if a[i] == c[i] && b[i] == d[i] {
            s.push(Item::Letter(a[i].clone()));
            t.push(Item::Letter(b[i].clone()));
        } else {
            let v = Item::Var(Var(i as u32 + 1));
            s.push(v.clone());
            t.push(v);
        }
    }
    RewriteRule::new(WordPattern(s).to_term(), WordPattern(t).to_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn sym(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| Symbol::new(&c.to_string())).collect()
    }

    #[test]
    fn monolinear_examples() {
        assert!(decide_mono_word(&w("ABC"), &w("DBE"), &w("AFC"), &w("DFE")).is_some());
        assert!(decide_mono_word(&w("a"), &w("b"), &w(""), &w("ab")).is_none());
        assert!(decide_mono_word(&w("ab"), &w("ba"), &w("ba"), &w("ab")).is_none());
        let sols = solve_mono_word(&w("abc"), &w("eabcf"), &w("dd"));
        assert!(sols.contains(&w("eddf")));
        assert_eq!(solve_mono_word(&w("abc"), &w("abc"), &w("abc")), vec![w("abc")]);
        assert_eq!(solve_mono_word(&w("ab"), &w("ab"), &w("cd")), vec![w("cd")]);
    }

    #[test]
    fn factorization_reconstructs_inputs() {
        let f = decide_mono_word(&w("ABC"), &w("DBE"), &w("AFC"), &w("DFE")).unwrap();
        assert_eq!(f.words(), [w("ABC"), w("DBE"), w("AFC"), w("DFE")]);
    }

    #[test]
    fn aligned_examples() {
        let f = decide_sy_word(&w("abc"), &w("abd"), &w("bbc"), &w("bbd"), false).unwrap();
        assert!(f.is_letterwise());
        assert_eq!(f.len(), 3);
        let f = decide_sy_word(&w("a"), &w("a"), &w("bb"), &w("bb"), false).unwrap();
        assert_eq!(f.len(), 1);
        assert!(decide_sy_word(&w("ab"), &w("ac"), &w("bc"), &w("cc"), false).is_none());
        assert!(decide_sy_word(&w("ab"), &w("ac"), &w("bc"), &w("cc"), true).is_some());
    }

    #[test]
    fn witness_rules() {
        let r = sy_witness_rule(&sym("abc"), &sym("abd"), &sym("bbc"), &sym("bbd")).unwrap();
        assert_eq!(r.to_string(), "cat(x1,cat(b,c)) -> cat(x1,cat(b,d))");
        let r = sy_witness_rule(&sym("ab"), &sym("ab"), &sym("cb"), &sym("cb")).unwrap();
        assert_eq!(r.to_string(), "cat(x1,b) -> cat(x1,b)");
        let r = sy_witness_rule(&sym("ab"), &sym("abc"), &sym("ab"), &sym("abc")).unwrap();
        assert!(r.lhs().is_ground() && r.rhs().is_ground());
        assert!(sy_witness_rule(&sym("ab"), &sym("ac"), &sym("bc"), &sym("cc")).is_err());
    }
}
