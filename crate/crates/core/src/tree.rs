//! Proportions between terms in the term algebra: Huet's least general
//! generalization, the variable-set criterion for arrows and proportions, and
//! the exact solver for `p→q :· r→𝔵`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::terms::{canonical_rename, generalizes, Substitution, Term, Var};

/// The injective map χ from ordered term pairs to variables. Pairs receive
/// variables in order of first request, starting above every reserved index.
#[derive(Clone, Debug, Default)]
pub struct PairVariableMap {
    map: HashMap<(Term, Term), Var>,
    next: u32,
}

impl PairVariableMap {
    /// A map whose variables start at `x1`.
    pub fn new() -> Self {
        PairVariableMap {
            map: HashMap::new(),
            next: 1,
        }
    }

    /// A map whose variables avoid every variable of `terms`.
    pub fn avoiding<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Self {
        let top = terms
            .into_iter()
            .flat_map(|t| t.vars())
            .map(|v| v.0)
            .max()
            .unwrap_or(0);
        PairVariableMap {
            map: HashMap::new(),
            next: top + 1,
        }
    }

    /// χ(p, q).
    pub fn var_for(&mut self, p: &Term, q: &Term) -> Var {
        let next = &mut self.next;
        *self.map.entry((p.clone(), q.clone())).or_insert_with(|| {
            let v = Var(*next);
            *next += 1;
            v
        })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// `p ⇑_χ q`.
pub fn lgg(p: &Term, q: &Term, chi: &mut PairVariableMap) -> Term {
    if p == q {
        return p.clone();
    }
    match (p, q) {
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
            let children = xs.iter().zip(ys).map(|(x, y)| lgg(x, y, chi)).collect();
            Term::App(f.clone(), children)
        }
        _ => Term::Var(chi.var_for(p, q)),
    }
}

/// `X_S(s) = X(s) − X(S)`.
pub fn fresh_vars<'a>(set: impl IntoIterator<Item = &'a Term>, s: &Term) -> BTreeSet<Var> {
    let mut vars = s.vars();
    for t in set {
        for v in t.vars() {
            vars.remove(&v);
        }
    }
    vars
}

fn lgg_var_sets(p: &Term, q: &Term, r: &Term, u: &Term) -> (BTreeSet<Var>, BTreeSet<Var>) {
    let mut chi = PairVariableMap::avoiding([p, q, r, u]);
    let pr = lgg(p, r, &mut chi);
    let qu = lgg(q, u, &mut chi);
    let set = [p, q, r, u];
    (fresh_vars(set, &pr), fresh_vars(set, &qu))
}

/// Sufficient condition for `p→q :· r→u` in the term algebra: the fresh
/// variables of `q⇑u` are among those of `p⇑r` under a shared χ. A `false`
/// answer means the arrow is not established, not that it fails.
pub fn check_tree_arrow(p: &Term, q: &Term, r: &Term, u: &Term) -> bool {
    let (pr, qu) = lgg_var_sets(p, q, r, u);
    qu.is_subset(&pr)
}

/// Sufficient condition for `p:q::r:u`: both fresh variable sets coincide.
pub fn check_tree_proportion(p: &Term, q: &Term, r: &Term, u: &Term) -> bool {
    let (pr, qu) = lgg_var_sets(p, q, r, u);
    pr == qu
}

/// `o(s,p)`, the unique assignment with `s(o(s,p)) = p`.
pub fn unique_match(s: &Term, p: &Term) -> Result<Substitution> {
    generalizes(s, p).ok_or_else(|| Error::Precondition(format!("{s} does not generalize {p}")))
}

/// Every way of cutting disjoint subterms out of `w`: the skeleton, with each
/// cut marked by the placeholder variable `Var(u32::MAX)`, and the cut
/// subterms from left to right.
fn cuts(w: &Term) -> Vec<(Term, Vec<Term>)> {
    let mut res = vec![(Term::Var(Var(u32::MAX)), vec![w.clone()])];
    if let Term::App(f, cs) = w {
        let mut partial: Vec<(Vec<Term>, Vec<Term>)> = vec![(vec![], vec![])];
        for c in cs {
            let options = cuts(c);
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for (kids, hs) in &partial {
                for (t, h) in &options {
                    let mut kids = kids.clone();
                    kids.push(t.clone());
                    let mut hs = hs.clone();
                    hs.extend(h.iter().cloned());
                    next.push((kids, hs));
                }
            }
            partial = next;
        }
        res.extend(partial.into_iter().map(|(kids, hs)| (Term::App(f.clone(), kids), hs)));
    }
    res
}

/// Replaces the placeholder holes of `skel`, left to right, by `vars`.
fn fill(skel: &Term, vars: &[Var], next: &mut usize) -> Term {
    match skel {
        Term::Var(Var(u32::MAX)) => {
            let v = vars[*next];
            *next += 1;
            Term::Var(v)
        }
        Term::Var(v) => Term::Var(*v),
        Term::App(f, cs) => Term::App(f.clone(), cs.iter().map(|c| fill(c, vars, next)).collect()),
    }
}

/// All set partitions of `items` restricted to blocks of equal terms, given
/// as block labels per item.
fn equal_partitions(items: &[Term]) -> Vec<Vec<usize>> {
    fn go(i: usize, items: &[Term], labels: &mut Vec<usize>, reps: &mut Vec<Term>, out: &mut Vec<Vec<usize>>) {
        if i == items.len() {
            out.push(labels.clone());
            return;
        }
        for b in 0..reps.len() {
            if reps[b] == items[i] {
                labels.push(b);
                go(i + 1, items, labels, reps, out);
                labels.pop();
            }
        }
        reps.push(items[i].clone());
        labels.push(reps.len() - 1);
        go(i + 1, items, labels, reps, out);
        labels.pop();
        reps.pop();
    }
    let mut out = Vec::new();
    go(0, items, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `↑w` modulo renaming: every term that has `w` as an instance, canonically
/// renamed. Each generalization arises by cutting out a set of disjoint
/// subterms and abstracting groups of equal cut subterms to shared variables.
pub fn generalization_filter(w: &Term) -> BTreeSet<Term> {
    let base = w.vars().iter().map(|v| v.0).max().unwrap_or(0) + 1;
    let mut out = BTreeSet::new();
    for (skel, holes) in cuts(w) {
        for labels in equal_partitions(&holes) {
            let vars: Vec<Var> = labels.iter().map(|&b| Var(base + b as u32)).collect();
            let s = fill(&skel, &vars, &mut 0);
            out.insert(canonical_rename(&[&s]).remove(0));
        }
    }
    out
}

/// `↑^o q = { t | t(o) = q }`, where `o` acts as the identity outside its
/// domain. The set is finite: at every node of `q` a term either copies the
/// node or is a domain variable whose image is that whole subterm.
pub fn inverse_image(q: &Term, o: &Substitution) -> BTreeSet<Term> {
    let mut out: BTreeSet<Term> = o
        .iter()
        .filter(|(_, image)| *image == q)
        .map(|(v, _)| Term::Var(*v))
        .collect();
    match q {
        Term::Var(v) => {
            if o.get(*v).is_none() {
                out.insert(q.clone());
            }
        }
        Term::App(f, cs) => {
            let mut partial: Vec<Vec<Term>> = vec![vec![]];
            for c in cs {
                let options = inverse_image(c, o);
                partial = partial
                    .iter()
                    .flat_map(|kids| {
                        options.iter().map(move |t| {
                            let mut kids = kids.clone();
                            kids.push(t.clone());
                            kids
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|kids| Term::App(f.clone(), kids)));
        }
    }
    out
}

/// The exact solution set `𝒮(p→q :· r→𝔵)` in the term algebra: the union over
/// `s ∈ ↑(p⇑r)` of `{ t(o(s,r)) | t ∈ ↑^{o(s,p)} q, X(t) ⊆ X(s) }`.
pub fn solve_tree_equation(p: &Term, q: &Term, r: &Term) -> BTreeSet<Term> {
    let mut chi = PairVariableMap::avoiding([p, q, r]);
    let w = lgg(p, r, &mut chi);
    let shift = [p, q, r, &w]
        .iter()
        .flat_map(|t| t.vars())
        .map(|v| v.0)
        .max()
        .unwrap_or(0);
    let mut out = BTreeSet::new();
    for s in generalization_filter(&w) {
        let renaming: BTreeMap<Var, Var> = s.vars().into_iter().map(|v| (v, Var(v.0 + shift))).collect();
        let s = s.rename(&renaming);
        let (Some(op), Some(or)) = (generalizes(&s, p), generalizes(&s, r)) else {
            continue;
        };
        let xs = s.vars();
        for t in inverse_image(q, &op) {
            if t.vars().is_subset(&xs) {
                out.insert(t.substitute(&or));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn huet_generalization() {
        let mut chi = PairVariableMap::new();
        assert_eq!(lgg(&t("f(a,a,a)"), &t("f(a,b,c)"), &mut chi), t("f(a,x1,x2)"));
        assert_eq!(lgg(&t("g(a,a)"), &t("g(b,b)"), &mut chi), t("g(x1,x1)"));
        assert_eq!(lgg(&t("g(a,c)"), &t("g(b,a)"), &mut chi), t("g(x1,x3)"));
        let s = t("f(a,g(x1))");
        assert_eq!(lgg(&s, &s, &mut PairVariableMap::new()), s);
    }

    #[test]
    fn fresh_variable_sets() {
        let s = t("f(a,x1,x2)");
        assert_eq!(fresh_vars([&t("a")], &s), BTreeSet::from([Var(1), Var(2)]));
        assert_eq!(fresh_vars([&t("f(x1,a)")], &t("f(x1,x2)")), BTreeSet::from([Var(2)]));
        assert!(fresh_vars([&s], &t("b")).is_empty());
    }

    #[test]
    fn tree_arrows() {
        let (p, r, u) = (t("f(a,a,a)"), t("f(a,b,c)"), t("f(a,c,b)"));
        assert!(check_tree_arrow(&p, &p, &r, &u));
        assert!(check_tree_proportion(&p, &p, &r, &u));
        assert!(check_tree_arrow(&p, &r, &p, &r));
        assert!(check_tree_proportion(&p, &p, &r, &r));
        let [a, b, c, d] = ["a", "b", "c", "d"].map(t);
        assert!(!check_tree_arrow(&a, &b, &c, &d));
        assert!(!check_tree_proportion(&a, &b, &c, &d));
    }

    #[test]
    fn matches() {
        let o = unique_match(&t("f(a,x1,x2)"), &t("f(a,b,c)")).unwrap();
        assert_eq!(o.get(Var(1)), Some(&t("b")));
        assert_eq!(o.get(Var(2)), Some(&t("c")));
        assert_eq!(unique_match(&t("x1"), &t("f(a)")).unwrap().get(Var(1)), Some(&t("f(a)")));
        assert!(unique_match(&t("g(x1)"), &t("f(a)")).is_err());
    }

    #[test]
    fn filters() {
        assert_eq!(generalization_filter(&t("a")), BTreeSet::from([t("a"), t("x1")]));
        let g = generalization_filter(&t("f(a,b)"));
        for s in ["f(a,b)", "f(x1,b)", "f(a,x1)", "f(x1,x2)", "x1"] {
            assert!(g.contains(&t(s)), "{s}");
        }
        assert_eq!(g.len(), 5);
        let g = generalization_filter(&t("f(a,a)"));
        assert!(g.contains(&t("f(x1,x1)")) && g.contains(&t("f(x1,x2)")));
        assert_eq!(g.len(), 6);
        let w = t("f(x1,g(x1))");
        assert!(generalization_filter(&w).contains(&w));
    }

    #[test]
    fn inverse_images() {
        let o: Substitution = [(Var(1), t("a"))].into_iter().collect();
        let got = inverse_image(&t("f(a,a)"), &o);
        let want: BTreeSet<Term> = ["f(a,a)", "f(x1,a)", "f(a,x1)", "f(x1,x1)"].map(t).into();
        assert_eq!(got, want);
        assert_eq!(inverse_image(&t("f(a,b)"), &Substitution::new()), BTreeSet::from([t("f(a,b)")]));
        assert_eq!(inverse_image(&t("b"), &o), BTreeSet::from([t("b")]));
    }

    #[test]
    fn solving_term_equations() {
        let (p, r) = (t("f(a,a,a)"), t("f(a,b,c)"));
        let sols = solve_tree_equation(&p, &p, &r);
        assert!(sols.contains(&t("f(a,c,b)")));
        assert!(sols.contains(&t("f(c,b,a)")));
        assert!(sols.contains(&r));
        let q = t("g(b)");
        assert!(solve_tree_equation(&p, &q, &p).contains(&q));
        for u in &sols {
            assert!(check_tree_arrow(&p, &p, &r, u), "{u}");
        }
    }
}
