//! First-order terms over a ranked signature, substitutions, matching and
//! rewrite rules.
//!
//! Variables are indexed (`x1`, `x2`, ...). Occurrence positions are Dewey
//! paths of zero-based child indices; the root is the empty path.

mod parse;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::{parse_rule, parse_term};

/// A function or constant symbol name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d).map(Symbol::from)
    }
}

/// The variable `x{n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    /// Parses names of the form `x` followed by one or more digits.
    pub fn from_name(name: &str) -> Option<Var> {
        let digits = name.strip_prefix('x')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A Dewey path of zero-based child indices.
pub type Position = Vec<usize>;

/// A term: a variable or a symbol applied to children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(index: u32) -> Term {
        Term::Var(Var(index))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name), Vec::new())
    }

    pub fn app(name: &str, children: Vec<Term>) -> Term {
        Term::App(Symbol::new(name), children)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, cs) => cs.iter().all(Term::is_ground),
        }
    }

    /// The set X(t) of variables occurring in the term.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v);
        });
        out
    }

    /// Distinct variables in order of first occurrence (preorder).
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        self.visit_vars(&mut |v| {
            if !seen.contains(&v) {
                seen.push(v);
            }
        });
        seen
    }

    pub fn visit_vars(&self, f: &mut impl FnMut(Var)) {
        match self {
            Term::Var(v) => f(*v),
            Term::App(_, cs) => cs.iter().for_each(|c| c.visit_vars(f)),
        }
    }

    /// Number of leaf positions labelled `v`.
    pub fn count_occurrences(&self, v: Var) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |w| {
            if w == v {
                n += 1;
            }
        });
        n
    }

    /// Largest occurrence count of any single variable.
    pub fn max_occurrences(&self) -> usize {
        let mut counts: HashMap<Var, usize> = HashMap::new();
        self.visit_vars(&mut |v| *counts.entry(v).or_default() += 1);
        counts.values().copied().max().unwrap_or(0)
    }

    /// Height of the term; variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, cs) => cs.iter().map(|c| c.depth() + 1).max().unwrap_or(0),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, cs) => 1 + cs.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Simultaneous replacement of the variables mapped by `sigma`.
    pub fn substitute(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(v) => sigma.get(*v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, cs) => Term::App(f.clone(), cs.iter().map(|c| c.substitute(sigma)).collect()),
        }
    }

    /// Renames variables through `map`; unmapped variables are kept.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Term {
        match self {
            Term::Var(v) => Term::Var(*map.get(v).unwrap_or(v)),
            Term::App(f, cs) => Term::App(f.clone(), cs.iter().map(|c| c.rename(map)).collect()),
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, cs) => cs.get(i)?.subterm(rest),
                Term::Var(_) => None,
            },
        }
    }

    /// All positions with their subterms, in preorder.
    pub fn positions(&self) -> Vec<(Position, &Term)> {
        fn go<'a>(t: &'a Term, path: &mut Position, out: &mut Vec<(Position, &'a Term)>) {
            out.push((path.clone(), t));
            if let Term::App(_, cs) = t {
                for (i, c) in cs.iter().enumerate() {
                    path.push(i);
                    go(c, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Positions at which `p` occurs.
    pub fn occurrences_of(&self, p: &Term) -> Vec<Position> {
        self.positions()
            .into_iter()
            .filter(|(_, t)| *t == p)
            .map(|(pos, _)| pos)
            .collect()
    }

    /// Replaces the subterm at `pos` by `q`.
    pub fn replace_at(&self, pos: &[usize], q: &Term) -> Result<Term> {
        match pos.split_first() {
            None => Ok(q.clone()),
            Some((&i, rest)) => match self {
                Term::App(f, cs) if i < cs.len() => {
                    let mut cs = cs.clone();
                    cs[i] = cs[i].replace_at(rest, q)?;
                    Ok(Term::App(f.clone(), cs))
                }
                _ => Err(Error::InvalidPosition(format!("{pos:?}"))),
            },
        }
    }

    /// Collects every symbol with the number of children it is applied to.
    pub fn symbols(&self, out: &mut BTreeMap<Symbol, usize>) {
        if let Term::App(f, cs) = self {
            out.insert(f.clone(), cs.len());
            cs.iter().for_each(|c| c.symbols(out));
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, cs) if cs.is_empty() => write!(f, "{s}"),
            Term::App(s, cs) => {
                write!(f, "{s}(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_term(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite map from variables to terms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Var, Term>);

impl Substitution {
    pub fn new() -> Self {
        Substitution(BTreeMap::new())
    }

    pub fn identity_on(vars: impl IntoIterator<Item = Var>) -> Self {
        Substitution(vars.into_iter().map(|v| (v, Term::Var(v))).collect())
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: Var, t: Term) -> Option<Term> {
        self.0.insert(v, t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}↦{t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// First-order matching: returns σ with `substitute(pattern, σ) == target`.
pub fn generalizes(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    match_into(pattern, target, &mut sigma).then_some(sigma)
}

/// Extends `sigma` so that `pattern` matches `target`; false on conflict.
pub fn match_into(pattern: &Term, target: &Term, sigma: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match sigma.get(*v) {
            Some(bound) => bound == target,
            None => {
                sigma.insert(*v, target.clone());
                true
            }
        },
        Term::App(f, cs) => match target {
            Term::App(g, ds) if f == g && cs.len() == ds.len() => {
                cs.iter().zip(ds).all(|(c, d)| match_into(c, d, sigma))
            }
            _ => false,
        },
    }
}

/// Replaces the occurrences of `p` in `s` at the given positions by `q`.
pub fn replace_subterm(s: &Term, p: &Term, q: &Term, positions: &[Position]) -> Result<Term> {
    let mut out = s.clone();
    for pos in positions {
        match s.subterm(pos) {
            Some(t) if t == p => out = out.replace_at(pos, q)?,
            _ => return Err(Error::InvalidPosition(format!("{pos:?}"))),
        }
    }
    Ok(out)
}

/// Renames the variables of a sequence of terms to `x1, x2, ...` in order of
/// first occurrence across the sequence.
pub fn canonical_rename(terms: &[&Term]) -> Vec<Term> {
    let mut map = BTreeMap::new();
    for t in terms {
        t.visit_vars(&mut |v| {
            let next = Var(map.len() as u32 + 1);
            map.entry(v).or_insert(next);
        });
    }
    terms.iter().map(|t| t.rename(&map)).collect()
}

/// A rewrite rule `lhs -> rhs` with X(rhs) ⊆ X(lhs); a justification.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RewriteRule {
    lhs: Term,
    rhs: Term,
}

impl RewriteRule {
    pub fn new(lhs: Term, rhs: Term) -> Result<Self> {
        let lv = lhs.vars();
        let extra: Vec<String> = rhs
            .vars()
            .into_iter()
            .filter(|v| !lv.contains(v))
            .map(|v| v.to_string())
            .collect();
        if !extra.is_empty() {
            return Err(Error::RuleVariables(extra.join(", ")));
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// The rule with variables numbered by first occurrence in lhs then rhs.
    pub fn canonical(&self) -> RewriteRule {
        let mut v = canonical_rename(&[&self.lhs, &self.rhs]);
        let rhs = v.pop().expect("two terms");
        let lhs = v.pop().expect("two terms");
        RewriteRule { lhs, rhs }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RewriteRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RewriteRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rule(&s).map_err(serde::de::Error::custom)
    }
}

/// `r1 ≲ r2`: both sides of `r1` are instances of the matching sides of `r2`,
/// each side matched independently.
pub fn rule_generalizes(r1: &RewriteRule, r2: &RewriteRule) -> bool {
    generalizes(&r2.lhs, &r1.lhs).is_some() && generalizes(&r2.rhs, &r1.rhs).is_some()
}

/// A ranked alphabet with unique symbol names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    symbols: Vec<(Symbol, usize)>,
}

impl Signature {
    pub fn new(symbols: impl IntoIterator<Item = (Symbol, usize)>) -> Result<Self> {
        let mut out: Vec<(Symbol, usize)> = Vec::new();
        for (s, r) in symbols {
            if out.iter().any(|(t, _)| *t == s) {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
            out.push((s, r));
        }
        Ok(Signature { symbols: out })
    }

    pub fn symbols(&self) -> &[(Symbol, usize)] {
        &self.symbols
    }

    pub fn rank(&self, s: &Symbol) -> Option<usize> {
        self.symbols.iter().find(|(t, _)| t == s).map(|(_, r)| *r)
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(|(_, r)| *r == 0).map(|(s, _)| s)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.symbols.iter().filter(|(_, r)| *r > 0).map(|(s, r)| (s, *r))
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Checks that every symbol of `t` is declared with a matching rank.
    pub fn check(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, cs) => {
                let expected = self.rank(f).ok_or_else(|| Error::UnknownSymbol(f.to_string()))?;
                if expected != cs.len() {
                    return Err(Error::Arity {
                        symbol: f.to_string(),
                        expected,
                        found: cs.len(),
                    });
                }
                cs.iter().try_for_each(|c| self.check(c))
            }
        }
    }
}
