//! Word algebras (A⁺,·,A⁺) and, with the empty-word flag, (A*,·,A*).
//!
//! Letters are constants, `cat` is concatenation and `eps` is the empty word
//! (only when the flag is set). A word term is flattened into a pattern: a
//! sequence of letters and variables.

use std::collections::HashMap;
use std::fmt;

use super::{eval, Algebra, Assignment, Counting, Solutions};
use crate::error::{Error, Result};
use crate::terms::{Symbol, Term, Var};

/// Binary concatenation symbol.
pub const CAT: &str = "cat";
/// Empty-word constant.
pub const EPSILON: &str = "eps";

/// One item of a word pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Letter(Symbol),
    Var(Var),
}

/// A word with variables: the flattened form of a word term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordPattern(pub Vec<Item>);

impl WordPattern {
    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn distinct_vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for it in &self.0 {
            if let Item::Var(v) = it {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
        }
        out
    }

    /// Right-nested concatenation term; the empty pattern is `eps`.
    pub fn to_term(&self) -> Term {
        let leaf = |it: &Item| match it {
            Item::Letter(l) => Term::App(l.clone(), vec![]),
            Item::Var(v) => Term::Var(*v),
        };
        match self.0.split_last() {
            None => Term::constant(EPSILON),
            Some((last, init)) => init
                .iter()
                .rev()
                .fold(leaf(last), |acc, it| Term::App(Symbol::new(CAT), vec![leaf(it), acc])),
        }
    }

    /// Flattens a word term built from letters, variables, `cat` and `eps`.
    pub fn from_term(t: &Term) -> Result<WordPattern> {
        fn go(t: &Term, out: &mut Vec<Item>) -> Result<()> {
            match t {
                Term::Var(v) => out.push(Item::Var(*v)),
                Term::App(f, cs) if cs.is_empty() && f.as_str() == EPSILON => {}
                Term::App(f, cs) if cs.is_empty() => out.push(Item::Letter(f.clone())),
                Term::App(f, cs) if f.as_str() == CAT && cs.len() == 2 => {
                    go(&cs[0], out)?;
                    go(&cs[1], out)?;
                }
                Term::App(f, cs) if f.as_str() == CAT => {
                    return Err(Error::Arity {
                        symbol: CAT.into(),
                        expected: 2,
                        found: cs.len(),
                    })
                }
                Term::App(f, _) => return Err(Error::UnknownSymbol(f.to_string())),
            }
            Ok(())
        }
        let mut out = Vec::new();
        go(t, &mut out)?;
        Ok(WordPattern(out))
    }

    /// Parses whitespace-separated tokens; `x<digits>` tokens are variables.
    pub fn parse_tokens(src: &str) -> WordPattern {
        WordPattern(
            src.split_whitespace()
                .map(|tok| match Var::from_name(tok) {
                    Some(v) => Item::Var(v),
                    None => Item::Letter(Symbol::new(tok)),
                })
                .collect(),
        )
    }
}

impl fmt::Display for WordPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, it) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match it {
                Item::Letter(l) => write!(f, "{l}")?,
                Item::Var(v) => write!(f, "{v}")?,
            }
        }
        Ok(())
    }
}

/// Concatenation algebra over a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAlgebra {
    alphabet: Vec<Symbol>,
    allow_empty: bool,
}

impl WordAlgebra {
    pub fn new(alphabet: Vec<Symbol>, allow_empty: bool) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidAlgebra("the alphabet is empty".into()));
        }
        for l in &alphabet {
            if matches!(l.as_str(), CAT | EPSILON) || Var::from_name(l.as_str()).is_some() {
                return Err(Error::InvalidAlgebra(format!("`{l}` cannot be used as a letter")));
            }
        }
        Ok(WordAlgebra { alphabet, allow_empty })
    }

    /// One letter per character of `letters`.
    pub fn from_chars(letters: &str, allow_empty: bool) -> Result<Self> {
        let mut alphabet: Vec<Symbol> = Vec::new();
        for c in letters.chars() {
            let s = Symbol::new(&c.to_string());
            if !alphabet.contains(&s) {
                alphabet.push(s);
            }
        }
        WordAlgebra::new(alphabet, allow_empty)
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn allows_empty(&self) -> bool {
        self.allow_empty
    }

    /// Reads a word as one letter per character, or whitespace-separated
    /// tokens when `tokens` is set. `ε` and the empty string denote the empty
    /// word.
    pub fn parse_word(&self, src: &str, tokens: bool) -> Result<Vec<Symbol>> {
        let src = src.trim();
        let letters: Vec<Symbol> = if src.is_empty() || src == "ε" || src == EPSILON {
            vec![]
        } else if tokens {
            src.split_whitespace().map(Symbol::new).collect()
        } else {
            src.chars().map(|c| Symbol::new(&c.to_string())).collect()
        };
        self.check_word(&letters)?;
        Ok(letters)
    }

    pub fn check_word(&self, w: &[Symbol]) -> Result<()> {
        if w.is_empty() && !self.allow_empty {
            return Err(Error::Precondition("the empty word ε is only an element when the empty word is allowed".into()));
        }
        if let Some(l) = w.iter().find(|l| !self.alphabet.contains(l)) {
            return Err(Error::UnknownElement(l.to_string()));
        }
        Ok(())
    }

    /// Flattens a term of this algebra's signature into a pattern.
    pub fn pattern_of(&self, t: &Term) -> Result<WordPattern> {
        let mut syms = std::collections::BTreeMap::new();
        t.symbols(&mut syms);
        if !self.allow_empty && syms.contains_key(&Symbol::new(EPSILON)) {
            return Err(Error::UnknownSymbol(EPSILON.into()));
        }
        let p = WordPattern::from_term(t)?;
        for it in &p.0 {
            if let Item::Letter(l) = it {
                if !self.alphabet.contains(l) {
                    return Err(Error::UnknownSymbol(l.to_string()));
                }
            }
        }
        Ok(p)
    }

    /// All assignments of the pattern's variables producing `w`.
    pub fn match_pattern(&self, p: &WordPattern, w: &[Symbol]) -> Vec<Assignment<Vec<Symbol>>> {
        let mut out = Vec::new();
        self.match_from(&p.0, w, &mut HashMap::new(), &mut out);
        out
    }

    fn match_from(
        &self,
        items: &[Item],
        w: &[Symbol],
        bound: &mut HashMap<Var, Vec<Symbol>>,
        out: &mut Vec<Assignment<Vec<Symbol>>>,
    ) {
        let Some((first, rest)) = items.split_first() else {
            if w.is_empty() {
                out.push(bound.iter().map(|(v, x)| (*v, x.clone())).collect());
            }
            return;
        };
        match first {
            Item::Letter(l) => {
                if w.first() == Some(l) {
                    self.match_from(rest, &w[1..], bound, out);
                }
            }
            Item::Var(v) => {
                if let Some(x) = bound.get(v) {
                    if w.starts_with(x) {
                        let n = x.len();
                        self.match_from(rest, &w[n..], bound, out);
                    }
                    return;
                }
                let min = usize::from(!self.allow_empty);
                for n in min..=w.len() {
                    bound.insert(*v, w[..n].to_vec());
                    self.match_from(rest, &w[n..], bound, out);
                }
                bound.remove(v);
            }
        }
    }

    /// Searches for two assignments with equal value, using words of length
    /// at most `max_len` over the first two letters.
    fn find_collision(&self, t: &Term, vars: &[Var], max_len: usize) -> Result<bool> {
        let letters: Vec<Symbol> = self.alphabet.iter().take(2).cloned().collect();
        let mut words: Vec<Vec<Symbol>> = if self.allow_empty { vec![vec![]] } else { vec![] };
        let mut layer: Vec<Vec<Symbol>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |l| {
                        let mut w = w.clone();
                        w.push(l.clone());
                        w
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let mut seen: HashMap<Vec<Symbol>, ()> = HashMap::new();
        let mut idx = vec![0usize; vars.len()];
        loop {
            let alpha: Assignment<Vec<Symbol>> =
                vars.iter().zip(&idx).map(|(v, &i)| (*v, words[i].clone())).collect();
            if seen.insert(eval(t, &alpha, self)?, ()).is_some() {
                return Ok(true);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(false);
                }
                idx[k] += 1;
                if idx[k] < words.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

impl Algebra for WordAlgebra {
    type Elem = Vec<Symbol>;

    fn apply(&self, symbol: &Symbol, args: &[Vec<Symbol>]) -> Result<Vec<Symbol>> {
        match (symbol.as_str(), args) {
            (EPSILON, []) if self.allow_empty => Ok(vec![]),
            (CAT, [x, y]) => Ok(x.iter().chain(y).cloned().collect()),
            (CAT, _) => Err(Error::Arity {
                symbol: CAT.into(),
                expected: 2,
                found: args.len(),
            }),
            (_, []) if self.alphabet.contains(symbol) => Ok(vec![symbol.clone()]),
            _ => Err(Error::UnknownSymbol(symbol.to_string())),
        }
    }
}

impl Counting for WordAlgebra {
    fn solutions(&self, s: &Term, a: &Vec<Symbol>) -> Result<Solutions<Vec<Symbol>>> {
        let p = self.pattern_of(s)?;
        Ok(Solutions::Finite(self.match_pattern(&p, a)))
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        let p = self.pattern_of(t)?;
        let vars = p.distinct_vars();
        if vars.len() <= 1 {
            return Ok(true);
        }
        if self.find_collision(t, &vars, 3)? {
            return Ok(false);
        }
        Err(Error::Unsupported(format!("injectivity of the word term {p}")))
    }
}
