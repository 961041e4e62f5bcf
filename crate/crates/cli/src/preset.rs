//! Algebra selectors: `zplus`, `qmul`, `nmul`, `word:<alphabet>`,
//! `term:<signature>` and `file:<path>` (a bare path ending in `.json` works
//! too).

use std::collections::BTreeMap;
use std::path::Path;

use anaprop::algebra::{FiniteAlgebra, WordAlgebra, WordPattern};
use anaprop::terms::{parse_rule, parse_term, RewriteRule, Signature, Symbol, Term, Var};
use anaprop::{Error, Result};

use crate::syntax::{parse_arith_rule, show_arith_rule};

#[derive(Clone, Debug)]
pub enum Preset {
    /// (ℤ,+,ℤ)
    ZPlus,
    /// (ℚ,·,ℚ)
    QMul,
    /// (ℕ₂,·,ℕ₂)
    NMul,
    Word { algebra: WordAlgebra, tokens: bool },
    Term(Signature),
    Finite(FiniteAlgebra),
}

impl Preset {
    pub fn load(spec: &str, allow_empty: bool, tokens: bool) -> Result<Preset> {
        match spec {
            "zplus" => return Ok(Preset::ZPlus),
            "qmul" => return Ok(Preset::QMul),
            "nmul" => return Ok(Preset::NMul),
            _ => {}
        }
        if let Some(alphabet) = spec.strip_prefix("word:") {
            let letters: Vec<Symbol> = if alphabet.contains(',') {
                alphabet.split(',').map(|s| Symbol::new(s.trim())).collect()
            } else {
                alphabet.chars().map(|c| Symbol::new(&c.to_string())).collect()
            };
            let algebra = WordAlgebra::new(letters, allow_empty)?;
            return Ok(Preset::Word { algebra, tokens });
        }
        if let Some(sig) = spec.strip_prefix("term:") {
            return load_signature(sig).map(Preset::Term);
        }
        let path = spec.strip_prefix("file:").or_else(|| spec.ends_with(".json").then_some(spec));
        match path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidAlgebra(format!("cannot read {path}: {e}")))?;
                FiniteAlgebra::from_json(&text)
                    .map_err(|e| Error::InvalidAlgebra(format!("{path}: {}", strip_prefix(&e))))
                    .map(Preset::Finite)
            }
            None => Err(Error::InvalidAlgebra(format!(
                "unknown algebra `{spec}` (expected zplus, qmul, nmul, word:<letters>, term:<signature> or file:<path>)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::ZPlus => "zplus",
            Preset::QMul => "qmul",
            Preset::NMul => "nmul",
            Preset::Word { .. } => "word",
            Preset::Term(_) => "term",
            Preset::Finite(_) => "file",
        }
    }

    pub fn is_number(&self) -> bool {
        matches!(self, Preset::ZPlus | Preset::QMul | Preset::NMul)
    }

    /// Reads a rule in the notation native to the algebra.
    pub fn parse_rule(&self, src: &str) -> Result<RewriteRule> {
        match self {
            _ if self.is_number() => parse_arith_rule(src),
            Preset::Word { algebra, tokens } if !src.contains('(') => {
                let Some((l, r)) = src.split_once("->") else {
                    return Err(Error::Parse {
                        offset: 0,
                        message: "expected `->`".into(),
                    });
                };
                let side = |s: &str| word_pattern(s, algebra, *tokens).map(|p| p.to_term());
                RewriteRule::new(side(l)?, side(r)?)
            }
            _ => parse_rule(src),
        }
    }

    pub fn show_rule(&self, r: &RewriteRule) -> String {
        match self {
            _ if self.is_number() => show_arith_rule(r),
            Preset::Word { algebra, .. } => match (algebra.pattern_of(r.lhs()), algebra.pattern_of(r.rhs())) {
                (Ok(l), Ok(rr)) => format!("{l} -> {rr}"),
                _ => r.to_string(),
            },
            _ => r.to_string(),
        }
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::InvalidAlgebra(m) => m.clone(),
        e => e.to_string(),
    }
}

/// Letters and the variables `x`, `y`, `z`, `w` (or `x<n>`) of a word
/// pattern such as `xby`. Letters of the alphabet take precedence.
fn word_pattern(src: &str, algebra: &WordAlgebra, tokens: bool) -> Result<WordPattern> {
    use anaprop::algebra::Item;
    let src = src.trim();
    if tokens {
        return Ok(WordPattern::parse_tokens(src));
    }
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut items = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let letter = Symbol::new(&c.to_string());
        if algebra.alphabet().contains(&letter) {
            items.push(Item::Letter(letter));
            i += 1;
        } else if c == 'x' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            let digits: String = chars[i + 1..].iter().take_while(|d| d.is_ascii_digit()).collect();
            i += 1 + digits.len();
            items.push(Item::Var(Var(digits.parse().map_err(|_| Error::UnknownSymbol(digits.clone()))?)));
        } else if let Some(p) = ['x', 'y', 'z', 'w'].iter().position(|&v| v == c) {
            items.push(Item::Var(Var(p as u32 + 1)));
            i += 1;
        } else if c == 'ε' && chars.len() == 1 {
            i += 1;
        } else {
            return Err(Error::UnknownSymbol(c.to_string()));
        }
    }
    Ok(WordPattern(items))
}

/// A signature given inline as `f/2,a/0` or as a JSON file mapping symbols to
/// arities.
fn load_signature(spec: &str) -> Result<Signature> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::InvalidAlgebra(format!("cannot read {spec}: {e}")))?;
        let map: BTreeMap<String, usize> = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidAlgebra(format!("{spec}: line {}, column {}: {e}", e.line(), e.column())))?;
        return Signature::new(map.into_iter().map(|(s, n)| (Symbol::new(&s), n)));
    }
    let mut symbols = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, arity) = part
            .split_once('/')
            .ok_or_else(|| Error::InvalidAlgebra(format!("`{part}` is neither a file nor of the form symbol/arity")))?;
        let arity: usize = arity
            .trim()
            .parse()
            .map_err(|_| Error::InvalidAlgebra(format!("bad arity in `{part}`")))?;
        symbols.push((Symbol::new(name.trim()), arity));
    }
    Signature::new(symbols)
}

/// Parses a term over a signature; variables are allowed.
pub fn signature_term(sig: &Signature, src: &str) -> Result<Term> {
    let t = parse_term(src)?;
    sig.check(&t)?;
    Ok(t)
}
