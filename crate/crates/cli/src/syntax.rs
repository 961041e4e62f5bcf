//! Infix notation for the number presets: `10x -> 2x`, `x^2 + 3`, `5xy`.
//!
//! The letters `x`, `y`, `z`, `w` stand for `x1` to `x4`; other variables are
//! written in full (`x5`). Juxtaposition and `*` both multiply, `^n` repeats a
//! factor, and prefix applications such as `*(10,x1)` are accepted inside any
//! expression. Products and sums nest to the left, so `10x^2` is
//! `*(*(10,x1),x1)`, the shape produced by the anti-unification module.

use anaprop::algebra::{PLUS, TIMES};
use anaprop::terms::{RewriteRule, Symbol, Term, Var};
use anaprop::{Error, Result};

const SHORT: [char; 4] = ['x', 'y', 'z', 'w'];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let rest = self.rest();
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        self.pos += n;
        &rest[..n]
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.eat('+') {
            let rhs = self.product()?;
            t = Term::app(PLUS, vec![t, rhs]);
        }
        Ok(t)
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_digit() || SHORT.contains(&c) || c == '(' || c == '-' || self.prefix_op().is_some(),
            None => false,
        }
    }

    fn prefix_op(&mut self) -> Option<&'static str> {
        let rest = self.rest().trim_start();
        [TIMES, PLUS]
            .into_iter()
            .find(|op| rest.strip_prefix(op).is_some_and(|r| r.trim_start().starts_with('(')))
    }

    fn product(&mut self) -> Result<Term> {
        let mut factors = Vec::new();
        loop {
            let atom = self.atom()?;
            let times = if self.eat('^') {
                self.peek();
                let e = self.digits();
                match e.parse::<usize>() {
                    Ok(n) if n >= 1 => n,
                    _ => return self.err("expected a positive exponent after `^`"),
                }
            } else {
                1
            };
            factors.extend(std::iter::repeat_n(atom, times));
            if self.prefix_op().is_none() && self.eat('*') {
                continue;
            }
            if !self.starts_factor() || self.prefix_op() == Some(PLUS) {
                break;
            }
        }
        let mut it = factors.into_iter();
        let first = it.next().expect("at least one factor");
        Ok(it.fold(first, |acc, f| Term::app(TIMES, vec![acc, f])))
    }

    fn atom(&mut self) -> Result<Term> {
        if let Some(op) = self.prefix_op() {
            self.peek();
            self.pos += op.len();
            self.eat('(');
            let mut args = vec![self.sum()?];
            while self.eat(',') {
                args.push(self.sum()?);
            }
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(Term::app(op, args));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(t)
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                if c == '-' {
                    self.pos += 1;
                }
                if self.digits().is_empty() {
                    return self.err("expected digits");
                }
                if self.rest().starts_with('/') {
                    self.pos += 1;
                    if self.digits().is_empty() {
                        return self.err("expected a denominator");
                    }
                }
                Ok(Term::App(Symbol::new(&self.src[start..self.pos]), vec![]))
            }
            Some('x') if self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) => {
                self.pos += 1;
                let n = self.digits();
                match n.parse::<u32>() {
                    Ok(i) => Ok(Term::Var(Var(i))),
                    Err(_) => self.err("variable index out of range"),
                }
            }
            Some(c) if SHORT.contains(&c) => {
                self.pos += 1;
                let i = SHORT.iter().position(|&s| s == c).unwrap() as u32 + 1;
                Ok(Term::Var(Var(i)))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an arithmetic expression.
pub fn parse_arith(src: &str) -> Result<Term> {
    let mut p = Parser { src, pos: 0 };
    let t = p.sum()?;
    match p.peek() {
        None => Ok(t),
        Some(c) => p.err(format!("unexpected `{c}`")),
    }
}

/// Parses `s -> t` with both sides in arithmetic notation.
pub fn parse_arith_rule(src: &str) -> Result<RewriteRule> {
    let Some((lhs, rhs)) = src.split_once("->") else {
        return Err(Error::Parse {
            offset: 0,
            message: "expected `->`".into(),
        });
    };
    let rhs_err = |e: Error| match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + lhs.len() + 2,
            message,
        },
        e => e,
    };
    RewriteRule::new(parse_arith(lhs)?, parse_arith(rhs).map_err(rhs_err)?)
}

fn var_name(v: Var) -> String {
    match v.0 {
        i @ 1..=4 => SHORT[i as usize - 1].to_string(),
        _ => v.to_string(),
    }
}

fn is_op(t: &Term, op: &str) -> bool {
    matches!(t, Term::App(f, cs) if f.as_str() == op && cs.len() == 2)
}

/// The left spine of `op`: `((a∘b)∘c)` gives `[a, b, c]`.
fn spine<'t>(t: &'t Term, op: &str) -> Vec<&'t Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while is_op(cur, op) {
        let Term::App(_, cs) = cur else { unreachable!() };
        out.push(&cs[1]);
        cur = &cs[0];
    }
    out.push(cur);
    out.reverse();
    out
}

fn show_factor(t: &Term) -> String {
    match t {
        Term::Var(v) => var_name(*v),
        Term::App(f, cs) if cs.is_empty() => {
            let s = f.as_str();
            if s.starts_with('-') || s.contains('/') {
                format!("({s})")
            } else {
                s.to_string()
            }
        }
        _ if is_op(t, TIMES) || is_op(t, PLUS) => format!("({})", show_arith(t)),
        _ => show_arith(t),
    }
}

/// Prints a term in arithmetic notation; `parse_arith` reads it back.
pub fn show_arith(t: &Term) -> String {
    match t {
        Term::Var(v) => var_name(*v),
        Term::App(f, cs) if cs.is_empty() => f.to_string(),
        _ if is_op(t, PLUS) => spine(t, PLUS)
            .into_iter()
            .map(|s| if is_op(s, PLUS) { format!("({})", show_arith(s)) } else { show_arith(s) })
            .collect::<Vec<_>>()
            .join(" + "),
        _ if is_op(t, TIMES) => {
            let factors = spine(t, TIMES);
            let mut out = String::new();
            let mut i = 0;
            while i < factors.len() {
                let mut run = 1;
                while i + run < factors.len() && factors[i + run] == factors[i] {
                    run += 1;
                }
                let mut piece = if i == 0 {
                    match factors[0] {
                        Term::App(f, cs) if cs.is_empty() && f.as_str().starts_with('-') && run == 1 => f.to_string(),
                        other => show_factor(other),
                    }
                } else {
                    show_factor(factors[i])
                };
                if run > 1 {
                    piece = format!("{piece}^{run}");
                }
                let joins = out.is_empty()
                    || (piece.starts_with(|c: char| SHORT.contains(&c) || c == '(')
                        && !piece[1..].starts_with(|c: char| c.is_ascii_digit()));
                if !joins {
                    out.push('*');
                }
                out.push_str(&piece);
                i += run;
            }
            out
        }
        Term::App(f, cs) => {
            let args: Vec<String> = cs.iter().map(show_arith).collect();
            format!("{f}({})", args.join(","))
        }
    }
}

pub fn show_arith_rule(r: &RewriteRule) -> String {
    format!("{} -> {}", show_arith(r.lhs()), show_arith(r.rhs()))
}
