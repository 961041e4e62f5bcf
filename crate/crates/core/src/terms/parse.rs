//! Prefix surface syntax: `f(a,x1)`, rules written `s -> t`.

use super::{RewriteRule, Symbol, Term, Var};
use crate::error::{Error, Result};

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

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() || matches!(c, '(' | ')' | ',') || self.src[self.pos..].starts_with("->") {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return self.err("expected a symbol or variable");
        }
        Ok(&self.src[start..self.pos])
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.name()?;
        if self.peek() == Some('(') {
            if Var::from_name(name).is_some() {
                return self.err(format!("variable {name} cannot take arguments"));
            }
            self.pos += 1;
            let mut children = vec![self.term()?];
            loop {
                match self.peek() {
                    Some(',') => {
                        self.pos += 1;
                        children.push(self.term()?);
                    }
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected `,` or `)`"),
                }
            }
            Ok(Term::App(Symbol::new(name), children))
        } else if let Some(v) = Var::from_name(name) {
            Ok(Term::Var(v))
        } else {
            Ok(Term::App(Symbol::new(name), Vec::new()))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parses a term in prefix notation. Names matching `x[0-9]+` are variables.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser { src, pos: 0 };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a rule `s -> t`.
pub fn parse_rule(src: &str) -> Result<RewriteRule> {
    let mut p = Parser { src, pos: 0 };
    let lhs = p.term()?;
    p.skip_ws();
    if !p.src[p.pos..].starts_with("->") {
        return p.err("expected `->`");
    }
    p.pos += 2;
    let rhs = p.term()?;
    p.finish()?;
    RewriteRule::new(lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["f(a,x1)", "x3", "a", "g(f(x1,x2),h(b))", "+(x1,3)"] {
            assert_eq!(parse_term(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_term(" f ( a , x1 ) ").unwrap().to_string(), "f(a,x1)");
        assert_eq!(parse_rule("f(x1) -> x1").unwrap().to_string(), "f(x1) -> x1");
        assert_eq!(parse_rule("x1->x1").unwrap().to_string(), "x1 -> x1");
    }

    #[test]
    fn errors() {
        assert!(parse_term("f(a,").is_err());
        assert!(parse_term("f(a) b").is_err());
        assert!(parse_term("x1(a)").is_err());
        assert!(parse_term("").is_err());
        assert!(parse_rule("f(a)").is_err());
        assert!(parse_rule("a -> x1").is_err());
    }

    #[test]
    fn x_without_digits_is_a_constant() {
        assert_eq!(parse_term("x").unwrap(), Term::constant("x"));
    }
}
