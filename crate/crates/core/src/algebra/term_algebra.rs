//! The term algebra over a signature: elements are terms, operations build
//! applications.

use super::{Algebra, Assignment, Counting, Solutions};
use crate::error::{Error, Result};
use crate::terms::{generalizes, Signature, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAlgebra {
    signature: Signature,
}

impl TermAlgebra {
    pub fn new(signature: Signature) -> Self {
        TermAlgebra { signature }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }
}

impl Algebra for TermAlgebra {
    type Elem = Term;

    fn apply(&self, symbol: &Symbol, args: &[Term]) -> Result<Term> {
        let expected = self
            .signature
            .rank(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        if expected != args.len() {
            return Err(Error::Arity {
                symbol: symbol.to_string(),
                expected,
                found: args.len(),
            });
        }
        Ok(Term::App(symbol.clone(), args.to_vec()))
    }
}

impl Counting for TermAlgebra {
    /// At most one solution: the matcher of `s` onto `p`.
    fn solutions(&self, s: &Term, p: &Term) -> Result<Solutions<Term>> {
        self.signature.check(s)?;
        Ok(Solutions::Finite(
            generalizes(s, p)
                .map(|sigma| sigma.iter().map(|(v, t)| (*v, t.clone())).collect::<Assignment<Term>>())
                .into_iter()
                .collect(),
        ))
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        self.signature.check(t)?;
        Ok(true)
    }
}
