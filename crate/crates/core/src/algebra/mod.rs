//! Algebras: term evaluation, solution sets ⟨s,a⟩ and the unity sets 𝟙(s).

mod finite;
mod numbers;
mod term_algebra;
mod words;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::terms::{Symbol, Term, Var};

pub use finite::{check_homomorphism, solution_set, AlgebraFile, FiniteAlgebra, OpFile, Operation, RowFile};
pub use numbers::{Additive, Linear, Naturals, Rationals, PLUS, TIMES};
pub use term_algebra::TermAlgebra;
pub use words::{Item, WordAlgebra, WordPattern, CAT, EPSILON};

/// A map from variables to carrier elements.
pub type Assignment<E> = BTreeMap<Var, E>;

/// An interpretation of function symbols over a carrier.
pub trait Algebra {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    /// Applies the operation named `symbol` (a constant when `args` is empty).
    fn apply(&self, symbol: &Symbol, args: &[Self::Elem]) -> Result<Self::Elem>;
}

/// Value of the term function induced by `t` at `alpha`.
pub fn eval<A: Algebra + ?Sized>(t: &Term, alpha: &Assignment<A::Elem>, algebra: &A) -> Result<A::Elem> {
    match t {
        Term::Var(v) => alpha.get(v).cloned().ok_or(Error::UnboundVariable(*v)),
        Term::App(f, cs) => {
            let args = cs.iter().map(|c| eval(c, alpha, algebra)).collect::<Result<Vec<_>>>()?;
            algebra.apply(f, &args)
        }
    }
}

/// The solution set ⟨s,a⟩ of the polynomial equation `a = s(x)`, over the
/// variables of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solutions<E> {
    Finite(Vec<Assignment<E>>),
    Infinite,
}

impl<E> Solutions<E> {
    /// The number of solutions, `None` when infinite.
    pub fn count(&self) -> Option<usize> {
        match self {
            Solutions::Finite(v) => Some(v.len()),
            Solutions::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count() == Some(0)
    }
}

/// Algebras with an exact procedure for solution sets and injectivity.
pub trait Counting: Algebra {
    /// ⟨s,a⟩. Infinite builtins may answer [`Solutions::Infinite`] or report
    /// term shapes they cannot count as [`Error::Unsupported`].
    fn solutions(&self, s: &Term, a: &Self::Elem) -> Result<Solutions<Self::Elem>>;

    /// Whether the term function of `t` is injective.
    fn is_injective(&self, t: &Term) -> Result<bool>;
}

/// a ∈ 𝟙(s): the equation `a = s(x)` has exactly one solution.
pub fn in_unity_set<A: Counting + ?Sized>(s: &Term, a: &A::Elem, algebra: &A) -> Result<bool> {
    Ok(algebra.solutions(s, a)?.count() == Some(1))
}

/// Whether the term function of `t` is injective in `algebra`.
pub fn is_injective_term<A: Counting + ?Sized>(t: &Term, algebra: &A) -> Result<bool> {
    algebra.is_injective(t)
}

/// Whether the rule pieces `s`, `t` take the values `a`, `b` under one shared
/// assignment, i.e. ⟨s,a⟩ ∩ ⟨t,b⟩ ≠ ∅ (with X(t) ⊆ X(s)).
pub fn jointly_hits<A: Counting + ?Sized>(s: &Term, t: &Term, a: &A::Elem, b: &A::Elem, algebra: &A) -> Result<bool> {
    match algebra.solutions(s, a)? {
        Solutions::Finite(sols) => {
            for alpha in &sols {
                if eval(t, alpha, algebra)? == *b {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Solutions::Infinite => Err(Error::Unsupported(format!(
            "the equation {s} = {a:?} has infinitely many solutions"
        ))),
    }
}
