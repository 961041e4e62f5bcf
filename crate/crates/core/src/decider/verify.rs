//! Checking single rules as characteristic justifications, and functional
//! solutions, over any algebra with exact solution counting.

use crate::algebra::{eval, in_unity_set, jointly_hits, Assignment, Counting};
use crate::error::{Error, Result};
use crate::terms::{RewriteRule, Term};

/// `s→t` justifies `a→b :· c→d` and pins `d`: `⟨s,a⟩ ∩ ⟨t,b⟩ ≠ ∅` in `𝔄`,
/// `⟨s,c⟩ ∩ ⟨t,d⟩ ≠ ∅` in `𝔅`, and `c ∈ 𝟙_𝔅(s)`.
pub fn verify_characteristic<A, B>(
    rule: &RewriteRule,
    a: &A::Elem,
    b: &A::Elem,
    c: &B::Elem,
    d: &B::Elem,
    alg_a: &A,
    alg_b: &B,
) -> Result<bool>
where
    A: Counting + ?Sized,
    B: Counting + ?Sized,
{
    let (s, t) = (rule.lhs(), rule.rhs());
    Ok(jointly_hits(s, t, a, b, alg_a)? && jointly_hits(s, t, c, d, alg_b)? && in_unity_set(s, c, alg_b)?)
}

/// The proportion form: the rule justifies both directions, `X(s) = X(t)`,
/// and `a, b, c, d` lie in `𝟙(s)`, `𝟙(t)`, `𝟙(s)`, `𝟙(t)` respectively.
pub fn verify_characteristic_proportion<A, B>(
    rule: &RewriteRule,
    a: &A::Elem,
    b: &A::Elem,
    c: &B::Elem,
    d: &B::Elem,
    alg_a: &A,
    alg_b: &B,
) -> Result<bool>
where
    A: Counting + ?Sized,
    B: Counting + ?Sized,
{
    let (s, t) = (rule.lhs(), rule.rhs());
    if s.vars() != t.vars() {
        return Ok(false);
    }
    Ok(jointly_hits(s, t, a, b, alg_a)?
        && jointly_hits(s, t, c, d, alg_b)?
        && in_unity_set(s, a, alg_a)?
        && in_unity_set(t, b, alg_a)?
        && in_unity_set(s, c, alg_b)?
        && in_unity_set(t, d, alg_b)?)
}

/// Applies a one-variable term `t` to `a` and `c`. The result
/// `(t(a), t(c), x→t)` is returned when both values have a unique preimage
/// under `t`, and `None` otherwise.
#[allow(clippy::type_complexity)]
pub fn functional_solve<A, B>(
    t: &Term,
    a: &A::Elem,
    c: &B::Elem,
    alg_a: &A,
    alg_b: &B,
) -> Result<Option<(A::Elem, B::Elem, RewriteRule)>>
where
    A: Counting + ?Sized,
    B: Counting + ?Sized,
{
    let vars = t.vars();
    let [x] = vars.iter().copied().collect::<Vec<_>>()[..] else {
        return Err(Error::Precondition(format!("{t} must contain exactly one variable")));
    };
    let b = eval(t, &Assignment::from([(x, a.clone())]), alg_a)?;
    let d = eval(t, &Assignment::from([(x, c.clone())]), alg_b)?;
    if !in_unity_set(t, &b, alg_a)? || !in_unity_set(t, &d, alg_b)? {
        return Ok(None);
    }
    let rule = RewriteRule::new(Term::Var(x), t.clone())?;
    Ok(Some((b, d, rule)))
}
