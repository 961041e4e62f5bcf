//! Difference and geometric proportions.

use num_integer::Integer;
use num_traits::Num;
use serde::{Deserialize, Serialize};
use std::fmt::Display;

use crate::error::{Error, Result};
use crate::terms::{RewriteRule, Term};

/// A factorization `a = k∘o, b = ℓ∘o, c = k∘u, d = ℓ∘u` for an operation ∘.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization<T> {
    pub k: T,
    pub l: T,
    pub o: T,
    pub u: T,
}

/// Monolinear proportion in (ℤ,+,ℤ): `a − b = c − d`.
pub fn decide_mono_add<T: Num + Clone>(a: &T, b: &T, c: &T, d: &T) -> bool {
    a.clone() - b.clone() == c.clone() - d.clone()
}

/// The unique `d = c + b − a` with its characteristic justification
/// `x1 -> x1 + (b − a)` (just `x1 -> x1` when `a = b`).
pub fn solve_mono_add<T: Num + Clone + Display>(a: &T, b: &T, c: &T) -> (T, RewriteRule) {
    let shift = b.clone() - a.clone();
    let d = c.clone() + shift.clone();
    let rhs = if shift.is_zero() {
        Term::var(1)
    } else {
        Term::app("+", vec![Term::var(1), Term::constant(&shift.to_string())])
    };
    let rule = RewriteRule::new(Term::var(1), rhs).expect("rhs variables come from lhs");
    (d, rule)
}

/// The additive factorization `a = k+o, b = ℓ+o, c = k+u, d = ℓ+u`, built
/// with `k = a`, `ℓ = b`, `o = 0`, `u = c − a` and checked against `d`.
pub fn decide_sy_add<T: Num + Clone>(a: &T, b: &T, c: &T, d: &T) -> Option<Factorization<T>> {
    let f = Factorization {
        k: a.clone(),
        l: b.clone(),
        o: T::zero(),
        u: c.clone() - a.clone(),
    };
    (f.l.clone() + f.u.clone() == *d).then_some(f)
}

/// Multiplicative factorization `a = k·o, b = ℓ·o, c = k·u, d = ℓ·u` over a
/// field, found by case analysis on zeros.
pub fn decide_mono_mul_field<T: Num + Clone>(a: &T, b: &T, c: &T, d: &T) -> Option<Factorization<T>> {
    let f = if !b.is_zero() {
        if a.is_zero() {
            if !c.is_zero() {
                return None;
            }
            Factorization {
                k: T::zero(),
                l: T::one(),
                o: b.clone(),
                u: d.clone(),
            }
        } else {
            let k = a.clone() / b.clone();
            Factorization {
                u: c.clone() / k.clone(),
                k,
                l: T::one(),
                o: b.clone(),
            }
        }
    } else if !a.is_zero() {
        Factorization {
            k: a.clone(),
            l: T::zero(),
            o: T::one(),
            u: c.clone() / a.clone(),
        }
    } else {
        Factorization {
            k: c.clone(),
            l: d.clone(),
            o: T::zero(),
            u: T::one(),
        }
    };
    let ok = f.k.clone() * f.o.clone() == *a
        && f.l.clone() * f.o.clone() == *b
        && f.k.clone() * f.u.clone() == *c
        && f.l.clone() * f.u.clone() == *d;
    ok.then_some(f)
}

/// `d = bc/a` over a field.
pub fn solve_mono_mul_field<T: Num + Clone>(a: &T, b: &T, c: &T) -> Result<T> {
    if a.is_zero() {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    Ok(b.clone() * c.clone() / a.clone())
}

/// Divisors of `n ≥ 1` in increasing order, by trial division.
pub fn divisors<I: Integer + Clone>(n: &I) -> Vec<I> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = I::one();
    while i.clone() * i.clone() <= *n {
        if n.is_multiple_of(&i) {
            let j = n.clone() / i.clone();
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i = i + I::one();
    }
    small.extend(large.into_iter().rev());
    small
}

/// Factorization form over the naturals (`k, ℓ, o, u ≥ 1`), by enumerating
/// the common divisors `o` of `a` and `b`.
pub fn decide_mono_mul_natural<I: Integer + Clone>(a: &I, b: &I, c: &I, d: &I) -> Option<Factorization<I>> {
    if [a, b, c, d].iter().any(|x| x.is_zero()) {
        return None;
    }
    divisors(&a.gcd(b)).into_iter().find_map(|o| {
        let k = a.clone() / o.clone();
        let l = b.clone() / o.clone();
        if !c.is_multiple_of(&k) {
            return None;
        }
        let u = c.clone() / k.clone();
        (l.clone() * u.clone() == *d).then_some(Factorization { k, l, o, u })
    })
}

/// All `d ≥ 2` with a natural factorization; at most one value, `bc/a`.
pub fn solve_mono_mul_natural<I: Integer + Clone>(a: &I, b: &I, c: &I) -> Vec<I> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return vec![];
    }
    let k = a.clone() / a.gcd(b);
    if !c.is_multiple_of(&k) {
        return vec![];
    }
    let d = b.clone() * c.clone() / a.clone();
    let two = I::one() + I::one();
    if d >= two {
        vec![d]
    } else {
        vec![]
    }
}

pub fn is_prime<I: Integer + Clone>(n: &I) -> bool {
    let two = I::one() + I::one();
    if *n < two {
        return false;
    }
    let mut i = two;
    while i.clone() * i.clone() <= *n {
        if n.is_multiple_of(&i) {
            return false;
        }
        i = i + I::one();
    }
    true
}

/// Monolinear proportion between primes: `(p = q ∧ p′ = q′) ∨ (p = p′ ∧ q = q′)`.
pub fn decide_prime_mono<I: Integer + Clone + Display>(p: &I, q: &I, p2: &I, q2: &I) -> Result<bool> {
    if let Some(bad) = [p, q, p2, q2].into_iter().find(|x| !is_prime(*x)) {
        return Err(Error::Precondition(format!("{bad} is not prime")));
    }
    Ok((p == q && p2 == q2) || (p == p2 && q == q2))
}
