//! Algebraic anti-unification over (ℕ₂,·,ℕ₂): generalization sets of
//! numbers as monomials, the instance ordering ⊑ and minimally general
//! generalizations. A depth-bounded fallback covers finite algebras.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{eval, FiniteAlgebra, TIMES};
use crate::error::{Error, Result};
use crate::oracle::enumerate_terms;
use crate::terms::{Term, Var};

/// `c · x1^e1 · x2^e2 ⋯` up to renaming and commutativity. Exponents are kept
/// in non-increasing order; `coeff = 1` requires at least one variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: u64,
    pub exponents: Vec<u32>,
}

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl Monomial {
    pub fn new(coeff: u64, mut exponents: Vec<u32>) -> Result<Self> {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        if coeff == 0 || (coeff == 1 && exponents.is_empty()) {
            return Err(Error::Precondition(format!(
                "the constant {coeff} is not an element of ℕ₂"
            )));
        }
        Ok(Monomial { coeff, exponents })
    }

    pub fn constant(c: u64) -> Result<Self> {
        Monomial::new(c, vec![])
    }

    /// Number of distinct variables.
    pub fn vars(&self) -> usize {
        self.exponents.len()
    }

    /// The product term, left-nested, with the coefficient first (omitted when
    /// it is 1) and variable `x(i+1)` repeated `exponents[i]` times.
    pub fn to_term(&self) -> Term {
        let mut factors = Vec::new();
        if self.coeff != 1 {
            factors.push(Term::constant(&self.coeff.to_string()));
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            for _ in 0..e {
                factors.push(Term::var(i as u32 + 1));
            }
        }
        let mut it = factors.into_iter();
        let first = it.next().expect("non-empty by construction");
        it.fold(first, |acc, f| Term::app(TIMES, vec![acc, f]))
    }

    /// Reads a product term back, failing on anything but `*`, numerals ≥ 2
    /// and variables.
    pub fn from_term(t: &Term) -> Result<Self> {
        fn go(t: &Term, c: &mut u64, exps: &mut BTreeMap<Var, u32>) -> Result<()> {
            match t {
                Term::Var(v) => {
                    *exps.entry(*v).or_default() += 1;
                    Ok(())
                }
                Term::App(f, cs) if cs.is_empty() => {
                    let n: u64 = f.as_str().parse().map_err(|_| Error::UnknownSymbol(f.to_string()))?;
                    if n < 2 {
                        return Err(Error::UnknownSymbol(f.to_string()));
                    }
                    *c = c.checked_mul(n).ok_or_else(|| Error::Unsupported("coefficient overflow".into()))?;
                    Ok(())
                }
                Term::App(f, cs) if f.as_str() == TIMES && cs.len() == 2 => {
                    go(&cs[0], c, exps)?;
                    go(&cs[1], c, exps)
                }
                Term::App(f, _) => Err(Error::UnknownSymbol(f.to_string())),
            }
        }
        let mut c = 1;
        let mut exps = BTreeMap::new();
        go(t, &mut c, &mut exps)?;
        Monomial::new(c, exps.into_values().collect())
    }
}

impl fmt::Display for Monomial {
    /// Paper-style notation: `10x`, `x^2y`, `2xyz`, `20`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}", self.coeff)?;
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            match NAMES.get(i) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", i + 1)?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Prime factorization as (prime, multiplicity), by trial division.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A number given by the exponents of its prime factors, where some "primes"
/// may be symbolic stand-ins for distinct large primes.
type Exponents = Vec<u32>;

/// Whether `target = Σ exps[i] · g_i` for non-zero vectors `g_i ≥ 0`, i.e.
/// whether the number with exponent vector `target` equals `∏ x_i^{exps[i]}`
/// for some `x_i ≥ 2`.
fn decomposes(target: &Exponents, exps: &[u32]) -> bool {
    fn choose(target: &mut Exponents, e: u32, pos: usize, g: &mut Vec<u32>, rest: &[u32]) -> bool {
        if pos == target.len() {
            if g.iter().all(|&x| x == 0) {
                return false;
            }
            return go(target, rest);
        }
        let max = target[pos] / e;
        for x in 0..=max {
            g[pos] = x;
            target[pos] -= x * e;
            let ok = choose(target, e, pos + 1, g, rest);
            target[pos] += x * e;
            if ok {
                g[pos] = 0;
                return true;
            }
        }
        g[pos] = 0;
        false
    }
    fn go(target: &mut Exponents, exps: &[u32]) -> bool {
        match exps.split_first() {
            None => target.iter().all(|&x| x == 0),
            Some((&e, rest)) => {
                let mut g = vec![0; target.len()];
                choose(target, e, 0, &mut g, rest)
            }
        }
    }
    go(&mut target.clone(), exps)
}

/// Exponent vectors of `a` and `b` over the union of their primes.
fn aligned(a: &[(u64, u32)], b: &[(u64, u32)]) -> (Exponents, Exponents) {
    let primes: BTreeSet<u64> = a.iter().chain(b).map(|(p, _)| *p).collect();
    let get = |f: &[(u64, u32)], p: u64| f.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e);
    (
        primes.iter().map(|&p| get(a, p)).collect(),
        primes.iter().map(|&p| get(b, p)).collect(),
    )
}

/// All exponent multisets (non-increasing) with `Σ e ≤ budget`.
fn exponent_multisets(budget: u32) -> Vec<Vec<u32>> {
    fn go(max: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for e in (1..=max.min(budget)).rev() {
            cur.push(e);
            go(e, budget - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(budget, budget, &mut vec![], &mut out);
    out
}

/// `↑n`: every monomial taking the value `n` for some assignment in ℕ₂.
pub fn monomial_gens(n: u64) -> Result<BTreeSet<Monomial>> {
    if n < 2 {
        return Err(Error::Precondition(format!("{n} is not an element of ℕ₂")));
    }
    let mut out = BTreeSet::new();
    for c in crate::closed_form::divisors(&n) {
        let rest = factorize(n / c);
        let target: Exponents = rest.iter().map(|(_, e)| *e).collect();
        let budget: u32 = target.iter().sum();
        for exps in exponent_multisets(budget) {
            if (c >= 2 || !exps.is_empty()) && decomposes(&target, &exps) {
                out.insert(Monomial::new(c, exps)?);
            }
        }
    }
    Ok(out)
}

/// `a ↑ b = ↑a ∩ ↑b`.
pub fn common_gens(a: u64, b: u64) -> Result<BTreeSet<Monomial>> {
    let ga = monomial_gens(a)?;
    let gb = monomial_gens(b)?;
    Ok(ga.intersection(&gb).cloned().collect())
}

/// `↓m1 ⊆ ↓m2`: every value of `m1` over ℕ₂ is a value of `m2`.
///
/// The inclusion holds exactly when the generic value of `m1`, obtained by
/// sending its variables to distinct primes larger than both coefficients,
/// is a value of `m2`. Those primes are kept symbolic: each variable of `m1`
/// contributes its own coordinate to the exponent vector.
pub fn instance_subset(m1: &Monomial, m2: &Monomial) -> bool {
    if !m1.coeff.is_multiple_of(m2.coeff) {
        return false;
    }
    let (num, den) = aligned(&factorize(m1.coeff), &factorize(m2.coeff));
    let mut target: Exponents = num.iter().zip(&den).map(|(a, b)| a - b).collect();
    target.extend(m1.exponents.iter().copied());
    decomposes(&target, &m2.exponents)
}

/// `m1 ⊑ m2` and not `m2 ⊑ m1`.
pub fn strictly_below(m1: &Monomial, m2: &Monomial) -> bool {
    instance_subset(m1, m2) && !instance_subset(m2, m1)
}

/// `a ⇑ b`: the ⊑-minimal common generalizations.
pub fn mgg(a: u64, b: u64) -> Result<BTreeSet<Monomial>> {
    let common = common_gens(a, b)?;
    Ok(common
        .iter()
        .filter(|m| !common.iter().any(|o| strictly_below(o, m)))
        .cloned()
        .collect())
}

/// `↑ᵏa` restricted to terms of depth at most `depth`: every such term over
/// `x1..xk` taking the value `a` under some assignment.
pub fn bounded_gens(a: usize, algebra: &FiniteAlgebra, k: usize, depth: usize) -> Result<BTreeSet<Term>> {
    let vars: Vec<Var> = (1..=k as u32).map(Var).collect();
    let assignments: Vec<_> = algebra.assignments(&vars).collect();
    let mut out = BTreeSet::new();
    for t in enumerate_terms(&algebra.signature(), k, None, depth) {
        for al in &assignments {
            if eval(&t, al, algebra)? == a {
                out.insert(t);
                break;
            }
        }
    }
    Ok(out)
}

fn product_term(coeff: u64, factors: &[(Var, u32)]) -> Option<Term> {
    let mut parts = Vec::new();
    if coeff != 1 {
        parts.push(Term::constant(&coeff.to_string()));
    }
    for &(v, e) in factors {
        parts.extend(std::iter::repeat_n(Term::Var(v), e as usize));
    }
    let mut it = parts.into_iter();
    let first = it.next()?;
    Some(it.fold(first, |acc, f| Term::app(TIMES, vec![acc, f])))
}

/// Right-hand sides over exactly the variables of `vals` whose value at
/// `vals` is `b`: a coefficient times a positive power of every variable.
fn rhs_candidates(vals: &[(Var, u64)], b: u64) -> Vec<Term> {
    fn go(i: usize, vals: &[(Var, u64)], rest: u64, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Term>) {
        let Some(&(v, x)) = vals.get(i) else {
            if let Some(t) = product_term(rest, acc) {
                if rest != 1 || !acc.is_empty() {
                    out.push(t);
                }
            }
            return;
        };
        let mut p = x;
        let mut e = 1;
        while rest.is_multiple_of(p) {
            acc.push((v, e));
            go(i + 1, vals, rest / p, acc, out);
            acc.pop();
            match p.checked_mul(x) {
                Some(q) => p = q,
                None => break,
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(0, vals, b, &mut vec![], &mut out);
    out
}

/// Candidate solutions of `a:b::c:𝔵` over (ℕ₂,·,ℕ₂) with their witnesses.
///
/// Left-hand sides range over the common generalizations of `a` and `c` with
/// at most two variables (members of `a ⇑ c` first); right-hand sides over
/// monomials in the same variables taking the value `b`. A candidate `d` is
/// kept when some rule `s→t` passes the proportion form of the
/// characteristic-justification check, which makes `s→t` characteristic for
/// all four arrows. Every returned `d` is therefore a solution; the search is
/// bounded, so solutions without such a witness are missed.
pub fn solve_nmul_bounded(a: u64, b: u64, c: u64) -> Result<Vec<(u64, Vec<crate::terms::RewriteRule>)>> {
    use crate::algebra::{Counting, Solutions};
    use crate::decider::verify_characteristic_proportion;
    use crate::terms::RewriteRule;
    use crate::{NatMul, Natural};

    if b < 2 {
        return Err(Error::Precondition(format!("{b} is not an element of ℕ₂")));
    }
    let alg = NatMul::new();
    let minimal = mgg(a, c)?;
    let mut lhs: Vec<Monomial> = common_gens(a, c)?.into_iter().filter(|m| m.vars() <= 2).collect();
    lhs.sort_by_key(|m| (!minimal.contains(m), m.clone()));
    let mut found: BTreeMap<u64, Vec<RewriteRule>> = BTreeMap::new();
    for s in lhs {
        let st = s.to_term();
        let Solutions::Finite(at_a) = alg.solutions(&st, &Natural::from(a))? else {
            continue;
        };
        let Solutions::Finite(at_c) = alg.solutions(&st, &Natural::from(c))? else {
            continue;
        };
        let [beta] = &at_c[..] else {
            continue;
        };
        for alpha in &at_a {
            let vals: Vec<(Var, u64)> = alpha
                .iter()
                .map(|(v, x)| (*v, u64::try_from(x).expect("bounded by a")))
                .collect();
            for t in rhs_candidates(&vals, b) {
                let rule = RewriteRule::new(st.clone(), t.clone())?;
                let d = eval(&t, beta, &alg)?;
                let ok = verify_characteristic_proportion(&rule, &Natural::from(a), &Natural::from(b), &Natural::from(c), &d, &alg, &alg)?;
                if ok {
                    let d = u64::try_from(&d).map_err(|_| Error::Unsupported("solution exceeds 64 bits".into()))?;
                    let rules = found.entry(d).or_default();
                    if !rules.contains(&rule) {
                        rules.push(rule);
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(c: u64, e: &[u32]) -> Monomial {
        Monomial::new(c, e.to_vec()).unwrap()
    }

    fn shown(s: &BTreeSet<Monomial>) -> BTreeSet<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn small_generalization_sets() {
        assert_eq!(shown(&monomial_gens(4).unwrap()), set(&["4", "2x", "xy", "x^2", "x"]));
        assert_eq!(shown(&monomial_gens(7).unwrap()), set(&["7", "x"]));
        assert!(monomial_gens(1).is_err());
        assert_eq!(shown(&common_gens(4, 9).unwrap()), set(&["xy", "x^2", "x"]));
    }

    #[test]
    fn ordering() {
        assert!(instance_subset(&m(10, &[1]), &m(2, &[1])));
        assert!(!instance_subset(&m(2, &[1]), &m(2, &[1, 1])));
        assert!(instance_subset(&m(1, &[2]), &m(1, &[1, 1])));
        assert!(!instance_subset(&m(1, &[1, 1]), &m(1, &[2])));
        assert!(instance_subset(&m(8, &[]), &m(2, &[1, 1])));
        assert!(!instance_subset(&m(6, &[1]), &m(1, &[2, 1])));
        assert!(instance_subset(&m(12, &[1]), &m(1, &[2, 1])));
    }

    #[test]
    fn minimal_generalizations() {
        assert_eq!(shown(&mgg(20, 30).unwrap()), set(&["10x"]));
        assert_eq!(shown(&mgg(4, 9).unwrap()), set(&["x^2"]));
        assert_eq!(shown(&mgg(12, 12).unwrap()), set(&["12"]));
    }

    #[test]
    fn bounded_multiplicative_solving() {
        let sols = solve_nmul_bounded(20, 4, 30).unwrap();
        let ds: Vec<u64> = sols.iter().map(|(d, _)| *d).collect();
        assert_eq!(ds, vec![6, 9]);
        assert_eq!(sols[0].1[0].to_string(), "*(10,x1) -> *(2,x1)");
        assert_eq!(sols[1].1[0].to_string(), "*(10,x1) -> *(x1,x1)");
    }

    #[test]
    fn term_round_trip() {
        let x = m(10, &[2, 1]);
        assert_eq!(x.to_term().to_string(), "*(*(*(10,x1),x1),x2)");
        assert_eq!(Monomial::from_term(&x.to_term()).unwrap(), x);
    }
}
