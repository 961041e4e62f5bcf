//! Number algebras: (ℤ,+,ℤ), (ℚ,·,ℚ) and (ℕ₂,·,ℕ₂), each with every element
//! distinguished (numerals are constants).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

use super::{Algebra, Assignment, Counting, Solutions};
use crate::error::{Error, Result};
use crate::terms::{Symbol, Term, Var};

/// Symbol of the additive operation.
pub const PLUS: &str = "+";
/// Symbol of the multiplicative operation.
pub const TIMES: &str = "*";

fn numeral<T: Num>(symbol: &Symbol) -> Result<T> {
    T::from_str_radix(symbol.as_str(), 10).map_err(|_| Error::UnknownSymbol(symbol.to_string()))
}

/// Rational literal `p` or `p/q`.
fn rational_numeral<I: Integer + Clone>(symbol: &Symbol) -> Result<Ratio<I>> {
    if symbol.as_str().contains('/') {
        numeral(symbol)
    } else {
        numeral::<I>(symbol).map(Ratio::from_integer)
    }
}

fn binary<'a, T>(symbol: &Symbol, args: &'a [T]) -> Result<(&'a T, &'a T)> {
    match args {
        [x, y] => Ok((x, y)),
        _ => Err(Error::Arity {
            symbol: symbol.to_string(),
            expected: 2,
            found: args.len(),
        }),
    }
}

/// Collects the monomial normal form `c · ∏ x^e` of a product term.
fn monomial<T: Clone>(
    t: &Term,
    constant: &dyn Fn(&Symbol) -> Result<T>,
    mul: &dyn Fn(&T, &T) -> T,
    acc: &mut (T, BTreeMap<Var, u32>),
) -> Result<()> {
    match t {
        Term::Var(v) => {
            *acc.1.entry(*v).or_default() += 1;
            Ok(())
        }
        Term::App(f, cs) if cs.is_empty() => {
            acc.0 = mul(&acc.0, &constant(f)?);
            Ok(())
        }
        Term::App(f, cs) if f.as_str() == TIMES && cs.len() == 2 => {
            monomial(&cs[0], constant, mul, acc)?;
            monomial(&cs[1], constant, mul, acc)
        }
        Term::App(f, cs) if f.as_str() == TIMES => Err(Error::Arity {
            symbol: f.to_string(),
            expected: 2,
            found: cs.len(),
        }),
        Term::App(f, _) => Err(Error::UnknownSymbol(f.to_string())),
    }
}

/// (ℤ,+,ℤ) over an integer type: binary `+` and every numeral as a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Additive<T>(PhantomData<T>);

impl<T> Additive<T> {
    pub fn new() -> Self {
        Additive(PhantomData)
    }
}

/// Linear normal form `k + Σ nᵢ·xᵢ` of a sum term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear<T> {
    pub constant: T,
    pub coefficients: BTreeMap<Var, T>,
}

impl<T: Integer + Clone> Additive<T> {
    pub fn linear_form(&self, t: &Term) -> Result<Linear<T>> {
        let mut out = Linear {
            constant: T::zero(),
            coefficients: BTreeMap::new(),
        };
        self.collect(t, &mut out)?;
        Ok(out)
    }

    fn collect(&self, t: &Term, out: &mut Linear<T>) -> Result<()> {
        match t {
            Term::Var(v) => {
                let c = out.coefficients.entry(*v).or_insert_with(T::zero);
                *c = c.clone() + T::one();
                Ok(())
            }
            Term::App(f, cs) if cs.is_empty() => {
                out.constant = out.constant.clone() + numeral::<T>(f)?;
                Ok(())
            }
            Term::App(f, cs) if f.as_str() == PLUS => {
                binary(f, cs)?;
                self.collect(&cs[0], out)?;
                self.collect(&cs[1], out)
            }
            Term::App(f, _) => Err(Error::UnknownSymbol(f.to_string())),
        }
    }
}

impl<T> Algebra for Additive<T>
where
    T: Integer + Clone + Hash + Debug,
{
    type Elem = T;

    fn apply(&self, symbol: &Symbol, args: &[T]) -> Result<T> {
        if args.is_empty() {
            return numeral(symbol);
        }
        if symbol.as_str() != PLUS {
            return Err(Error::UnknownSymbol(symbol.to_string()));
        }
        let (x, y) = binary(symbol, args)?;
        Ok(x.clone() + y.clone())
    }
}

impl<T> Counting for Additive<T>
where
    T: Integer + Clone + Hash + Debug,
{
    fn solutions(&self, s: &Term, a: &T) -> Result<Solutions<T>> {
        let lin = self.linear_form(s)?;
        let rest = a.clone() - lin.constant;
        let mut coeffs = lin.coefficients.into_iter();
        Ok(match (coeffs.next(), coeffs.len()) {
            (None, _) if rest.is_zero() => Solutions::Finite(vec![Assignment::new()]),
            (None, _) => Solutions::Finite(vec![]),
            (Some((v, n)), 0) => {
                if rest.is_multiple_of(&n) {
                    Solutions::Finite(vec![Assignment::from([(v, rest.div_floor(&n))])])
                } else {
                    Solutions::Finite(vec![])
                }
            }
            (Some((_, n)), _) => {
                let g = coeffs.fold(n, |g, (_, m)| g.gcd(&m));
                if rest.is_multiple_of(&g) {
                    Solutions::Infinite
                } else {
                    Solutions::Finite(vec![])
                }
            }
        })
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        Ok(self.linear_form(t)?.coefficients.len() <= 1)
    }
}

/// (ℚ,·,ℚ) over rationals with integer type `I`: binary `*` and every
/// rational literal (`3`, `-2/5`) as a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals<I>(PhantomData<I>);

impl<I> Rationals<I> {
    pub fn new() -> Self {
        Rationals(PhantomData)
    }
}

/// The `e`-th root of a rational when it exists (non-negative for even `e`).
fn rational_root<I: Integer + Signed + Roots + Clone>(r: &Ratio<I>, e: u32) -> Option<Ratio<I>> {
    if e.is_multiple_of(2) && r.is_negative() {
        return None;
    }
    let root = |n: &I| -> Option<I> {
        let m = n.abs().nth_root(e);
        num_traits::pow(m.clone(), e as usize).eq(&n.abs()).then_some(m)
    };
    let num = root(r.numer())?;
    let den = root(r.denom())?;
    let mag = Ratio::new(num, den);
    Some(if r.is_negative() { -mag } else { mag })
}

impl<I> Rationals<I>
where
    I: Integer + Signed + Roots + Clone + Hash + Debug,
{
    pub fn monomial_form(&self, t: &Term) -> Result<(Ratio<I>, BTreeMap<Var, u32>)> {
        let mut acc = (Ratio::one(), BTreeMap::new());
        monomial(t, &|s| rational_numeral::<I>(s), &|x, y| x.clone() * y.clone(), &mut acc)?;
        Ok(acc)
    }
}

impl<I> Algebra for Rationals<I>
where
    I: Integer + Signed + Roots + Clone + Hash + Debug,
{
    type Elem = Ratio<I>;

    fn apply(&self, symbol: &Symbol, args: &[Ratio<I>]) -> Result<Ratio<I>> {
        if args.is_empty() {
            return rational_numeral(symbol);
        }
        if symbol.as_str() != TIMES {
            return Err(Error::UnknownSymbol(symbol.to_string()));
        }
        let (x, y) = binary(symbol, args)?;
        Ok(x.clone() * y.clone())
    }
}

impl<I> Counting for Rationals<I>
where
    I: Integer + Signed + Roots + Clone + Hash + Debug,
{
    fn solutions(&self, s: &Term, a: &Ratio<I>) -> Result<Solutions<Ratio<I>>> {
        let (c, exps) = self.monomial_form(s)?;
        if exps.is_empty() {
            return Ok(Solutions::Finite(if &c == a { vec![Assignment::new()] } else { vec![] }));
        }
        if c.is_zero() {
            return Ok(if a.is_zero() { Solutions::Infinite } else { Solutions::Finite(vec![]) });
        }
        let r = a.clone() / c;
        if exps.len() > 1 {
            if r.is_zero() {
                return Ok(Solutions::Infinite);
            }
            let g = exps.values().fold(0u32, |g, &e| g.gcd(&e));
            return Ok(if rational_root(&r, g).is_some() {
                Solutions::Infinite
            } else {
                Solutions::Finite(vec![])
            });
        }
        let (&v, &e) = exps.iter().next().expect("one variable");
        let single = |x: Ratio<I>| Assignment::from([(v, x)]);
        Ok(Solutions::Finite(match rational_root(&r, e) {
            None => vec![],
            Some(x) if x.is_zero() || e % 2 == 1 => vec![single(x)],
            Some(x) => vec![single(-x.clone()), single(x)],
        }))
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        let (c, exps) = self.monomial_form(t)?;
        Ok(match exps.len() {
            0 => true,
            1 => !c.is_zero() && exps.values().all(|e| e % 2 == 1),
            _ => false,
        })
    }
}

/// (ℕ₂,·,ℕ₂) with ℕ₂ = {2,3,...}: binary `*` and every numeral ≥ 2 as a
/// constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Naturals<I>(PhantomData<I>);

impl<I> Naturals<I> {
    pub fn new() -> Self {
        Naturals(PhantomData)
    }
}

fn two<I: One + Clone + std::ops::Add<Output = I>>() -> I {
    I::one() + I::one()
}

impl<I> Naturals<I>
where
    I: Integer + Clone + Hash + Debug,
{
    fn element(&self, symbol: &Symbol) -> Result<I> {
        let v: I = numeral(symbol)?;
        if v < two() {
            return Err(Error::UnknownSymbol(symbol.to_string()));
        }
        Ok(v)
    }

    /// Normal form `c · ∏ x^e`, with `c = 1` when the term has no constants.
    pub fn monomial_form(&self, t: &Term) -> Result<(I, BTreeMap<Var, u32>)> {
        let mut acc = (I::one(), BTreeMap::new());
        monomial(t, &|s| self.element(s), &|x, y| x.clone() * y.clone(), &mut acc)?;
        Ok(acc)
    }

    fn search(&self, vars: &[(Var, u32)], rest: I, partial: &mut Assignment<I>, out: &mut Vec<Assignment<I>>) {
        let Some((&(v, e), tail)) = vars.split_first() else {
            if rest.is_one() {
                out.push(partial.clone());
            }
            return;
        };
        let mut x: I = two();
        loop {
            let p = num_traits::pow(x.clone(), e as usize);
            if p > rest {
                break;
            }
            if rest.is_multiple_of(&p) {
                partial.insert(v, x.clone());
                self.search(tail, rest.clone() / p, partial, out);
                partial.remove(&v);
            }
            x = x + I::one();
        }
    }
}

impl<I> Algebra for Naturals<I>
where
    I: Integer + Clone + Hash + Debug,
{
    type Elem = I;

    fn apply(&self, symbol: &Symbol, args: &[I]) -> Result<I> {
        if args.is_empty() {
            return self.element(symbol);
        }
        if symbol.as_str() != TIMES {
            return Err(Error::UnknownSymbol(symbol.to_string()));
        }
        let (x, y) = binary(symbol, args)?;
        Ok(x.clone() * y.clone())
    }
}

impl<I> Counting for Naturals<I>
where
    I: Integer + Clone + Hash + Debug,
{
    fn solutions(&self, s: &Term, a: &I) -> Result<Solutions<I>> {
        let (c, exps) = self.monomial_form(s)?;
        let mut out = Vec::new();
        if a >= &two() && a.is_multiple_of(&c) {
            let vars: Vec<(Var, u32)> = exps.into_iter().collect();
            self.search(&vars, a.clone() / c, &mut Assignment::new(), &mut out);
        }
        Ok(Solutions::Finite(out))
    }

    fn is_injective(&self, t: &Term) -> Result<bool> {
        Ok(self.monomial_form(t)?.1.len() <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval, in_unity_set};
    use crate::terms::parse_term;
    use num_bigint::{BigInt, BigUint};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(int(n), int(d))
    }

    #[test]
    fn additive_evaluation_and_counting() {
        let z = Additive::<BigInt>::new();
        let alpha = Assignment::from([(Var(1), int(2))]);
        assert_eq!(eval(&t("+(x1,x1)"), &alpha, &z).unwrap(), int(4));
        for a in [-3, 0, 17] {
            assert!(in_unity_set(&t("+(x1,5)"), &int(a), &z).unwrap());
        }
        assert!(z.is_injective(&t("+(x1,5)")).unwrap());
        assert!(z.is_injective(&t("+(x1,+(x1,3))")).unwrap());
        assert!(!z.is_injective(&t("+(x1,x2)")).unwrap());
        assert_eq!(z.solutions(&t("+(x1,x1)"), &int(3)).unwrap().count(), Some(0));
        assert_eq!(z.solutions(&t("+(x1,x2)"), &int(3)).unwrap(), Solutions::Infinite);
        assert_eq!(z.solutions(&t("+(x1,+(x1,+(x2,x2)))"), &int(3)).unwrap().count(), Some(0));
        assert!(matches!(z.solutions(&t("f(x1)"), &int(3)), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn rational_counting() {
        let qm = Rationals::<BigInt>::new();
        assert_eq!(qm.solutions(&t("*(x1,x1)"), &q(4, 9)).unwrap().count(), Some(2));
        assert_eq!(qm.solutions(&t("*(x1,x1)"), &q(2, 1)).unwrap().count(), Some(0));
        assert_eq!(qm.solutions(&t("*(x1,x1)"), &q(-4, 1)).unwrap().count(), Some(0));
        assert_eq!(qm.solutions(&t("*(x1,*(x1,x1))"), &q(-8, 27)).unwrap().count(), Some(1));
        assert_eq!(qm.solutions(&t("*(3,x1)"), &q(1, 2)).unwrap().count(), Some(1));
        assert_eq!(qm.solutions(&t("*(0,x1)"), &q(0, 1)).unwrap(), Solutions::Infinite);
        assert_eq!(qm.solutions(&t("*(x1,x2)"), &q(5, 1)).unwrap(), Solutions::Infinite);
        let sq = t("*(*(x1,x1),*(x2,x2))");
        assert_eq!(qm.solutions(&sq, &q(2, 1)).unwrap().count(), Some(0));
        assert_eq!(qm.solutions(&sq, &q(9, 4)).unwrap(), Solutions::Infinite);
        assert!(qm.is_injective(&t("*(-2/3,x1)")).unwrap());
        assert!(!qm.is_injective(&t("*(x1,x1)")).unwrap());
        assert!(!qm.is_injective(&t("*(0,x1)")).unwrap());
    }

    #[test]
    fn natural_counting() {
        let n = Naturals::<BigUint>::new();
        let alpha = Assignment::from([(Var(1), BigUint::from(3u32))]);
        assert_eq!(eval(&t("*(10,x1)"), &alpha, &n).unwrap(), BigUint::from(30u32));
        assert_eq!(n.solutions(&t("*(x1,x2)"), &BigUint::from(12u32)).unwrap().count(), Some(4));
        assert!(!in_unity_set(&t("*(x1,x2)"), &BigUint::from(12u32), &n).unwrap());
        assert!(!n.is_injective(&t("*(x1,x2)")).unwrap());
        assert!(n.is_injective(&t("*(x1,x1)")).unwrap());
        assert_eq!(n.solutions(&t("*(x1,x1)"), &BigUint::from(36u32)).unwrap().count(), Some(1));
        assert!(n.apply(&Symbol::new("1"), &[]).is_err());
        assert_eq!(n.solutions(&t("7"), &BigUint::from(7u32)).unwrap().count(), Some(1));
    }
}
