//! The proportional axioms as executable checks. Each axiom is tested on
//! random instances of a [`Relation`]; implications are sampled so that
//! their premises hold, using the relation's solver.

use std::fmt::Debug;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::closed_form::{decide_mono_add, decide_mono_mul_field, decide_mono_word, solve_mono_add, solve_mono_word};
use crate::{Integer, Rational};

/// A proportion relation `a:b::c:d` on a single carrier.
pub trait Relation {
    type Elem: Clone + Eq + Debug;

    fn holds(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem, d: &Self::Elem) -> bool;

    /// Every `d` with `a:b::c:d`.
    fn solve(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Vec<Self::Elem>;

    fn sample(&self, rng: &mut dyn rand::RngCore) -> Self::Elem;

    fn show(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    /// An instance as `(x1, x2, …)`.
    fn show_all(&self, xs: &[Self::Elem]) -> String {
        let parts: Vec<String> = xs.iter().map(|x| self.show(x)).collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    PSymmetry,
    InnerPSymmetry,
    PReflexivity,
    PDeterminism,
    InnerPReflexivity,
    CentralPermutation,
    StrongInnerPReflexivity,
    StrongPReflexivity,
    PCommutativity,
    Transitivity,
    InnerTransitivity,
    CentralTransitivity,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
        Axiom::PSymmetry,
        Axiom::InnerPSymmetry,
        Axiom::PReflexivity,
        Axiom::PDeterminism,
        Axiom::InnerPReflexivity,
        Axiom::CentralPermutation,
        Axiom::StrongInnerPReflexivity,
        Axiom::StrongPReflexivity,
        Axiom::PCommutativity,
        Axiom::Transitivity,
        Axiom::InnerTransitivity,
        Axiom::CentralTransitivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::PSymmetry => "p-symmetry",
            Axiom::InnerPSymmetry => "inner p-symmetry",
            Axiom::PReflexivity => "p-reflexivity",
            Axiom::PDeterminism => "p-determinism",
            Axiom::InnerPReflexivity => "inner p-reflexivity",
            Axiom::CentralPermutation => "central permutation",
            Axiom::StrongInnerPReflexivity => "strong inner p-reflexivity",
            Axiom::StrongPReflexivity => "strong p-reflexivity",
            Axiom::PCommutativity => "p-commutativity",
            Axiom::Transitivity => "p-transitivity",
            Axiom::InnerTransitivity => "inner p-transitivity",
            Axiom::CentralTransitivity => "central p-transitivity",
        }
    }

    /// Number of elements in an instance.
    pub fn arity(self) -> usize {
        match self {
            Axiom::PReflexivity | Axiom::PCommutativity => 2,
            Axiom::PDeterminism | Axiom::InnerPReflexivity => 2,
            Axiom::StrongInnerPReflexivity | Axiom::StrongPReflexivity => 3,
            Axiom::Transitivity | Axiom::InnerTransitivity => 6,
            _ => 4,
        }
    }

    /// Evaluates the axiom on an instance. `None` means a premise is false
    /// and the instance says nothing.
    ///
    /// Layouts: `[a,b]` for p-reflexivity and p-commutativity, `[a,d]` for
    /// p-determinism, `[a,c]` for inner p-reflexivity, `[a,c,d]` for strong
    /// inner p-reflexivity, `[a,b,d]` for strong p-reflexivity,
    /// `[a,b,c,d,e,f]` for the two six-element transitivities and
    /// `[a,b,c,d]` otherwise.
    pub fn check<R: Relation>(self, rel: &R, x: &[R::Elem]) -> Option<bool> {
        assert_eq!(x.len(), self.arity(), "{} takes {} elements", self.name(), self.arity());
        let p = |i: usize, j: usize, k: usize, l: usize| rel.holds(&x[i], &x[j], &x[k], &x[l]);
        let implies = |premise: bool, conclusion: &dyn Fn() -> bool| premise.then(conclusion);
        match self {
            Axiom::PSymmetry => Some(p(0, 1, 2, 3) == p(2, 3, 0, 1)),
            Axiom::InnerPSymmetry => Some(p(0, 1, 2, 3) == p(1, 0, 3, 2)),
            Axiom::PReflexivity => Some(p(0, 1, 0, 1)),
            Axiom::PDeterminism => Some(p(0, 0, 0, 1) == (x[1] == x[0])),
            Axiom::InnerPReflexivity => Some(p(0, 0, 1, 1)),
            Axiom::CentralPermutation => Some(p(0, 1, 2, 3) == p(0, 2, 1, 3)),
            Axiom::StrongInnerPReflexivity => implies(p(0, 0, 1, 2), &|| x[2] == x[1]),
            Axiom::StrongPReflexivity => implies(p(0, 1, 0, 2), &|| x[2] == x[1]),
            Axiom::PCommutativity => Some(p(0, 1, 1, 0)),
            Axiom::Transitivity => implies(p(0, 1, 2, 3) && p(2, 3, 4, 5), &|| p(0, 1, 4, 5)),
            Axiom::InnerTransitivity => implies(p(0, 1, 2, 3) && p(1, 4, 3, 5), &|| p(0, 4, 2, 5)),
            Axiom::CentralTransitivity => implies(p(0, 1, 1, 2) && p(1, 2, 2, 3), &|| p(0, 1, 2, 3)),
        }
    }

    /// Draws an instance whose premises hold, or `None` when the drawn
    /// elements admit no solution to complete it.
    pub fn sample<R: Relation>(self, rel: &R, rng: &mut dyn rand::RngCore) -> Option<Vec<R::Elem>> {
        let mut s = || rel.sample(rng);
        let (a, b, c, e) = (s(), s(), s(), s());
        let random = s();
        let coin: bool = rng.gen();
        let mut pick = |v: Vec<R::Elem>| v.choose(rng).cloned();
        let fourth = |pick: &mut dyn FnMut(Vec<R::Elem>) -> Option<R::Elem>, x: &R::Elem, y: &R::Elem, z: &R::Elem| {
            if coin {
                pick(rel.solve(x, y, z))
            } else {
                Some(random.clone())
            }
        };
        Some(match self {
            Axiom::PReflexivity | Axiom::PCommutativity => vec![a, b],
            Axiom::PDeterminism => vec![a.clone(), if coin { a } else { random }],
            Axiom::InnerPReflexivity => vec![a, c],
            Axiom::StrongInnerPReflexivity => {
                let d = fourth(&mut pick, &a, &a, &c)?;
                vec![a, c, d]
            }
            Axiom::StrongPReflexivity => {
                let d = fourth(&mut pick, &a, &b, &a)?;
                vec![a, b, d]
            }
            Axiom::PSymmetry | Axiom::InnerPSymmetry | Axiom::CentralPermutation => {
                let d = fourth(&mut pick, &a, &b, &c)?;
                vec![a, b, c, d]
            }
            Axiom::Transitivity => {
                let d = pick(rel.solve(&a, &b, &c))?;
                let f = pick(rel.solve(&c, &d, &e))?;
                vec![a, b, c, d, e, f]
            }
            Axiom::InnerTransitivity => {
                let d = pick(rel.solve(&a, &b, &c))?;
                let f = pick(rel.solve(&b, &e, &d))?;
                vec![a, b, c, d, e, f]
            }
            Axiom::CentralTransitivity => {
                let c = pick(rel.solve(&a, &b, &b))?;
                let d = pick(rel.solve(&b, &c, &c))?;
                vec![a, b, c, d]
            }
        })
    }
}

/// Outcome of a randomized axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<E> {
    /// Instances whose premises held.
    pub checked: usize,
    /// The first violating instance, after which checking stops.
    pub counterexample: Option<Vec<E>>,
}

/// Checks `axiom` on `instances` random instances with true premises.
/// Sampling gives up after `100 × instances` draws.
pub fn check_axiom<R: Relation>(
    rel: &R,
    axiom: Axiom,
    rng: &mut dyn rand::RngCore,
    instances: usize,
) -> AxiomReport<R::Elem> {
    let mut checked = 0;
    for _ in 0..instances.saturating_mul(100) {
        if checked == instances {
            break;
        }
        let Some(x) = axiom.sample(rel, rng) else { continue };
        match axiom.check(rel, &x) {
            None => {}
            Some(true) => checked += 1,
            Some(false) => {
                return AxiomReport {
                    checked: checked + 1,
                    counterexample: Some(x),
                }
            }
        }
    }
    AxiomReport {
        checked,
        counterexample: None,
    }
}

/// Monolinear `(ℤ,+,ℤ)`, sampled from `[-bound, bound]`.
#[derive(Clone, Debug)]
pub struct DifferenceProportion {
    pub bound: i64,
}

impl Relation for DifferenceProportion {
    type Elem = Integer;

    fn holds(&self, a: &Integer, b: &Integer, c: &Integer, d: &Integer) -> bool {
        decide_mono_add(a, b, c, d)
    }

    fn solve(&self, a: &Integer, b: &Integer, c: &Integer) -> Vec<Integer> {
        vec![solve_mono_add(a, b, c).0]
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> Integer {
        Integer::from(rng.gen_range(-self.bound..=self.bound))
    }

    fn show(&self, x: &Integer) -> String {
        x.to_string()
    }
}

/// Monolinear `(ℚ,·,ℚ)` on nonzero rationals with numerators and
/// denominators up to `bound`.
#[derive(Clone, Debug)]
pub struct GeometricProportion {
    pub bound: i64,
}

impl Relation for GeometricProportion {
    type Elem = Rational;

    fn holds(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> bool {
        decide_mono_mul_field(a, b, c, d).is_some()
    }

    fn solve(&self, a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
        vec![b * c / a]
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> Rational {
        let n = rng.gen_range(1..=self.bound) * if rng.gen() { 1 } else { -1 };
        Rational::new(n.into(), rng.gen_range(1..=self.bound).into())
    }

    fn show(&self, x: &Rational) -> String {
        x.to_string()
    }
}

/// Monolinear words over `alphabet`, sampled with lengths up to `max_len`.
#[derive(Clone, Debug)]
pub struct WordProportion {
    pub alphabet: Vec<char>,
    pub max_len: usize,
}

impl Relation for WordProportion {
    type Elem = Vec<char>;

    fn holds(&self, a: &Vec<char>, b: &Vec<char>, c: &Vec<char>, d: &Vec<char>) -> bool {
        decide_mono_word(a, b, c, d).is_some()
    }

    fn solve(&self, a: &Vec<char>, b: &Vec<char>, c: &Vec<char>) -> Vec<Vec<char>> {
        solve_mono_word(a, b, c)
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<char> {
        let n = rng.gen_range(0..=self.max_len);
        (0..n).map(|_| *self.alphabet.choose(rng).expect("nonempty alphabet")).collect()
    }

    fn show(&self, x: &Vec<char>) -> String {
        if x.is_empty() {
            "ε".into()
        } else {
            x.iter().collect()
        }
    }
}
