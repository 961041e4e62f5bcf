//! Invariants of the finite decider on seeded random algebras: the symmetry
//! and reflexivity axioms, the homomorphism and isomorphism theorems, and
//! expansion by term-definable operations.

mod common;

use anaprop::algebra::{check_homomorphism, FiniteAlgebra, Operation};
use anaprop::decider::Decider;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random::{random_fragment, random_pair, random_signature};

const CAP: usize = 400;

/// A decider for the pair, or `None` when the state space exceeds the cap.
fn decider(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>) -> Option<Decider> {
    match Decider::with_cap(a, b, k, l, CAP) {
        Ok(d) => Some(d),
        Err(anaprop::Error::StateCap { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

fn quadruples(n: usize, m: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n * n * m * m).map(move |i| [i / (n * m * m), i / (m * m) % n, i / m % m, i % m])
}

#[test]
fn symmetry_and_reflexivity_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let (a, b) = random_pair(&mut rng, 3);
        let (k, l) = random_fragment(&mut rng);
        let (Some(ab), Some(ba), Some(aa)) = (decider(&a, &b, k, l), decider(&b, &a, k, l), decider(&a, &a, k, l)) else {
            continue;
        };
        checked += 1;
        for [x, y, z, w] in quadruples(a.size(), b.size()) {
            let v = ab.decide_proportion(x, y, z, w).holds;
            assert_eq!(v, ba.decide_proportion(z, w, x, y).holds, "p-symmetry at {x},{y},{z},{w}");
            assert_eq!(v, ab.decide_proportion(y, x, w, z).holds, "inner p-symmetry at {x},{y},{z},{w}");
            if x == y && z == w {
                assert!(v, "inner p-reflexivity at {x},{z}");
            }
        }
        for [x, y, _, w] in quadruples(a.size(), a.size()) {
            assert!(aa.decide_proportion(x, y, x, y).holds, "p-reflexivity at {x},{y}");
            if x == y {
                assert_eq!(aa.decide_proportion(x, x, x, w).holds, w == x, "p-determinism at {x},{w}");
            }
        }
    }
}

#[test]
fn projections_satisfy_the_homomorphism_theorem() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 40 {
        let (a, b) = random_pair(&mut rng, 3);
        let p = a.product(&b).unwrap();
        let h: Vec<usize> = (0..p.size()).map(|i| i / b.size()).collect();
        assert!(check_homomorphism(&h, &p, &a));
        let (k, l) = (1, if rng.gen_bool(0.5) { Some(1) } else { None });
        let Some(dec) = decider(&p, &a, k, l) else { continue };
        checked += 1;
        for x in 0..p.size() {
            for y in 0..p.size() {
                let premise = !dec.all_trivial(0, x, y) || dec.all_trivial(1, h[x], h[y]);
                if premise {
                    assert!(dec.decide_arrow(x, y, h[x], h[y]).holds, "arrow {x}→{y} :· {}→{}", h[x], h[y]);
                }
            }
        }
    }
}

#[test]
fn transport_preserves_every_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 60 {
        let sig = random_signature(&mut rng);
        let n = rng.gen_range(1..=3);
        let a = FiniteAlgebra::random(&mut rng, n, &sig).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let b = a.transport(&perm).unwrap();
        assert!(check_homomorphism(&perm, &a, &b));
        let (k, l) = random_fragment(&mut rng);
        let (Some(da), Some(db)) = (decider(&a, &a, k, l), decider(&b, &b, k, l)) else {
            continue;
        };
        checked += 1;
        for [x, y, z, w] in quadruples(n, n) {
            assert_eq!(
                da.decide_proportion(x, y, z, w).holds,
                db.decide_proportion(perm[x], perm[y], perm[z], perm[w]).holds
            );
        }
    }
}

/// Adds `name` interpreted by `f` on every element.
fn expand(a: &FiniteAlgebra, name: &str, f: impl Fn(usize) -> usize) -> FiniteAlgebra {
    let mut ops = a.operations().to_vec();
    ops.push(Operation::from_fn(name, 1, a.size(), |x| f(x[0])));
    FiniteAlgebra::new(a.name(), a.labels().to_vec(), a.constants().to_vec(), ops).unwrap()
}

#[test]
fn term_definable_expansions_keep_every_proportion() {
    let chain = common::ex11_a2();
    let twice = expand(&chain, "h", |x| chain.apply_op(0, &[chain.apply_op(0, &[x])]));
    let points = common::ex11_a1();
    let identity = expand(&points, "h", |x| x);
    let branches = common::ex11_a3();
    let composed = expand(&branches, "h", |x| branches.apply_op(1, &[branches.apply_op(0, &[x])]));
    for (small, big) in [(&chain, &twice), (&points, &identity), (&branches, &composed)] {
        for l in [Some(1), None] {
            let before = Decider::new(small, small, 1, l).unwrap().enumerate_all();
            let after = Decider::new(big, big, 1, l).unwrap().enumerate_all();
            let lost: Vec<_> = before.iter().filter(|q| !after.contains(q)).collect();
            assert!(lost.is_empty(), "{} lost {lost:?}", small.name());
        }
    }
}
