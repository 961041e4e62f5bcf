//! Proportional axioms in the monolinear fragments of (ℤ,+,ℤ), (ℚ,·,ℚ) and
//! words: random suites for the axioms that hold, fixed instances for the
//! ones that do not.

use anaprop::axioms::{check_axiom, Axiom, DifferenceProportion, GeometricProportion, Relation, WordProportion};
use anaprop::closed_form::decide_mono_word;
use anaprop::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const INSTANCES: usize = 1000;

fn assert_all_hold<R: Relation>(rel: &R, axioms: &[Axiom], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &axiom in axioms {
        let report = check_axiom(rel, axiom, &mut rng, INSTANCES);
        assert_eq!(report.counterexample, None, "{}", axiom.name());
        assert_eq!(report.checked, INSTANCES, "{}", axiom.name());
    }
}

fn w(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn words() -> WordProportion {
    WordProportion {
        alphabet: vec!['x', 'y'],
        max_len: 3,
    }
}

#[test]
fn differences_satisfy_all_but_commutativity() {
    let rel = DifferenceProportion { bound: 30 };
    let rest: Vec<Axiom> = Axiom::ALL.into_iter().filter(|&a| a != Axiom::PCommutativity).collect();
    assert_all_hold(&rel, &rest, 1);
    let [one, two] = [1, 2].map(Integer::from);
    assert_eq!(Axiom::PCommutativity.check(&rel, &[one, two]), Some(false));
}

#[test]
fn nonzero_ratios_satisfy_all_but_commutativity() {
    let rel = GeometricProportion { bound: 9 };
    let rest: Vec<Axiom> = Axiom::ALL.into_iter().filter(|&a| a != Axiom::PCommutativity).collect();
    assert_all_hold(&rel, &rest, 2);
    // a:b::b:a needs a/b = b/a, so only a = ±b qualify.
    let q = |v: i64| anaprop::Rational::from_integer(Integer::from(v));
    assert_eq!(Axiom::PCommutativity.check(&rel, &[q(1), q(2)]), Some(false));
    assert_eq!(Axiom::PCommutativity.check(&rel, &[q(3), q(-3)]), Some(true));
}

#[test]
fn words_satisfy_symmetries_and_reflexivities() {
    let held = [
        Axiom::PSymmetry,
        Axiom::InnerPSymmetry,
        Axiom::PReflexivity,
        Axiom::PDeterminism,
        Axiom::InnerPReflexivity,
        Axiom::StrongPReflexivity,
    ];
    assert_all_hold(&words(), &held, 3);
}

#[test]
fn word_counterexamples() {
    let rel = words();
    assert_eq!(Axiom::PCommutativity.check(&rel, &[w("x"), w("y")]), Some(false));
    let inner = [w("x"), w("x"), w("xxy"), w("xyx"), w("x"), w("yxx")];
    assert_eq!(Axiom::InnerTransitivity.check(&rel, &inner), Some(false));
    // Strong inner p-reflexivity and both transitivities fail as well.
    assert_eq!(Axiom::StrongInnerPReflexivity.check(&rel, &[w("x"), w("xy"), w("yx")]), Some(false));
    let trans = [w("x"), w("x"), w("y"), w("y"), w("xxy"), w("yxx")];
    assert_eq!(Axiom::Transitivity.check(&rel, &trans), Some(false));
    let central = [w("x"), w("xy"), w("xyy"), w("yxyy")];
    assert_eq!(Axiom::CentralTransitivity.check(&rel, &central), Some(false));
}

/// Indexed letters `a1 a2 a3 b1 b3 c2 d2 e1 e3` encoded as single characters.
fn indexed(s: &str) -> Vec<char> {
    s.split_whitespace()
        .map(|l| match l {
            "a1" => 'A',
            "a2" => 'B',
            "a3" => 'C',
            "b1" => 'D',
            "b3" => 'E',
            "c2" => 'F',
            "d2" => 'G',
            "e1" => 'H',
            "e3" => 'I',
            _ => panic!("unknown letter {l}"),
        })
        .collect()
}

#[test]
fn central_permutation_fails_on_six_letters() {
    let rel = WordProportion {
        alphabet: indexed("a1 a2 a3 b1 b3 c2"),
        max_len: 3,
    };
    let x = ["a1 a2 a3", "b1 a2 b3", "a1 c2 a3", "b1 c2 b3"].map(indexed);
    assert!(rel.holds(&x[0], &x[1], &x[2], &x[3]));
    assert_eq!(Axiom::CentralPermutation.check(&rel, &x), Some(false));
}

#[test]
fn nine_letter_inner_transitivity_instance() {
    let first = ["a1 a2 a3", "b1 a2 b3", "a1 c2 a3", "b1 c2 a3"].map(indexed);
    assert!(decide_mono_word(&first[0], &first[1], &first[2], &first[3]).is_none());
    let second = ["b1 a2 b3", "e1 a2 e3", "b1 d2 b3", "e1 d2 e3"].map(indexed);
    assert!(decide_mono_word(&second[0], &second[1], &second[2], &second[3]).is_some());
}
