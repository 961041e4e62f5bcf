//! Acceptance checks: one PASS/FAIL line per criterion, non-zero exit when
//! any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use anaprop::algebra::{
    check_homomorphism, Additive, FiniteAlgebra, Item, Naturals, Operation, WordAlgebra, WordPattern,
};
use anaprop::antiunify::{common_gens, mgg, monomial_gens};
use anaprop::axioms::{check_axiom, Axiom, DifferenceProportion, GeometricProportion, Relation, WordProportion};
use anaprop::closed_form::{
    decide_mono_add, decide_mono_mul_field, decide_mono_word, decide_sy_add, decide_sy_word, WordFactorization,
};
use anaprop::decider::{verify_characteristic, Decider};
use anaprop::oracle::{oracle_justifications, Oracle};
use anaprop::terms::{canonical_rename, parse_rule, parse_term, RewriteRule, Symbol, Var};
use anaprop::tree::{lgg, solve_tree_equation, PairVariableMap};
use anaprop::{Integer, Natural};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Report {
    failed: usize,
    total: usize,
}

impl Report {
    /// Runs one criterion. `limit` bounds the wall-clock time when set.
    fn run(&mut self, id: &str, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(max)) if took > max => Err(format!("took {took:.2?}, limit {max:?}")),
            (o, _) => o,
        };
        self.total += 1;
        match outcome {
            Ok(detail) => println!("PASS {id:<5} {name} ({detail}; {took:.2?})"),
            Err(why) => {
                self.failed += 1;
                println!("FAIL {id:<5} {name}: {why}");
            }
        }
    }
}

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

fn four_points() -> FiniteAlgebra {
    FiniteAlgebra::build("four-points", &["a", "b", "c", "d"], &[], vec![]).unwrap()
}

fn unary_chain() -> FiniteAlgebra {
    let f = Operation::from_fn("f", 1, 4, |x| [B, B, C, D][x[0]]);
    FiniteAlgebra::build("unary-chain", &["a", "b", "c", "d"], &[], vec![f]).unwrap()
}

fn two_branches() -> FiniteAlgebra {
    let f = Operation::from_fn("f", 1, 3, |x| [B, B, C][x[0]]);
    let g = Operation::from_fn("g", 1, 3, |x| [C, B, C][x[0]]);
    FiniteAlgebra::build("two-branches", &["a", "b", "c"], &[], vec![f, g]).unwrap()
}

fn hom_pair() -> (FiniteAlgebra, FiniteAlgebra, [usize; 4]) {
    let ga = Operation::from_fn("g", 1, 4, |x| [B, B, D, D][x[0]]);
    let gb = Operation::from_fn("g", 1, 2, |_| 1);
    let a = FiniteAlgebra::build("source", &["a", "b", "c", "d"], &[], vec![ga]).unwrap();
    let b = FiniteAlgebra::build("target", &["e", "f"], &[], vec![gb]).unwrap();
    (a, b, [0, 1, 0, 1])
}

fn shown_rules(v: &[RewriteRule]) -> BTreeSet<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn strings(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = anaprop_cli::run(std::iter::once("anaprop").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn word_rule(lhs: &str, rhs: &str) -> RewriteRule {
    let pattern = |s: &str| {
        WordPattern(
            s.chars()
                .map(|c| match c {
                    'x' => Item::Var(Var(1)),
                    'y' => Item::Var(Var(2)),
                    l => Item::Letter(Symbol::from(l.to_string())),
                })
                .collect(),
        )
        .to_term()
    };
    RewriteRule::new(pattern(lhs), pattern(rhs)).unwrap()
}

fn letters(s: &str) -> Vec<Symbol> {
    s.chars().map(|c| Symbol::from(c.to_string())).collect()
}

fn random_signature(rng: &mut ChaCha8Rng) -> Vec<(&'static str, usize)> {
    let count = rng.gen_range(0..=2);
    ["f", "g"][..count].iter().map(|&s| (s, rng.gen_range(0..=2))).collect()
}

fn random_fragment(rng: &mut ChaCha8Rng) -> (usize, Option<usize>) {
    (rng.gen_range(1..=2), if rng.gen_bool(0.5) { Some(1) } else { None })
}

fn capped(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, l: Option<usize>, cap: usize) -> Option<Decider> {
    match Decider::with_cap(a, b, k, l, cap) {
        Ok(d) => Some(d),
        Err(anaprop::Error::StateCap { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

fn golden(r: &mut Report) {
    let second = Some(Duration::from_secs(1));

    r.run("1.1", "four points: a:b::c:d and a:c::b:d hold", second, || {
        let alg = four_points();
        let dec = Decider::new(&alg, &alg, 1, None).unwrap();
        ensure(dec.decide_proportion(A, B, C, D).holds, "a:b::c:d fails")?;
        ensure(dec.decide_proportion(A, C, B, D).holds, "a:c::b:d fails")?;
        Ok("both hold".into())
    });
    r.run("1.2", "unary chain: a:b::c:d fails", second, || {
        let alg = unary_chain();
        let dec = Decider::new(&alg, &alg, 1, None).unwrap();
        ensure(!dec.decide_proportion(A, B, C, D).holds, "a:b::c:d holds")?;
        Ok("fails".into())
    });
    r.run("1.3", "two branches: a:b::a:c fails", second, || {
        let alg = two_branches();
        let dec = Decider::new(&alg, &alg, 1, None).unwrap();
        ensure(!dec.decide_proportion(A, B, A, C).holds, "a:b::a:c holds")?;
        Ok("fails".into())
    });
    r.run("1.4", "oracle justification sets {x→x} and {x→fⁿx | n ≥ 1} to depth 3", second, || {
        let got = shown_rules(&oracle_justifications(A, A, &four_points(), 1, None, 3).unwrap());
        ensure(got == strings(&["x1 -> x1"]), format!("a→a: {got:?}"))?;
        let got = shown_rules(&oracle_justifications(A, B, &unary_chain(), 1, None, 3).unwrap());
        let want = strings(&["x1 -> f(x1)", "x1 -> f(f(x1))", "x1 -> f(f(f(x1)))"]);
        ensure(got == want, format!("a→b: {got:?}"))?;
        Ok("both sets reproduced".into())
    });
    r.run("1.5", "monomial generalization tables of 4, 20 and 30", second, || {
        let tables: [(u64, &[&str]); 3] = [
            (4, &["4", "2x", "xy", "x^2", "x"]),
            (20, &["20", "10x", "5x^2", "4x", "5xy", "2xy", "xyz", "2x", "5x", "xy", "x^2y", "x"]),
            (30, &["30", "15x", "10x", "6x", "5xy", "2xy", "3xy", "xyz", "2x", "5x", "xy", "3x", "x"]),
        ];
        for (n, want) in tables {
            let got: BTreeSet<String> = monomial_gens(n).unwrap().iter().map(|m| m.to_string()).collect();
            ensure(got == strings(want), format!("↑{n} = {got:?}"))?;
        }
        Ok("5, 12 and 13 entries".into())
    });
    r.run("1.6", "common generalizations of 20 and 30", second, || {
        let got: BTreeSet<String> = common_gens(20, 30).unwrap().iter().map(|m| m.to_string()).collect();
        ensure(got == strings(&["10x", "2xy", "5xy", "xyz", "2x", "5x", "xy", "x"]), format!("{got:?}"))?;
        Ok("8 entries".into())
    });
    r.run("1.7", "minimal common generalizations of 20 and 30 are {10x}", second, || {
        let got: BTreeSet<String> = mgg(20, 30).unwrap().iter().map(|m| m.to_string()).collect();
        ensure(got == strings(&["10x"]), format!("{got:?}"))?;
        Ok("{10x}".into())
    });
    r.run("1.8", "CLI solve 20:4::30:x over nmul gives {6, 9} via 10x→2x and 10x→x²", second, || {
        let (code, out) = cli(&["solve", "20", "4", "30", "--algebra", "nmul"]);
        ensure(code == 0, format!("exit {code}: {out}"))?;
        ensure(out.starts_with("{6, 9}"), format!("output: {out}"))?;
        ensure(out.contains("6 via 10x -> 2x"), format!("missing 10x -> 2x: {out}"))?;
        ensure(out.contains("9 via 10x -> x^2"), format!("missing 10x -> x^2: {out}"))?;
        Ok(out.lines().next().unwrap_or_default().to_string())
    });
    r.run("1.9", "2:4::3:6 fails as a difference and as an aligned sum", second, || {
        let [a, b, c, d] = [2, 4, 3, 6].map(Integer::from);
        ensure(!decide_mono_add(&a, &b, &c, &d), "monolinear holds")?;
        ensure(decide_sy_add(&a, &b, &c, &d).is_none(), "aligned holds")?;
        Ok("both false".into())
    });
    r.run("1.10", "x→x·x is a characteristic justification of 2→4 :· 3→6 over nmul", second, || {
        let rule = parse_rule("x1 -> *(x1,x1)").unwrap();
        let [a, b, c, d] = [2u32, 4, 3, 6].map(Natural::from);
        let m = Naturals::<Natural>::new();
        let ok = verify_characteristic(&rule, &a, &b, &c, &d, &m, &m).unwrap();
        ensure(ok, "x·x evaluates to 9 at x = 3, so the rule does not justify 3→6")?;
        Ok("verified".into())
    });
    r.run("1.10b", "x→x+x is a characteristic justification of 2→4 :· 3→6 over zplus", second, || {
        let rule = parse_rule("x1 -> +(x1,x1)").unwrap();
        let [a, b, c, d] = [2, 4, 3, 6].map(Integer::from);
        let z = Additive::<Integer>::new();
        ensure(verify_characteristic(&rule, &a, &b, &c, &d, &z, &z).unwrap(), "rejected")?;
        Ok("verified".into())
    });
    r.run("1.11", "tree equation f(a,a,a)→f(a,a,a) :· f(a,b,c)→x has f(a,c,b) and f(c,b,a)", second, || {
        let t = |s: &str| parse_term(s).unwrap();
        let sols = solve_tree_equation(&t("f(a,a,a)"), &t("f(a,a,a)"), &t("f(a,b,c)"));
        for want in ["f(a,c,b)", "f(c,b,a)"] {
            ensure(sols.contains(&t(want)), format!("{want} missing"))?;
        }
        Ok(format!("{} solutions", sols.len()))
    });
    r.run("1.12", "lgg(f(a,a,a), f(a,b,c)) = f(a,x1,x2) up to renaming", second, || {
        let (p, q) = (parse_term("f(a,a,a)").unwrap(), parse_term("f(a,b,c)").unwrap());
        let w = lgg(&p, &q, &mut PairVariableMap::avoiding([&p, &q]));
        let want = parse_term("f(a,x1,x2)").unwrap();
        ensure(canonical_rename(&[&w]) == canonical_rename(&[&want]), format!("got {w}"))?;
        Ok(w.to_string())
    });
    r.run("1.13", "monolinear words: a:b::ε:ab and ab:ba::ba:ab fail", second, || {
        let w = |s: &str| s.chars().collect::<Vec<_>>();
        ensure(decide_mono_word(&w("a"), &w("b"), &w(""), &w("ab")).is_none(), "a:b::ε:ab holds")?;
        ensure(decide_mono_word(&w("ab"), &w("ba"), &w("ba"), &w("ab")).is_none(), "ab:ba::ba:ab holds")?;
        Ok("both fail".into())
    });
    r.run("1.14", "xby→xcy is characteristic for ab→ac :· bc→cc over non-empty words", second, || {
        let alg = WordAlgebra::from_chars("abc", false).unwrap();
        let rule = word_rule("xby", "xcy");
        let [a, b, c, d] = ["ab", "ac", "bc", "cc"].map(letters);
        let ok = verify_characteristic(&rule, &a, &b, &c, &d, &alg, &alg).unwrap();
        ensure(ok, "ab has no factorization x·b·y with non-empty x and y")?;
        Ok("verified".into())
    });
    r.run("1.14b", "xby→xcy is characteristic for ab→ac :· bc→cc once ε is a word", second, || {
        let alg = WordAlgebra::from_chars("abc", true).unwrap();
        let rule = word_rule("xby", "xcy");
        let [a, b, c, d] = ["ab", "ac", "bc", "cc"].map(letters);
        ensure(verify_characteristic(&rule, &a, &b, &c, &d, &alg, &alg).unwrap(), "rejected")?;
        Ok("verified".into())
    });
    r.run("1.15", "ab:ac::bc:cc has no aligned factorization without ε", second, || {
        let w = |s: &str| s.chars().collect::<Vec<_>>();
        ensure(decide_sy_word(&w("ab"), &w("ac"), &w("bc"), &w("cc"), false).is_none(), "found one")?;
        Ok("absent".into())
    });
    r.run("1.16", "homomorphic images: a→b and c→d carry over, a→d does not", second, || {
        let (a, b, h) = hom_pair();
        ensure(check_homomorphism(&h, &a, &b), "H is not a homomorphism")?;
        let dec = Decider::new(&a, &b, 1, None).unwrap();
        ensure(dec.decide_arrow(A, B, h[A], h[B]).holds, "a→b :· Ha→Hb fails")?;
        ensure(dec.decide_arrow(C, D, h[C], h[D]).holds, "c→d :· Hc→Hd fails")?;
        ensure(!dec.decide_arrow(A, D, h[A], h[D]).holds, "a→d :· Ha→Hd holds")?;
        ensure(dec.decide_proportion(A, B, h[A], h[B]).holds, "a:b::Ha:Hb fails")?;
        Ok("three arrows and one proportion as expected".into())
    });
}

fn oracle_equivalence(r: &mut Report) {
    r.run("2", "decider agrees with the oracle on 200 random algebra pairs", Some(Duration::from_secs(600)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0a1e);
        let (mut sampled, mut accepted, mut quadruples) = (0, 0, 0);
        while accepted < 200 {
            sampled += 1;
            let sig = random_signature(&mut rng);
            let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let a = FiniteAlgebra::random(&mut rng, n, &sig).unwrap();
            let b = FiniteAlgebra::random(&mut rng, m, &sig).unwrap();
            let (k, l) = random_fragment(&mut rng);
            let Some(dec) = capped(&a, &b, k, l, 400) else { continue };
            let oracle = Oracle::new(&a, &b, k, l, 64).unwrap();
            ensure(oracle.is_exact(), "oracle not exact at depth 64")?;
            accepted += 1;
            for q in 0..n * n * m * m {
                let [x, y, z, w] = [q / (n * m * m), q / (m * m) % n, q / m % m, q % m];
                quadruples += 1;
                let (fast, slow) = (dec.decide_proportion(x, y, z, w), oracle.decide_proportion(x, y, z, w));
                ensure(fast.holds == slow.holds, format!("disagree on ({x},{y},{z},{w}) k={k} l={l:?}"))?;
            }
        }
        Ok(format!("{accepted} of {sampled} sampled pairs, {quadruples} quadruples"))
    });
}

fn theorem_equivalences(r: &mut Report) {
    const CASES: usize = 10_000;
    r.run("3.1", "difference proportion ⇔ a−b = c−d", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..CASES {
            let [a, b, c, mut d] = [0; 4].map(|_| rng.gen_range(-60i64..60));
            if rng.gen() {
                d = c - a + b;
            }
            let got = decide_mono_add(&Integer::from(a), &Integer::from(b), &Integer::from(c), &Integer::from(d));
            ensure(got == (a - b == c - d), format!("({a},{b},{c},{d})"))?;
        }
        Ok(format!("{CASES} cases"))
    });
    r.run("3.2", "aligned sums coincide with the monolinear relation", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..CASES {
            let [a, b, c, mut d] = [0; 4].map(|_| Integer::from(rng.gen_range(-60i64..60)));
            if rng.gen() {
                d = &c - &a + &b;
            }
            let same = decide_sy_add(&a, &b, &c, &d).is_some() == decide_mono_add(&a, &b, &c, &d);
            ensure(same, format!("({a},{b},{c},{d})"))?;
        }
        Ok(format!("{CASES} cases"))
    });
    r.run("3.3", "monolinear products over ℚ ⇔ cross-multiplication", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let rel = GeometricProportion { bound: 12 };
        for _ in 0..CASES {
            let [a, b, c, mut d] = [0; 4].map(|_| rel.sample(&mut rng));
            if rng.gen() {
                d = &b * &c / &a;
            }
            let got = decide_mono_mul_field(&a, &b, &c, &d).is_some();
            ensure(got == (&a * &d == &b * &c), format!("({a},{b},{c},{d})"))?;
        }
        Ok(format!("{CASES} nonzero cases"))
    });
    r.run("3.4", "monolinear word witnesses reconstruct the four words", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let rel = WordProportion {
            alphabet: vec!['a', 'b', 'c'],
            max_len: 3,
        };
        let mut witnessed = 0;
        for _ in 0..CASES {
            let q = if rng.gen() {
                [0; 4].map(|_| rel.sample(&mut rng))
            } else {
                let [a1, a2, a3, b1, b2, b3] = [0; 6].map(|_| rel.sample(&mut rng));
                WordFactorization { a1, a2, a3, b1, b2, b3 }.words()
            };
            if let Some(f) = decide_mono_word(&q[0], &q[1], &q[2], &q[3]) {
                witnessed += 1;
                ensure(f.words() == q, format!("{q:?}"))?;
            }
        }
        Ok(format!("{CASES} cases, {witnessed} with a witness"))
    });
}

fn random_suite<R: Relation>(r: &mut Report, id: &str, domain: &str, rel: &R, axiom: Axiom, seed: u64) {
    r.run(id, &format!("{domain}: {} holds on 1000 random instances", axiom.name()), None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report = check_axiom(rel, axiom, &mut rng, 1000);
        if let Some(x) = report.counterexample {
            return Err(format!("counterexample {} after {} instances", rel.show_all(&x), report.checked));
        }
        ensure(report.checked == 1000, format!("only {} instances with true premises", report.checked))?;
        Ok("1000 instances".into())
    });
}

fn fixed_counterexample<R: Relation>(r: &mut Report, id: &str, domain: &str, rel: &R, axiom: Axiom, x: Vec<R::Elem>) {
    let name = format!("{domain}: {} fails on {}", axiom.name(), rel.show_all(&x));
    r.run(id, &name, None, || match axiom.check(rel, &x) {
        Some(false) => Ok("violated".into()),
        Some(true) => Err("the instance satisfies the axiom".into()),
        None => Err("a premise of the instance is false".into()),
    });
}

const INDEXED: [&str; 9] = ["a1", "a2", "a3", "b1", "b3", "c2", "d2", "e1", "e3"];

/// Words over indexed letters `a1 a2 …`, one character per letter internally.
fn indexed(s: &str) -> Vec<char> {
    s.split_whitespace()
        .map(|l| char::from(b'A' + INDEXED.iter().position(|n| *n == l).expect("known letter") as u8))
        .collect()
}

struct Indexed(WordProportion);

impl Relation for Indexed {
    type Elem = Vec<char>;

    fn holds(&self, a: &Vec<char>, b: &Vec<char>, c: &Vec<char>, d: &Vec<char>) -> bool {
        self.0.holds(a, b, c, d)
    }

    fn solve(&self, a: &Vec<char>, b: &Vec<char>, c: &Vec<char>) -> Vec<Vec<char>> {
        self.0.solve(a, b, c)
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<char> {
        self.0.sample(rng)
    }

    fn show(&self, x: &Vec<char>) -> String {
        x.iter().map(|&c| INDEXED[(c as u8 - b'A') as usize]).collect()
    }
}

fn axiom_suites(r: &mut Report) {
    let add = DifferenceProportion { bound: 30 };
    let mut seed = 400;
    let mut n = 0;
    let mut next = || {
        n += 1;
        seed += 1;
        (format!("4.{n}"), seed)
    };
    for axiom in Axiom::ALL.into_iter().filter(|&a| a != Axiom::PCommutativity) {
        let (id, s) = next();
        random_suite(r, &id, "(ℤ,+)", &add, axiom, s);
    }
    let (id, _) = next();
    fixed_counterexample(r, &id, "(ℤ,+)", &add, Axiom::PCommutativity, vec![Integer::from(1), Integer::from(2)]);

    let mul = GeometricProportion { bound: 9 };
    for axiom in Axiom::ALL {
        let (id, s) = next();
        random_suite(r, &id, "(ℚ,·)", &mul, axiom, s);
    }

    let words = WordProportion {
        alphabet: vec!['x', 'y'],
        max_len: 3,
    };
    let satisfied = [
        Axiom::PSymmetry,
        Axiom::InnerPSymmetry,
        Axiom::PReflexivity,
        Axiom::PDeterminism,
        Axiom::StrongInnerPReflexivity,
        Axiom::StrongPReflexivity,
        Axiom::Transitivity,
        Axiom::CentralTransitivity,
    ];
    for axiom in satisfied {
        let (id, s) = next();
        random_suite(r, &id, "words", &words, axiom, s);
    }
    let six = Indexed(WordProportion {
        alphabet: indexed("a1 a2 a3 b1 b3 c2"),
        max_len: 3,
    });
    let (id, _) = next();
    let perm = ["a1 a2 a3", "b1 a2 b3", "a1 c2 a3", "b1 c2 b3"].map(indexed).to_vec();
    fixed_counterexample(r, &id, "words", &six, Axiom::CentralPermutation, perm);
    let (id, _) = next();
    fixed_counterexample(r, &id, "words", &words, Axiom::PCommutativity, vec![vec!['x'], vec!['y']]);
    let nine = Indexed(WordProportion {
        alphabet: indexed("a1 a2 a3 b1 b3 c2 d2 e1 e3"),
        max_len: 3,
    });
    let (id, _) = next();
    let inner = ["a1 a2 a3", "b1 a2 b3", "a1 c2 a3", "b1 c2 a3", "e1 a2 e3", "e1 d2 e3"].map(indexed).to_vec();
    fixed_counterexample(r, &id, "words", &nine, Axiom::InnerTransitivity, inner);
    let (id, _) = next();
    let w = |s: &str| s.chars().collect::<Vec<_>>();
    let valid = vec![w("x"), w("x"), w("xxy"), w("xyx"), w("x"), w("yxx")];
    fixed_counterexample(r, &id, "words", &words, Axiom::InnerTransitivity, valid);

    let (id, _) = next();
    r.run(&id, "finite decider: p-symmetry, inner p-symmetry, p-reflexivity, inner p-reflexivity on 100 random pairs", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa11);
        let mut pairs = 0;
        while pairs < 100 {
            let sig = random_signature(&mut rng);
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let a = FiniteAlgebra::random(&mut rng, n, &sig).unwrap();
            let b = FiniteAlgebra::random(&mut rng, m, &sig).unwrap();
            let (k, l) = random_fragment(&mut rng);
            let (Some(ab), Some(ba), Some(aa)) = (capped(&a, &b, k, l, 400), capped(&b, &a, k, l, 400), capped(&a, &a, k, l, 400))
            else {
                continue;
            };
            pairs += 1;
            for q in 0..n * n * m * m {
                let [x, y, z, w] = [q / (n * m * m), q / (m * m) % n, q / m % m, q % m];
                let v = ab.decide_proportion(x, y, z, w).holds;
                ensure(v == ba.decide_proportion(z, w, x, y).holds, "p-symmetry")?;
                ensure(v == ab.decide_proportion(y, x, w, z).holds, "inner p-symmetry")?;
                ensure(ab.decide_proportion(x, x, z, z).holds, "inner p-reflexivity")?;
            }
            for x in 0..n {
                for y in 0..n {
                    ensure(aa.decide_proportion(x, y, x, y).holds, "p-reflexivity")?;
                }
            }
        }
        Ok(format!("{pairs} pairs"))
    });
}

fn isomorphism(r: &mut Report) {
    r.run("5", "proportions are invariant under transport along 50 random permutations", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x150);
        let mut algebras = 0;
        let mut quadruples = 0;
        while algebras < 50 {
            let sig = random_signature(&mut rng);
            let n = rng.gen_range(1..=3);
            let a = FiniteAlgebra::random(&mut rng, n, &sig).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let b = a.transport(&perm).unwrap();
            ensure(check_homomorphism(&perm, &a, &b), "transport is not an isomorphism")?;
            let (k, l) = random_fragment(&mut rng);
            let (Some(da), Some(db)) = (capped(&a, &a, k, l, 400), capped(&b, &b, k, l, 400)) else {
                continue;
            };
            algebras += 1;
            for q in 0..n.pow(4) {
                let [x, y, z, w] = [q / n.pow(3), q / n.pow(2) % n, q / n % n, q % n];
                quadruples += 1;
                let image = db.decide_proportion(perm[x], perm[y], perm[z], perm[w]).holds;
                ensure(da.decide_proportion(x, y, z, w).holds == image, format!("({x},{y},{z},{w})"))?;
            }
        }
        Ok(format!("{algebras} algebras, {quadruples} quadruples"))
    });
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let mut report = Report { failed: 0, total: 0 };
    golden(&mut report);
    oracle_equivalence(&mut report);
    theorem_equivalences(&mut report);
    axiom_suites(&mut report);
    isomorphism(&mut report);
    println!("\n{} of {} criteria passed", report.total - report.failed, report.total);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
