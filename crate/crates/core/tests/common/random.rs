use anaprop::algebra::FiniteAlgebra;
use rand::Rng;

const NAMES: [&str; 2] = ["f", "g"];

/// A signature of at most two symbols of arity at most two.
pub fn random_signature<R: Rng>(rng: &mut R) -> Vec<(&'static str, usize)> {
    let count = rng.gen_range(0..=2);
    NAMES[..count].iter().map(|&s| (s, rng.gen_range(0..=2))).collect()
}

/// Two random algebras over one random signature, each with at most
/// `max_size` elements.
pub fn random_pair<R: Rng>(rng: &mut R, max_size: usize) -> (FiniteAlgebra, FiniteAlgebra) {
    let sig = random_signature(rng);
    let n = rng.gen_range(1..=max_size);
    let m = rng.gen_range(1..=max_size);
    (
        FiniteAlgebra::random(rng, n, &sig).unwrap(),
        FiniteAlgebra::random(rng, m, &sig).unwrap(),
    )
}

/// `k ∈ {1,2}` and `ℓ ∈ {1,∞}`.
pub fn random_fragment<R: Rng>(rng: &mut R) -> (usize, Option<usize>) {
    (rng.gen_range(1..=2), if rng.gen_bool(0.5) { Some(1) } else { None })
}
