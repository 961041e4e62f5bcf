#![allow(dead_code)]

pub mod random;

use anaprop::algebra::{FiniteAlgebra, Operation};

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// Four elements, no operations.
pub fn ex11_a1() -> FiniteAlgebra {
    FiniteAlgebra::build("A1", &["a", "b", "c", "d"], &[], vec![]).unwrap()
}

/// `f`: a↦b, b↦b, c↦c, d↦d.
pub fn ex11_a2() -> FiniteAlgebra {
    let f = Operation::from_fn("f", 1, 4, |x| [B, B, C, D][x[0]]);
    FiniteAlgebra::build("A2", &["a", "b", "c", "d"], &[], vec![f]).unwrap()
}

/// `f`: a↦b and `g`: a↦c, with b and c fixed by both.
pub fn ex11_a3() -> FiniteAlgebra {
    let f = Operation::from_fn("f", 1, 3, |x| [B, B, C][x[0]]);
    let g = Operation::from_fn("g", 1, 3, |x| [C, B, C][x[0]]);
    FiniteAlgebra::build("A3", &["a", "b", "c"], &[], vec![f, g]).unwrap()
}

/// The homomorphism example: `g` on {a,b,c,d} with a↦b↦b, c↦d↦d, and on
/// {e,f} with e↦f↦f. `H` sends a,c to e and b,d to f.
pub fn hom_pair() -> (FiniteAlgebra, FiniteAlgebra, [usize; 4]) {
    let ga = Operation::from_fn("g", 1, 4, |x| [B, B, D, D][x[0]]);
    let gb = Operation::from_fn("g", 1, 2, |x| [1, 1][x[0]]);
    let a = FiniteAlgebra::build("A", &["a", "b", "c", "d"], &[], vec![ga]).unwrap();
    let b = FiniteAlgebra::build("B", &["e", "f"], &[], vec![gb]).unwrap();
    (a, b, [0, 1, 0, 1])
}
