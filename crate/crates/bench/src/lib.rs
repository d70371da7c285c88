//! Shared fixtures for the criterion benchmarks.

use alghyp_core::mrat::{function_field, MRat};
use alghyp_core::num::Rat;
use alghyp_core::ring::Ring;

/// The generator of Q(B).
pub fn symbolic_b() -> MRat {
    function_field(&["B"]).1[0].clone()
}

/// The generator of Q(a).
pub fn symbolic_a() -> MRat {
    function_field(&["a"]).1[0].clone()
}

/// A structured bivariate gcd instance: two products of shifted linear
/// forms sharing half their factors, the shape the rational-function
/// normalizer sees constantly.
pub fn gcd_instance() -> (alghyp_core::MPoly, alghyp_core::MPoly) {
    let (vars, gens) = function_field(&["A", "B"]);
    let a = gens[0].num.clone();
    let b = gens[1].num.clone();
    let one = alghyp_core::MPoly::one(vars);
    let lin = |i: i64, j: i64| {
        a.add(&b.scale(&Rat::from_int(i)))
            .add(&one.scale(&Rat::from_int(j)))
    };
    let mut shared = one.clone();
    for i in 1..=4 {
        shared = shared.mul(&lin(i, 1));
    }
    let mut left = shared.clone();
    let mut right = shared;
    for i in 5..=7 {
        left = left.mul(&lin(i, 2));
        right = right.mul(&lin(i, 3));
    }
    (left, right)
}
