//! j-invariants of plane models w^2 = f(x) with f squarefree of degree 3
//! or 4, through the classical invariants of the binary quartic.
//!
//! Writing f = a x^4 + b x^3 + c x^2 + d x + e (a = 0 for cubics, the root
//! at infinity playing the fourth branch point), the two invariants in the
//! normalization used here are
//!
//!   g2 = a e - b d / 4 + c^2 / 12,
//!   g3 = a c e / 6 + b c d / 48 - c^3 / 216 - a d^2 / 16 - b^2 e / 16,
//!
//! and j = 1728 g2^3 / (g2^3 - 27 g3^2).

use crate::num::Rat;
use crate::upoly::UPoly;
use crate::CoreError;

/// A hyperelliptic-form model w^2 = f(x), deg f in {3, 4}, f squarefree.
#[derive(Clone, Debug)]
pub struct EllipticModel {
    pub f: UPoly<Rat>,
}

impl EllipticModel {
    pub fn new(f: UPoly<Rat>) -> Result<Self, CoreError> {
        if !(3..=4).contains(&f.degree()) {
            return Err(CoreError::Constraint(format!(
                "model degree {} not 3 or 4",
                f.degree()
            )));
        }
        if !f.is_squarefree() {
            return Err(CoreError::Constraint("right-hand side must be squarefree".into()));
        }
        Ok(EllipticModel { f })
    }
}

/// The pair (g2, g3).
pub fn quartic_invariants(model: &EllipticModel) -> (Rat, Rat) {
    let c = |i: usize| model.f.coeff(i);
    let (e, d, cc, b, a) = (c(0), c(1), c(2), c(3), c(4));
    let g2 = &(&(&a * &e) - &(&(&b * &d) / &Rat::from_int(4)))
        + &(&(&cc * &cc) / &Rat::from_int(12));
    let g3 = &(&(&(&(&a * &cc) * &e) / &Rat::from_int(6))
        + &(&(&(&b * &cc) * &d) / &Rat::from_int(48)))
        - &(&(&(&(&cc * &cc) * &cc) / &Rat::from_int(216))
            + &(&(&(&(&a * &d) * &d) / &Rat::from_int(16))
                + &(&(&(&b * &b) * &e) / &Rat::from_int(16))));
    (g2, g3)
}

/// j = 1728 g2^3 / (g2^3 - 27 g3^2); errors on the degenerate discriminant.
pub fn elliptic_j(model: &EllipticModel) -> Result<Rat, CoreError> {
    let (g2, g3) = quartic_invariants(model);
    let g2c = g2.pow_i(3);
    let disc = &g2c - &(&Rat::from_int(27) * &g3.pow_i(2));
    if disc.is_zero() {
        return Err(CoreError::Constraint("degenerate model: g2^3 = 27 g3^2".into()));
    }
    Ok(&(&Rat::from_int(1728) * &g2c) / &disc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn cusp_model_j_zero() {
        // w^2 = x^3 + 1: g2 = 0, j = 0
        let m = EllipticModel::new(UPoly::from_ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(elliptic_j(&m).unwrap(), Rat::zero());
    }

    #[test]
    fn quoted_cubic_model() {
        // w^2 = 1 - (5/4)x - (5/2)x^2 - (5/4)x^3 -> j = -25/2
        let f = UPoly::from_coeffs(vec![Rat::one(), rat(-5, 4), rat(-5, 2), rat(-5, 4)]);
        let m = EllipticModel::new(f).unwrap();
        assert_eq!(elliptic_j(&m).unwrap(), rat(-25, 2));
    }

    #[test]
    fn quoted_quartic_model() {
        // w^2 = (1+3v)(1 + 115/27 v + 25/27 v^2 + 25/27 v^3) -> j = -2^12 5^2/3
        let f = UPoly::from_ints(&[1, 3]).mul(&UPoly::from_coeffs(vec![
            Rat::one(),
            rat(115, 27),
            rat(25, 27),
            rat(25, 27),
        ]));
        let m = EllipticModel::new(f).unwrap();
        assert_eq!(elliptic_j(&m).unwrap(), rat(-4096 * 25, 3));
    }

    #[test]
    fn rejects_bad_models() {
        // non-squarefree
        let f = UPoly::from_ints(&[1, 1]).pow(2).mul(&UPoly::from_ints(&[2, 1]));
        assert!(EllipticModel::new(f).is_err());
        // wrong degree
        assert!(EllipticModel::new(UPoly::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn invariance_under_translation() {
        // j is a model invariant: x -> x + 1 keeps it
        let f = UPoly::from_ints(&[2, 1, 0, 1]); // x^3 + x + 2
        let m = EllipticModel::new(f.clone()).unwrap();
        let shifted = f.compose(&UPoly::from_ints(&[1, 1]));
        let ms = EllipticModel::new(shifted).unwrap();
        assert_eq!(elliptic_j(&m).unwrap(), elliptic_j(&ms).unwrap());
    }
}
