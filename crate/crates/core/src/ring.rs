//! Ring and field abstractions shared by every coefficient domain.
//!
//! All coefficient domains used here are commutative Q-algebras, and all of
//! the ones we instantiate are fields: Q itself, rational-function fields
//! like Q(a) or Q(A,B,C), and cyclotomic extensions of those.  Generic series
//! and polynomial code is written against these two traits.

use std::fmt;

use crate::num::Rat;

/// Commutative unital Q-algebra.
///
/// `zero`/`one`/`from_rat` construct context-free scalars; domains that carry
/// runtime context (variable lists, cyclotomic conductors) must absorb such
/// scalars in their binary operations.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(q: &Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_int(n))
    }

    /// The rational value of this element, when it is one (used to screen
    /// numeric parameter choices; symbolic elements return None).
    fn as_rat(&self) -> Option<Rat> {
        None
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self * rhs1 + rhs2`, the fused step used by Horner evaluation.
    fn mul_add(&self, rhs1: &Self, rhs2: &Self) -> Self {
        self.mul(rhs1).add(rhs2)
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    fn inv(&self) -> Self {
        self.try_inv().expect("division by zero in coefficient field")
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u(e as u32)
        } else {
            self.inv().pow_u((-e) as u32)
        }
    }
}

/// Sum of a slice of ring elements.
pub fn ring_sum<R: Ring>(items: &[R]) -> R {
    items.iter().fold(R::zero(), |acc, x| acc.add(x))
}
