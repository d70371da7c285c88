//! Rational functions num/den over Q in a fixed set of formal parameters.
//!
//! Elements are kept fully reduced: the gcd of numerator and denominator is
//! divided out after every operation, and the denominator is normalized to
//! primitive integer form with positive lex-leading coefficient.  Without the
//! mandatory reduction, coefficient blow-up dominates the run time of
//! higher-order verifications.

use std::fmt;
use std::sync::Arc;

use crate::mpoly::{MPoly, Vars};
use crate::num::Rat;
use crate::ring::{Field, Ring};

#[derive(Clone)]
pub struct MRat {
    pub num: MPoly,
    pub den: MPoly,
}

impl MRat {
    pub fn from_poly(num: MPoly) -> Self {
        let den = MPoly::one(num.vars.clone());
        MRat { num, den }
    }

    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        let mut r = MRat { num, den };
        r.reduce();
        r
    }

    /// The generator `name` of the function field.
    pub fn var(vars: Arc<Vars>, name: &str) -> Self {
        Self::from_poly(MPoly::var(vars, name))
    }

    pub fn constant(vars: Arc<Vars>, c: Rat) -> Self {
        Self::from_poly(MPoly::constant(vars, c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one(self.den.vars.clone());
            return;
        }
        if !self.den.is_constant() {
            // full-divisibility fast paths before the general gcd
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = MPoly::one(self.den.vars.clone());
            } else if let Some(q) = self.den.div_exact(&self.num) {
                self.den = q;
                self.num = MPoly::one(self.num.vars.clone());
            } else {
                let g = self.num.gcd(&self.den);
                if !g.is_constant() {
                    self.num = self.num.div_exact(&g).expect("gcd divides num");
                    self.den = self.den.div_exact(&g).expect("gcd divides den");
                }
            }
        }
        // canonical sign and scale on the denominator
        let (c, pp) = self.den.primitive_z();
        self.den = pp;
        self.num = self.num.scale(&c.recip());
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// Evaluate at a rational point; `None` if the denominator vanishes.
    pub fn eval_rat(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval_rat(point);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval_rat(point) / &d)
    }

    /// Substitute a polynomial for one variable.
    pub fn subst(&self, name: &str, poly: &MPoly) -> Self {
        MRat::new(self.num.subst(name, poly), self.den.subst(name, poly))
    }

    /// Map into any field: evaluate num and den at the given images of the
    /// variables and divide.
    pub fn eval_field<K: Field>(&self, args: &[K]) -> K {
        let d = self.den.eval_generic::<K>(args);
        self.num.eval_generic::<K>(args).div(&d)
    }
}

impl PartialEq for MRat {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiply; cheaper than reducing the difference
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for MRat {
    fn zero() -> Self {
        MRat::from_poly(MPoly::const_free(Rat::zero()))
    }

    fn one() -> Self {
        MRat::from_poly(MPoly::const_free(Rat::one()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // nested-denominator fast paths (common in pochhammer pipelines)
        if self.den == rhs.den {
            return MRat::new(self.num.add(&rhs.num), self.den.clone());
        }
        if let Some(q) = rhs.den.div_exact(&self.den) {
            // den_l | den_r
            return MRat::new(self.num.mul(&q).add(&rhs.num), rhs.den.clone());
        }
        if let Some(q) = self.den.div_exact(&rhs.den) {
            return MRat::new(self.num.add(&rhs.num.mul(&q)), self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): (a*(d/g) + c*(b/g)) / (b*(d/g))
        let g = self.den.gcd(&rhs.den);
        let (db, dd) = if g.is_constant() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let num = self.num.mul(&dd).add(&rhs.num.mul(&db));
        let den = self.den.mul(&dd);
        MRat::new(num, den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-reduce before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_constant() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_constant() { rhs.den.clone() } else { rhs.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_constant() { rhs.num.clone() } else { rhs.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_constant() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        let mut r = MRat { num: n1.mul(&n2), den: d1.mul(&d2) };
        // scale normalization only; the cross-reduction already removed the gcd
        let (c, pp) = r.den.primitive_z();
        r.den = pp;
        r.num = r.num.scale(&c.recip());
        r
    }

    fn neg(&self) -> Self {
        MRat { num: self.num.neg(), den: self.den.clone() }
    }

    fn from_rat(q: &Rat) -> Self {
        MRat::from_poly(MPoly::const_free(q.clone()))
    }

    fn as_rat(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }
}

impl Field for MRat {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(MRat::new(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Debug for MRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            let c = self.den.as_constant().unwrap();
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Clear the denominators of a list of rational functions: returns
/// `(numerators, d)` with `values[k] = numerators[k] / d` and every
/// numerator polynomial.  Nested denominators (each dividing the next, as
/// in pochhammer ratios) are detected cheaply.
pub fn clear_denominators(values: &[MRat]) -> (Vec<MPoly>, MPoly) {
    let mut d = MPoly::const_free(Rat::one());
    for v in values {
        if v.den.div_exact(&d).is_some() {
            d = v.den.clone();
        } else if d.div_exact(&v.den).is_none() {
            let g = d.gcd(&v.den);
            d = d.mul(&v.den.div_exact(&g).unwrap());
        }
    }
    let nums = values
        .iter()
        .map(|v| v.num.mul(&d.div_exact(&v.den).expect("lcm divides")))
        .collect();
    (nums, d)
}

/// Convenience: the rational-function field Q(names...) with its generators.
pub fn function_field(names: &[&str]) -> (Arc<Vars>, Vec<MRat>) {
    let vars = Vars::new(names);
    let gens = names.iter().map(|n| MRat::var(vars.clone(), n)).collect();
    (vars, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot() {
        let (_, gens) = function_field(&["A", "B"]);
        let a = &gens[0];
        let b = &gens[1];
        let x = a.add(&b.mul(b)); // A + B^2
        let y = a.sub(&MRat::one()); // A - 1
        let q = x.div(&y);
        assert_eq!(q.mul(&y), x);
        assert_eq!(x.div(&x), MRat::one());
    }

    #[test]
    fn reduction_cancels() {
        let (vars, gens) = function_field(&["A"]);
        let a = &gens[0];
        let one = MRat::one();
        // (A^2-1)/(A-1) = A+1
        let r = MRat::new(
            a.num.mul(&a.num).sub(&MPoly::one(vars.clone())),
            a.num.sub(&MPoly::one(vars)),
        );
        assert_eq!(r, a.add(&one));
        assert!(r.is_poly());
    }

    #[test]
    fn denominator_sign_canonical() {
        let (vars, _) = function_field(&["A"]);
        let a = MPoly::var(vars.clone(), "A");
        let r = MRat::new(MPoly::one(vars.clone()), a.neg());
        // denominator normalized to +A, sign pushed to numerator
        assert_eq!(r.den, a);
        assert_eq!(r.num, MPoly::constant(vars, Rat::from_int(-1)));
    }
}
