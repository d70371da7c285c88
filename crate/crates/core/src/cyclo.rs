//! Cyclotomic quotient rings R[w]/(Phi_m(w)) over any coefficient field R.
//!
//! Conductors are fixed at construction; mixed-conductor arithmetic embeds
//! both operands into the lcm conductor.  Since Phi_m is irreducible over Q
//! and our base fields are purely transcendental extensions of Q, these
//! quotients are fields and inverses always exist for nonzero elements.

use std::fmt;

use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::upoly::UPoly;

/// Euler totient.
pub fn phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial with integer coefficients, computed by
/// dividing x^m - 1 by the cyclotomic polynomials of the proper divisors.
pub fn cyclo_poly(m: u32) -> UPoly<Rat> {
    assert!(m >= 1);
    let mut num = UPoly::<Rat>::x().pow(m).sub(&UPoly::one());
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclo_poly(d);
            num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

/// Element of R[w]/(Phi_m(w)); coordinates are in the power basis
/// 1, w, ..., w^(phi(m)-1).
#[derive(Clone)]
pub struct Cyclo<R: Field> {
    pub m: u32,
    /// length phi(m)
    pub coords: Vec<R>,
}

impl<R: Field> Cyclo<R> {
    pub fn from_scalar(m: u32, r: R) -> Self {
        let d = phi(m) as usize;
        let mut coords = vec![R::zero(); d];
        coords[0] = r;
        Cyclo { m, coords }
    }

    /// The root of unity w itself (requires m >= 2 for a nontrivial value).
    pub fn omega(m: u32) -> Self {
        let d = phi(m) as usize;
        let mut coords = vec![R::zero(); d];
        if d >= 2 {
            coords[1] = R::one();
        } else {
            // m = 1 or 2: w = 1 or -1 respectively
            coords[0] = if m == 2 { R::one().neg() } else { R::one() };
        }
        Cyclo { m, coords }
    }

    /// w^k, reduced into the power basis.
    pub fn omega_pow(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as u32;
        let modulus = cyclo_poly(m).map(|c| R::from_rat(c));
        let p = UPoly::<R>::x().pow(k).rem(&modulus);
        let d = phi(m) as usize;
        let mut coords = vec![R::zero(); d];
        for (i, c) in p.c.into_iter().enumerate() {
            coords[i] = c;
        }
        Cyclo { m, coords }
    }

    fn to_upoly(&self) -> UPoly<R> {
        UPoly::from_coeffs(self.coords.clone())
    }

    fn from_upoly(m: u32, p: UPoly<R>) -> Self {
        let d = phi(m) as usize;
        assert!(p.degree() < d as i64, "unreduced cyclotomic representative");
        let mut coords = vec![R::zero(); d];
        for (i, c) in p.c.into_iter().enumerate() {
            coords[i] = c;
        }
        Cyclo { m, coords }
    }

    /// Re-embed into conductor `target` (a multiple of m): w_m = w_target^(target/m).
    pub fn embed(&self, target: u32) -> Self {
        if target == self.m {
            return self.clone();
        }
        assert!(target % self.m == 0, "embedding requires a conductor multiple");
        let step = (target / self.m) as i64;
        let mut acc = Cyclo::from_scalar(target, R::zero());
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = Cyclo::omega_pow(target, step * i as i64).scale(c);
            acc = acc.add(&t);
        }
        acc
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.m, other.m);
        (self.embed(l), other.embed(l))
    }

    pub fn scale(&self, r: &R) -> Self {
        Cyclo { m: self.m, coords: self.coords.iter().map(|c| c.mul(r)).collect() }
    }

    /// Coordinate 0 if the element is rational (all other coordinates zero).
    pub fn as_scalar(&self) -> Option<R> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl<R: Field> PartialEq for Cyclo<R> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unify(other);
        a.coords == b.coords
    }
}

impl<R: Field> Ring for Cyclo<R> {
    fn zero() -> Self {
        Cyclo::from_scalar(1, R::zero())
    }

    fn one() -> Self {
        Cyclo::from_scalar(1, R::one())
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = self.unify(rhs);
        Cyclo {
            m: a.m,
            coords: a.coords.iter().zip(b.coords.iter()).map(|(x, y)| x.add(y)).collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.unify(rhs);
        let prod = a.to_upoly().mul(&b.to_upoly());
        let modulus = cyclo_poly(a.m).map(|c| R::from_rat(c));
        Cyclo::from_upoly(a.m, prod.rem(&modulus))
    }

    fn neg(&self) -> Self {
        Cyclo { m: self.m, coords: self.coords.iter().map(|c| c.neg()).collect() }
    }

    fn from_rat(q: &Rat) -> Self {
        Cyclo::from_scalar(1, R::from_rat(q))
    }

    fn as_rat(&self) -> Option<Rat> {
        self.as_scalar().and_then(|s| s.as_rat())
    }
}

impl<R: Field> Field for Cyclo<R> {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = cyclo_poly(self.m).map(|c| R::from_rat(c));
        let (g, s, _) = self.to_upoly().ext_gcd(&modulus);
        assert_eq!(g.degree(), 0, "cyclotomic modulus must stay irreducible");
        let ginv = g.c[0].inv();
        Some(Cyclo::from_upoly(self.m, s.scale(&ginv).rem(&modulus)))
    }
}

impl<R: Field> fmt::Debug for Cyclo<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Field> fmt::Display for Cyclo<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*w{}", self.m)?,
                _ => write!(f, "({c})*w{}^{i}", self.m)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Cyclo<Rat>;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclo_poly(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclo_poly(2), UPoly::from_ints(&[1, 1]));
        assert_eq!(cyclo_poly(3), UPoly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclo_poly(4), UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclo_poly(5), UPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclo_poly(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclo_poly(12), UPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn totient() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(2), 1);
        assert_eq!(phi(3), 2);
        assert_eq!(phi(12), 4);
    }

    #[test]
    fn root_of_unity_order() {
        for m in 1..=12u32 {
            let w = C::omega(m);
            assert_eq!(w.pow_u(m), C::one().embed(m), "w^{m} = 1 (m={m})");
        }
    }

    /// sum_j w^(jk) = m * [k = 0 mod m], exhaustively for m <= 12.
    #[test]
    fn character_orthogonality() {
        for m in 1..=12u32 {
            for k in 1..m as i64 {
                let mut s = C::zero().embed(m);
                for j in 0..m as i64 {
                    s = s.add(&C::omega_pow(m, j * k));
                }
                assert!(s.is_zero(), "sum of w^(jk) must vanish, m={m} k={k}");
            }
            let mut s = C::zero().embed(m);
            for _ in 0..m {
                s = s.add(&C::one());
            }
            assert_eq!(s.as_scalar().unwrap(), Rat::from_int(m as i64));
        }
    }

    #[test]
    fn inverse_in_quotient() {
        let w = C::omega(5);
        let x = w.add(&C::one().embed(5)); // 1 + w5
        let xi = x.try_inv().unwrap();
        assert_eq!(x.mul(&xi), C::one().embed(5));
    }

    #[test]
    fn mixed_conductor_embedding() {
        // w3 embedded into conductor 6: w3 = w6^2
        let w3 = C::omega(3).embed(6);
        assert_eq!(w3, C::omega_pow(6, 2));
        // (-1) from conductor 2 times w3: conductor lcm = 6
        let m1 = C::omega(2);
        let p = m1.mul(&C::omega(3));
        assert_eq!(p, C::omega_pow(6, 5)); // -w3 = w6^5
    }
}
