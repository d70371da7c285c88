//! Dense univariate polynomials over a generic coefficient field.
//!
//! Used for the cyclotomic moduli, the y-kernels of the convolution
//! transform, and the numerators/denominators of Belyi maps.  Coefficients
//! are stored little-endian (index = exponent) with no trailing zeros.

use std::fmt;

use crate::num::Rat;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq)]
pub struct UPoly<K: Field> {
    /// coefficient of x^i at index i; empty means the zero polynomial
    pub c: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn one() -> Self {
        UPoly { c: vec![K::one()] }
    }

    pub fn constant(k: K) -> Self {
        if k.is_zero() {
            Self::zero()
        } else {
            UPoly { c: vec![k] }
        }
    }

    pub fn x() -> Self {
        UPoly { c: vec![K::zero(), K::one()] }
    }

    pub fn from_coeffs(c: Vec<K>) -> Self {
        let mut p = UPoly { c };
        p.trim();
        p
    }

    /// Little-endian integer coefficients.
    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&n| K::from_i64(n)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(k) if k.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).add(&o.coeff(i)));
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|k| k.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_coeffs(self.c.iter().map(|a| a.mul(k)).collect())
    }

    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![K::zero(); n];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn pow(&self, e: u32) -> Self {
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

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul(&K::from_i64(i as i64)))
            .collect();
        Self::from_coeffs(c)
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![K::zero(); (self.degree() - div.degree() + 1).max(0) as usize];
        let dinv = div.lc().inv();
        while !r.is_zero() && r.degree() >= div.degree() {
            let dr = r.degree() as usize;
            let k = r.c[dr].mul(&dinv);
            let shift = dr - div.degree() as usize;
            q[shift] = k.clone();
            for (i, b) in div.c.iter().enumerate() {
                r.c[i + shift] = r.c[i + shift].sub(&b.mul(&k));
            }
            r.trim();
        }
        (Self::from_coeffs(q), r)
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.div_rem(div).1
    }

    /// Exact quotient; `None` if division leaves a remainder.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic greatest common divisor (Euclid; coefficients form a field).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*o`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = o.clone();
        let mut s0 = Self::one();
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lc().inv();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Product of the distinct irreducible factors: `self / gcd(self, self')`,
    /// monic-normalized.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() <= 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree decomposition (Yun): returns `[(f1,1), (f2,2), ...]` with
    /// `self = lc * prod f_i^i`, each `f_i` monic squarefree, pairwise coprime.
    /// Factors of multiplicity i with `deg f_i = 0` are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == 0 {
            return vec![];
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = df.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut out = vec![];
        let mut i = 1u32;
        loop {
            if b.degree() == 0 {
                break;
            }
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Evaluate with coefficients mapped into another Q-algebra.
    pub fn eval_map<T: Ring>(&self, x: &T, embed: impl Fn(&K) -> T) -> T {
        let mut acc = T::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&embed(a));
        }
        acc
    }

    /// Compose: `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Map coefficients into another field.
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::from_coeffs(self.c.iter().map(f).collect())
    }
}

impl UPoly<Rat> {
    /// Smallest positive integer multiple with integer coprime coefficients
    /// and positive leading coefficient.
    pub fn primitive_z(&self) -> UPoly<Rat> {
        use num::bigint::BigInt;
        use num::{Integer, One, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for k in &self.c {
            den = den.lcm(k.denom());
        }
        let mut g = BigInt::zero();
        for k in &self.c {
            g = g.gcd(&(k.numer() * &den / k.denom()));
        }
        let mut scale = Rat(num::rational::BigRational::new(den, g));
        if self.lc().is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl<K: Field> fmt::Debug for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*x")?,
                _ => write!(f, "({a})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = UPoly<Rat>;

    #[test]
    fn div_rem_and_gcd() {
        // (x-1)(x+2) = x^2 + x - 2
        let p = P::from_ints(&[-2, 1, 1]);
        let d = P::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, P::from_ints(&[2, 1]));
        // gcd(x^2-1, x-1) = x-1
        let g = P::from_ints(&[-1, 0, 1]).gcd(&d);
        assert_eq!(g, d);
    }

    #[test]
    fn squarefree_part_examples() {
        // (x-1)^2 (x+2) -> (x-1)(x+2)
        let p = P::from_ints(&[-1, 1]).pow(2).mul(&P::from_ints(&[2, 1]));
        assert_eq!(
            p.squarefree_part(),
            P::from_ints(&[-1, 1]).mul(&P::from_ints(&[2, 1])).monic()
        );
        // x^5 -> x
        let x5 = P::from_ints(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(x5.squarefree_part(), P::x());
    }

    #[test]
    fn yun_decomposition() {
        // x^2 (x-1)^3 (x+1)
        let p = P::x()
            .pow(2)
            .mul(&P::from_ints(&[-1, 1]).pow(3))
            .mul(&P::from_ints(&[1, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (P::from_ints(&[1, 1]), 1));
        assert_eq!(dec[1], (P::x(), 2));
        assert_eq!(dec[2], (P::from_ints(&[-1, 1]), 3));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = P::from_ints(&[-1, 0, 1]); // x^2-1
        let b = P::from_ints(&[2, 1]); // x+2
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, P::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), P::one());
    }

    #[test]
    fn composition() {
        // (x^2) o (x+1) = x^2 + 2x + 1
        let sq = P::from_ints(&[0, 0, 1]);
        let xp1 = P::from_ints(&[1, 1]);
        assert_eq!(sq.compose(&xp1), P::from_ints(&[1, 2, 1]));
    }
}
