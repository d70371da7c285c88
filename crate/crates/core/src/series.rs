//! Truncated formal power series over any coefficient field.
//!
//! A series carries a variable tag and exactly `order + 1` coefficients.
//! Binary operations require matching tags and truncate to the smaller
//! order.  Everything is exact; a "series" here is always the jet of a
//! formal power series, never an approximation.

use std::fmt;

use crate::num::Rat;
use crate::ring::Field;
use crate::upoly::UPoly;

/// Variable tag for a series (z, zeta, beta, g, s, t, u, v, x, ...).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Var(pub &'static str);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq)]
pub struct Series<R: Field> {
    pub var: Var,
    /// coefficients c_0 .. c_N
    pub c: Vec<R>,
}

impl<R: Field> Series<R> {
    pub fn zero(var: Var, order: usize) -> Self {
        Series { var, c: vec![R::zero(); order + 1] }
    }

    pub fn one(var: Var, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.c[0] = R::one();
        s
    }

    pub fn constant(var: Var, order: usize, k: R) -> Self {
        let mut s = Self::zero(var, order);
        s.c[0] = k;
        s
    }

    /// The identity series `x` (to the given order).
    pub fn identity(var: Var, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if order >= 1 {
            s.c[1] = R::one();
        }
        s
    }

    pub fn from_coeffs(var: Var, c: Vec<R>) -> Self {
        assert!(!c.is_empty());
        Series { var, c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series { var: self.var, c: self.c[..=n].to_vec() }
    }

    fn check_var(&self, o: &Self) {
        assert_eq!(self.var, o.var, "series variable mismatch: {} vs {}", self.var, o.var);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_var(o);
        let n = self.order().min(o.order());
        let c = (0..=n).map(|k| self.c[k].add(&o.c[k])).collect();
        Series { var: self.var, c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_var(o);
        let n = self.order().min(o.order());
        let c = (0..=n).map(|k| self.c[k].sub(&o.c[k])).collect();
        Series { var: self.var, c }
    }

    pub fn neg(&self) -> Self {
        Series { var: self.var, c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn scale(&self, k: &R) -> Self {
        Series { var: self.var, c: self.c.iter().map(|x| x.mul(k)).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_var(o);
        let n = self.order().min(o.order());
        let mut c = vec![R::zero(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.c[j].is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        Series { var: self.var, c }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Self {
        let c0 = self
            .c[0]
            .try_inv()
            .expect("series inverse requires invertible constant term");
        let n = self.order();
        let mut inv = vec![R::zero(); n + 1];
        inv[0] = c0.clone();
        for k in 1..=n {
            let mut s = R::zero();
            for j in 0..k {
                s = s.add(&inv[j].mul(&self.c[k - j]));
            }
            inv[k] = s.neg().mul(&c0);
        }
        Series { var: self.var, c: inv }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inverse())
    }

    /// Multiply by var^k, truncating at the original order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![R::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            c[i + k] = self.c[i].clone();
        }
        Series { var: self.var, c }
    }

    /// Divide by var^k; panics unless the first k coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(
            self.c.iter().take(k).all(|x| x.is_zero()),
            "shift_down would drop nonzero coefficients"
        );
        let c: Vec<R> = self.c.iter().skip(k).cloned().collect();
        let c = if c.is_empty() { vec![R::zero()] } else { c };
        Series { var: self.var, c }
    }

    pub fn pow_int(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().pow_int(-e);
        }
        let mut acc = Self::one(self.var, self.order());
        let mut base = self.clone();
        let mut e = e as u64;
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

    /// Zero out coefficients c_0..c_mprime, keeping the tail.
    pub fn tail_from(&self, mprime: usize) -> Self {
        assert!(mprime <= self.order(), "tail_from beyond truncation order");
        let mut s = self.clone();
        for k in 0..=mprime {
            s.c[k] = R::zero();
        }
        s
    }

    /// Composition outer(inner).  Requires inner constant term zero; the
    /// result carries inner's variable tag and order.
    ///
    /// Powers of the inner series are accumulated instead of Horner nesting:
    /// when the inner coefficients are polynomial and the outer ones are
    /// fractions, this keeps all series products in the polynomial subring.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.c[0].is_zero(),
            "series composition requires vanishing inner constant term"
        );
        let n = inner.order();
        let outer_deg = self.order().min(n);
        let mut acc = Series::constant(inner.var, n, self.c[0].clone());
        let mut pw = Series::<R>::one(inner.var, n);
        for k in 1..=outer_deg {
            pw = pw.mul(inner);
            if !self.c[k].is_zero() {
                acc = acc.add(&pw.scale(&self.c[k]));
            }
        }
        acc
    }

    /// Rename the series variable (a formal relabeling).
    pub fn rename(&self, var: Var) -> Self {
        Series { var, c: self.c.clone() }
    }

    /// Substitute `x -> k*x` (k a scalar), i.e. twist coefficient i by k^i.
    pub fn twist(&self, k: &R) -> Self {
        let mut pw = R::one();
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.mul(&pw));
            pw = pw.mul(k);
        }
        Series { var: self.var, c }
    }

    /// f^alpha for a unit-constant-term series and any exponent alpha in the
    /// coefficient field, from the recurrence f*g' = alpha*f'*g:
    ///   g_k = (1/k) * sum_{i=1..k} (alpha*i - (k-i)) f_i g_{k-i}.
    pub fn pow_param(&self, alpha: &R) -> Self {
        assert!(
            self.c[0].is_one(),
            "pow_param requires constant term exactly 1"
        );
        let n = self.order();
        let mut g = vec![R::zero(); n + 1];
        g[0] = R::one();
        for k in 1..=n {
            let mut s = R::zero();
            for i in 1..=k {
                if self.c[i].is_zero() {
                    continue;
                }
                let w = alpha
                    .mul(&R::from_i64(i as i64))
                    .sub(&R::from_i64((k - i) as i64));
                s = s.add(&w.mul(&self.c[i]).mul(&g[k - i]));
            }
            g[k] = s.mul(&R::from_i64(k as i64).inv());
        }
        Series { var: self.var, c: g }
    }

    /// Canonical q-th root: g with g^q = f and g(0) = 1.
    pub fn nth_root(&self, q: u32) -> Self {
        assert!(q >= 1);
        assert!(self.c[0].is_one(), "nth_root requires constant term exactly 1");
        if q == 1 {
            return self.clone();
        }
        self.pow_param(&R::from_rat(&Rat::new(1, q as i64)))
    }

    /// Map coefficients into another field.
    pub fn map<L: Field>(&self, f: impl Fn(&R) -> L) -> Series<L> {
        Series { var: self.var, c: self.c.iter().map(f).collect() }
    }
}

/// Unique series solution y(z) with y(0) = 1 of y - 1 - z*y^B = 0, by Newton
/// iteration with quadratic order doubling.  The exponent B may be any
/// element of the coefficient field.
pub fn solve_trinomial_std<R: Field>(b: &R, var: Var, order: usize) -> Series<R> {
    let mut y = Series::<R>::one(var, 0);
    let mut cur = 0usize;
    while cur < order {
        cur = (2 * cur + 1).min(order);
        // re-truncate upward: extend with zeros, then correct by Newton
        let mut ext = y.c.clone();
        ext.resize(cur + 1, R::zero());
        y = Series { var, c: ext };
        let z = Series::<R>::identity(var, cur);
        let yb = y.pow_param(b);
        // residual F(y) = y - 1 - z*y^B
        let res = y.sub(&Series::one(var, cur)).sub(&z.mul(&yb));
        // F'(y) = 1 - z*B*y^(B-1)
        let ybm1 = y.pow_param(&b.sub(&R::one()));
        let fp = Series::one(var, cur).sub(&z.mul(&ybm1).scale(b));
        y = y.sub(&res.div(&fp));
    }
    y
}

/// Laurent series: var^shift times an ordinary series.  Only the handful of
/// operations the identity builders need.
#[derive(Clone)]
pub struct Laurent<R: Field> {
    pub shift: i64,
    pub ser: Series<R>,
}

impl<R: Field> Laurent<R> {
    pub fn from_series(s: Series<R>) -> Self {
        Laurent { shift: 0, ser: s }
    }

    /// var^k (k possibly negative) to the given order.
    pub fn monomial(var: Var, k: i64, order: usize) -> Self {
        Laurent { shift: k, ser: Series::one(var, order) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Laurent { shift: self.shift + o.shift, ser: self.ser.mul(&o.ser) }
    }

    pub fn div(&self, o: &Self) -> Self {
        // factor out the valuation of the divisor so its series part is a unit
        let v = o.ser.valuation().expect("division by zero Laurent series");
        let num = self.ser.clone();
        let den = o.ser.shift_down(v);
        Laurent { shift: self.shift - o.shift - v as i64, ser: num.div(&den) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let shift = self.shift.min(o.shift);
        let a = self.ser.shift_up((self.shift - shift) as usize);
        let b = o.ser.shift_up((o.shift - shift) as usize);
        Laurent { shift, ser: a.add(&b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Laurent { shift: self.shift, ser: self.ser.neg() }
    }

    pub fn scale(&self, k: &R) -> Self {
        Laurent { shift: self.shift, ser: self.ser.scale(k) }
    }

    pub fn pow_int(&self, e: i64) -> Self {
        if e == 0 {
            return Laurent::from_series(Series::one(self.ser.var, self.ser.order()));
        }
        if e < 0 {
            let v = self.ser.valuation().expect("inverting zero Laurent series");
            let unit = self.ser.shift_down(v);
            let inv = Laurent { shift: -(self.shift + v as i64), ser: unit.inverse() };
            return inv.pow_int(-e);
        }
        let mut acc = Laurent::from_series(Series::one(self.ser.var, self.ser.order()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Convert to an ordinary series; panics if any negative power survives.
    pub fn into_series(self, order: usize) -> Series<R> {
        if self.shift >= 0 {
            return self.ser.shift_up(self.shift as usize).truncate(order);
        }
        self.ser.shift_down((-self.shift) as usize).truncate(order)
    }
}

/// Evaluate a rational function num/den (polynomials in one variable) at a
/// series point.  The denominator's value must have invertible constant term.
pub fn eval_rational_at_series<K: Field, R: Field>(
    num: &UPoly<K>,
    den: &UPoly<K>,
    point: &Series<R>,
    embed: &impl Fn(&K) -> R,
) -> Series<R> {
    let n = num.eval_series(point, embed);
    let d = den.eval_series(point, embed);
    n.div(&d)
}

impl<K: Field> UPoly<K> {
    /// Horner evaluation at a series argument with coefficient embedding.
    pub fn eval_series<R: Field>(
        &self,
        x: &Series<R>,
        embed: &impl Fn(&K) -> R,
    ) -> Series<R> {
        let mut acc = Series::<R>::zero(x.var, x.order());
        for a in self.c.iter().rev() {
            acc = acc.mul(x);
            acc.c[0] = acc.c[0].add(&embed(a));
        }
        acc
    }
}

impl<R: Field> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Field> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}^{k}", self.var)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}
