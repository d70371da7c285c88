//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept in a BTreeMap keyed by exponent tuples (graded-lex via the
//! derived tuple order on `(total, exponents)` is not needed; plain lex on the
//! exponent vector is used for leading-term selection).  Zero coefficients are
//! never stored.  A polynomial carries a shared, ordered variable list; the
//! empty list denotes a context-free constant, which binary operations lift
//! into the other operand's context.
//!
//! GCDs are computed by the primitive subresultant polynomial-remainder
//! sequence, recursing on the variable list for contents.  That is slow in
//! the worst case but entirely adequate at the sizes that arise here, where
//! coefficient fields have at most three formal parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::num::Rat;

/// Ordered list of variable names fixed per computation context.
#[derive(Debug, PartialEq, Eq)]
pub struct Vars(pub Vec<String>);

impl Vars {
    pub fn new(names: &[&str]) -> Arc<Vars> {
        Arc::new(Vars(names.iter().map(|s| s.to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone)]
pub struct MPoly {
    pub vars: Arc<Vars>,
    /// exponent tuple (length = vars.len()) -> nonzero coefficient
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

fn empty_vars() -> Arc<Vars> {
    Vars::new(&[])
}

impl MPoly {
    pub fn zero(vars: Arc<Vars>) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<Vars>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        MPoly { vars, terms }
    }

    pub fn const_free(c: Rat) -> Self {
        Self::constant(empty_vars(), c)
    }

    pub fn one(vars: Arc<Vars>) -> Self {
        Self::constant(vars, Rat::one())
    }

    /// The monomial `var^e`.
    pub fn var_pow(vars: Arc<Vars>, name: &str, e: u32) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in context {:?}", vars.0));
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Rat::one());
        MPoly { vars, terms }
    }

    pub fn var(vars: Arc<Vars>, name: &str) -> Self {
        Self::var_pow(vars, name, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// Constant value when `is_constant`, else None.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Degree in variable `i`, or -1 for the zero polynomial.  An index
    /// beyond the context (context-free constants) counts as degree 0.
    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms
            .keys()
            .map(|e| e.get(i).copied().unwrap_or(0) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    /// Does variable `i` actually occur?
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms
            .keys()
            .any(|e| e.get(i).copied().unwrap_or(0) > 0)
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, Rat>, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Lift a context-free constant into `vars`; panics on true context
    /// mismatch between non-constant polynomials.
    fn unify(&self, other: &Self) -> (MPoly, MPoly) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        if self.vars.is_empty() {
            let c = self.as_constant().expect("empty-context polynomial must be constant");
            return (MPoly::constant(other.vars.clone(), c), other.clone());
        }
        if other.vars.is_empty() {
            let c = other.as_constant().expect("empty-context polynomial must be constant");
            return (self.clone(), MPoly::constant(self.vars.clone(), c));
        }
        panic!(
            "mixed polynomial contexts: {:?} vs {:?}",
            self.vars.0, other.vars.0
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            Self::insert_term(&mut terms, e, c);
        }
        MPoly { vars: a.vars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, exps, ca * cb);
            }
        }
        MPoly { vars: a.vars, terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one(self.vars.clone());
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

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            Self::insert_term(&mut terms, e2, c * &Rat::from_int(e[i] as i64));
        }
        MPoly { vars: self.vars.clone(), terms }
    }

    /// Substitute polynomials for every variable, mapping into any Q-algebra.
    /// A context-free constant evaluates under any argument list.
    pub fn eval_generic<T: crate::ring::Ring>(&self, args: &[T]) -> T {
        assert!(
            args.len() == self.vars.len() || self.vars.is_empty(),
            "eval arity mismatch"
        );
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = T::from_rat(c);
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&args[i].pow_u(exp));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute `poly` for variable `name` (result stays in this context).
    /// Identity when the variable is absent from the context.
    pub fn subst(&self, name: &str, poly: &MPoly) -> Self {
        let i = match self.vars.index_of(name) {
            Some(i) => i,
            None => return self.clone(),
        };
        let mut acc = MPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e0 = e.clone();
            let exp = e0[i];
            e0[i] = 0;
            let mut term = MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
            Self::insert_term(&mut term.terms, e0, c.clone());
            if exp > 0 {
                term = term.mul(&poly.pow(exp));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluate at a full rational point.
    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        self.eval_generic::<Rat>(point)
    }

    /// Leading term under lexicographic order on exponent tuples.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// View as a dense univariate polynomial in variable `i`; coefficients
    /// keep the full context with variable `i` zeroed out.
    pub fn coeffs_in_var(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i);
        if d < 0 {
            return vec![];
        }
        let mut out = vec![MPoly::zero(self.vars.clone()); (d + 1) as usize];
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0) as usize;
            let mut e2 = e.clone();
            if i < e2.len() {
                e2[i] = 0;
            }
            Self::insert_term(&mut out[k].terms, e2, c.clone());
        }
        out
    }

    /// Rebuild from dense univariate coefficients in variable `i`.
    pub fn from_coeffs_in_var(vars: Arc<Vars>, i: usize, coeffs: &[MPoly]) -> Self {
        let name = vars.0[i].clone();
        let xi = MPoly::var(vars.clone(), &name);
        let mut acc = MPoly::zero(vars);
        let mut p = MPoly::one(acc.vars.clone());
        for c in coeffs {
            acc = acc.add(&c.mul(&p));
            p = p.mul(&xi);
        }
        acc
    }

    /// Re-embed into a larger context containing every variable of this one
    /// (matched by name).
    pub fn lift_to(&self, target: Arc<Vars>) -> MPoly {
        if self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .0
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .unwrap_or_else(|| panic!("lift target lacks variable {n}"))
            })
            .collect();
        let mut out = MPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.len()];
            for (i, &x) in e.iter().enumerate() {
                e2[map[i]] = x;
            }
            Self::insert_term(&mut out.terms, e2, c.clone());
        }
        out
    }

    /// Project into a smaller context; variables not in the target must be
    /// unused.
    pub fn project_to(&self, target: Arc<Vars>) -> MPoly {
        let map: Vec<Option<usize>> =
            self.vars.0.iter().map(|n| target.index_of(n)).collect();
        let mut out = MPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("projection drops used variable {}", self.vars.0[i])
                    });
                    e2[j] = x;
                }
            }
            Self::insert_term(&mut out.terms, e2, c.clone());
        }
        out
    }

    /// Primitive integer form: returns `(content, primitive)` with
    /// `self = content * primitive`, where `primitive` has coprime integer
    /// coefficients and positive lex-leading coefficient.
    pub fn primitive_z(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut content = Rat(num::rational::BigRational::new(num_gcd, den_lcm));
        let lead = self.leading().unwrap().1;
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Exact multivariate division; `None` when `div` does not divide `self`.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        let (a, b) = self.unify(div);
        if a.is_zero() {
            return Some(a);
        }
        if let Some(c) = b.as_constant() {
            return Some(a.scale(&c.recip()));
        }
        let (lt_e, lt_c) = {
            let (e, c) = b.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut rem = a.clone();
        let mut quo = MPoly::zero(a.vars.clone());
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            if !lt_e.iter().zip(re.iter()).all(|(d, r)| d <= r) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(lt_e.iter()).map(|(r, d)| r - d).collect();
            let qc = &rc / &lt_c;
            let mut qterm = MPoly::zero(a.vars.clone());
            Self::insert_term(&mut qterm.terms, qe, qc);
            quo = quo.add(&qterm);
            rem = rem.sub(&qterm.mul(&b));
        }
        Some(quo)
    }

    /// GCD, normalized to primitive integer form with positive leading
    /// coefficient (a unit multiple of any other gcd).
    pub fn gcd(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        if a.is_zero() {
            return b.primitive_z().1;
        }
        if b.is_zero() {
            return a.primitive_z().1;
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one(a.vars.clone());
        }
        let a = a.primitive_z().1;
        let b = b.primitive_z().1;
        // fast path: both effectively univariate in the same variable
        if let Some(v) = a.single_used_var() {
            if b.single_used_var() == Some(v) {
                return dense_univariate_gcd(&a, &b, v);
            }
        }
        // main variable: smallest combined degree among shared variables
        let mut main = None;
        let mut best = i64::MAX;
        for i in 0..a.num_vars() {
            if a.uses_var(i) && b.uses_var(i) {
                let d = a.degree_in(i).max(b.degree_in(i));
                if d < best {
                    best = d;
                    main = Some(i);
                }
            }
        }
        let main = match main {
            Some(i) => i,
            // no shared variable: gcd of contents only, which is a unit over Q
            None => return MPoly::one(a.vars.clone()),
        };

        let ca = a.coeffs_in_var(main);
        let cb = b.coeffs_in_var(main);
        let cont_a = gcd_many(&ca);
        let cont_b = gcd_many(&cb);
        let cont = cont_a.gcd(&cont_b);
        let pa: Vec<MPoly> = ca.iter().map(|c| c.div_exact(&cont_a).expect("content divides")).collect();
        let pb: Vec<MPoly> = cb.iter().map(|c| c.div_exact(&cont_b).expect("content divides")).collect();

        // evaluation filter: specialize the other variables at a random
        // point; if the univariate images are coprime, so are the primitive
        // parts (the image of the gcd divides the gcd of the images)
        if images_coprime(&pa, &pb, &a.vars, main) {
            return cont;
        }

        let ppa = MPoly::from_coeffs_in_var(a.vars.clone(), main, &pa);
        let ppb = MPoly::from_coeffs_in_var(a.vars.clone(), main, &pb);
        let g = match eval_interp_gcd(&ppa, &ppb, main) {
            Some(g) => g,
            None => subresultant_gcd(pa, pb, &a.vars, main),
        };
        cont.mul(&g).primitive_z().1
    }
}

/// Multivariate gcd by evaluation and interpolation: specialize one
/// variable at rational points, gcd the images recursively, impose the
/// leading coefficient bound gcd(lc(a), lc(b)), interpolate, and certify by
/// trial division.  `None` when repeated unlucky points exhaust the retry
/// budget (the caller falls back to the subresultant PRS).
///
/// Inputs must be primitive with respect to `main`.
fn eval_interp_gcd(a: &MPoly, b: &MPoly, main: usize) -> Option<MPoly> {
    // evaluation variable: used by either, not main, minimal max-degree
    let mut ev = None;
    let mut best = i64::MAX;
    for i in 0..a.num_vars() {
        if i == main {
            continue;
        }
        if a.uses_var(i) || b.uses_var(i) {
            let d = a.degree_in(i).max(b.degree_in(i));
            if d < best {
                best = d;
                ev = Some(i);
            }
        }
    }
    let ev = ev?;
    let ev_name = a.vars.0[ev].clone();

    let lc_a = a.coeffs_in_var(main).pop().unwrap();
    let lc_b = b.coeffs_in_var(main).pop().unwrap();
    let gamma = lc_a.gcd(&lc_b);
    let need = (a.degree_in(ev).min(b.degree_in(ev)) + gamma.degree_in(ev) + 1) as usize;

    'attempt: for attempt in 0..3i64 {
        let mut nodes: Vec<Rat> = vec![];
        let mut images: Vec<MPoly> = vec![];
        let mut dmain = i64::MAX;
        let mut r_iter = 0i64;
        while images.len() < need {
            r_iter += 1;
            if r_iter > 8 * need as i64 + 60 {
                continue 'attempt;
            }
            // enumerate 0, 1, -1, 2, -2, ... offset per attempt
            let base = (r_iter + 1) / 2 * if r_iter % 2 == 0 { -1 } else { 1 };
            let r = Rat::from_int(base + attempt * 37);
            if nodes.contains(&r) {
                continue;
            }
            let rp = MPoly::constant(a.vars.clone(), r.clone());
            let ar = a.subst(&ev_name, &rp);
            let br = b.subst(&ev_name, &rp);
            // leading coefficient must survive the specialization
            if ar.degree_in(main) < a.degree_in(main) || br.degree_in(main) < b.degree_in(main) {
                continue;
            }
            let gr = ar.gcd(&br);
            let d = gr.degree_in(main);
            if d == 0 {
                // coprime images certify a trivial gcd
                return Some(MPoly::one(a.vars.clone()));
            }
            if d > dmain {
                continue; // unlucky point
            }
            if d < dmain {
                // all previous points were unlucky
                nodes.clear();
                images.clear();
                dmain = d;
            }
            // rescale so the image's leading coefficient equals gamma(r)
            let gamma_r = gamma.subst(&ev_name, &rp);
            let lc_gr = gr.coeffs_in_var(main).pop().unwrap();
            let scale = match gamma_r.div_exact(&lc_gr) {
                Some(s) => s,
                None => continue, // inconsistent image, treat as unlucky
            };
            nodes.push(r);
            images.push(gr.mul(&scale));
        }
        // Lagrange interpolation in ev over MPoly coefficients
        let mut g = MPoly::zero(a.vars.clone());
        for (i, gi) in images.iter().enumerate() {
            let mut term = gi.clone();
            let mut denom = Rat::one();
            for (j, rj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let lin = MPoly::var(a.vars.clone(), &ev_name)
                    .sub(&MPoly::constant(a.vars.clone(), rj.clone()));
                term = term.mul(&lin);
                denom = &denom * &(&nodes[i] - rj);
            }
            g = g.add(&term.scale(&denom.recip()));
        }
        if g.is_zero() {
            continue 'attempt;
        }
        // the lc-scaling may have introduced a content in the non-main
        // variables; strip it before certifying
        let cont = gcd_many(&g.coeffs_in_var(main));
        let g = g.div_exact(&cont).unwrap().primitive_z().1;
        if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
            return Some(g);
        }
    }
    None
}

/// Specialize every variable except `main` at small integer points and test
/// the dense univariate images for coprimality.  Retries a few points to
/// dodge degree-dropping specializations; returns false when inconclusive.
fn images_coprime(pa: &[MPoly], pb: &[MPoly], vars: &Arc<Vars>, _main: usize) -> bool {
    use num::bigint::BigInt;
    use num::Zero;
    let da = pa.len() - 1;
    let db = pb.len() - 1;
    'points: for salt in 1..=4i64 {
        let point: Vec<Rat> = (0..vars.len())
            .map(|i| Rat::from_int(2 + salt * 3 + i as i64 * (7 + salt)))
            .collect();
        let image = |cs: &[MPoly]| -> Vec<BigInt> {
            let mut v: Vec<Rat> = cs.iter().map(|c| c.eval_rat(&point)).collect();
            // clear rational denominators (gcd degree is what matters)
            let mut den = BigInt::from(1);
            for x in &v {
                den = num::Integer::lcm(&den, x.denom());
            }
            v.iter_mut()
                .map(|x| x.numer() * &den / x.denom())
                .collect()
        };
        let ia = image(pa);
        let ib = image(pb);
        // degree must not drop, else the point is unusable
        if ia.last().map(|x| x.is_zero()).unwrap_or(true)
            || ib.last().map(|x| x.is_zero()).unwrap_or(true)
        {
            continue 'points;
        }
        let _ = (da, db);
        let g = dense_z_gcd(ia, ib);
        return g.len() <= 1;
    }
    false
}

impl MPoly {
    /// If exactly one variable occurs, its index.
    fn single_used_var(&self) -> Option<usize> {
        let mut found = None;
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    match found {
                        None => found = Some(i),
                        Some(j) if j == i => {}
                        _ => return None,
                    }
                }
            }
        }
        found
    }
}

/// Primitive-PRS gcd of dense integer polynomial coefficient vectors
/// (little-endian).  Result is primitive with positive leading coefficient.
fn dense_z_gcd(
    mut p: Vec<num::bigint::BigInt>,
    mut q: Vec<num::bigint::BigInt>,
) -> Vec<num::bigint::BigInt> {
    use num::bigint::BigInt;
    use num::{Integer, Signed, Zero};
    let trim = |c: &mut Vec<BigInt>| {
        while matches!(c.last(), Some(x) if x.is_zero()) {
            c.pop();
        }
    };
    let strip = |c: &mut Vec<BigInt>| {
        let mut g = BigInt::zero();
        for x in c.iter() {
            g = g.gcd(x);
        }
        if !g.is_zero() && g != BigInt::from(1) {
            for x in c.iter_mut() {
                *x = &*x / &g;
            }
        }
    };
    trim(&mut p);
    trim(&mut q);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        // lazy pseudo-remainder of p by q
        let lq = q.last().unwrap().clone();
        let dq = q.len() - 1;
        let mut r = p.clone();
        while r.len() > dq {
            let dr = r.len() - 1;
            let lr = r.last().unwrap().clone();
            for x in r.iter_mut() {
                *x = &*x * &lq;
            }
            let shift = dr - dq;
            for (i, x) in q.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(x * &lr);
            }
            trim(&mut r);
        }
        strip(&mut r);
        p = q;
        q = r;
    }
    strip(&mut p);
    if let Some(l) = p.last() {
        if l.is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
    }
    p
}

/// Dense primitive-PRS gcd over Z for two primitive polynomials that use
/// only variable `v`.  Far cheaper than the generic sparse path.
fn dense_univariate_gcd(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    use num::bigint::BigInt;
    use num::Zero;
    let dense = |p: &MPoly| -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); (p.degree_in(v) + 1) as usize];
        for (e, k) in &p.terms {
            debug_assert!(k.is_integer());
            c[e.get(v).copied().unwrap_or(0) as usize] = k.numer().clone();
        }
        c
    };
    let g = dense_z_gcd(dense(a), dense(b));
    let mut out = MPoly::zero(a.vars.clone());
    for (i, x) in g.into_iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut e = vec![0u32; a.vars.len()];
        e[v] = i as u32;
        out.terms.insert(e, Rat::from_bigint(x));
    }
    out
}

/// GCD of a list of polynomials.
pub fn gcd_many(polys: &[MPoly]) -> MPoly {
    let mut acc: Option<MPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.primitive_z().1,
            Some(g) => {
                if g.is_constant() {
                    return g;
                }
                g.gcd(p)
            }
        });
    }
    acc.unwrap_or_else(|| MPoly::const_free(Rat::zero()))
}

fn upoly_deg(p: &[MPoly]) -> i64 {
    for (i, c) in p.iter().enumerate().rev() {
        if !c.is_zero() {
            return i as i64;
        }
    }
    -1
}

fn upoly_trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
        } else {
            break;
        }
    }
    p
}

/// Classical pseudo-remainder of dense univariate polynomials with MPoly
/// coefficients: returns r with lc(b)^(da-db+1) a = q b + r.  The exact
/// exponent matters for the subresultant divisions downstream.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let da = upoly_deg(a);
    let db = upoly_deg(b);
    assert!(db >= 0);
    let lb = b[db as usize].clone();
    let mut r = upoly_trim(a.to_vec());
    let mut mults = 0i64;
    while upoly_deg(&r) >= db {
        let dr = upoly_deg(&r);
        let lead = r[dr as usize].clone();
        let shift = (dr - db) as usize;
        let mut r2 = vec![MPoly::zero(lead.vars.clone()); dr as usize + 1];
        for (i, c) in r.iter().enumerate() {
            r2[i] = c.mul(&lb);
        }
        for (i, c) in b.iter().enumerate() {
            r2[i + shift] = r2[i + shift].sub(&c.mul(&lead));
        }
        mults += 1;
        r = upoly_trim(r2);
    }
    // pad with the missing lc(b) powers so the total is exactly da-db+1
    let needed = da - db + 1 - mults;
    for _ in 0..needed {
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
    }
    r
}

/// Subresultant PRS gcd (Brown's algorithm) of two primitive univariate
/// polynomials with MPoly coefficients in the remaining variables.  The
/// g*h^delta divisors keep coefficient growth polynomial without repeated
/// content computations.
fn subresultant_gcd(
    mut a: Vec<MPoly>,
    mut b: Vec<MPoly>,
    vars: &Arc<Vars>,
    main: usize,
) -> MPoly {
    a = upoly_trim(a);
    b = upoly_trim(b);
    if upoly_deg(&a) < upoly_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let finish = |p: &[MPoly]| -> MPoly {
        let cont = gcd_many(p);
        let pp: Vec<MPoly> = p.iter().map(|c| c.div_exact(&cont).unwrap()).collect();
        MPoly::from_coeffs_in_var(vars.clone(), main, &pp)
    };
    let mut g = MPoly::one(vars.clone());
    let mut h = MPoly::one(vars.clone());
    loop {
        let db = upoly_deg(&b);
        if db == 0 {
            return MPoly::one(vars.clone());
        }
        let delta = (upoly_deg(&a) - db) as u32;
        let r = pseudo_rem(&a, &b);
        let r = upoly_trim(r);
        if r.is_empty() {
            return finish(&b);
        }
        // divide the remainder by g * h^delta (exact by the subresultant theory)
        let divisor = g.mul(&h.pow(delta));
        let r: Vec<MPoly> = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = r;
        g = a[upoly_deg(&a) as usize].clone();
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h-update division is exact")
        };
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    mono.push_str(&self.vars.0[i]);
                    if exp > 1 {
                        mono.push_str(&format!("^{exp}"));
                    }
                    mono.push('*');
                }
            }
            let mono = mono.trim_end_matches('*');
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Vars> {
        Vars::new(&["A", "B"])
    }

    fn pa(v: &Arc<Vars>) -> MPoly {
        MPoly::var(v.clone(), "A")
    }

    fn pb(v: &Arc<Vars>) -> MPoly {
        MPoly::var(v.clone(), "B")
    }

    #[test]
    fn arithmetic_basics() {
        let v = ab();
        let a = pa(&v);
        let b = pb(&v);
        // (A+B)^2 = A^2 + 2AB + B^2
        let s = a.add(&b);
        let sq = s.mul(&s);
        let expect = a
            .mul(&a)
            .add(&a.mul(&b).scale(&Rat::from_int(2)))
            .add(&b.mul(&b));
        assert_eq!(sq, expect);
        assert_eq!(sq.total_degree(), 2);
    }

    #[test]
    fn constant_lifting() {
        let v = ab();
        let two = MPoly::const_free(Rat::from_int(2));
        let a = pa(&v);
        let s = two.mul(&a);
        assert_eq!(s, a.scale(&Rat::from_int(2)));
    }

    #[test]
    fn exact_division() {
        let v = ab();
        let a = pa(&v);
        let b = pb(&v);
        let prod = a.add(&b).mul(&a.sub(&b));
        let q = prod.div_exact(&a.add(&b)).unwrap();
        assert_eq!(q, a.sub(&b));
        assert!(prod.div_exact(&a.add(&MPoly::one(v.clone()))).is_none());
    }

    #[test]
    fn gcd_with_common_factor() {
        let v = ab();
        let a = pa(&v);
        let b = pb(&v);
        let g = a.add(&b); // A + B
        let p1 = g.mul(&a); // A(A+B)
        let p2 = g.mul(&b); // B(A+B)
        let got = p1.gcd(&p2);
        assert_eq!(got, g);
    }

    #[test]
    fn gcd_coprime() {
        let v = ab();
        let a = pa(&v);
        let b = pb(&v);
        let got = a.gcd(&b);
        assert!(got.is_constant());
    }

    #[test]
    fn gcd_univariate_powers() {
        let v = Vars::new(&["t"]);
        let t = MPoly::var(v.clone(), "t");
        let one = MPoly::one(v.clone());
        // gcd(t^2-1, t-1) = t-1
        let p = t.mul(&t).sub(&one);
        let q = t.sub(&one);
        assert_eq!(p.gcd(&q), q);
        // gcd(t^3, t^2) = t^2
        assert_eq!(t.pow(3).gcd(&t.pow(2)), t.pow(2));
    }

    #[test]
    fn primitive_z_normalization() {
        let v = ab();
        let p = pa(&v).scale(&Rat::new(-2, 3));
        let (c, pp) = p.primitive_z();
        assert_eq!(c, Rat::new(-2, 3));
        assert_eq!(pp, pa(&v));
    }

    #[test]
    fn derivative_and_subst() {
        let v = ab();
        let a = pa(&v);
        let b = pb(&v);
        let p = a.pow(3).mul(&b); // A^3 B
        let d = p.derivative(0);
        assert_eq!(d, a.pow(2).mul(&b).scale(&Rat::from_int(3)));
        // A -> A - B + 1
        let shifted = p.subst("A", &a.sub(&b).add(&MPoly::one(v.clone())));
        let point = [Rat::from_int(5), Rat::from_int(2)];
        // (5-2+1)^3 * 2 = 128
        assert_eq!(shifted.eval_rat(&point), Rat::from_int(128));
    }
}
