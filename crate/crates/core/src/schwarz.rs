//! Branching data, ramification profiles, genus computations, and concrete
//! plane models for the projective curves traced out by ordered k-tuples of
//! trinomial roots.
//!
//! The degree-(n-k+1)_k covering of the zeta-sphere by the k-th curve is
//! ramified only over 0, 1, infinity.  The branching data over 0 is carried
//! by a small table indexed by the number nu of "large" coordinates in a
//! degenerating tuple; the genus follows from Riemann-Hurwitz and matches a
//! closed formula, which this module evaluates and cross-checks.

use std::sync::Arc;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::belyi::FibreProfile;
use crate::cyclo::Cyclo;
use crate::mpoly::{MPoly, Vars};
use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::upoly::UPoly;
use crate::CoreError;

/// Integer rising factorial as BigInt (values like (n-k+1)_k get large).
pub fn rising(x: i64, r: u32) -> BigInt {
    crate::num::rising_int(x, r)
}

/// One row of the branching table for the ordinary multiple points coming
/// from beta = 0 on the k-th curve, indexed by nu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDatum {
    pub nu: u32,
    /// number of such points on the curve
    pub points: BigInt,
    /// number of distinct tangents (lifted points on the desingularization)
    pub tangents: BigInt,
    /// multiplicity of each lifted point over zeta = 0
    pub multiplicity: u32,
}

/// Valid nu range for (p, q, k): max(0, k-p) <= nu <= min(q, k).
pub fn nu_range(p: u32, q: u32, k: u32) -> std::ops::RangeInclusive<u32> {
    k.saturating_sub(p)..=q.min(k)
}

/// The branching-table row:
///   nu = 0:       ((p-k+1)_(k-1), 1, p)
///   0 < nu < k:   (binom(k,nu) (q-nu+1)_(nu-1), (p-k+nu+1)_(k-nu-1), pq)
///   nu = k:       ((q-k+1)_(k-1), 1, q)
pub fn branch_counts(p: u32, q: u32, k: u32, nu: u32) -> Result<BranchDatum, CoreError> {
    if !nu_range(p, q, k).contains(&nu) {
        return Err(CoreError::Constraint(format!(
            "nu = {nu} outside [max(0,k-p), min(q,k)] for (p,q,k)=({p},{q},{k})"
        )));
    }
    let (points, tangents, multiplicity) = if nu == 0 {
        (rising(p as i64 - k as i64 + 1, k - 1), BigInt::one(), p)
    } else if nu == k {
        (rising(q as i64 - k as i64 + 1, k - 1), BigInt::one(), q)
    } else {
        (
            crate::num::binom_u(k as u64, nu as u64) * rising(q as i64 - nu as i64 + 1, nu - 1),
            rising(p as i64 - k as i64 + nu as i64 + 1, k - nu - 1),
            p * q,
        )
    };
    Ok(BranchDatum { nu, points, tangents, multiplicity })
}

/// Fibre totals: sum over nu of points * tangents * multiplicity must equal
/// the covering degree (n-k+1)_k.
pub fn branch_fibre_total(p: u32, q: u32, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for nu in nu_range(p, q, k) {
        let d = branch_counts(p, q, k, nu).expect("nu in range");
        acc += d.points * d.tangents * BigInt::from(d.multiplicity);
    }
    acc
}

/// Ramification profiles of the degree-(n-k+1)_k covering over 0, 1, inf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamProfile {
    pub over_zero: FibreProfile,
    pub over_one: FibreProfile,
    pub over_infinity: FibreProfile,
}

impl RamProfile {
    pub fn fibre_total(prof: &FibreProfile) -> u64 {
        prof.iter().map(|(m, c)| *m as u64 * c).sum()
    }
}

fn push_merged(prof: &mut FibreProfile, mult: u32, count: u64) {
    if count == 0 {
        return;
    }
    prof.push((mult, count));
}

fn normalize_profile(mut prof: FibreProfile) -> FibreProfile {
    prof.sort();
    let mut merged: FibreProfile = vec![];
    for (m, c) in prof {
        if let Some(last) = merged.last_mut() {
            if last.0 == m {
                last.1 += c;
                continue;
            }
        }
        merged.push((m, c));
    }
    merged
}

/// Profiles over zeta = 0, 1, infinity for 1 <= k <= n:
/// - over 0: (p-k+1)_(k-1) points of multiplicity p, (q-k+1)_(k-1) of
///   multiplicity q, the remainder of multiplicity pq;
/// - over 1: (n-k-1)_k points of unit multiplicity, the rest double;
/// - over infinity: (n-k+1)_(k-1) points of multiplicity n.
pub fn ram_profile(p: u32, q: u32, k: u32) -> RamProfile {
    let n = p + q;
    assert!(k >= 1 && k <= n, "k out of range");
    let deg = rising(n as i64 - k as i64 + 1, k);
    let to_u64 = |b: &BigInt| u64::try_from(b.clone()).expect("fibre count fits u64");

    let cp = rising(p as i64 - k as i64 + 1, k - 1).max(BigInt::zero());
    let cq = rising(q as i64 - k as i64 + 1, k - 1).max(BigInt::zero());
    let rest = (&deg - BigInt::from(p) * &cp - BigInt::from(q) * &cq)
        / BigInt::from((p * q) as i64);
    assert!(!rest.is_negative(), "remainder count must be non-negative");
    let mut over_zero = vec![];
    push_merged(&mut over_zero, p, to_u64(&cp));
    push_merged(&mut over_zero, q, to_u64(&cq));
    push_merged(&mut over_zero, p * q, to_u64(&rest));

    let simple = rising(n as i64 - k as i64 - 1, k).max(BigInt::zero());
    let doubles = (&deg - &simple) / BigInt::from(2);
    let mut over_one = vec![];
    push_merged(&mut over_one, 1, to_u64(&simple));
    push_merged(&mut over_one, 2, to_u64(&doubles));

    let mut over_infinity = vec![];
    push_merged(
        &mut over_infinity,
        n,
        to_u64(&rising(n as i64 - k as i64 + 1, k - 1)),
    );

    RamProfile {
        over_zero: normalize_profile(over_zero),
        over_one: normalize_profile(over_one),
        over_infinity: normalize_profile(over_infinity),
    }
}

/// Genus of the k-th curve: the closed formula and the Riemann-Hurwitz
/// value from the ramification profile, which must agree and be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub genus: i64,
    pub hurwitz_genus: i64,
    pub profile: RamProfile,
}

/// Closed genus formula:
/// 1 + [ (k-1)(2n-k-2)/(4(n-1)) - n/(2pq) ] (n-k+1)_(k-1)
///   - (q-1)/(2q) (p-k+1)_(k-1) - (p-1)/(2p) (q-k+1)_(k-1).
pub fn genus_formula(p: u32, q: u32, k: u32) -> Rat {
    let n = (p + q) as i64;
    let kk = k as i64;
    let r = |x: i64, m: u32| Rat::from_bigint(rising(x, m));
    let t1 = (&Rat::new((kk - 1) * (2 * n - kk - 2), 4 * (n - 1))
        - &Rat::new(n, 2 * (p as i64) * (q as i64)))
        * r(n - kk + 1, k - 1);
    let t2 = &Rat::new(q as i64 - 1, 2 * q as i64) * &r(p as i64 - kk + 1, k - 1);
    let t3 = &Rat::new(p as i64 - 1, 2 * p as i64) * &r(q as i64 - kk + 1, k - 1);
    &(&(&Rat::one() + &t1) - &t2) - &t3
}

/// Genus by Riemann-Hurwitz from the three fibre profiles:
/// 2 - 2g = 2 deg - sum (e - 1).
pub fn genus_hurwitz(p: u32, q: u32, k: u32) -> Rat {
    let n = p + q;
    let deg = rising(n as i64 - k as i64 + 1, k);
    let prof = ram_profile(p, q, k);
    let mut ram = BigInt::zero();
    for f in [&prof.over_zero, &prof.over_one, &prof.over_infinity] {
        for (m, c) in f {
            ram += BigInt::from((*m as u64 - 1) * c);
        }
    }
    let two_minus_2g = BigInt::from(2) * deg - ram;
    &Rat::one() - &(&Rat::from_bigint(two_minus_2g) / &Rat::from_int(2))
}

/// Exact genus with the formula-vs-Hurwitz cross-check enforced.
pub fn genus(p: u32, q: u32, k: u32) -> Result<GenusReport, CoreError> {
    if crate::num::gcd_u(p as u64, q as u64) != 1 {
        return Err(CoreError::Constraint(format!("p={p}, q={q} must be coprime")));
    }
    let n = p + q;
    if k < 1 || k > n {
        return Err(CoreError::Constraint(format!("k={k} outside 1..={n}")));
    }
    let f = genus_formula(p, q, k);
    let h = genus_hurwitz(p, q, k);
    assert!(f.is_integer(), "genus formula must be integral at ({p},{q},{k})");
    assert_eq!(f, h, "formula and Riemann-Hurwitz disagree at ({p},{q},{k})");
    let genus = f.to_i64().unwrap();
    assert!(genus >= 0);
    Ok(GenusReport {
        p,
        q,
        k,
        genus,
        hurwitz_genus: genus,
        profile: ram_profile(p, q, k),
    })
}

/// All curves with k >= 3 of genus 0 and genus 1 within p + q <= bound.
pub fn classify_low_genus(bound: u32) -> (Vec<(u32, u32, u32)>, Vec<(u32, u32, u32)>) {
    assert!(bound >= 2);
    let mut genus0 = vec![];
    let mut genus1 = vec![];
    for p in 1..bound {
        for q in 1..bound {
            if p + q > bound || crate::num::gcd_u(p as u64, q as u64) != 1 {
                continue;
            }
            let n = p + q;
            for k in 3..=n {
                let g = genus(p, q, k).expect("coprime in-range").genus;
                if g == 0 {
                    genus0.push((p, q, k));
                } else if g == 1 {
                    genus1.push((p, q, k));
                }
            }
        }
    }
    genus0.sort();
    genus1.sort();
    (genus0, genus1)
}

/// The degree-(p+q-2) polynomial T with p x^(p+q) - (p+q) x^p + q =
/// (x-1)^2 T(x); its simple roots are the finite unit-multiplicity points
/// over zeta = 1.  Coefficients: t_j = (j+1) q for j < p, (p+q-1-j) p for
/// j >= p-1 (the overlap value pq agrees).
pub fn t_poly(p: u32, q: u32) -> UPoly<Rat> {
    assert!(
        crate::num::gcd_u(p as u64, q as u64) == 1,
        "p, q must be coprime"
    );
    let deg = p + q - 2;
    let mut c = Vec::with_capacity(deg as usize + 1);
    for j in 0..=deg {
        let t = if j <= p - 1 { (j + 1) * q } else { (p + q - 1 - j) * p };
        c.push(Rat::from_int(t as i64));
    }
    let t = UPoly::from_coeffs(c);
    // defining identity, asserted at construction
    let n = p + q;
    let mut lhs = UPoly::<Rat>::x().pow(n).scale(&Rat::from_int(p as i64));
    lhs = lhs.sub(&UPoly::x().pow(p).scale(&Rat::from_int(n as i64)));
    lhs = lhs.add(&UPoly::constant(Rat::from_int(q as i64)));
    let sq = UPoly::from_ints(&[1, -2, 1]); // (x-1)^2
    assert_eq!(sq.mul(&t), lhs, "factorization identity for T");
    t
}

/// The homogeneous defining polynomial of the plane (k = 3) curve: the exact
/// quotient of x1^p (x2^n - x3^n) + cyclic by (x1-x2)(x2-x3)(x3-x1),
/// normalized to primitive integer coefficients with positive leading term.
pub fn defining_poly_k3(p: u32, q: u32) -> Result<MPoly, CoreError> {
    if crate::num::gcd_u(p as u64, q as u64) != 1 {
        return Err(CoreError::Constraint("p, q must be coprime".into()));
    }
    if p.max(q) <= 1 {
        return Err(CoreError::Constraint(
            "k = 3 plane model needs max(p,q) > 1".into(),
        ));
    }
    let n = p + q;
    let vars = x_vars(3);
    let x = |i: usize| MPoly::var(vars.clone(), &format!("x{}", i + 1));
    let cyc = |i: usize, j: usize, k: usize| x(i).pow(p).mul(&x(j).pow(n).sub(&x(k).pow(n)));
    let num = cyc(0, 1, 2).add(&cyc(1, 2, 0)).add(&cyc(2, 0, 1));
    let den = x(0)
        .sub(&x(1))
        .mul(&x(1).sub(&x(2)))
        .mul(&x(2).sub(&x(0)));
    let quot = num.div_exact(&den).ok_or_else(|| {
        CoreError::Constraint("defining-polynomial division was not exact".into())
    })?;
    Ok(quot.primitive_z().1)
}

/// Variable context x1..xk.
pub fn x_vars(k: usize) -> Arc<Vars> {
    let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Vars::new(&refs)
}

impl MPoly {
    /// Evaluate at univariate polynomial arguments over any field.
    pub fn eval_upoly<K: Field>(&self, args: &[UPoly<K>]) -> UPoly<K> {
        assert!(args.len() == self.vars.len() || self.vars.is_empty());
        let mut acc = UPoly::<K>::zero();
        for (e, c) in &self.terms {
            let mut t = UPoly::constant(K::from_rat(c));
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&args[i].pow(exp));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

type CPoly = UPoly<Cyclo<Rat>>;

fn cpoly(coeffs: Vec<Cyclo<Rat>>) -> CPoly {
    UPoly::from_coeffs(coeffs)
}

fn w3(k: i64) -> Cyclo<Rat> {
    Cyclo::omega_pow(3, k)
}

fn c1() -> Cyclo<Rat> {
    Cyclo::from_scalar(3, Rat::one())
}

fn cint(n: i64) -> Cyclo<Rat> {
    Cyclo::from_scalar(3, Rat::from_int(n))
}

/// The standard parametrizations of the low plane curves, as polynomial
/// coordinate tuples over Q(w)[param]:
/// - "p12":    [1 + t, wbar + w t, w + wbar t]
/// - "p21":    reciprocal coordinates of the previous kind, cleared
/// - "p13":    [(1-u)(1+2u), wbar (1-wu)(1+2wu), w (1-wbar u)(1+2 wbar u)]
/// - "p13top": the same with the fourth coordinate -3u appended
pub fn parametrization(label: &str) -> Vec<CPoly> {
    match label {
        "p12" => vec![
            cpoly(vec![c1(), c1()]),
            cpoly(vec![w3(2), w3(1)]),
            cpoly(vec![w3(1), w3(2)]),
        ],
        "p21" => {
            // [1/(1+t) : 1/(w + wbar t) : 1/(wbar + w t)], cleared by the
            // product of the three denominators
            let d1 = cpoly(vec![c1(), c1()]);
            let d2 = cpoly(vec![w3(1), w3(2)]);
            let d3 = cpoly(vec![w3(2), w3(1)]);
            vec![d2.mul(&d3), d1.mul(&d3), d1.mul(&d2)]
        }
        "p13" => {
            let factor = |w: Cyclo<Rat>, scale: Cyclo<Rat>| {
                // scale * (1 - w u)(1 + 2 w u)
                cpoly(vec![c1(), w.neg()])
                    .mul(&cpoly(vec![c1(), w.mul(&cint(2))]))
                    .scale(&scale)
            };
            vec![
                factor(c1(), c1()),
                factor(w3(1), w3(2)),
                factor(w3(2), w3(1)),
            ]
        }
        "p13top" => {
            let mut v = parametrization("p13");
            v.push(cpoly(vec![Cyclo::from_scalar(3, Rat::zero()), cint(-3)]));
            v
        }
        _ => panic!("unknown parametrization {label}"),
    }
}

/// Elementary symmetric polynomial of degree l in the coordinate list.
pub fn esym(coords: &[CPoly], l: usize) -> CPoly {
    let mut e: Vec<CPoly> = vec![UPoly::one()];
    for x in coords {
        let mut next = vec![UPoly::<Cyclo<Rat>>::zero(); e.len() + 1];
        for (i, t) in e.iter().enumerate() {
            next[i] = next[i].add(t);
            next[i + 1] = next[i + 1].add(&t.mul(x));
        }
        e = next;
    }
    e.get(l).cloned().unwrap_or_else(UPoly::zero)
}

/// sigma_n and sigma_q on the plane (k = 3) curve as rational functions of
/// the coordinates, from the elimination formulas; evaluated at polynomial
/// coordinates.  Returns (sigma_n_num, sigma_n_den, sigma_q_num, sigma_q_den).
pub fn k3_sigma_formulas(p: u32, q: u32, coords: &[CPoly]) -> (CPoly, CPoly, CPoly, CPoly) {
    assert_eq!(coords.len(), 3);
    let n = p + q;
    let x1 = &coords[0];
    let x2 = &coords[1];
    let x3 = &coords[2];
    let pw = |x: &CPoly, e: u32| x.pow(e);
    let cyc3 = |f: &dyn Fn(&CPoly, &CPoly, &CPoly) -> CPoly| {
        f(x1, x2, x3).add(&f(x2, x3, x1)).add(&f(x3, x1, x2))
    };
    let sign = |odd: bool, poly: CPoly| if odd { poly } else { poly.neg() };
    if p > 1 {
        // sigma_n = (-1)^(n-1) (x1 x2 x3)^p [x1 (x2^(q+1) - x3^(q+1)) + cycl]
        //           / [x1 (x2^p x3^(p+1) - x2^(p+1) x3^p) + cycl]
        let sn_num_core = cyc3(&|a, b, c| a.mul(&pw(b, q + 1).sub(&pw(c, q + 1))));
        let sn_den = cyc3(&|a, b, c| {
            a.mul(&pw(b, p).mul(&pw(c, p + 1)).sub(&pw(b, p + 1).mul(&pw(c, p))))
        });
        let xprod = x1.mul(x2).mul(x3);
        let sn_num = sign(n % 2 == 1, xprod.pow(p).mul(&sn_num_core));
        // sigma_q = (-1)^(q-1) [x1 (x2^p x3^(n+1) - x2^(n+1) x3^p) + cycl]
        //           / same denominator
        let sq_num_core = cyc3(&|a, b, c| {
            a.mul(&pw(b, p).mul(&pw(c, n + 1)).sub(&pw(b, n + 1).mul(&pw(c, p))))
        });
        let sq_num = sign(q % 2 == 1, sq_num_core);
        (sn_num, sn_den.clone(), sq_num, sn_den)
    } else {
        // q > 1 branch:
        // sigma_n = (-1)^(n-1) (x1 x2 x3)^p [x1 (x2^q - x3^q) + cycl]
        //           / [x1^p (x2^(p+1) - x3^(p+1)) + cycl]
        let sn_num_core = cyc3(&|a, b, c| a.mul(&pw(b, q).sub(&pw(c, q))));
        let sn_den = cyc3(&|a, b, c| pw(a, p).mul(&pw(b, p + 1).sub(&pw(c, p + 1))));
        let xprod = x1.mul(x2).mul(x3);
        let sn_num = sign(n % 2 == 1, xprod.pow(p).mul(&sn_num_core));
        // sigma_q = (-1)^(q-1) [x1^(p+1)(x2^n - x3^n) + cycl]
        //           / [x1^(p+1)(x2^p - x3^p) + cycl]
        let sq_num_core = cyc3(&|a, b, c| pw(a, p + 1).mul(&pw(b, n).sub(&pw(c, n))));
        let sq_den = cyc3(&|a, b, c| pw(a, p + 1).mul(&pw(b, p).sub(&pw(c, p))));
        let sq_num = sign(q % 2 == 1, sq_num_core);
        (sn_num, sn_den, sq_num, sq_den)
    }
}

/// A single named membership/decomposition check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
}

/// Substitutes each catalogued parametrization into its curve's defining
/// polynomial(s), confirms the zeta formulas, and checks the exact
/// rational-map decompositions.
pub fn membership_checks() -> Vec<CheckResult> {
    use crate::belyi::{belyi_catalog, phi1, phi2, RationalMap};
    let mut out = vec![];
    let mut check = |name: &'static str, pass: bool| out.push(CheckResult { name, pass });

    // (1,2): parametrization lies on x1+x2+x3 = 0
    let p12 = parametrization("p12");
    check("param-12-on-line", esym(&p12, 1).is_zero());

    // (2,1): parametrization lies on x1 x2 + x2 x3 + x3 x1 = 0
    let p21 = parametrization("p21");
    check("param-21-on-conic", esym(&p21, 2).is_zero());

    // (1,3): parametrization lies on the conic
    let p13 = parametrization("p13");
    let def13 = defining_poly_k3(1, 3).unwrap();
    check("param-13-on-conic", def13.eval_upoly(&p13).is_zero());

    // (1,3) top parametrization: sigma_1 = sigma_2 = 0 on the 4-tuple
    let p13top = parametrization("p13top");
    check("param-13top-sigma1", esym(&p13top, 1).is_zero());
    check("param-13top-sigma2", esym(&p13top, 2).is_zero());

    // zeta from the k=3 elimination formulas at the (1,3) parametrization
    // equals the degree-24 covering
    {
        let (sn_n, sn_d, sq_n, sq_d) = k3_sigma_formulas(1, 3, &p13);
        // zeta = (-1)^n n^n/(p^p q^q) sigma_n^q / sigma_q^n = (256/27) s4^3/s3^4
        let z = belyi_catalog("zeta_13", None, None).unwrap();
        let lift = |p: &UPoly<Rat>| p.map(|c| Cyclo::<Rat>::from_scalar(3, c.clone()));
        let lhs = sn_n
            .pow(3)
            .mul(&sq_d.pow(4))
            .mul(&lift(&z.den))
            .scale(&Cyclo::from_scalar(3, Rat::new(256, 27)));
        let rhs = lift(&z.num).mul(&sq_n.pow(4)).mul(&sn_d.pow(3));
        check("zeta-13-from-elimination", lhs.sub(&rhs).is_zero());
    }

    // same through the p > 1 branch: (2,1) flows to the degree-6 covering
    {
        let (sn_n, sn_d, sq_n, sq_d) = k3_sigma_formulas(2, 1, &p21);
        // zeta = (-1)^n n^n/(p^p q^q) s_n^q / s_q^n = -27/4 s3 / s1^3
        let z = belyi_catalog("zeta_12", None, None).unwrap();
        let lift = |p: &UPoly<Rat>| p.map(|c| Cyclo::<Rat>::from_scalar(3, c.clone()));
        let lhs = sn_n
            .mul(&sq_d.pow(3))
            .mul(&lift(&z.den))
            .scale(&Cyclo::from_scalar(3, Rat::new(-27, 4)));
        let rhs = lift(&z.num).mul(&sq_n.pow(3)).mul(&sn_d);
        check("zeta-12-from-elimination", lhs.sub(&rhs).is_zero());
    }

    // decomposition of the degree-6 covering through s
    {
        let z12 = belyi_catalog("zeta_12", None, None).unwrap();
        let mid = RationalMap::new(
            UPoly::from_ints(&[1, -1, 1]),
            UPoly::from_ints(&[1, 1]).pow(2),
        );
        check("decomp-12", mid.then(&phi1(1, 2)).equals(&z12));
        let mid = RationalMap::new(
            UPoly::from_ints(&[1, 1]).pow(2),
            UPoly::from_ints(&[1, -1, 1]),
        );
        check("decomp-21", mid.then(&phi1(2, 1)).equals(&z12));
    }

    // decomposition of the degree-24 covering through t and s
    {
        let z13 = belyi_catalog("zeta_13", None, None).unwrap();
        let inner = RationalMap::new(
            UPoly::from_ints(&[1, -2, -2]),
            UPoly::from_ints(&[1, 4, -2]),
        );
        let composed = inner.then(&phi2(1, 3)).then(&phi1(1, 3));
        check("decomp-13", composed.equals(&z13));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_table_rows() {
        // (p,q,k,nu) = (2,3,5,3): (20, 1, 6)
        let d = branch_counts(2, 3, 5, 3).unwrap();
        assert_eq!(d.points, BigInt::from(20));
        assert_eq!(d.tangents, BigInt::one());
        assert_eq!(d.multiplicity, 6);
        // fibre total 20*1*6 = 120 = (1)_5 = 5!
        assert_eq!(branch_fibre_total(2, 3, 5), BigInt::from(120));
        // (1,1,2,1) -> (2, 1, 1)
        let d = branch_counts(1, 1, 2, 1).unwrap();
        assert_eq!(d.points, BigInt::from(2));
        assert_eq!(d.tangents, BigInt::one());
        assert_eq!(d.multiplicity, 1);
        // out of range nu rejected
        assert!(branch_counts(2, 3, 5, 1).is_err());
    }

    /// The fibre identity sum_nu N^P N^T M = (n-k+1)_k, exhaustively for
    /// coprime p + q <= 9, 2 <= k <= n.
    #[test]
    fn fibre_identity_exhaustive() {
        for p in 1u32..=8 {
            for q in 1u32..=8 {
                if p + q > 9 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                let n = p + q;
                for k in 2..=n {
                    let total = branch_fibre_total(p, q, k);
                    let deg = rising(n as i64 - k as i64 + 1, k);
                    assert_eq!(total, deg, "fibre identity fails at ({p},{q},{k})");
                }
            }
        }
    }

    #[test]
    fn profile_fibre_totals() {
        for p in 1u32..=7 {
            for q in 1u32..=7 {
                if p + q > 8 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                let n = p + q;
                for k in 1..=n {
                    let prof = ram_profile(p, q, k);
                    let deg = u64::try_from(rising(n as i64 - k as i64 + 1, k)).unwrap();
                    for f in [&prof.over_zero, &prof.over_one, &prof.over_infinity] {
                        assert_eq!(
                            RamProfile::fibre_total(f),
                            deg,
                            "fibre total at ({p},{q},{k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unit_multiplicity_vanishes_for_large_k() {
        // over 1 there are no unit-multiplicity points when k >= n-1
        let prof = ram_profile(2, 3, 5);
        assert!(prof.over_one.iter().all(|(m, _)| *m != 1));
        let prof = ram_profile(2, 3, 4);
        assert!(prof.over_one.iter().all(|(m, _)| *m != 1));
        let prof = ram_profile(2, 3, 3);
        assert!(prof.over_one.iter().any(|(m, _)| *m == 1));
    }

    #[test]
    fn genus_quoted_values() {
        assert_eq!(genus(2, 3, 3).unwrap().genus, 3);
        assert_eq!(genus(1, 4, 3).unwrap().genus, 1);
        assert_eq!(genus(1, 4, 5).unwrap().genus, 4);
        for p in 1u32..=7 {
            for q in 1u32..=7 {
                if p + q > 8 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                assert_eq!(genus(p, q, 2).unwrap().genus, 0, "k=2 curves are rational");
                assert_eq!(genus(p, q, 1).unwrap().genus, 0);
            }
        }
    }

    /// The k = 3 closed form (p^2 + 4pq + q^2 - 9(p+q) + 14)/2.
    #[test]
    fn genus_k3_closed_form() {
        for p in 1u32..=6 {
            for q in 1u32..=6 {
                if crate::num::gcd_u(p as u64, q as u64) != 1 || p + q < 3 {
                    continue;
                }
                let expect = Rat::new(
                    (p as i64).pow(2) + 4 * (p as i64) * (q as i64) + (q as i64).pow(2)
                        - 9 * (p as i64 + q as i64)
                        + 14,
                    2,
                );
                assert_eq!(genus_formula(p, q, 3), expect, "k=3 closed form at ({p},{q})");
            }
        }
    }

    #[test]
    fn genus_formula_hurwitz_and_symmetry() {
        for p in 1u32..=8 {
            for q in 1u32..=8 {
                if p + q > 9 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                let n = p + q;
                for k in 1..=n {
                    let f = genus_formula(p, q, k);
                    assert_eq!(f, genus_hurwitz(p, q, k), "hurwitz at ({p},{q},{k})");
                    assert_eq!(f, genus_formula(q, p, k), "p<->q symmetry at ({p},{q},{k})");
                    assert!(f.is_integer() && !f.is_negative());
                }
            }
        }
    }

    #[test]
    fn genus_monotone_in_k() {
        // the genus never decreases along the tower (Hurwitz), and grows
        // strictly once the lower curve has positive genus; strictness can
        // fail from a genus-0 base, e.g. both k=2 and k=3 are rational
        // for (p,q) = (1,3)
        for p in 1u32..=7 {
            for q in 1u32..=7 {
                if p + q > 8 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                let n = p + q;
                for k in 3..n {
                    let lo = genus_formula(p, q, k - 1);
                    let hi = genus_formula(p, q, k);
                    assert!(hi >= lo, "genus must not decrease at ({p},{q},{k})");
                    if lo >= Rat::one() {
                        assert!(hi > lo, "genus must grow strictly at ({p},{q},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn classification_lists() {
        let (g0, g1) = classify_low_genus(8);
        assert_eq!(
            g0,
            vec![(1, 2, 3), (1, 3, 3), (1, 3, 4), (2, 1, 3), (3, 1, 3), (3, 1, 4)]
        );
        assert_eq!(g1, vec![(1, 4, 3), (4, 1, 3)]);
        // stable under enlarging the bound
        let (g0b, g1b) = classify_low_genus(9);
        assert_eq!(g0, g0b);
        assert_eq!(g1, g1b);
    }

    #[test]
    fn t_poly_cases() {
        // (1,1): T = 1
        assert_eq!(t_poly(1, 1), UPoly::from_ints(&[1]));
        // (2,3): 3 + 6x + 4x^2 + 2x^3
        assert_eq!(t_poly(2, 3), UPoly::from_ints(&[3, 6, 4, 2]));
        // simple roots for all coprime p+q <= 9
        for p in 1u32..=8 {
            for q in 1u32..=8 {
                if p + q > 9 || crate::num::gcd_u(p as u64, q as u64) != 1 {
                    continue;
                }
                let t = t_poly(p, q);
                assert!(t.is_squarefree(), "T must be squarefree at ({p},{q})");
            }
        }
    }

    #[test]
    fn squarefree_degree_combination() {
        // (x-1)^2 T_(2,3)(x) has squarefree part of degree 1 + deg T = 4
        let t = t_poly(2, 3);
        let p = UPoly::from_ints(&[-1, 1]).pow(2).mul(&t);
        assert_eq!(p.squarefree_part().degree(), 4);
    }

    #[test]
    fn defining_polys() {
        // (1,2): the line x1 + x2 + x3 (up to normalization)
        let d = defining_poly_k3(1, 2).unwrap();
        let vars = x_vars(3);
        let line = MPoly::var(vars.clone(), "x1")
            .add(&MPoly::var(vars.clone(), "x2"))
            .add(&MPoly::var(vars.clone(), "x3"));
        assert_eq!(d, line.primitive_z().1);
        // (1,3): the conic
        let d = defining_poly_k3(1, 3).unwrap();
        let sq = |n: &str| MPoly::var(vars.clone(), n).pow(2);
        let xy = |a: &str, b: &str| MPoly::var(vars.clone(), a).mul(&MPoly::var(vars.clone(), b));
        let conic = sq("x1")
            .add(&sq("x2"))
            .add(&sq("x3"))
            .add(&xy("x1", "x2"))
            .add(&xy("x2", "x3"))
            .add(&xy("x3", "x1"));
        assert_eq!(d, conic.primitive_z().1);
        // (1,4): the displayed cubic
        let d = defining_poly_k3(1, 4).unwrap();
        let cube = |n: &str| MPoly::var(vars.clone(), n).pow(3);
        let xxy = |a: &str, b: &str| {
            MPoly::var(vars.clone(), a).mul(&MPoly::var(vars.clone(), b).pow(2))
        };
        let cubic = cube("x1")
            .add(&cube("x2"))
            .add(&cube("x3"))
            .add(&xxy("x1", "x2"))
            .add(&xxy("x1", "x3"))
            .add(&xxy("x2", "x3"))
            .add(&xxy("x2", "x1"))
            .add(&xxy("x3", "x1"))
            .add(&xxy("x3", "x2"))
            .add(&xy("x1", "x2").mul(&MPoly::var(vars.clone(), "x3")));
        assert_eq!(d, cubic.primitive_z().1);
        // degree checks per the structural statement
        for (p, q) in [(1u32, 2u32), (1, 3), (1, 4), (2, 3), (3, 4)] {
            let d = defining_poly_k3(p, q).unwrap();
            let n = (p + q) as i64;
            assert_eq!(d.total_degree(), n + p as i64 - 3);
            for i in 0..3 {
                assert_eq!(d.degree_in(i), n - 2, "single-variable degree");
            }
        }
        // Cremona-inverted model for (3,1): the trinodal quartic
        let d = defining_poly_k3(3, 1).unwrap();
        let q = sq("x1").mul(&sq("x2"))
            .add(&sq("x2").mul(&sq("x3")))
            .add(&sq("x3").mul(&sq("x1")))
            .add(&sq("x1").mul(&xy("x2", "x3")))
            .add(&sq("x2").mul(&xy("x3", "x1")))
            .add(&sq("x3").mul(&xy("x1", "x2")));
        assert_eq!(d, q.primitive_z().1);
    }

    #[test]
    fn membership_suite_passes() {
        for c in membership_checks() {
            assert!(c.pass, "membership check {} failed", c.name);
        }
    }

    #[test]
    fn pi2_profiles_match_k2_theory() {
        use crate::belyi::{pi2, verify_belyi};
        for (p, q) in [
            (1u32, 1u32),
            (1, 2),
            (2, 1),
            (1, 3),
            (2, 3),
            (3, 2),
            (1, 4),
            (3, 4),
        ] {
            let expected = ram_profile(p, q, 2);
            let rep = verify_belyi(&pi2(p, q), Some(&expected));
            assert!(
                rep.pass(),
                "pi2 profile mismatch at ({p},{q}): {rep:?} vs {expected:?}"
            );
        }
    }
}
