//! Side builders for every identity in the catalog.
//!
//! Each builder returns (lhs, rhs) as truncated series over a cyclotomic
//! extension of the free-parameter field (conductor 1 when no root of unity
//! is involved), with all fractional constants multiplied through so that
//! only integer powers of the expansion variable remain.  Square- and
//! cube-root prefactor branches are fixed by matching the first nonzero
//! coefficient; the chosen unit is reported back to the caller.

use crate::belyi::{belyi_catalog, RationalMap};
use crate::cyclo::Cyclo;
use crate::hypergeom::{hyp_series, hyp_series_limit, pochhammer, HypSpec};
use crate::mrat::{function_field, MRat};
use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::series::{Laurent, Series, Var};
use crate::symfun::power_sum_on_curve;
use crate::trinomial::{
    branch_ladder_sides, forward_rep_sides, interp_rep_sides, inverse_rep_sides, Regime,
};
use crate::upoly::UPoly;
use crate::vandermonde::{g_kernel_at_series, kernel_rational, KernelRat};
use crate::CoreError;

/// Deliberate single-token corruptions for mutation-sensitivity tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Corruption {
    /// flip the sign of the constant term of a kernel denominator
    KernelSign,
    /// perturb one coefficient of a catalog covering map
    MapCoefficient,
    /// shift the first upper hypergeometric parameter by one
    PochhammerOffset,
}

/// Numeric (non-free) parameters of an identity instance.
#[derive(Clone, Debug, Default)]
pub struct NumParams {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub ell: Option<i64>,
    pub kappa: Option<u32>,
    pub j: Option<u32>,
    pub n: Option<u32>,
    pub a_int: Option<i64>,
}

/// Free symbolic (or sampled) parameters.
#[derive(Clone)]
pub struct FreeParams<R: Field> {
    pub a: R,
    pub c: R,
    pub big_a: R,
    pub big_b: R,
    pub big_c: R,
}

impl FreeParams<MRat> {
    /// Fully symbolic parameters, each in its own one- or two-variable field
    /// as the identities require.
    pub fn symbolic() -> Self {
        let (_, g) = function_field(&["a", "c"]);
        let (_, gg) = function_field(&["A", "B", "C"]);
        FreeParams {
            a: g[0].clone(),
            c: g[1].clone(),
            big_a: gg[0].clone(),
            big_b: gg[1].clone(),
            big_c: gg[2].clone(),
        }
    }
}

impl FreeParams<Rat> {
    pub fn numeric(a: Rat, c: Rat, big_a: Rat, big_b: Rat, big_c: Rat) -> Self {
        FreeParams { a, c, big_a, big_b, big_c }
    }
}

pub type Sides<R> = (Series<Cyclo<R>>, Series<Cyclo<R>>);

/// Builder output: both sides plus any recorded branch choices.
pub struct Built<R: Field> {
    pub lhs: Series<Cyclo<R>>,
    pub rhs: Series<Cyclo<R>>,
    pub branch_choices: Vec<String>,
}

fn c1<R: Field>(f: &Series<R>) -> Series<Cyclo<R>> {
    f.map(|x| Cyclo::from_scalar(1, x.clone()))
}

fn rr<R: Field>(x: &Rat) -> R {
    R::from_rat(x)
}

fn require(cond: bool, msg: &str) -> Result<(), CoreError> {
    if cond {
        Ok(())
    } else {
        Err(CoreError::Constraint(msg.into()))
    }
}

/// Numeric screen: a pochhammer denominator value must not vanish.
fn screen_poch<R: Field>(x: &R, r: i64, what: &str) -> Result<(), CoreError> {
    if r >= 0 {
        for i in 0..r {
            if let Some(v) = x.add(&R::from_i64(i)).as_rat() {
                if v.is_zero() {
                    return Err(CoreError::Constraint(format!(
                        "{what}: rising factorial hits zero"
                    )));
                }
            }
        }
    } else {
        for i in 1..=(-r) {
            if let Some(v) = x.sub(&R::from_i64(i)).as_rat() {
                if v.is_zero() {
                    return Err(CoreError::Constraint(format!(
                        "{what}: rising factorial hits zero"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn screen_lower_generic<R: Field>(lower: &[R]) -> Result<(), CoreError> {
    for b in lower {
        if let Some(v) = b.as_rat() {
            if v.is_nonpositive_integer() {
                return Err(CoreError::Constraint(format!(
                    "lower parameter {v} is a non-positive integer"
                )));
            }
        }
    }
    Ok(())
}

/// Choose the unit (from `candidates`) making the first nonzero lhs
/// coefficient match the rhs; scales rhs accordingly.
fn match_branch<R: Field>(
    lhs: &Series<Cyclo<R>>,
    rhs: Series<Cyclo<R>>,
    candidates: &[Cyclo<R>],
    label: &str,
    choices: &mut Vec<String>,
) -> Result<Series<Cyclo<R>>, CoreError> {
    let v = match lhs.valuation() {
        Some(v) => v,
        None => return Ok(rhs), // lhs is zero; nothing to match
    };
    for (i, cand) in candidates.iter().enumerate() {
        let scaled = rhs.scale(cand);
        if scaled.c[v] == lhs.c[v] {
            if i > 0 {
                choices.push(format!("{label}: branch unit #{i}"));
            } else {
                choices.push(format!("{label}: principal branch"));
            }
            return Ok(scaled);
        }
    }
    Err(CoreError::Constraint(format!(
        "{label}: no branch choice matches the leading coefficient"
    )))
}

/// Evaluate a kernel at a plain series with conductor-1 embedding.
fn kernel_at<R: Field>(
    kernel: &KernelRat,
    a: &R,
    b: &Rat,
    y: &Series<R>,
) -> Series<R> {
    kernel.eval_series_at(a, &rr::<R>(b), y)
}

/// Apply the kernel-sign corruption: flip the sign of the constant
/// coefficient of the kernel denominator.
fn corrupt_kernel(k: &KernelRat) -> KernelRat {
    let mut den = k.den.clone();
    if !den.c.is_empty() {
        den.c[0] = den.c[0].neg();
    }
    KernelRat { num: k.num.clone(), den }
}

/// Apply the map-coefficient corruption: add 1 to the coefficient of the
/// linear term of the numerator.
fn corrupt_map(m: &RationalMap) -> RationalMap {
    let mut c = m.num.c.clone();
    if c.len() > 1 {
        c[1] = c[1].add(&Rat::one());
    } else {
        c.push(Rat::one());
    }
    RationalMap { num: UPoly::from_coeffs(c), den: m.den.clone() }
}

/// The sample identity: with n = p + 2 (p odd),
/// nF(n-1)(a/n..(a+n-1)/n; (a+1)/p..(a+p)/p, 1/2; zeta(t))
///   = (1/2)[(1+t)^(-2a) + (1-t)^(-2a)]
///     [((1+t)^n + (1-t)^n) / ((1+t)^p + (1-t)^p)]^a,
/// zeta(t) the even degree-n(n-1) covering.
pub fn eq2_sample<R: Field>(
    p: u32,
    a: &R,
    order: usize,
    corruption: Option<Corruption>,
) -> Result<Built<R>, CoreError> {
    require(p % 2 == 1, "sample identity needs odd p")?;
    let n = p + 2;
    let var = Var("t");
    let mut upper: Vec<R> = (0..n)
        .map(|i| a.add(&rr::<R>(&Rat::from_int(i as i64))).mul(&rr::<R>(&Rat::new(1, n as i64))))
        .collect();
    if corruption == Some(Corruption::PochhammerOffset) {
        upper[0] = upper[0].add(&R::one());
    }
    let mut lower: Vec<R> = (1..=p)
        .map(|i| a.add(&rr::<R>(&Rat::from_int(i as i64))).mul(&rr::<R>(&Rat::new(1, p as i64))))
        .collect();
    lower.push(rr::<R>(&Rat::new(1, 2)));
    screen_lower_generic(&lower)?;
    let spec = HypSpec::new(upper, lower);
    let zeta = belyi_catalog("zeta_p2", Some(p), None)?;
    let hyp = hyp_series(&spec, Var("zeta"), order / 2 + 1);
    let zs = zeta.eval_series::<R>(&Series::identity(var, order));
    let lhs = hyp.compose(&zs);

    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    let one_plus = one.add(&id);
    let one_minus = one.sub(&id);
    let two_a = a.add(a);
    let half = rr::<R>(&Rat::new(1, 2));
    let sum_part = one_plus
        .pow_param(&two_a.neg())
        .add(&one_minus.pow_param(&two_a.neg()))
        .scale(&half);
    // [( (1+t)^n + (1-t)^n ) / ( (1+t)^p + (1-t)^p )]^a: both halves have
    // constant term 2, so the ratio has constant term 1
    let bn = one_plus.pow_int(n as i64).add(&one_minus.pow_int(n as i64));
    let bp = one_plus.pow_int(p as i64).add(&one_minus.pow_int(p as i64));
    let ratio = bn.div(&bp).pow_param(a);
    let rhs = sum_part.mul(&ratio);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

/// Ladder identity over Q(A,B) (corruptible kernel for the mutation test).
pub fn sec3<R: Field>(
    ell: i64,
    big_a: &R,
    big_b: &R,
    order: usize,
    corruption: Option<Corruption>,
) -> Result<Built<R>, CoreError> {
    let var = Var("z");
    let kernel = {
        let k = kernel_rational(ell);
        match corruption {
            Some(Corruption::KernelSign) => corrupt_kernel(&k),
            _ => k,
        }
    };
    screen_poch(&big_a.add(&R::one()), ell - 1, "(A+1) normalization")?;
    let y = crate::series::solve_trinomial_std(big_b, var, order);
    let lhs = y.pow_param(big_a).mul(&kernel.eval_series_at(big_a, big_b, &y));
    let rhs = crate::vandermonde::section3_rhs(ell, big_a, big_b, var, order);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

/// Interpolating ladder identity over Q(A,B,C).
pub fn sec3_interp<R: Field>(
    ell: u8,
    big_a: &R,
    big_b: &R,
    big_c: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    require(ell <= 1, "interpolating ladder needs l in {0,1}")?;
    let (lhs, rhs) =
        crate::vandermonde::section3_interp_sides(ell, big_a, big_b, big_c, Var("z"), order);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

pub fn thm41<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    j: u32,
    regime: Regime,
    gamma: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    let (lhs, rhs) = branch_ladder_sides(p, q, ell, j, regime, gamma, order)?;
    Ok(Built { lhs, rhs, branch_choices: vec![] })
}

pub fn thm44<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    j: u32,
    regime: Regime,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    screen_poch(a, 1 - ell, "(a) normalization")?;
    let (lhs, rhs) = forward_rep_sides(p, q, ell, j, regime, a, order)?;
    Ok(Built { lhs, rhs, branch_choices: vec![] })
}

pub fn thm46<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    kappa: u32,
    regime: Regime,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    screen_poch(a, 1 - ell, "(a) normalization")?;
    let (lhs, rhs) = inverse_rep_sides(p, q, ell, kappa, regime, a, order)?;
    Ok(Built { lhs, rhs, branch_choices: vec![] })
}

pub fn thm48<R: Field>(
    p: u32,
    q: u32,
    ell: u8,
    kappa: u32,
    regime: Regime,
    a: &R,
    c: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    screen_poch(a, -(ell as i64), "(a) normalization")?;
    if let Some(v) = a.add(c).sub(&R::from_i64(ell as i64)).as_rat() {
        require(!v.is_zero(), "a + c - l vanishes")?;
    }
    let (lhs, rhs) = interp_rep_sides(p, q, ell, kappa, regime, a, c, order)?;
    Ok(Built { lhs, rhs, branch_choices: vec![] })
}

/// Uniformization by s (single-branch curves):
/// nF(n-1)(a/n+..; (a-l+i)/p; zeta_(p,1)(s)) = (1-s)^a F_l(-a,-p; 1/(1-s)).
pub fn thm71<R: Field>(
    p: u32,
    ell: i64,
    with_c: Option<&R>,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    let n = p + 1;
    let var = Var("s");
    let upper: Vec<R> = (0..n)
        .map(|i| a.add(&rr::<R>(&Rat::from_int(i as i64))).mul(&rr::<R>(&Rat::new(1, n as i64))))
        .collect();
    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    let one_minus_s = one.sub(&id);
    let y = one_minus_s.inverse();
    let zeta = belyi_catalog("zeta_p1", Some(p), None)?;
    let zs = zeta.eval_series::<R>(&id);
    match with_c {
        None => {
            let lower: Vec<R> = (1..=p)
                .map(|i| {
                    a.sub(&rr::<R>(&Rat::from_int(ell)))
                        .add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                })
                .collect();
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let lhs = hyp_series(&spec, Var("zeta"), order).compose(&zs);
            let kernel = kernel_rational(ell);
            let neg_p = Rat::from_int(-(p as i64));
            let rhs = one_minus_s
                .pow_param(a)
                .mul(&kernel_at(&kernel, &a.neg(), &neg_p, &y));
            Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
        }
        Some(c) => {
            require((0..=1).contains(&ell), "interpolated identity needs l in {0,1}")?;
            let mut upper = upper;
            upper.push(
                a.add(c)
                    .sub(&rr::<R>(&Rat::from_int(ell)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64))),
            );
            let mut lower: Vec<R> = (0..p)
                .map(|i| {
                    a.sub(&rr::<R>(&Rat::from_int(ell)))
                        .add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                })
                .collect();
            lower.push(
                a.add(c)
                    .sub(&rr::<R>(&Rat::from_int(ell)))
                    .add(&rr::<R>(&Rat::from_int(p as i64)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64))),
            );
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let lhs = hyp_series(&spec, Var("zeta"), order).compose(&zs);
            let g_at = g_kernel_at_series(
                ell as u8,
                &a.neg(),
                &rr::<R>(&Rat::from_int(-(p as i64))),
                &c.neg(),
                &y,
            );
            let rhs = one_minus_s.pow_param(a).mul(&g_at);
            Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
        }
    }
}

/// Uniformization of the two-root top curve, expanded at s = 1 in the local
/// variable sigma = s - 1 (the argument 1/zeta vanishes there):
/// 2F1(-a+l+k/2, a+k/2; 1/2+k; 1/zeta_(1,1)(s)) =
///   pref [-zeta/4]^(k/2) (1/2)[s^a F_l(-a,1/2;1/s) + (-1)^k s^(-a) F_l(-a,1/2;s)].
pub fn thm72<R: Field>(
    ell: i64,
    kappa: u32,
    with_c: Option<&R>,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    require(kappa <= 1, "kappa in {0,1}")?;
    // reducibility screen: 2a integral collapses the representation
    if let Some(v) = a.as_rat() {
        if (&v + &v).is_integer() {
            return Err(CoreError::Constraint(format!(
                "a = {v} makes 2a integral (degenerate two-root representation)"
            )));
        }
    }
    let var = Var("sigma");
    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    let s = one.add(&id); // s = 1 + sigma
    // 1/zeta = -(1-s)^2/(4s) = -sigma^2/(4(1+sigma))
    let inv_zeta = id
        .mul(&id)
        .scale(&rr::<R>(&Rat::new(-1, 4)))
        .div(&s);
    let half = Rat::new(1, 2);
    let kq = Rat::new(kappa as i64, 2);
    let mut choices = vec![];
    let s_a = s.pow_param(a);
    let s_ma = s.pow_param(&a.neg());
    let sqrt_s = s.nth_root(2);
    match with_c {
        None => {
            screen_poch(a, 1 - ell, "(a) normalization")?;
            let upper = vec![
                a.neg().add(&rr::<R>(&Rat::from_int(ell))).add(&rr::<R>(&kq)),
                a.add(&rr::<R>(&kq)),
            ];
            let lower = vec![rr::<R>(&(&half + &Rat::from_int(kappa as i64)))];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order).compose(&inv_zeta);
            // multiply both sides by sigma^kappa to clear the half-power pole
            let lhs = hyp.shift_up(kappa as usize);
            let kernel = kernel_rational(ell);
            let bracket = s_a
                .mul(&kernel_at(&kernel, &a.neg(), &half, &s.inverse()))
                .add(
                    &s_ma
                        .mul(&kernel_at(&kernel, &a.neg(), &half, &s))
                        .scale(&if kappa % 2 == 1 { rr::<R>(&Rat::from_int(-1)) } else { R::one() }),
                )
                .scale(&rr::<R>(&half));
            // [-zeta/4]^(k/2) sigma^k = (+-)^k (1+sigma)^(k/2)
            let mut pref = pochhammer(&a.add(&rr::<R>(&kq)), 1 - ell - kappa as i64)
                .div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = sqrt_s
                .pow_int(kappa as i64)
                .mul(&bracket)
                .scale(&pref);
            let lhs = c1(&lhs);
            let cands = [Cyclo::<R>::one(), Cyclo::<R>::one().neg()];
            let rhs = match_branch(&lhs, c1(&rhs0), &cands, "square-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
        Some(c) => {
            require((0..=1).contains(&ell), "interpolated identity needs l in {0,1}")?;
            screen_poch(a, -ell, "(a) normalization")?;
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(ell)));
            if let Some(v) = acl.as_rat() {
                require(!v.is_zero(), "a + c - l vanishes")?;
            }
            let upper = vec![
                a.neg()
                    .add(&rr::<R>(&Rat::from_int(ell + 1)))
                    .add(&rr::<R>(&kq)),
                a.add(&rr::<R>(&kq)),
                acl.neg().add(&rr::<R>(&kq)),
            ];
            let lower = vec![
                rr::<R>(&(&half + &Rat::from_int(kappa as i64))),
                acl.neg().add(&R::one()).add(&rr::<R>(&kq)),
            ];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order).compose(&inv_zeta);
            let lhs = hyp.shift_up(kappa as usize);
            let hf = rr::<R>(&half);
            let bracket = s_a
                .mul(&g_kernel_at_series(ell as u8, &a.neg(), &hf, &c.neg(), &s.inverse()))
                .add(
                    &s_ma
                        .mul(&g_kernel_at_series(ell as u8, &a.neg(), &hf, &c.neg(), &s))
                        .scale(&if kappa % 2 == 1 { rr::<R>(&Rat::from_int(-1)) } else { R::one() }),
                )
                .scale(&hf);
            let mut pref = pochhammer(&a.add(&rr::<R>(&kq)), -ell - kappa as i64)
                .mul(&acl.sub(&rr::<R>(&kq)))
                .div(&pochhammer(a, -ell))
                .div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = sqrt_s.pow_int(kappa as i64).mul(&bracket).scale(&pref);
            let lhs = c1(&lhs);
            let cands = [Cyclo::<R>::one(), Cyclo::<R>::one().neg()];
            let rhs = match_branch(&lhs, c1(&rhs0), &cands, "square-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
    }
}

/// Uniformization by t for odd p (n = p + 2): the two-term average of
/// kernels at (1 +- t)^2 [(1+t)^p+(1-t)^p]/[(1+t)^n+(1-t)^n].
pub fn thm73<R: Field>(
    p: u32,
    ell: i64,
    kappa: u32,
    with_c: Option<&R>,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    require(p % 2 == 1, "odd p required")?;
    require(kappa <= 1, "kappa in {0,1}")?;
    let n = p + 2;
    let var = Var("t");
    let kq = Rat::new(kappa as i64, 2);
    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    let one_plus = one.add(&id);
    let one_minus = one.sub(&id);
    // halves normalized to constant term 1
    let bp = one_plus
        .pow_int(p as i64)
        .add(&one_minus.pow_int(p as i64))
        .scale(&rr::<R>(&Rat::new(1, 2)));
    let bn = one_plus
        .pow_int(n as i64)
        .add(&one_minus.pow_int(n as i64))
        .scale(&rr::<R>(&Rat::new(1, 2)));
    let y_plus = one_plus.pow_int(2).mul(&bp).div(&bn);
    let y_minus = one_minus.pow_int(2).mul(&bp).div(&bn);
    let zeta = belyi_catalog("zeta_p2", Some(p), None)?;
    let zs = zeta.eval_series::<R>(&id);
    let two_a = a.add(a);
    let neg_half_p = Rat::new(-(p as i64), 2);
    let mut choices = vec![];

    // [4 p^p zeta / n^n]^(-k/2) * (2t)^k = (+-)^k (1-t^2)^(-pk) bp^(-pk/2) bn^(nk/2)
    let one_minus_t2 = one_plus.mul(&one_minus);
    let halfpow = one_minus_t2
        .pow_int(-(p as i64 * kappa as i64))
        .mul(&bp.pow_param(&rr::<R>(&Rat::new(-(p as i64) * kappa as i64, 2))))
        .mul(&bn.pow_param(&rr::<R>(&Rat::new(n as i64 * kappa as i64, 2))));
    let final_factor = bn.div(&bp).pow_param(a);

    match with_c {
        None => {
            screen_poch(a, 1 - ell, "(a) normalization")?;
            let upper: Vec<R> = (0..n)
                .map(|i| {
                    a.add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, n as i64)))
                        .add(&rr::<R>(&kq))
                })
                .collect();
            let mut lower: Vec<R> = (1..=p)
                .map(|i| {
                    a.sub(&rr::<R>(&Rat::from_int(ell)))
                        .add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                        .add(&rr::<R>(&kq))
                })
                .collect();
            lower.push(rr::<R>(&(&Rat::new(1, 2) + &Rat::from_int(kappa as i64))));
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 2 + 1).compose(&zs);
            let lhs = hyp.shift_up(kappa as usize).scale(&rr::<R>(&Rat::from_int(2)).pow_u(kappa));
            let kernel = kernel_rational(ell);
            let term_plus = one_plus
                .pow_param(&two_a.neg())
                .mul(&kernel_at(&kernel, &a.neg(), &neg_half_p, &y_plus));
            let term_minus = one_minus
                .pow_param(&two_a.neg())
                .mul(&kernel_at(&kernel, &a.neg(), &neg_half_p, &y_minus));
            let sign = if kappa % 2 == 1 { rr::<R>(&Rat::from_int(-1)) } else { R::one() };
            let bracket = term_plus.add(&term_minus.scale(&sign)).scale(&rr::<R>(&Rat::new(1, 2)));
            let mut pref = pochhammer(
                &a.add(&rr::<R>(&Rat::new(n as i64 * kappa as i64, 2))),
                1 - ell - kappa as i64,
            )
            .div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = halfpow.mul(&bracket).mul(&final_factor).scale(&pref);
            let lhs = c1(&lhs);
            let cands = [Cyclo::<R>::one(), Cyclo::<R>::one().neg()];
            let rhs = match_branch(&lhs, c1(&rhs0), &cands, "square-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
        Some(c) => {
            require((0..=1).contains(&ell), "interpolated identity needs l in {0,1}")?;
            screen_poch(a, -ell, "(a) normalization")?;
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(ell)));
            if let Some(v) = acl.as_rat() {
                require(!v.is_zero(), "a + c - l vanishes")?;
            }
            let mut upper: Vec<R> = (0..n)
                .map(|i| {
                    a.add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, n as i64)))
                        .add(&rr::<R>(&kq))
                })
                .collect();
            upper.push(
                acl.mul(&rr::<R>(&Rat::new(1, p as i64))).add(&rr::<R>(&kq)),
            );
            let mut lower: Vec<R> = (0..p)
                .map(|i| {
                    a.sub(&rr::<R>(&Rat::from_int(ell)))
                        .add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                        .add(&rr::<R>(&kq))
                })
                .collect();
            lower.push(rr::<R>(&(&Rat::new(1, 2) + &Rat::from_int(kappa as i64))));
            lower.push(
                acl.add(&rr::<R>(&Rat::from_int(p as i64)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64)))
                    .add(&rr::<R>(&kq)),
            );
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 2 + 1).compose(&zs);
            let lhs = hyp.shift_up(kappa as usize).scale(&rr::<R>(&Rat::from_int(2)).pow_u(kappa));
            let hp = rr::<R>(&neg_half_p);
            let term_plus = one_plus
                .pow_param(&two_a.neg())
                .mul(&g_kernel_at_series(ell as u8, &a.neg(), &hp, &c.neg(), &y_plus));
            let term_minus = one_minus
                .pow_param(&two_a.neg())
                .mul(&g_kernel_at_series(ell as u8, &a.neg(), &hp, &c.neg(), &y_minus));
            let sign = if kappa % 2 == 1 { rr::<R>(&Rat::from_int(-1)) } else { R::one() };
            let bracket = term_plus.add(&term_minus.scale(&sign)).scale(&rr::<R>(&Rat::new(1, 2)));
            let mut pref = pochhammer(
                &a.add(&rr::<R>(&Rat::new(n as i64 * kappa as i64, 2))),
                -ell - kappa as i64,
            )
            .mul(&acl.add(&rr::<R>(&Rat::new(p as i64 * kappa as i64, 2))))
            .div(&pochhammer(a, -ell))
            .div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = halfpow.mul(&bracket).mul(&final_factor).scale(&pref);
            let lhs = c1(&lhs);
            let cands = [Cyclo::<R>::one(), Cyclo::<R>::one().neg()];
            let rhs = match_branch(&lhs, c1(&rhs0), &cands, "square-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
    }
}

fn b_params(kappa: u32) -> (Rat, Rat) {
    match kappa {
        0 => (Rat::new(1, 3), Rat::new(2, 3)),
        1 => (Rat::new(2, 3), Rat::new(4, 3)),
        2 => (Rat::new(4, 3), Rat::new(5, 3)),
        _ => unreachable!(),
    }
}

/// Degree-6 covering of the three-root top curve (expansion at zeta = inf):
/// 3F2(-a+l+k/3; a/2+k/3, (a+1)/2+k/3; b1(k), b2(k); 1/zeta(t)) against the
/// omega-weighted average of kernels at (w^j + wbar^j t)^3/(1+t^3).
pub fn thm74<R: Field>(
    ell: i64,
    kappa: u32,
    with_c: Option<&R>,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    require(kappa <= 2, "kappa in {0,1,2}")?;
    let var = Var("ttilde");
    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    // 1/zeta = 4 t^3/(1 + t^3)^2
    let t3 = id.pow_int(3);
    let one_plus_t3 = one.add(&t3);
    let inv_zeta = t3.scale(&rr::<R>(&Rat::from_int(4))).div(&one_plus_t3.pow_int(2));
    let (b1, b2) = b_params(kappa);
    let third = Rat::new(1, 3);
    let kq = Rat::new(kappa as i64, 3);
    let mut choices = vec![];

    // arguments of the kernels: u_j = (w^(2j) + w^j t)^3/(1+t^3), j = 0,1,2
    // (w^(2j) = conjugate weight); all have constant term 1
    let mut args = vec![];
    let cone = |x: &Series<R>| x.map(|v| Cyclo::from_scalar(3, v.clone()));
    let idc = cone(&id);
    let onec = cone(&one);
    for j in 0..3i64 {
        let wbar = Cyclo::<R>::omega_pow(3, -j);
        let w = Cyclo::<R>::omega_pow(3, j);
        let lin = onec.scale(&wbar).add(&idc.scale(&w));
        args.push(lin.pow_int(3).div(&cone(&one_plus_t3)));
    }
    // [4 zeta / 27]^(k/3) * (3t)^k = unit * (1 + t^3)^(2k/3)
    let halfpow = one_plus_t3.pow_param(&rr::<R>(&Rat::new(2 * kappa as i64, 3)));

    match with_c {
        None => {
            screen_poch(a, 1 - ell, "(a) normalization")?;
            let upper = vec![
                a.neg().add(&rr::<R>(&Rat::from_int(ell))).add(&rr::<R>(&kq)),
                a.mul(&rr::<R>(&Rat::new(1, 2))).add(&rr::<R>(&kq)),
                a.add(&R::one()).mul(&rr::<R>(&Rat::new(1, 2))).add(&rr::<R>(&kq)),
            ];
            let lower = vec![rr::<R>(&b1), rr::<R>(&b2)];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 3 + 1).compose(&inv_zeta);
            let lhs = cone(&hyp.shift_up(kappa as usize))
                .scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::from_int(3)).pow_u(kappa)));
            let kernel = kernel_rational(ell);
            let a_c = Cyclo::from_scalar(3, a.clone());
            let mut bracket = Series::<Cyclo<R>>::zero(var, order);
            for (j, arg) in args.iter().enumerate() {
                let weight = Cyclo::<R>::omega_pow(3, j as i64 * kappa as i64);
                let t = arg.pow_param(&a_c.neg()).mul(&kernel.eval_series_at(
                    &a_c.neg(),
                    &Cyclo::from_rat(&third),
                    arg,
                ));
                bracket = bracket.add(&t.scale(&weight));
            }
            bracket = bracket.scale(&Cyclo::from_scalar(3, rr::<R>(&third)));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new(2 * kappa as i64, 3))),
                    1 - ell - kappa as i64,
                ))
                .div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = cone(&halfpow).mul(&bracket).scale(&Cyclo::from_scalar(3, pref));
            let cands = [
                Cyclo::<R>::omega_pow(3, 0),
                Cyclo::<R>::omega_pow(3, 1),
                Cyclo::<R>::omega_pow(3, 2),
            ];
            let rhs = match_branch(&lhs, rhs0, &cands, "cube-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
        Some(c) => {
            require((0..=1).contains(&ell), "interpolated identity needs l in {0,1}")?;
            screen_poch(a, -ell, "(a) normalization")?;
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(ell)));
            if let Some(v) = acl.as_rat() {
                require(!v.is_zero(), "a + c - l vanishes")?;
            }
            let upper = vec![
                a.neg()
                    .add(&rr::<R>(&Rat::from_int(ell + 1)))
                    .add(&rr::<R>(&kq)),
                a.mul(&rr::<R>(&Rat::new(1, 2))).add(&rr::<R>(&kq)),
                a.add(&R::one()).mul(&rr::<R>(&Rat::new(1, 2))).add(&rr::<R>(&kq)),
                acl.neg().add(&rr::<R>(&kq)),
            ];
            let lower = vec![
                rr::<R>(&b1),
                rr::<R>(&b2),
                acl.neg().add(&R::one()).add(&rr::<R>(&kq)),
            ];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 3 + 1).compose(&inv_zeta);
            let lhs = cone(&hyp.shift_up(kappa as usize))
                .scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::from_int(3)).pow_u(kappa)));
            let a_c = Cyclo::from_scalar(3, a.clone());
            let c_c = Cyclo::from_scalar(3, c.clone());
            let b_c = Cyclo::<R>::from_rat(&third);
            let mut bracket = Series::<Cyclo<R>>::zero(var, order);
            for (j, arg) in args.iter().enumerate() {
                let weight = Cyclo::<R>::omega_pow(3, j as i64 * kappa as i64);
                let g_at = g_kernel_at_series(ell as u8, &a_c.neg(), &b_c, &c_c.neg(), arg);
                let t = arg.pow_param(&a_c.neg()).mul(&g_at);
                bracket = bracket.add(&t.scale(&weight));
            }
            bracket = bracket.scale(&Cyclo::from_scalar(3, rr::<R>(&third)));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new(2 * kappa as i64, 3))),
                    -ell - kappa as i64,
                ))
                .mul(&acl.sub(&rr::<R>(&kq)))
                .div(&pochhammer(a, -ell))
                .div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = cone(&halfpow).mul(&bracket).scale(&Cyclo::from_scalar(3, pref));
            let cands = [
                Cyclo::<R>::omega_pow(3, 0),
                Cyclo::<R>::omega_pow(3, 1),
                Cyclo::<R>::omega_pow(3, 2),
            ];
            let rhs = match_branch(&lhs, rhs0, &cands, "cube-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
    }
}

/// Degree-24 covering of the four-root curve with q = 3:
/// 4F3((a+i)/4+k/3; a-l+1+k/3, b1(k), b2(k); zeta(u)) against the
/// omega-weighted average of kernels at (1-w^j u)^3 (1+2 w^j u)^3/(1-20u^3-8u^6).
pub fn thm75<R: Field>(
    ell: i64,
    kappa: u32,
    with_c: Option<&R>,
    a: &R,
    order: usize,
) -> Result<Built<R>, CoreError> {
    require(kappa <= 2, "kappa in {0,1,2}")?;
    let var = Var("u");
    let one = Series::<R>::one(var, order);
    let id = Series::<R>::identity(var, order);
    let (b1, b2) = b_params(kappa);
    let neg_third = Rat::new(-1, 3);
    let kq = Rat::new(kappa as i64, 3);
    let mut choices = vec![];
    let zeta = belyi_catalog("zeta_13", None, None)?;
    let zs = zeta.eval_series::<R>(&id);
    // denominator 1 - 20u^3 - 8u^6 as a series
    let den = {
        let mut s = Series::<R>::one(var, order);
        if order >= 3 {
            s.c[3] = rr::<R>(&Rat::from_int(-20));
        }
        if order >= 6 {
            s.c[6] = rr::<R>(&Rat::from_int(-8));
        }
        s
    };
    let cone = |x: &Series<R>| x.map(|v| Cyclo::from_scalar(3, v.clone()));
    let idc = cone(&id);
    let onec = cone(&one);
    let mut args = vec![];
    for j in 0..3i64 {
        let w = Cyclo::<R>::omega_pow(3, j);
        let f = onec
            .sub(&idc.scale(&w))
            .pow_int(3)
            .mul(&onec.add(&idc.scale(&w.mul(&Cyclo::from_scalar(3, R::from_i64(2))))).pow_int(3));
        args.push(f.div(&cone(&den)));
    }
    // [-27 zeta/256]^(-k/3) (3u)^k = unit * [(1-u^3)(1+8u^3)]^(-k) den^(4k/3)
    let one_m_u3 = {
        let mut s = Series::<R>::one(var, order);
        if order >= 3 {
            s.c[3] = rr::<R>(&Rat::from_int(-1));
        }
        s
    };
    let one_p_8u3 = {
        let mut s = Series::<R>::one(var, order);
        if order >= 3 {
            s.c[3] = rr::<R>(&Rat::from_int(8));
        }
        s
    };
    let halfpow = one_m_u3
        .mul(&one_p_8u3)
        .pow_int(-(kappa as i64))
        .mul(&den.pow_param(&rr::<R>(&Rat::new(4 * kappa as i64, 3))));

    let make_upper = |with_extra: bool| -> Vec<R> {
        let mut u: Vec<R> = (0..4)
            .map(|i| {
                a.add(&rr::<R>(&Rat::from_int(i as i64)))
                    .mul(&rr::<R>(&Rat::new(1, 4)))
                    .add(&rr::<R>(&kq))
            })
            .collect();
        if with_extra {
            if let Some(c) = with_c {
                u.push(a.add(c).sub(&rr::<R>(&Rat::from_int(ell))).add(&rr::<R>(&kq)));
            }
        }
        u
    };

    match with_c {
        None => {
            screen_poch(a, 1 - ell, "(a) normalization")?;
            let upper = make_upper(false);
            let lower = vec![
                a.sub(&rr::<R>(&Rat::from_int(ell - 1))).add(&rr::<R>(&kq)),
                rr::<R>(&b1),
                rr::<R>(&b2),
            ];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 3 + 1).compose(&zs);
            let lhs = cone(&hyp.shift_up(kappa as usize))
                .scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::from_int(3)).pow_u(kappa)));
            let kernel = kernel_rational(ell);
            let a_c = Cyclo::from_scalar(3, a.clone());
            let mut bracket = Series::<Cyclo<R>>::zero(var, order);
            // weights: j = 0 -> 1, j = 1 -> wbar^k, j = 2 -> w^k
            for (j, arg) in args.iter().enumerate() {
                let weight = Cyclo::<R>::omega_pow(3, -(j as i64) * kappa as i64);
                let t = arg.pow_param(&a_c.neg()).mul(&kernel.eval_series_at(
                    &a_c.neg(),
                    &Cyclo::from_rat(&neg_third),
                    arg,
                ));
                bracket = bracket.add(&t.scale(&weight));
            }
            bracket = bracket.scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::new(1, 3))));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new(4 * kappa as i64, 3))),
                    1 - ell - kappa as i64,
                ))
                .div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = cone(&halfpow).mul(&bracket).scale(&Cyclo::from_scalar(3, pref));
            let cands = [
                Cyclo::<R>::omega_pow(3, 0),
                Cyclo::<R>::omega_pow(3, 1),
                Cyclo::<R>::omega_pow(3, 2),
            ];
            let rhs = match_branch(&lhs, rhs0, &cands, "cube-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
        Some(c) => {
            require((0..=1).contains(&ell), "interpolated identity needs l in {0,1}")?;
            screen_poch(a, -ell, "(a) normalization")?;
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(ell)));
            if let Some(v) = acl.as_rat() {
                require(!v.is_zero(), "a + c - l vanishes")?;
            }
            let upper = make_upper(true);
            let lower = vec![
                a.sub(&rr::<R>(&Rat::from_int(ell))).add(&rr::<R>(&kq)),
                rr::<R>(&b1),
                rr::<R>(&b2),
                acl.add(&R::one()).add(&rr::<R>(&kq)),
            ];
            screen_lower_generic(&lower)?;
            let spec = HypSpec::new(upper, lower);
            let hyp = hyp_series(&spec, Var("zeta"), order / 3 + 1).compose(&zs);
            let lhs = cone(&hyp.shift_up(kappa as usize))
                .scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::from_int(3)).pow_u(kappa)));
            let a_c = Cyclo::from_scalar(3, a.clone());
            let c_c = Cyclo::from_scalar(3, c.clone());
            let b_c = Cyclo::<R>::from_rat(&neg_third);
            let mut bracket = Series::<Cyclo<R>>::zero(var, order);
            for (j, arg) in args.iter().enumerate() {
                let weight = Cyclo::<R>::omega_pow(3, -(j as i64) * kappa as i64);
                let g_at = g_kernel_at_series(ell as u8, &a_c.neg(), &b_c, &c_c.neg(), arg);
                let t = arg.pow_param(&a_c.neg()).mul(&g_at);
                bracket = bracket.add(&t.scale(&weight));
            }
            bracket = bracket.scale(&Cyclo::from_scalar(3, rr::<R>(&Rat::new(1, 3))));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new(4 * kappa as i64, 3))),
                    -ell - kappa as i64,
                ))
                .mul(&acl.add(&rr::<R>(&kq)))
                .div(&pochhammer(a, -ell))
                .div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            let rhs0 = cone(&halfpow).mul(&bracket).scale(&Cyclo::from_scalar(3, pref));
            let cands = [
                Cyclo::<R>::omega_pow(3, 0),
                Cyclo::<R>::omega_pow(3, 1),
                Cyclo::<R>::omega_pow(3, 2),
            ];
            let rhs = match_branch(&lhs, rhs0, &cands, "cube-root prefactor", &mut choices)?;
            Ok(Built { lhs, rhs, branch_choices: choices })
        }
    }
}

/// The degenerate single-root identity: for n >= 2,
/// (n-1)F(n-2)(-1/n; 1/n..(n-2)/n; 1/(n-1)..(n-2)/(n-1); zeta(s))
///   = ((n-1) + s)/((n-1)(1-s)).
pub fn thm88(n: u32, order: usize) -> Result<Built<Rat>, CoreError> {
    require(n >= 2, "n >= 2 required")?;
    let var = Var("s");
    let mut upper = vec![Rat::new(-1, n as i64)];
    for i in 1..=(n - 2) {
        upper.push(Rat::new(i as i64, n as i64));
    }
    let lower: Vec<Rat> = (1..=(n - 2))
        .map(|i| Rat::new(i as i64, (n - 1) as i64))
        .collect();
    let spec = HypSpec::new(upper, lower);
    let zeta = belyi_catalog("zeta_p1", Some(n - 1), None)?;
    let id = Series::<Rat>::identity(var, order);
    let zs = zeta.eval_series::<Rat>(&id);
    let lhs = hyp_series(&spec, Var("zeta"), order).compose(&zs);
    // ((n-1) + s) / ((n-1)(1-s))
    let num = Series::<Rat>::constant(var, order, Rat::from_int((n - 1) as i64)).add(&id);
    let den = Series::<Rat>::one(var, order)
        .sub(&id)
        .scale(&Rat::from_int((n - 1) as i64));
    let rhs = num.div(&den);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

/// zeta(t) for the (2,3) single-curve family expressed in t (the square
/// root of the degree-10 covering's parameter).
fn zeta_23_in_t() -> RationalMap {
    let m = belyi_catalog("zeta_23", None, None).expect("catalog");
    // substitute v = t^2
    let sub = |p: &UPoly<Rat>| -> UPoly<Rat> {
        let mut c = vec![Rat::zero(); 2 * p.c.len()];
        for (i, k) in p.c.iter().enumerate() {
            c[2 * i] = k.clone();
        }
        UPoly::from_coeffs(c)
    };
    RationalMap { num: sub(&m.num), den: sub(&m.den) }
}

/// The degenerate family at negative integer a on the (2,3) curve:
/// F(a; zeta(t)) = (1/3) s3(t)^a [ P_a(s3, s5) - (t+1)^(-3a) - (t-1)^(-3a) ],
/// with s3 = (1+10t^2+5t^4)/(2t), s5 = -(1-t^2)^2(1+3t^2)/(2t) and P_a the
/// curve-restricted power sum of degree -3a.
pub fn thm810(a_int: i64, order: usize) -> Result<Built<Rat>, CoreError> {
    require((-8..=-1).contains(&a_int), "a in -8..=-1")?;
    let var = Var("t");
    let lhs = f23_limit_series(a_int, order)?;
    // right side as a Laurent series in t
    let s3 = Laurent {
        shift: -1,
        ser: Series::<Rat>::from_coeffs(
            var,
            pad(vec![Rat::new(1, 2), Rat::zero(), Rat::from_int(5), Rat::zero(), Rat::new(5, 2)], order + 9),
        ),
    };
    let s5 = Laurent {
        shift: -1,
        // -(1 - t^2)^2 (1 + 3 t^2) / 2 = -(1 + t^2 - 5t^4 + 3t^6)/2
        ser: Series::<Rat>::from_coeffs(
            var,
            pad(
                vec![
                    Rat::new(-1, 2),
                    Rat::zero(),
                    Rat::new(-1, 2),
                    Rat::zero(),
                    Rat::new(5, 2),
                    Rat::zero(),
                    Rat::new(-3, 2),
                ],
                order + 9,
            ),
        ),
    };
    let gamma = (-3 * a_int) as u32;
    let p_a = power_sum_on_curve(gamma, 2, 3)?;
    let mut pa_series = Laurent::from_series(Series::<Rat>::zero(var, order + 9));
    for (mq, mn, coeff) in &p_a.terms {
        let term = s3
            .pow_int(*mq as i64)
            .mul(&s5.pow_int(*mn as i64))
            .scale(coeff);
        pa_series = pa_series.add(&term);
    }
    // (t + 1)^(-3a) and (t - 1)^(-3a) as polynomials
    let e = (-3 * a_int) as u32;
    let tp1 = UPoly::<Rat>::from_ints(&[1, 1]).pow(e);
    let tm1 = UPoly::<Rat>::from_ints(&[-1, 1]).pow(e);
    let poly_series = |p: &UPoly<Rat>| -> Laurent<Rat> {
        let mut c = vec![Rat::zero(); order + 10];
        for (i, k) in p.c.iter().enumerate() {
            if i < c.len() {
                c[i] = k.clone();
            }
        }
        Laurent::from_series(Series::from_coeffs(var, c))
    };
    let bracket = pa_series
        .sub(&poly_series(&tp1))
        .sub(&poly_series(&tm1));
    // s3^a for negative integer a: (2t)^(-a) (1+10t^2+5t^4)^a
    let s3_pow = s3.pow_int(a_int);
    let rhs = s3_pow
        .mul(&bracket)
        .scale(&Rat::new(1, 3))
        .into_series(order);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

fn pad(mut v: Vec<Rat>, len: usize) -> Vec<Rat> {
    v.resize(len.max(v.len()), Rat::zero());
    v
}

/// The degenerate (2,3)-family hypergeometric series at integer a, composed
/// with the covering map in t: coefficients obtained as exact limits over
/// Q(eps).
fn f23_limit_series(a_int: i64, order: usize) -> Result<Series<Rat>, CoreError> {
    let (_, gens) = function_field(&["eps"]);
    let eps = &gens[0];
    let a = eps.add(&MRat::from_rat(&Rat::from_int(a_int)));
    let upper: Vec<MRat> = (0..5)
        .map(|i| {
            a.add(&MRat::from_i64(i))
                .mul(&MRat::from_rat(&Rat::new(1, 5)))
        })
        .collect();
    let lower = vec![
        a.add(&MRat::one()).mul(&MRat::from_rat(&Rat::new(1, 2))),
        a.add(&MRat::from_i64(2)).mul(&MRat::from_rat(&Rat::new(1, 2))),
        MRat::from_rat(&Rat::new(1, 3)),
        MRat::from_rat(&Rat::new(2, 3)),
    ];
    let zeta_order = order / 2 + 1;
    let hyp = hyp_series_limit(&upper, &lower, Var("zeta"), zeta_order);
    let map = zeta_23_in_t();
    let id = Series::<Rat>::identity(Var("t"), order);
    Ok(hyp.compose(&map.eval_series::<Rat>(&id)))
}

/// Nondegenerate reductions of the integer-a family: a = -1 collapses to a
/// 4F3, a = -5 to a head plus a zeta^3-shifted 5F4.
pub fn thm810_reduction(which: i64, order: usize) -> Result<Built<Rat>, CoreError> {
    let var = Var("zeta");
    match which {
        -1 => {
            let (_, gens) = function_field(&["eps"]);
            let eps = &gens[0];
            let a = eps.add(&MRat::from_rat(&Rat::from_int(-1)));
            let upper: Vec<MRat> = (0..5)
                .map(|i| a.add(&MRat::from_i64(i)).mul(&MRat::from_rat(&Rat::new(1, 5))))
                .collect();
            let lower = vec![
                a.add(&MRat::one()).mul(&MRat::from_rat(&Rat::new(1, 2))),
                a.add(&MRat::from_i64(2)).mul(&MRat::from_rat(&Rat::new(1, 2))),
                MRat::from_rat(&Rat::new(1, 3)),
                MRat::from_rat(&Rat::new(2, 3)),
            ];
            let lhs = hyp_series_limit(&upper, &lower, var, order);
            // 3/5 + (2/5) 4F3(-1/5; 1/5, 2/5, 3/5; 1/2; 1/3, 2/3)
            let spec = HypSpec::new(
                vec![Rat::new(-1, 5), Rat::new(1, 5), Rat::new(2, 5), Rat::new(3, 5)],
                vec![Rat::new(1, 2), Rat::new(1, 3), Rat::new(2, 3)],
            );
            let f = hyp_series(&spec, var, order);
            let rhs = f
                .scale(&Rat::new(2, 5))
                .add(&Series::constant(var, order, Rat::new(3, 5)));
            // and the direct tail form 1 - (2^2 3^3 / 5^5) zeta 5F4(...)
            let spec2 = HypSpec::new(
                vec![
                    Rat::new(4, 5),
                    Rat::new(6, 5),
                    Rat::new(7, 5),
                    Rat::new(8, 5),
                    Rat::one(),
                ],
                vec![Rat::new(3, 2), Rat::new(4, 3), Rat::new(5, 3), Rat::from_int(2)],
            );
            let alt = Series::<Rat>::one(var, order).sub(
                &hyp_series(&spec2, var, order)
                    .shift_up(1)
                    .scale(&Rat::new(4 * 27, 3125)),
            );
            if lhs.sub(&alt).is_zero() {
                Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
            } else {
                // surface the failure through the main comparison
                Ok(Built { lhs: c1(&lhs), rhs: c1(&alt.add(&Series::one(var, order))), branch_choices: vec![] })
            }
        }
        -5 => {
            let (_, gens) = function_field(&["eps"]);
            let eps = &gens[0];
            let a = eps.add(&MRat::from_rat(&Rat::from_int(-5)));
            let upper: Vec<MRat> = (0..5)
                .map(|i| a.add(&MRat::from_i64(i)).mul(&MRat::from_rat(&Rat::new(1, 5))))
                .collect();
            let lower = vec![
                a.add(&MRat::one()).mul(&MRat::from_rat(&Rat::new(1, 2))),
                a.add(&MRat::from_i64(2)).mul(&MRat::from_rat(&Rat::new(1, 2))),
                MRat::from_rat(&Rat::new(1, 3)),
                MRat::from_rat(&Rat::new(2, 3)),
            ];
            let lhs = hyp_series_limit(&upper, &lower, var, order);
            // 1 - (2^2 3^2/5^4) zeta - (2^6 3^9/5^14) zeta^3 5F4(...)
            let spec = HypSpec::new(
                vec![
                    Rat::new(11, 5),
                    Rat::new(12, 5),
                    Rat::new(13, 5),
                    Rat::new(14, 5),
                    Rat::from_int(2),
                ],
                vec![
                    Rat::new(3, 2),
                    Rat::new(10, 3),
                    Rat::new(11, 3),
                    Rat::from_int(4),
                ],
            );
            let c1_coeff = Rat::new(-4 * 9, 625);
            let c3 = &Rat::new(-64, 1) * &Rat::new(19683, 1);
            let c3 = &c3 / &Rat::from_int(5).pow_i(14);
            let mut rhs = Series::<Rat>::one(var, order);
            if order >= 1 {
                rhs.c[1] = c1_coeff;
            }
            let tail = hyp_series(&spec, var, order).shift_up(3).scale(&c3);
            let rhs = rhs.add(&tail);
            Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
        }
        _ => Err(CoreError::Constraint("reductions exist for a = -1 and a = -5".into())),
    }
}

/// The two rational uniformizations on the degree-10 covering.
pub fn cor811(which: u8, order: usize, corruption: Option<Corruption>) -> Result<Built<Rat>, CoreError> {
    let var = Var("v");
    let mut map = belyi_catalog("zeta_23", None, None)?;
    if corruption == Some(Corruption::MapCoefficient) {
        map = corrupt_map(&map);
    }
    let id = Series::<Rat>::identity(var, order);
    let zs = map.eval_series::<Rat>(&id);
    match which {
        0 => {
            let spec = HypSpec::new(
                vec![Rat::new(-1, 5), Rat::new(1, 5), Rat::new(2, 5), Rat::new(3, 5)],
                vec![Rat::new(1, 2), Rat::new(1, 3), Rat::new(2, 3)],
            );
            let lhs = hyp_series(&spec, Var("zeta"), order).compose(&zs);
            // (3 + 5v^2) / (3 (1 + 10v + 5v^2))
            let num = UPoly::<Rat>::from_ints(&[3, 0, 5]);
            let den = UPoly::<Rat>::from_ints(&[3, 30, 15]);
            let rhs = RationalMap::new(num, den).eval_series::<Rat>(&id);
            Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
        }
        1 => {
            let spec = HypSpec::new(
                vec![
                    Rat::new(11, 5),
                    Rat::new(12, 5),
                    Rat::new(13, 5),
                    Rat::new(14, 5),
                    Rat::from_int(2),
                ],
                vec![
                    Rat::new(3, 2),
                    Rat::new(10, 3),
                    Rat::new(11, 3),
                    Rat::from_int(4),
                ],
            );
            let lhs = hyp_series(&spec, Var("zeta"), order).compose(&zs);
            // (3+v)(5+10v+v^2)(1+28v+134v^2+92v^3+v^4)(1+10v+5v^2)^10
            //  / (15 (1-v)^18 (1+3v)^9)
            let num = UPoly::<Rat>::from_ints(&[3, 1])
                .mul(&UPoly::from_ints(&[5, 10, 1]))
                .mul(&UPoly::from_ints(&[1, 28, 134, 92, 1]))
                .mul(&UPoly::from_ints(&[1, 10, 5]).pow(10));
            let den = UPoly::<Rat>::from_ints(&[1, -1])
                .pow(18)
                .mul(&UPoly::from_ints(&[1, 3]).pow(9))
                .scale(&Rat::from_int(15));
            let rhs = RationalMap::new(num, den).eval_series::<Rat>(&id);
            Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
        }
        _ => Err(CoreError::Constraint("parts are 0 (a) and 1 (b)".into())),
    }
}

/// The cube-root radical identity on the degree-10 covering.
pub fn thm812(order: usize) -> Result<Built<Rat>, CoreError> {
    let var = Var("v");
    let map = belyi_catalog("zeta_23", None, None)?;
    let id = Series::<Rat>::identity(var, order);
    let zs = map.eval_series::<Rat>(&id);
    let spec = HypSpec::new(
        vec![
            Rat::new(-1, 15),
            Rat::new(2, 15),
            Rat::new(8, 15),
            Rat::new(11, 15),
        ],
        vec![Rat::new(1, 3), Rat::new(2, 3), Rat::new(5, 6)],
    );
    let h = hyp_series(&spec, Var("zeta"), order).compose(&zs);
    // lhs = (1 + 10v + 5v^2)^(1/3) H
    let base = series_from_ints(var, order, &[1, 10, 5]);
    let lhs = base.nth_root(3).mul(&h);
    // rhs = {1/2 + 5/3 v - 5/54 v^2 + (1/2) w}^(1/3),
    // w = sqrt((1+3v)(1 + 115/27 v + 25/27 v^2 + 25/27 v^3)), w(0) = 1
    let quartic = series_from_ints(var, order, &[1, 3]).mul(&Series::from_coeffs(
        var,
        pad(
            vec![Rat::one(), Rat::new(115, 27), Rat::new(25, 27), Rat::new(25, 27)],
            order + 1,
        ),
    ));
    let w = quartic.nth_root(2);
    let inner = Series::from_coeffs(
        var,
        pad(vec![Rat::new(1, 2), Rat::new(5, 3), Rat::new(-5, 54)], order + 1),
    )
    .add(&w.scale(&Rat::new(1, 2)));
    let rhs = inner.nth_root(3);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec!["w(0) = 1, principal cube root".into()] })
}

/// The intermediate quadratic satisfied by the cube of the 4F3 above:
/// X^2 - (27+90v-5v^2)/(27(1+10v+5v^2)) X - 4v(3+5v)^3/(729(1+10v+5v^2)^2) = 0.
pub fn thm812_quadratic(order: usize) -> Result<Built<Rat>, CoreError> {
    let var = Var("v");
    let map = belyi_catalog("zeta_23", None, None)?;
    let id = Series::<Rat>::identity(var, order);
    let zs = map.eval_series::<Rat>(&id);
    let spec = HypSpec::new(
        vec![
            Rat::new(-1, 15),
            Rat::new(2, 15),
            Rat::new(8, 15),
            Rat::new(11, 15),
        ],
        vec![Rat::new(1, 3), Rat::new(2, 3), Rat::new(5, 6)],
    );
    let h = hyp_series(&spec, Var("zeta"), order).compose(&zs);
    let x = h.pow_int(3);
    let b = RationalMap::new(
        UPoly::from_ints(&[27, 90, -5]),
        UPoly::from_ints(&[27, 270, 135]),
    )
    .eval_series::<Rat>(&id);
    // 4 v (3 + 5v)^3 = 108 v + 540 v^2 + 900 v^3 + 500 v^4
    let c = RationalMap::new(
        UPoly::from_ints(&[0, 108, 540, 900, 500]).scale(&Rat::new(1, 729)),
        UPoly::from_ints(&[1, 10, 5]).pow(2),
    )
    .eval_series::<Rat>(&id);
    let lhs = x.pow_int(2).sub(&b.mul(&x)).sub(&c);
    let rhs = Series::<Rat>::zero(var, order);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

/// The fourth-root radical identity on the degree-15 covering.
pub fn thm813(order: usize) -> Result<Built<Rat>, CoreError> {
    let var = Var("x");
    let map = belyi_catalog("zeta_14", None, None)?;
    let id = Series::<Rat>::identity(var, order);
    let zs = map.eval_series::<Rat>(&id);
    let spec = HypSpec::new(
        vec![
            Rat::new(-1, 20),
            Rat::new(3, 20),
            Rat::new(7, 20),
            Rat::new(11, 20),
        ],
        vec![Rat::new(1, 4), Rat::new(1, 2), Rat::new(3, 4)],
    );
    let h = hyp_series(&spec, Var("zeta"), order).compose(&zs);
    let lhs = series_from_ints(var, order, &[1, -1])
        .nth_root(4)
        .mul(&series_from_ints(var, order, &[1, 10, 5]).nth_root(4))
        .mul(&h);
    // rhs = {1/2 - 5/16 x - 5/8 x^2 - 5/16 x^3 + (1/2) [1 - 5/4 x - 5/2 x^2 - 5/4 x^3]^(1/2)}^(1/4)
    let w = Series::from_coeffs(
        var,
        pad(
            vec![Rat::one(), Rat::new(-5, 4), Rat::new(-5, 2), Rat::new(-5, 4)],
            order + 1,
        ),
    )
    .nth_root(2);
    let inner = Series::from_coeffs(
        var,
        pad(
            vec![Rat::new(1, 2), Rat::new(-5, 16), Rat::new(-5, 8), Rat::new(-5, 16)],
            order + 1,
        ),
    )
    .add(&w.scale(&Rat::new(1, 2)));
    let rhs = inner.nth_root(4);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec!["w(0) = 1, principal fourth root".into()] })
}

/// The relevant quadratic factor for the fourth power of the 4F3 above:
/// X^2 - (8-5x-10x^2-5x^3)/(8(1-x)(1+10x+5x^2)) X
///     + 25 x^2 (1+x)^4/(256 (1-x)^2 (1+10x+5x^2)^2) = 0.
pub fn thm813_quadratic(order: usize) -> Result<Built<Rat>, CoreError> {
    let var = Var("x");
    let map = belyi_catalog("zeta_14", None, None)?;
    let id = Series::<Rat>::identity(var, order);
    let zs = map.eval_series::<Rat>(&id);
    let spec = HypSpec::new(
        vec![
            Rat::new(-1, 20),
            Rat::new(3, 20),
            Rat::new(7, 20),
            Rat::new(11, 20),
        ],
        vec![Rat::new(1, 4), Rat::new(1, 2), Rat::new(3, 4)],
    );
    let h = hyp_series(&spec, Var("zeta"), order).compose(&zs);
    let x = h.pow_int(4);
    let b = RationalMap::new(
        UPoly::from_ints(&[8, -5, -10, -5]),
        UPoly::from_ints(&[1, -1]).mul(&UPoly::from_ints(&[1, 10, 5])).scale(&Rat::from_int(8)),
    )
    .eval_series::<Rat>(&id);
    let c = RationalMap::new(
        UPoly::from_ints(&[0, 0, 25]).mul(&UPoly::from_ints(&[1, 1]).pow(4)),
        UPoly::from_ints(&[1, -1])
            .pow(2)
            .mul(&UPoly::from_ints(&[1, 10, 5]).pow(2))
            .scale(&Rat::from_int(256)),
    )
    .eval_series::<Rat>(&id);
    let lhs = x.pow_int(2).sub(&b.mul(&x)).add(&c);
    let rhs = Series::<Rat>::zero(var, order);
    Ok(Built { lhs: c1(&lhs), rhs: c1(&rhs), branch_choices: vec![] })
}

fn series_from_ints(var: Var, order: usize, v: &[i64]) -> Series<Rat> {
    let mut c = vec![Rat::zero(); order + 1];
    for (i, k) in v.iter().enumerate() {
        if i <= order {
            c[i] = Rat::from_int(*k);
        }
    }
    Series::from_coeffs(var, c)
}
