//! Root families of the trinomial x^n - g x^p - beta = 0 and the
//! hypergeometric representation identities built from them.
//!
//! With n = p + q coprime, the equation has two natural series regimes:
//! near beta = 0 (g fixed, normalized to 1) the q large roots satisfy
//! x_j^q = y_j(beta) where y_j solves the standardized trinomial
//! y - 1 - z y^(-p/q) = 0 at z = eps_q^((j-1)n) beta; near g = 0 (beta
//! normalized to 1) all n roots satisfy x_j^n = y_j(g) with exponent p/n at
//! z = eps_n^((j-1)q) g.  Fractional powers of the roots are realized as
//! parametric powers of the unit-constant-term series y_j, so every branch
//! choice is fixed by y_j(0) = 1 and the identities become exact statements
//! in Q(a)[eps][[beta]] or Q(a)[eps][[g]].
//!
//! The identity builders return both sides with fractional constants
//! multiplied through (only integer powers of the expansion variable
//! remain), which is what makes exact verification possible.

use crate::cyclo::Cyclo;
use crate::hypergeom::{hyp_series, pochhammer, HypSpec};
use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::series::{solve_trinomial_std, Series, Var};
use crate::vandermonde::{g_kernel_at_series, kernel_rational};
use crate::CoreError;

pub const BETA: Var = Var("beta");
pub const GVAR: Var = Var("g");

/// Which expansion regime of the trinomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Regime {
    /// beta near 0, g = 1: q branches, conductor q, exponent B = -p/q.
    BetaNearZero,
    /// g near 0, beta = 1: n branches, conductor n, exponent B = p/n.
    GNearZero,
}

/// The canonical branch series y_j with x_j^q = y_j (resp. x_j^n = y_j).
pub struct RootFamily<R: Field> {
    pub p: u32,
    pub q: u32,
    pub regime: Regime,
    /// conductor of the root-of-unity ring (q or n)
    pub conductor: u32,
    /// exponent B of the standardized trinomial
    pub exponent: Rat,
    /// y_j for j = 1..=count, coefficients in Q[eps]
    pub branches: Vec<Series<Cyclo<R>>>,
}

fn check_coprime(p: u32, q: u32) -> Result<(), CoreError> {
    if crate::num::gcd_u(p as u64, q as u64) != 1 {
        return Err(CoreError::Constraint(format!(
            "p = {p} and q = {q} must be coprime"
        )));
    }
    Ok(())
}

/// Root family near beta = 0 with g = 1: for j = 1..q,
/// y_j(beta) = Y(eps_q^((j-1)n) beta) where Y solves y - 1 - z y^(-p/q) = 0.
pub fn roots_near_beta0<R: Field>(p: u32, q: u32, order: usize) -> Result<RootFamily<R>, CoreError> {
    check_coprime(p, q)?;
    let n = p + q;
    let b = Rat::new(-(p as i64), q as i64);
    let base = solve_trinomial_std(&Cyclo::<R>::from_rat(&b), BETA, order);
    let branches = (0..q)
        .map(|j| {
            let eps = Cyclo::<R>::omega_pow(q, (j as i64) * (n as i64));
            base.twist(&eps)
        })
        .collect();
    Ok(RootFamily { p, q, regime: Regime::BetaNearZero, conductor: q, exponent: b, branches })
}

/// Root family near g = 0 with beta = 1: for j = 1..n,
/// y_j(g) = Y(eps_n^((j-1)q) g) where Y solves y - 1 - z y^(p/n) = 0.
pub fn roots_near_g0<R: Field>(p: u32, q: u32, order: usize) -> Result<RootFamily<R>, CoreError> {
    check_coprime(p, q)?;
    let n = p + q;
    let b = Rat::new(p as i64, n as i64);
    let base = solve_trinomial_std(&Cyclo::<R>::from_rat(&b), GVAR, order);
    let branches = (0..n)
        .map(|j| {
            let eps = Cyclo::<R>::omega_pow(n, (j as i64) * (q as i64));
            base.twist(&eps)
        })
        .collect();
    Ok(RootFamily { p, q, regime: Regime::GNearZero, conductor: n, exponent: b, branches })
}

impl<R: Field> RootFamily<R> {
    /// The actual root series x_j = eps^(-(j-1)) * y_j^(1/m) where m is the
    /// root power (q or n).
    pub fn root_series(&self, j: usize) -> Series<Cyclo<R>> {
        let m = match self.regime {
            Regime::BetaNearZero => self.q,
            Regime::GNearZero => self.p + self.q,
        };
        let eps_inv = Cyclo::<R>::omega_pow(self.conductor, -(j as i64 - 1));
        self.branches[j - 1].nth_root(m).scale(&eps_inv)
    }
}

/// zeta = (-1)^q n^n / (p^p q^q) * beta^q / g^n; this is the constant in
/// front of beta^q when g = 1.
pub fn zeta_constant(p: u32, q: u32) -> Rat {
    let n = (p + q) as i64;
    let mut c = Rat::from_int(n).pow_i(n)
        / (Rat::from_int(p as i64).pow_i(p as i64) * Rat::from_int(q as i64).pow_i(q as i64));
    if q % 2 == 1 {
        c = -c;
    }
    c
}

/// Substitute zeta = c * x^m into a series in zeta: coefficient k lands on
/// x^(m k) scaled by c^k.
fn compose_power<R: Field>(f: &Series<R>, c: &R, m: u32, var: Var, order: usize) -> Series<R> {
    let mut out = Series::<R>::zero(var, order);
    let mut pw = R::one();
    for k in 0..=f.order() {
        let idx = k * m as usize;
        if idx > order {
            break;
        }
        out.c[idx] = f.c[k].mul(&pw);
        pw = pw.mul(c);
    }
    out
}

fn embed_series<R: Field>(f: &Series<R>, m: u32) -> Series<Cyclo<R>> {
    f.map(|x| Cyclo::from_scalar(m, x.clone()))
}

/// Screen a numeric lower-parameter list (symbolic entries pass).
fn screen_lower<R: Field>(lower: &[R]) -> Result<(), CoreError> {
    for b in lower {
        if let Some(r) = b.as_rat() {
            if r.is_nonpositive_integer() {
                return Err(CoreError::Constraint(format!(
                    "lower parameter {r} is a non-positive integer"
                )));
            }
        }
    }
    Ok(())
}

fn rr<R: Field>(x: &Rat) -> R {
    R::from_rat(x)
}

/// Hypergeometric parameters of the inverse representation (part i):
/// upper (a+i)/n + kappa/q; lower (a-l+i)/p + kappa/q (i=1..p) and the
/// kappa-shifted fractions i/q + kappa/q with i = q - kappa omitted.
fn inv_spec_i<R: Field>(p: u32, q: u32, ell: i64, kappa: u32, a: &R) -> HypSpec<R> {
    let n = p + q;
    let kq = Rat::new(kappa as i64, q as i64);
    let upper = (0..n)
        .map(|i| {
            a.add(&rr::<R>(&Rat::from_int(i as i64)))
                .mul(&rr::<R>(&Rat::new(1, n as i64)))
                .add(&rr::<R>(&kq))
        })
        .collect();
    let mut lower = Vec::new();
    for i in 1..=p {
        lower.push(
            a.sub(&rr::<R>(&Rat::from_int(ell)))
                .add(&rr::<R>(&Rat::from_int(i as i64)))
                .mul(&rr::<R>(&Rat::new(1, p as i64)))
                .add(&rr::<R>(&kq)),
        );
    }
    for i in 1..=q {
        if i == q - kappa {
            continue;
        }
        lower.push(rr::<R>(&(&Rat::new(i as i64, q as i64) + &kq)));
    }
    HypSpec::new(upper, lower)
}

/// Part ii analog: upper (-a+l+i)/p + kappa/n (i=0..p-1) and (a+i)/q +
/// kappa/n (i=0..q-1); lower i/n + kappa/n with i = n - kappa omitted.
fn inv_spec_ii<R: Field>(p: u32, q: u32, ell: i64, kappa: u32, a: &R) -> HypSpec<R> {
    let n = p + q;
    let kn = Rat::new(kappa as i64, n as i64);
    let mut upper = Vec::new();
    for i in 0..p {
        upper.push(
            a.neg()
                .add(&rr::<R>(&Rat::from_int(ell + i as i64)))
                .mul(&rr::<R>(&Rat::new(1, p as i64)))
                .add(&rr::<R>(&kn)),
        );
    }
    for i in 0..q {
        upper.push(
            a.add(&rr::<R>(&Rat::from_int(i as i64)))
                .mul(&rr::<R>(&Rat::new(1, q as i64)))
                .add(&rr::<R>(&kn)),
        );
    }
    let mut lower = Vec::new();
    for i in 1..=n {
        if i == n - kappa {
            continue;
        }
        lower.push(rr::<R>(&(&Rat::new(i as i64, n as i64) + &kn)));
    }
    HypSpec::new(upper, lower)
}

/// The algebraic-side summand for branch j: y_j^(-a) * F_l(-a, B; y_j).
fn algebraic_term<R: Field>(
    ell: i64,
    a: &R,
    b: &Rat,
    y: &Series<Cyclo<R>>,
) -> Series<Cyclo<R>> {
    let kernel = kernel_rational(ell);
    let a_c = Cyclo::from_scalar(y.c[0].m, a.clone());
    let b_c = Cyclo::<R>::from_rat(b);
    let pw = y.pow_param(&a_c.neg());
    pw.mul(&kernel.eval_series_at(&a_c, &b_c, y))
}

/// Both sides of the inverse representation: the kappa-indexed
/// hypergeometric series against the eps-weighted average of exponentiated
/// root branches.
///
/// Part i (expansion in beta, g = 1):
///   lhs = beta^kappa * nF(n-1)(...; zeta(beta)),
///   rhs = pref * q^(-1) sum_j eps_q^(-n(j-1)kappa) y_j^(-a) F_l(-a,-p/q; y_j),
///   pref = (-1)^kappa (1)_kappa (a + n kappa/q)_(1-l-kappa) / (a)_(1-l).
/// Part ii replaces (q, beta, -p/q) by (n, g, p/n) and the weight by
/// eps_n^(-q(j-1)kappa).
pub fn inverse_rep_sides<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    kappa: u32,
    regime: Regime,
    a: &R,
    order: usize,
) -> Result<(Series<Cyclo<R>>, Series<Cyclo<R>>), CoreError> {
    check_coprime(p, q)?;
    let n = p + q;
    match regime {
        Regime::BetaNearZero => {
            if kappa >= q {
                return Err(CoreError::Constraint(format!("kappa {kappa} out of range (q={q})")));
            }
            let spec = inv_spec_i(p, q, ell, kappa, a);
            screen_lower(&spec.lower)?;
            let fam = roots_near_beta0::<R>(p, q, order)?;
            // lhs: hyp(zeta) with zeta = C beta^q, shifted by beta^kappa
            let hyp = hyp_series(&spec, BETA, order / q as usize + 1);
            let zc = rr::<R>(&zeta_constant(p, q));
            let lhs = compose_power(&hyp, &zc, q, BETA, order).shift_up(kappa as usize);
            // rhs
            let mut sum = Series::<Cyclo<R>>::zero(BETA, order);
            for (j, y) in fam.branches.iter().enumerate() {
                let w = Cyclo::<R>::omega_pow(q, -((n as i64) * (j as i64) * (kappa as i64)));
                sum = sum.add(&algebraic_term(ell, a, &fam.exponent, y).scale(&w));
            }
            let mut pref = pochhammer(&R::one(), kappa as i64).mul(&pochhammer(
                &a.add(&rr::<R>(&Rat::new((n * kappa) as i64, q as i64))),
                1 - ell - kappa as i64,
            ));
            pref = pref.div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            pref = pref.mul(&rr::<R>(&Rat::new(1, q as i64)));
            let rhs = sum.scale(&Cyclo::from_scalar(q, pref));
            Ok((embed_series(&lhs, q), rhs))
        }
        Regime::GNearZero => {
            if kappa >= n {
                return Err(CoreError::Constraint(format!("kappa {kappa} out of range (n={n})")));
            }
            let spec = inv_spec_ii(p, q, ell, kappa, a);
            screen_lower(&spec.lower)?;
            let fam = roots_near_g0::<R>(p, q, order)?;
            // lhs: hyp(zeta^(-1)) with zeta^(-1) = C' g^n, shifted by g^kappa
            let hyp = hyp_series(&spec, GVAR, order / n as usize + 1);
            let zc = rr::<R>(&zeta_constant(p, q).recip());
            let lhs = compose_power(&hyp, &zc, n, GVAR, order).shift_up(kappa as usize);
            let mut sum = Series::<Cyclo<R>>::zero(GVAR, order);
            for (j, y) in fam.branches.iter().enumerate() {
                let w = Cyclo::<R>::omega_pow(n, -((q as i64) * (j as i64) * (kappa as i64)));
                sum = sum.add(&algebraic_term(ell, a, &fam.exponent, y).scale(&w));
            }
            let mut pref = pochhammer(&R::one(), kappa as i64).mul(&pochhammer(
                &a.add(&rr::<R>(&Rat::new((q * kappa) as i64, n as i64))),
                1 - ell - kappa as i64,
            ));
            pref = pref.div(&pochhammer(a, 1 - ell));
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            pref = pref.mul(&rr::<R>(&Rat::new(1, n as i64)));
            let rhs = sum.scale(&Cyclo::from_scalar(n, pref));
            Ok((embed_series(&lhs, n), rhs))
        }
    }
}

/// Both sides of the forward representation for a single branch j (1-based):
/// lhs = y_j^(-a) F_l(-a, B; y_j); rhs is the kappa-sum of hypergeometric
/// series with reciprocal prefactors and weights eps^(+(j-1)kappa ...).
pub fn forward_rep_sides<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    j: u32,
    regime: Regime,
    a: &R,
    order: usize,
) -> Result<(Series<Cyclo<R>>, Series<Cyclo<R>>), CoreError> {
    check_coprime(p, q)?;
    let n = p + q;
    let (count, conductor, weight_base, var) = match regime {
        Regime::BetaNearZero => (q, q, n, BETA),
        Regime::GNearZero => (n, n, q, GVAR),
    };
    if j < 1 || j > count {
        return Err(CoreError::Constraint(format!("branch j={j} out of range")));
    }
    let fam = match regime {
        Regime::BetaNearZero => roots_near_beta0::<R>(p, q, order)?,
        Regime::GNearZero => roots_near_g0::<R>(p, q, order)?,
    };
    let lhs = algebraic_term(ell, a, &fam.exponent, &fam.branches[(j - 1) as usize]);
    let mut rhs = Series::<Cyclo<R>>::zero(var, order);
    for kappa in 0..count {
        let spec = match regime {
            Regime::BetaNearZero => inv_spec_i(p, q, ell, kappa, a),
            Regime::GNearZero => inv_spec_ii(p, q, ell, kappa, a),
        };
        screen_lower(&spec.lower)?;
        let hyp = hyp_series(&spec, var, order / count as usize + 1);
        let zc = match regime {
            Regime::BetaNearZero => rr::<R>(&zeta_constant(p, q)),
            Regime::GNearZero => rr::<R>(&zeta_constant(p, q).recip()),
        };
        let shifted = compose_power(&hyp, &zc, count, var, order).shift_up(kappa as usize);
        // reciprocal prefactor (-1)^kappa (a)_(1-l) / [(a+ w kappa / m)_(1-l-kappa) (1)_kappa]
        let ratio = Rat::new((weight_base * kappa) as i64, count as i64);
        let mut pref = pochhammer(a, 1 - ell);
        pref = pref.div(&pochhammer(&a.add(&rr::<R>(&ratio)), 1 - ell - kappa as i64));
        pref = pref.div(&pochhammer(&R::one(), kappa as i64));
        if kappa % 2 == 1 {
            pref = pref.neg();
        }
        let w = Cyclo::<R>::omega_pow(
            conductor,
            (weight_base as i64) * ((j - 1) as i64) * (kappa as i64),
        );
        rhs = rhs.add(&embed_series(&shifted.scale(&pref), conductor).scale(&w));
    }
    Ok((lhs, rhs))
}

/// Both sides of the C-interpolated inverse representation ((n+1)F(n)
/// against G_l kernels), l = 0 or 1.
///
/// Part i upper: (a+i)/n + kappa/q (i=0..n-1) and (a+c-l)/p + kappa/q;
/// lower: (a-l+i)/p + kappa/q (i=0..p-1), the hat list, (a+c-l+p)/p + kappa/q.
pub fn interp_rep_sides<R: Field>(
    p: u32,
    q: u32,
    ell: u8,
    kappa: u32,
    regime: Regime,
    a: &R,
    c: &R,
    order: usize,
) -> Result<(Series<Cyclo<R>>, Series<Cyclo<R>>), CoreError> {
    check_coprime(p, q)?;
    if ell > 1 {
        return Err(CoreError::Constraint("interpolated representation needs l in {0,1}".into()));
    }
    let n = p + q;
    let elli = ell as i64;
    match regime {
        Regime::BetaNearZero => {
            if kappa >= q {
                return Err(CoreError::Constraint(format!("kappa {kappa} out of range (q={q})")));
            }
            let kq = Rat::new(kappa as i64, q as i64);
            let base = inv_spec_i(p, q, elli, kappa, a);
            let mut upper = base.upper.clone();
            upper.push(
                a.add(c)
                    .sub(&rr::<R>(&Rat::from_int(elli)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64)))
                    .add(&rr::<R>(&kq)),
            );
            // lower p-block shifts down by one: (a-l+i)/p for i=0..p-1
            let mut lower = Vec::new();
            for i in 0..p {
                lower.push(
                    a.sub(&rr::<R>(&Rat::from_int(elli)))
                        .add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                        .add(&rr::<R>(&kq)),
                );
            }
            for i in 1..=q {
                if i == q - kappa {
                    continue;
                }
                lower.push(rr::<R>(&(&Rat::new(i as i64, q as i64) + &kq)));
            }
            lower.push(
                a.add(c)
                    .sub(&rr::<R>(&Rat::from_int(elli)))
                    .add(&rr::<R>(&Rat::from_int(p as i64)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64)))
                    .add(&rr::<R>(&kq)),
            );
            let spec = HypSpec::new(upper, lower);
            screen_lower(&spec.lower)?;
            let fam = roots_near_beta0::<R>(p, q, order)?;
            let hyp = hyp_series(&spec, BETA, order / q as usize + 1);
            let zc = rr::<R>(&zeta_constant(p, q));
            let lhs = compose_power(&hyp, &zc, q, BETA, order).shift_up(kappa as usize);
            let mut sum = Series::<Cyclo<R>>::zero(BETA, order);
            let a_c = Cyclo::from_scalar(q, a.clone());
            let b_c = Cyclo::<R>::from_rat(&fam.exponent);
            let c_c = Cyclo::from_scalar(q, c.clone());
            for (j, y) in fam.branches.iter().enumerate() {
                let w = Cyclo::<R>::omega_pow(q, -((n as i64) * (j as i64) * (kappa as i64)));
                let g_at = g_kernel_at_series(ell, &a_c.neg(), &b_c, &c_c.neg(), y);
                let term = y.pow_param(&a_c.neg()).mul(&g_at);
                sum = sum.add(&term.scale(&w));
            }
            // pref = (-1)^k (1)_k (a+nk/q)_(-l-k) (a+c-l+pk/q) / [(a)_(-l) (a+c-l)]
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(elli)));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new((n * kappa) as i64, q as i64))),
                    -elli - kappa as i64,
                ))
                .mul(&acl.add(&rr::<R>(&Rat::new((p * kappa) as i64, q as i64))));
            pref = pref.div(&pochhammer(a, -elli)).div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            pref = pref.mul(&rr::<R>(&Rat::new(1, q as i64)));
            let rhs = sum.scale(&Cyclo::from_scalar(q, pref));
            Ok((embed_series(&lhs, q), rhs))
        }
        Regime::GNearZero => {
            if kappa >= n {
                return Err(CoreError::Constraint(format!("kappa {kappa} out of range (n={n})")));
            }
            let kn = Rat::new(kappa as i64, n as i64);
            let mut upper = Vec::new();
            for i in 0..p {
                upper.push(
                    a.neg()
                        .add(&rr::<R>(&Rat::from_int(elli + 1 + i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, p as i64)))
                        .add(&rr::<R>(&kn)),
                );
            }
            for i in 0..q {
                upper.push(
                    a.add(&rr::<R>(&Rat::from_int(i as i64)))
                        .mul(&rr::<R>(&Rat::new(1, q as i64)))
                        .add(&rr::<R>(&kn)),
                );
            }
            let acl_neg = a.neg().sub(c).add(&rr::<R>(&Rat::from_int(elli)));
            upper.push(acl_neg.mul(&rr::<R>(&Rat::new(1, p as i64))).add(&rr::<R>(&kn)));
            let mut lower = Vec::new();
            for i in 1..=n {
                if i == n - kappa {
                    continue;
                }
                lower.push(rr::<R>(&(&Rat::new(i as i64, n as i64) + &kn)));
            }
            lower.push(
                acl_neg
                    .add(&rr::<R>(&Rat::from_int(p as i64)))
                    .mul(&rr::<R>(&Rat::new(1, p as i64)))
                    .add(&rr::<R>(&kn)),
            );
            let spec = HypSpec::new(upper, lower);
            screen_lower(&spec.lower)?;
            let fam = roots_near_g0::<R>(p, q, order)?;
            let hyp = hyp_series(&spec, GVAR, order / n as usize + 1);
            let zc = rr::<R>(&zeta_constant(p, q).recip());
            let lhs = compose_power(&hyp, &zc, n, GVAR, order).shift_up(kappa as usize);
            let mut sum = Series::<Cyclo<R>>::zero(GVAR, order);
            let a_c = Cyclo::from_scalar(n, a.clone());
            let b_c = Cyclo::<R>::from_rat(&fam.exponent);
            let c_c = Cyclo::from_scalar(n, c.clone());
            for (j, y) in fam.branches.iter().enumerate() {
                let w = Cyclo::<R>::omega_pow(n, -((q as i64) * (j as i64) * (kappa as i64)));
                let g_at = g_kernel_at_series(ell, &a_c.neg(), &b_c, &c_c.neg(), y);
                let term = y.pow_param(&a_c.neg()).mul(&g_at);
                sum = sum.add(&term.scale(&w));
            }
            let acl = a.add(c).sub(&rr::<R>(&Rat::from_int(elli)));
            let mut pref = pochhammer(&R::one(), kappa as i64)
                .mul(&pochhammer(
                    &a.add(&rr::<R>(&Rat::new((q * kappa) as i64, n as i64))),
                    -elli - kappa as i64,
                ))
                .mul(&acl.sub(&rr::<R>(&Rat::new((p * kappa) as i64, n as i64))));
            pref = pref.div(&pochhammer(a, -elli)).div(&acl);
            if kappa % 2 == 1 {
                pref = pref.neg();
            }
            pref = pref.mul(&rr::<R>(&Rat::new(1, n as i64)));
            let rhs = sum.scale(&Cyclo::from_scalar(n, pref));
            Ok((embed_series(&lhs, n), rhs))
        }
    }
}

/// Both sides of the base ladder identity along a single branch j:
/// lhs = y_j^(A) F_l(A, B; y_j) with A = gamma/q (resp. gamma/n), B = -p/q
/// (resp. p/n); rhs = the explicit binomial series in the twisted variable.
pub fn branch_ladder_sides<R: Field>(
    p: u32,
    q: u32,
    ell: i64,
    j: u32,
    regime: Regime,
    gamma: &R,
    order: usize,
) -> Result<(Series<Cyclo<R>>, Series<Cyclo<R>>), CoreError> {
    check_coprime(p, q)?;
    let n = p + q;
    let (count, conductor, weight_base) = match regime {
        Regime::BetaNearZero => (q, q, n),
        Regime::GNearZero => (n, n, q),
    };
    if j < 1 || j > count {
        return Err(CoreError::Constraint(format!("branch j={j} out of range")));
    }
    let fam = match regime {
        Regime::BetaNearZero => roots_near_beta0::<R>(p, q, order)?,
        Regime::GNearZero => roots_near_g0::<R>(p, q, order)?,
    };
    let y = &fam.branches[(j - 1) as usize];
    let a_big = gamma.mul(&rr::<R>(&Rat::new(1, count as i64)));
    let a_c = Cyclo::from_scalar(conductor, a_big.clone());
    let b_c = Cyclo::<R>::from_rat(&fam.exponent);
    let kernel = kernel_rational(ell);
    let lhs = y.pow_param(&a_c).mul(&kernel.eval_series_at(&a_c, &b_c, y));
    // rhs: ladder series in the twisted variable z_j = eps^(weight_base (j-1)) var
    let rhs0 =
        crate::vandermonde::section3_rhs(ell, &a_big, &rr::<R>(&fam.exponent), y.var, order);
    let eps = Cyclo::<R>::omega_pow(conductor, (weight_base as i64) * ((j - 1) as i64));
    let rhs = embed_series(&rhs0, conductor).twist(&eps);
    Ok((lhs, rhs))
}

/// Every cyclotomic coordinate beyond the rational one must vanish
/// coefficientwise (the identities live over the base field).
pub fn eps_coordinates_vanish<R: Field>(f: &Series<Cyclo<R>>) -> bool {
    f.c.iter()
        .all(|c| c.coords.iter().skip(1).all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrat::{function_field, MRat};

    fn a_field() -> MRat {
        function_field(&["a"]).1[0].clone()
    }

    #[test]
    fn root_family_base_points() {
        // beta = 0: y_j = 1, so x_j = eps_q^(-(j-1))
        let fam = roots_near_beta0::<Rat>(2, 3, 6).unwrap();
        for j in 1..=3u32 {
            let x = fam.root_series(j as usize);
            let expect = Cyclo::<Rat>::omega_pow(3, -(j as i64 - 1));
            assert_eq!(x.c[0], expect);
        }
        // q = 1: single root, z_1 = beta, B = -p
        let fam = roots_near_beta0::<Rat>(3, 1, 6).unwrap();
        assert_eq!(fam.branches.len(), 1);
        assert_eq!(fam.exponent, Rat::from_int(-3));
        // g = 0 family: x_j = eps_n^(-(j-1))
        let fam = roots_near_g0::<Rat>(1, 2, 6).unwrap();
        for j in 1..=3u32 {
            let x = fam.root_series(j as usize);
            assert_eq!(x.c[0], Cyclo::<Rat>::omega_pow(3, -(j as i64 - 1)));
        }
        // p = q = 1 (n = 2): z_1 = g, z_2 = -g
        let fam = roots_near_g0::<Rat>(1, 1, 4).unwrap();
        assert_eq!(fam.branches[0].c[1], fam.branches[1].c[1].neg());
        // gcd(p, q) != 1 rejected
        assert!(roots_near_beta0::<Rat>(2, 4, 4).is_err());
    }

    #[test]
    fn conjugate_branch_symmetry() {
        // q = 2, p = 1: eps_2^n = -1, so y_2(beta) = y_1(-beta)
        let fam = roots_near_beta0::<Rat>(1, 2, 8).unwrap();
        for k in 0..=8usize {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                fam.branches[1].c[k],
                fam.branches[0].c[k].scale(&Rat::from_int(sign))
            );
        }
    }

    /// The defining residual: y_j - 1 - z_j y_j^B = 0 with z_j the twisted
    /// variable, through the full truncation order.
    #[test]
    fn root_defining_residual() {
        for (p, q) in [(1u32, 2u32), (2, 3), (3, 1)] {
            let order = 8;
            let fam = roots_near_beta0::<Rat>(p, q, order).unwrap();
            let n = p + q;
            let b = Cyclo::<Rat>::from_rat(&fam.exponent);
            for (j, y) in fam.branches.iter().enumerate() {
                let eps = Cyclo::<Rat>::omega_pow(q, (j as i64) * (n as i64));
                let z = Series::<Cyclo<Rat>>::identity(BETA, order).scale(&eps);
                let res = y
                    .sub(&Series::one(BETA, order))
                    .sub(&z.mul(&y.pow_param(&b)));
                assert!(res.is_zero(), "branch {j} residual, (p,q)=({p},{q})");
            }
        }
    }

    /// Elementary symmetric functions of all n root series reproduce the
    /// trinomial coefficients: sigma_l = 0 off {q, n}, sigma_q = (-1)^(q-1) g,
    /// sigma_n = (-1)^(n-1) beta (beta = 1 here).
    #[test]
    fn symmetric_functions_of_roots()  {
        for (p, q) in [(1u32, 2u32), (2, 3)] {
            let n = p + q;
            let order = 6;
            let fam = roots_near_g0::<Rat>(p, q, order).unwrap();
            let roots: Vec<Series<Cyclo<Rat>>> =
                (1..=n as usize).map(|j| fam.root_series(j)).collect();
            // sigma_i accumulated one root at a time:
            // new sigma_i = sigma_i + x * sigma_(i-1)
            let mut elementary: Vec<Series<Cyclo<Rat>>> =
                vec![Series::one(GVAR, order)];
            for x in &roots {
                let mut next = vec![Series::<Cyclo<Rat>>::zero(GVAR, order); elementary.len() + 1];
                for (i, e) in elementary.iter().enumerate() {
                    next[i] = next[i].add(e);
                    next[i + 1] = next[i + 1].add(&e.mul(x));
                }
                elementary = next;
            }
            let sigma = |l: u32| elementary[l as usize].clone();
            for l in 1..n {
                if l == q {
                    // sigma_q = (-1)^(q-1) g
                    let mut expect = Series::<Cyclo<Rat>>::identity(GVAR, order);
                    if q % 2 == 0 {
                        expect = expect.neg();
                    }
                    assert!(sigma(l).sub(&expect).is_zero(), "sigma_q, (p,q)=({p},{q})");
                } else {
                    assert!(sigma(l).is_zero(), "sigma_{l} must vanish, (p,q)=({p},{q})");
                }
            }
            let mut expect_n = Series::<Cyclo<Rat>>::one(GVAR, order);
            if n % 2 == 0 {
                expect_n = expect_n.neg();
            }
            assert!(sigma(n).sub(&expect_n).is_zero(), "sigma_n, (p,q)=({p},{q})");
        }
    }

    #[test]
    fn branch_ladder_identity() {
        let gamma = a_field();
        for (p, q, ell, j, regime) in [
            (1u32, 1u32, 0i64, 1u32, Regime::BetaNearZero),
            (1, 2, 0, 2, Regime::BetaNearZero),
            (1, 2, 1, 1, Regime::BetaNearZero),
            (2, 1, -1, 1, Regime::BetaNearZero),
            (1, 2, 0, 3, Regime::GNearZero),
            (2, 1, 2, 2, Regime::GNearZero),
        ] {
            let (lhs, rhs) =
                branch_ladder_sides(p, q, ell, j, regime, &gamma, 6).unwrap();
            assert!(
                lhs.sub(&rhs).is_zero(),
                "branch ladder fails: (p,q,l,j)=({p},{q},{ell},{j}) {regime:?}"
            );
        }
    }

    #[test]
    fn inverse_rep_small_cases() {
        let a = a_field();
        // (p,q) = (1,2), l = 0, both kappa values; parametric in a
        for kappa in 0..2u32 {
            let (lhs, rhs) =
                inverse_rep_sides(1, 2, 0, kappa, Regime::BetaNearZero, &a, 6).unwrap();
            let diff = lhs.sub(&rhs);
            assert!(
                eps_coordinates_vanish(&rhs),
                "eps coordinates must cancel, kappa={kappa}"
            );
            assert!(diff.is_zero(), "inverse rep fails at kappa={kappa}");
        }
        // kappa = 0 constant term is 1 on both sides
        let (lhs, rhs) =
            inverse_rep_sides(1, 2, 1, 0, Regime::BetaNearZero, &a, 4).unwrap();
        assert!(lhs.c[0].is_one());
        assert!(rhs.c[0].is_one());
        assert!(lhs.sub(&rhs).is_zero());
        // part ii spot check: (p,q) = (1,1), n = 2
        for kappa in 0..2u32 {
            let (lhs, rhs) =
                inverse_rep_sides(1, 1, 0, kappa, Regime::GNearZero, &a, 6).unwrap();
            assert!(lhs.sub(&rhs).is_zero(), "part ii fails at kappa={kappa}");
        }
    }

    #[test]
    fn forward_rep_small_cases() {
        let a = a_field();
        // q = 1: the kappa-sum has one term and reduces to the ladder
        let (lhs, rhs) =
            forward_rep_sides(1, 1, 0, 1, Regime::BetaNearZero, &a, 6).unwrap();
        assert!(lhs.sub(&rhs).is_zero());
        // (p,q) = (1,2), l = 0, both branches
        for j in 1..=2u32 {
            let (lhs, rhs) =
                forward_rep_sides(1, 2, 0, j, Regime::BetaNearZero, &a, 6).unwrap();
            assert!(lhs.sub(&rhs).is_zero(), "forward rep fails at j={j}");
        }
    }

    /// Reassembling the forward side from the inverse sides through the
    /// root-of-unity matrix: u_j = sum_kappa eps^(n(j-1)kappa) v_kappa.
    #[test]
    fn kappa_aggregate_inversion() {
        let a = a_field();
        for (p, q) in [(1u32, 2u32), (2, 1), (1, 3)] {
            let n = p + q;
            let order = 6;
            let ell = 0i64;
            // v_kappa: the eps-weighted averages (rhs of the inverse rep,
            // without the rational prefactor)
            let fam = roots_near_beta0::<MRat>(p, q, order).unwrap();
            let terms: Vec<Series<Cyclo<MRat>>> = fam
                .branches
                .iter()
                .map(|y| algebraic_term(ell, &a, &fam.exponent, y))
                .collect();
            let v: Vec<Series<Cyclo<MRat>>> = (0..q)
                .map(|kappa| {
                    let mut s = Series::<Cyclo<MRat>>::zero(BETA, order);
                    for (j, t) in terms.iter().enumerate() {
                        let w = Cyclo::<MRat>::omega_pow(
                            q,
                            -((n as i64) * (j as i64) * (kappa as i64)),
                        );
                        s = s.add(&t.scale(&w));
                    }
                    s.scale(&Cyclo::from_scalar(q, MRat::from_rat(&Rat::new(1, q as i64))))
                })
                .collect();
            for (j, t) in terms.iter().enumerate() {
                let mut back = Series::<Cyclo<MRat>>::zero(BETA, order);
                for (kappa, vk) in v.iter().enumerate() {
                    let w = Cyclo::<MRat>::omega_pow(
                        q,
                        (n as i64) * (j as i64) * (kappa as i64),
                    );
                    back = back.add(&vk.scale(&w));
                }
                assert!(
                    back.sub(t).is_zero(),
                    "matrix inversion round trip fails at j={j}, (p,q)=({p},{q})"
                );
            }
        }
    }

    #[test]
    fn interp_rep_reduces_at_c_zero() {
        let a = a_field();
        let c0 = MRat::zero();
        // c = 0 must coefficientwise reproduce the plain inverse rep
        for (p, q, ell, kappa) in [(1u32, 2u32, 0u8, 0u32), (1, 2, 1, 1), (2, 1, 0, 0)] {
            let (il, ir) =
                interp_rep_sides(p, q, ell, kappa, Regime::BetaNearZero, &a, &c0, 6).unwrap();
            let (pl, pr) =
                inverse_rep_sides(p, q, ell as i64, kappa, Regime::BetaNearZero, &a, 6).unwrap();
            assert!(il.sub(&pl).is_zero(), "lhs c=0 reduction (p={p},q={q},l={ell},k={kappa})");
            assert!(ir.sub(&pr).is_zero(), "rhs c=0 reduction (p={p},q={q},l={ell},k={kappa})");
            assert!(il.sub(&ir).is_zero());
        }
    }

    #[test]
    fn interp_rep_parametric_two_params() {
        let (_, gens) = function_field(&["a", "c"]);
        let (a, c) = (&gens[0], &gens[1]);
        for (kappa, regime) in [(0u32, Regime::BetaNearZero), (1, Regime::BetaNearZero)] {
            let (lhs, rhs) = interp_rep_sides(1, 2, 0, kappa, regime, a, c, 5).unwrap();
            assert!(
                lhs.sub(&rhs).is_zero(),
                "interp rep fails at kappa={kappa} {regime:?}"
            );
        }
        // part ii, n = 2
        let (lhs, rhs) =
            interp_rep_sides(1, 1, 1, 0, Regime::GNearZero, a, c, 5).unwrap();
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn numeric_screen_rejects_degenerate_a() {
        // a = 1 with q = 1, l = 0 forces a lower parameter (a-l+p)/p + 0 to
        // hit a non-positive integer for suitable p? use a = -3, p = 1, q = 2:
        // lower contains (a - 0 + 1)/1 = -2
        let a = Rat::from_int(-3);
        let r = inverse_rep_sides(1, 2, 0, 0, Regime::BetaNearZero, &a, 4);
        assert!(r.is_err());
        // generic rational a passes
        let a = Rat::new(1, 7);
        let r = inverse_rep_sides(1, 2, 0, 0, Regime::BetaNearZero, &a, 4);
        assert!(r.is_ok());
        let (l, rr) = r.unwrap();
        assert!(l.sub(&rr).is_zero());
    }
}
