//! The (A,B) Vandermonde convolution transform and its kernel functions.
//!
//! The transform sends a sequence f(k) to
//!
//!   fhat(n) = sum_k (-1)^k binom(n,k) binom(A+Bk, n) f(k),
//!
//! and converts power series sum_k binom(A+Bk,k) f(k) z^k into series in
//! v = (1-y)/y, where y solves the standardized trinomial y - 1 - z y^B = 0.
//! For the normalized sequences f_l(A,B;k) = (A+Bk+1)_(l-1)/(A+1)_(l-1) the
//! transform has closed forms, and the resulting identity
//!
//!   y^A F_l(A,B; y) = 1 + sum_(k>=1) f_l(A,B;k) binom(A+Bk,k) z^k
//!
//! holds with F_l a rational function of y.  F_0 = 1 and F_1 = y/((1-B)y+B)
//! recover the classical Lambert and Polya ladder steps; the module
//! generates every F_l exactly, along with the C-parametrized interpolating
//! kernels G_0, G_1 that bridge consecutive rungs.

use std::sync::Arc;

use crate::hypergeom::{binom_ext, hyp_series, pochhammer, HypSpec};
use crate::mpoly::{MPoly, Vars};
use crate::mrat::MRat;
use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::series::{solve_trinomial_std, Series, Var};
use crate::upoly::UPoly;

/// Clear the MRat denominators of a y-polynomial: returns `(P, L)` with
/// `P in Q[A,B,y]`, `L in Q[A,B]`, and `poly = P / L`.
fn clear_denoms(p: &UPoly<MRat>, vars3: &Arc<Vars>) -> (MPoly, MPoly) {
    let vars2 = Vars::new(&["A", "B"]);
    let mut l = MPoly::one(vars2.clone());
    for c in &p.c {
        let d = c.den.lift_to(vars2.clone());
        let g = l.gcd(&d);
        l = l.mul(&d.div_exact(&g).unwrap());
    }
    let y = MPoly::var(vars3.clone(), "y");
    let mut acc = MPoly::zero(vars3.clone());
    let mut pw = MPoly::one(vars3.clone());
    for c in &p.c {
        let den = c.den.lift_to(vars2.clone());
        let factor = l.div_exact(&den).unwrap();
        let term = c
            .num
            .lift_to(vars2.clone())
            .mul(&factor)
            .lift_to(vars3.clone());
        acc = acc.add(&term.mul(&pw));
        pw = pw.mul(&y);
    }
    (acc, l)
}

/// Canonical two-parameter coefficient field Q(A,B) for kernel generation.
pub fn ab_field() -> (Arc<Vars>, MRat, MRat) {
    let vars = Vars::new(&["A", "B"]);
    let a = MRat::var(vars.clone(), "A");
    let b = MRat::var(vars.clone(), "B");
    (vars, a, b)
}

/// Canonical three-parameter field Q(A,B,C).
pub fn abc_field() -> (Arc<Vars>, MRat, MRat, MRat) {
    let vars = Vars::new(&["A", "B", "C"]);
    let a = MRat::var(vars.clone(), "A");
    let b = MRat::var(vars.clone(), "B");
    let c = MRat::var(vars.clone(), "C");
    (vars, a, b, c)
}

/// n-th forward finite difference with step B acting on functions of A:
/// sum_k (-1)^(n-k) binom(n,k) h(A + kB).
pub fn fin_diff_pow<R: Field>(h: impl Fn(&R) -> R, a: &R, b: &R, n: u32) -> R {
    let mut acc = R::zero();
    for k in 0..=n {
        let arg = a.add(&b.mul(&R::from_i64(k as i64)));
        let mut term = h(&arg);
        let bin = Rat::from_bigint(crate::num::binom_u(n as u64, k as u64));
        term = term.mul(&R::from_rat(&bin));
        if (n - k) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

/// The normalized sequence f_l(A,B;k) = (A+Bk+1)_(l-1) / (A+1)_(l-1).
pub fn f_ell_seq<R: Field>(ell: i64, a: &R, b: &R, k: u32) -> R {
    let abk1 = a.add(&b.mul(&R::from_i64(k as i64))).add(&R::one());
    pochhammer(&abk1, ell - 1).div(&pochhammer(&a.add(&R::one()), ell - 1))
}

/// Its C-parametrized extension g_l(A,B,C;k) = (A+C+l)/(A+C+Bk+l) * f_(l+1)(A,B;k).
pub fn g_ell_seq<R: Field>(ell: i64, a: &R, b: &R, c: &R, k: u32) -> R {
    let acl = a.add(c).add(&R::from_i64(ell));
    let den = acl.add(&b.mul(&R::from_i64(k as i64)));
    acl.div(&den).mul(&f_ell_seq(ell + 1, a, b, k))
}

/// Transformed sequence value fhat_l(A,B;n) from the finite-difference
/// representation (-1)^n / (n! (A+1)_(l-1)) * Delta^n[(X-n+1)_(n+l-1)](A).
pub fn hatf_ell<R: Field>(ell: i64, a: &R, b: &R, n: u32) -> R {
    let shift = R::from_i64(n as i64 - 1);
    let d = fin_diff_pow(
        |x: &R| pochhammer(&x.sub(&shift), n as i64 + ell - 1),
        a,
        b,
        n,
    );
    let mut pref = R::from_rat(&Rat::from_bigint(crate::num::factorial(n as u64)))
        .mul(&pochhammer(&a.add(&R::one()), ell - 1))
        .inv();
    if n % 2 == 1 {
        pref = pref.neg();
    }
    pref.mul(&d)
}

/// Transformed sequence ghat_0(A,B,C;n) = (-1)^n (C)_n / ((A+C)/B + 1)_n.
pub fn hatg0<R: Field>(a: &R, b: &R, c: &R, n: u32) -> R {
    let num = pochhammer(c, n as i64);
    let den = pochhammer(&a.add(c).div(b).add(&R::one()), n as i64);
    let mut v = num.div(&den);
    if n % 2 == 1 {
        v = v.neg();
    }
    v
}

/// Right-hand side of the two-term recurrence defining ghat_1:
/// (-1)^n (C)_n ((A+1)/(B-1) + 1)_n / [((A+C+1)/B + 1)_n ((A+1)/(B-1))_n].
pub fn hatg1_rhs<R: Field>(a: &R, b: &R, c: &R, n: u32) -> R {
    let x = a.add(&R::one()).div(&b.sub(&R::one()));
    let num = pochhammer(c, n as i64).mul(&pochhammer(&x.add(&R::one()), n as i64));
    let den = pochhammer(&a.add(c).add(&R::one()).div(b).add(&R::one()), n as i64)
        .mul(&pochhammer(&x, n as i64));
    let mut v = num.div(&den);
    if n % 2 == 1 {
        v = v.neg();
    }
    v
}

/// ghat_1(A,B,C;n) generated from the recurrence
/// ghat_1(n) = rhs(n) - B * ghat_1(n-1), seeded by ghat_1(0) = 1
/// (a transform preserves f(0) = 1).
pub fn hatg1<R: Field>(a: &R, b: &R, c: &R, n: u32) -> R {
    let mut cur = R::one();
    for i in 1..=n {
        cur = hatg1_rhs(a, b, c, i).sub(&b.mul(&cur));
    }
    cur
}

/// The (A,B)-Vandermonde convolution transform of an arbitrary sequence:
/// fhat(n) = sum_(k=0..n) (-1)^k binom(n,k) binom(A+Bk, n) f(k).
pub fn vandermonde_transform<R: Field>(
    f: impl Fn(u32) -> R,
    a: &R,
    b: &R,
    n_max: u32,
) -> Vec<R> {
    (0..=n_max)
        .map(|n| {
            let mut acc = R::zero();
            for k in 0..=n {
                let bin = Rat::from_bigint(crate::num::binom_u(n as u64, k as u64));
                let abk = a.add(&b.mul(&R::from_i64(k as i64)));
                let mut term = R::from_rat(&bin)
                    .mul(&binom_ext(&abk, n))
                    .mul(&f(k));
                if k % 2 == 1 {
                    term = term.neg();
                }
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

/// Rational function of y with coefficients in Q(A,B): the kernel that
/// multiplies y^A on the algebraic side of a ladder identity.
#[derive(Clone, Debug)]
pub struct KernelRat {
    pub num: UPoly<MRat>,
    pub den: UPoly<MRat>,
}

impl KernelRat {
    pub fn one() -> Self {
        KernelRat { num: UPoly::one(), den: UPoly::one() }
    }

    /// Cancel common factors fraction-free: both polynomials are cleared
    /// into Q[A,B,y] and reduced by their multivariate gcd there.  Euclid
    /// over the field Q(A,B) would blow up the coefficients.
    fn reduce(self) -> Self {
        let vars3 = Vars::new(&["A", "B", "y"]);
        let (pn, ln) = clear_denoms(&self.num, &vars3);
        let (pd, ld) = clear_denoms(&self.den, &vars3);
        // num/den = (pn * ld) / (pd * ln)
        let num3 = pn.mul(&ld.lift_to(vars3.clone()));
        let den3 = pd.mul(&ln.lift_to(vars3.clone()));
        let g = num3.gcd(&den3);
        let (num3, den3) = if g.is_constant() {
            (num3, den3)
        } else {
            (
                num3.div_exact(&g).unwrap(),
                den3.div_exact(&g).unwrap(),
            )
        };
        let vars2 = Vars::new(&["A", "B"]);
        let back = |p: &MPoly| -> UPoly<MRat> {
            let yi = 2usize;
            let coeffs = p
                .coeffs_in_var(yi)
                .into_iter()
                .map(|c| MRat::from_poly(c.project_to(vars2.clone())))
                .collect();
            UPoly::from_coeffs(coeffs)
        };
        KernelRat { num: back(&num3), den: back(&den3) }
    }

    /// Value at y = 1 (every kernel satisfies F_l(1) = 1).
    pub fn eval_at_one(&self) -> MRat {
        let one = MRat::one();
        self.num.eval(&one).div(&self.den.eval(&one))
    }

    /// Equality as rational functions (cross-multiplied).
    pub fn equals(&self, other: &KernelRat) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Substitute A -> A - B + 1 in every coefficient.
    fn shift_a_down(&self) -> KernelRat {
        let (vars, _, _) = ab_field();
        let sub = MPoly::var(vars.clone(), "A")
            .sub(&MPoly::var(vars.clone(), "B"))
            .add(&MPoly::one(vars));
        let m = |p: &UPoly<MRat>| p.map(|c| c.subst("A", &sub));
        KernelRat { num: m(&self.num), den: m(&self.den) }
    }

    /// Evaluate at a series point with A, B specialized into any field.
    pub fn eval_series_at<R: Field>(&self, a: &R, b: &R, y: &Series<R>) -> Series<R> {
        let embed = |k: &MRat| k.eval_field(&[a.clone(), b.clone()]);
        let n = self.num.eval_series(y, &embed);
        let d = self.den.eval_series(y, &embed);
        n.div(&d)
    }
}

/// The kernel F_l(A,B;y) as an exact rational function.
///
/// For l = -m <= 0 it is the terminating sum
///   sum_(n=0..m) fhat_l(n) ((1-y)/y)^n
/// (the transform of f_(-m) vanishes beyond n = m).  For l >= 1 it is
/// generated from F_0 = 1 by the derivative recurrence
///   F_(l+1)(A,B;y) = (A-B+2)_(l-1)/(A+1)_l *
///       [ (A-B+1) y F_l(A-B+1,B;y) + y^2 F_l'(A-B+1,B;y) ] / ((1-B)y + B),
/// carried fraction-free on the numerators: with F_l = N_l / ((A+1)_(l-1) L^(2l-1)),
/// L = (1-B)y + B (which is invariant under the A-shift), the rung is
///   N_(l+1) = (A-B+1) y Ntilde L + y^2 (Ntilde' L - (2l-1) L' Ntilde),
/// Ntilde = N_l(A -> A-B+1), and the pochhammer prefactor cancels exactly.
pub fn kernel_rational(ell: i64) -> KernelRat {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<i64, KernelRat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().unwrap().get(&ell) {
        return k.clone();
    }
    let k = kernel_rational_uncached(ell);
    cache
        .lock()
        .unwrap()
        .insert(ell, k.clone());
    k
}

fn kernel_rational_uncached(ell: i64) -> KernelRat {
    let (_, a, b) = ab_field();
    if ell <= 0 {
        let m = (-ell) as u32;
        // sum fhat(n) (1-y)^n y^(m-n), all over y^m
        let one_minus_y = UPoly::<MRat>::from_coeffs(vec![MRat::one(), MRat::from_i64(-1)]);
        let y = UPoly::<MRat>::x();
        let mut num = UPoly::<MRat>::zero();
        for n in 0..=m {
            let coeff = hatf_ell(ell, &a, &b, n);
            let term = one_minus_y
                .pow(n)
                .mul(&y.pow(m - n))
                .scale(&coeff);
            num = num.add(&term);
        }
        KernelRat { num, den: y.pow(m) }.reduce()
    } else {
        let vars3 = Vars::new(&["A", "B", "y"]);
        let yv = MPoly::var(vars3.clone(), "y");
        let av = MPoly::var(vars3.clone(), "A");
        let bv = MPoly::var(vars3.clone(), "B");
        let one = MPoly::one(vars3.clone());
        let lin = one.sub(&bv).mul(&yv).add(&bv); // L = (1-B)y + B
        let lin_dy = one.sub(&bv); // L' in y
        let shift = av.sub(&bv).add(&one); // A - B + 1
        let yi = 2usize;
        let mut num = yv.clone(); // N_1 = y  (F_1 = y / L)
        for l in 1..ell {
            let shifted = num.subst("A", &shift);
            let d_shifted = shifted.derivative(yi);
            let t1 = shift.mul(&yv).mul(&shifted).mul(&lin);
            let t2 = yv.pow(2).mul(
                &d_shifted
                    .mul(&lin)
                    .sub(&lin_dy.mul(&shifted).scale(&Rat::from_int(2 * l - 1))),
            );
            num = t1.add(&t2);
        }
        let den_scalar = pochhammer(&a.add(&MRat::one()), ell - 1);
        let vars2 = Vars::new(&["A", "B"]);
        let num_u = UPoly::from_coeffs(
            num.coeffs_in_var(yi)
                .into_iter()
                .map(|c| MRat::from_poly(c.project_to(vars2.clone())))
                .collect(),
        );
        let lin_u = UPoly::<MRat>::from_coeffs(vec![b.clone(), MRat::one().sub(&b)]);
        let den_u = lin_u.pow(2 * ell as u32 - 1).scale(&den_scalar);
        KernelRat { num: num_u, den: den_u }
    }
}

/// One rung of the recurrence applied to an arbitrary kernel (used by the
/// downward-consistency check: applying it to F_(-1) must return F_0).
pub fn kernel_step(f: &KernelRat, l: i64) -> KernelRat {
    let (_, a, b) = ab_field();
    let shifted = f.shift_a_down();
    let y = UPoly::<MRat>::x();
    let y2 = y.mul(&y);
    // (A-B+1) y N D + y^2 (N' D - N D'), all over D^2 ((1-B)y + B)
    let albm1 = a.sub(&b).add(&MRat::one());
    let n = &shifted.num;
    let d = &shifted.den;
    let dn = n.derivative();
    let dd = d.derivative();
    let num = y
        .scale(&albm1)
        .mul(n)
        .mul(d)
        .add(&y2.mul(&dn.mul(d).sub(&n.mul(&dd))));
    let lin = UPoly::<MRat>::from_coeffs(vec![b.clone(), MRat::one().sub(&b)]);
    let den = d.mul(d).mul(&lin);
    let pref = pochhammer(&a.sub(&b).add(&MRat::from_i64(2)), l - 1)
        .div(&pochhammer(&a.add(&MRat::one()), l));
    KernelRat { num: num.scale(&pref), den }.reduce()
}

/// Interpolating kernel series G_0, G_1 in the variable w = (y-1)/y, to the
/// given order, with coefficients in Q(A,B,C):
///   G_0 = 2F1(C, 1; (A+C)/B + 1; w)
///   G_1 = 1/(1 - Bw) * 3F2(C, (A+1)/(B-1)+1, 1; (A+C+1)/B+1, (A+1)/(B-1); w)
/// (the prefactor y/((1-B)y+B) equals 1/(1-Bw)).
pub fn g_kernel_series(ell: u8, order: usize) -> Series<MRat> {
    let (_, a, b, c) = abc_field();
    let w = Var("w");
    match ell {
        0 => {
            let spec = HypSpec::new(
                vec![c.clone(), MRat::one()],
                vec![a.add(&c).div(&b).add(&MRat::one())],
            );
            hyp_series(&spec, w, order)
        }
        1 => {
            let x = a.add(&MRat::one()).div(&b.sub(&MRat::one()));
            let spec = HypSpec::new(
                vec![c.clone(), x.add(&MRat::one()), MRat::one()],
                vec![
                    a.add(&c).add(&MRat::one()).div(&b).add(&MRat::one()),
                    x.clone(),
                ],
            );
            let f = hyp_series(&spec, w, order);
            // 1/(1 - Bw)
            let mut lin = Series::<MRat>::one(w, order);
            if order >= 1 {
                lin.c[1] = b.neg();
            }
            f.div(&lin)
        }
        _ => panic!("interpolating kernels exist only for l = 0, 1"),
    }
}

/// Both sides of the l-indexed ladder identity over Q(A,B), as series in z:
/// lhs = y(z)^A * F_l(A,B; y(z)), rhs = 1 + sum f_l(k) binom(A+Bk,k) z^k.
pub fn section3_sides<R: Field>(
    ell: i64,
    a: &R,
    b: &R,
    var: Var,
    order: usize,
) -> (Series<R>, Series<R>) {
    let kernel = kernel_rational(ell);
    let y = solve_trinomial_std(b, var, order);
    let lhs = y.pow_param(a).mul(&kernel.eval_series_at(a, b, &y));
    let rhs = section3_rhs(ell, a, b, var, order);
    (lhs, rhs)
}

/// The explicit right-hand series 1 + sum_(k>=1) f_l(A,B;k) binom(A+Bk,k) z^k.
pub fn section3_rhs<R: Field>(ell: i64, a: &R, b: &R, var: Var, order: usize) -> Series<R> {
    let mut rhs = Series::<R>::zero(var, order);
    rhs.c[0] = R::one();
    for k in 1..=order as u32 {
        let abk = a.add(&b.mul(&R::from_i64(k as i64)));
        rhs.c[k as usize] = f_ell_seq(ell, a, b, k).mul(&binom_ext(&abk, k));
    }
    rhs
}

/// Both sides of the interpolating identity (l = 0 or 1) over Q(A,B,C):
/// lhs = y^A G_l(A,B,C; y(z)), rhs = 1 + sum g_l(k) binom(A+Bk,k) z^k.
/// Denominator-cleared interpolating kernel: numerators in Q[A,B,C] over one
/// common denominator, cached per (l, order).
///
/// Built directly from the factored pochhammer structure (no field
/// arithmetic): for l = 0 the w^k coefficient is
///   B^k (C)_k / prod_(i<k) (A+C+B(1+i)),
/// and for l = 1 the telescoped 3F2 coefficient times the 1/(1-Bw)
/// geometric prefactor gives
///   sum_(k<=m) B^(m-k) * B^k (B-1)^k (C)_k (A+1+(B-1)k)
///     / ((A+1) prod_(i<k) (A+C+1+B(1+i))).
pub fn g_kernel_cleared(ell: u8, order: usize) -> (Vec<MPoly>, MPoly) {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u8, usize), (Vec<MPoly>, MPoly)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(ell, order)) {
        return hit.clone();
    }
    let vars = Vars::new(&["A", "B", "C"]);
    let av = MPoly::var(vars.clone(), "A");
    let bv = MPoly::var(vars.clone(), "B");
    let cv = MPoly::var(vars.clone(), "C");
    let one = MPoly::one(vars.clone());
    let int = |n: i64| MPoly::constant(vars.clone(), Rat::from_int(n));
    // rising factorial (C)_k as polynomial products
    let poch_c = |k: usize| -> MPoly {
        let mut acc = one.clone();
        for i in 0..k {
            acc = acc.mul(&cv.add(&int(i as i64)));
        }
        acc
    };
    let cleared = match ell {
        0 => {
            // linear factors A + C + B(1+i)
            let factor = |i: usize| av.add(&cv).add(&bv.mul(&int(1 + i as i64)));
            let mut den = one.clone();
            for i in 0..order {
                den = den.mul(&factor(i));
            }
            let mut nums = Vec::with_capacity(order + 1);
            for k in 0..=order {
                let mut tail = one.clone();
                for i in k..order {
                    tail = tail.mul(&factor(i));
                }
                nums.push(bv.pow(k as u32).mul(&poch_c(k)).mul(&tail));
            }
            (nums, den)
        }
        1 => {
            let factor = |i: usize| av.add(&cv).add(&one).add(&bv.mul(&int(1 + i as i64)));
            let a1 = av.add(&one);
            let mut den = a1.clone();
            for i in 0..order {
                den = den.mul(&factor(i));
            }
            // cleared 3F2 coefficient: the (A+1)/(B-1)-shifted pochhammer
            // pair telescopes to (A+1+(B-1)k)/(A+1), leaving
            // c_k = B^k (C)_k (A+1+(B-1)k) / ((A+1) prod_(i<k) factor(i))
            let bm1 = bv.sub(&one);
            let mut c_nums = Vec::with_capacity(order + 1);
            for k in 0..=order {
                let mut tail = one.clone();
                for i in k..order {
                    tail = tail.mul(&factor(i));
                }
                let head = a1.add(&bm1.mul(&int(k as i64)));
                c_nums.push(bv.pow(k as u32).mul(&poch_c(k)).mul(&head).mul(&tail));
            }
            // geometric 1/(1 - Bw) prefactor: num_m = sum_k B^(m-k) c_num_k
            let mut nums = Vec::with_capacity(order + 1);
            for m in 0..=order {
                let mut acc = MPoly::zero(vars.clone());
                for (k, cn) in c_nums.iter().enumerate().take(m + 1) {
                    acc = acc.add(&bv.pow((m - k) as u32).mul(cn));
                }
                nums.push(acc);
            }
            (nums, den)
        }
        _ => panic!("interpolating kernels exist only for l = 0, 1"),
    };
    cache.lock().unwrap().insert((ell, order), cleared.clone());
    cleared
}

/// Evaluate the interpolating kernel G_l(A,B,C; .) at a series point y with
/// unit constant term, the parameters specialized into any field.  The
/// nested pochhammer denominators of G's coefficients are cleared first so
/// the composition stays in the polynomial subring; the common denominator
/// comes back as one final scale.
/// Cleared kernel coefficients evaluated at given parameter values, by
/// incremental products of the linear factors (no polynomial expansion):
/// returns (numerators, common denominator).
pub fn g_kernel_coeffs<R: Field>(ell: u8, order: usize, a: &R, b: &R, c: &R) -> (Vec<R>, R) {
    let one = R::one();
    match ell {
        0 => {
            // factor(i) = A + C + B(1+i); num_k = B^k (C)_k prod_(i>=k) factor(i)
            let factors: Vec<R> = (0..order)
                .map(|i| a.add(c).add(&b.mul(&R::from_i64(1 + i as i64))))
                .collect();
            let mut tails = vec![one.clone(); order + 1];
            for k in (0..order).rev() {
                tails[k] = tails[k + 1].mul(&factors[k]);
            }
            let den = tails[0].clone();
            let mut nums = Vec::with_capacity(order + 1);
            let mut head = one.clone();
            for (k, tail) in tails.iter().enumerate() {
                nums.push(head.mul(tail));
                head = head.mul(b).mul(&c.add(&R::from_i64(k as i64)));
            }
            (nums, den)
        }
        1 => {
            // factor(i) = A + C + 1 + B(1+i); den = (A+1) prod factor(i);
            // c_num_k = B^k (C)_k (A+1+(B-1)k) prod_(i>=k) factor(i);
            // num_m = sum_(k<=m) B^(m-k) c_num_k  (geometric prefactor)
            let a1 = a.add(&one);
            let bm1 = b.sub(&one);
            let factors: Vec<R> = (0..order)
                .map(|i| a.add(c).add(&one).add(&b.mul(&R::from_i64(1 + i as i64))))
                .collect();
            let mut tails = vec![one.clone(); order + 1];
            for k in (0..order).rev() {
                tails[k] = tails[k + 1].mul(&factors[k]);
            }
            let den = a1.mul(&tails[0]);
            let mut c_nums = Vec::with_capacity(order + 1);
            let mut head = one.clone();
            for (k, tail) in tails.iter().enumerate() {
                let lin = a1.add(&bm1.mul(&R::from_i64(k as i64)));
                c_nums.push(head.mul(&lin).mul(tail));
                head = head.mul(b).mul(&c.add(&R::from_i64(k as i64)));
            }
            let mut nums = Vec::with_capacity(order + 1);
            for m in 0..=order {
                let mut acc = R::zero();
                let mut bpow = one.clone();
                for k in (0..=m).rev() {
                    acc = acc.add(&c_nums[k].mul(&bpow));
                    bpow = bpow.mul(b);
                }
                nums.push(acc);
            }
            (nums, den)
        }
        _ => panic!("interpolating kernels exist only for l = 0, 1"),
    }
}

pub fn g_kernel_at_series<R: Field>(
    ell: u8,
    a: &R,
    b: &R,
    c: &R,
    y: &Series<R>,
) -> Series<R> {
    let order = y.order();
    let (gnums, gden) = g_kernel_coeffs(ell, order, a, b, c);
    let w = y.sub(&Series::one(y.var, order)).div(y);
    let gn = Series::from_coeffs(Var("w"), gnums);
    let dinv = gden.inv();
    gn.compose(&w).scale(&dinv)
}

pub fn section3_interp_sides<R: Field>(
    ell: u8,
    a: &R,
    b: &R,
    c: &R,
    var: Var,
    order: usize,
) -> (Series<R>, Series<R>) {
    let y = solve_trinomial_std(b, var, order);
    let g_at = g_kernel_at_series(ell, a, b, c, &y);
    let lhs = y.pow_param(a).mul(&g_at);
    let mut rhs = Series::<R>::zero(var, order);
    rhs.c[0] = R::one();
    for k in 1..=order as u32 {
        let abk = a.add(&b.mul(&R::from_i64(k as i64)));
        rhs.c[k as usize] = g_ell_seq(ell as i64, a, b, c, k).mul(&binom_ext(&abk, k));
    }
    (lhs, rhs)
}


/// Leading behavior of a rational function as C -> infinity: the ratio of
/// leading coefficients in C when numerator and denominator have equal
/// C-degree, zero when the numerator's degree is smaller.
pub fn limit_c_to_infinity(x: &MRat, c_index: usize) -> MRat {
    let dn = x.num.degree_in(c_index);
    let dd = x.den.degree_in(c_index);
    if dn < dd {
        return MRat::zero();
    }
    assert!(dn == dd, "diverges as C -> infinity");
    let ln = x.num.coeffs_in_var(c_index).pop().unwrap();
    let ld = x.den.coeffs_in_var(c_index).pop().unwrap();
    MRat::new(ln, ld)
}
