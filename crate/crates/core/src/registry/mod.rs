//! The identity catalog: every verifiable identity, each with a builder
//! producing (lhs, rhs) as truncated series over its declared coefficient
//! ring, plus the verification engine and report format.
//!
//! Verification is exact: an identity passes iff the difference of its two
//! sides is identically zero through the truncation order, coefficientwise
//! in the declared ring.  PARAMETRIC mode carries the free parameters
//! symbolically; SAMPLED mode substitutes deterministic pseudo-random
//! small-height rationals, with the sample count chosen from a degree-bound
//! heuristic so that agreement at every sample certifies the polynomial
//! identity underneath.

pub mod builders;

use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclo;
use crate::mrat::MRat;
use crate::num::Rat;
use crate::ring::{Field, Ring};
use crate::series::Series;
use crate::trinomial::Regime;
use crate::CoreError;
pub use builders::{Built, Corruption, FreeParams, NumParams};

/// Verification mode.
#[derive(Clone, Debug, PartialEq)]
pub enum VerifyMode {
    /// free parameters carried symbolically in a rational-function field
    Parametric,
    /// free parameters replaced by deterministic pseudo-random rationals
    Sampled { seed: u64, count: Option<u32> },
}

/// One catalog entry.
#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub id: &'static str,
    /// short human label naming what the identity relates
    pub label: &'static str,
    /// theorem-style source tag used by listings
    pub source: &'static str,
    pub default_order: usize,
    /// free parameters used (subset of {a, c, A, B, C})
    pub free: &'static [&'static str],
    /// hypergeometric order for the sampling heuristic
    pub hyp_order: u32,
}

/// Location and value of the first coefficient where the sides disagree.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Mismatch {
    pub order: usize,
    pub value: String,
}

/// Verification outcome, serializable as the JSON report object.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    pub id: String,
    pub mode: String,
    pub order: usize,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    pub ring: String,
    pub branch_choices: Vec<String>,
    pub millis: u128,
}

/// All catalog entries.
pub fn list_identities() -> Vec<IdentityCase> {
    let mut v = vec![];
    let mut add = |id, label, source, default_order, free: &'static [&'static str], hyp_order| {
        v.push(IdentityCase { id, label, source, default_order, free, hyp_order })
    };
    add(
        "eq2-sample",
        "two-term radical average for the odd-p even covering",
        "sample identity (q = 2 family)",
        12,
        &["a"],
        3,
    );
    add("sec3--2", "ladder identity, rung -2", "transform ladder", 10, &["A", "B"], 2);
    add("sec3--1", "ladder identity, rung -1", "transform ladder", 10, &["A", "B"], 2);
    add("sec3-0", "ladder identity, rung 0", "transform ladder", 10, &["A", "B"], 2);
    add("sec3-1", "ladder identity, rung 1", "transform ladder", 10, &["A", "B"], 2);
    add("sec3-2", "ladder identity, rung 2", "transform ladder", 10, &["A", "B"], 2);
    add("sec3-3", "ladder identity, rung 3", "transform ladder", 10, &["A", "B"], 2);
    add(
        "sec3-interp-0",
        "interpolating ladder identity, rung 0",
        "transform ladder, C-interpolated",
        8,
        &["A", "B", "C"],
        2,
    );
    add(
        "sec3-interp-1",
        "interpolating ladder identity, rung 1",
        "transform ladder, C-interpolated",
        8,
        &["A", "B", "C"],
        3,
    );
    add("thm41-i", "branch ladder near beta = 0", "root-family ladder (i)", 8, &["a"], 2);
    add("thm41-ii", "branch ladder near g = 0", "root-family ladder (ii)", 8, &["a"], 2);
    add("thm44-i", "forward representation near beta = 0", "forward representation (i)", 8, &["a"], 3);
    add("thm44-ii", "forward representation near g = 0", "forward representation (ii)", 8, &["a"], 3);
    add("thm46-i", "inverse representation near beta = 0", "inverse representation (i)", 8, &["a"], 3);
    add("thm46-ii", "inverse representation near g = 0", "inverse representation (ii)", 6, &["a"], 3);
    add("thm48-i", "interpolated inverse representation (i)", "inverse representation, C-interpolated (i)", 6, &["a", "c"], 4);
    add("thm48-ii", "interpolated inverse representation (ii)", "inverse representation, C-interpolated (ii)", 6, &["a", "c"], 4);
    add("thm71-a", "uniformization by s, kernel form", "s-uniformization", 16, &["a"], 3);
    add("thm71-b", "uniformization by s, interpolated form", "s-uniformization", 12, &["a", "c"], 4);
    add("thm72-a", "two-root average at the far point", "top-curve s-uniformization", 16, &["a"], 2);
    add("thm72-b", "two-root average, interpolated", "top-curve s-uniformization", 12, &["a", "c"], 3);
    add("thm73-a", "two-root average on the even covering", "t-uniformization", 12, &["a"], 3);
    add("thm73-b", "two-root average, interpolated", "t-uniformization", 10, &["a", "c"], 4);
    add("thm74-a", "three-root average on the degree-6 covering", "top-curve t-uniformization", 12, &["a"], 3);
    add("thm74-b", "three-root average, interpolated", "top-curve t-uniformization", 9, &["a", "c"], 4);
    add("thm75-a", "three-root average on the degree-24 covering", "u-uniformization", 12, &["a"], 4);
    add("thm75-b", "three-root average, interpolated", "u-uniformization", 9, &["a", "c"], 5);
    add("thm88", "degenerate single-root family", "integer-a family", 16, &[], 4);
    add("thm810", "integer-a family on the (2,3) curve", "integer-a family on (2,3)", 24, &[], 5);
    add("thm810-red1", "nondegenerate reduction at a = -1", "integer-a family on (2,3)", 24, &[], 5);
    add("thm810-red5", "nondegenerate reduction at a = -5", "integer-a family on (2,3)", 24, &[], 5);
    add("cor811-a", "rational uniformization, first kind", "degree-10 covering", 24, &[], 4);
    add("cor811-b", "rational uniformization, second kind", "degree-10 covering", 24, &[], 5);
    add("thm812", "cube-root radical uniformization", "degree-10 covering, radicals", 40, &[], 4);
    add("thm812-quad", "quadratic relation for the cubed series", "degree-10 covering, radicals", 40, &[], 4);
    add("thm813", "fourth-root radical uniformization", "degree-15 covering, radicals", 30, &[], 4);
    add("thm813-quad", "quadratic relation for the fourth power", "degree-15 covering, radicals", 30, &[], 4);
    v
}

pub fn find_case(id: &str) -> Result<IdentityCase, CoreError> {
    list_identities()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CoreError::UnknownId(id.to_string()))
}

/// Heuristic a-degree bound and sample count: d = (n+1) N + |l| + 4,
/// doubled when c is free too; count = d + 1.
pub fn sample_plan(id: &str, order: usize) -> Result<u32, CoreError> {
    let case = find_case(id)?;
    let ell = 0i64; // per-instance l is bounded by the defaults below
    let mut d = (case.hyp_order + 1) * order as u32 + ell.unsigned_abs() as u32 + 4;
    if case.free.contains(&"c") || case.free.len() >= 2 {
        d *= 2;
    }
    Ok(d + 1)
}

fn default_regime(id: &str) -> Regime {
    if id.ends_with("-ii") {
        Regime::GNearZero
    } else {
        Regime::BetaNearZero
    }
}

/// Dispatch a builder over an arbitrary coefficient field.
fn build_generic<R: Field>(
    id: &str,
    np: &NumParams,
    fp: &FreeParams<R>,
    order: usize,
    corruption: Option<Corruption>,
) -> Result<Built<R>, CoreError> {
    let p = np.p.unwrap_or(1);
    let q = np.q.unwrap_or(2);
    let ell = np.ell.unwrap_or(0);
    let kappa = np.kappa.unwrap_or(0);
    let j = np.j.unwrap_or(1);
    match id {
        "eq2-sample" => builders::eq2_sample(np.p.unwrap_or(1), &fp.a, order, corruption),
        "sec3--2" => builders::sec3(-2, &fp.big_a, &fp.big_b, order, corruption),
        "sec3--1" => builders::sec3(-1, &fp.big_a, &fp.big_b, order, corruption),
        "sec3-0" => builders::sec3(0, &fp.big_a, &fp.big_b, order, corruption),
        "sec3-1" => builders::sec3(1, &fp.big_a, &fp.big_b, order, corruption),
        "sec3-2" => builders::sec3(2, &fp.big_a, &fp.big_b, order, corruption),
        "sec3-3" => builders::sec3(3, &fp.big_a, &fp.big_b, order, corruption),
        "sec3-interp-0" => builders::sec3_interp(0, &fp.big_a, &fp.big_b, &fp.big_c, order),
        "sec3-interp-1" => builders::sec3_interp(1, &fp.big_a, &fp.big_b, &fp.big_c, order),
        "thm41-i" | "thm41-ii" => {
            builders::thm41(p, q, ell, j, default_regime(id), &fp.a, order)
        }
        "thm44-i" | "thm44-ii" => {
            builders::thm44(p, q, ell, j, default_regime(id), &fp.a, order)
        }
        "thm46-i" | "thm46-ii" => {
            builders::thm46(p, q, ell, kappa, default_regime(id), &fp.a, order)
        }
        "thm48-i" | "thm48-ii" => builders::thm48(
            p,
            q,
            u8::try_from(ell).map_err(|_| CoreError::Constraint("l must be 0 or 1".into()))?,
            kappa,
            default_regime(id),
            &fp.a,
            &fp.c,
            order,
        ),
        "thm71-a" => builders::thm71(np.p.unwrap_or(2), ell, None, &fp.a, order),
        "thm71-b" => builders::thm71(np.p.unwrap_or(2), ell, Some(&fp.c), &fp.a, order),
        "thm72-a" => builders::thm72(ell, kappa, None, &fp.a, order),
        "thm72-b" => builders::thm72(ell, kappa, Some(&fp.c), &fp.a, order),
        "thm73-a" => builders::thm73(np.p.unwrap_or(1), ell, kappa, None, &fp.a, order),
        "thm73-b" => builders::thm73(np.p.unwrap_or(1), ell, kappa, Some(&fp.c), &fp.a, order),
        "thm74-a" => builders::thm74(ell, kappa, None, &fp.a, order),
        "thm74-b" => builders::thm74(ell, kappa, Some(&fp.c), &fp.a, order),
        "thm75-a" => builders::thm75(ell, kappa, None, &fp.a, order),
        "thm75-b" => builders::thm75(ell, kappa, Some(&fp.c), &fp.a, order),
        _ => Err(CoreError::UnknownId(id.to_string())),
    }
}

/// Constant-coefficient identities (no free parameters).
fn build_constant(
    id: &str,
    np: &NumParams,
    order: usize,
    corruption: Option<Corruption>,
) -> Result<Built<Rat>, CoreError> {
    match id {
        "thm88" => builders::thm88(np.n.unwrap_or(2), order),
        "thm810" => builders::thm810(np.a_int.unwrap_or(-1), order),
        "thm810-red1" => builders::thm810_reduction(-1, order),
        "thm810-red5" => builders::thm810_reduction(-5, order),
        "cor811-a" => builders::cor811(0, order, corruption),
        "cor811-b" => builders::cor811(1, order, corruption),
        "thm812" => builders::thm812(order),
        "thm812-quad" => builders::thm812_quadratic(order),
        "thm813" => builders::thm813(order),
        "thm813-quad" => builders::thm813_quadratic(order),
        _ => Err(CoreError::UnknownId(id.to_string())),
    }
}

fn is_constant_id(id: &str) -> bool {
    matches!(
        id,
        "thm88"
            | "thm810"
            | "thm810-red1"
            | "thm810-red5"
            | "cor811-a"
            | "cor811-b"
            | "thm812"
            | "thm812-quad"
            | "thm813"
            | "thm813-quad"
    )
}

/// Build both sides in PARAMETRIC mode (free parameters symbolic).
pub fn build_sides_parametric(
    id: &str,
    np: &NumParams,
    order: usize,
    corruption: Option<Corruption>,
) -> Result<(Built<MRat>, String), CoreError> {
    let case = find_case(id)?;
    let fp = FreeParams::<MRat>::symbolic();
    let ring = ring_description(&case, None);
    if is_constant_id(id) {
        let b = build_constant(id, np, order, corruption)?;
        let lift = |s: &Series<Cyclo<Rat>>| -> Series<Cyclo<MRat>> {
            s.map(|c| Cyclo {
                m: c.m,
                coords: c.coords.iter().map(|x| MRat::from_rat(x)).collect(),
            })
        };
        return Ok((
            Built { lhs: lift(&b.lhs), rhs: lift(&b.rhs), branch_choices: b.branch_choices },
            ring,
        ));
    }
    let b = build_generic::<MRat>(id, np, &fp, order, corruption)?;
    Ok((b, ring))
}

/// Build with the free parameters pinned to concrete rationals (used by the
/// CLI when --a/--c are given).
pub fn build_sides_pinned(
    id: &str,
    np: &NumParams,
    fp: &FreeParams<Rat>,
    order: usize,
) -> Result<Built<Rat>, CoreError> {
    if is_constant_id(id) {
        return build_constant(id, np, order, None);
    }
    build_generic::<Rat>(id, np, fp, order, None)
}

fn ring_description(case: &IdentityCase, sample: Option<&str>) -> String {
    let base = if case.free.is_empty() {
        "Q".to_string()
    } else {
        format!("Q({})", case.free.join(","))
    };
    let cyclo = match case.id {
        id if id.starts_with("thm74") || id.starts_with("thm75") => "[w3]",
        id if id.starts_with("thm4") => "[w]",
        _ => "",
    };
    match sample {
        Some(s) => format!("{base}{cyclo} sampled at {s}"),
        None => format!("{base}{cyclo}"),
    }
}

fn first_mismatch<R: Field>(lhs: &Series<Cyclo<R>>, rhs: &Series<Cyclo<R>>) -> Option<Mismatch> {
    let n = lhs.order().min(rhs.order());
    for k in 0..=n {
        let d = lhs.c[k].sub(&rhs.c[k]);
        if !d.is_zero() {
            return Some(Mismatch { order: k, value: format!("{d}") });
        }
    }
    None
}

/// Deterministic small-height rational samples, screened by the builder.
fn sample_values(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(1..=60i64);
    let den = [7i64, 9, 11, 13, 17, 19, 23][rng.gen_range(0..7usize)];
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rat::new(sign * num, den)
}

/// Run the verification for one identity instance.
pub fn verify(
    id: &str,
    np: &NumParams,
    mode: &VerifyMode,
    order: Option<usize>,
    corruption: Option<Corruption>,
) -> Result<VerifyReport, CoreError> {
    let case = find_case(id)?;
    let order = order.unwrap_or(case.default_order);
    let start = Instant::now();
    match mode {
        VerifyMode::Parametric => {
            let (built, ring) = build_sides_parametric(id, np, order, corruption)?;
            let mm = first_mismatch(&built.lhs, &built.rhs);
            Ok(VerifyReport {
                id: id.to_string(),
                mode: "PARAMETRIC".into(),
                order,
                pass: mm.is_none(),
                first_mismatch: mm,
                ring,
                branch_choices: built.branch_choices,
                millis: start.elapsed().as_millis(),
            })
        }
        VerifyMode::Sampled { seed, count } => {
            if is_constant_id(id) {
                // no free parameters: SAMPLED degenerates to one exact run
                let built = build_constant(id, np, order, corruption)?;
                let mm = first_mismatch(&built.lhs, &built.rhs);
                return Ok(VerifyReport {
                    id: id.to_string(),
                    mode: "SAMPLED (constant coefficients, 1 exact run)".into(),
                    order,
                    pass: mm.is_none(),
                    first_mismatch: mm,
                    ring: "Q".into(),
                    branch_choices: built.branch_choices,
                    millis: start.elapsed().as_millis(),
                });
            }
            let planned = sample_plan(id, order)?;
            let want = count.unwrap_or(planned);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut done = 0u32;
            let mut attempts = 0u32;
            let mut branch_choices = vec![];
            let mut mismatch = None;
            #[allow(unused_assignments)]
            let mut last_sample = String::new();
            while done < want && attempts < want * 20 + 100 {
                attempts += 1;
                let a = sample_values(&mut rng);
                let c = sample_values(&mut rng);
                let big_a = sample_values(&mut rng);
                let big_b = sample_values(&mut rng);
                let big_c = sample_values(&mut rng);
                last_sample = format!("a={a}, c={c}, A={big_a}, B={big_b}, C={big_c}");
                let fp = FreeParams::<Rat>::numeric(a, c, big_a, big_b, big_c);
                match build_generic::<Rat>(id, np, &fp, order, corruption) {
                    Err(CoreError::Constraint(_)) => continue, // screened sample
                    Err(e) => return Err(e),
                    Ok(built) => {
                        if done == 0 {
                            branch_choices = built.branch_choices.clone();
                        }
                        if let Some(mm) = first_mismatch(&built.lhs, &built.rhs) {
                            mismatch = Some(Mismatch {
                                order: mm.order,
                                value: format!("{} at {}", mm.value, last_sample),
                            });
                            break;
                        }
                        done += 1;
                    }
                }
            }
            if mismatch.is_none() && done < want {
                return Err(CoreError::Constraint(format!(
                    "could not collect {want} admissible samples for {id}"
                )));
            }
            let note = if done >= planned {
                "deterministic under degree bound"
            } else {
                "probabilistic"
            };
            Ok(VerifyReport {
                id: id.to_string(),
                mode: format!("SAMPLED seed={seed} count={done} ({note})"),
                order,
                pass: mismatch.is_none(),
                first_mismatch: mismatch,
                ring: ring_description(&case, Some("rational samples")),
                branch_choices,
                millis: start.elapsed().as_millis(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_size_and_structure() {
        let ids = list_identities();
        assert!(ids.len() >= 28, "registry must contain at least 28 ids");
        let mut seen = std::collections::HashSet::new();
        for c in &ids {
            assert!(seen.insert(c.id), "duplicate id {}", c.id);
            assert!(!c.label.is_empty());
            assert!(!ring_description(c, None).is_empty());
        }
        assert!(find_case("nosuch").is_err());
    }

    #[test]
    fn sample_plan_heuristic() {
        // hyp order 3, one free parameter, N=10: (3+1)*10 + 0 + 4 + 1 = 45
        assert_eq!(sample_plan("thm73-a", 10).unwrap(), 45);
        // doubled when c is free (and the hypergeometric order grows by 1)
        assert_eq!(sample_plan("thm73-b", 10).unwrap(), 109);
        // monotone in N
        assert!(sample_plan("thm73-a", 12).unwrap() > sample_plan("thm73-a", 10).unwrap());
    }

    #[test]
    fn report_json_round_trip() {
        let r = VerifyReport {
            id: "thm73-a".into(),
            mode: "PARAMETRIC".into(),
            order: 12,
            pass: true,
            first_mismatch: None,
            ring: "Q(a)".into(),
            branch_choices: vec!["square-root prefactor: principal branch".into()],
            millis: 17,
        };
        let s = serde_json::to_string(&r).unwrap();
        let back: VerifyReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn unknown_id_errors() {
        let r = verify("nosuch", &NumParams::default(), &VerifyMode::Parametric, None, None);
        assert!(matches!(r, Err(CoreError::UnknownId(_))));
    }

    #[test]
    fn sample_identity_parametric_passes() {
        let r = verify(
            "eq2-sample",
            &NumParams { p: Some(1), ..Default::default() },
            &VerifyMode::Parametric,
            Some(8),
            None,
        )
        .unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn sample_identity_equals_general_form() {
        // the sample identity coincides with the general t-uniformization at
        // p = 1, l = 0, kappa = 0
        let np = NumParams { p: Some(1), ell: Some(0), kappa: Some(0), ..Default::default() };
        let (b1, _) = build_sides_parametric("eq2-sample", &np, 8, None).unwrap();
        let (b2, _) = build_sides_parametric("thm73-a", &np, 8, None).unwrap();
        assert!(b1.lhs.sub(&b2.lhs).is_zero());
        assert!(b1.rhs.sub(&b2.rhs).is_zero());
    }

    #[test]
    fn degenerate_sample_screened() {
        // thm72 with 2a integral must be rejected as a constraint violation
        let fp = FreeParams::<Rat>::numeric(
            Rat::new(1, 2),
            Rat::new(2, 5),
            Rat::one(),
            Rat::one(),
            Rat::one(),
        );
        let r = builders::thm72::<Rat>(0, 0, None, &fp.a, 6);
        assert!(matches!(r, Err(CoreError::Constraint(_))));
        let _ = fp;
    }

    #[test]
    fn mutation_sensitivity() {
        // three deliberate corruptions all fail with an early first mismatch
        let cases = [
            ("sec3-1", NumParams::default(), Corruption::KernelSign),
            ("cor811-a", NumParams::default(), Corruption::MapCoefficient),
            (
                "eq2-sample",
                NumParams { p: Some(1), ..Default::default() },
                Corruption::PochhammerOffset,
            ),
        ];
        for (id, np, corruption) in cases {
            let r = verify(id, &np, &VerifyMode::Parametric, Some(6), Some(corruption)).unwrap();
            assert!(!r.pass, "{id} with {corruption:?} must fail");
            let mm = r.first_mismatch.expect("mismatch recorded");
            assert!(
                mm.order <= 3,
                "{id} with {corruption:?}: mismatch order {} too late",
                mm.order
            );
        }
    }

    #[test]
    fn sampled_mode_runs() {
        let r = verify(
            "thm71-a",
            &NumParams { p: Some(2), ell: Some(1), ..Default::default() },
            &VerifyMode::Sampled { seed: 7, count: Some(3) },
            Some(8),
            None,
        )
        .unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.mode.contains("SAMPLED"));
    }
}
