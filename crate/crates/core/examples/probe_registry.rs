use alghyp_core::registry::{verify, NumParams, VerifyMode};
use std::time::Instant;

fn main() {
    let probes: Vec<(&str, NumParams, usize)> = vec![
        ("thm71-a", NumParams { p: Some(2), ell: Some(0), ..Default::default() }, 8),
        ("thm71-a", NumParams { p: Some(2), ell: Some(-1), ..Default::default() }, 8),
        ("thm71-b", NumParams { p: Some(2), ell: Some(1), ..Default::default() }, 6),
        ("thm72-a", NumParams { ell: Some(0), kappa: Some(0), ..Default::default() }, 8),
        ("thm72-a", NumParams { ell: Some(1), kappa: Some(1), ..Default::default() }, 8),
        ("thm72-a", NumParams { ell: Some(-1), kappa: Some(1), ..Default::default() }, 8),
        ("thm72-b", NumParams { ell: Some(0), kappa: Some(1), ..Default::default() }, 6),
        ("thm73-a", NumParams { p: Some(1), ell: Some(0), kappa: Some(1), ..Default::default() }, 8),
        ("thm73-a", NumParams { p: Some(3), ell: Some(1), kappa: Some(0), ..Default::default() }, 8),
        ("thm73-b", NumParams { p: Some(1), ell: Some(1), kappa: Some(1), ..Default::default() }, 6),
        ("thm74-a", NumParams { ell: Some(0), kappa: Some(0), ..Default::default() }, 9),
        ("thm74-a", NumParams { ell: Some(1), kappa: Some(1), ..Default::default() }, 9),
        ("thm74-a", NumParams { ell: Some(0), kappa: Some(2), ..Default::default() }, 9),
        ("thm74-b", NumParams { ell: Some(0), kappa: Some(1), ..Default::default() }, 6),
        ("thm75-a", NumParams { ell: Some(0), kappa: Some(0), ..Default::default() }, 9),
        ("thm75-a", NumParams { ell: Some(1), kappa: Some(1), ..Default::default() }, 9),
        ("thm75-a", NumParams { ell: Some(0), kappa: Some(2), ..Default::default() }, 9),
        ("thm75-b", NumParams { ell: Some(1), kappa: Some(2), ..Default::default() }, 6),
        ("thm88", NumParams { n: Some(2), ..Default::default() }, 10),
        ("thm88", NumParams { n: Some(5), ..Default::default() }, 10),
        ("thm810", NumParams { a_int: Some(-1), ..Default::default() }, 10),
        ("thm810", NumParams { a_int: Some(-5), ..Default::default() }, 10),
        ("thm810-red1", NumParams::default(), 10),
        ("thm810-red5", NumParams::default(), 10),
        ("cor811-a", NumParams::default(), 12),
        ("cor811-b", NumParams::default(), 12),
        ("thm812", NumParams::default(), 12),
        ("thm812-quad", NumParams::default(), 12),
        ("thm813", NumParams::default(), 12),
        ("thm813-quad", NumParams::default(), 12),
        ("thm41-i", NumParams { p: Some(2), q: Some(3), ell: Some(1), j: Some(2), ..Default::default() }, 6),
        ("thm44-i", NumParams { p: Some(1), q: Some(3), ell: Some(0), j: Some(2), ..Default::default() }, 6),
        ("thm46-i", NumParams { p: Some(2), q: Some(3), ell: Some(1), kappa: Some(2), ..Default::default() }, 6),
        ("thm46-ii", NumParams { p: Some(1), q: Some(2), ell: Some(0), kappa: Some(1), ..Default::default() }, 6),
        ("thm48-i", NumParams { p: Some(1), q: Some(2), ell: Some(1), kappa: Some(1), ..Default::default() }, 5),
    ];
    let mut failures = 0;
    for (id, np, order) in probes {
        let t = Instant::now();
        match verify(id, &np, &VerifyMode::Parametric, Some(order), None) {
            Ok(r) => {
                let status = if r.pass { "PASS" } else { "FAIL" };
                if !r.pass {
                    failures += 1;
                    println!(
                        "{status} {id} {np:?} N={order} ({:?}) mismatch={:?}",
                        t.elapsed(),
                        r.first_mismatch
                    );
                } else {
                    println!("{status} {id} N={order} ({:?})", t.elapsed());
                }
            }
            Err(e) => {
                failures += 1;
                println!("ERR  {id} {np:?}: {e}");
            }
        }
    }
    println!("failures: {failures}");
}
