//! Command-line front end: run identity verifications, emit branching and
//! genus tables, query the covering-map catalog, and produce JSON reports.
//!
//! Exit codes: 0 verification passed, 1 verification failed, 2 constraint
//! violation, 3 usage error / unknown id.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use alghyp_core::belyi::{belyi_catalog, catalog_ids, verify_belyi};
use alghyp_core::num::Rat;
use alghyp_core::registry::{
    find_case, list_identities, sample_plan, verify, NumParams, VerifyMode, VerifyReport,
};
use alghyp_core::schwarz::{genus, ram_profile};
use alghyp_core::tables;
use alghyp_core::CoreError;

#[derive(Parser)]
#[command(
    name = "alghyp",
    about = "Exact verification of algebraic-hypergeometric identities and trinomial-curve data",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity from the catalog
    Verify(VerifyArgs),
    /// Genus of the k-th root-tuple curve, or a whole table
    Genus(GenusArgs),
    /// Print a covering map, its degree, and its ramification verification
    Belyi(BelyiArgs),
    /// Emit a named table (table-2 | genus | classification)
    Table(TableArgs),
    /// List the identity catalog
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// identity id (see `alghyp list`)
    id: String,
    /// truncation order override
    #[arg(long)]
    order: Option<usize>,
    /// parametric | sampled
    #[arg(long, default_value = "parametric")]
    mode: String,
    /// rational value for the free parameter a (sampled runs pin it; for
    /// integer-family identities this selects the instance)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// rational value for the free parameter c
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// ladder index l
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long)]
    kappa: Option<u32>,
    /// branch index j (forward representations)
    #[arg(long)]
    j: Option<u32>,
    /// family order n (degenerate single-root family)
    #[arg(long)]
    n: Option<u32>,
    /// write the JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// seed for sampled verification
    #[arg(long, default_value = "20240801")]
    seed: u64,
    /// sample-count override for sampled verification
    #[arg(long)]
    count: Option<u32>,
}

#[derive(Args)]
struct GenusArgs {
    p: Option<u32>,
    q: Option<u32>,
    k: Option<u32>,
    /// emit the full genus table up to p + q <= bound
    #[arg(long)]
    table: Option<u32>,
    /// emit the low-genus classification up to p + q <= bound
    #[arg(long)]
    classify: Option<u32>,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct BelyiArgs {
    /// map id: phi1 | phi2 | pi2 | zeta_p1 | zeta_11 | zeta_p2 | zeta_12 |
    /// zeta_13 | zeta_23 | zeta_14
    id: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args)]
struct TableArgs {
    /// table-2 | genus | classification
    name: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// bound on p + q for genus/classification tables
    #[arg(long, default_value = "8")]
    bound: u32,
    #[arg(long, default_value = "text")]
    format: String,
}

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_CONSTRAINT: u8 = 2;
const EXIT_USAGE: u8 = 3;

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. piping into head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Genus(args) => cmd_genus(args),
        Command::Belyi(args) => cmd_belyi(args),
        Command::Table(args) => cmd_table(args),
        Command::List => cmd_list(),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CoreError::Constraint(msg)) => {
            eprintln!("constraint violation: {msg}");
            ExitCode::from(EXIT_CONSTRAINT)
        }
        Err(CoreError::UnknownId(id)) => {
            eprintln!("unknown id: {id}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CoreError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat, CoreError> {
    s.parse::<Rat>()
        .map_err(|e| CoreError::Usage(format!("bad rational literal {s:?}: {e}")))
}

fn print_report(r: &VerifyReport, json_path: Option<&PathBuf>) -> Result<(), CoreError> {
    println!(
        "{}  {}  order {}  ring {}  [{} ms]",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.order,
        r.ring,
        r.millis
    );
    println!("  mode: {}", r.mode);
    for b in &r.branch_choices {
        println!("  branch: {b}");
    }
    if let Some(mm) = &r.first_mismatch {
        println!("  first mismatch at order {}: {}", mm.order, mm.value);
    }
    if let Some(path) = json_path {
        let s = serde_json::to_string_pretty(r)
            .map_err(|e| CoreError::Usage(format!("serialization: {e}")))?;
        std::fs::write(path, s)
            .map_err(|e| CoreError::Usage(format!("writing {}: {e}", path.display())))?;
        println!("  report written to {}", path.display());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CoreError> {
    let case = find_case(&args.id)?;
    let mut np = NumParams {
        p: args.p,
        q: args.q,
        ell: args.l,
        kappa: args.kappa,
        j: args.j,
        n: args.n,
        a_int: None,
    };
    let a = args.a.as_deref().map(parse_rat).transpose()?;
    let c = args.c.as_deref().map(parse_rat).transpose()?;
    if let Some(av) = &a {
        if case.free.is_empty() {
            // integer-family instance selector
            np.a_int = av
                .to_i64()
                .map(Some)
                .ok_or_else(|| CoreError::Usage(format!("{} needs integer a", args.id)))?;
        }
    }
    let mode = match args.mode.as_str() {
        "parametric" => {
            if a.is_some() && !case.free.is_empty() {
                // pinning a free parameter forces a single-sample run
                VerifyMode::Sampled { seed: args.seed, count: Some(1) }
            } else {
                VerifyMode::Parametric
            }
        }
        "sampled" => VerifyMode::Sampled { seed: args.seed, count: args.count },
        other => return Err(CoreError::Usage(format!("unknown mode {other:?}"))),
    };
    // a pinned free parameter replaces the sample stream
    let report = if let (Some(av), false) = (&a, case.free.is_empty()) {
        verify_pinned(&args.id, &np, av, c.as_ref(), args.order)?
    } else {
        verify(&args.id, &np, &mode, args.order, None)?
    };
    print_report(&report, args.json.as_ref())?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

/// Verification with the free parameters pinned to given rationals.
fn verify_pinned(
    id: &str,
    np: &NumParams,
    a: &Rat,
    c: Option<&Rat>,
    order: Option<usize>,
) -> Result<VerifyReport, CoreError> {
    use alghyp_core::registry::builders;
    use alghyp_core::ring::Ring;
    let case = find_case(id)?;
    let order = order.unwrap_or(case.default_order);
    let start = std::time::Instant::now();
    let fp = builders::FreeParams::<Rat>::numeric(
        a.clone(),
        c.cloned().unwrap_or_else(|| Rat::new(2, 5)),
        a.clone(),
        Rat::new(1, 2),
        c.cloned().unwrap_or_else(|| Rat::new(2, 5)),
    );
    let built = alghyp_core::registry::build_sides_pinned(id, np, &fp, order)?;
    let mut mismatch = None;
    for k in 0..=built.lhs.order().min(built.rhs.order()) {
        let d = built.lhs.c[k].sub(&built.rhs.c[k]);
        if !d.is_zero() {
            mismatch = Some(alghyp_core::registry::Mismatch {
                order: k,
                value: format!("{d}"),
            });
            break;
        }
    }
    Ok(VerifyReport {
        id: id.to_string(),
        mode: format!("SAMPLED at a={a}{}", c.map(|c| format!(", c={c}")).unwrap_or_default()),
        order,
        pass: mismatch.is_none(),
        first_mismatch: mismatch,
        ring: "Q".into(),
        branch_choices: built.branch_choices,
        millis: start.elapsed().as_millis(),
    })
}

fn cmd_genus(args: GenusArgs) -> Result<u8, CoreError> {
    let json = args.format == "json";
    if let Some(bound) = args.classify {
        if json {
            println!("{}", tables::classification_json(bound));
        } else {
            print!("{}", tables::classification_text(bound));
        }
        return Ok(EXIT_PASS);
    }
    if let Some(bound) = args.table {
        if json {
            println!("{}", tables::genus_table_json(bound));
        } else {
            print!("{}", tables::genus_table_text(bound));
        }
        return Ok(EXIT_PASS);
    }
    let (p, q, k) = match (args.p, args.q, args.k) {
        (Some(p), Some(q), Some(k)) => (p, q, k),
        _ => return Err(CoreError::Usage("genus needs p q k, --table, or --classify".into())),
    };
    let rep = genus(p, q, k)?;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "p": p, "q": q, "k": k,
                "genus": rep.genus,
                "hurwitz_genus": rep.hurwitz_genus,
            })
        );
    } else {
        println!("genus({p}, {q}, {k}) = {}", rep.genus);
    }
    Ok(EXIT_PASS)
}

fn cmd_belyi(args: BelyiArgs) -> Result<u8, CoreError> {
    let map = belyi_catalog(&args.id, args.p, args.q)?;
    println!("map {}: degree {}", args.id, map.degree());
    println!("  numerator:   {}", map.num);
    println!("  denominator: {}", map.den);
    let expected = match (args.id.as_str(), args.p, args.q) {
        ("pi2", Some(p), Some(q)) => Some(ram_profile(p, q, 2)),
        _ => None,
    };
    let rep = verify_belyi(&map, expected.as_ref());
    println!(
        "  ramified only over {{0, 1, infinity}}: {}",
        rep.ramified_only_over_base
    );
    println!("  profile over 0:   {:?}", rep.over_zero);
    println!("  profile over 1:   {:?}", rep.over_one);
    println!("  profile over inf: {:?}", rep.over_infinity);
    println!("  source genus (Riemann-Hurwitz): {}", rep.hurwitz_genus);
    if let Some(ok) = rep.profile_matches_expected {
        println!("  matches expected profile: {ok}");
    }
    Ok(if rep.pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_table(args: TableArgs) -> Result<u8, CoreError> {
    let json = args.format == "json";
    match args.name.as_str() {
        "table-2" => {
            let (p, q, k) = match (args.p, args.q, args.k) {
                (Some(p), Some(q), Some(k)) => (p, q, k),
                _ => return Err(CoreError::Usage("table-2 needs --p --q --k".into())),
            };
            if json {
                println!("{}", tables::branching_table_json(p, q, k)?);
            } else {
                print!("{}", tables::branching_table_text(p, q, k)?);
            }
        }
        "genus" => {
            if json {
                println!("{}", tables::genus_table_json(args.bound));
            } else {
                print!("{}", tables::genus_table_text(args.bound));
            }
        }
        "classification" => {
            if json {
                println!("{}", tables::classification_json(args.bound));
            } else {
                print!("{}", tables::classification_text(args.bound));
            }
        }
        other => return Err(CoreError::UnknownId(other.to_string())),
    }
    Ok(EXIT_PASS)
}

fn cmd_list() -> Result<u8, CoreError> {
    println!("identity catalog ({} entries):", list_identities().len());
    for c in list_identities() {
        println!(
            "  {:<14} {:<44} [{}; default order {}]",
            c.id, c.label, c.source, c.default_order
        );
    }
    println!("\ncovering-map catalog: {}", catalog_ids().join(", "));
    println!("\nsampling plan example: thm73-a at order 10 uses {} samples", sample_plan("thm73-a", 10)?);
    Ok(EXIT_PASS)
}
