//! `perdyn`: periodic points, wreath-product statistics, heights and bound
//! checkers from the command line.
//!
//! Exit codes: 0 when every report passes (or passes vacuously), 1 when any
//! report fails, 2 for usage errors and parameters outside a bound's hypotheses.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use perdyn_core::family::phi_disjoint;
use perdyn_core::ffield::{extension_field, field_of_order};
use perdyn_core::padyn::graph_stats;
use perdyn_core::verify::baseline::random_map_baseline;
use perdyn_core::verify::checks::{check_cor11, check_image_size, check_thm12, check_thm13, check_thm64};
use perdyn_core::verify::parse::{parse_elem, parse_field, parse_map, parse_points, spoly_in_field};
use perdyn_core::verify::{overall, write_csv, Report, Status};
use perdyn_core::wreath::{fix_n, fix_n_exact, fix_n_upper, juul_bound, ActionSpec, Family, FixValue, DEFAULT_BIT_CAP};
use perdyn_core::height::HeightCtx;
use perdyn_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "perdyn", version, about = "Periodic points of rational maps over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical field GF(p^r) and its modulus.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Functional-graph statistics of a map over GF(q), as JSON.
    Graph {
        #[arg(long)]
        q: u64,
        /// Map expression; `s` denotes the generator of GF(q).
        #[arg(long)]
        map: String,
    },
    /// Fixed-point proportion of the iterated wreath product.
    Wreath {
        /// Group family: S, A, D or C.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u32,
        /// Exact rational (fails if the denominator is too large).
        #[arg(long, conflicts_with = "upper")]
        exact: bool,
        /// Certified floating-point upper bound.
        #[arg(long)]
        upper: bool,
    },
    /// Height of an element of Q or F_q(s).
    Heights {
        /// `Q` or `F<q>(s)`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        elem: String,
    },
    /// The iterate depth for a map, critical set and place.
    Neps {
        #[arg(long)]
        field: String,
        #[arg(long)]
        map: String,
        /// Comma-separated points; `inf` is infinity.
        #[arg(long)]
        crit: String,
        #[arg(long)]
        eps: f64,
        /// Degree of a function-field place (norm q^deg).
        #[arg(long, conflicts_with = "place_norm")]
        place_deg: Option<u32>,
        /// Norm of the place.
        #[arg(long)]
        place_norm: Option<BigUint>,
    },
    /// Whether the orbits of the critical set stay pairwise distinct, over F_q(s).
    Disjoint {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        map: String,
        #[arg(long)]
        crit: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a bound checker.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Cyclic points of random self-maps against the exact expectation.
    Baseline {
        #[arg(long)]
        points: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    /// Write every report row to this CSV file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Check {
    /// Image size of X^d + c against the effective image-size bound.
    ImageSize {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        /// Constant term; `s` denotes the generator of GF(q).
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Periodic proportion of X^d + alpha^m for every generator alpha of GF(q^r).
    Thm12 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Average periodic proportion over all quadratics over GF(q^r).
    Thm13 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Average periodic proportion over all quadratics over GF(p^r), p prime.
    Cor11 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Average periodic proportion of X^d + beta over the m-th powers beta.
    Thm64 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Out,
    },
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Writes the reports (to `--out` if given, else to stdout) and returns the exit code.
fn emit(reports: &[Report], summary: Option<&Report>, out: &Out) -> Result<u8, Error> {
    match &out.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            write_csv(file, reports)?;
            let shown = summary.map_or(reports, std::slice::from_ref);
            write_csv(io::stdout().lock(), shown)?;
        }
        None => write_csv(io::stdout().lock(), reports)?,
    }
    Ok(match overall(reports) {
        Status::Pass | Status::VacuousPass => 0,
        Status::Fail => 1,
        Status::OutOfHypothesis => 2,
    })
}

/// Runs a checker, reporting a hypothesis failure as a row with that status.
fn check_one(name: &str, params: String, out: &Out, r: Result<Report, Error>) -> Result<u8, Error> {
    match r {
        Ok(report) => emit(&[report], None, out),
        Err(Error::OutOfHypothesis(msg)) => {
            eprintln!("{name}: {msg}");
            emit(&[Report::out_of_hypothesis(name, params)], None, out)
        }
        Err(e) => Err(e),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Field { p, r } => {
            let ctx = extension_field(p, r)?;
            println!("{ctx}");
            println!("modulus (lowest degree first): {:?}", ctx.modulus());
            println!("order: {}", ctx.q());
            Ok(0)
        }
        Command::Graph { q, map } => {
            let ctx = field_of_order(q)?;
            let phi = parse_map(&map)?.to_rational_map(&ctx)?;
            let stats = graph_stats(&phi.successor_table());
            let mut v = serde_json::to_value(&stats).expect("serializable");
            v["map"] = json!(phi.display());
            v["degree"] = json!(phi.degree());
            print_json(&v);
            Ok(0)
        }
        Command::Wreath { family, d, n, exact, upper } => {
            let spec = ActionSpec::new(family, d)?;
            let (mode, value, approx) = if exact {
                let v = fix_n_exact(&spec, n, DEFAULT_BIT_CAP)?;
                ("exact", v.to_string(), perdyn_core::verify::rational_to_f64(&v))
            } else if upper {
                let u = fix_n_upper(&spec, n);
                ("upper", u.to_string(), u)
            } else {
                match fix_n(&spec, n, DEFAULT_BIT_CAP) {
                    FixValue::Exact(v) => ("exact", v.to_string(), perdyn_core::verify::rational_to_f64(&v)),
                    FixValue::Upper(u) => ("upper", u.to_string(), u),
                }
            };
            let bound = juul_bound(family, d, n).ok();
            print_json(&json!({
                "family": family.to_string(),
                "d": d,
                "n": n,
                "mode": mode,
                "fix_n": value,
                "fix_n_approx": approx,
                "bound": bound,
            }));
            Ok(0)
        }
        Command::Heights { field, elem } => {
            let ctx = parse_field(&field)?;
            let x = parse_elem(&elem)?.to_global(&ctx)?;
            let h = ctx.height(&x);
            let support: Vec<String> = if x.is_zero() {
                Vec::new()
            } else {
                ctx.support(&x).iter().map(|p| p.display()).collect()
            };
            print_json(&json!({
                "field": ctx.name(),
                "elem": x.to_string(),
                "height": h.to_string(),
                "height_approx": perdyn_core::verify::rational_to_f64(&h),
                "support": support,
            }));
            Ok(0)
        }
        Command::Neps { field, map, crit, eps, place_deg, place_norm } => {
            let ctx = parse_field(&field)?;
            let fam = parse_map(&map)?.to_family_map(&ctx)?;
            let crit = parse_points(&ctx, &crit)?;
            let norm = match (place_deg, place_norm) {
                (Some(deg), None) => match &ctx {
                    HeightCtx::FunctionField(k) => k.q().pow(deg),
                    HeightCtx::Rationals => {
                        return Err(Error::Invalid("use --place-norm over Q".into()));
                    }
                },
                (None, Some(n)) => n,
                _ => return Err(Error::Invalid("give one of --place-deg and --place-norm".into())),
            };
            let v = ctx.n_eps(fam.num(), fam.den(), &crit, eps, &norm)?;
            print_json(&json!({
                "place_norm": norm.to_string(),
                "n_eps": v.value,
                "pre_floor": v.pre_floor,
                "extended_precision": v.extended,
                "usable": v.usable(),
            }));
            Ok(0)
        }
        Command::Disjoint { q, map, crit, n } => {
            let ctx = HeightCtx::function_field(q)?;
            let fam = parse_map(&map)?.to_family_map(&ctx)?;
            let crit = parse_points(&ctx, &crit)?;
            let d = phi_disjoint(&fam, &crit, n)?;
            let witness = d.witness.map(|(g1, m1, g2, m2)| {
                json!({"gamma1": g1.to_string(), "m1": m1, "gamma2": g2.to_string(), "m2": m2})
            });
            print_json(&json!({"disjoint": d.disjoint, "n": n, "witness": witness}));
            Ok(0)
        }
        Command::Baseline { points, trials, seed, out } => {
            let report = random_map_baseline(points, trials, seed)?;
            emit(&[report], None, &out)
        }
        Command::Check { check } => match check {
            Check::ImageSize { q, d, c, n, out } => {
                let ctx = field_of_order(q)?;
                let e = parse_elem(&c)?;
                if e.den != vec![1.into()] {
                    return Err(Error::Invalid("the constant term must be a polynomial in s".into()));
                }
                let c = spoly_in_field(&ctx, &e.num);
                let params = format!("q={q};d={d};c={};n={n}", ctx.index_of(&c));
                check_one("image-size", params, &out, check_image_size(&ctx, d, &c, n))
            }
            Check::Thm12 { q, r, d, m, out } => {
                let params = format!("q={q};r={r};d={d};m={m}");
                match check_thm12(q, r, d, m) {
                    Ok(sweep) => {
                        let mut rows = sweep.per_param;
                        rows.push(sweep.aggregate.clone());
                        emit(&rows, Some(&sweep.aggregate), &out)
                    }
                    Err(e) => check_one("thm12", params, &out, Err(e)),
                }
            }
            Check::Thm13 { q, r, out } => check_one("thm13", format!("q={q};r={r}"), &out, check_thm13(q, r)),
            Check::Cor11 { p, r, out } => check_one("cor11", format!("p={p};r={r}"), &out, check_cor11(p, r)),
            Check::Thm64 { q, r, d, m, out } => {
                check_one("thm64", format!("q={q};r={r};d={d};m={m}"), &out, check_thm64(q, r, d, m))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => {
            let _ = io::stdout().flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
