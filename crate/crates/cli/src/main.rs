//! Command-line front end: one-shot computations over the symbolic engine
//! and the named verification suites.

mod parser;
mod report;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use genkac_core::coeff;
use genkac_core::delta::{self, Orientation, Region, SplitScheme, Window};
use genkac_core::diffop::sl3_act;
use genkac_core::funm::to_list_form;
use genkac_core::gv::{bracket_gv, grade_gv};
use genkac_core::sl2::affine_bracket_sl2;
use genkac_core::sl3::{bracket_sl3, Sl3Tag};
use serde_json::json;

use parser::{parse, parse_point, ParseError, Value};

#[derive(Parser)]
#[command(
    name = "genkac",
    version,
    about = "Exact symbolic engine for generalized affine Kac-Moody and Virasoro algebras on the SL(3) big-cell intersection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Gv,
    Vir,
    Sl3,
    Sl2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    D1,
    D2,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Paper,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum HalfArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to canonical form, optionally at a point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Rational point `a,b,c` off the divisors c=0 and c=ab.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lie bracket in the chosen algebra.
    Bracket {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Residue of a function (coefficient of phi) or Laurent polynomial.
    Residue {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Invariant pairing <f, g> = Res(f g).
    Pair {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Apply the modified sl3 action xi_x.
    Act {
        #[arg(long)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Bidegree of a homogeneous function or loop element.
    Grade {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Weyl substitution a -> -b/q, b -> a/c, c -> 1/c.
    W0 {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Dual basis of the window's plus monomials.
    Dual {
        /// Window bounds `N,M,Kmin,Kmax,Lmin,Lmax`.
        #[arg(long)]
        window: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Truncated generalized delta function over a window.
    Delta {
        #[arg(long)]
        window: String,
        #[arg(long, value_enum, default_value = "plus")]
        half: HalfArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Factor-wise expansion of F(z, w) with the delta comparison report.
    ExpandF {
        #[arg(long)]
        order: i64,
        #[arg(long, value_enum, default_value = "d1")]
        region: RegionArg,
        #[arg(long, value_enum, default_value = "paper")]
        split: SplitArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a named verification suite, or all of them.
    Verify {
        /// Suite id; omit with --all.
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Case count; 0 keeps each suite's default.
        #[arg(long, default_value_t = 0)]
        cases: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// List available suite ids and exit.
        #[arg(long)]
        list: bool,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {}", msg);
    std::process::exit(2);
}

fn parse_or_exit(src: &str) -> Value {
    match parse(src) {
        Ok(v) => v,
        Err(e) => usage_error(e),
    }
}

fn fun_or_exit(src: &str) -> genkac_core::FunM {
    match parse(src).and_then(Value::into_fun) {
        Ok(f) => f,
        Err(e) => usage_error(e),
    }
}

fn parse_window(src: &str) -> Window {
    let parts: Vec<i64> = src
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .unwrap_or_else(|_| usage_error("window must be six integers N,M,Kmin,Kmax,Lmin,Lmax"));
    if parts.len() != 6 {
        usage_error("window must be six integers N,M,Kmin,Kmax,Lmin,Lmax");
    }
    if parts[0] < 0 || parts[1] < 0 || parts[2] > parts[3] || parts[4] > parts[5] {
        usage_error("degenerate window bounds");
    }
    Window::new(parts[0], parts[1], parts[2], parts[3], parts[4], parts[5])
}

fn main() {
    // Die quietly on a closed pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, at, format } => {
            let v = parse_or_exit(&expr);
            match at {
                None => match format {
                    Format::Text => println!("{}", v),
                    Format::Json => match &v {
                        Value::Fun(f) => {
                            println!("{}", json!({ "terms": to_list_form(f) }))
                        }
                        other => println!("{}", json!({ "value": format!("{}", other) })),
                    },
                },
                Some(point_src) => {
                    let point = match parse_point(&point_src) {
                        Ok(p) => p,
                        Err(e) => usage_error(e),
                    };
                    let f = match v.into_fun() {
                        Ok(f) => f,
                        Err(e) => usage_error(e),
                    };
                    match f.evaluate(&point) {
                        Ok(val) => println!("{}", coeff::display(&val)),
                        Err(e) => usage_error(e),
                    }
                }
            }
        }
        Command::Bracket { algebra, lhs, rhs } => {
            let l = parse_or_exit(&lhs);
            let r = parse_or_exit(&rhs);
            let out = match algebra {
                Algebra::Gv => {
                    let (x, y) = match (l.into_gv(), r.into_gv()) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => usage_error(e),
                    };
                    format!("{}", bracket_gv(&x, &y))
                }
                Algebra::Vir => {
                    let (x, y) = match (l.into_vir(), r.into_vir()) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => usage_error(e),
                    };
                    format!("{}", x.bracket(&y))
                }
                Algebra::Sl3 => {
                    let (x, y) = match (l.into_sl3(), r.into_sl3()) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => usage_error(e),
                    };
                    format!("{}", bracket_sl3(&x, &y))
                }
                Algebra::Sl2 => {
                    let (x, y) = match (l.into_sl2(), r.into_sl2()) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => usage_error(e),
                    };
                    format!("{}", affine_bracket_sl2(&x, &y))
                }
            };
            println!("{}", out);
        }
        Command::Residue { expr } => match parse_or_exit(&expr) {
            Value::Fun(f) => println!("{}", coeff::display(&f.residue())),
            Value::Rat(_) => println!("0"),
            Value::Lau(l) => println!("{}", coeff::display(&genkac_core::sl2::residue_1d(&l))),
            other => usage_error(ParseError::Type(format!(
                "residue expects a function or Laurent polynomial, got a {}",
                other.type_name()
            ))),
        },
        Command::Pair { lhs, rhs } => {
            let f = fun_or_exit(&lhs);
            let g = fun_or_exit(&rhs);
            println!("{}", coeff::display(&f.pair(&g)));
        }
        Command::Act { x, expr } => {
            let tag = Sl3Tag::from_name(&x)
                .unwrap_or_else(|| usage_error(format!("unknown sl3 tag: {}", x)));
            let f = fun_or_exit(&expr);
            println!("{}", sl3_act(tag, &f));
        }
        Command::Grade { expr } => match parse_or_exit(&expr) {
            Value::Fun(f) => match f.bidegree() {
                Ok(d) => println!("{}", d),
                Err(e) => usage_error(e),
            },
            Value::Rat(_) => println!("(0, 0)"),
            Value::Gv(g) => match grade_gv(&g) {
                Ok(d) => println!("{}", d),
                Err(e) => usage_error(e),
            },
            other => usage_error(ParseError::Type(format!(
                "grade expects a function or loop element, got a {}",
                other.type_name()
            ))),
        },
        Command::W0 { expr } => {
            let f = fun_or_exit(&expr);
            println!("{}", f.weyl_substitute());
        }
        Command::Dual { window, format } => {
            let w = parse_window(&window);
            match delta::dual_basis(&w, Orientation::Plus) {
                Ok(trunc) => emit_pairs(&trunc, format),
                Err(e) => usage_error(e),
            }
        }
        Command::Delta {
            window,
            half,
            format,
        } => {
            let w = parse_window(&window);
            let orientation = match half {
                HalfArg::Plus => Orientation::Plus,
                HalfArg::Minus => Orientation::Minus,
            };
            match delta::dual_basis(&w, orientation) {
                Ok(trunc) => emit_pairs(&trunc, format),
                Err(e) => usage_error(e),
            }
        }
        Command::ExpandF {
            order,
            region,
            split,
            format,
        } => {
            if order < 0 {
                usage_error("order must be nonnegative");
            }
            let region = match region {
                RegionArg::D1 => Region::D1,
                RegionArg::D2 => Region::D2,
            };
            let scheme = match split {
                SplitArg::Paper => SplitScheme::Paper,
                SplitArg::Exact => SplitScheme::Exact,
            };
            match delta::expand_f(order, region, scheme) {
                Ok(rep) => emit_expand(&rep, format),
                Err(e) => usage_error(e),
            }
        }
        Command::Verify {
            suite,
            all,
            seed,
            cases,
            format,
            list,
        } => {
            if list {
                for s in suites::registry() {
                    println!("{:32} {}", s.id, s.about);
                }
                return;
            }
            let to_run: Vec<suites::Suite> = if all {
                suites::registry()
            } else {
                match suite {
                    Some(id) => match suites::find(&id) {
                        Some(s) => vec![s],
                        None => usage_error(format!("unknown suite: {}", id)),
                    },
                    None => usage_error("give a suite id or --all"),
                }
            };
            let mut failed_any = false;
            let mut json_reports = Vec::new();
            for s in &to_run {
                let r = suites::run_suite(s, seed, cases);
                if r.exit_code() != 0 {
                    failed_any = true;
                }
                match format {
                    Format::Text => print!("{}", report::report_text(&r)),
                    Format::Json => json_reports.push(report::report_json(&r)),
                }
            }
            if matches!(format, Format::Json) {
                if json_reports.len() == 1 {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json_reports[0]).unwrap()
                    );
                } else {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::Value::Array(json_reports))
                            .unwrap()
                    );
                }
            }
            std::process::exit(if failed_any { 1 } else { 0 });
        }
    }
}

fn emit_pairs(trunc: &delta::DeltaTrunc, format: Format) {
    match format {
        Format::Text => {
            let orient = match trunc.orientation {
                Orientation::Plus => "plus",
                Orientation::Minus => "minus",
            };
            println!("orientation: {}", orient);
            for (mono, dual) in &trunc.pairs {
                println!("{}  |  {}", genkac_core::FunM::monomial(*mono), dual);
            }
        }
        Format::Json => {
            let pairs: Vec<serde_json::Value> = trunc
                .pairs
                .iter()
                .map(|(m, d)| {
                    json!({
                        "mono": [m.n, m.m, m.k, m.l],
                        "dual": to_list_form(d),
                    })
                })
                .collect();
            let orient = match trunc.orientation {
                Orientation::Plus => "plus",
                Orientation::Minus => "minus",
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "orientation": orient, "pairs": pairs }))
                    .unwrap()
            );
        }
    }
}

fn emit_expand(rep: &delta::ExpandReport, format: Format) {
    match format {
        Format::Text => {
            println!(
                "region: {:?}; split: {:?}; order: {}; split identity holds: {}",
                rep.region, rep.scheme, rep.order, rep.split_identity_holds
            );
            println!("F-side terms: {}", rep.terms.len());
            for t in &rep.terms {
                println!(
                    "  {} * {} (x) {}",
                    coeff::display(&t.coeff),
                    delta::z_label(&t.z),
                    delta::w_label(&t.w)
                );
            }
            println!("delta-side terms: {}", rep.delta_terms.len());
            for t in &rep.delta_terms {
                println!(
                    "  {} * {} (x) {}",
                    coeff::display(&t.coeff),
                    delta::z_label(&t.z),
                    delta::w_label(&t.w)
                );
            }
            println!("diff:");
            for d in &rep.diffs {
                let status = if d.equal { "match" } else { "MISMATCH" };
                println!("  w-mono {}: {}", delta::w_label(&d.w), status);
                if !d.equal {
                    let side = |v: &Vec<(coeff::Coeff, [i64; 4])>| {
                        v.iter()
                            .map(|(c, z)| format!("{} {}", coeff::display(c), delta::z_label(z)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    println!("    F side:     [{}]", side(&d.lhs));
                    println!("    delta side: [{}]", side(&d.rhs));
                }
            }
        }
        Format::Json => {
            let term_json = |t: &delta::ZwTerm| {
                json!({
                    "coeff": coeff::display(&t.coeff),
                    "z": t.z,
                    "w": t.w,
                })
            };
            let diff_json: Vec<serde_json::Value> = rep
                .diffs
                .iter()
                .map(|d| {
                    let side = |v: &Vec<(coeff::Coeff, [i64; 4])>| {
                        v.iter()
                            .map(|(c, z)| json!({ "coeff": coeff::display(c), "z": z }))
                            .collect::<Vec<_>>()
                    };
                    json!({
                        "w": d.w,
                        "lhs": side(&d.lhs),
                        "rhs": side(&d.rhs),
                        "equal": d.equal,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "region": format!("{:?}", rep.region),
                    "split": format!("{:?}", rep.scheme),
                    "order": rep.order,
                    "split_identity_holds": rep.split_identity_holds,
                    "terms": rep.terms.iter().map(term_json).collect::<Vec<_>>(),
                    "delta_terms": rep.delta_terms.iter().map(term_json).collect::<Vec<_>>(),
                    "diff": diff_json,
                }))
                .unwrap()
            );
        }
    }
}
