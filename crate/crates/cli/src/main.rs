use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hsc_core::codes::{
    bz_min_distance, column_min_distance, exhaustive_min_distance, DistanceReport, LinearCode,
};
use hsc_core::harness::{
    conic_census, min_distance_auto, reports_to_csv, reproduce_published, verify, Claim, CodeContext, Status,
    VerificationReport, VerifyOptions, DEFAULT_BUDGET,
};
use hsc_core::Error;

#[derive(Parser)]
#[command(name = "hsc", version, about = "Build and verify Hermitian-Singer AG codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Columns,
    Bz,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Functional,
    Subcode,
    Differential,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Prime power q (3, 4, 5 within the table cap).
    #[arg(long)]
    q: u64,
    /// Index of the curve carrying the code.
    #[arg(long, default_value_t = 0)]
    tau_index: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct CodeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    lambda: u32,
    #[arg(long, value_enum, default_value_t = Kind::Functional)]
    code: Kind,
}

#[derive(Subcommand)]
enum Command {
    /// Build a generator matrix.
    BuildCode(CodeArgs),
    /// Minimum distance of a built code.
    MinDist {
        #[command(flatten)]
        args: CodeArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Check claims and report PASS/FAIL per claim.
    Verify {
        #[command(flatten)]
        common: Common,
        /// A claim tag, `geometry` or `all`.
        #[arg(long, default_value = "all")]
        claim: String,
        /// Restrict λ-dependent claims to one value.
        #[arg(long)]
        lambda: Option<u32>,
        /// Seed for randomized control codes.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Curve family, orbits and the geometric claims.
    Geometry {
        #[command(flatten)]
        common: Common,
    },
    /// Conics through at least seven points of the first orbit of the domain.
    Conics {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 7)]
        threshold: usize,
    },
    /// Match the published q = 4 canonical-frame data and distances.
    ReproducePaper {
        #[command(flatten)]
        common: Common,
    },
}

fn emit(common: &Common, text: String) -> Result<(), Error> {
    match &common.out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn build(ctx: &CodeContext, args: &CodeArgs) -> Result<LinearCode, Error> {
    match args.code {
        Kind::Functional => ctx.lambda_code(args.lambda),
        Kind::Subcode => ctx.subcode(),
        Kind::Differential => Ok(ctx.differential()),
    }
}

fn render_reports(common: &Common, reports: &[VerificationReport]) -> Result<String, Error> {
    Ok(match common.format {
        Format::Json => serde_json::to_string_pretty(reports)? + "\n",
        Format::Csv => reports_to_csv(reports),
        Format::Text => reports.iter().map(|r| r.text_line() + "\n").collect(),
    })
}

fn exit_for(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

fn distance(code: &LinearCode, method: MethodArg, c: &Common) -> Result<DistanceReport, Error> {
    match method {
        MethodArg::Exhaustive => exhaustive_min_distance(code, c.budget, c.threads),
        MethodArg::Columns => column_min_distance(code, c.budget, c.threads),
        MethodArg::Bz => Ok(bz_min_distance(code, c.budget, None)),
        MethodArg::Auto => Ok(min_distance_auto(code, c.budget, c.threads, None)),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::BuildCode(args) => {
            let c = &args.common;
            let ctx = CodeContext::new(c.q, c.tau_index)?;
            let code = build(&ctx, &args)?;
            let text = match c.format {
                Format::Json => serde_json::to_string_pretty(&code.export())? + "\n",
                Format::Csv => code.to_csv(),
                Format::Text => format!(
                    "[{}, {}] code over F_{} ({:?})\n{}",
                    code.n(),
                    code.k(),
                    code.field().order(),
                    code.provenance,
                    code.to_csv()
                ),
            };
            emit(c, text)?;
            Ok(0)
        }
        Command::MinDist { args, method } => {
            let c = &args.common;
            let ctx = CodeContext::new(c.q, c.tau_index)?;
            let code = build(&ctx, &args)?;
            let r = distance(&code, method, c)?;
            let text = match c.format {
                Format::Json => serde_json::to_string_pretty(&json!({"n": code.n(), "k": code.k(), "distance": r}))? + "\n",
                Format::Csv => format!(
                    "n,k,lower,upper,method,elapsed_ms\n{},{},{},{},{:?},{:.1}\n",
                    code.n(),
                    code.k(),
                    r.lower,
                    r.upper,
                    r.method,
                    r.elapsed_ms
                ),
                Format::Text => format!(
                    "[{}, {}] {} <= d <= {} by {:?} in {:.0} ms\n",
                    code.n(),
                    code.k(),
                    r.lower,
                    r.upper,
                    r.method,
                    r.elapsed_ms
                ),
            };
            emit(c, text)?;
            Ok(0)
        }
        Command::Verify {
            common,
            claim,
            lambda,
            seed,
        } => {
            let claims = Claim::parse(&claim, common.q)?;
            let opts = VerifyOptions {
                budget: common.budget,
                threads: common.threads,
                tau: common.tau_index,
                lambda,
                seed,
            };
            let reports = verify(&claims, common.q, &opts)?;
            emit(&common, render_reports(&common, &reports)?)?;
            Ok(exit_for(&reports))
        }
        Command::Geometry { common } => {
            let opts = VerifyOptions {
                tau: common.tau_index,
                ..VerifyOptions::default()
            };
            let reports = verify(&Claim::parse("geometry", common.q)?, common.q, &opts)?;
            emit(&common, render_reports(&common, &reports)?)?;
            Ok(exit_for(&reports))
        }
        Command::Conics { common, threshold } => {
            let ctx = CodeContext::new(common.q, common.tau_index)?;
            let f = ctx.geo.tower();
            let pts: Vec<_> = ctx.dom.orbits[0]
                .indices
                .iter()
                .map(|&i| ctx.geo.plane().point(i))
                .collect();
            let census = conic_census(f, &pts, ctx.geo.plane().points(), threshold);
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "orbit_size": pts.len(),
                    "distinct": census.distinct,
                    "threshold": threshold,
                    "max_incidence": census.max_incidence,
                    "irreducible": census.rich_irreducible,
                    "conics": census.rich.iter().map(|c| json!({
                        "coefficients": c.form.to_vector().iter().map(|x| f.log(*x)).collect::<Vec<_>>(),
                        "incident": c.incident,
                    })).collect::<Vec<_>>(),
                }))? + "\n",
                Format::Csv | Format::Text => {
                    let mut s = format!(
                        "{} conics with >= {} of {} orbit points; max incidence {}\n",
                        census.rich.len(),
                        threshold,
                        pts.len(),
                        census.max_incidence
                    );
                    for c in &census.rich {
                        s.push_str(&format!("{:?}\n", c.incident));
                    }
                    s
                }
            };
            emit(&common, text)?;
            Ok(0)
        }
        Command::ReproducePaper { common } => {
            let claims = if common.q == 4 {
                vec![Claim::CanonicalFrame, Claim::ConicCensus, Claim::DifferentialCode]
            } else {
                vec![Claim::CanonicalFrame, Claim::DifferentialCode]
            };
            let opts = VerifyOptions {
                budget: common.budget,
                threads: common.threads,
                tau: common.tau_index,
                ..VerifyOptions::default()
            };
            let reports = verify(&claims, common.q, &opts)?;
            let mut text = render_reports(&common, &reports)?;
            if common.q == 4 && matches!(common.format, Format::Json) {
                let ctx = CodeContext::new(common.q, common.tau_index)?;
                let rep = reproduce_published(&ctx.geo)?;
                text = serde_json::to_string_pretty(&json!({"reports": reports, "canonical": rep}))? + "\n";
            }
            emit(&common, text)?;
            Ok(exit_for(&reports))
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownClaim(_)
            | Error::BadParameter(_)
            | Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::QTooSmall(_)
            | Error::CapExceeded { .. }
            | Error::LambdaOutOfRange { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
