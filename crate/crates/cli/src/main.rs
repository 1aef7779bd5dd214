use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use homog_core::classify::{classify_domain, classify_ideal};
use homog_core::homog::{describe_factorization, factor_invertible, factor_principal, gcd_star, GcdOutcome};
use homog_core::verify::{run_suite, Mutation, SuiteConfig};
use homog_core::{Domain, Ideal, StarOp};

mod render;

#[derive(Parser)]
#[command(name = "homog", version, about = "Star-homogeneous ideal factorization over computable domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a principal or star-invertible ideal into comaximal homog factors.
    Factor(FactorArgs),
    /// Classify an ideal (type 1, type 2, super, f, af, wf, waf).
    Classify(ClassifyArgs),
    /// Domain-level flags over a sample of elements.
    DomainReport(DomainReportArgs),
    /// The star-gcd (a, b)* and its local factors.
    Gcd(GcdArgs),
    /// Run the randomized property suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Domain spec file (JSON).
    #[arg(long)]
    domain: PathBuf,
    /// Star operation: d, v, t or w.
    #[arg(long, default_value = "t")]
    star: StarOp,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false, args = ["element", "ideal"])]
struct Input {
    /// Element literal such as "1+1*w" or "{p:2}".
    #[arg(long)]
    element: Option<String>,
    /// Ideal literal such as "[2, 1+1*w]" or "{p:1,q:1}".
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    input: Input,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    input: Input,
    /// Search bound when the class group is unavailable.
    #[arg(long, default_value_t = 32)]
    bound: u32,
}

#[derive(Args)]
struct DomainReportArgs {
    #[command(flatten)]
    common: Common,
    /// Sample element (repeatable).
    #[arg(long = "element", required = true)]
    elements: Vec<String>,
    #[arg(long, default_value_t = 32)]
    bound: u32,
}

#[derive(Args)]
struct GcdArgs {
    #[command(flatten)]
    common: Common,
    /// The two elements a and b.
    #[arg(long = "element", required = true, num_args = 1)]
    elements: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    SkipMergeInRegroup,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    domain: PathBuf,
    /// Star operations to test, comma separated, or "all".
    #[arg(long, default_value = "t")]
    star: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 5)]
    coeff_range: i64,
    #[arg(long, default_value_t = 10_000)]
    norm_cap: u64,
    #[arg(long, default_value_t = 32)]
    bound: u32,
    /// Run only this check (repeatable).
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Negative control: break the implementation on purpose.
    #[arg(long, value_enum, hide = true)]
    mutation: Option<MutationArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_domain(path: &Path) -> anyhow::Result<Domain> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read domain file {}", path.display()))?;
    Domain::from_json(&text).with_context(|| format!("invalid domain file {}", path.display()))
}

fn write_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

/// The ideal named by `--element` or `--ideal`, and whether it came from an element.
fn input_ideal(dom: &Domain, input: &Input) -> anyhow::Result<Ideal> {
    match (&input.element, &input.ideal) {
        (Some(e), None) => Ok(dom.principal(&dom.parse_element(e)?)?),
        (None, Some(i)) => Ok(dom.parse_ideal(i)?),
        _ => bail!("give exactly one of --element or --ideal"),
    }
}

fn factor(args: FactorArgs) -> anyhow::Result<ExitCode> {
    let dom = load_domain(&args.common.domain)?;
    let star = args.common.star;
    let (input, fac) = match (&args.input.element, &args.input.ideal) {
        (Some(e), _) => {
            let x = dom.parse_element(e)?;
            (dom.principal(&x)?, factor_principal(&dom, &x, star)?)
        }
        _ => {
            let i = input_ideal(&dom, &args.input)?;
            let fac = factor_invertible(&dom, &i, star)?;
            (i, fac)
        }
    };
    let report = describe_factorization(&dom, &input, &fac)?;
    print!("{}", render::factorization(&report, args.input.element.as_deref()));
    write_json(args.common.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn classify(args: ClassifyArgs) -> anyhow::Result<ExitCode> {
    let dom = load_domain(&args.common.domain)?;
    let i = input_ideal(&dom, &args.input)?;
    let report = classify_ideal(&dom, &i, args.common.star, args.bound)?;
    print!("{}", render::type_report(&dom.name(), &report));
    write_json(args.common.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn domain_report(args: DomainReportArgs) -> anyhow::Result<ExitCode> {
    let dom = load_domain(&args.common.domain)?;
    let sample = args
        .elements
        .iter()
        .map(|e| dom.parse_element(e))
        .collect::<Result<Vec<_>, _>>()?;
    let report = classify_domain(&dom, args.common.star, &sample, args.bound)?;
    print!("{}", render::domain_report(&report));
    write_json(args.common.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn gcd(args: GcdArgs) -> anyhow::Result<ExitCode> {
    if args.elements.len() != 2 {
        bail!("gcd needs exactly two --element values, got {}", args.elements.len());
    }
    let dom = load_domain(&args.common.domain)?;
    let a = dom.parse_element(&args.elements[0])?;
    let b = dom.parse_element(&args.elements[1])?;
    let g = gcd_star(&dom, &a, &b, args.common.star)?;
    let names = |ms: &[homog_core::MaxIdeal]| ms.iter().map(|m| dom.format_ideal(&m.ideal)).collect::<Vec<_>>();
    let report = match &g.outcome {
        GcdOutcome::Factors(f) => render::GcdReport {
            domain: dom.name(),
            star: args.common.star,
            a: dom.format_element(&a),
            b: dom.format_element(&b),
            ideal: dom.format_ideal(&g.ideal),
            comaximal: false,
            factors: Some(describe_factorization(&dom, &g.ideal, f)?),
            maximals_a: Vec::new(),
            maximals_b: Vec::new(),
        },
        GcdOutcome::UnitWitness { maximals_a, maximals_b } => render::GcdReport {
            domain: dom.name(),
            star: args.common.star,
            a: dom.format_element(&a),
            b: dom.format_element(&b),
            ideal: dom.format_ideal(&g.ideal),
            comaximal: true,
            factors: None,
            maximals_a: names(maximals_a),
            maximals_b: names(maximals_b),
        },
    };
    print!("{}", render::gcd(&report));
    write_json(args.common.out.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_stars(text: &str) -> anyhow::Result<Vec<StarOp>> {
    if text.trim() == "all" {
        return Ok(StarOp::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        let s: StarOp = part.parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let dom = load_domain(&args.domain)?;
    let cfg = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        coeff_range: args.coeff_range,
        norm_cap: args.norm_cap,
        stars: parse_stars(&args.star)?,
        bound: args.bound,
        mutation: args.mutation.map(|MutationArg::SkipMergeInRegroup| Mutation::SkipMergeInRegroup),
        only: args.checks,
    };
    let report = run_suite(&dom, &cfg)?;
    print!("{}", render::verify(&report));
    write_json(args.out.as_deref(), &report)?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Factor(a) => factor(a),
        Command::Classify(a) => classify(a),
        Command::DomainReport(a) => domain_report(a),
        Command::Gcd(a) => gcd(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
