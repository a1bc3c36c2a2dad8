//! `hopfpi`: build example π-coalgebras, run verification suites, and
//! import/export structure constants as JSON.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hopfpi::double::{dual_action, DualBases, TwistedDouble};
use hopfpi::finite::{build_an_coalgebra, build_dg, default_gl_colors, FiniteGroupTable};
use hopfpi::hopf::PairingTable;
use hopfpi::io::{
    action_from_json, bundle_summary, bundle_to_single_json, group_from_descriptor, materialize, read_bundle, hopf_from_json, matrix_from_json,
    read_json, write_bundle, write_json, AnyBundle, AnyGroup, Bundle,
};
use hopfpi::pi::{verify_all, GroupOracle, HopfPiCoalgebra, Suite};
use hopfpi::report::VerificationReport;
use hopfpi::scalars::ScalarField;
use hopfpi::sl2::{parse_color, run_sl2_checks, standard_grid, Sl2Check};

#[derive(Parser)]
#[command(name = "hopfpi", version, about = "Exact construction and verification of Hopf group-coalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a π-coalgebra bundle
    #[command(subcommand)]
    Build(BuildCmd),
    /// Run verification suites on a bundle, or the sl2 checks
    Verify(VerifyCmd),
    /// Write a bundle as one JSON file
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a bundle
    Inspect {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// The twisted double of k[G] under conjugation
    Dg {
        /// z2, z4, zN, s3 or table:FILE
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// The quotient of the double of A_n, over GL_n
    An {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "q")]
        field: String,
        /// Colors to materialize, separated by ';' (default: a built-in GL_n test set)
        #[arg(long)]
        colors: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// The twisted double of a Hopf pairing under a group action
    Double {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Colors to materialize, separated by ';' (default: every element of a finite group)
        #[arg(long)]
        colors: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct VerifyCmd {
    #[command(subcommand)]
    sl2: Option<VerifySub>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// hopf (alias picoalgebra), crossing, qt, rderived, ybe, ribbon or all; comma separated
    #[arg(long, default_value = "all")]
    suite: String,
    /// `all` or color keys separated by ';'
    #[arg(long, default_value = "all")]
    colors: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum VerifySub {
    /// Truncated h-adic checks on sl2 representations
    Sl2 {
        /// Leg dimensions, one to three of them
        #[arg(long, value_delimiter = ',', default_value = "2,2,2")]
        n: Vec<usize>,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long, default_value_t = 6)]
        prec: usize,
        /// Run the full grid over the colors {0, 1, h, 1+2h} instead
        #[arg(long)]
        grid: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return fail(e);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(e),
    }
}

fn fail(e: anyhow::Error) -> ExitCode {
    let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
    eprintln!("{}", json!({ "error": chain.join(": ") }));
    ExitCode::from(2)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HOPFPI_THREADS") {
        let n: usize = v.parse().with_context(|| format!("HOPFPI_THREADS must be a positive integer, got '{v}'"))?;
        if n == 0 {
            bail!("HOPFPI_THREADS must be a positive integer, got '0'");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build(b) => build(b).map(|_| true),
        Command::Verify(v) => verify(v),
        Command::Export { input, out } => {
            let v = bundle_to_single_json(&input)?;
            write_json(&out, &v)?;
            Ok(true)
        }
        Command::Inspect { input } => {
            let summary = match read_bundle(&input)? {
                AnyBundle::Trivial(b) => bundle_summary(&b)?,
                AnyBundle::Finite(b) => bundle_summary(&b)?,
                AnyBundle::Gl(b) => bundle_summary(&b)?,
            };
            write_stdout(&(serde_json::to_string_pretty(&summary)? + "\n"))?;
            Ok(true)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn write_stdout(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn parse_field(s: &str) -> Result<ScalarField> {
    Ok(ScalarField::parse(s)?)
}

fn parse_colors<G: GroupOracle>(g: &G, spec: &str) -> Result<Vec<G::Elem>> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|k| g.parse_key(k).map_err(Into::into))
        .collect()
}

fn finish_build<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem], field: ScalarField, out: &Path) -> Result<()> {
    let manifest = write_bundle(out, pi, colors, field)?;
    let entries = manifest["entries"].as_array().map(Vec::len).unwrap_or(0);
    write_stdout(&(json!({ "out": out.display().to_string(), "entries": entries }).to_string() + "\n"))?;
    Ok(())
}

fn build(cmd: BuildCmd) -> Result<()> {
    match cmd {
        BuildCmd::Dg { group, field, out } => {
            let field = parse_field(&field)?;
            let g = match group.strip_prefix("table:") {
                Some(file) => FiniteGroupTable::from_json(&read_json(Path::new(file))?)
                    .with_context(|| format!("group table {file}"))?,
                None => FiniteGroupTable::named(&group)?,
            };
            let colors: Vec<usize> = (0..g.order()).collect();
            let pi = build_dg(Arc::new(g), field);
            materialize(&pi, &colors)?;
            finish_build(&pi, &colors, field, &out)
        }
        BuildCmd::An { n, field, colors, out } => {
            if n == 0 {
                bail!("n must be at least 1");
            }
            let field = parse_field(&field)?;
            let an = build_an_coalgebra(n, field)?;
            let colors = match colors {
                Some(spec) => parse_colors(&**an.quotient.group(), &spec)?,
                None => default_gl_colors(n, field)?,
            };
            // the group is infinite: compute what the suites need on these colors
            materialize(&an.quotient, &colors)?;
            verify_all(&an.quotient, &colors)?;
            finish_build(&an.quotient, &colors, field, &out)
        }
        BuildCmd::Double { a, b, sigma, action, colors, out } => {
            let ha = Arc::new(hopf_from_json(&read_json(&a)?).with_context(|| format!("{}", a.display()))?);
            let hb = Arc::new(hopf_from_json(&read_json(&b)?).with_context(|| format!("{}", b.display()))?);
            if ha.field() != hb.field() {
                bail!("A is over {} but B is over {}", ha.field(), hb.field());
            }
            let field = ha.field();
            let sigma_json = read_json(&sigma)?;
            let sigma_matrix = sigma_json.get("sigma").unwrap_or(&sigma_json);
            let pairing = PairingTable::new(ha.clone(), hb, matrix_from_json(field, sigma_matrix)?)?;
            let action_json = read_json(&action)?;
            let group = action_json.get("group").ok_or_else(|| anyhow!("action file has no 'group'"))?;
            match group_from_descriptor(group)? {
                AnyGroup::Trivial(g) => build_double(g, &pairing, &action_json, colors.as_deref(), field, &out),
                AnyGroup::Finite(g) => build_double(g, &pairing, &action_json, colors.as_deref(), field, &out),
                AnyGroup::Gl(g) => build_double(g, &pairing, &action_json, colors.as_deref(), field, &out),
            }
        }
    }
}

fn build_double<G: GroupOracle>(
    group: G,
    pairing: &PairingTable,
    action: &serde_json::Value,
    colors: Option<&str>,
    field: ScalarField,
    out: &Path,
) -> Result<()> {
    let group = Arc::new(group);
    let colors = match (colors, group.elements()) {
        (Some(spec), _) => parse_colors(&*group, spec)?,
        (None, Some(all)) => all,
        (None, None) => bail!("--colors is required for an infinite group"),
    };
    let phi = Arc::new(action_from_json(group.clone(), pairing.a.clone(), action)?);
    let mut double = TwistedDouble::new(pairing, phi.clone())?;
    if pairing.is_square_invertible() {
        let psi = Arc::new(dual_action(pairing, phi)?);
        let db = DualBases::new(pairing)?;
        double = double.with_crossing(psi).with_rmatrix(pairing, &db)?;
    }
    let pi = double.into_picoalgebra();
    materialize(&pi, &colors)?;
    if group.elements().is_none() {
        verify_all(&pi, &colors)?;
    }
    finish_build(&pi, &colors, field, out)
}

fn parse_suites(spec: &str) -> Result<Option<Vec<Suite>>> {
    let mut out = Vec::new();
    for s in spec.split(',').map(str::trim) {
        match s {
            "all" => return Ok(None),
            "picoalgebra" => out.push(Suite::Hopf),
            s => out.push(Suite::parse(s)?),
        }
    }
    Ok(Some(out))
}

fn emit(report: &VerificationReport, format: Format) -> Result<bool> {
    match format {
        Format::Json => write_stdout(&(report.to_json() + "\n"))?,
        Format::Text => write_stdout(&report.to_string())?,
    }
    Ok(report.all_pass())
}

fn verify(cmd: VerifyCmd) -> Result<bool> {
    if let Some(VerifySub::Sl2 { n, alpha, beta, gamma, prec, grid, format }) = cmd.sl2 {
        return verify_sl2(&n, [&alpha, &beta, &gamma], prec, grid, format);
    }
    let input = cmd.input.ok_or_else(|| anyhow!("verify needs --in or the sl2 subcommand"))?;
    let suites = parse_suites(&cmd.suite)?;
    let report = match read_bundle(&input).with_context(|| format!("reading bundle {}", input.display()))? {
        AnyBundle::Trivial(b) => verify_bundle(&b, suites, &cmd.colors)?,
        AnyBundle::Finite(b) => verify_bundle(&b, suites, &cmd.colors)?,
        AnyBundle::Gl(b) => verify_bundle(&b, suites, &cmd.colors)?,
    };
    emit(&report, cmd.format)
}

fn verify_bundle<G: GroupOracle>(b: &Bundle<G>, suites: Option<Vec<Suite>>, colors: &str) -> Result<VerificationReport> {
    let colors = if colors == "all" { b.colors.clone() } else { parse_colors(&**b.pi.group(), colors)? };
    let available = Suite::available(&b.pi);
    let suites = suites.unwrap_or_else(|| available.clone());
    let mut report = VerificationReport::default();
    for s in suites {
        if !available.contains(&s) {
            bail!("suite '{}' needs structure the bundle does not have", s.name());
        }
        report.merge(s.run(&b.pi, &colors)?);
    }
    Ok(report)
}

fn verify_sl2(ns: &[usize], colors: [&str; 3], prec: usize, grid: bool, format: Format) -> Result<bool> {
    if prec == 0 {
        bail!("--prec must be positive");
    }
    let checks = if grid {
        standard_grid(&hopfpi::sl2::standard_colors(prec)?)
    } else {
        if ns.is_empty() || ns.len() > 3 || ns.contains(&0) {
            bail!("--n takes one to three positive dimensions");
        }
        let c = colors.map(|s| parse_color(s, prec)).into_iter().collect::<hopfpi::Result<Vec<_>>>()?;
        let mut checks: Vec<Sl2Check> =
            ns.iter().zip(&c).map(|(&n, a)| Sl2Check::Relations { n, alpha: a.clone() }).collect();
        if ns.len() >= 2 {
            checks.push(Sl2Check::Qt1 { n1: ns[0], n2: ns[1], alpha: c[0].clone(), beta: c[1].clone() });
        }
        if ns.len() == 3 {
            checks.push(Sl2Check::Ybe { ns: [ns[0], ns[1], ns[2]], colors: [c[0].clone(), c[1].clone(), c[2].clone()] });
        }
        checks
    };
    emit(&run_sl2_checks(&checks)?, format)
}
