use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use fuzzy_sigma::campaign::{
    preset_streams, render_json, render_report, run_campaign, witness_file_names, CampaignConfig,
    PRESET_MAX_N,
};
use fuzzy_sigma::claims::{parse_claim_set, registry};
use fuzzy_sigma::families::{instance, FamilyKind, FamilySpec};
use fuzzy_sigma::io::{format_decimal, parse_graph, serialize_graph};
use fuzzy_sigma::ops::{apply, OpKind};
use fuzzy_sigma::{summarize, FuzzyGraph, GraphError, ParseError, TNorm};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fuzzysigma", version, about = "Sigma index of fuzzy graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the sigma report of a graph file (`-` or no path reads stdin)
    Compute { graph: Option<PathBuf> },

    /// Generate a member of a named family
    Gen {
        /// star, path, cycle, complete, single_edge, regular_union,
        /// random_uniform or two_valued_adversarial
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        /// Uniform edge membership (total weight for single_edge)
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Edge probability for random_uniform
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance index within the random stream
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Draw vertex memberships from [0.5, 1] for random_uniform
        #[arg(long)]
        random_nu: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Apply a graph operation to one or two graph files
    Op {
        /// union, join, cartesian, tensor, composition or complement
        #[arg(long)]
        kind: OpKind,
        #[arg(long, default_value = "min")]
        tnorm: TNorm,
        #[arg(required = true, num_args = 1..=2)]
        graphs: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },

    /// Run a claim campaign over the built-in stream presets.
    ///
    /// Presets: random_uniform streams for every n in 3..=nmax, edge
    /// probability in {0.3, 0.7, 1.0}, with unit and with random vertex
    /// memberships, each yielding `trials` instances; then one
    /// two_valued_adversarial graph (epsilon 0.01) per n. Witness graphs of
    /// violations are written next to the report in `<report>.witnesses/`.
    Check {
        /// `all` or a comma-separated list such as C1,C4
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = PRESET_MAX_N)]
        nmax: usize,
        #[arg(long)]
        report: PathBuf,
        /// Also write the campaign as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },

    /// Reproduce the worked examples and sweep the proved identities
    Selftest,

    /// List the claim catalog
    Claims,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure {
            code: EXIT_INVALID,
            error: e.into(),
        }
    }
}

fn io_failure(error: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        error,
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(path: Option<&Path>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")
                .map_err(io_failure)?;
        }
        Some(p) if p == Path::new("-") => return read_input(None),
        Some(p) => {
            text = fs::read_to_string(p)
                .with_context(|| format!("reading {}", p.display()))
                .map_err(io_failure)?;
        }
    }
    Ok(text)
}

fn load_graph(path: Option<&Path>) -> CliResult<FuzzyGraph> {
    let text = read_input(path)?;
    let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
    parse_graph(&text).map_err(|e: ParseError| Failure {
        code: if e.is_validation() {
            EXIT_INVALID
        } else {
            EXIT_IO
        },
        error: anyhow!(e).context(name),
    })
}

fn write_output(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, contents)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(io_failure),
        _ => io::stdout()
            .write_all(contents.as_bytes())
            .context("writing stdout")
            .map_err(io_failure),
    }
}

fn compute(path: Option<&Path>) -> CliResult<()> {
    let g = load_graph(path)?;
    let r = summarize(&g);
    let degrees: Vec<String> = r.degrees.iter().map(|&d| format_decimal(d)).collect();
    let weighted = r.sigma_weighted.map_or_else(
        || "undefined (all vertex memberships are zero)".into(),
        format_decimal,
    );
    let text = format!(
        "n = {}\new = {}\nlambda = {}\ndelta_max = {}\ndelta_min = {}\nsigma_star = {}\nsigma_edge_sum = {}\nsigma_weighted = {}\ndegrees = {}\n",
        r.n,
        format_decimal(r.ew),
        format_decimal(r.lambda),
        format_decimal(r.delta_max),
        format_decimal(r.delta_min),
        format_decimal(r.sigma_star),
        format_decimal(r.sigma_edge_sum),
        weighted,
        degrees.join(" "),
    );
    write_output(None, &text)
}

fn check(
    claims: &str,
    trials: usize,
    seed: u64,
    nmax: usize,
    report: &Path,
    json: Option<&Path>,
) -> CliResult<()> {
    let config = CampaignConfig {
        claims: parse_claim_set(claims)?,
        streams: preset_streams(nmax)?,
        trials,
        seed,
    };
    let campaign = run_campaign(config)?;

    let mut dir_name = report.file_name().unwrap_or_default().to_os_string();
    dir_name.push(".witnesses");
    let witness_dir = report.with_file_name(&dir_name);
    let with_witness: Vec<_> = campaign
        .results
        .iter()
        .filter(|r| r.witness.is_some())
        .collect();
    if !with_witness.is_empty() {
        fs::create_dir_all(&witness_dir)
            .with_context(|| format!("creating {}", witness_dir.display()))
            .map_err(io_failure)?;
        for r in with_witness {
            let graphs = r.witness.as_deref().unwrap_or_default();
            for (name, text) in witness_file_names(r).iter().zip(graphs) {
                write_output(Some(&witness_dir.join(name)), text)?;
            }
        }
    }

    write_output(
        Some(report),
        &render_report(&campaign, &dir_name.to_string_lossy()),
    )?;
    if let Some(path) = json {
        write_output(Some(path), &render_json(&campaign))?;
    }

    for s in &campaign.summary {
        eprintln!(
            "{}\t{}\tholds={}\tviolated={}\tinapplicable={}",
            s.claim_id, s.expected_status, s.holds, s.violated, s.inapplicable
        );
    }
    let breaks = campaign.proof_breaks();
    if breaks > 0 {
        return Err(Failure {
            code: EXIT_CHECK_FAILED,
            error: anyhow!("{breaks} violation(s) of proved identities"),
        });
    }
    Ok(())
}

fn selftest() -> CliResult<()> {
    let checks = fuzzy_sigma::selftest::run();
    let mut failed = 0;
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag}\t{}\t{}", c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(Failure {
            code: EXIT_CHECK_FAILED,
            error: anyhow!("{failed} of {} self-checks failed", checks.len()),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Compute { graph } => compute(graph.as_deref()),
        Command::Gen {
            family,
            n,
            alpha,
            epsilon,
            p,
            seed,
            index,
            random_nu,
            output,
        } => {
            let spec = FamilySpec::new(family, n)
                .with_alpha(alpha.unwrap_or(family.default_alpha()))
                .with_epsilon(epsilon)
                .with_edge_probability(p)
                .with_seed(seed)
                .with_random_memberships(random_nu);
            let g = instance(&spec, index)?;
            write_output(output.as_deref(), &serialize_graph(&g))
        }
        Command::Op {
            kind,
            tnorm,
            graphs,
            output,
        } => {
            let operands = graphs
                .iter()
                .map(|p| load_graph(Some(p)))
                .collect::<CliResult<Vec<_>>>()?;
            let g = apply(kind, &operands, tnorm)?;
            write_output(Some(&output), &serialize_graph(&g))
        }
        Command::Check {
            claims,
            trials,
            seed,
            nmax,
            report,
            json,
        } => check(&claims, trials, seed, nmax, &report, json.as_deref()),
        Command::Selftest => selftest(),
        Command::Claims => {
            let mut text = String::new();
            for c in registry() {
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    c.id, c.expected_status, c.description, c.applicability
                ));
            }
            write_output(None, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
