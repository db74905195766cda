use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cutpersist::generate::{generate, Family};
use cutpersist::io::{parse_instance, write_instance, ParseOptions};
use cutpersist::oracle::enumerate_optima;
use cutpersist::pipeline::{ablate, run, verify_steps, PipelineConfig, Stage};
use cutpersist::report::Report;
use cutpersist::{Error, ProblemInstance};

#[derive(Parser)]
#[command(name = "cutpersist", version, about = "Persistency certificates and instance shrinking for multicut and max-cut")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shrink an instance and report the certificates found.
    Shrink {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: ReportArgs,
        /// Write the shrunk instance here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a synthetic instance.
    Generate {
        #[arg(value_enum)]
        family: FamilyName,
        /// Chain length.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Decay rate of the chain weights.
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        /// All chain signs positive.
        #[arg(long)]
        positive: bool,
        /// Grid side lengths, comma separated (two for torus2d, three for torus3d).
        #[arg(long, value_delimiter = ',', default_values_t = [10, 10])]
        dims: Vec<usize>,
        /// Number of positive blocks.
        #[arg(long, default_value_t = 3)]
        blocks: usize,
        /// Nodes per block.
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Replay the certificates of a JSON report on the original instance.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        report: PathBuf,
    },
    /// Solve a small instance by enumeration.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Remaining sizes along the criterion ladder.
    Ablate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: ReportArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Instance file, `-` for stdin.
    input: PathBuf,
    /// The file holds max-form weights.
    #[arg(long)]
    negate: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Comma separated criterion groups: gplus, edge, triangle, subgraph, icp.
    #[arg(long, value_delimiter = ',', default_value = "gplus,edge,triangle,subgraph,icp")]
    criteria: Vec<Stage>,
    #[arg(long, default_value_t = 10)]
    max_rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exact minimum cuts in the triangle criterion.
    #[arg(long)]
    exact_triangles: bool,
}

impl RunArgs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            stages: self.criteria.iter().copied().collect(),
            max_rounds: self.max_rounds,
            seed: self.seed,
            exact_triangles: self.exact_triangles,
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    /// Report destination (default: stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    IsingChain,
    Torus2d,
    Torus3d,
    GplusBlocks,
}

/// Failures mapped to the exit status.
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Invariant(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(args: &InputArgs) -> Result<ProblemInstance, Failure> {
    let opts = ParseOptions { negate: args.negate };
    let inst = if args.input.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        parse_instance(text.as_bytes(), opts)
    } else {
        let file = fs::File::open(&args.input)
            .map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?;
        parse_instance(file, opts)
    };
    inst.map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render(report: &Report, out: &ReportArgs) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv(),
    };
    emit(out.report.as_deref(), &text)
}

fn family(name: FamilyName, n: usize, rho: f64, positive: bool, dims: &[usize], blocks: usize, size: usize) -> Result<Family, Failure> {
    let want = |k: usize| {
        if dims.len() == k {
            Ok(())
        } else {
            Err(Failure::Input(format!("--dims needs {k} values, got {}", dims.len())))
        }
    };
    Ok(match name {
        FamilyName::IsingChain => Family::IsingChain { n, rho, positive },
        FamilyName::Torus2d => {
            want(2)?;
            Family::Torus2d { rows: dims[0], cols: dims[1] }
        }
        FamilyName::Torus3d => {
            want(3)?;
            Family::Torus3d {
                a: dims[0],
                b: dims[1],
                c: dims[2],
            }
        }
        FamilyName::GplusBlocks => Family::GplusBlocks { blocks, size },
    })
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Shrink { input, run: args, out, output } => {
            let inst = read_input(&input)?;
            let cfg = args.config();
            let (state, rep) = run(&inst, &cfg)?;
            eprintln!(
                "{} -> {} nodes, {} -> {} edges, {} certificates, {} rounds",
                rep.original_nodes,
                rep.remaining_nodes,
                rep.original_edges,
                rep.remaining_edges,
                state.certificates.len(),
                rep.rounds.len()
            );
            if let Some(path) = output {
                let shrunk = state.current.clone().with_objective_constant(state.constant);
                let mut buf = Vec::new();
                write_instance(&shrunk, &mut buf)?;
                fs::write(&path, buf).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            render(&Report::new(&state, rep, &cfg), &out)
        }
        Command::Generate {
            family: name,
            n,
            rho,
            positive,
            dims,
            blocks,
            size,
            seed,
            output,
        } => {
            let fam = family(name, n, rho, positive, &dims, blocks, size)?;
            let inst = generate(&fam, seed)?;
            let mut buf = Vec::new();
            writeln!(buf, "c {fam} seed {seed}")?;
            write_instance(&inst, &mut buf)?;
            emit(output.as_deref(), &String::from_utf8_lossy(&buf))
        }
        Command::Verify { input, report } => {
            let inst = read_input(&input)?;
            let text = fs::read_to_string(&report).map_err(|e| Failure::Input(format!("{}: {e}", report.display())))?;
            let report = Report::from_json(&text)?;
            let outcome = verify_steps(&inst, &report.steps)?;
            println!(
                "checked {} certificates, {} failures, {} nodes and {} edges remain",
                outcome.checked,
                outcome.failures.len(),
                outcome.remaining_nodes,
                outcome.remaining_edges
            );
            for f in &outcome.failures {
                println!("  {f}");
            }
            let sizes = (outcome.remaining_nodes, outcome.remaining_edges) == (report.run.remaining_nodes, report.run.remaining_edges);
            if !sizes {
                println!("replayed sizes differ from the report");
            }
            if outcome.is_ok() && sizes {
                Ok(())
            } else {
                Err(Failure::Invariant("certificates did not replay".into()))
            }
        }
        Command::Oracle { input } => {
            let inst = read_input(&input)?;
            let optima = enumerate_optima(&inst)?;
            println!("optimum {}", optima.value);
            println!("optimal labelings {}", optima.labelings.len());
            if let Some(x) = optima.labelings.first() {
                let bits: String = x.iter().map(|b| if b { '1' } else { '0' }).collect();
                println!("labeling {bits}");
            }
            Ok(())
        }
        Command::Ablate { input, run: args, out } => {
            let inst = read_input(&input)?;
            let cfg = args.config();
            let points = ablate(&inst, &cfg)?;
            for p in &points {
                eprintln!("{:>9} {:>7} nodes {:>8} edges ({:.1}%)", p.stage, p.nodes, p.edges, 100.0 * p.edge_fraction);
            }
            let (state, rep) = run(&inst, &cfg)?;
            render(&Report::new(&state, rep, &cfg).with_ablation(points), &out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(2)
        }
    }
}
