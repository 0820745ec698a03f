//! `ecdlab`: generate digraphs, build products, find ECD sets, recognize the
//! product families and run the cross-validation sweeps.
//!
//! Exit codes: 0 success, 1 negative answer, 2 input error, 3 bound exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ecdlab::edgelist::{parse_edgelist, serialize_edgelist};
use ecdlab::families::{
    construct_d1, construct_d2, construct_dpr, recognize, Family, FamilyWitness, Hub,
};
use ecdlab::generators::{
    gen_cycle, gen_path, gen_star, orient_from_independent_set, StarOrientation,
};
use ecdlab::harness::{cross_validate, mixed_star_sweep, CorpusSpec, Suite};
use ecdlab::products::fold_product;
use ecdlab::solver::{domination_number, enumerate_ecd_sets, find_ecd_set, is_ecd_set};
use ecdlab::theorems::{
    decide_cartesian_cycle, decide_cartesian_star, decide_direct_cycles, decide_direct_paths,
    decide_lex, decide_strong, DecisionReport,
};
use ecdlab::{Digraph, ProductKind, SearchBounds};

const BOUNDS_VAR: &str = "ECDLAB_BOUNDS";

#[derive(Parser)]
#[command(
    name = "ecdlab",
    version,
    about = "Efficient closed domination in digraph products"
)]
struct Cli {
    /// Search limits as `enum=24,search=64,family=12`; overrides ECDLAB_BOUNDS
    #[arg(long, global = true)]
    bounds: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated digraph as an edge list
    #[command(subcommand)]
    Gen(Gen),
    /// Product of two or more edge lists, folded from the left
    Product {
        #[arg(long)]
        kind: ProductKind,
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
    },
    /// Find, enumerate or check ECD sets
    #[command(subcommand)]
    Ecd(Ecd),
    /// Domination and absorbing numbers
    Gamma { input: Option<PathBuf> },
    /// Recognize a family and print the witness
    Family {
        #[arg(long)]
        family: Family,
        input: Option<PathBuf>,
    },
    /// Decide a product with a characterization
    #[command(subcommand)]
    Decide(Decide),
    /// Compare every decider with exact search over a corpus
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StarModeArg {
    CenterSource,
    CenterSink,
    Mixed,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    leaves: usize,
    #[arg(long, value_enum, default_value = "center-source")]
    mode: StarModeArg,
    /// source leaves of a mixed star; the rest are sinks
    #[arg(long, default_value_t = 1)]
    sources: usize,
}

impl StarArgs {
    fn orientation(&self) -> Result<StarOrientation, CliError> {
        Ok(match self.mode {
            StarModeArg::CenterSource => StarOrientation::center_source(self.leaves),
            StarModeArg::CenterSink => StarOrientation::center_sink(self.leaves),
            StarModeArg::Mixed => {
                let sinks = self
                    .leaves
                    .checked_sub(self.sources)
                    .ok_or_else(|| CliError::Input("more source leaves than leaves".into()))?;
                StarOrientation::mixed(self.sources, sinks)
            }
        })
    }
}

#[derive(Subcommand)]
enum Gen {
    /// Oriented cycle from a word over `cw`/`ccw`
    Cycle {
        #[arg(long)]
        word: String,
    },
    /// Oriented path from a word over `fwd`/`bwd` (`-` for one vertex)
    Path {
        #[arg(long)]
        word: String,
    },
    /// Oriented star with center 0
    Star(StarArgs),
    /// D1 member from a base digraph and two partitions (`0,1;2`)
    D1 {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        pi1: String,
        #[arg(long)]
        pi2: String,
        /// extra arcs such as `0:w0,1:z1`
        #[arg(long, default_value = "")]
        extra: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// D2 member from block sizes and dominator pairs
    D2 {
        /// `a,b,c`
        #[arg(long)]
        sizes: String,
        /// pairs `i>j` for U1->U2, U2->U3 and U3->U1, separated by `;`
        #[arg(long)]
        maps: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// D_{p,r} from a base digraph
    Dpr {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        w_partition: String,
        /// arcs `v:j` to w_j
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long)]
        z_partition: String,
        /// arcs `v:i` to z_i
        #[arg(long, default_value = "")]
        bp: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Orient a symmetric graph around an independent dominating set
    Orient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand)]
enum Ecd {
    Find {
        input: Option<PathBuf>,
        /// absorbing version: work on the reverse
        #[arg(long)]
        eca: bool,
    },
    Enumerate {
        input: Option<PathBuf>,
        #[arg(long)]
        eca: bool,
    },
    Check {
        input: Option<PathBuf>,
        #[arg(long)]
        set: String,
        #[arg(long)]
        eca: bool,
    },
}

#[derive(Subcommand)]
enum Decide {
    Strong {
        #[arg(long)]
        d: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    Lex {
        #[arg(long)]
        d: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    CartesianCycle {
        #[arg(long)]
        d: PathBuf,
        #[arg(long)]
        word: String,
    },
    CartesianStar {
        #[arg(long)]
        f: PathBuf,
        #[command(flatten)]
        star: StarArgs,
    },
    DirectCycles {
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    DirectPaths {
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// add a wall-time column
    #[arg(long)]
    timing: bool,
    /// write the TSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// mixed-star suite: source and sink leaves
    #[arg(long, default_value_t = 1)]
    t1: usize,
    #[arg(long, default_value_t = 1)]
    t2: usize,
}

enum CliError {
    Input(String),
    Bound(String),
}

impl From<ecdlab::Error> for CliError {
    fn from(e: ecdlab::Error) -> Self {
        if e.is_bound_exceeded() {
            CliError::Bound(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type Outcome = Result<bool, CliError>;

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<Digraph, CliError> {
    let text = read_input(path)?;
    parse_edgelist(&text).map_err(|e| match path {
        Some(p) => CliError::Input(format!("{}: {e}", p.display())),
        None => CliError::Input(format!("<stdin>: {e}")),
    })
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Input(format!("`{s}` is not a vertex")))
        })
        .collect()
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';').map(parse_list).collect()
}

fn parse_pairs(text: &str, sep: char) -> Result<Vec<(usize, String)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(sep)
                .ok_or_else(|| CliError::Input(format!("`{item}` is not of the form a{sep}b")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("`{a}` is not a vertex")))?;
            Ok((a, b.trim().to_string()))
        })
        .collect()
}

fn index(s: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Input(format!("`{s}` is not an index")))
}

fn write_witness(path: Option<&PathBuf>, json: String) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, json + "\n").map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn run_gen(cmd: Gen, out: &mut impl Write) -> Outcome {
    let d = match cmd {
        Gen::Cycle { word } => gen_cycle(&word.parse()?),
        Gen::Path { word } => gen_path(&word.parse()?),
        Gen::Star(star) => gen_star(&star.orientation()?)?,
        Gen::D1 {
            base,
            pi1,
            pi2,
            extra,
            witness,
        } => {
            let base = load(Some(&base))?;
            let extra = parse_pairs(&extra, ':')?
                .into_iter()
                .map(|(v, hub)| {
                    let hub = match hub.split_at(1.min(hub.len())) {
                        ("w", i) => Hub::W(index(i)?),
                        ("z", i) => Hub::Z(index(i)?),
                        _ => {
                            return Err(CliError::Input(format!(
                                "hub `{hub}` must be w<i> or z<i>"
                            )))
                        }
                    };
                    Ok((v, hub))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let (d, w) = construct_d1(&base, &parse_blocks(&pi1)?, &parse_blocks(&pi2)?, &extra)?;
            write_witness(witness.as_ref(), FamilyWitness::D1(w).to_json())?;
            d
        }
        Gen::D2 {
            sizes,
            maps,
            witness,
        } => {
            let sizes = parse_list(&sizes)?;
            let sizes: [usize; 3] = sizes
                .try_into()
                .map_err(|_| CliError::Input("--sizes needs three numbers".into()))?;
            let steps: Vec<Vec<(usize, usize)>> = maps
                .split(';')
                .map(|part| {
                    parse_pairs(part, '>')?
                        .into_iter()
                        .map(|(a, b)| Ok((a, index(&b)?)))
                        .collect::<Result<Vec<_>, CliError>>()
                })
                .collect::<Result<_, _>>()?;
            if steps.len() != 3 {
                return Err(CliError::Input(
                    "--maps needs three `;`-separated parts".into(),
                ));
            }
            let (d, w) = construct_d2(sizes, [&steps[0], &steps[1], &steps[2]])?;
            write_witness(witness.as_ref(), FamilyWitness::D2(w).to_json())?;
            d
        }
        Gen::Dpr {
            base,
            w_partition,
            b,
            z_partition,
            bp,
            witness,
        } => {
            let base = load(Some(&base))?;
            let arcs = |text: &str| -> Result<Vec<(usize, usize)>, CliError> {
                parse_pairs(text, ':')?
                    .into_iter()
                    .map(|(v, j)| Ok((v, index(&j)?)))
                    .collect()
            };
            let (d, w) = construct_dpr(
                &base,
                &parse_blocks(&w_partition)?,
                &arcs(&b)?,
                &parse_blocks(&z_partition)?,
                &arcs(&bp)?,
            )?;
            write_witness(witness.as_ref(), FamilyWitness::D0(w).to_json())?;
            d
        }
        Gen::Orient { graph, set } => {
            orient_from_independent_set(&load(Some(&graph))?, &parse_list(&set)?)?
        }
    };
    emit(out, &serialize_edgelist(&d))?;
    Ok(true)
}

fn run_ecd(cmd: Ecd, bounds: &SearchBounds, out: &mut impl Write) -> Outcome {
    let orient = |d: Digraph, eca: bool| if eca { d.reverse() } else { d };
    match cmd {
        Ecd::Find { input, eca } => {
            let d = orient(load(input.as_ref())?, eca);
            bounds.check_search("ECD search", d.order())?;
            match find_ecd_set(&d) {
                Some(cert) => {
                    emit(out, &(cert.to_json() + "\n"))?;
                    Ok(true)
                }
                None => {
                    emit(out, "null\n")?;
                    Ok(false)
                }
            }
        }
        Ecd::Enumerate { input, eca } => {
            let d = orient(load(input.as_ref())?, eca);
            let sets = enumerate_ecd_sets(&d, bounds)?;
            emit(
                out,
                &(serde_json::to_string(&sets).expect("serializes") + "\n"),
            )?;
            Ok(true)
        }
        Ecd::Check { input, set, eca } => {
            let d = orient(load(input.as_ref())?, eca);
            match is_ecd_set(&d, &parse_list(&set)?)? {
                Some(cert) => {
                    emit(out, &(cert.to_json() + "\n"))?;
                    Ok(true)
                }
                None => {
                    emit(out, "null\n")?;
                    Ok(false)
                }
            }
        }
    }
}

fn run_decide(cmd: Decide, bounds: &SearchBounds, out: &mut impl Write) -> Outcome {
    let report: DecisionReport = match cmd {
        Decide::Strong { d, f } => decide_strong(&load(Some(&d))?, &load(Some(&f))?)?,
        Decide::Lex { d, f } => decide_lex(&load(Some(&d))?, &load(Some(&f))?)?,
        Decide::CartesianCycle { d, word } => {
            decide_cartesian_cycle(&load(Some(&d))?, &word.parse()?, bounds)?
        }
        Decide::CartesianStar { f, star } => {
            decide_cartesian_star(&load(Some(&f))?, &star.orientation()?, bounds)?
        }
        Decide::DirectCycles { words } => {
            let patterns = words
                .iter()
                .map(|w| w.parse())
                .collect::<Result<Vec<_>, _>>()?;
            decide_direct_cycles(&patterns)?
        }
        Decide::DirectPaths { words } => {
            let patterns = words
                .iter()
                .map(|w| w.parse())
                .collect::<Result<Vec<_>, _>>()?;
            decide_direct_paths(&patterns)?
        }
    };
    emit(out, &(report.to_json() + "\n"))?;
    Ok(report.decision)
}

fn run_validate(
    args: ValidateArgs,
    bounds: &SearchBounds,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let (tsv, summary, ok) = if suite == Suite::MixedStar {
        let report = mixed_star_sweep(args.max_n.unwrap_or(3), args.t1, args.t2)?;
        (report.to_tsv(), report.summary(), report.is_consistent())
    } else {
        let defaults = CorpusSpec::new(suite);
        let spec = CorpusSpec {
            max_n: args.max_n.unwrap_or(defaults.max_n),
            k_max: args.k_max.unwrap_or(defaults.k_max),
            samples: args.samples.unwrap_or(defaults.samples),
            seed: args.seed,
            ..defaults
        };
        let report = cross_validate(&spec, bounds, args.workers)?;
        let ok = report.mismatches().is_empty() && report.bad_certificates().is_empty();
        (report.to_tsv(args.timing), report.summary(), ok)
    };
    match &args.output {
        Some(p) => {
            fs::write(p, tsv).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
        None => emit(out, &tsv)?,
    }
    writeln!(err, "{summary}")?;
    Ok(ok)
}

fn resolve_bounds(flag: Option<&str>) -> Result<SearchBounds, CliError> {
    let mut bounds = SearchBounds::default();
    if let Ok(env) = std::env::var(BOUNDS_VAR) {
        bounds = bounds
            .with_overrides(&env)
            .map_err(|e| CliError::Input(format!("{BOUNDS_VAR}: {e}")))?;
    }
    if let Some(flag) = flag {
        bounds = bounds.with_overrides(flag)?;
    }
    Ok(bounds)
}

fn run(cli: Cli) -> Outcome {
    let bounds = resolve_bounds(cli.bounds.as_deref())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Gen(cmd) => run_gen(cmd, &mut out),
        Command::Product { kind, inputs } => {
            let factors = inputs
                .iter()
                .map(|p| load(Some(p)))
                .collect::<Result<Vec<_>, _>>()?;
            emit(
                &mut out,
                &serialize_edgelist(&fold_product(kind, &factors)?),
            )?;
            Ok(true)
        }
        Command::Ecd(cmd) => run_ecd(cmd, &bounds, &mut out),
        Command::Gamma { input } => {
            let numbers = domination_number(&load(input.as_ref())?, &bounds)?;
            emit(
                &mut out,
                &(serde_json::to_string(&numbers).expect("serializes") + "\n"),
            )?;
            Ok(true)
        }
        Command::Family { family, input } => {
            match recognize(family, &load(input.as_ref())?, &bounds)? {
                Some(w) => {
                    emit(&mut out, &(w.to_json() + "\n"))?;
                    Ok(true)
                }
                None => {
                    emit(&mut out, "null\n")?;
                    Ok(false)
                }
            }
        }
        Command::Decide(cmd) => run_decide(cmd, &bounds, &mut out),
        Command::Validate(args) => run_validate(args, &bounds, &mut out, &mut io::stderr()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Bound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
