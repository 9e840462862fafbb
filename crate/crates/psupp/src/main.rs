use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use psupp::cache::CACHE_ENV;
use psupp::pipeline::char0_holonomy;
use psupp::report::{overall_status, Format, SweepReport};
use psupp::spec::{Input, ModuleSpec};
use psupp::{corpus, emit_report, parse_module_spec, run_pipeline, Cache, RunOptions, SpecError};
use psupp_core::arith::Field;
use psupp_core::expr::parse_operator;
use psupp_core::pgeometry::{nilpotency_index, p_curvature_matrices, p_support, p_support_connection, OneForm};
use psupp_core::weyl::WeylRing;

#[derive(Parser)]
#[command(name = "psupp", version, about = "p-curvatures and p-supports of modules over Weyl algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Comma-separated primes, replacing the spec's list.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest field extension tried when sampling points.
    #[arg(long)]
    ext_degree: Option<u32>,
    /// Smooth points sampled per component.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Wall-clock limit per prime.
    #[arg(long)]
    budget_seconds: Option<u64>,
    /// Critical pairs per Gröbner basis.
    #[arg(long)]
    budget_pairs: Option<usize>,
    /// Largest center presentation, in generators.
    #[arg(long)]
    budget_center: Option<usize>,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Clone)]
struct Sweep {
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Run primes one after another.
    #[arg(long)]
    serial: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline over the spec's primes.
    Analyze {
        spec: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// p-support at a single prime.
    Psupport {
        spec: PathBuf,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        output: Output,
    },
    /// p-curvature matrices of a connection spec.
    Pcurvature {
        spec: PathBuf,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Bernstein dimension and multiplicity of the characteristic-zero model.
    Holonomy {
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Cartier operator on `f dx1` over F_p (negative powers of x1 allowed).
    Cartier {
        #[arg(long)]
        prime: u64,
        form: String,
    },
    /// Runs the bundled corpus.
    Examples {
        #[command(flatten)]
        overrides: Overrides,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        sweep: Sweep,
        /// Only these corpus entries.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

fn load(path: &PathBuf, ov: &Overrides) -> Result<ModuleSpec, SpecError> {
    let text = std::fs::read_to_string(path)?;
    apply(parse_module_spec(&text)?, ov)
}

fn apply(spec: ModuleSpec, ov: &Overrides) -> Result<ModuleSpec, SpecError> {
    let mut f = spec.file;
    if let Some(p) = &ov.primes {
        f.primes = p.clone();
    }
    if let Some(k) = ov.ext_degree {
        f.extension_degree = k;
    }
    if let Some(s) = ov.samples {
        f.samples = s;
    }
    if let Some(s) = ov.seed {
        f.seed = s;
    }
    if let Some(s) = ov.budget_seconds {
        f.budgets.seconds_per_prime = s;
    }
    if ov.budget_pairs.is_some() {
        f.budgets.gb_pairs = ov.budget_pairs;
    }
    if let Some(c) = ov.budget_center {
        f.budgets.center_generators = c;
    }
    ModuleSpec::from_file(f)
}

fn run_options(sweep: &Sweep) -> Result<RunOptions, SpecError> {
    let cache = match &sweep.cache_dir {
        Some(d) => Some(Cache::new(d)?),
        None => None,
    };
    Ok(RunOptions { serial: sweep.serial, cache })
}

fn print(bytes: &[u8]) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(bytes);
}

fn print_value<T: serde::Serialize>(v: &T) {
    print(format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")).as_bytes());
}

fn run(cli: Cli) -> Result<i32, SpecError> {
    match cli.command {
        Command::Analyze { spec, overrides, output, sweep } => {
            let spec = load(&spec, &overrides)?;
            let report = run_pipeline(&spec, &run_options(&sweep)?);
            print(&emit_report(&report, output.format));
            Ok(report.exit_code())
        }
        Command::Psupport { spec, prime, output } => {
            let spec = load(&spec, &Overrides { primes: Some(vec![prime]), ..Default::default() })?;
            let sp = spec.specialize(prime)?;
            let s = match &sp.input {
                Input::Module(m) => p_support(m, prime)?,
                Input::Connection(c) => p_support_connection(c, prime)?,
            };
            match output.format {
                Format::Json => {
                    let mut v = BTreeMap::new();
                    v.insert("field", serde_json::json!(sp.field.to_string()));
                    v.insert("generators", serde_json::json!(s.generator_strings()));
                    v.insert("dim", serde_json::json!(s.dim));
                    v.insert("degree", serde_json::json!(s.degree));
                    v.insert("reduced", serde_json::json!(s.reduced));
                    v.insert("prime", serde_json::json!(s.prime));
                    print_value(&v);
                }
                Format::Text => {
                    let gens = s.generator_strings().join(", ");
                    print(
                        format!("p = {prime} over {}: V({gens}), dim {}, degree {}\n", sp.field, s.dim, s.degree)
                            .as_bytes(),
                    );
                }
            }
            Ok(0)
        }
        Command::Pcurvature { spec, prime, output } => {
            let spec = load(&spec, &Overrides { primes: Some(vec![prime]), ..Default::default() })?;
            let sp = spec.specialize(prime)?;
            let Input::Connection(c) = &sp.input else {
                return Err(SpecError::Invalid("pcurvature needs a connection spec".into()));
            };
            let psi = p_curvature_matrices(c, prime)?;
            let mats: Vec<Vec<Vec<String>>> = psi
                .matrices
                .iter()
                .map(|m| (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).format()).collect()).collect())
                .collect();
            match output.format {
                Format::Json => print_value(&serde_json::json!({
                    "field": sp.field.to_string(),
                    "matrices": mats,
                    "nilpotency_index": nilpotency_index(&psi),
                })),
                Format::Text => {
                    let mut s = String::new();
                    for (i, m) in mats.iter().enumerate() {
                        s.push_str(&format!("psi_{}:\n", i + 1));
                        for row in m {
                            s.push_str(&format!("  [{}]\n", row.join(", ")));
                        }
                    }
                    let idx = nilpotency_index(&psi).map_or("not nilpotent".to_string(), |k| k.to_string());
                    s.push_str(&format!("nilpotency index: {idx}\n"));
                    print(s.as_bytes());
                }
            }
            Ok(0)
        }
        Command::Holonomy { spec, output } => {
            let spec = load(&spec, &Overrides::default())?;
            let (rec, _) = char0_holonomy(&spec);
            match output.format {
                Format::Json => print_value(&rec),
                Format::Text => {
                    let s = match rec.status.as_str() {
                        "computed" => format!(
                            "d = {}, e = {}, holonomic = {}, H(t) = {}\n",
                            rec.d.map_or("-".into(), |d| d.to_string()),
                            rec.e.unwrap_or(0),
                            rec.holonomic.unwrap_or(false),
                            rec.hilbert.unwrap_or_default()
                        ),
                        _ => format!("skipped: {}\n", rec.reason.unwrap_or_default()),
                    };
                    print(s.as_bytes());
                }
            }
            Ok(0)
        }
        Command::Cartier { prime, form } => {
            let field = Field::prime(prime)?;
            let ring = WeylRing::with_chart(1, &field, vec![1])?;
            let f = parse_operator(&form, &ring, &BTreeMap::new())
                .map_err(|source| SpecError::Operator { field: "form".into(), source })?;
            let w = OneForm::from_function(&f)?;
            let c = w.cartier()?;
            print(format!("C({}) = {}\n", w.format("x1"), c.format("X1")).as_bytes());
            Ok(0)
        }
        Command::Examples { overrides, output, sweep, only } => {
            let opts = run_options(&sweep)?;
            let mut reports: Vec<SweepReport> = Vec::new();
            for (name, text) in corpus::CORPUS {
                if only.as_ref().is_some_and(|o| !o.iter().any(|n| n == name)) {
                    continue;
                }
                let spec = apply(parse_module_spec(text)?, &overrides)?;
                reports.push(run_pipeline(&spec, &opts));
            }
            match output.format {
                Format::Json => print_value(&reports),
                Format::Text => {
                    for r in &reports {
                        print(&emit_report(r, Format::Text));
                        print(b"\n");
                    }
                }
            }
            let all: Vec<_> = reports.iter().flat_map(|r| r.primes.clone()).collect();
            Ok(match overall_status(&all) {
                "violation" => 1,
                "inconclusive" => 2,
                _ => 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
