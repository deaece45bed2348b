mod objects;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cluster_forge::ccmap::{
    bijection_suite, cc_of_object, connectivity_suite, denominator_suite, exchange_suite,
    indecomposable_rigid_objects, initial_seed, kronecker_suite, laurent_suite, CcOptions, Report,
};
use cluster_forge::grassmannian::DEFAULT_BUDGET;
use cluster_forge::mutation::{count_labeled, explore, ExplorationLimits, QuiverSpec, Seed};
use cluster_forge::repcore::{
    kronecker_module, ClusterObject, IntegralRep, KroneckerKind, P1Point, QuiverAlgebraContext, QuiverRep,
    DEFAULT_SEED,
};
use cluster_forge::{Error, Result};

use objects::parse_object;

const SEED_VAR: &str = "CLUSTER_FORGE_SEED";

#[derive(Parser)]
#[command(name = "cluster-forge", version, about = "Cluster algebras of acyclic quivers by mutation and by the Caldero-Chapoton map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Preset quiver: a1, a2, ..., d4, kronecker.
    #[arg(long, conflicts_with = "file")]
    quiver: Option<String>,
    /// Quiver as JSON: {"n": .., "arrows": [[s, t, k], ..]} or {"n": .., "matrix": [[..]]}.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_seeds: u64,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,
    /// Largest number of subspace tuples one Grassmannian count may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Comma-separated interpolation primes (default: the smallest primes).
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Denominator,
    Exchange,
    Bijection,
    Laurent,
    Connectivity,
    Kronecker,
}

#[derive(Subcommand)]
enum Command {
    /// Mutates the initial seed in the given directions (1-based).
    Mutate {
        #[command(flatten)]
        common: Common,
        directions: Vec<usize>,
    },
    /// Explores the exchange graph up to the limits.
    Explore {
        #[command(flatten)]
        common: Common,
    },
    /// Computes X_M for an object, a generic representation or a representation file.
    #[command(group(ArgGroup::new("source").required(true).args(["object", "root", "rep_file"])))]
    Ccmap {
        #[command(flatten)]
        common: Common,
        /// E.g. `kronecker:W:1`, `SP:1`, `S:2`, `P:1`, `I:3`, `root:1,1`, `kronecker:U:0 + SP:1`.
        #[arg(long)]
        object: Option<String>,
        /// Dimension vector of a real root; uses the generic representation.
        #[arg(long)]
        root: Option<String>,
        /// Representation as JSON, lifted to the integers and reduced mod each prime.
        #[arg(long)]
        rep_file: Option<PathBuf>,
    },
    /// Runs a verification suite; exits 1 if any instance fails.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: Common,
        /// Largest n for Kronecker sequences and modules.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Largest entry of the root dimension vectors considered.
        #[arg(long)]
        bound: Option<usize>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDivisible { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
            Error::Inconsistent(_) | Error::NonIntegralInterpolation { .. } | Error::SamplingExhausted { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn sampling_seed() -> std::result::Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(s) => {
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.map_err(|_| invalid(format!("{SEED_VAR} must be an unsigned integer, got {s:?}")))
        }
    }
}

impl Common {
    fn quiver(&self, fallback: Option<&str>) -> std::result::Result<QuiverSpec, Failure> {
        match (&self.quiver, &self.file, fallback) {
            (Some(name), None, _) => Ok(QuiverSpec::preset(name)?),
            (None, Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
                Ok(QuiverSpec::from_json(&text)?)
            }
            (None, None, Some(name)) => Ok(QuiverSpec::preset(name)?),
            _ => Err(invalid("give exactly one of --quiver or --file")),
        }
    }

    fn context(&self, fallback: Option<&str>) -> std::result::Result<Arc<QuiverAlgebraContext>, Failure> {
        Ok(Arc::new(QuiverAlgebraContext::new(self.quiver(fallback)?)?))
    }

    fn limits(&self) -> ExplorationLimits {
        ExplorationLimits {
            max_seeds: self.max_seeds as usize,
            max_depth: self.max_depth as usize,
        }
    }

    fn cc_options(&self, seed: u64) -> CcOptions {
        CcOptions {
            budget: self.budget,
            parallel: self.parallel,
            primes: self.primes.clone(),
            seed,
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("output serializes"),
        Format::Text => text(),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{out}").and_then(|_| stdout.flush());
}

fn cluster_strings(seed: &Seed) -> Vec<String> {
    seed.cluster().iter().map(|x| x.fraction_string()).collect()
}

fn mutate(common: &Common, directions: &[usize]) -> std::result::Result<(), Failure> {
    let quiver = common.quiver(None)?;
    let mut seed = Seed::initial(quiver.to_matrix());
    for &d in directions {
        if d == 0 || d > seed.rank() {
            return Err(invalid(format!("direction {d} out of range 1..={}", seed.rank())));
        }
        seed = seed.mutate(d - 1)?;
    }
    let cluster = cluster_strings(&seed);
    let out = json!({
        "directions": directions,
        "cluster": cluster,
        "matrix": seed.matrix().to_rows(),
        "seed": seed,
    });
    emit(common.format, &out, || {
        format!("cluster: ({})\nmatrix: {:?}", cluster.join(", "), seed.matrix().to_rows())
    });
    Ok(())
}

fn explore_cmd(common: &Common) -> std::result::Result<(), Failure> {
    let quiver = common.quiver(None)?;
    let seed = Seed::initial(quiver.to_matrix());
    let graph = explore(&seed, common.limits(), common.parallel)?;
    let (labeled, labeled_complete) = count_labeled(&seed, common.limits())?;
    let counts = json!({
        "nodes": graph.node_count(),
        "edges": graph.edge_count(),
        "variables": graph.cluster_variables().len(),
        "complete": graph.is_complete(),
        "truncated": !graph.is_complete(),
        "labeled_seeds": labeled,
        "labeled_complete": labeled_complete,
    });
    let out = json!({ "counts": counts, "graph": graph });
    emit(common.format, &out, || {
        let mut s = format!(
            "seeds: {}\nedges: {}\nvariables: {}\ncomplete: {}\nlabeled seeds: {labeled}{}",
            graph.node_count(),
            graph.edge_count(),
            graph.cluster_variables().len(),
            graph.is_complete(),
            if labeled_complete { "" } else { " (truncated)" },
        );
        for v in graph.cluster_variables() {
            s.push_str(&format!("\n  {}", v.fraction_string()));
        }
        s
    });
    Ok(())
}

fn ccmap(
    common: &Common,
    object: Option<&str>,
    root: Option<&str>,
    rep_file: Option<&PathBuf>,
) -> std::result::Result<(), Failure> {
    let ctx = common.context(None)?;
    let seed = sampling_seed()?;
    let target = match (object, root, rep_file) {
        (Some(spec), _, _) => parse_object(&ctx, spec, seed)?,
        (_, Some(d), _) => parse_object(&ctx, &format!("root:{d}"), seed)?,
        (_, _, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let rep = QuiverRep::from_json(&text, ctx.quiver())?;
            let label = path.file_stem().map_or("rep".into(), |s| s.to_string_lossy().into_owned());
            ClusterObject::module(Arc::new(IntegralRep::lift(label, &rep)))
        }
        _ => return Err(invalid("give one of --object, --root, --rep-file")),
    };
    let r = cc_of_object(&ctx, &target, &common.cc_options(seed))?;
    emit(common.format, &r, || {
        let mut s = format!(
            "{} = {}\ndenominator: {:?}",
            r.object, r.display, r.denominator.denominator
        );
        for entry in &r.chi_table {
            s.push_str(&format!("\n  chi(Gr_{:?}) = {}", entry.e, entry.chi));
        }
        s
    });
    Ok(())
}

fn default_bound(ctx: &QuiverAlgebraContext, n_max: usize) -> usize {
    if is_kronecker(ctx) {
        n_max + 1
    } else {
        6
    }
}

fn is_kronecker(ctx: &QuiverAlgebraContext) -> bool {
    QuiverSpec::preset("kronecker").is_ok_and(|k| *ctx.quiver() == k)
}

fn kronecker_objects(n_max: usize) -> Result<Vec<ClusterObject>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for kind in [KroneckerKind::U, KroneckerKind::V] {
            out.push(ClusterObject::module(Arc::new(kronecker_module(kind, n, P1Point::default())?)));
        }
    }
    for i in 0..2 {
        out.push(ClusterObject::shifted_projective(2, i)?);
    }
    Ok(out)
}

fn verify(common: &Common, suite: Suite, n_max: usize, bound: Option<usize>) -> std::result::Result<bool, Failure> {
    let fallback = (suite == Suite::Kronecker).then_some("kronecker");
    let ctx = common.context(fallback)?;
    let seed = sampling_seed()?;
    let opts = common.cc_options(seed);
    let bound = bound.unwrap_or_else(|| default_bound(&ctx, n_max));
    let report: Report = match suite {
        Suite::Denominator => {
            let objects = if is_kronecker(&ctx) {
                kronecker_objects(n_max)?
            } else {
                indecomposable_rigid_objects(&ctx, bound, seed)?
            };
            denominator_suite(&ctx, &objects, &opts)?
        }
        Suite::Exchange => exchange_suite(&ctx, bound, n_max.saturating_sub(1), &opts)?,
        Suite::Bijection => {
            let graph = explore(&initial_seed(&ctx), common.limits(), common.parallel)?;
            bijection_suite(&ctx, &graph, bound, &opts)?
        }
        Suite::Laurent => laurent_suite(&ctx, common.limits(), common.parallel)?,
        Suite::Connectivity => {
            let graph = explore(&initial_seed(&ctx), common.limits(), common.parallel)?;
            connectivity_suite(&graph)?
        }
        Suite::Kronecker => {
            if !is_kronecker(&ctx) {
                return Err(invalid("the kronecker suite needs the Kronecker quiver"));
            }
            kronecker_suite(n_max, &opts)?
        }
    };
    emit(common.format, &report, || text_report(&report, 0));
    Ok(report.passed())
}

fn text_report(r: &Report, indent: usize) -> String {
    let pad = " ".repeat(indent);
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut s = format!("{pad}{}: {status} ({:.3}s)", r.check, r.timing);
    for w in &r.witnesses {
        match serde_json::from_value::<Report>(w.clone()) {
            Ok(inner) => s.push_str(&format!("\n{}", text_report(&inner, indent + 2))),
            Err(_) => s.push_str(&format!("\n{pad}  {w}")),
        }
    }
    s
}

fn run(cli: Cli) -> std::result::Result<bool, Failure> {
    sampling_seed()?;
    match cli.command {
        Command::Mutate { common, directions } => mutate(&common, &directions).map(|()| true),
        Command::Explore { common } => explore_cmd(&common).map(|()| true),
        Command::Ccmap {
            common,
            object,
            root,
            rep_file,
        } => ccmap(&common, object.as_deref(), root.as_deref(), rep_file.as_ref()).map(|()| true),
        Command::Verify {
            suite,
            common,
            n_max,
            bound,
        } => verify(&common, suite, n_max, bound),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
