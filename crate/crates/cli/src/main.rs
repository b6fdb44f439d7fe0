mod specfile;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use primcycle::arith::as_prime_power;
use primcycle::classifier::{classify, ClassificationQuery, IdentifyError, Identification, Verdict};
use primcycle::families::{
    affine_line, affine_space_with_cap, projective_line_gamma_with_cap, projective_with_cap, psl2_pgl2,
    sporadic_from_text, wreath_imprimitive, ConstructedGroup, FamilyError, LineGroup, SporadicName,
};
use primcycle::field::FieldError;
use primcycle::search::cycle_census;
use primcycle::verifier::{aggregate, CheckVerdict};
use primcycle::Config;
use serde_json::json;

use crate::specfile::SpecFile;

// A closed stdout (e.g. piping into `head`) ends the process quietly.
macro_rules! println {
    ($($t:tt)*) => {{
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! print {
    ($($t:tt)*) => {{
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}
use crate::suites::Suite;

/// Environment variable naming a TOML file with default settings.
const CONFIG_ENV: &str = "PRIMCYCLE_CONFIG";

#[derive(Parser)]
#[command(name = "primcycle", version, about = "Primitive permutation groups containing a cycle")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest group order scanned element by element.
    #[arg(long, global = true)]
    exhaustive_cap: Option<u128>,
    /// Wall-clock budget per check, in seconds.
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Largest field order accepted by constructions.
    #[arg(long, global = true)]
    degree_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the families possible for a degree and fixed-point count.
    Classify {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        fixed: usize,
    },
    /// Build a group and write it as a GroupSpec JSON file.
    Construct(ConstructArgs),
    /// Report order, transitivity, primitivity, cycles and identification.
    Analyze { path: PathBuf },
    /// Run verification suites; prints one report per check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    AffineLine,
    Projective,
    Affine,
    Psl2,
    Pgl2,
    Line,
    Sporadic,
    Wreath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LineSubgroup {
    Psl,
    Psigmal,
    Pgl,
    Pgammal,
    M2,
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Field characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Field extension degree.
    #[arg(long)]
    e: Option<u32>,
    /// Field order; alternative to --p and --e.
    #[arg(long)]
    q: Option<u64>,
    /// Dimension of the projective or affine space.
    #[arg(long)]
    d: Option<u32>,
    /// Index data: order of the point stabilizer in C_p:C_m, or block size.
    #[arg(long)]
    m: Option<u64>,
    /// Number of blocks of the wreath product.
    #[arg(long)]
    blocks: Option<usize>,
    /// Sporadic representation: L2_11@11, M11@11, M11@12, M12, M22, AutM22, M23, M24.
    #[arg(long)]
    name: Option<String>,
    /// Frobenius exponent f dividing e; the group is extended by t -> t^(p^f).
    #[arg(long)]
    frobenius: Option<u32>,
    /// Group on the projective line for --family line (default pgl).
    #[arg(long, value_enum)]
    subgroup: Option<LineSubgroup>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Which checks to run.
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest degree of the converse search.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest degree of the forward sweep.
    #[arg(long, default_value_t = 60)]
    forward_max: usize,
    /// Largest d for the arithmetic elimination.
    #[arg(long, default_value_t = 40)]
    agl2_max: u32,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Include wall-clock seconds in reports.
    #[arg(long)]
    timings: bool,
}

#[derive(Default, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    seed: Option<u64>,
    exhaustive_cap: Option<u128>,
    sample_budget: Option<usize>,
    time_budget_seconds: Option<f64>,
    degree_cap: Option<u64>,
    converse_bound: Option<usize>,
}

/// Failure with its exit code: 1 for failed verification, 2 for usage or
/// input errors.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn resolve_config(cli: &Cli) -> Result<(Config, Format), Failure> {
    let file = match std::env::var_os(CONFIG_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("{}: {e}", PathBuf::from(&path).display())))?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| usage(format!("{}: {e}", PathBuf::from(&path).display())))?
        }
        None => FileConfig::default(),
    };
    let mut config = Config::default();
    if let Some(seed) = cli.seed.or(file.seed) {
        config.seed = seed;
    }
    if let Some(cap) = cli.exhaustive_cap.or(file.exhaustive_cap) {
        config.exhaustive_cap = cap;
    }
    if let Some(cap) = cli.degree_cap.or(file.degree_cap) {
        config.degree_cap = cap;
    }
    if let Some(b) = file.sample_budget {
        config.sample_budget = b;
    }
    if let Some(b) = file.converse_bound {
        config.converse_bound = b;
    }
    config.time_budget_seconds = cli.time_budget.or(file.time_budget_seconds);
    if config.time_budget_seconds.is_some_and(|t| !(t >= 0.0)) {
        return Err(usage("time budget must be non-negative"));
    }
    Ok((config, cli.format.or(file.format).unwrap_or_default()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve_config(&cli).and_then(|(config, format)| match &cli.command {
        Command::Classify { degree, fixed } => cmd_classify(*degree, *fixed, format),
        Command::Construct(args) => cmd_construct(args, &config, format),
        Command::Analyze { path } => cmd_analyze(path, &config, format),
        Command::Verify(args) => cmd_verify(args, &config, format),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn cmd_classify(n: usize, k: usize, format: Format) -> Result<u8, Failure> {
    let query = ClassificationQuery::new(n, k).map_err(|e| usage(e.to_string()))?;
    let list = classify(query);
    match format {
        Format::Json => print_json(&list),
        Format::Text => {
            println!("degree {n}, {k} fixed points");
            if list.entries.is_empty() {
                println!("  no families besides the alternating and symmetric groups");
            }
            for e in &list.entries {
                println!(
                    "  {:<3} p={} q={} d={}  {}",
                    e.tag.to_string(),
                    opt(e.p),
                    opt(e.q),
                    opt(e.d),
                    e.note
                );
                if e.members.len() > 1 {
                    for m in &e.members {
                        println!("        {}", m.group_name());
                    }
                }
            }
            println!("  always: {}", list.unconditional.join(", "));
        }
    }
    Ok(0)
}

fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::VerificationFailed { .. } | FamilyError::MalformedData(_) => Failure(1, e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn field_params(args: &ConstructArgs) -> Result<(u64, u32), Failure> {
    match (args.q, args.p) {
        (Some(q), None) => as_prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power"))),
        (None, Some(p)) => Ok((p, args.e.unwrap_or(1))),
        (Some(q), Some(p)) => match as_prime_power(q) {
            Some((pp, e)) if pp == p && args.e.is_none_or(|x| x == e) => Ok((p, e)),
            _ => Err(usage("--q disagrees with --p/--e")),
        },
        (None, None) => Err(usage("give --q or --p (and --e)")),
    }
}

fn build(args: &ConstructArgs, config: &Config) -> Result<ConstructedGroup, Failure> {
    let need = |x: Option<u32>, flag: &str| x.ok_or_else(|| usage(format!("--family needs {flag}")));
    let cap = config.degree_cap;
    let g = match args.family {
        Family::AffineLine => {
            let p = args.p.or(args.q).ok_or_else(|| usage("--family affine-line needs --p"))?;
            affine_line(p, args.m.unwrap_or(p.saturating_sub(1)))
        }
        Family::Projective | Family::Affine => {
            let (p, e) = field_params(args)?;
            let d = need(args.d, "--d")?;
            let f = args.frobenius.unwrap_or(e);
            if args.family == Family::Projective {
                projective_with_cap(d, p, e, f, cap)
            } else {
                affine_space_with_cap(d, p, e, f, cap)
            }
        }
        Family::Psl2 | Family::Pgl2 => {
            let p = args.p.or(args.q).ok_or_else(|| usage("--family psl2/pgl2 needs --p"))?;
            psl2_pgl2(p, args.family == Family::Pgl2)
        }
        Family::Line => {
            let (p, e) = field_params(args)?;
            let group = match args.subgroup.unwrap_or(LineSubgroup::Pgl) {
                LineSubgroup::Psl => LineGroup::Psl,
                LineSubgroup::Psigmal => LineGroup::PSigmaL {
                    frobenius: args.frobenius.unwrap_or(1),
                },
                LineSubgroup::Pgl => LineGroup::PGammaL { frobenius: e },
                LineSubgroup::Pgammal => LineGroup::PGammaL {
                    frobenius: args.frobenius.unwrap_or(1),
                },
                LineSubgroup::M2 => LineGroup::M2,
            };
            projective_line_gamma_with_cap(p, e, group, cap)
        }
        Family::Sporadic => {
            let name: SporadicName = args
                .name
                .as_deref()
                .ok_or_else(|| usage("--family sporadic needs --name"))?
                .parse()
                .map_err(|e: FamilyError| usage(e.to_string()))?;
            sporadic_from_text(name, name.info().data, config)
        }
        Family::Wreath => {
            let m = args.m.ok_or_else(|| usage("--family wreath needs --m"))? as usize;
            let blocks = args.blocks.ok_or_else(|| usage("--family wreath needs --blocks"))?;
            wreath_imprimitive(m, blocks)
        }
    };
    g.map_err(|e| match e {
        FamilyError::Field(FieldError::TooLarge { .. }) => usage(e.to_string()),
        e => family_failure(e),
    })
}

fn cmd_construct(args: &ConstructArgs, config: &Config, format: Format) -> Result<u8, Failure> {
    let group = build(args, config)?;
    let file = SpecFile::from_constructed(&group);
    let text = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if format == Format::Text {
                println!(
                    "wrote {} (degree {}, order {})",
                    path.display(),
                    group.degree(),
                    group.order()
                );
            }
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_analyze(path: &PathBuf, config: &Config, format: Format) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file = SpecFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let group = file.to_group().map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let sgs = group.build_sgs();
    let order = sgs.order().ok_or_else(|| usage("group order exceeds 128 bits"))?;
    let transitivity = group.transitivity_degree();
    let primitive = group.is_primitive();
    let orbits = group.orbits();
    let census = cycle_census(&sgs, config);
    let smallest = census.iter().enumerate().find_map(|(k, c)| c.found().map(|g| (k, g)));
    let identification = primcycle::classifier::identify(&group, config);
    let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let mut code = 0;
    if let Ok(id) = &identification {
        if id.is_inconsistent() {
            code = 1;
        }
    }
    match format {
        Format::Json => {
            let ident = match &identification {
                Ok(id) => json!(id),
                Err(e) => json!({ "verdict": "inapplicable", "reason": e.to_string() }),
            };
            print_json(&json!({
                "label": file.label,
                "degree": group.degree(),
                "order": order,
                "transitivity_degree": transitivity,
                "primitive": primitive,
                "orbit_sizes": orbit_sizes,
                "smallest_cycle": smallest.map(|(k, g)| json!({ "k": k, "cycle": g, "status": "found" })),
                "cycle_status": census.iter().enumerate().map(|(k, c)| json!({ "k": k, "status": c.status() })).collect::<Vec<_>>(),
                "identification": ident,
            }));
        }
        Format::Text => {
            if let Some(label) = &file.label {
                println!("{label}");
            }
            println!("degree {}", group.degree());
            println!("order {order}");
            println!("transitivity degree {transitivity}");
            println!("primitive {primitive}");
            println!("orbit sizes {orbit_sizes:?}");
            match smallest {
                Some((k, g)) => println!("cycle with k={k} fixed points: {g} (found)"),
                None => println!("no single cycle found"),
            }
            let open: Vec<usize> = census
                .iter()
                .enumerate()
                .filter(|(_, c)| c.status() == primcycle::search::CycleStatus::Inconclusive)
                .map(|(k, _)| k)
                .collect();
            if !open.is_empty() {
                println!("cycle search inconclusive for k in {open:?}");
            }
            println!("{}", describe_identification(&identification));
        }
    }
    Ok(code)
}

fn describe_identification(id: &Result<Identification, IdentifyError>) -> String {
    match id {
        Err(e) => format!("theorem inapplicable: {e}"),
        Ok(id) => match &id.verdict {
            Verdict::ContainsAlternating => "contains the alternating group".to_string(),
            Verdict::Matched { descriptors } => {
                let names: Vec<String> = descriptors
                    .iter()
                    .map(|d| format!("{} {}", d.case, d.group_name()))
                    .collect();
                format!("matched {}", names.join("; "))
            }
            Verdict::InconsistentWithTheorem { k } => {
                format!("INCONSISTENT with the classification at k={k}")
            }
        },
    }
}

fn cmd_verify(args: &VerifyArgs, config: &Config, format: Format) -> Result<u8, Failure> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let max_degree = args.max_degree.unwrap_or(config.converse_bound);
    if max_degree > config.converse_bound {
        return Err(usage(format!(
            "--max-degree {max_degree} exceeds the converse bound {}",
            config.converse_bound
        )));
    }
    let plan = suites::Plan {
        converse_max: max_degree,
        forward_max: args.forward_max,
        agl2_max: args.agl2_max,
    };
    let mut reports = Vec::new();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emit = |report: primcycle::verifier::CheckReport| {
        let report = if args.timings { report } else { report.without_timing() };
        let _ = match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("serializable")),
            Format::Text => writeln!(
                out,
                "{:<12} {:<20} {}{}",
                match report.verdict {
                    CheckVerdict::Pass => "PASS",
                    CheckVerdict::Fail => "FAIL",
                    CheckVerdict::Inconclusive => "INCONCLUSIVE",
                },
                report.check,
                report.params,
                report.seconds.map(|s| format!(" ({s:.2}s)")).unwrap_or_default()
            ),
        };
        let _ = out.flush();
        reports.push(report);
    };
    suites::run(args.suite, &plan, config, &mut emit).map_err(|e| usage(e.to_string()))?;
    Ok(match aggregate(&reports) {
        CheckVerdict::Pass => 0,
        CheckVerdict::Fail => 1,
        CheckVerdict::Inconclusive => 3,
    })
}
