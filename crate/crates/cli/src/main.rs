use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fintopo::bingh::bing_hanner;
use fintopo::catalog::{catalog_build, catalog_query, CatalogRecord};
use fintopo::dimension::{cov_dim, ind_boundary, ind_partition, large_ind, DimensionRegistry};
use fintopo::harness::{Status, SuiteKind, SuiteOptions, SuiteRegistry, VerificationReport};
use fintopo::lattice::{enumerate_extensions_with_limit, DEFAULT_ENUMERATION_LIMIT};
use fintopo::structural::{decompose_zero_dim, sn, sn_bh, ClassPredicate, SnValue};
use fintopo::{Error, FiniteSpace, PointSet, SeparationProfile};

#[derive(Parser)]
#[command(name = "fintopo", version, about = "Finite topological spaces: dimensions, Bing-Hanner modifications, structural numbers")]
struct Cli {
    /// Worker threads for catalog builds and verification sweeps.
    #[arg(long, global = true, env = "FINTOPO_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Separation axioms, dimensions, density and isolated points of a space.
    Analyze {
        space: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The modification τ(M) and its analysis.
    Bh {
        space: PathBuf,
        /// Comma-separated point indices, empty for M = ∅.
        #[arg(long = "m", allow_hyphen_values = true)]
        m: String,
        #[arg(long)]
        json: bool,
    },
    /// Structural number with respect to a class.
    Sn {
        space: PathBuf,
        #[arg(long)]
        class: String,
        /// Only families of Bing-Hanner modifications.
        #[arg(long)]
        bh_only: bool,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Topologies finer than the given one.
    Extensions {
        space: PathBuf,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Build or query a catalog of homeomorphism classes.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run verification suites over every class on n points.
    Verify(VerifyArgs),
    /// Least cover by subspaces of dimension at most 0.
    Decompose {
        space: PathBuf,
        #[arg(long)]
        dim: String,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Analyze every homeomorphism class on n points and write a catalog.
    Build {
        #[arg(long)]
        n: usize,
        /// Comma-separated class names for structural numbers.
        #[arg(long, default_value = "ind0,dim0")]
        classes: String,
        #[arg(long)]
        out: PathBuf,
        /// Permit n = 6.
        #[arg(long)]
        allow_six: bool,
    },
    /// Records matching a conjunctive filter.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inputs drawn per class when sampling (n = 5).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // a name the user typed that we do not know is a usage error
            let usage = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::UnknownSuite(_) | Error::UnknownClass(_) | Error::UnknownDimension(_) | Error::UnknownField(_))
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analyze { space, json } => {
            let s = load(&space)?;
            emit(&analysis(&s), json, print_analysis);
        }
        Command::Bh { space, m, json } => {
            let s = load(&space)?;
            let m = parse_subset(s.n(), &m)?;
            let t = bing_hanner(&s, m);
            let opens = serde_json::to_value(t.to_opens_file())?;
            if json {
                println!("{}", json!({ "M": m.to_vec(), "space": opens, "analysis": analysis(&t) }));
            } else {
                println!("M = {m}");
                println!("{opens}");
                print_analysis(&analysis(&t));
            }
        }
        Command::Sn {
            space,
            class,
            bh_only,
            max_k,
            json,
        } => {
            let s = load(&space)?;
            let pred = ClassPredicate::named(&class)?;
            let result = if bh_only {
                sn_bh(&s, &pred, max_k).map(|v| (v.value, Some(v.subsets)))
            } else {
                sn(&s, &pred, max_k).map(|v| (v, None))
            };
            match result {
                Ok((value, subsets)) => print_sn(&class, &value, subsets.as_deref(), json)?,
                Err(Error::BoundExhausted { max_k }) => {
                    if json {
                        println!("{}", json!({ "class": class, "kind": "bound_exhausted", "max_k": max_k }));
                    } else {
                        println!("sn[{class}] > {max_k} (bound-exhausted)");
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Extensions {
            space,
            class,
            count_only,
        } => {
            let s = load(&space)?;
            let pred = class.as_deref().map(ClassPredicate::named).transpose()?;
            let mut count = 0usize;
            for mu in enumerate_extensions_with_limit(&s, DEFAULT_ENUMERATION_LIMIT)? {
                if pred.as_ref().is_some_and(|p| !p.evaluate(&mu)) {
                    continue;
                }
                count += 1;
                if !count_only {
                    println!("{}", serde_json::to_string(&mu.to_opens_file())?);
                }
            }
            if count_only {
                println!("{count}");
            }
        }
        Command::Catalog(CatalogCommand::Build {
            n,
            classes,
            out,
            allow_six,
        }) => {
            let preds = classes
                .split(',')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(ClassPredicate::named)
                .collect::<fintopo::Result<Vec<_>>>()?;
            let limit = if allow_six { 6 } else { DEFAULT_ENUMERATION_LIMIT };
            let summary = catalog_build(n, &preds, &out, limit)?;
            println!("classes: {}", summary.classes);
            println!("labeled topologies: {}", summary.labeled_total);
            for (field, hist) in &summary.histograms {
                let cells: Vec<String> = hist.iter().map(|(v, c)| format!("{v}:{c}")).collect();
                println!("{field}: {}", cells.join(" "));
            }
            eprintln!("built in {:.3}s", summary.elapsed.as_secs_f64());
        }
        Command::Catalog(CatalogCommand::Query { input, filter, json }) => {
            let records = catalog_query(&input, &filter)?;
            if json {
                for r in &records {
                    println!("{}", serde_json::to_string(r)?);
                }
            } else {
                print_records(&records);
            }
        }
        Command::Verify(args) => return verify(args),
        Command::Decompose { space, dim } => {
            let s = load(&space)?;
            let registry = DimensionRegistry::standard();
            let d = decompose_zero_dim(&s, registry.get(&dim)?)?;
            println!("k = {}", d.k);
            for p in &d.pieces {
                println!("{p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load(path: &Path) -> anyhow::Result<FiniteSpace> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(FiniteSpace::from_json(&text)?)
}

fn parse_subset(n: usize, text: &str) -> anyhow::Result<PointSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut idx = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().with_context(|| format!("bad point index `{part}`"))?;
        if i >= n {
            bail!("point {i} outside a space of {n} points");
        }
        idx.push(i);
    }
    Ok(PointSet::from_indices(n, idx).expect("indices checked"))
}

fn analysis(s: &FiniteSpace) -> Value {
    json!({
        "points": s.n(),
        "profile": s.separation_profile(),
        "ind_b": ind_boundary(s),
        "ind_p": ind_partition(s),
        "Ind": large_ind(s),
        "dim": cov_dim(s),
        "density": s.density(),
        "isolated": s.isolated_points().to_vec(),
    })
}

fn print_analysis(a: &Value) {
    println!("points: {}", a["points"]);
    let profile: SeparationProfile = serde_json::from_value(a["profile"].clone()).expect("profile round-trips");
    let flags: Vec<String> = profile.flags().iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("separation: {}", flags.join(" "));
    for key in ["ind_b", "ind_p", "Ind", "dim", "density"] {
        let v = &a[key];
        println!("{key}: {}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()));
    }
    println!("isolated: {}", a["isolated"]);
}

fn emit(value: &Value, json: bool, plain: fn(&Value)) {
    if json {
        println!("{value}");
    } else {
        plain(value);
    }
}

fn print_sn(class: &str, value: &SnValue, subsets: Option<&[PointSet]>, json: bool) -> anyhow::Result<()> {
    if json {
        let mut v = serde_json::to_value(value)?;
        if let SnValue::Finite { witness, .. } = value {
            v["witness"] = witness.iter().map(|w| serde_json::to_value(w.to_opens_file())).collect::<Result<_, _>>()?;
        }
        v["class"] = Value::from(class);
        if let Some(ms) = subsets {
            v["subsets"] = ms.iter().map(|m| Value::from(m.to_vec())).collect();
        }
        println!("{v}");
        return Ok(());
    }
    println!("sn[{class}] = {}", value.summary());
    if let SnValue::Finite { witness, .. } = value {
        for (i, w) in witness.iter().enumerate() {
            let m = subsets.map(|ms| format!(" M = {}", ms[i])).unwrap_or_default();
            println!("witness {}{m}: {}", i + 1, serde_json::to_string(&w.to_opens_file())?);
        }
    }
    Ok(())
}

fn print_records(records: &[CatalogRecord]) {
    println!("{:<14} {:>7} {:>5} {:>5} {:>5} {:>5} {:>8} {:>8}  sn", "code", "labeled", "ind_b", "ind_p", "Ind", "dim", "isolated", "density");
    for r in records {
        let sn: Vec<String> = r.sn_results.iter().map(|(k, v)| format!("{k}={}", v.summary())).collect();
        println!(
            "{:<14} {:>7} {:>5} {:>5} {:>5} {:>5} {:>8} {:>8}  {}",
            r.code.to_string(),
            r.labeled_count,
            r.ind_b.to_string(),
            r.ind_p.to_string(),
            r.large_ind.to_string(),
            r.dim.to_string(),
            r.isolated,
            r.density,
            sn.join(" ")
        );
    }
    println!("{} records", records.len());
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let registry = SuiteRegistry::standard();
    let mut options = SuiteOptions {
        seed: args.seed,
        ..SuiteOptions::default()
    };
    if let Some(s) = args.samples {
        options.samples = s;
    }
    let reports: Vec<VerificationReport> = if args.suite == "all" {
        registry.run_all(args.n, &options)?
    } else {
        vec![registry.run(&args.suite, args.n, &options)?]
    };
    let mut failed = false;
    for r in &reports {
        println!("{}", r.summary());
        if let Some(e) = &r.error {
            println!("  error: {e}");
        }
        for v in &r.violations {
            println!("  {} {} expected: {}; observed: {}", v.code, v.inputs, v.expected, v.observed);
        }
        failed |= r.kind == SuiteKind::Hard && r.status != Status::Pass;
    }
    if let Some(path) = &args.report {
        let text = if reports.len() == 1 {
            reports[0].to_json()?
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
