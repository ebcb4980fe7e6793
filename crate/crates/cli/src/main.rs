use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use fusionkit::format::{csv_word, pretty, DecompositionRecord};
use fusionkit::linalg::DEFAULT_MAX_ENTRIES;
use fusionkit::partition::DEFAULT_MAX_POINTS;
use fusionkit::verify::{self, Suite, VerifyConfig};
use fusionkit::{
    count_nc_s, hom_dim_oracle, Alphabet, DSequence, Dimensions, Error, Exec, FusionAlphabet, FusionEngine,
    LabeledTuple, Modulus,
};

#[derive(Parser, Debug)]
#[command(
    name = "fusionkit",
    version,
    about = "Fusion rules, noncrossing counts and intertwiner ranks"
)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Order of the cyclic group: a positive integer or "inf".
    #[arg(long, global = true, default_value = "2")]
    s: Modulus,
    #[arg(long, global = true, value_enum, default_value_t = Instance::Ahs)]
    instance: Instance,
    /// Ambient dimension for ranks and dimensions.
    #[arg(long, global = true)]
    n: Option<u64>,
    #[arg(long, global = true, env = "FUSIONKIT_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
    #[arg(long, global = true, env = "FUSIONKIT_MAX_ENTRIES", default_value_t = DEFAULT_MAX_ENTRIES)]
    max_entries: u128,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Print d_k values as "a + b*sqrt(n)".
    #[arg(long, global = true)]
    symbolic: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Instance {
    Ahs,
    Ao,
    Au,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SuiteArg {
    All,
    Fusion,
    Tannaka,
    Dims,
    Formulations,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose r_x ⊗ r_y into irreducibles.
    Fuse {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// dim Hom(u_upper, u_lower).
    Homdim {
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        upper: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        lower: String,
        /// Also count partitions and, with --n, compute the rank of their maps.
        #[arg(long)]
        oracle: bool,
    },
    /// Dimension of the irreducible r_word.
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Tables.
    Table {
        #[command(subcommand)]
        which: TableKind,
    },
    /// Count labeled noncrossing partitions.
    CountNc {
        /// Upper-row labels.
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
        /// Lower-row labels.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        lower: String,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Random cases per property.
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TableKind {
    /// d_0 … d_{max_k}.
    Dims {
        #[arg(long, default_value_t = 10)]
        max_k: usize,
    },
}

/// Exit status 1: an oracle or property disagreed.
struct Failure(String);

enum Outcome {
    Usage(Error),
    Failed(Failure),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement(msg) => Outcome::Failed(Failure(msg)),
            other => Outcome::Usage(other),
        }
    }
}

type CmdResult = Result<(), Outcome>;

impl RunConfig {
    fn alphabet(&self) -> Alphabet {
        match self.instance {
            Instance::Ahs => Alphabet::Reflection(self.s),
            Instance::Ao => Alphabet::Orthogonal,
            Instance::Au => Alphabet::Unitary,
        }
    }

    fn reflection_modulus(&self) -> Result<Modulus, Error> {
        self.alphabet()
            .modulus()
            .ok_or(Error::NotReflection(self.alphabet().name()))
    }

    fn exec(&self) -> Exec {
        match self.jobs {
            Some(1) => Exec::Sequential,
            _ => Exec::Parallel,
        }
    }

    fn dims_n(&self) -> Result<u64, Error> {
        let n = self.n.ok_or_else(|| Error::Parse {
            what: "--n",
            input: String::new(),
            reason: "dimension queries need --n".into(),
        })?;
        if n < 4 {
            return Err(Error::DimensionRange(n));
        }
        Ok(n)
    }
}

fn parse_word(cfg: &RunConfig, text: &str) -> Result<fusionkit::Word, Error> {
    cfg.alphabet().word_from_raw(&fusionkit::word::parse_letters(text)?)
}

fn parse_indices(cfg: &RunConfig, text: &str) -> Result<Vec<i64>, Error> {
    let m = cfg.reflection_modulus()?;
    Ok(fusionkit::word::parse_letters(text)?
        .into_iter()
        .map(|r| m.normalize(r))
        .collect())
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn emit_scalar(cfg: &RunConfig, key: &str, value: &BigUint) {
    match cfg.format {
        Format::Pretty => println!("{value}"),
        Format::Json => println!("{}", json!({ key: value.to_string() })),
        Format::Csv => print!("{}", csv_rows(&[key], vec![vec![value.to_string()]])),
    }
}

fn cmd_fuse(cfg: &RunConfig, x: &str, y: &str) -> CmdResult {
    let (x, y) = (parse_word(cfg, x)?, parse_word(cfg, y)?);
    let a = cfg.alphabet();
    let d = FusionEngine::new(a).fuse(&x, &y);
    match cfg.format {
        Format::Pretty => print!("{}", pretty(&d)),
        Format::Json => println!("{}", DecompositionRecord::new(&d, cfg.s, &a).to_json()),
        Format::Csv => {
            let rows = d.iter().map(|(w, m)| vec![csv_word(w), m.to_string()]).collect();
            print!("{}", csv_rows(&["word", "mult"], rows));
        }
    }
    Ok(())
}

fn cmd_homdim(cfg: &RunConfig, upper: &str, lower: &str, oracle: bool) -> CmdResult {
    let m = cfg.reflection_modulus()?;
    let (up, low) = (parse_indices(cfg, upper)?, parse_indices(cfg, lower)?);
    let engine = FusionEngine::reflection(m).hom_dimension(&up, &low)?;
    if !oracle {
        emit_scalar(cfg, "hom_dimension", &engine);
        return Ok(());
    }
    let t = LabeledTuple::new(up, low);
    let count = BigUint::from(count_nc_s(&t, m, cfg.max_points)?);
    let rank = match cfg.n {
        Some(n) => Some(BigUint::from(hom_dim_oracle(
            &t,
            n,
            m,
            cfg.max_points,
            cfg.max_entries,
            cfg.exec(),
        )?)),
        None => None,
    };
    // below n = 4 the maps may be dependent, so the rank is reported only
    let compared = cfg.n.is_some_and(|n| n >= 4);
    let agree = engine == count && (!compared || rank.as_ref() == Some(&engine));
    match cfg.format {
        Format::Pretty => {
            println!("hom_dimension {engine}");
            println!("nc_count {count}");
            if let Some(r) = &rank {
                println!("rank {r}{}", if compared { "" } else { " (not compared for n < 4)" });
            }
        }
        Format::Json => println!(
            "{}",
            json!({
                "hom_dimension": engine.to_string(),
                "nc_count": count.to_string(),
                "rank": rank.as_ref().map(ToString::to_string),
                "rank_compared": compared,
                "agree": agree,
            })
        ),
        Format::Csv => print!(
            "{}",
            csv_rows(
                &["hom_dimension", "nc_count", "rank"],
                vec![vec![
                    engine.to_string(),
                    count.to_string(),
                    rank.map(|r| r.to_string()).unwrap_or_default()
                ]]
            )
        ),
    }
    if agree {
        Ok(())
    } else {
        Err(Outcome::Failed(Failure("hom dimension oracles disagree".into())))
    }
}

fn cmd_dim(cfg: &RunConfig, word: &str) -> CmdResult {
    let m = cfg.reflection_modulus()?;
    let n = cfg.dims_n()?;
    let x = parse_word(cfg, word)?;
    let d = Dimensions::new(m, n)?.of_word(&x)?;
    emit_scalar(cfg, "dimension", &d);
    Ok(())
}

fn cmd_table_dims(cfg: &RunConfig, max_k: usize) -> CmdResult {
    let n = cfg.dims_n()?;
    let seq = DSequence::new(n)?;
    let terms: Vec<_> = (0..=max_k).map(|k| seq.get(k)).collect();
    let value = |d: &fusionkit::RootInt| match (cfg.symbolic, d.collapsed()) {
        (false, Some(v)) => v.to_string(),
        (false, None) => d.to_string(),
        (true, _) => d.symbolic(),
    };
    match cfg.format {
        Format::Pretty => println!("{}", terms.iter().map(value).collect::<Vec<_>>().join(",")),
        Format::Json => {
            let rows: Vec<_> = terms
                .iter()
                .enumerate()
                .map(|(k, d)| json!({ "k": k, "a": d.a.to_string(), "b": d.b.to_string(), "value": value(d) }))
                .collect();
            println!("{}", json!({ "n": n, "d": rows }));
        }
        Format::Csv => {
            let rows = terms
                .iter()
                .enumerate()
                .map(|(k, d)| vec![k.to_string(), d.a.to_string(), d.b.to_string(), value(d)])
                .collect();
            print!("{}", csv_rows(&["k", "a", "b", "value"], rows));
        }
    }
    Ok(())
}

fn cmd_count_nc(cfg: &RunConfig, labels: &str, lower: &str) -> CmdResult {
    let parse = fusionkit::word::parse_letters;
    let t = LabeledTuple::new(parse(labels)?, parse(lower)?);
    let count = count_nc_s(&t, cfg.s, cfg.max_points)?;
    emit_scalar(cfg, "count", &BigUint::from(count));
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, suite: SuiteArg, cases: usize) -> CmdResult {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Fusion => Suite::Fusion,
        SuiteArg::Tannaka => Suite::Tannaka,
        SuiteArg::Dims => Suite::Dims,
        SuiteArg::Formulations => Suite::Formulations,
    };
    if suite == Suite::Dims {
        if let Some(n) = cfg.n {
            if n < 4 {
                return Err(Error::DimensionRange(n).into());
            }
        }
    }
    let vc = VerifyConfig {
        modulus: cfg.s,
        alphabet: cfg.alphabet(),
        n: cfg.n,
        seed: cfg.seed,
        cases,
        max_points: cfg.max_points,
        max_entries: cfg.max_entries,
        exec: cfg.exec(),
    };
    let outcomes = verify::run_suite(suite, &vc);
    let passed = verify::all_passed(&outcomes);
    match cfg.format {
        Format::Pretty => {
            for o in &outcomes {
                println!("{o}");
            }
            println!("{}", if passed { "pass" } else { "fail" });
        }
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "property": o.name,
                        "passed": o.passed(),
                        "cases": o.cases,
                        "failed": o.failed,
                        "seconds": o.elapsed.as_secs_f64(),
                        "failures": o.failures,
                        "notes": o.notes,
                    })
                })
                .collect();
            println!("{}", json!({ "passed": passed, "properties": rows }));
        }
        Format::Csv => {
            let rows = outcomes
                .iter()
                .map(|o| {
                    vec![
                        o.name.clone(),
                        o.passed().to_string(),
                        o.cases.to_string(),
                        o.failed.to_string(),
                        format!("{:.6}", o.elapsed.as_secs_f64()),
                    ]
                })
                .collect();
            print!(
                "{}",
                csv_rows(&["property", "passed", "cases", "failed", "seconds"], rows)
            );
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Outcome::Failed(Failure("some properties failed".into())))
    }
}

#[cfg(feature = "parallel")]
fn configure_pool(jobs: Option<usize>) {
    if let Some(j) = jobs.filter(|&j| j > 1) {
        // a pool can only be installed once; a second call is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_jobs: Option<usize>) {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.cfg;
    configure_pool(cfg.jobs);
    let result = match &cli.cmd {
        Command::Fuse { x, y } => cmd_fuse(cfg, x, y),
        Command::Homdim { upper, lower, oracle } => cmd_homdim(cfg, upper, lower, *oracle),
        Command::Dim { word } => cmd_dim(cfg, word),
        Command::Table {
            which: TableKind::Dims { max_k },
        } => cmd_table_dims(cfg, *max_k),
        Command::CountNc { labels, lower } => cmd_count_nc(cfg, labels, lower),
        Command::Verify { suite, cases } => cmd_verify(cfg, *suite, *cases),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Failed(Failure(msg))) => {
            eprintln!("fusionkit: {msg}");
            ExitCode::from(1)
        }
        Err(Outcome::Usage(e)) => {
            eprintln!("fusionkit: {e}");
            ExitCode::from(2)
        }
    }
}
