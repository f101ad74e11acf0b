use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ust_core::harness::{
    inject_uncertainty, load_ucr_tsv, load_uncertain_tsv, run_experiment, run_on_datasets, write_results,
    write_uncertain_tsv, InjectionConfig, ModelSpec, ResultWriter,
};
use ust_core::{
    select_shapelets, Classifier, Contract, ExperimentResult, Measure, OrderingKind, OrderingStrategy, SelectionConfig,
    UncertainDataset,
};

#[derive(Parser)]
#[command(name = "ust", version, about = "Uncertain shapelet transform experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Add synthetic uncertainty to a UCR-style dataset and write it as an uncertain dataset file.
    Inject(InjectArgs),
    /// Print the top-k shapelets of a training set as JSON.
    Select(SelectArgs),
    /// Train and score one model; emits one CSV row.
    Run(RunArgs),
    /// Run every model over a grid of uncertainty levels and seeds.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InjectArgs {
    /// UCR-style TSV input.
    #[arg(long)]
    train: PathBuf,
    #[command(flatten)]
    injection: InjectionArgs,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InjectionArgs {
    /// Uncertainty level.
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ModelArgs {
    /// ed, ued, dust-uniform or dust-normal.
    #[arg(long, default_value = "ued")]
    measure: String,
    /// simple, stochastic or interval for ued; natural otherwise. Defaults to
    /// interval for ued and natural for the others.
    #[arg(long)]
    ordering: Option<String>,
    /// Discretization steps of the stochastic ordering.
    #[arg(long = "cdf-k", default_value_t = ust_core::ordering::DEFAULT_CDF_STEPS)]
    cdf_k: usize,
    /// gnb or ugnb. Defaults to ugnb for ued and gnb otherwise.
    #[arg(long)]
    classifier: Option<String>,
}

impl ModelArgs {
    fn measure(&self) -> Result<Measure> {
        Ok(self.measure.parse()?)
    }

    fn ordering(&self, measure: Measure) -> Result<OrderingStrategy> {
        let kind = match &self.ordering {
            Some(o) => o.parse()?,
            None if measure.is_uncertain() => OrderingKind::Interval,
            None => OrderingKind::Natural,
        };
        Ok(OrderingStrategy::new(kind, self.cdf_k)?)
    }

    fn spec(&self) -> Result<ModelSpec> {
        let measure = self.measure()?;
        let classifier = match &self.classifier {
            Some(c) => c.parse()?,
            None if measure.is_uncertain() => Classifier::Ugnb,
            None => Classifier::Gnb,
        };
        Ok(ModelSpec::new(measure, self.ordering(measure)?, classifier)?)
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Number of shapelets.
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long = "min-len")]
    min_len: Option<usize>,
    #[arg(long = "max-len")]
    max_len: Option<usize>,
    /// Wall-clock budget per run.
    #[arg(long = "contract-seconds", default_value_t = 600.0)]
    contract_seconds: f64,
    /// Worker threads for the search; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl SearchArgs {
    fn config(&self, measure: Measure, ordering: OrderingStrategy) -> Result<SelectionConfig> {
        let mut cfg = SelectionConfig::new(self.k, measure, ordering)
            .with_contract(Contract::seconds(self.contract_seconds)?)
            .with_workers(self.workers);
        cfg.min_len = self.min_len;
        cfg.max_len = self.max_len;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SelectArgs {
    /// Training set: UCR-style TSV, or an uncertain dataset file with --uncertain.
    #[arg(long)]
    train: PathBuf,
    /// Read --train as an uncertain dataset file; no uncertainty is injected.
    #[arg(long)]
    uncertain: bool,
    #[command(flatten)]
    injection: InjectionArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    search: SearchArgs,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    test: PathBuf,
    #[command(flatten)]
    injection: InjectionArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    search: SearchArgs,
    /// Append the row to this CSV file, writing the header if the file is new.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    test: PathBuf,
    /// Uncertainty levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.4,0.8,1.2,1.6,2.0")]
    levels: Vec<f64>,
    /// Seeds, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
    seeds: Vec<u64>,
    /// Ordering used by the UED models.
    #[arg(long, default_value = "interval")]
    ordering: String,
    #[arg(long = "cdf-k", default_value_t = ust_core::ordering::DEFAULT_CDF_STEPS)]
    cdf_k: usize,
    #[command(flatten)]
    search: SearchArgs,
    /// Append rows to this CSV file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn inject(args: &InjectArgs) -> Result<()> {
    let raw = load_ucr_tsv(&args.train)?;
    let data = inject_uncertainty(&raw, &InjectionConfig::new(args.injection.c, args.injection.seed)?)?;
    let mut out = output(args.out.as_deref())?;
    write_uncertain_tsv(&data, &mut out).context("writing the uncertain dataset")?;
    out.flush()?;
    Ok(())
}

fn select(args: &SelectArgs) -> Result<()> {
    let measure = args.model.measure()?;
    let ordering = args.model.ordering(measure)?;
    let (name, data): (String, UncertainDataset) = if args.uncertain {
        (dataset_name(&args.train), load_uncertain_tsv(&args.train)?)
    } else {
        let raw = load_ucr_tsv(&args.train)?;
        let data = inject_uncertainty(&raw, &InjectionConfig::new(args.injection.c, args.injection.seed)?)?;
        (raw.name, data)
    };
    let selection = select_shapelets(&data, &args.search.config(measure, ordering)?)?;
    let doc = json!({
        "dataset": name,
        "measure": measure.as_str(),
        "ordering": ordering.kind().as_str(),
        "evaluated": selection.evaluated,
        "total_candidates": selection.total_candidates,
        "elapsed_seconds": selection.elapsed.as_secs_f64(),
        "shapelets": selection.shapelets,
    });
    let mut out = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn dataset_name(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn emit(rows: &[ExperimentResult], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = ResultWriter::append(path)?;
            for r in rows {
                w.write(r)?;
            }
        }
        None => write_results(io::stdout().lock(), rows)?,
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<()> {
    let spec = args.model.spec()?;
    let sel = args.search.config(spec.measure, spec.ordering)?;
    let inj = InjectionConfig::new(args.injection.c, args.injection.seed)?;
    let result = run_experiment(&args.train, &args.test, &spec, &inj, &sel)?;
    emit(&[result], args.out.as_deref())
}

fn bench(args: &BenchArgs) -> Result<()> {
    if args.levels.is_empty() || args.seeds.is_empty() {
        bail!("--levels and --seeds need at least one value each");
    }
    let ordering = OrderingStrategy::new(args.ordering.parse()?, args.cdf_k)?;
    let train = load_ucr_tsv(&args.train)?;
    let test = load_ucr_tsv(&args.test)?;
    let mut writer = args.out.as_deref().map(ResultWriter::append).transpose()?;
    let mut rows = Vec::new();
    for spec in ModelSpec::model_matrix(ordering) {
        let sel = args.search.config(spec.measure, spec.ordering)?;
        for &c in &args.levels {
            for &seed in &args.seeds {
                let r = run_on_datasets(&train, &test, &spec, &InjectionConfig::new(c, seed)?, &sel)
                    .with_context(|| format!("{} at c = {c}, seed {seed}", spec.name()))?;
                eprintln!("{} c={c} seed={seed} accuracy={:.4}", r.model, r.accuracy);
                match writer.as_mut() {
                    Some(w) => w.write(&r)?,
                    None => rows.push(r),
                }
            }
        }
    }
    if writer.is_none() {
        emit(&rows, None)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Inject(a) => inject(a),
        Command::Select(a) => select(a),
        Command::Run(a) => run(a),
        Command::Bench(a) => bench(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
