use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prismrn_core::construction::{construct_with_variant, ConstructionReport};
use prismrn_core::graphs::parse_adjacency_json;
use prismrn_core::labeling::{parse_labeling_json, violations_csv};
use prismrn_core::solver::{parse_sweep_csv, sweep_csv};
use prismrn_core::{
    all_pairs_distances, build_cycle, build_star, closed_form_rn, construct_best, exact_rn, export_graph,
    paper_literal_labeling, star_cycle_product, sweep, verify, Candidate, Error, ExactStatus, ExportFormat, Graph,
    SweepOptions, Variant, DEFAULT_SEEDS,
};

use crate::plot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Violations = 1,
    Usage = 2,
    BudgetExceeded = 3,
}

/// Exit code for a failed command.
pub fn exit_for(err: &anyhow::Error) -> Exit {
    match err.downcast_ref::<Error>() {
        Some(Error::MalformedLabeling(_)) => Exit::Violations,
        _ => Exit::Usage,
    }
}

/// Inclusive integer range, written `a..b` or as a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: usize,
    pub end: usize,
}

impl IntRange {
    pub fn single(&self, flag: &str) -> anyhow::Result<usize> {
        if self.start != self.end {
            bail!("--{flag} takes a single value here, got {}..{}", self.start, self.end);
        }
        Ok(self.start)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(IntRange { start, end })
    }
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("seed '{t}': {e}")))
        .collect()
}

fn parse_budget(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e| format!("budget '{s}': {e}"))?;
    Duration::try_from_secs_f64(secs).map_err(|e| format!("budget '{s}': {e}"))
}

#[derive(Debug, Parser)]
#[command(name = "prismrn", version, about = "Radio labelings of strong products of stars and cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a star, cycle, or S_n ⊠ C_m and export it.
    Build(BuildArgs),
    /// Construct a labeling of S_n ⊠ C_m.
    Label(LabelArgs),
    /// Check a labeling against the radio condition.
    Verify(VerifyArgs),
    /// Exact radio number by branch-and-bound.
    Exact(ExactArgs),
    /// Evaluate a grid of (n, m) and write CSV.
    Sweep(SweepArgs),
    /// Chart the formula values of a sweep CSV as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelMethod {
    Paper,
    Heuristic,
    Best,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Antipodal,
    CriticalPath,
    Identity,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Antipodal => Variant::Antipodal,
            VariantArg::CriticalPath => Variant::CriticalPath,
            VariantArg::Identity => Variant::Identity,
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Star order; with --m builds S_n ⊠ C_m, alone builds S_n.
    #[arg(long)]
    pub n: Option<IntRange>,
    /// Cycle order; alone builds C_m.
    #[arg(long)]
    pub m: Option<IntRange>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[arg(long)]
    pub n: IntRange,
    #[arg(long)]
    pub m: IntRange,
    #[arg(long, value_enum, default_value = "best")]
    pub method: LabelMethod,
    /// Ordering variant for --method heuristic.
    #[arg(long, value_enum, default_value = "antipodal")]
    pub variant: VariantArg,
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<Vec<u64>>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Labeling JSON to check. Without it, --n/--m/--method generate one.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<IntRange>,
    #[arg(long)]
    pub m: Option<IntRange>,
    #[arg(long, value_enum, default_value = "paper")]
    pub method: LabelMethod,
    #[arg(long, value_enum, default_value = "antipodal")]
    pub variant: VariantArg,
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<Vec<u64>>,
    /// Where to write the violations CSV (stdout by default).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: Option<IntRange>,
    #[arg(long)]
    pub m: Option<IntRange>,
    /// Graph JSON (as written by `build --format json`) instead of --n/--m.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Seconds.
    #[arg(long, value_parser = parse_budget, default_value = "60")]
    pub budget: Duration,
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<Vec<u64>>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: IntRange,
    #[arg(long)]
    pub m: IntRange,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Per-instance exact budget in seconds.
    #[arg(long, value_parser = parse_budget, default_value = "60")]
    pub budget: Duration,
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<Vec<u64>>,
    /// Run the exact solver only when (n+1)·m is at most this.
    #[arg(long, default_value_t = 15)]
    pub exact_cap: usize,
    /// Fill the elapsed_ms column (output is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Sweep CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// SVG path.
    #[arg(long)]
    pub output: PathBuf,
    /// Tidy CSV of the plotted points; defaults to the SVG path with a .csv
    /// extension.
    #[arg(long)]
    pub series_output: Option<PathBuf>,
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<Exit> {
    match cli.command {
        Command::Build(args) => build(args, stdout),
        Command::Label(args) => label(args, stdout),
        Command::Verify(args) => verify_cmd(args, stdout, stderr),
        Command::Exact(args) => exact(args, stdout, stderr),
        Command::Sweep(args) => sweep_cmd(args, stdout),
        Command::Plot(args) => plot_cmd(args, stderr),
    }
}

fn emit(output: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => stdout.write_all(bytes).context("writing to stdout"),
    }
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn build(args: BuildArgs, stdout: &mut dyn Write) -> anyhow::Result<Exit> {
    let n = args.n.map(|r| r.single("n")).transpose()?;
    let m = args.m.map(|r| r.single("m")).transpose()?;
    let graph = match (n, m) {
        (Some(n), Some(m)) => star_cycle_product(n, m)?,
        (Some(n), None) => build_star(n)?,
        (None, Some(m)) => build_cycle(m)?,
        (None, None) => bail!("build needs --n, --m, or both"),
    };
    let format = match args.format {
        GraphFormat::Dot => ExportFormat::Dot,
        GraphFormat::Json => ExportFormat::AdjacencyJson,
    };
    emit(args.output.as_deref(), &export_graph(&graph, format), stdout)?;
    Ok(Exit::Success)
}

fn seeds_or_default(seeds: Option<Vec<u64>>) -> Vec<u64> {
    seeds.filter(|s| !s.is_empty()).unwrap_or_else(|| DEFAULT_SEEDS.to_vec())
}

fn make_report(n: usize, m: usize, method: LabelMethod, variant: Variant, seeds: &[u64]) -> anyhow::Result<ConstructionReport> {
    Ok(match method {
        LabelMethod::Best => construct_best(n, m, seeds)?,
        LabelMethod::Heuristic => construct_with_variant(n, m, variant, seeds)?,
        LabelMethod::Paper => {
            let formula = closed_form_rn(n, m)?;
            let labeling = paper_literal_labeling(n, m)?;
            let dm = all_pairs_distances(&star_cycle_product(n, m)?)?;
            let violations = verify(&dm, &labeling)?.len();
            ConstructionReport {
                n,
                m,
                achieved_span: labeling.span(),
                labeling,
                formula_value: formula.value,
                paper_literal_violations: violations,
                method_chosen: Candidate::PaperLiteral,
            }
        }
    })
}

fn label(args: LabelArgs, stdout: &mut dyn Write) -> anyhow::Result<Exit> {
    let (n, m) = (args.n.single("n")?, args.m.single("m")?);
    let seeds = seeds_or_default(args.seeds);
    let report = make_report(n, m, args.method, args.variant.into(), &seeds)?;
    let graph = star_cycle_product(n, m)?;
    let dm = all_pairs_distances(&graph)?;
    emit(args.output.as_deref(), &to_json(&report.document(&graph, &dm)?)?, stdout)?;
    Ok(Exit::Success)
}

fn verify_cmd(args: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<Exit> {
    let (graph, labeling) = match (&args.input, args.n, args.m) {
        (Some(path), _, _) => parse_labeling_json(&read(path)?)?,
        (None, Some(n), Some(m)) => {
            let (n, m) = (n.single("n")?, m.single("m")?);
            let seeds = seeds_or_default(args.seeds.clone());
            let report = make_report(n, m, args.method, args.variant.into(), &seeds)?;
            (star_cycle_product(n, m)?, report.labeling)
        }
        _ => bail!("verify needs --input, or --n and --m"),
    };
    let dm = all_pairs_distances(&graph)?;
    let violations = verify(&dm, &labeling)?;
    emit(args.output.as_deref(), violations_csv(&graph, &violations).as_bytes(), stdout)?;
    writeln!(
        stderr,
        "vertices={} diameter={} span={} violations={} valid={}",
        graph.vertex_count(),
        dm.diameter(),
        labeling.span(),
        violations.len(),
        violations.is_empty()
    )?;
    Ok(if violations.is_empty() { Exit::Success } else { Exit::Violations })
}

fn exact_graph(args: &ExactArgs) -> anyhow::Result<Graph> {
    match (&args.input, args.n, args.m) {
        (Some(path), _, _) => Ok(parse_adjacency_json(&read(path)?)?),
        (None, Some(n), Some(m)) => Ok(star_cycle_product(n.single("n")?, m.single("m")?)?),
        (None, Some(n), None) => Ok(build_star(n.single("n")?)?),
        (None, None, Some(m)) => Ok(build_cycle(m.single("m")?)?),
        (None, None, None) => Err(anyhow!("exact needs --input or --n/--m")),
    }
}

fn exact(args: ExactArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<Exit> {
    let graph = exact_graph(&args)?;
    let seeds = seeds_or_default(args.seeds.clone());
    let result = exact_rn(&graph, args.budget, &seeds)?;
    let dm = all_pairs_distances(&graph)?;
    emit(args.output.as_deref(), &to_json(&result.document(&graph, &dm)?)?, stdout)?;
    writeln!(
        stderr,
        "optimum={} status={} nodes={}",
        result.optimum,
        result.status.as_str(),
        result.nodes_explored
    )?;
    Ok(match result.status {
        ExactStatus::Proven => Exit::Success,
        ExactStatus::BudgetExceededUpperBound => Exit::BudgetExceeded,
    })
}

fn sweep_cmd(args: SweepArgs, stdout: &mut dyn Write) -> anyhow::Result<Exit> {
    let options = SweepOptions {
        jobs: args.jobs as usize,
        exact_vertex_cap: args.exact_cap,
        budget: args.budget,
        seeds: seeds_or_default(args.seeds),
    };
    let records = sweep(args.n.start..=args.n.end, args.m.start..=args.m.end, &options)?;
    emit(args.output.as_deref(), sweep_csv(&records, args.timings)?.as_bytes(), stdout)?;
    Ok(Exit::Success)
}

fn plot_cmd(args: PlotArgs, stderr: &mut dyn Write) -> anyhow::Result<Exit> {
    let text = String::from_utf8(read(&args.input)?).context("sweep CSV is not UTF-8")?;
    let records = parse_sweep_csv(&text)?;
    if records.is_empty() {
        bail!("{} has no rows", args.input.display());
    }
    let series = plot::series(&records);
    fs::write(&args.output, plot::render_svg(&series))
        .with_context(|| format!("writing {}", args.output.display()))?;
    let series_path = args.series_output.unwrap_or_else(|| args.output.with_extension("csv"));
    if series_path == args.input {
        bail!("series output would overwrite the input {}", args.input.display());
    }
    fs::write(&series_path, plot::tidy_csv(&records)?)
        .with_context(|| format!("writing {}", series_path.display()))?;
    let rising = series.iter().filter(|s| s.is_strictly_increasing()).count();
    writeln!(stderr, "series={} strictly_increasing_in_n={rising}", series.len())?;
    Ok(Exit::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("2..4".parse::<IntRange>().unwrap(), IntRange { start: 2, end: 4 });
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange { start: 7, end: 7 });
        assert!("4..2".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
        assert!("2..4".parse::<IntRange>().unwrap().single("n").is_err());
    }

    #[test]
    fn seeds_and_budget() {
        assert_eq!(parse_seeds("0, 1,5").unwrap(), vec![0, 1, 5]);
        assert!(parse_seeds("1,a").is_err());
        assert_eq!(parse_budget("1.5").unwrap(), Duration::from_millis(1500));
        assert!(parse_budget("-1").is_err());
    }

    #[test]
    fn exit_codes_for_errors() {
        let malformed = anyhow::Error::from(Error::MalformedLabeling("x".into()));
        assert_eq!(exit_for(&malformed), Exit::Violations);
        let parse = anyhow::Error::from(Error::Parse("x".into()));
        assert_eq!(exit_for(&parse), Exit::Usage);
    }
}
