//! Command-line front end shared by the `wrank` binary and its tests.
//!
//! Exit codes: 0 on success, 1 on any validation or usage error (reported as
//! one `error: <kind>: <message>` line on stderr), 2 when `repro-table1`
//! finds a value outside tolerance.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::aggregate::AggregationResult;
use crate::baselines::{best_input_vote, borda_result, exhaustive_opt, plurality_result, OPT_CAP};
use crate::distance::{
    path_table_from_adjacent, Metric, Objective, Space, TranspositionWeights, WeightVector,
    EXACT_CAP,
};
use crate::error::Error;
use crate::fixtures::{table1_profile, TABLE1_EXPECTED, TABLE1_TOLERANCE, TABLE1_WEIGHTS};
use crate::io::{expand_weights, parse_votes, Layout, RunReport, WeightSpec};
use crate::markov::{mc_aggregate, Chain};
use crate::matching::{aggregate_matching, bmls};
use crate::permutation::{Ranking, VoteProfile};

#[derive(Debug, Parser)]
#[command(
    name = "wrank",
    version,
    about = "Weighted rank distances and rank aggregation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two rankings given as comma-separated candidate lists.
    Distance {
        #[command(flatten)]
        common: Common,
        first: String,
        second: String,
    },
    /// Run one aggregation method on a vote file.
    Aggregate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Run every applicable method and tabulate ranking and average distance.
    Compare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Recompute the 11-vote benchmark for its four weight vectors and diff
    /// the average distances against the reference values.
    #[command(name = "repro-table1")]
    ReproTable1 {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// `uniform`, `arithmetic`, `geometric:C` (w_i = C^(i-1)), `topk:K`, or a
    /// comma-separated list of n-1 weights.
    #[arg(long, default_value = "uniform")]
    weights: String,
    #[arg(long, value_enum, default_value_t = MetricArg::WeightedKendall)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t = SpaceArg::Ranks)]
    space: SpaceArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest n for which exact distances are computed by search.
    #[arg(long, default_value_t = EXACT_CAP)]
    exact_cap: usize,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Vote file, or `@table1` for the built-in benchmark profile.
    #[arg(long)]
    votes: PathBuf,
    #[arg(long, value_enum, default_value_t = LayoutArg::Rows)]
    layout: LayoutArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Opt,
    Matching,
    Bmls,
    Mc,
    Mc1,
    Mc2,
    Mc3,
    BestInput,
    Plurality,
    Borda,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    /// Exact weighted Kendall distance (search, n <= exact cap).
    WeightedKendall,
    /// Generalized footrule D of the weighted Kendall path table.
    FootruleD,
    KendallTau,
    Spearman,
    /// Cayley distance (every transposition costs 1).
    Cayley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Ranks,
    Elements,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Rows,
    Matrix,
}

enum Failure {
    Invalid(Error),
    Io(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string();
            let line = first.lines().next().unwrap_or("invalid arguments");
            let line = line.trim_start_matches("error: ");
            let _ = writeln!(err, "error: usage: {line}");
            return 1;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {}: {}", e.kind(), e);
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: io: {msg}");
            1
        }
        Err(Failure::Mismatch) => {
            let _ = writeln!(
                err,
                "error: reproduction-mismatch: values outside tolerance"
            );
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Distance {
            common,
            first,
            second,
        } => distance(&common, &first, &second, out),
        Command::Aggregate {
            common,
            input,
            method,
        } => {
            let profile = load(&input)?;
            report(&common, &profile, method, out)
        }
        Command::Compare { common, input } => {
            let profile = load(&input)?;
            report(&common, &profile, Method::All, out)
        }
        Command::ReproTable1 { format } => repro_table1(format, out),
    }
}

fn parse_ranking(text: &str) -> Result<Ranking, Error> {
    let profile = parse_votes(text, Layout::Rows)?;
    if profile.m() != 1 {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected a single ranking".into(),
        });
    }
    Ok(profile.votes()[0].clone())
}

fn load(input: &Input) -> Result<VoteProfile, Failure> {
    if input.votes.as_os_str() == "@table1" {
        return Ok(table1_profile());
    }
    let text = std::fs::read_to_string(&input.votes)
        .map_err(|e| Failure::Io(format!("{}: {e}", input.votes.display())))?;
    let layout = match input.layout {
        LayoutArg::Rows => Layout::Rows,
        LayoutArg::Matrix => Layout::Matrix,
    };
    Ok(parse_votes(&text, layout)?)
}

fn objective(common: &Common, n: usize) -> Result<(Objective, WeightVector), Error> {
    let spec: WeightSpec = common.weights.parse()?;
    let w = expand_weights(&spec, n)?;
    let metric = match common.metric {
        MetricArg::WeightedKendall => Metric::WeightedKendall(w.clone()),
        MetricArg::FootruleD => Metric::GeneralizedFootrule(path_table_from_adjacent(&w)),
        MetricArg::KendallTau => Metric::KendallTau,
        MetricArg::Spearman => Metric::SpearmanFootrule,
        MetricArg::Cayley => Metric::WeightedTransposition(TranspositionWeights::uniform(n)?),
    };
    let space = match common.space {
        SpaceArg::Ranks => Space::Ranks,
        SpaceArg::Elements => Space::Elements,
    };
    Ok((
        Objective::new(metric)
            .with_space(space)
            .with_exact_cap(common.exact_cap),
        w,
    ))
}

fn distance(common: &Common, first: &str, second: &str, out: &mut dyn Write) -> CliResult {
    let p = parse_ranking(first)?;
    let s = parse_ranking(second)?;
    if p.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: s.len(),
        }
        .into());
    }
    let (obj, _) = objective(common, p.len())?;
    let d = obj.distance(&p, &s)?;
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct DistanceOut<'a> {
                metric: &'a str,
                space: Space,
                distance: f64,
            }
            let body = DistanceOut {
                metric: obj.metric().name(),
                space: obj.space(),
                distance: d,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&body).expect("serializable")
            )?;
        }
        Format::Table => writeln!(out, "{d}")?,
    }
    Ok(())
}

fn run_method(
    method: Method,
    profile: &VoteProfile,
    obj: &Objective,
    w: &WeightVector,
) -> Result<AggregationResult, Error> {
    match method {
        Method::Opt => exhaustive_opt(profile, obj),
        Method::Matching => aggregate_matching(profile, obj),
        Method::Bmls => bmls(profile, obj, None),
        Method::Mc => mc_aggregate(profile, &Chain::Weighted(w.clone()), obj),
        Method::Mc1 => mc_aggregate(profile, &Chain::Case1, obj),
        Method::Mc2 => mc_aggregate(profile, &Chain::Case2, obj),
        Method::Mc3 => mc_aggregate(profile, &Chain::Case3, obj),
        Method::BestInput => best_input_vote(profile, obj),
        Method::Plurality => plurality_result(profile, obj),
        Method::Borda => borda_result(profile, obj),
        Method::All => unreachable!("expanded by the caller"),
    }
}

const ALL_METHODS: [Method; 10] = [
    Method::Opt,
    Method::Matching,
    Method::Bmls,
    Method::Mc,
    Method::Mc1,
    Method::Mc2,
    Method::Mc3,
    Method::BestInput,
    Method::Plurality,
    Method::Borda,
];

fn report(
    common: &Common,
    profile: &VoteProfile,
    method: Method,
    out: &mut dyn Write,
) -> CliResult {
    let (obj, w) = objective(common, profile.n())?;
    let results = if method == Method::All {
        let exhaustive_ok = profile.n() <= OPT_CAP && obj.supports(profile.n());
        ALL_METHODS
            .iter()
            .filter(|&&m| m != Method::Opt || exhaustive_ok)
            .map(|&m| run_method(m, profile, &obj, &w))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        vec![run_method(method, profile, &obj, &w)?]
    };
    let report = RunReport {
        n: profile.n(),
        m: profile.m(),
        weights: w.as_slice().to_vec(),
        space: obj.space(),
        results,
    };
    match common.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        )?,
        Format::Table => write!(out, "{}", report.render_table())?,
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ReproCell {
    weights: Vec<f64>,
    method: String,
    ranking: Ranking,
    average: f64,
    expected: f64,
    pass: bool,
}

fn repro_table1(format: Format, out: &mut dyn Write) -> CliResult {
    let profile = table1_profile();
    let mut cells = Vec::new();
    for (w, expected) in TABLE1_WEIGHTS.iter().zip(TABLE1_EXPECTED) {
        let w = WeightVector::new(w.to_vec())?;
        let obj = Objective::new(Metric::WeightedKendall(w.clone()));
        let runs = [
            (exhaustive_opt(&profile, &obj)?, expected.opt),
            (bmls(&profile, &obj, None)?, expected.bmls),
            (
                mc_aggregate(&profile, &Chain::Weighted(w.clone()), &obj)?,
                expected.mc,
            ),
        ];
        for (res, want) in runs {
            cells.push(ReproCell {
                weights: w.as_slice().to_vec(),
                method: res.method,
                ranking: res.ranking,
                average: res.average,
                expected: want,
                pass: (res.average - want).abs() <= TABLE1_TOLERANCE,
            });
        }
    }
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&cells).expect("serializable")
        )?,
        Format::Table => {
            for c in &cells {
                writeln!(
                    out,
                    "{:<6} w={:<20} {:<12} avg={:.4} expected={:.4} {}",
                    c.method,
                    format!("{:?}", c.weights),
                    c.ranking.to_string(),
                    c.average,
                    c.expected,
                    if c.pass { "ok" } else { "MISMATCH" }
                )?;
            }
        }
    }
    if cells.iter().all(|c| c.pass) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
