//! `samplan` — design and audit single-sampling acceptance plans.
//!
//! Every computation of the library is exposed as a subcommand with
//! table (human), csv, and json output. Exit codes: `0` success (and
//! admissible verdicts), `1` negative answers (inadmissible plan, no
//! admissible sample size, empty lot interval), `2` usage, config, or
//! domain errors, `3` numerical failures.

mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use samplan::criteria::{admissible_binomial, admissible_discrete, admissible_extended};
use samplan::dist;
use samplan::optimize::{
    interval_table, lot_interval, min_sample_binomial, min_sample_discrete, min_sample_extended,
    min_sample_poisson, risk_summary, RiskSummary,
};
use samplan::oracle::{hypergeom_oc_rational, monte_carlo_oc, EXACT_LOT_LIMIT};
use samplan::scheme::{self, PlanPreference};
use samplan::{Error, OcModel, QualityLevelGrid, SamplingPlan};

use config::Settings;
use render::{render, Cell, OutputFormat, Records};

/// Hard cap on the number of exact grid points `oc --model hyper-exact`
/// will tabulate; beyond this the caller should narrow the quality range.
const MAX_GRID_POINTS: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "samplan",
    version,
    about = "Design and audit single-sampling acceptance plans (n, c) under a two-point OC criterion",
    long_about = "Design and audit single-sampling acceptance plans: draw n items from a lot, \
                  accept when at most c are defective. Plans are judged by a two-point criterion \
                  on the operating characteristic — by default, acceptance probability below \
                  95 % at 1 % defectives and below 5 % at 7 % defectives (both strict), the \
                  statistical verification requirement of measuring-instruments regulation. \
                  All probability inputs are fractions (0.01, not 1 %)."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Producer's quality level p_a, as a fraction [default: 0.01]
    #[arg(long = "pa", global = true, value_name = "FRACTION")]
    aql: Option<f64>,
    /// OC bound P_a at p_a; admissible means OC(p_a) < P_a [default: 0.95]
    #[arg(long = "Pa", global = true, value_name = "PROBABILITY")]
    aql_bound: Option<f64>,
    /// Consumer's limiting quality p_b, as a fraction [default: 0.07]
    #[arg(long = "pb", global = true, value_name = "FRACTION")]
    lq: Option<f64>,
    /// OC bound P_b at p_b; admissible means OC(p_b) < P_b [default: 0.05]
    #[arg(long = "Pb", global = true, value_name = "PROBABILITY")]
    lq_bound: Option<f64>,
    /// Config file of `key = value` lines; keys p_a, P_a, p_b, P_b,
    /// n_ceiling. Flags win over the file, the file over defaults
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Largest sample size the minimizers consider [default: 1000000]
    #[arg(long = "n-ceiling", global = true, value_name = "N")]
    n_ceiling: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate an operating characteristic (acceptance probability vs quality level)
    Oc(OcArgs),
    /// Check one plan against the two-point criterion (exit 0 iff admissible)
    Check(CheckArgs),
    /// Find the smallest admissible sample size for an acceptance number
    Minimize(MinimizeArgs),
    /// Lot sizes for which a plan is admissible
    Interval(IntervalArgs),
    /// Tabulate plans and endpoint risks across lot sizes for one acceptance number
    Table(TableArgs),
    /// Show the sampling scheme; with --N, compare or recommend plans for a lot
    Scheme(SchemeArgs),
    /// Monte-Carlo estimate of a finite-lot acceptance probability
    Simulate(SimulateArgs),
    /// Exact rational acceptance probability for a finite lot
    Exact(ExactArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveModel {
    /// Infinite lot (sampling with replacement)
    Binomial,
    /// Classical Poisson approximation
    Poisson,
    /// Finite lot, OC continued to real-valued defective counts
    HyperExtended,
    /// Finite lot, exact on the integer defective grid (plus the extended curve)
    HyperExact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LimitModel {
    Binomial,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preference {
    /// Smallest sample size
    MinSample,
    /// Smallest producer's risk (largest acceptance number)
    MinProducerRisk,
}

impl From<Preference> for PlanPreference {
    fn from(p: Preference) -> Self {
        match p {
            Preference::MinSample => PlanPreference::MinimalSample,
            Preference::MinProducerRisk => PlanPreference::MinimalProducerRisk,
        }
    }
}

#[derive(Args)]
struct OcArgs {
    /// OC model
    #[arg(long, value_enum)]
    model: CurveModel,
    /// Sample size n
    #[arg(long)]
    n: u64,
    /// Acceptance number c
    #[arg(long)]
    c: u64,
    /// Lot size N (required by the finite-lot models)
    #[arg(long = "N")]
    lot: Option<u64>,
    /// Start of the quality grid [default: 0]
    #[arg(long, value_name = "FRACTION")]
    pmin: Option<f64>,
    /// End of the quality grid [default: 0.12]
    #[arg(long, value_name = "FRACTION")]
    pmax: Option<f64>,
    /// Number of grid points [default: 121]
    #[arg(long)]
    points: Option<u64>,
    /// Evaluate at an explicit quality level instead of a grid (repeatable)
    #[arg(long = "p", value_name = "FRACTION")]
    at: Vec<f64>,
}

#[derive(Args)]
struct CheckArgs {
    /// Sample size n
    #[arg(long)]
    n: u64,
    /// Acceptance number c
    #[arg(long)]
    c: u64,
    /// Lot size N; switches from the binomial to the finite-lot model
    #[arg(long = "N")]
    lot: Option<u64>,
    /// Judge on the integer defective grid with exact arithmetic (needs --N)
    #[arg(long)]
    discrete: bool,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Acceptance number c
    #[arg(long)]
    c: u64,
    /// Infinite-lot model [default: binomial]; conflicts with --N
    #[arg(long, value_enum)]
    model: Option<LimitModel>,
    /// Lot size N; minimizes under the finite-lot model
    #[arg(long = "N")]
    lot: Option<u64>,
    /// Minimize on the integer defective grid (needs --N)
    #[arg(long)]
    discrete: bool,
}

#[derive(Args)]
struct IntervalArgs {
    /// Sample size n
    #[arg(long)]
    n: u64,
    /// Acceptance number c
    #[arg(long)]
    c: u64,
}

#[derive(Args)]
struct TableArgs {
    /// Acceptance number c
    #[arg(long)]
    c: u64,
    /// Largest sample size to tabulate (c >= 1 only) [default: twice the binomial minimum]
    #[arg(long = "n-max")]
    n_max: Option<u64>,
}

#[derive(Args)]
struct SchemeArgs {
    /// Lot size to compare the scheme against its reference plans
    #[arg(long = "N")]
    lot: Option<u64>,
    /// Recommend a single plan for --N by this preference
    #[arg(long, value_enum)]
    recommend: Option<Preference>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Defective items in the lot
    #[arg(long = "M")]
    defectives: u64,
    /// Lot size N
    #[arg(long = "N")]
    lot: u64,
    /// Sample size n
    #[arg(long)]
    n: u64,
    /// Acceptance number c
    #[arg(long)]
    c: u64,
    /// Number of simulated lots
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// RNG seed (fixed seed => bit-identical results)
    #[arg(long, default_value_t = 0xA5EED)]
    seed: u64,
}

#[derive(Args)]
struct ExactArgs {
    /// Defective items in the lot
    #[arg(long = "M")]
    defectives: u64,
    /// Lot size N
    #[arg(long = "N")]
    lot: u64,
    /// Sample size n
    #[arg(long)]
    n: u64,
    /// Acceptance number c
    #[arg(long)]
    c: u64,
}

/// A failed command: exit code plus the message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: failure_code(&err),
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Maps library errors onto the documented exit codes: negative answers
/// to well-posed questions exit 1, domain violations 2, numerical
/// breakdowns 3.
fn failure_code(err: &Error) -> u8 {
    match err {
        Error::NoSolution { .. }
        | Error::FullInspectionRequired { .. }
        | Error::StructurallyInadmissible { .. }
        | Error::EmptyInterval { .. } => 1,
        Error::NoRoot { .. }
        | Error::LotTooLargeForExact { .. }
        | Error::CertificateFailed { .. }
        | Error::SchemeData { .. } => 3,
        _ => 2,
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            if failure.code == 1 {
                eprintln!("{}", failure.message);
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let settings = resolve_settings(&cli.global)?;
    let format = cli.global.format;
    match cli.command {
        Command::Oc(args) => cmd_oc(args, &settings, format),
        Command::Check(args) => cmd_check(args, &settings, format),
        Command::Minimize(args) => cmd_minimize(args, &settings, format),
        Command::Interval(args) => cmd_interval(args, &settings, format),
        Command::Table(args) => cmd_table(args, &settings, format),
        Command::Scheme(args) => cmd_scheme(args, &settings, format),
        Command::Simulate(args) => cmd_simulate(args, format),
        Command::Exact(args) => cmd_exact(args, format),
    }
}

fn resolve_settings(global: &GlobalArgs) -> Result<Settings, Failure> {
    let file = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|err| {
                usage(format!("cannot read config file {}: {err}", path.display()))
            })?;
            config::parse_file(&text)
                .map_err(|err| usage(format!("config file {}: {err}", path.display())))?
        }
        None => config::Overrides::default(),
    };
    let flags = config::Overrides {
        aql: global.aql,
        aql_bound: global.aql_bound,
        lq: global.lq,
        lq_bound: global.lq_bound,
        ceiling: global.n_ceiling,
    };
    Ok(config::resolve(file, flags)?)
}

/// Evenly spaced quality levels over `[pmin, pmax]`.
fn grid_points(pmin: f64, pmax: f64, points: u64) -> Vec<f64> {
    (0..points)
        .map(|i| pmin + (pmax - pmin) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Largest defective count whose quality level is at most `p`.
fn floor_count(grid: &QualityLevelGrid, p: f64) -> samplan::Result<u64> {
    let up = grid.ceil_count(p)?;
    Ok(if grid.contains(p) {
        up
    } else {
        up.saturating_sub(1)
    })
}

fn cmd_oc(args: OcArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    let _ = settings; // the OC itself does not depend on the criterion
    let plan = SamplingPlan::new(args.n, args.c)?;
    let needs_lot = matches!(
        args.model,
        CurveModel::HyperExtended | CurveModel::HyperExact
    );
    if needs_lot && args.lot.is_none() {
        return Err(usage("this model is finite-lot; give --N <lot size>"));
    }
    if !needs_lot && args.lot.is_some() {
        return Err(usage(
            "--N only applies to the finite-lot models (hyper-extended, hyper-exact)",
        ));
    }

    let explicit = !args.at.is_empty();
    if explicit && (args.pmin.is_some() || args.pmax.is_some() || args.points.is_some()) {
        return Err(usage(
            "give either explicit --p points or a --pmin/--pmax/--points grid, not both",
        ));
    }
    let pmin = args.pmin.unwrap_or(0.0);
    let pmax = args.pmax.unwrap_or(0.12);
    let points = args.points.unwrap_or(121);
    if !explicit {
        if !(0.0..=1.0).contains(&pmin) || !(0.0..=1.0).contains(&pmax) || pmin >= pmax {
            return Err(usage("need 0 <= pmin < pmax <= 1"));
        }
        if points < 2 {
            return Err(usage("--points must be at least 2"));
        }
    }
    for &p in &args.at {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(usage(format!("--p {p} is not a quality level in [0, 1]")));
        }
    }
    let levels = if explicit {
        args.at.clone()
    } else {
        grid_points(pmin, pmax, points)
    };

    if args.model == CurveModel::HyperExact {
        let lot = args.lot.expect("checked above");
        let grid = QualityLevelGrid::new(lot)?;
        let mut rows = Vec::new();
        if explicit {
            // On the exact model, explicit points must sit on the lot's
            // defective grid (p = M/N).
            for &p in &args.at {
                if !grid.contains(p) {
                    return Err(usage(format!(
                        "--p {p} is not on the defective grid of a lot of {lot}; \
                         use multiples of 1/{lot}"
                    )));
                }
                let m = grid.ceil_count(p)?;
                rows.push(exact_point(&grid, m, lot, plan)?);
            }
        } else {
            for &p in &levels {
                let oc = dist::hypergeom_oc_extended(p * lot as f64, lot, plan)?;
                rows.push(vec![
                    Cell::Prob(p),
                    Cell::Prob(oc),
                    Cell::Text("extended".into()),
                ]);
            }
            let m_lo = grid.ceil_count(pmin)?;
            let m_hi = floor_count(&grid, pmax)?;
            if m_hi >= m_lo && m_hi - m_lo > MAX_GRID_POINTS {
                return Err(usage(format!(
                    "the quality range holds {} exact grid points (more than {MAX_GRID_POINTS}); \
                     narrow --pmin/--pmax or use explicit --p",
                    m_hi - m_lo + 1
                )));
            }
            for m in m_lo..=m_hi {
                rows.push(exact_point(&grid, m, lot, plan)?);
            }
        }
        print!("{}", render(format, &Records::multi(&["p", "oc", "series"], rows)));
        return Ok(0);
    }

    let lot = args.lot;
    let eval = |p: f64| -> samplan::Result<f64> {
        match args.model {
            CurveModel::Binomial => dist::binomial_oc(p, plan),
            CurveModel::Poisson => dist::poisson_oc(p, plan),
            CurveModel::HyperExtended => OcModel::HypergeometricExtended {
                lot_size: lot.expect("checked above"),
            }
            .continuous_oc(p, plan),
            CurveModel::HyperExact => unreachable!("handled above"),
        }
    };
    let mut rows = Vec::with_capacity(levels.len());
    for p in levels {
        rows.push(vec![Cell::Prob(p), Cell::Prob(eval(p)?)]);
    }
    print!("{}", render(format, &Records::multi(&["p", "oc"], rows)));
    Ok(0)
}

fn exact_point(
    grid: &QualityLevelGrid,
    defectives: u64,
    lot: u64,
    plan: SamplingPlan,
) -> Result<Vec<Cell>, Failure> {
    let oc = dist::hypergeom_oc_exact(defectives, lot, plan)?;
    Ok(vec![
        Cell::Prob(grid.level(defectives)?),
        Cell::Prob(oc),
        Cell::Text("grid".into()),
    ])
}

const CHECK_HEADERS: &[&str] = &[
    "model",
    "N",
    "n",
    "c",
    "admissible",
    "oc_at_aql",
    "oc_at_lq",
    "aql_margin",
    "lq_margin",
    "binding",
];

fn cmd_check(args: CheckArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    let plan = SamplingPlan::new(args.n, args.c)?;
    if args.discrete && args.lot.is_none() {
        return Err(usage("--discrete judges a finite lot; give --N <lot size>"));
    }
    let criterion = &settings.criterion;
    let (model, verdict) = match (args.lot, args.discrete) {
        (None, _) => ("binomial", admissible_binomial(plan, criterion)?),
        (Some(lot), false) => ("hyper-extended", admissible_extended(lot, plan, criterion)?),
        (Some(lot), true) => ("hyper-discrete", admissible_discrete(lot, plan, criterion)?),
    };
    let row = vec![
        Cell::Text(model.into()),
        Cell::OptU64(args.lot),
        Cell::U64(plan.n()),
        Cell::U64(plan.c()),
        Cell::Bool(verdict.admissible),
        Cell::Prob(verdict.oc_at_aql),
        Cell::Prob(verdict.oc_at_lq),
        Cell::F64(verdict.aql_margin),
        Cell::F64(verdict.lq_margin),
        Cell::Text(verdict.binding.to_string()),
    ];
    print!("{}", render(format, &Records::one(CHECK_HEADERS, row)));
    Ok(if verdict.admissible { 0 } else { 1 })
}

fn cmd_minimize(args: MinimizeArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    if args.lot.is_some() && args.model.is_some() {
        return Err(usage(
            "--model picks an infinite-lot model; drop it when --N is given",
        ));
    }
    if args.discrete && args.lot.is_none() {
        return Err(usage("--discrete minimizes over a finite lot; give --N <lot size>"));
    }
    let criterion = &settings.criterion;
    let (model, plan) = match args.lot {
        Some(lot) if args.discrete => (
            "hyper-discrete",
            min_sample_discrete(lot, args.c, criterion)?,
        ),
        Some(lot) => ("hyper-extended", min_sample_extended(lot, args.c, criterion)?),
        None => match args.model.unwrap_or(LimitModel::Binomial) {
            LimitModel::Binomial => (
                "binomial",
                min_sample_binomial(args.c, criterion, settings.ceiling)?,
            ),
            LimitModel::Poisson => (
                "poisson",
                min_sample_poisson(args.c, criterion, settings.ceiling)?,
            ),
        },
    };
    let row = vec![
        Cell::Text(model.into()),
        Cell::OptU64(args.lot),
        Cell::U64(plan.c()),
        Cell::U64(plan.n()),
    ];
    print!("{}", render(format, &Records::one(&["model", "N", "c", "n"], row)));
    Ok(0)
}

const INTERVAL_HEADERS: &[&str] = &[
    "N_from",
    "N_to",
    "n",
    "c",
    "alpha_from",
    "alpha_to",
    "beta_from",
    "beta_to",
];

fn interval_cells(
    min_lot: u64,
    max_lot: Option<u64>,
    plan: SamplingPlan,
    at_min: &RiskSummary,
    at_max: &RiskSummary,
) -> Vec<Cell> {
    vec![
        Cell::U64(min_lot),
        Cell::OptU64(max_lot),
        Cell::U64(plan.n()),
        Cell::U64(plan.c()),
        Cell::FlaggedProb(at_min.producer_risk, at_min.producer_risk_operational),
        Cell::FlaggedProb(at_max.producer_risk, at_max.producer_risk_operational),
        Cell::Prob(at_min.consumer_risk),
        Cell::Prob(at_max.consumer_risk),
    ]
}

fn endpoint_risks(
    plan: SamplingPlan,
    min_lot: u64,
    max_lot: Option<u64>,
    settings: &Settings,
) -> samplan::Result<(RiskSummary, RiskSummary)> {
    let criterion = &settings.criterion;
    let at_min = risk_summary(
        plan,
        OcModel::HypergeometricExtended { lot_size: min_lot },
        criterion,
    )?;
    let at_max = match max_lot {
        Some(lot) => risk_summary(
            plan,
            OcModel::HypergeometricExtended { lot_size: lot },
            criterion,
        )?,
        None => risk_summary(plan, OcModel::Binomial, criterion)?,
    };
    Ok((at_min, at_max))
}

fn cmd_interval(args: IntervalArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    let plan = SamplingPlan::new(args.n, args.c)?;
    let interval = lot_interval(plan, &settings.criterion)?;
    let (at_min, at_max) = endpoint_risks(plan, interval.min_lot, interval.max_lot, settings)?;
    let row = interval_cells(interval.min_lot, interval.max_lot, plan, &at_min, &at_max);
    print!("{}", render(format, &Records::one(INTERVAL_HEADERS, row)));
    Ok(0)
}

fn cmd_table(args: TableArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    let table = interval_table(args.c, &settings.criterion, args.n_max)?;
    let rows = table
        .rows
        .iter()
        .map(|row| {
            interval_cells(
                row.interval.min_lot,
                row.interval.max_lot,
                row.interval.plan,
                &row.risk_at_min_lot,
                &row.risk_at_max_lot,
            )
        })
        .collect();
    print!("{}", render(format, &Records::multi(INTERVAL_HEADERS, rows)));
    Ok(0)
}

const SCHEME_HEADERS: &[&str] = &["N_from", "N_to", "n", "c", "alpha_max", "beta_min"];
const COMPARE_HEADERS: &[&str] = &[
    "source",
    "N",
    "n",
    "c",
    "producer_risk",
    "consumer_risk",
    "producer_quality",
    "consumer_quality",
];
const RECOMMEND_HEADERS: &[&str] = &[
    "N",
    "preference",
    "n",
    "c",
    "full_inspection",
    "producer_risk",
    "consumer_risk",
    "note",
];

fn assessment_cells(source: &str, lot: u64, plan: SamplingPlan, risks: &RiskSummary) -> Vec<Cell> {
    vec![
        Cell::Text(source.into()),
        Cell::U64(lot),
        Cell::U64(plan.n()),
        Cell::U64(plan.c()),
        Cell::FlaggedProb(risks.producer_risk, risks.producer_risk_operational),
        Cell::Prob(risks.consumer_risk),
        Cell::OptProb(risks.producer_quality),
        Cell::OptProb(risks.consumer_quality),
    ]
}

fn cmd_scheme(args: SchemeArgs, settings: &Settings, format: OutputFormat) -> CmdResult {
    let non_default = !settings.criterion_is_default();
    match (args.lot, args.recommend) {
        (None, None) => {
            let data = scheme::simplified_scheme(&settings.criterion)?;
            let mut rows = Vec::new();
            for row in &data.rows {
                for entry in &row.entries {
                    rows.push(vec![
                        Cell::U64(row.lot_from),
                        Cell::OptU64(row.lot_to),
                        Cell::U64(entry.plan.n()),
                        Cell::U64(entry.plan.c()),
                        Cell::FlaggedProb(entry.max_producer_risk, row.alpha_operational),
                        Cell::Prob(entry.min_consumer_risk),
                    ]);
                }
            }
            print!("{}", render(format, &Records::multi(SCHEME_HEADERS, rows)));
            Ok(0)
        }
        (None, Some(_)) => Err(usage("--recommend needs --N <lot size>")),
        (Some(_), _) if non_default => Err(usage(
            "lot comparison and recommendations use the built-in scheme, which is \
             defined for the default criterion only; criterion overrides apply to \
             the plain `scheme` table",
        )),
        (Some(lot), None) => {
            let comparison = scheme::compare(lot)?;
            let source = if comparison.full_inspection {
                "full-inspection"
            } else {
                "scheme"
            };
            let mut rows = Vec::new();
            for assessment in &comparison.scheme_plans {
                rows.push(assessment_cells(source, lot, assessment.plan, &assessment.risks));
            }
            if let Some(iso) = &comparison.iso_reference {
                rows.push(assessment_cells("iso", lot, iso.reference.plan, &iso.risks));
            }
            print!("{}", render(format, &Records::multi(COMPARE_HEADERS, rows)));
            Ok(0)
        }
        (Some(lot), Some(preference)) => {
            let recommendation = scheme::recommend_plan(lot, preference.into())?;
            let preference_name = match preference {
                Preference::MinSample => "min-sample",
                Preference::MinProducerRisk => "min-producer-risk",
            };
            let row = vec![
                Cell::U64(recommendation.lot_size),
                Cell::Text(preference_name.into()),
                Cell::U64(recommendation.plan.n()),
                Cell::U64(recommendation.plan.c()),
                Cell::Bool(recommendation.full_inspection),
                Cell::FlaggedProb(
                    recommendation.risks.producer_risk,
                    recommendation.risks.producer_risk_operational,
                ),
                Cell::Prob(recommendation.risks.consumer_risk),
                Cell::Text(recommendation.note.into()),
            ];
            print!("{}", render(format, &Records::one(RECOMMEND_HEADERS, row)));
            Ok(0)
        }
    }
}

const SIMULATE_HEADERS: &[&str] = &[
    "M",
    "N",
    "n",
    "c",
    "trials",
    "acceptances",
    "estimate",
    "std_error",
    "seed",
    "rng_id",
    "exact",
    "abs_error",
];

fn cmd_simulate(args: SimulateArgs, format: OutputFormat) -> CmdResult {
    let plan = SamplingPlan::new(args.n, args.c)?;
    let sim = monte_carlo_oc(args.defectives, args.lot, plan, args.trials, args.seed)?;
    // Print the exact value alongside when the lot is small enough for
    // big-integer arithmetic — simulation is mostly used as an audit.
    let exact = if args.lot <= EXACT_LOT_LIMIT {
        Some(hypergeom_oc_rational(args.defectives, args.lot, plan)?.to_f64())
    } else {
        None
    };
    let abs_error = exact.map(|e| (sim.estimate - e).abs());
    let row = vec![
        Cell::U64(args.defectives),
        Cell::U64(args.lot),
        Cell::U64(plan.n()),
        Cell::U64(plan.c()),
        Cell::U64(sim.trials),
        Cell::U64(sim.acceptances),
        Cell::Prob(sim.estimate),
        Cell::F64(sim.std_error),
        Cell::U64(sim.seed),
        Cell::Text(sim.rng_id.into()),
        Cell::OptProb(exact),
        Cell::OptF64(abs_error),
    ];
    print!("{}", render(format, &Records::one(SIMULATE_HEADERS, row)));
    Ok(0)
}

const EXACT_HEADERS: &[&str] = &["M", "N", "n", "c", "numerator", "denominator", "value"];

fn cmd_exact(args: ExactArgs, format: OutputFormat) -> CmdResult {
    let plan = SamplingPlan::new(args.n, args.c)?;
    let exact = hypergeom_oc_rational(args.defectives, args.lot, plan)?;
    let row = vec![
        Cell::U64(args.defectives),
        Cell::U64(args.lot),
        Cell::U64(plan.n()),
        Cell::U64(plan.c()),
        Cell::Big(exact.numerator().to_string()),
        Cell::Big(exact.denominator().to_string()),
        Cell::Prob(exact.to_f64()),
    ];
    print!("{}", render(format, &Records::one(EXACT_HEADERS, row)));
    Ok(0)
}
