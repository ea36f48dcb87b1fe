use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use seqgamma::gamma_core::GammaParams;
use seqgamma::monte_carlo::{run_simulation, run_table, SimulationPlan, SimulationSummary};
use seqgamma::pipeline::{
    analyze as run_analysis, load_csv, normal_gamma_transform, AnalysisOptions, ColumnSelector,
    Dataset, TRANSFORMED_SHAPE,
};
use seqgamma::second_order::{evaluate, ExpansionKind, ExpansionSpec};
use seqgamma::{StoppingConfig, TargetFunction, TargetKind};

use crate::presets::Presets;
use crate::render::{self, AnalysisCell};
use crate::{
    AnalyzeArgs, CliError, ConstantArgs, Format, Output, SimulateArgs, TablesArgs, TargetArg,
    TransformArgs, EXIT_CAP_HIT,
};

fn target_kind(target: TargetArg, c: Option<f64>) -> Result<TargetKind, CliError> {
    match (target, c) {
        (TargetArg::Survival, Some(c)) => Ok(TargetKind::Survival { c }),
        (TargetArg::Survival, None) => {
            Err(CliError::usage("--c is required for the survival target"))
        }
        (_, Some(_)) => Err(CliError::usage(format!(
            "--c applies only to the survival target, not {}",
            target.name()
        ))),
        (TargetArg::Mean, None) => Ok(TargetKind::Mean),
        (TargetArg::Variance, None) => Ok(TargetKind::Variance),
        (TargetArg::Rate, None) => Ok(TargetKind::Rate),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<u32>,
    target: TargetFunction,
    alpha: f64,
    beta: f64,
    m: u64,
    cap: u64,
    replications: u64,
    seed: u64,
    cap_hits: u64,
    rows: &'a [SimulationSummary],
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_seconds: Option<f64>,
}

fn simulation_output(report: SimulationReport<'_>, heading: String, format: Format) -> Output {
    let mut text = match format {
        Format::Json => to_json(&report),
        Format::Csv => render::summary_csv(report.rows),
        Format::Text => render::summary_text(&heading, report.rows),
    };
    if let (Format::Text, Some(t)) = (format, report.wall_time_seconds) {
        text.push_str(&format!("wall time: {t:.3} s\n"));
    }
    if report.cap_hits > 0 {
        Output {
            text,
            code: EXIT_CAP_HIT,
            warning: Some(format!(
                "{} replication(s) reached the sample-size cap of {}",
                report.cap_hits, report.cap
            )),
        }
    } else {
        Output::ok(text)
    }
}

fn heading(target: &TargetFunction, beta: f64, m: u64, reps: u64, seed: u64) -> String {
    format!(
        "target = {}, alpha = {}, beta = {beta}, m = {m}, replications = {reps}, seed = {seed}",
        target.kind(),
        target.alpha()
    )
}

pub fn simulate(args: &SimulateArgs, format: Format) -> Result<Output, CliError> {
    let kind = target_kind(args.target, args.c)?;
    let target = TargetFunction::new(kind, args.alpha)?;
    let plan = SimulationPlan {
        target,
        true_params: GammaParams::new(args.alpha, args.beta)?,
        config: StoppingConfig::new(args.m, args.b, args.alpha).with_cap(args.cap),
        replications: args.reps,
        seed: args.seed,
    };
    let started = Instant::now();
    let row = run_simulation(&plan)?;
    let elapsed = started.elapsed().as_secs_f64();
    let rows = [row];
    let report = SimulationReport {
        command: "simulate",
        table: None,
        target,
        alpha: args.alpha,
        beta: args.beta,
        m: args.m,
        cap: args.cap,
        replications: args.reps,
        seed: args.seed,
        cap_hits: row.cap_hits,
        rows: &rows,
        wall_time_seconds: args.timing.then_some(elapsed),
    };
    let heading = heading(&target, args.beta, args.m, args.reps, args.seed);
    Ok(simulation_output(report, heading, format))
}

pub fn tables(args: &TablesArgs, format: Format) -> Result<Output, CliError> {
    let presets = Presets::load(args.presets.as_deref())?;
    let table = presets.table(args.table)?;
    let name = TargetArg::parse_name(&table.target).ok_or_else(|| {
        CliError::input(format!(
            "table {}: unknown target {:?}",
            args.table, table.target
        ))
    })?;
    let target = TargetFunction::new(target_kind(name, table.c)?, table.alpha)?;
    let true_params = GammaParams::new(table.alpha, table.beta)?;
    let m = args.m.unwrap_or(table.m);
    let plans: Vec<SimulationPlan> = table
        .b
        .iter()
        .map(|&b| SimulationPlan {
            target,
            true_params,
            config: StoppingConfig::new(m, b, table.alpha).with_cap(args.cap),
            replications: args.reps,
            seed: args.seed,
        })
        .collect();
    let started = Instant::now();
    let rows = run_table(&plans)?;
    let elapsed = started.elapsed().as_secs_f64();
    let report = SimulationReport {
        command: "tables",
        table: Some(args.table),
        target,
        alpha: table.alpha,
        beta: table.beta,
        m,
        cap: args.cap,
        replications: args.reps,
        seed: args.seed,
        cap_hits: rows.iter().map(|r| r.cap_hits).sum(),
        rows: &rows,
        wall_time_seconds: args.timing.then_some(elapsed),
    };
    let heading = format!(
        "table {}: {}",
        args.table,
        heading(&target, table.beta, m, args.reps, args.seed)
    );
    Ok(simulation_output(report, heading, format))
}

#[derive(Serialize)]
struct ConstantReport {
    target: &'static str,
    alpha: f64,
    constant: f64,
    epsilon: f64,
    terms: usize,
    series_sum: f64,
}

pub fn constant(args: &ConstantArgs, format: Format) -> Result<Output, CliError> {
    let kind = match args.target {
        TargetArg::Mean => ExpansionKind::Mean,
        TargetArg::Variance => ExpansionKind::Variance,
        TargetArg::Rate | TargetArg::Survival => {
            return Err(CliError::usage(
                "second-order expansion unavailable for this target",
            ))
        }
    };
    let value = evaluate(&ExpansionSpec::new(kind, args.alpha).with_epsilon(args.epsilon))?;
    let report = ConstantReport {
        target: args.target.name(),
        alpha: args.alpha,
        constant: value.constant,
        epsilon: args.epsilon,
        terms: value.terms,
        series_sum: value.series_sum,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "target,alpha,constant,epsilon,terms\n{},{},{},{:e},{}\n",
            report.target, report.alpha, report.constant, report.epsilon, report.terms
        ),
        Format::Text => format!(
            "{} (alpha = {}): lim E[N - n*] = {:.6}  (epsilon = {:e}, {} series terms)\n",
            report.target, report.alpha, report.constant, report.epsilon, report.terms
        ),
    };
    Ok(Output::ok(text))
}

fn load_dataset(input: &Path, column: &str, has_header: bool) -> Result<Dataset, CliError> {
    let selector = ColumnSelector::parse(column);
    let has_header = has_header || matches!(selector, ColumnSelector::Name(_));
    Ok(load_csv(input, &selector, has_header)?)
}

#[derive(Serialize)]
struct AnalysisCellJson<'a> {
    target: String,
    m: u64,
    b: f64,
    status: &'static str,
    terminal_n: Option<u64>,
    estimate: Option<f64>,
    available: Option<usize>,
    dropped_zeros: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    source: &'a str,
    observations: usize,
    alpha: f64,
    cells: Vec<AnalysisCellJson<'a>>,
}

fn cell_json(cell: &AnalysisCell) -> AnalysisCellJson<'_> {
    match cell {
        AnalysisCell::Report(r) => AnalysisCellJson {
            target: r.target.kind().to_string(),
            m: r.m,
            b: r.b,
            status: if r.exhausted { "exhausted" } else { "stopped" },
            terminal_n: r.terminal_n,
            estimate: r.estimate,
            available: Some(r.available),
            dropped_zeros: Some(r.dropped_zeros),
            reason: None,
        },
        AnalysisCell::Skipped {
            target,
            m,
            b,
            reason,
        } => AnalysisCellJson {
            target: target.clone(),
            m: *m,
            b: *b,
            status: "skipped",
            terminal_n: None,
            estimate: None,
            available: None,
            dropped_zeros: None,
            reason: Some(reason),
        },
    }
}

pub fn analyze(args: &AnalyzeArgs, format: Format) -> Result<Output, CliError> {
    let targets: Vec<TargetArg> = if args.target.eq_ignore_ascii_case("all") {
        vec![
            TargetArg::Mean,
            TargetArg::Variance,
            TargetArg::Rate,
            TargetArg::Survival,
        ]
    } else {
        vec![TargetArg::parse_name(&args.target).ok_or_else(|| {
            CliError::usage(format!(
                "unknown target {:?}; expected mean, variance, rate, survival or all",
                args.target
            ))
        })?]
    };
    if args.c.is_some() && !targets.contains(&TargetArg::Survival) {
        return Err(CliError::usage("--c applies only to the survival target"));
    }
    let presets = Presets::load(args.presets.as_deref())?;
    let grid = &presets.analysis;
    let ms = if args.m.is_empty() {
        grid.m.clone()
    } else {
        args.m.clone()
    };
    let dataset = load_dataset(&args.input, &args.column, args.has_header)?;
    let options = AnalysisOptions {
        drop_zeros: args.drop_zeros,
    };

    let mut plan = Vec::new();
    for &name in &targets {
        let kind = match name {
            TargetArg::Survival => TargetKind::Survival {
                c: args.c.unwrap_or(grid.c),
            },
            other => target_kind(other, None)?,
        };
        let target = TargetFunction::new(kind, TRANSFORMED_SHAPE)?;
        let bs = if args.b.is_empty() {
            grid.b_grid(name.name()).to_vec()
        } else {
            args.b.clone()
        };
        for &m in &ms {
            for &b in &bs {
                plan.push((target, m, b));
            }
        }
    }
    let single = plan.len() == 1;
    let mut cells = Vec::with_capacity(plan.len());
    for (target, m, b) in plan {
        if let Err(e) = StoppingConfig::new(m, b, TRANSFORMED_SHAPE).validate(&target) {
            if single {
                return Err(e.into());
            }
            cells.push(AnalysisCell::Skipped {
                target: target.kind().to_string(),
                m,
                b,
                reason: e.to_string(),
            });
            continue;
        }
        cells.push(AnalysisCell::Report(run_analysis(
            &dataset,
            target.kind(),
            m,
            b,
            options,
        )?));
    }

    let text = match format {
        Format::Json => to_json(&AnalysisJson {
            source: dataset.source_label(),
            observations: dataset.len(),
            alpha: TRANSFORMED_SHAPE,
            cells: cells.iter().map(cell_json).collect(),
        }),
        Format::Csv => render::analysis_csv(&cells),
        Format::Text => {
            let dropped = cells.iter().find_map(|c| match c {
                AnalysisCell::Report(r) if r.dropped_zeros > 0 => Some(r.dropped_zeros),
                _ => None,
            });
            let mut heading = format!(
                "source = {}, observations = {}, transformed = {}, alpha = {TRANSFORMED_SHAPE}",
                dataset.source_label(),
                dataset.len(),
                dataset.len() - 1
            );
            if let Some(d) = dropped {
                heading.push_str(&format!(", dropped zeros = {d}"));
            }
            render::analysis_text(&heading, &cells)
        }
    };
    Ok(Output::ok(text))
}

pub fn transform(args: &TransformArgs, format: Format) -> Result<Output, CliError> {
    let dataset = load_dataset(&args.input, &args.column, args.has_header)?;
    let ys = normal_gamma_transform(dataset.values())?;
    let text = match format {
        Format::Json => to_json(&ys),
        Format::Text | Format::Csv => ys.iter().map(|y| format!("{y}\n")).collect(),
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}
