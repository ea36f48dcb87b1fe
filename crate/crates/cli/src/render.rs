use std::fmt::Write;

use seqgamma::monte_carlo::SimulationSummary;
use seqgamma::pipeline::AnalysisReport;

/// Column precision for sample-size statistics.
const SIZE_DIGITS: usize = 4;
/// Column precision for variance statistics.
const VAR_DIGITS: usize = 6;
const EST_DIGITS: usize = 3;

const SUMMARY_COLUMNS: [&str; 10] = [
    "b",
    "n_star",
    "n_bar",
    "s_n",
    "ratio",
    "diff",
    "g_bar",
    "var_g",
    "var_ratio",
    "cap_hits",
];

fn summary_cells(row: &SimulationSummary) -> [String; 10] {
    [
        format!("{}", row.b),
        format!("{:.*}", SIZE_DIGITS, row.n_star),
        format!("{:.*}", SIZE_DIGITS, row.n_bar),
        format!("{:.*}", SIZE_DIGITS, row.s_n),
        format!("{:.*}", SIZE_DIGITS, row.ratio_first_order),
        format!("{:.*}", SIZE_DIGITS, row.diff_second_order),
        format!("{:.*}", VAR_DIGITS, row.g_bar),
        format!("{:.*}", VAR_DIGITS, row.var_g),
        format!("{:.*}", VAR_DIGITS, row.var_ratio),
        row.cap_hits.to_string(),
    ]
}

pub fn summary_text(heading: &str, rows: &[SimulationSummary]) -> String {
    let cells: Vec<[String; 10]> = rows.iter().map(summary_cells).collect();
    let header = SUMMARY_COLUMNS.map(str::to_string);
    aligned(heading, &header, &cells)
}

pub fn summary_csv(rows: &[SimulationSummary]) -> String {
    let mut out = SUMMARY_COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&summary_cells(row).join(","));
        out.push('\n');
    }
    out
}

fn analysis_cells(report: &AnalysisReport) -> [String; 6] {
    let (n, est) = match (report.terminal_n, report.estimate) {
        (Some(n), Some(est)) => (n.to_string(), format!("{est:.EST_DIGITS$}")),
        _ => ("exhausted".to_string(), "-".to_string()),
    };
    [
        report.target.kind().to_string(),
        report.m.to_string(),
        format!("{}", report.b),
        n,
        est,
        report.available.to_string(),
    ]
}

/// A grid cell is either a report or the reason it was not run.
pub enum AnalysisCell {
    Report(AnalysisReport),
    Skipped {
        target: String,
        m: u64,
        b: f64,
        reason: String,
    },
}

impl AnalysisCell {
    fn cells(&self) -> [String; 6] {
        match self {
            AnalysisCell::Report(r) => analysis_cells(r),
            AnalysisCell::Skipped { target, m, b, .. } => [
                target.clone(),
                m.to_string(),
                format!("{b}"),
                "n/a".into(),
                "n/a".into(),
                "-".into(),
            ],
        }
    }
}

const ANALYSIS_COLUMNS: [&str; 6] = ["target", "m", "b", "N", "est.", "available"];

pub fn analysis_text(heading: &str, cells: &[AnalysisCell]) -> String {
    let rows: Vec<[String; 6]> = cells.iter().map(AnalysisCell::cells).collect();
    let mut out = aligned(heading, &ANALYSIS_COLUMNS.map(str::to_string), &rows);
    let mut noted = Vec::new();
    for cell in cells {
        if let AnalysisCell::Skipped {
            target, m, reason, ..
        } = cell
        {
            if !noted.contains(&(target, m)) {
                noted.push((target, m));
                let _ = writeln!(out, "n/a ({target}, m = {m}): {reason}");
            }
        }
    }
    out
}

pub fn analysis_csv(cells: &[AnalysisCell]) -> String {
    let mut out = ANALYSIS_COLUMNS.join(",");
    out.push('\n');
    for cell in cells {
        out.push_str(&cell.cells().join(","));
        out.push('\n');
    }
    out
}

fn aligned<const N: usize>(heading: &str, header: &[String; N], rows: &[[String; N]]) -> String {
    let mut widths = header.each_ref().map(|h| h.len());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    if !heading.is_empty() {
        out.push_str(heading);
        out.push('\n');
    }
    let line = |out: &mut String, cells: &[String; N]| {
        let joined: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(joined.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, header);
    for row in rows {
        line(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_use_fixed_precision() {
        let row = SimulationSummary {
            b: 0.16,
            n_star: 50.0,
            n_bar: 49.23431,
            s_n: 10.4,
            ratio_first_order: 0.98468,
            diff_second_order: -0.76569,
            g_bar: 3.99,
            var_g: 0.1512345678,
            var_ratio: 0.94521,
            replications: 10,
            cap_hits: 0,
            degenerate: false,
        };
        let csv = summary_csv(&[row]);
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(
            line,
            "0.16,50.0000,49.2343,10.4000,0.9847,-0.7657,3.990000,0.151235,0.945210,0"
        );
        let text = summary_text("", &[row]);
        assert_eq!(text.lines().count(), 2);
    }
}
