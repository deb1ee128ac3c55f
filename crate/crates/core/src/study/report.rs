use std::fs;
use std::path::{Path, PathBuf};

use super::ConvergenceReport;
use crate::error::{Error, Result};

pub const ROWS_FILE: &str = "rows.csv";
pub const SLOPES_FILE: &str = "slopes.csv";
pub const PLOT_FILE: &str = "plot.csv";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |e| Error::Io { path: path.to_path_buf(), source: e.into() }
}

fn header_comments(report: &ConvergenceReport) -> Result<String> {
    let mut out = String::from("# cfqmc convergence study\n");
    for line in report.config.to_toml_string()?.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    Ok(out)
}

fn write_table(path: &Path, comments: &str, header: &[&str], records: Vec<Vec<String>>) -> Result<()> {
    let mut buf = comments.as_bytes().to_vec();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header).map_err(csv_err(path))?;
        for r in records {
            w.write_record(&r).map_err(csv_err(path))?;
        }
        w.flush().map_err(io_err(path))?;
    }
    fs::write(path, buf).map_err(io_err(path))
}

/// Writes the rows, slopes and log2 plot tables into `dir`.
///
/// Each file starts with `#` comment lines echoing the study config. Floats
/// are written in shortest round-trip decimal form.
pub fn emit_report(report: &ConvergenceReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let comments = header_comments(report)?;

    let rows_path = dir.join(ROWS_FILE);
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.method.to_string(),
                r.budget.to_string(),
                r.rmse.to_string(),
                r.std.to_string(),
                r.mean_estimate.to_string(),
                r.true_integral.to_string(),
            ]
        })
        .collect();
    write_table(&rows_path, &comments, &["method", "budget", "rmse", "std", "mean_estimate", "true_integral"], rows)?;

    let slopes_path = dir.join(SLOPES_FILE);
    let slopes = report
        .slopes
        .iter()
        .map(|s| {
            vec![
                s.method.to_string(),
                s.slope.to_string(),
                s.stderr.to_string(),
                s.points.to_string(),
                if s.degenerate { "degenerate" } else { "ok" }.to_string(),
            ]
        })
        .collect();
    write_table(&slopes_path, &comments, &["method", "slope", "stderr", "points", "status"], slopes)?;

    let plot_path = dir.join(PLOT_FILE);
    let plot = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.method.to_string(),
                (r.budget as f64).log2().to_string(),
                r.rmse.log2().to_string(),
                r.std.log2().to_string(),
            ]
        })
        .collect();
    write_table(&plot_path, &comments, &["method", "log2_budget", "log2_rmse", "log2_std"], plot)?;

    Ok(vec![rows_path, slopes_path, plot_path])
}
