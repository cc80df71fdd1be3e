use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cavity_ecs::scenarios::Table;
use cavity_ecs::validation::ValidationReport;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(ValueEnum, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [String],
    params: serde_json::Map<String, serde_json::Value>,
    rows: &'a [Vec<f64>],
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, String> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| format!("{}: {e}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn render_csv(table: &Table, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "# {}", table.columns.join(","))?;
    let params: Vec<String> = table.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(w, "# {}", params.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

fn render_json(table: &Table, w: &mut dyn Write) -> io::Result<()> {
    let params = table.params.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
    let doc = JsonTable { columns: &table.columns, params, rows: &table.rows };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}

pub fn write_table(table: &Table, format: Format, out: Option<&Path>) -> Result<(), String> {
    let mut w = sink(out)?;
    match format {
        Format::Csv => render_csv(table, &mut w),
        Format::Json => render_json(table, &mut w),
    }
    .and_then(|_| w.flush())
    .map_err(|e| e.to_string())
}

pub fn write_report(report: &ValidationReport, format: Format, out: Option<&Path>) -> Result<(), String> {
    let mut w = sink(out)?;
    let res = match format {
        Format::Json => serde_json::to_writer_pretty(&mut w, report).map_err(io::Error::from).and_then(|_| writeln!(w)),
        Format::Csv => (|| {
            writeln!(w, "# suite,samples,max_deviation,tolerance,passed")?;
            writeln!(w, "# bell_root={},fidelity_root={}", report.bell_root, report.fidelity_root)?;
            for s in &report.suites {
                writeln!(
                    w,
                    "{},{},{:e},{:e},{}",
                    s.name,
                    s.samples,
                    s.max_deviation,
                    s.tolerance,
                    if s.passed { "PASS" } else { "FAIL" }
                )?;
            }
            Ok(())
        })(),
    };
    res.and_then(|_| w.flush()).map_err(|e| e.to_string())
}
