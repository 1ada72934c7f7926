//! Output plumbing: human tables to stdout, machine records (JSON lines or
//! CSV) to a file or stderr so pipelines stay clean.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use urlab_core::inequalities::InequalityReport;
use urlab_core::sweep::SweepRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub struct RecordSink {
    format: Format,
    writer: Option<Box<dyn Write>>,
    csv_header_written: bool,
}

impl RecordSink {
    /// Machine records go to `output` when given, to stderr when a machine
    /// format was chosen without a file, and nowhere in table mode.
    pub fn new(format: Format, output: Option<&PathBuf>) -> Result<Self> {
        let writer: Option<Box<dyn Write>> = match (format, output) {
            (Format::Table, None) => None,
            (_, Some(path)) => Some(Box::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            (_, None) => Some(Box::new(io::stderr())),
        };
        Ok(RecordSink { format, writer, csv_header_written: false })
    }

    pub fn emit_report(&mut self, report: &InequalityReport) -> Result<()> {
        let Some(w) = self.writer.as_mut() else { return Ok(()) };
        match self.format {
            Format::Table => {}
            Format::Json => {
                serde_json::to_writer(&mut *w, report)?;
                writeln!(w)?;
            }
            Format::Csv => {
                if !self.csv_header_written {
                    writeln!(w, "name,lhs,rhs,slack,rel_slack,satisfied,degenerate")?;
                    self.csv_header_written = true;
                }
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    report.name,
                    report.lhs,
                    report.rhs,
                    report.slack,
                    report.rel_slack,
                    report.satisfied,
                    report.degenerate.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }

    pub fn emit_sweep_record(&mut self, record: &SweepRecord) -> Result<()> {
        let Some(w) = self.writer.as_mut() else { return Ok(()) };
        match self.format {
            Format::Table => {}
            Format::Json => {
                serde_json::to_writer(&mut *w, record)?;
                writeln!(w)?;
            }
            Format::Csv => {
                if !self.csv_header_written {
                    writeln!(w, "index,checker,dim,mixed,lhs,rhs,slack,rel_slack,satisfied,degenerate")?;
                    self.csv_header_written = true;
                }
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{}",
                    record.index,
                    record.checker,
                    record.dim,
                    record.mixed,
                    record.lhs,
                    record.rhs,
                    record.slack,
                    record.rel_slack,
                    record.satisfied,
                    record.degenerate
                )?;
            }
        }
        Ok(())
    }

    pub fn emit_value(&mut self, value: &serde_json::Value) -> Result<()> {
        let Some(w) = self.writer.as_mut() else { return Ok(()) };
        match self.format {
            Format::Table => {}
            _ => {
                serde_json::to_writer(&mut *w, value)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

pub fn print_report_table(reports: &[InequalityReport]) {
    println!(
        "{:<44} {:>13} {:>13} {:>12}  {:<9} note",
        "check", "lhs", "rhs", "slack", "status"
    );
    for r in reports {
        let status = match (r.satisfied, r.degenerate.is_some()) {
            (true, false) => "ok",
            (true, true) => "ok (deg)",
            (false, _) => "VIOLATED",
        };
        println!(
            "{:<44} {:>13.6e} {:>13.6e} {:>12.3e}  {:<9} {}",
            r.name,
            r.lhs,
            r.rhs,
            r.slack,
            status,
            r.degenerate.as_deref().unwrap_or("")
        );
    }
}
