//! Ordered, resumable CSV output.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::CliError;

pub type Row = Vec<String>;

/// Fixed-width scientific notation for computed values.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// One grid point: its key (the leading columns of its rows) and the work
/// producing those rows.
pub struct Job {
    pub key: Row,
    pub run: Box<dyn Fn() -> zigzag_core::Result<Vec<Row>> + Send + Sync>,
}

impl Job {
    pub fn new(key: Row, run: impl Fn() -> zigzag_core::Result<Vec<Row>> + Send + Sync + 'static) -> Self {
        Self {
            key,
            run: Box::new(run),
        }
    }
}

pub struct Table {
    pub header: Vec<String>,
    pub jobs: Vec<Job>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub computed: usize,
    pub reused: usize,
    pub failed: usize,
}

fn existing_rows(path: &Path, header: &[String], key_len: usize) -> Result<HashMap<Row, Vec<Row>>, CliError> {
    let mut out: HashMap<Row, Vec<Row>> = HashMap::new();
    if !path.exists() {
        return Ok(out);
    }
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Io(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found != header {
        return Err(CliError::Config(format!(
            "cannot resume: {} has a different header",
            path.display()
        )));
    }
    for record in reader.records() {
        let row: Row = record.map_err(|e| CliError::Io(e.to_string()))?.iter().map(str::to_owned).collect();
        out.entry(row[..key_len].to_vec()).or_default().push(row);
    }
    Ok(out)
}

impl Table {
    /// Runs the jobs on `threads` workers and writes rows in job order.
    pub fn run(self, out: Option<&Path>, resume: bool, threads: usize) -> Result<Outcome, CliError> {
        let key_len = self.jobs.first().map_or(0, |j| j.key.len());
        let previous = match (resume, out) {
            (true, Some(path)) => existing_rows(path, &self.header, key_len)?,
            (true, None) => return Err(CliError::Config("--resume needs --out".into())),
            _ => HashMap::new(),
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let results: Vec<(Option<Vec<Row>>, bool)> = pool.install(|| {
            self.jobs
                .par_iter()
                .map(|job| {
                    if let Some(rows) = previous.get(&job.key) {
                        return (Some(rows.clone()), true);
                    }
                    match (job.run)() {
                        Ok(rows) => (Some(rows), false),
                        Err(e) => {
                            log::error!("point {:?} failed: {e}", job.key);
                            (None, false)
                        }
                    }
                })
                .collect()
        });
        let mut outcome = Outcome::default();
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header).map_err(|e| CliError::Io(e.to_string()))?;
        for (rows, reused) in results {
            match rows {
                Some(rows) => {
                    if reused {
                        outcome.reused += 1;
                    } else {
                        outcome.computed += 1;
                    }
                    for row in rows {
                        writer.write_record(&row).map_err(|e| CliError::Io(e.to_string()))?;
                    }
                }
                None => outcome.failed += 1,
            }
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        match out {
            Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| CliError::Io(e.to_string()))?,
        }
        Ok(outcome)
    }
}
