//! Parallel certification over a parameter grid with an append-only
//! checkpoint next to the output file.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;

use gelfond_core::{certify, DyadicRational, Status};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::error::{Result, SweepError};
use crate::record::{read_rows, write_rows, RowWriter, SweepRow};

pub fn checkpoint_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".partial");
    PathBuf::from(name)
}

fn fingerprint_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".partial.sha256");
    PathBuf::from(name)
}

/// Certifies one parameter.
pub fn certify_row(c: DyadicRational, config: &SweepConfig) -> Result<SweepRow> {
    let record = certify(c, &config.range, &config.verify)?;
    Ok(SweepRow::from_record(&record, config.record_runtime))
}

/// Loads checkpointed rows for `config`, refusing a checkpoint written under
/// different settings.
fn load_checkpoint(output: &Path, config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let partial = checkpoint_path(output);
    if !partial.exists() {
        return Ok(Vec::new());
    }
    let stored = fs::read_to_string(fingerprint_path(output)).unwrap_or_default();
    if stored.trim() != config.fingerprint() {
        return Err(SweepError::InvalidConfig(format!(
            "checkpoint {} was written with different settings",
            partial.display()
        )));
    }
    read_rows(File::open(&partial)?)
}

/// Runs (or resumes) a sweep and writes the sorted rows to `output`.
///
/// Rows are appended to `<output>.partial` as they complete; the final file
/// replaces it once every parameter is done. `progress` receives
/// `(done, total)` after each row.
pub fn run_sweep(config: &SweepConfig, output: &Path, progress: &(dyn Fn(usize, usize) + Sync)) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let points = config.points()?;
    let mut rows = load_checkpoint(output, config)?;
    let wanted: BTreeSet<DyadicRational> = points.iter().copied().collect();
    rows.retain(|r| wanted.contains(&r.c));
    let done: BTreeSet<DyadicRational> = rows.iter().map(|r| r.c).collect();
    let remaining: Vec<DyadicRational> = points.into_iter().filter(|c| !done.contains(c)).collect();
    let total = wanted.len();

    let partial = checkpoint_path(output);
    let fresh = !partial.exists();
    if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(fingerprint_path(output), config.fingerprint())?;
    let file = OpenOptions::new().create(true).append(true).open(&partial)?;
    let mut writer = RowWriter::new(BufWriter::new(file), fresh)?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.resolved_workers() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| SweepError::InvalidConfig(format!("thread pool: {e}")))?;

    let failed = AtomicBool::new(false);
    let (sender, receiver) = mpsc::channel::<Result<SweepRow>>();
    let mut first_error = None;
    std::thread::scope(|scope| {
        let failed = &failed;
        let remaining = &remaining;
        scope.spawn(move || {
            pool.install(|| {
                remaining.par_iter().for_each_with(sender, |tx, &c| {
                    if failed.load(Ordering::Relaxed) {
                        return;
                    }
                    let _ = tx.send(certify_row(c, config));
                });
            });
        });
        let mut completed = rows.len();
        for result in receiver {
            let outcome = result.and_then(|row| {
                writer.write(&row)?;
                writer.flush()?;
                Ok(row)
            });
            match outcome {
                Ok(row) => {
                    rows.push(row);
                    completed += 1;
                    progress(completed, total);
                }
                Err(e) => {
                    failed.store(true, Ordering::Relaxed);
                    first_error.get_or_insert(e);
                }
            }
        }
    });
    if let Some(e) = first_error {
        return Err(e);
    }
    drop(writer);

    rows.sort_by(|a, b| a.c.cmp(&b.c));
    let staging = {
        let mut name = output.as_os_str().to_owned();
        name.push(".tmp");
        PathBuf::from(name)
    };
    write_rows(BufWriter::new(File::create(&staging)?), &rows)?;
    fs::rename(&staging, output)?;
    fs::remove_file(&partial)?;
    let _ = fs::remove_file(fingerprint_path(output));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolationReport {
    /// An untestable point of the zoomed grid.
    pub c: DyadicRational,
    /// Both grid neighbours inside the window are tested.
    pub isolated: bool,
}

/// Untestable points of a zoomed sweep and whether each is isolated among its
/// refined neighbours.
pub fn isolation(rows: &[SweepRow]) -> Vec<IsolationReport> {
    let mut sorted: Vec<&SweepRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.c.cmp(&b.c));
    sorted
        .iter()
        .enumerate()
        .filter(|(_, r)| r.status == Status::Untestable)
        .map(|(i, r)| {
            let left = i.checked_sub(1).map_or(true, |j| sorted[j].is_tested());
            let right = sorted.get(i + 1).map_or(true, |n| n.is_tested());
            IsolationReport {
                c: r.c,
                isolated: left && right,
            }
        })
        .collect()
}
