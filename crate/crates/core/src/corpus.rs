//! graph6 corpora and an ordered, resumable JSON-lines runner.
//!
//! Output layout: one header line, then one record per input item in input
//! order. A rerun against an existing file with the same header skips the
//! records already present; a torn final line is discarded first.

use crate::formats::{parse_graph6, Graph6Error};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::Serialize;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Graph6 {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("existing output has a different header: {found}")]
    HeaderMismatch { found: String },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// One graph per non-blank line, with 1-based line numbers.
pub fn read_graph6<R: BufRead>(reader: R) -> Result<Vec<(usize, Graph)>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let g = parse_graph6(&line).map_err(|source| CorpusError::Graph6 { line: i + 1, source })?;
        out.push((i + 1, g));
    }
    Ok(out)
}

pub fn read_graph6_file(path: &Path) -> Result<Vec<(usize, Graph)>, CorpusError> {
    read_graph6(BufReader::new(File::open(path)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub total: usize,
    /// Records already present before this run.
    pub resumed_from: usize,
    pub written: usize,
    pub interrupted: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct RunnerOptions {
    pub jobs: usize,
    /// Items per parallel batch; output is flushed after each batch.
    pub chunk_size: usize,
}

impl Default for RunnerOptions {
    fn default() -> Self {
        RunnerOptions { jobs: 1, chunk_size: 256 }
    }
}

/// Counts complete records after the header, truncating a torn tail.
fn prepare_existing(path: &Path, header: &str) -> Result<Option<usize>, CorpusError> {
    let mut file = match OpenOptions::new().read(true).write(true).open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    if text.is_empty() {
        return Ok(None);
    }
    let complete = text.rfind('\n').map_or(0, |i| i + 1);
    if complete < text.len() {
        file.set_len(complete as u64)?;
    }
    let mut lines = text[..complete].lines();
    match lines.next() {
        None => {
            file.set_len(0)?;
            Ok(None)
        }
        Some(found) if found == header => Ok(Some(lines.count())),
        Some(found) => Err(CorpusError::HeaderMismatch {
            found: found.to_string(),
        }),
    }
}

/// Maps `f` over `items` on `jobs` threads and appends one JSON line per
/// item to `output`, in item order. Stops between batches once `stop` is set.
pub fn run_jsonl<T, R, F>(
    items: &[T],
    output: &Path,
    header: &serde_json::Value,
    opts: RunnerOptions,
    stop: &AtomicBool,
    f: F,
) -> Result<RunSummary, CorpusError>
where
    T: Sync,
    R: Serialize + Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let header_line = serde_json::to_string(header)?;
    let resumed_from = prepare_existing(output, &header_line)?.unwrap_or(0).min(items.len());
    let mut file = OpenOptions::new().create(true).append(true).open(output)?;
    file.seek(SeekFrom::End(0))?;
    let mut out = BufWriter::new(file);
    if resumed_from == 0 && out.get_ref().metadata()?.len() == 0 {
        writeln!(out, "{header_line}")?;
        out.flush()?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CorpusError::Pool(e.to_string()))?;
    let mut written = 0;
    let mut interrupted = false;
    let chunk = opts.chunk_size.max(1);
    let mut start = resumed_from;
    while start < items.len() {
        if stop.load(Ordering::SeqCst) {
            interrupted = true;
            break;
        }
        let end = (start + chunk).min(items.len());
        let lines: Vec<Result<String, serde_json::Error>> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| serde_json::to_string(&f(i, &items[i])))
                .collect()
        });
        for line in lines {
            writeln!(out, "{}", line?)?;
        }
        out.flush()?;
        written += end - start;
        start = end;
    }
    Ok(RunSummary {
        total: items.len(),
        resumed_from,
        written,
        interrupted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn reads_lines_with_numbers() {
        let text = "Bw\n\nCF\n";
        let gs = read_graph6(Cursor::new(text)).unwrap();
        assert_eq!(gs.iter().map(|(l, _)| *l).collect::<Vec<_>>(), vec![1, 3]);
        assert!(matches!(
            read_graph6(Cursor::new("Bw\n~\n")),
            Err(CorpusError::Graph6 { line: 2, .. })
        ));
    }

    #[test]
    fn ordered_and_resumable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let items: Vec<usize> = (0..50).collect();
        let header = serde_json::json!({"tool": "t"});
        let opts = RunnerOptions { jobs: 4, chunk_size: 7 };
        let no_stop = AtomicBool::new(false);
        let s = run_jsonl(&items, &path, &header, opts, &no_stop, |i, x| i * 100 + x).unwrap();
        assert_eq!((s.written, s.resumed_from), (50, 0));
        let full = std::fs::read_to_string(&path).unwrap();

        // keep the header and 20 records plus a torn line, then resume
        let partial: String = full.lines().take(21).map(|l| format!("{l}\n")).collect();
        std::fs::write(&path, format!("{partial}23")).unwrap();
        let s = run_jsonl(&items, &path, &header, opts, &no_stop, |i, x| i * 100 + x).unwrap();
        assert_eq!((s.resumed_from, s.written), (20, 30));
        assert_eq!(std::fs::read_to_string(&path).unwrap(), full);

        let other = serde_json::json!({"tool": "u"});
        assert!(matches!(
            run_jsonl(&items, &path, &other, opts, &no_stop, |i, _| i),
            Err(CorpusError::HeaderMismatch { .. })
        ));
    }

    #[test]
    fn stop_flag_halts_between_batches() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let stop = AtomicBool::new(true);
        let s = run_jsonl(&[1, 2, 3], &path, &serde_json::json!({}), RunnerOptions::default(), &stop, |_, x| *x)
            .unwrap();
        assert!(s.interrupted);
        assert_eq!(s.written, 0);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "{}\n");
    }
}
