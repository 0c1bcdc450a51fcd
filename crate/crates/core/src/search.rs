//! Resumable batch scans: a graph stream is fed through statement checkers
//! in parallel and the reports are appended to a JSONL file in stream order.
//!
//! One work unit is one graph: its invariants are computed once and shared
//! by every requested statement, all under one time budget. Rows carry the
//! graph's stream index (`idx`), and a cursor sidecar next to the output
//! records how far the scan got, so an interrupted scan can be resumed and
//! the two outputs concatenate to the uninterrupted one.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stream::StreamSpec;
use crate::theorems::{check_with_facts, GraphFacts, StatementId, StatementReport, Status};

/// Graphs handed to the worker pool per round.
const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub stream: StreamSpec,
    pub statements: Vec<StatementId>,
    /// Per-graph time budget; absent means unlimited.
    #[serde(default)]
    pub budget_ms: Option<u64>,
    /// Worker threads; 0 uses one per core.
    #[serde(default)]
    pub workers: usize,
    pub output: PathBuf,
    #[serde(default)]
    pub resume: Option<Cursor>,
    /// When set, replaces the seed of every random source in the stream.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Stop after this many graphs in this run.
    #[serde(default)]
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub fingerprint: String,
    /// Index of the next graph to check.
    pub position: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub checked: u64,
    pub held: u64,
    pub tight: u64,
    pub vacuous: u64,
    pub counterexample: u64,
    pub unknown: u64,
}

impl Totals {
    fn add(&mut self, r: &StatementReport) {
        self.checked += 1;
        match r.status {
            Status::Held => self.held += 1,
            Status::Tight => self.tight += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Counterexample => self.counterexample += 1,
            Status::Unknown => self.unknown += 1,
        }
    }

    /// 0 clean, 2 counterexample candidates, 3 unknown rows.
    pub fn exit_code(&self) -> i32 {
        if self.counterexample > 0 {
            2
        } else if self.unknown > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub totals: Totals,
    pub graphs: u64,
    pub elapsed_ms: u64,
    pub cursor: Cursor,
    /// True when the stream ran out (as opposed to stopping at the limit).
    pub finished: bool,
}

impl ScanConfig {
    /// The stream with the seed override applied.
    pub fn effective_stream(&self) -> StreamSpec {
        match self.seed {
            Some(seed) => reseed(&self.stream, seed),
            None => self.stream.clone(),
        }
    }

    /// Identifies the stream and statement list a cursor belongs to.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&(self.effective_stream(), &self.statements))
            .expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn cursor_path(&self) -> PathBuf {
        let mut p = self.output.clone().into_os_string();
        p.push(".cursor.json");
        PathBuf::from(p)
    }
}

fn reseed(spec: &StreamSpec, seed: u64) -> StreamSpec {
    match spec {
        StreamSpec::Random { n, p, count, .. } => StreamSpec::Random {
            n: *n,
            p: *p,
            seed,
            count: *count,
        },
        StreamSpec::Chain { parts } => StreamSpec::Chain {
            parts: parts.iter().map(|s| reseed(s, seed)).collect(),
        },
        other => other.clone(),
    }
}

/// Check every statement on one graph under one budget.
pub fn check_graph(
    g: &Graph,
    statements: &[StatementId],
    budget_ms: Option<u64>,
    idx: u64,
) -> Vec<StatementReport> {
    let budget = Budget::from_optional_millis(budget_ms);
    let rows: Vec<StatementReport> = match GraphFacts::compute(g, &budget) {
        Ok(facts) => statements
            .iter()
            .map(|&id| check_with_facts(&facts, id, &budget))
            .collect(),
        Err(e) => statements
            .iter()
            .map(|&id| {
                let mut r = crate::theorems::check_statement(g, id, &Budget::from_millis(0));
                r.note = Some(e.to_string());
                r
            })
            .collect(),
    };
    rows.into_iter()
        .map(|mut r| {
            r.idx = Some(idx);
            r
        })
        .collect()
}

/// Run the scan, writing rows to `cfg.output` and a cursor sidecar after
/// every batch. With `cfg.resume` set, continues an earlier run.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutcome> {
    let fingerprint = cfg.fingerprint();
    let start = match &cfg.resume {
        Some(c) => {
            if c.fingerprint != fingerprint {
                return Err(Error::StreamMismatch {
                    cursor: c.fingerprint.clone(),
                    stream: fingerprint,
                });
            }
            repair_output(&cfg.output, c.position, cfg.statements.len())?
        }
        None => {
            File::create(&cfg.output)?;
            0
        }
    };
    let mut out = BufWriter::new(OpenOptions::new().append(true).open(&cfg.output)?);
    drive(cfg, start, &mut out, |pos| {
        write_cursor(cfg, &fingerprint, pos)
    })
}

/// Run the scan from the beginning of the stream, writing rows to `out`.
/// `cfg.output` and `cfg.resume` are ignored and no cursor file is written.
pub fn scan_to_writer<W: Write>(cfg: &ScanConfig, out: &mut W) -> Result<ScanOutcome> {
    drive(cfg, 0, out, |_| Ok(()))
}

fn drive<W: Write>(
    cfg: &ScanConfig,
    start: u64,
    out: &mut W,
    mut checkpoint: impl FnMut(u64) -> Result<()>,
) -> Result<ScanOutcome> {
    let started = Instant::now();
    let mut stream = cfg.effective_stream().open_at(start)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let mut totals = Totals::default();
    let mut graphs = 0u64;
    let mut position = stream.position();
    let mut finished = false;
    loop {
        let room = cfg
            .limit
            .map_or(BATCH as u64, |l| (l - graphs).min(BATCH as u64)) as usize;
        if room == 0 {
            break;
        }
        let mut batch = Vec::with_capacity(room);
        while batch.len() < room {
            match stream.next() {
                Some(item) => batch.push(item?),
                None => {
                    finished = true;
                    break;
                }
            }
        }
        let rows: Vec<Vec<StatementReport>> = pool.install(|| {
            batch
                .par_iter()
                .map(|(idx, g)| check_graph(g, &cfg.statements, cfg.budget_ms, *idx))
                .collect()
        });
        for r in rows.iter().flatten() {
            serde_json::to_writer(&mut *out, r)?;
            out.write_all(b"\n")?;
            totals.add(r);
        }
        out.flush()?;
        graphs += batch.len() as u64;
        position = stream.position();
        checkpoint(position)?;
        if finished {
            break;
        }
    }
    Ok(ScanOutcome {
        totals,
        graphs,
        elapsed_ms: started.elapsed().as_millis() as u64,
        cursor: Cursor {
            fingerprint: cfg.fingerprint(),
            position,
        },
        finished,
    })
}

/// Continue the scan described by `cfg` from `cursor`.
pub fn resume_scan(cfg: &ScanConfig, cursor: Cursor) -> Result<ScanOutcome> {
    let cfg = ScanConfig {
        resume: Some(cursor),
        ..cfg.clone()
    };
    run_scan(&cfg)
}

fn write_cursor(cfg: &ScanConfig, fingerprint: &str, position: u64) -> Result<()> {
    let cursor = Cursor {
        fingerprint: fingerprint.to_string(),
        position,
    };
    fs::write(cfg.cursor_path(), serde_json::to_vec(&cursor)?)?;
    Ok(())
}

/// Keep the complete rows of the graphs before `position` and drop
/// everything after the first graph whose rows are incomplete (a crash can
/// cut the file mid-row). Returns the position to restart from.
fn repair_output(path: &Path, position: u64, rows_per_graph: usize) -> Result<u64> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            File::create(path)?;
            return Ok(0);
        }
        Err(e) => return Err(e.into()),
    };
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let rows: Vec<(u64, &str)> = complete
        .lines()
        .map_while(|line| {
            let idx = serde_json::from_str::<serde_json::Value>(line)
                .ok()?
                .get("idx")?
                .as_u64()?;
            Some((idx, line))
        })
        .take_while(|&(idx, _)| idx < position)
        .collect();
    // rows arrive graph by graph in stream order, starting at 0
    let mut restart = 0u64;
    let mut kept = 0usize;
    for chunk in rows.chunk_by(|a, b| a.0 == b.0) {
        if chunk[0].0 != restart || chunk.len() != rows_per_graph {
            break;
        }
        restart += 1;
        kept += chunk.len();
    }
    let mut out = String::with_capacity(complete.len());
    for (_, line) in &rows[..kept] {
        out.push_str(line);
        out.push('\n');
    }
    if out != text {
        fs::write(path, out)?;
    }
    Ok(restart)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dir: &Path, name: &str) -> ScanConfig {
        ScanConfig {
            stream: StreamSpec::enumerate_connected(5),
            statements: vec![StatementId::ThmE, StatementId::ThmF],
            budget_ms: None,
            workers: 2,
            output: dir.join(name),
            resume: None,
            seed: None,
            limit: None,
        }
    }

    #[test]
    fn config_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(dir.path(), "a.jsonl");
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ScanConfig>(&text).unwrap(), c);
    }

    #[test]
    fn split_equals_one_shot() {
        let dir = tempfile::tempdir().unwrap();
        let whole = cfg(dir.path(), "whole.jsonl");
        let done = run_scan(&whole).unwrap();
        assert_eq!(done.graphs, 21);
        assert_eq!(done.totals.checked, 42);
        assert_eq!(done.totals.exit_code(), 0);

        let mut part = cfg(dir.path(), "part.jsonl");
        part.limit = Some(10);
        let first = run_scan(&part).unwrap();
        assert_eq!(first.cursor.position, 10);
        part.limit = None;
        let second = resume_scan(&part, first.cursor).unwrap();
        assert_eq!(second.graphs, 11);
        assert_eq!(
            fs::read(&whole.output).unwrap(),
            fs::read(&part.output).unwrap()
        );
    }

    #[test]
    fn truncated_line_is_reemitted() {
        let dir = tempfile::tempdir().unwrap();
        let whole = cfg(dir.path(), "whole.jsonl");
        run_scan(&whole).unwrap();
        let mut part = cfg(dir.path(), "part.jsonl");
        part.limit = Some(7);
        let first = run_scan(&part).unwrap();
        // simulate a crash midway through writing graph 7's rows
        let mut f = OpenOptions::new().append(true).open(&part.output).unwrap();
        f.write_all(b"{\"idx\":7,\"g6\":\"D").unwrap();
        drop(f);
        part.limit = None;
        resume_scan(&part, first.cursor.clone()).unwrap();
        assert_eq!(
            fs::read(&whole.output).unwrap(),
            fs::read(&part.output).unwrap()
        );

        // a crash between the two rows of graph 6 loses its second row
        let text = fs::read_to_string(&whole.output).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        let mut cut = rows[..13].join("\n");
        cut.push_str("\n{\"idx\":6,");
        fs::write(&part.output, cut).unwrap();
        resume_scan(&part, first.cursor).unwrap();
        assert_eq!(
            fs::read(&whole.output).unwrap(),
            fs::read(&part.output).unwrap()
        );
    }

    #[test]
    fn mismatched_cursor_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(dir.path(), "x.jsonl");
        let bad = Cursor {
            fingerprint: "0000".into(),
            position: 3,
        };
        assert!(matches!(
            resume_scan(&c, bad),
            Err(Error::StreamMismatch { .. })
        ));
    }

    #[test]
    fn resume_at_end_adds_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(dir.path(), "e.jsonl");
        let done = run_scan(&c).unwrap();
        let before = fs::read(&c.output).unwrap();
        let again = resume_scan(&c, done.cursor).unwrap();
        assert_eq!(again.graphs, 0);
        assert_eq!(fs::read(&c.output).unwrap(), before);
    }

    #[test]
    fn writer_matches_file_and_serial() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(dir.path(), "w.jsonl");
        run_scan(&c).unwrap();
        let mut buf = Vec::new();
        let serial = ScanConfig {
            workers: 1,
            ..c.clone()
        };
        scan_to_writer(&serial, &mut buf).unwrap();
        assert_eq!(buf, fs::read(&c.output).unwrap());
    }

    #[test]
    fn zero_budget_marks_everything_unknown() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = cfg(dir.path(), "z.jsonl");
        c.budget_ms = Some(0);
        let out = run_scan(&c).unwrap();
        assert_eq!(out.totals.unknown, out.totals.checked);
        assert_eq!(out.totals.exit_code(), 3);
    }
}
