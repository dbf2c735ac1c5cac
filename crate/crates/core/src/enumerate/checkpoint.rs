//! Resumable, work-split execution of an enumeration.
//!
//! The augmentation tree is cut at a fixed depth; each graph at that depth
//! is a *prefix* whose subtree is an independent unit of work. Workers pull
//! prefix indices from a shared counter and send their results to the
//! calling thread, which commits them strictly in prefix order and is the
//! only writer of checkpoint and output files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::{Deserialize, Serialize};

use super::{expand_prefix, frontier, EnumerationTask};
use super::record::RunRecord;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Persistent progress of one enumeration task.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub fingerprint: String,
    /// graph6 of every prefix, in commit order.
    pub frontier: Vec<String>,
    pub completed: Vec<bool>,
    /// Classes emitted below each completed prefix.
    pub emitted: Vec<u64>,
    /// Highest-ρ record committed so far (first one wins ties).
    pub best: Option<RunRecord>,
    /// Byte length of the output file after the last commit.
    pub out_len: Option<u64>,
}

impl Checkpoint {
    /// Progress record with nothing completed.
    pub fn fresh(task: &EnumerationTask) -> Result<Self> {
        let frontier = frontier(task)?;
        let k = frontier.len();
        Ok(Checkpoint {
            fingerprint: task.fingerprint(),
            frontier,
            completed: vec![false; k],
            emitted: vec![0; k],
            best: None,
            out_len: None,
        })
    }

    /// Load a checkpoint and confirm it belongs to `task`.
    pub fn load(path: &Path, task: &EnumerationTask) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let ck: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("corrupt checkpoint {}: {e}", path.display())))?;
        let expected = task.fingerprint();
        if ck.fingerprint != expected {
            return Err(Error::Checkpoint(format!(
                "fingerprint mismatch: checkpoint is for `{}`, task is `{expected}`",
                ck.fingerprint
            )));
        }
        if ck.completed.len() != ck.frontier.len() || ck.emitted.len() != ck.frontier.len() {
            return Err(Error::Checkpoint(format!("corrupt checkpoint {}: length mismatch", path.display())));
        }
        Ok(ck)
    }

    /// Load `path` if it exists, otherwise start fresh.
    pub fn load_or_fresh(path: &Path, task: &EnumerationTask) -> Result<Self> {
        if path.exists() {
            Self::load(path, task)
        } else {
            Self::fresh(task)
        }
    }

    /// Atomically replace `path` with this checkpoint.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn completed_count(&self) -> usize {
        self.completed.iter().filter(|&&c| c).count()
    }

    pub fn is_complete(&self) -> bool {
        self.completed.iter().all(|&c| c)
    }

    pub fn emitted_total(&self) -> u64 {
        self.emitted.iter().sum()
    }

    /// Replace `best` when `rec` has strictly larger ρ.
    pub fn offer_best(&mut self, rec: &RunRecord) {
        if self.best.as_ref().is_none_or(|b| rec.rho > b.rho) {
            self.best = Some(rec.clone());
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workers: usize,
    /// Saved after every commit when set.
    pub checkpoint_path: Option<PathBuf>,
    /// Stop after committing this many prefixes (simulates an interruption).
    pub stop_after: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: default_workers(),
            checkpoint_path: None,
            stop_after: None,
        }
    }
}

/// Available parallelism, at least one.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub newly_completed: usize,
    pub completed: usize,
    pub total: usize,
    pub emitted: u64,
}

impl RunSummary {
    pub fn is_complete(&self) -> bool {
        self.completed == self.total
    }
}

/// Expand every pending prefix of `ck`, mapping each emitted class through
/// `map` on the worker and handing the per-prefix results to `commit` on the
/// calling thread in prefix order.
pub fn run<T, M, C>(
    task: &EnumerationTask,
    ck: &mut Checkpoint,
    opts: &RunOptions,
    map: M,
    mut commit: C,
) -> Result<RunSummary>
where
    T: Send,
    M: Fn(&Graph) -> Option<T> + Sync,
    C: FnMut(usize, Vec<T>, &mut Checkpoint) -> Result<()>,
{
    if ck.fingerprint != task.fingerprint() {
        return Err(Error::Checkpoint("checkpoint does not belong to this task".into()));
    }
    let workers = opts.workers.max(1);
    let pending: Vec<usize> = (0..ck.frontier.len()).filter(|&i| !ck.completed[i]).collect();
    let limit = opts.stop_after.unwrap_or(usize::MAX).min(pending.len());
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let frontier = ck.frontier.clone();
    let mut newly = 0;

    let outcome: Result<()> = std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(usize, Result<(u64, Vec<T>)>)>();
        for _ in 0..workers.min(pending.len().max(1)) {
            let tx = tx.clone();
            let (next, stop, pending, frontier, map) = (&next, &stop, &pending, &frontier, &map);
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let slot = next.fetch_add(1, Ordering::Relaxed);
                if slot >= pending.len() {
                    break;
                }
                let idx = pending[slot];
                let mut items = Vec::new();
                let mut count = 0u64;
                let res = expand_prefix(task, &frontier[idx], &mut |g| {
                    count += 1;
                    if let Some(t) = map(g) {
                        items.push(t);
                    }
                })
                .map(|()| (count, items));
                if tx.send((slot, res)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut buffer = BTreeMap::new();
        let mut cursor = 0;
        let result = (|| {
            while cursor < limit {
                let Ok((slot, res)) = rx.recv() else { break };
                buffer.insert(slot, res);
                while let Some(res) = buffer.remove(&cursor) {
                    let (count, items) = res?;
                    let idx = pending[cursor];
                    commit(idx, items, ck)?;
                    ck.completed[idx] = true;
                    ck.emitted[idx] = count;
                    if let Some(path) = &opts.checkpoint_path {
                        ck.save(path)?;
                    }
                    cursor += 1;
                    newly += 1;
                    if cursor >= limit {
                        break;
                    }
                }
            }
            Ok(())
        })();
        stop.store(true, Ordering::Relaxed);
        drop(rx);
        result
    });
    outcome?;
    if let Some(path) = &opts.checkpoint_path {
        ck.save(path)?;
    }
    Ok(RunSummary {
        newly_completed: newly,
        completed: ck.completed_count(),
        total: ck.frontier.len(),
        emitted: ck.emitted_total(),
    })
}

/// Run `task` with RunRecord JSONL output, resuming from `checkpoint` when it
/// exists. Output written after the last commit of an interrupted run is
/// truncated away before resuming, so the final file equals a one-shot run.
pub fn run_to_jsonl(task: &EnumerationTask, out: &Path, opts: &RunOptions) -> Result<(RunSummary, Checkpoint)> {
    use std::io::Write;

    let mut ck = match &opts.checkpoint_path {
        Some(p) => Checkpoint::load_or_fresh(p, task)?,
        None => Checkpoint::fresh(task)?,
    };
    let keep = ck.out_len.unwrap_or(0);
    let mut file = fs::OpenOptions::new().create(true).append(true).open(out)?;
    let len = file.metadata()?.len();
    if len < keep {
        return Err(Error::Checkpoint(format!(
            "output {} is shorter than the checkpoint records ({len} < {keep} bytes)",
            out.display()
        )));
    }
    file.set_len(keep)?;
    ck.out_len = Some(keep);

    let summary = run(
        task,
        &mut ck,
        opts,
        |g| {
            let rho = crate::spectral::spectral_radius_default(g).ok()?.rho;
            Some(RunRecord::new(g, rho))
        },
        |_, records, ck| {
            let mut buf = String::new();
            for r in &records {
                buf.push_str(&r.to_json_line());
                buf.push('\n');
                ck.offer_best(r);
            }
            file.write_all(buf.as_bytes())?;
            file.flush()?;
            ck.out_len = Some(ck.out_len.unwrap_or(0) + buf.len() as u64);
            Ok(())
        },
    )?;
    Ok((summary, ck))
}
