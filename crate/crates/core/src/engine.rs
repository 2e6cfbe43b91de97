//! Bounded worker pool for independent per-prime tasks.
//!
//! Tasks are pure functions of immutable inputs. Results are merged in an
//! order that does not depend on scheduling (ascending prime, or task index),
//! so every caller sees identical output for any number of workers.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Non-fatal task outcome: the prime is unusable and gets discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discard {
    pub prime: u64,
    pub reason: String,
}

impl From<Error> for Discard {
    fn from(e: Error) -> Self {
        let prime = if let Error::BadPrime(p) = e { p } else { 0 };
        Discard { prime, reason: e.to_string() }
    }
}

#[derive(Debug, Clone)]
pub struct TaskBatch<T> {
    pub tasks: Vec<(u64, T)>,
    pub cores: usize,
    pub seed: u64,
}

impl<T> TaskBatch<T> {
    pub fn new(tasks: Vec<(u64, T)>, cores: usize, seed: u64) -> Self {
        TaskBatch { tasks, cores: cores.max(1), seed }
    }

    /// Per-task seed derived from the batch seed and the task's prime.
    pub fn task_seed(seed: u64, prime: u64) -> u64 {
        // splitmix64 finalizer
        let mut z = seed ^ prime.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[derive(Debug, Clone)]
pub struct BatchOutcome<R> {
    /// Successful results, ascending by prime.
    pub results: Vec<(u64, R)>,
    /// Primes whose task reported a bad prime, ascending.
    pub discarded: Vec<Discard>,
    /// Largest number of tasks observed running at once.
    pub peak_concurrency: usize,
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

struct Gauge {
    active: AtomicUsize,
    peak: AtomicUsize,
}

impl Gauge {
    fn new() -> Self {
        Gauge { active: AtomicUsize::new(0), peak: AtomicUsize::new(0) }
    }

    fn run<R>(&self, f: impl FnOnce() -> R) -> R {
        let now = self.active.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
        let out = f();
        self.active.fetch_sub(1, Ordering::SeqCst);
        out
    }
}

/// Runs `job(i)` for `i in 0..n` on at most `cores` threads and returns the
/// results in index order together with the observed peak concurrency.
fn run_indexed<R, F>(n: usize, cores: usize, job: F) -> (Vec<std::thread::Result<R>>, usize)
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let gauge = Gauge::new();
    let workers = cores.max(1).min(n);
    let slots: Vec<Mutex<Option<std::thread::Result<R>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= n {
            break;
        }
        let out = gauge.run(|| catch_unwind(AssertUnwindSafe(|| job(i))));
        *slots[i].lock().unwrap() = Some(out);
    };
    if workers <= 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    let results = slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect();
    (results, gauge.peak.load(Ordering::SeqCst))
}

/// Executes every task of the batch, at most `batch.cores` at a time.
///
/// A task returning `Err(Discard)` is recorded and excluded; a panicking task
/// aborts the whole batch with the offending prime identified.
pub fn parallel_map<T, R, F>(batch: TaskBatch<T>, task: F) -> Result<BatchOutcome<R>>
where
    T: Sync,
    R: Send,
    F: Fn(u64, &T) -> std::result::Result<R, Discard> + Sync,
{
    let tasks = &batch.tasks;
    let (raw, peak) = run_indexed(tasks.len(), batch.cores, |i| task(tasks[i].0, &tasks[i].1));
    let mut results = Vec::new();
    let mut discarded = Vec::new();
    for ((prime, _), out) in tasks.iter().zip(raw) {
        match out {
            Ok(Ok(r)) => results.push((*prime, r)),
            Ok(Err(mut d)) => {
                d.prime = *prime;
                discarded.push(d);
            }
            Err(payload) => {
                return Err(Error::TaskPanicked { prime: *prime, message: panic_message(payload) });
            }
        }
    }
    results.sort_by_key(|r| r.0);
    discarded.sort_by_key(|d| d.prime);
    Ok(BatchOutcome { results, discarded, peak_concurrency: peak })
}

/// Maps `job` over `0..n` in parallel; results come back in index order.
pub fn parallel_indexed<R, F>(n: usize, cores: usize, job: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let (raw, _) = run_indexed(n, cores, job);
    raw.into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|p| Error::TaskPanicked { prime: i as u64, message: panic_message(p) })
        })
        .collect()
}

/// True iff `check(i)` holds for every `i in 0..n`. Remaining checks are
/// skipped once one fails; the answer does not depend on scheduling.
pub fn parallel_all<F>(n: usize, cores: usize, check: F) -> Result<bool>
where
    F: Fn(usize) -> bool + Sync,
{
    let failed = AtomicBool::new(false);
    let outcome = parallel_indexed(n, cores, |i| {
        if failed.load(Ordering::Relaxed) {
            return;
        }
        if !check(i) {
            failed.store(true, Ordering::Relaxed);
        }
    });
    outcome?;
    Ok(!failed.load(Ordering::SeqCst))
}

/// Number of workers to use when none is configured.
pub fn default_cores() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn square_batch(cores: usize) -> BatchOutcome<u64> {
        let tasks = vec![(13, 3u64), (5, 1), (11, 4), (7, 2), (3, 9)];
        parallel_map(TaskBatch::new(tasks, cores, 0), |p, x| {
            std::thread::sleep(Duration::from_millis(2));
            if p == 11 {
                Err(Discard { prime: p, reason: "bad prime".into() })
            } else {
                Ok(p * x)
            }
        })
        .unwrap()
    }

    #[test]
    fn results_independent_of_core_count() {
        let one = square_batch(1);
        let eight = square_batch(8);
        assert_eq!(one.results, eight.results);
        assert_eq!(one.results, vec![(3, 27), (5, 5), (7, 14), (13, 39)]);
        assert_eq!(eight.discarded.len(), 1);
        assert_eq!(eight.discarded[0].prime, 11);
    }

    #[test]
    fn peak_concurrency_bounded_by_cores() {
        for cores in [1, 2, 3] {
            let out = square_batch(cores);
            assert!(out.peak_concurrency <= cores);
        }
    }

    #[test]
    fn empty_batch() {
        let out = parallel_map(TaskBatch::<()>::new(vec![], 4, 0), |_, _| Ok(1)).unwrap();
        assert!(out.results.is_empty() && out.discarded.is_empty());
    }

    #[test]
    fn panicking_task_names_its_prime() {
        let tasks = vec![(2, ()), (3, ()), (5, ())];
        let err = parallel_map(TaskBatch::new(tasks, 2, 0), |p, _| -> std::result::Result<u8, Discard> {
            if p == 3 {
                panic!("boom");
            }
            Ok(0)
        })
        .unwrap_err();
        assert_eq!(err, Error::TaskPanicked { prime: 3, message: "boom".into() });
    }

    #[test]
    fn all_and_indexed() {
        assert!(parallel_all(10, 3, |i| i < 10).unwrap());
        assert!(!parallel_all(10, 3, |i| i != 7).unwrap());
        assert_eq!(parallel_indexed(5, 4, |i| i * i).unwrap(), vec![0, 1, 4, 9, 16]);
    }
}
