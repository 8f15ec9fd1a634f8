//! Multi-threaded driver for [`SearchPlan`]s.
//!
//! Workers pull task indices from a shared counter and share only the
//! best-so-far value. The merge keeps exactly the witnesses at the global
//! maximum, so the result does not depend on the worker count.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crossunion_core::search::{SearchKind, SearchPlan, SearchResult};

pub use crossunion_core::search::SearchError;

pub const THREADS_ENV: &str = "CROSSUNION_THREADS";

/// Worker count: the explicit flag, then `CROSSUNION_THREADS`, then the
/// available parallelism.
pub fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

#[derive(Clone, Debug)]
pub struct TimedResult {
    pub result: SearchResult,
    pub wall_time: Duration,
    pub threads: usize,
}

/// Runs every task of `plan` on `threads` workers.
pub fn run_plan(plan: &SearchPlan, threads: usize) -> SearchResult {
    let threads = threads.clamp(1, plan.task_count().max(1));
    let best = AtomicU64::new(0);
    let next = AtomicUsize::new(0);
    let parts = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut w = plan.worker();
                    loop {
                        let t = next.fetch_add(1, Ordering::Relaxed);
                        if t >= plan.task_count() {
                            break w.into_partial();
                        }
                        w.run_task(t, &best);
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect::<Vec<_>>()
    });
    plan.finish(parts)
}

/// Builds and runs a search, timing it.
pub fn search(kind: SearchKind, n: u32, s: u32, threads: usize) -> Result<TimedResult, SearchError> {
    let start = Instant::now();
    let plan = SearchPlan::new(kind, n, s)?;
    let result = run_plan(&plan, threads);
    Ok(TimedResult { result, wall_time: start.elapsed(), threads })
}
