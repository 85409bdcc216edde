//! Multi-threaded driver for the exhaustive scan.

use std::num::NonZeroUsize;
use std::thread;

use bitri_core::solver::kernel::PairKernel;
use bitri_core::solver::{merge_reports, search_rows};
use bitri_core::{AnglePair, Error, SearchReport};

pub fn default_threads() -> usize {
    thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
}

/// Same report as [`bitri_core::brute_force_search`], with rows split
/// round-robin over `threads` workers. Row `y` costs `y` tests, so striding
/// keeps the workers even. Output order does not depend on `threads`.
pub fn parallel_search(pair: &AnglePair, bound: u64, threads: usize) -> Result<SearchReport, Error> {
    if bound < 1 {
        return Err(Error::InvalidBound);
    }
    let threads = threads.clamp(1, bound.min(1024) as usize);
    let kernel = PairKernel::new(pair);
    let parts = thread::scope(|s| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let kernel = &kernel;
                s.spawn(move || search_rows(pair, kernel, (1 + t..=bound).step_by(threads)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect::<Vec<_>>()
    });
    Ok(merge_reports(pair, bound, parts))
}
