//! Thread-local FFT plan cache.
//!
//! `FftPlanner` memoises plans by size and direction; keeping one planner
//! per thread makes repeated transforms (solver inner loops) plan-free after
//! the first call.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}
