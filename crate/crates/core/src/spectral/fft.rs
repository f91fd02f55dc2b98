//! Separable d-dimensional FFT on row-major buffers.
//!
//! Plans come from a per-thread [`FftPlanner`], so repeated transforms of the
//! same length reuse twiddles without any cross-thread synchronisation.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

/// Unnormalised transform of every axis in place.
pub(crate) fn transform(data: &mut [Complex64], shape: &[usize], direction: Direction) {
    let dir = match direction {
        Direction::Forward => FftDirection::Forward,
        Direction::Inverse => FftDirection::Inverse,
    };
    let mut line = Vec::new();
    let mut scratch = Vec::new();
    for axis in 0..shape.len() {
        let n = shape[axis];
        if n == 1 {
            continue;
        }
        let fft = plan(n, dir);
        scratch.resize(fft.get_inplace_scratch_len(), Complex64::default());
        let inner: usize = shape[axis + 1..].iter().product();
        if inner == 1 {
            fft.process_with_scratch(data, &mut scratch);
            continue;
        }
        // Gather each (n x inner) block into inner contiguous lines of length n.
        line.resize(n * inner, Complex64::default());
        for block in data.chunks_exact_mut(n * inner) {
            for (i, row) in block.chunks_exact(inner).enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    line[k * n + i] = v;
                }
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (i, row) in block.chunks_exact_mut(inner).enumerate() {
                for (k, v) in row.iter_mut().enumerate() {
                    *v = line[k * n + i];
                }
            }
        }
    }
}

pub(crate) fn forward(data: &mut [Complex64], shape: &[usize]) {
    transform(data, shape, Direction::Forward);
}

/// Inverse transform including the 1/prod(N) normalisation.
pub(crate) fn inverse(data: &mut [Complex64], shape: &[usize]) {
    transform(data, shape, Direction::Inverse);
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}
