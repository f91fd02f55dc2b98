//! Depth-first evaluation of the scattering tree.
//!
//! Each first-order channel is a subtree: its modulus `U1` is computed once,
//! averaged, then filtered by every admitted second-order channel before it is
//! released. Subtrees are independent and run on the rayon pool when the
//! `parallel` feature is on; every subtree is itself sequential, so the
//! output does not depend on scheduling.

use std::cell::Cell;
use std::ops::{Deref, DerefMut};

use num_complex::Complex64;

use crate::filterbank::{PeriodizedFilter, WaveletChannel};
use crate::plan::Plan;
use crate::spectral::{dft_forward_in_place, dft_inverse_in_place, fold, ComplexGrid, RealGrid};

/// Memory accounting for one transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Largest number of intermediate signals any single worker held at
    /// once. The input and its spectrum are not counted.
    pub peak_live_intermediates: usize,
    /// Per-worker peaks summed over the workers that took part.
    pub peak_live_summed: usize,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct ScatteringOutput {
    /// Shape `(P, N_1 / 2^J, ...)`.
    pub coefficients: RealGrid,
    pub meta: Vec<crate::PathMeta>,
    pub stats: Stats,
}

impl ScatteringOutput {
    pub fn path_count(&self) -> usize {
        self.meta.len()
    }

    /// Coefficients of path `p`, flattened row-major.
    pub fn row(&self, p: usize) -> &[f64] {
        let width = self.coefficients.len() / self.meta.len().max(1);
        &self.coefficients.data()[p * width..(p + 1) * width]
    }
}

#[derive(Debug, Default)]
struct Counter {
    live: Cell<usize>,
    peak: Cell<usize>,
}

impl Counter {
    fn hold<T>(&self, value: T) -> Live<'_, T> {
        let now = self.live.get() + 1;
        self.live.set(now);
        self.peak.set(self.peak.get().max(now));
        Live { value, counter: self }
    }
}

/// A counted intermediate; the count drops with the value.
struct Live<'c, T> {
    value: T,
    counter: &'c Counter,
}

impl<T> Deref for Live<'_, T> {
    type Target = T;
    fn deref(&self) -> &T {
        &self.value
    }
}

impl<T> DerefMut for Live<'_, T> {
    fn deref_mut(&mut self) -> &mut T {
        &mut self.value
    }
}

impl<T> Drop for Live<'_, T> {
    fn drop(&mut self) {
        self.counter.live.set(self.counter.live.get() - 1);
    }
}

/// `fold(src * filter * gain) / k^d` with `k = 2^step`: filters a spectrum at
/// its own resolution and subsamples the result by `2^step` per axis.
fn filter_fold(src: &ComplexGrid, filter: &ComplexGrid, gain: f64, step: u32) -> ComplexGrid {
    let d = src.ndim();
    let k = 1usize << step;
    let scale = gain / (k as f64).powi(d as i32);
    let data = src
        .data()
        .iter()
        .zip(filter.data())
        .map(|(a, b)| a * b * scale)
        .collect();
    let prod = ComplexGrid::from_parts(src.shape().to_vec(), data);
    fold(&prod, &vec![k; d])
}

struct Engine<'p> {
    plan: &'p Plan,
    d: i32,
}

impl Engine<'_> {
    /// Spatial sum gain of a convolution carried out on the grid `N / 2^r`.
    fn gain(&self, r: u32) -> f64 {
        f64::from(1u32 << r).powi(self.d)
    }

    /// Averages a spectrum living at resolution `r` down to the output grid.
    fn average(&self, counter: &Counter, spectrum: &ComplexGrid, r: u32, out: &mut [f64]) {
        let j = self.plan.bank().scale();
        let phi = self.plan.bank().lowpass().spectrum(r);
        let mut t = counter.hold(filter_fold(spectrum, phi, self.gain(r), j - r));
        dft_inverse_in_place(&mut t);
        for (o, v) in out.iter_mut().zip(t.data()) {
            *o = v.re;
        }
    }

    /// `rho(u * psi)` sampled at resolution `to`, with `u` given as a spectrum
    /// at resolution `from`; `rho` is the modulus, or the norm over `m` for
    /// multi-filter channels. Returns the spectrum of the result.
    fn modulus<'c>(
        &self,
        counter: &'c Counter,
        u: &ComplexGrid,
        channel: &WaveletChannel,
        from: u32,
        to: u32,
    ) -> Live<'c, ComplexGrid> {
        let convolve = |f: &PeriodizedFilter| {
            let mut y = counter.hold(filter_fold(u, f.spectrum(from), self.gain(from), to - from));
            dft_inverse_in_place(&mut y);
            y
        };
        let mut out = match channel.filters.as_slice() {
            [single] => {
                let y = convolve(single);
                let data = y.data().iter().map(|v| Complex64::new(v.norm(), 0.0)).collect();
                counter.hold(ComplexGrid::from_parts(y.shape().to_vec(), data))
            }
            filters => {
                let mut acc: Option<Live<'c, Vec<f64>>> = None;
                for f in filters {
                    let y = convolve(f);
                    let acc = acc.get_or_insert_with(|| counter.hold(vec![0.0; y.len()]));
                    for (a, v) in acc.iter_mut().zip(y.data()) {
                        *a += v.norm_sqr();
                    }
                }
                let acc = acc.expect("solid harmonic channel has at least one filter");
                let shape = u.shape().iter().map(|n| n >> (to - from)).collect();
                let data = acc.iter().map(|&s| Complex64::new(s.sqrt(), 0.0)).collect();
                drop(acc);
                counter.hold(ComplexGrid::from_parts(shape, data))
            }
        };
        dft_forward_in_place(&mut out);
        out
    }

    fn order0(&self, x_hat: &ComplexGrid, out: &mut [f64]) -> usize {
        let counter = Counter::default();
        self.average(&counter, x_hat, 0, out);
        counter.peak.get()
    }

    /// Runs subtree `c` into `rows` (its order-1 row, then its order-2 rows).
    fn subtree(&self, x_hat: &ComplexGrid, c: usize, rows: &mut [f64]) -> usize {
        let counter = Counter::default();
        let bank = self.plan.bank();
        let width = self.plan.output_len();
        let first = &bank.first_order()[c];
        let r1 = self.plan.resolution(first.label.j);
        let u1 = self.modulus(&counter, x_hat, first, 0, r1);
        let (head, tail) = rows.split_at_mut(width);
        self.average(&counter, &u1, r1, head);
        for (&b, row) in self.plan.children(c).iter().zip(tail.chunks_exact_mut(width)) {
            let second = &bank.second_order()[b];
            let r2 = self.plan.resolution(second.label.j).max(r1);
            let u2 = self.modulus(&counter, &u1, second, r1, r2);
            self.average(&counter, &u2, r2, row);
        }
        counter.peak.get()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Sequential,
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    Parallel,
}

fn worker_id() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_thread_index().map_or(0, |i| i + 1)
    }
    #[cfg(not(feature = "parallel"))]
    {
        0
    }
}

/// Evaluates every path of `plan` on an already validated input.
pub(crate) fn run(plan: &Plan, x: &RealGrid, mode: Mode) -> ScatteringOutput {
    let engine = Engine {
        plan,
        d: plan.bank().dim() as i32,
    };
    let width = plan.output_len();
    let paths = plan.paths();
    let mut coefficients = vec![0.0; paths.len() * width];

    let mut x_hat = ComplexGrid::from_real(x);
    dft_forward_in_place(&mut x_hat);

    let n1 = plan.bank().first_order().len();
    let (row0, rest) = coefficients.split_at_mut(width);
    let peak0 = engine.order0(&x_hat, row0);

    // Subtree outputs are produced contiguously and scattered into the
    // packed order-1 / order-2 layout afterwards.
    let sizes: Vec<usize> = (0..n1).map(|c| 1 + plan.children(c).len()).collect();
    let mut scratch = vec![0.0; sizes.iter().sum::<usize>() * width];
    let mut blocks: Vec<(usize, &mut [f64])> = Vec::with_capacity(n1);
    let mut remaining = scratch.as_mut_slice();
    for (c, &s) in sizes.iter().enumerate() {
        let (block, tail) = remaining.split_at_mut(s * width);
        blocks.push((c, block));
        remaining = tail;
    }

    let peaks: Vec<(usize, usize)> = match mode {
        Mode::Sequential => blocks
            .into_iter()
            .map(|(c, block)| (0, engine.subtree(&x_hat, c, block)))
            .collect(),
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            blocks
                .into_par_iter()
                .map(|(c, block)| (worker_id(), engine.subtree(&x_hat, c, block)))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        Mode::Parallel => blocks
            .into_iter()
            .map(|(c, block)| (worker_id(), engine.subtree(&x_hat, c, block)))
            .collect(),
    };

    let (order1, order2) = rest.split_at_mut(n1 * width);
    let mut cursor = 0;
    let mut o2 = order2.chunks_exact_mut(width);
    for (c, &s) in sizes.iter().enumerate() {
        let block = &scratch[cursor * width..(cursor + s) * width];
        order1[c * width..(c + 1) * width].copy_from_slice(&block[..width]);
        for src in block[width..].chunks_exact(width) {
            o2.next().expect("path table and subtree sizes agree").copy_from_slice(src);
        }
        cursor += s;
    }

    let mut per_worker = std::collections::BTreeMap::new();
    for &(w, p) in &peaks {
        let e = per_worker.entry(w).or_insert(0);
        *e = p.max(*e);
    }
    let peak = peaks.iter().map(|p| p.1).fold(peak0, usize::max);
    let summed = per_worker.values().sum::<usize>().max(peak);

    let mut shape = vec![paths.len()];
    shape.extend_from_slice(plan.output_shape());
    ScatteringOutput {
        coefficients: RealGrid::from_parts(shape, coefficients),
        meta: paths.to_vec(),
        stats: Stats {
            peak_live_intermediates: peak,
            peak_live_summed: summed,
            workers: per_worker.len().max(1),
        },
    }
}
