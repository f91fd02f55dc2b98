//! Slow reference implementations for tests: direct periodic convolution, the
//! DFT by definition, and a breadth-first scattering evaluated at full
//! resolution. Nothing here calls the FFT or the cascade.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cascade::{ScatteringOutput, Stats};
use crate::error::{Result, ScatterError};
use crate::filterbank::{FilterBank, WaveletChannel};
use crate::paths::{PathMeta, PathRule};
use crate::spectral::{ComplexGrid, RealGrid};

/// Largest input, in samples, that [`reference_scatter`] accepts.
pub const MAX_ORACLE_SAMPLES: usize = 4096;

/// Views any shape of up to three axes as `[a, b, c]`.
fn as_3d(shape: &[usize]) -> [usize; 3] {
    let mut out = [1; 3];
    out[3 - shape.len()..].copy_from_slice(shape);
    out
}

/// `out[n] = sum_m x[m] h[(n - m) mod N]` on every axis.
pub fn direct_periodic_convolution(x: &ComplexGrid, h: &ComplexGrid) -> Result<ComplexGrid> {
    if x.shape() != h.shape() {
        return Err(ScatterError::ShapeMismatch {
            expected: x.shape().to_vec(),
            actual: h.shape().to_vec(),
        });
    }
    if x.ndim() > 3 {
        return Err(ScatterError::param("at most three axes are supported"));
    }
    let [a, b, c] = as_3d(x.shape());
    let (xd, hd) = (x.data(), h.data());
    let mut out = vec![Complex64::default(); xd.len()];
    for n0 in 0..a {
        for n1 in 0..b {
            for n2 in 0..c {
                let mut acc = Complex64::default();
                for m0 in 0..a {
                    let d0 = (n0 + a - m0) % a;
                    for m1 in 0..b {
                        let d1 = (n1 + b - m1) % b;
                        let xrow = &xd[(m0 * b + m1) * c..][..c];
                        let hrow = &hd[(d0 * b + d1) * c..][..c];
                        // h[(n2 - m2) mod c], split at the wrap point.
                        for m2 in 0..=n2 {
                            acc += xrow[m2] * hrow[n2 - m2];
                        }
                        for m2 in n2 + 1..c {
                            acc += xrow[m2] * hrow[n2 + c - m2];
                        }
                    }
                }
                out[(n0 * b + n1) * c + n2] = acc;
            }
        }
    }
    ComplexGrid::new(x.shape().to_vec(), out)
}

/// `sum_n x[n] exp(sign * 2 pi i <k, n/N>)`, summed one axis at a time
/// (the exponential factorises over axes) with exact integer phases.
fn naive_transform(x: &ComplexGrid, sign: f64) -> ComplexGrid {
    let dims = as_3d(x.shape());
    let mut data = x.data().to_vec();
    for axis in 0..3 {
        let n = dims[axis];
        if n == 1 {
            continue;
        }
        let twiddle: Vec<Complex64> = (0..n)
            .map(|t| Complex64::from_polar(1.0, sign * 2.0 * PI * t as f64 / n as f64))
            .collect();
        let inner: usize = dims[axis + 1..].iter().product();
        let mut line = vec![Complex64::default(); n];
        for block in data.chunks_exact_mut(n * inner) {
            for i in 0..inner {
                for (k, l) in line.iter_mut().enumerate() {
                    *l = (0..n).map(|m| block[m * inner + i] * twiddle[k * m % n]).sum();
                }
                for (k, &l) in line.iter().enumerate() {
                    block[k * inner + i] = l;
                }
            }
        }
    }
    ComplexGrid::new(x.shape().to_vec(), data).expect("shape preserved")
}

/// The DFT by its definition, `X[k] = sum_n x[n] exp(-2 pi i <k, n/N>)`.
pub fn naive_dft(x: &ComplexGrid) -> ComplexGrid {
    naive_transform(x, -1.0)
}

fn naive_idft(x: &ComplexGrid) -> ComplexGrid {
    let mut out = naive_transform(x, 1.0);
    let scale = 1.0 / x.len() as f64;
    out.data_mut().iter_mut().for_each(|v| *v *= scale);
    out
}

/// Spatial filters of one channel.
fn spatial(channel: &WaveletChannel) -> Vec<ComplexGrid> {
    channel.filters.iter().map(|f| naive_idft(f.spectrum(0))).collect()
}

/// `sqrt(sum_m |u * psi_m|^2)` at full resolution.
fn rho(u: &ComplexGrid, filters: &[ComplexGrid]) -> Result<ComplexGrid> {
    let mut acc = vec![0.0; u.len()];
    for h in filters {
        let y = direct_periodic_convolution(u, h)?;
        for (a, v) in acc.iter_mut().zip(y.data()) {
            *a += v.norm_sqr();
        }
    }
    ComplexGrid::new(
        u.shape().to_vec(),
        acc.into_iter().map(|s| Complex64::new(s.sqrt(), 0.0)).collect(),
    )
}

/// Keeps every `stride`-th sample on each axis of the real part.
fn subsample(y: &ComplexGrid, stride: usize) -> Vec<f64> {
    let [a, b, c] = as_3d(y.shape());
    let d = y.ndim();
    let step = |axis: usize| if axis + d >= 3 { stride } else { 1 };
    let mut out = Vec::new();
    for i in (0..a).step_by(step(0)) {
        for j in (0..b).step_by(step(1)) {
            for k in (0..c).step_by(step(2)) {
                out.push(y.data()[(i * b + j) * c + k].re);
            }
        }
    }
    out
}

/// Scattering coefficients straight from the definitions: all first-order
/// moduli are formed before any second-order one, every convolution is a
/// direct sum at full resolution, and only the final averages are
/// subsampled by `2^J`.
///
/// `stats.peak_live_intermediates` counts the full-resolution signals held at
/// once.
pub fn reference_scatter(bank: &FilterBank, x: &RealGrid, rule: PathRule) -> Result<ScatteringOutput> {
    if x.shape() != bank.shape() {
        return Err(ScatterError::ShapeMismatch {
            expected: bank.shape().to_vec(),
            actual: x.shape().to_vec(),
        });
    }
    if x.len() > MAX_ORACLE_SAMPLES {
        return Err(ScatterError::TooLarge {
            samples: x.len(),
            max: MAX_ORACLE_SAMPLES,
        });
    }
    if !x.is_finite() {
        return Err(ScatterError::NonFinite);
    }
    let stride = 1usize << bank.scale();
    let phi = naive_idft(bank.lowpass().spectrum(0));
    let xc = ComplexGrid::from_real(x);
    let mut live = 0usize;
    let mut peak = 0usize;

    let mut meta = vec![PathMeta {
        order: 0,
        lambda1: None,
        lambda2: None,
        output_stride: stride,
    }];
    let mut rows = vec![subsample(&direct_periodic_convolution(&xc, &phi)?, stride)];

    let mut u1 = Vec::new();
    for ch in bank.first_order() {
        u1.push((ch.label, rho(&xc, &spatial(ch))?));
        live += 1;
        peak = peak.max(live);
    }
    for (label, u) in &u1 {
        meta.push(PathMeta {
            order: 1,
            lambda1: Some(*label),
            lambda2: None,
            output_stride: stride,
        });
        rows.push(subsample(&direct_periodic_convolution(u, &phi)?, stride));
    }

    let second: Vec<_> = bank.second_order().iter().map(|ch| (ch.label, spatial(ch))).collect();
    let mut u2 = Vec::new();
    for (l1, u) in &u1 {
        for (l2, filters) in &second {
            if rule.admits(l1, l2) {
                u2.push((*l1, *l2, rho(u, filters)?));
                live += 1;
                peak = peak.max(live);
            }
        }
    }
    for (l1, l2, u) in &u2 {
        meta.push(PathMeta {
            order: 2,
            lambda1: Some(*l1),
            lambda2: Some(*l2),
            output_stride: stride,
        });
        rows.push(subsample(&direct_periodic_convolution(u, &phi)?, stride));
    }

    let mut shape = vec![rows.len()];
    shape.extend(bank.shape().iter().map(|n| n / stride));
    Ok(ScatteringOutput {
        coefficients: RealGrid::new(shape, rows.concat())?,
        meta,
        stats: Stats {
            peak_live_intermediates: peak,
            peak_live_summed: peak,
            workers: 1,
        },
    })
}
