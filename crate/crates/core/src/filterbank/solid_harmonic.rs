use std::f64::consts::PI;

use num_complex::Complex64;

use super::bin_frequency;
use crate::error::{Result, ScatterError};
use crate::spectral::ComplexGrid;

/// Width of the finest solid-harmonic Gaussian, in grid units.
pub const SOLID_HARMONIC_SIGMA0: f64 = 1.0;

/// Associated Legendre `P_l^m(x)` for `m >= 0`, Condon-Shortley phase included.
fn legendre(l: u32, m: u32, x: f64) -> f64 {
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = ((2 * ll - 1) as f64 * x * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

fn factorial_ratio(l: u32, m: u32) -> f64 {
    // (l - m)! / (l + m)!
    ((l - m + 1)..=(l + m)).fold(1.0, |acc, k| acc / k as f64)
}

/// `|w|^l * Y_l^m(w / |w|)` at a frequency vector `w`, using complex spherical
/// harmonics with Condon-Shortley phase and polar axis along the last axis.
pub(crate) fn solid_harmonic(l: u32, m: i32, w: [f64; 3]) -> Complex64 {
    let r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let am = m.unsigned_abs();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial_ratio(l, am)).sqrt();
    if r == 0.0 {
        return if l == 0 {
            Complex64::new(norm, 0.0)
        } else {
            Complex64::default()
        };
    }
    let cos_theta = w[2] / r;
    let phi = w[1].atan2(w[0]);
    let y = Complex64::from_polar(norm * legendre(l, am, cos_theta), am as f64 * phi);
    let y = if m < 0 {
        let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
        y.conj() * sign
    } else {
        y
    };
    y * r.powi(l as i32)
}

/// The `2l + 1` spectra `psi_{j,l,m}` for `m = -l..=l`:
/// `C_l |2^j w|^l Y_l^m(w/|w|) exp(-(2^j sigma0)^2 |w|^2 / 2)`.
///
/// Bins on a Nyquist plane represent both `+pi` and `-pi`; their value is the
/// average over both signs so the sampled family stays covariant under the
/// lattice rotations. `C_l` scales the group norm `sum_m |psi|^2` to a maximum
/// of one over the grid.
pub fn solid_harmonic_spectrum_3d(shape: &[usize], j: u32, l: u32) -> Result<Vec<ComplexGrid>> {
    if shape.len() != 3 || shape.contains(&0) {
        return Err(ScatterError::param(format!(
            "solid harmonic filters need a 3D shape, got {shape:?}"
        )));
    }
    if j > 30 {
        return Err(ScatterError::param(format!("J={j} out of range")));
    }
    let scale = f64::from(1u32 << j);
    let width = scale * SOLID_HARMONIC_SIGMA0;
    let len: usize = shape.iter().product();
    let mut filters: Vec<Vec<Complex64>> = vec![Vec::with_capacity(len); (2 * l + 1) as usize];

    let candidates = |bin: usize, n: usize| -> Vec<f64> {
        let w = bin_frequency(bin, n);
        if n.is_multiple_of(2) && bin == n / 2 {
            vec![w, -w]
        } else {
            vec![w]
        }
    };
    for a in 0..shape[0] {
        let wa = candidates(a, shape[0]);
        for b in 0..shape[1] {
            let wb = candidates(b, shape[1]);
            for c in 0..shape[2] {
                let wc = candidates(c, shape[2]);
                let count = (wa.len() * wb.len() * wc.len()) as f64;
                let mut acc = vec![Complex64::default(); filters.len()];
                for &x in &wa {
                    for &y in &wb {
                        for &z in &wc {
                            let w = [x, y, z];
                            let r2 = x * x + y * y + z * z;
                            let radial = scale.powi(l as i32) * (-0.5 * width * width * r2).exp();
                            for (slot, m) in acc.iter_mut().zip(-(l as i32)..=l as i32) {
                                *slot += solid_harmonic(l, m, w) * radial;
                            }
                        }
                    }
                }
                for (f, v) in filters.iter_mut().zip(acc) {
                    f.push(v / count);
                }
            }
        }
    }

    let peak = (0..len)
        .map(|i| filters.iter().map(|f| f[i].norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    let c_l = if peak > 0.0 { 1.0 / peak.sqrt() } else { 1.0 };
    filters
        .into_iter()
        .map(|f| ComplexGrid::new(shape.to_vec(), f.into_iter().map(|v| v * c_l).collect()))
        .collect()
}
