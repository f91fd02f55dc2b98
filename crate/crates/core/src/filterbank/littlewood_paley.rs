use super::{FilterBank, WaveletChannel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub a: f64,
    pub b: f64,
}

/// Index of the bin holding `-w` for every bin `w`.
fn mirror_indices(shape: &[usize]) -> Vec<usize> {
    let len: usize = shape.iter().product();
    let mut out = Vec::with_capacity(len);
    let mut index = vec![0usize; shape.len()];
    for _ in 0..len {
        let mut offset = 0;
        for (&k, &n) in index.iter().zip(shape) {
            offset = offset * n + (n - k) % n;
        }
        out.push(offset);
        for axis in (0..shape.len()).rev() {
            index[axis] += 1;
            if index[axis] < shape[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
    out
}

/// Wavelet part of the Littlewood-Paley sum at full resolution. With
/// `symmetrize` each term is `(|psi(w)|^2 + |psi(-w)|^2) / 2`, otherwise the
/// plain group norm `sum_m |psi_m(w)|^2`.
pub(crate) fn wavelet_sum(channels: &[WaveletChannel], shape: &[usize], symmetrize: bool) -> Vec<f64> {
    let len: usize = shape.iter().product();
    let mut acc = vec![0.0; len];
    for f in channels.iter().flat_map(|c| &c.filters) {
        for (a, v) in acc.iter_mut().zip(f.spectrum(0).data()) {
            *a += v.norm_sqr();
        }
    }
    if !symmetrize {
        return acc;
    }
    let mirror = mirror_indices(shape);
    (0..len).map(|i| 0.5 * (acc[i] + acc[mirror[i]])).collect()
}

/// `|phi(w)|^2` plus the first-order wavelet sum on every bin, in DFT order.
pub fn littlewood_paley_function(bank: &FilterBank) -> Vec<f64> {
    let mut lp = wavelet_sum(bank.first_order(), bank.shape(), bank.dim() != 3);
    for (v, p) in lp.iter_mut().zip(bank.lowpass().spectrum(0).data()) {
        *v += p.norm_sqr();
    }
    lp
}

/// Minimum and maximum of the Littlewood-Paley function.
pub fn littlewood_paley(bank: &FilterBank) -> FrameBounds {
    let lp = littlewood_paley_function(bank);
    FrameBounds {
        a: lp.iter().copied().fold(f64::INFINITY, f64::min),
        b: lp.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}
