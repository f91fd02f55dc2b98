//! DFT, Fourier-domain subsampling and pointwise kernels on periodic grids.
//!
//! Conventions: the forward transform uses `exp(-2πi<k, n/N>)` and is
//! unnormalised; the inverse carries the `1/prod(N)` factor.

mod fft;
mod grid;

use num_complex::Complex64;

pub use grid::{ComplexGrid, RealGrid};

use crate::error::{Result, ScatterError};

pub fn dft_forward(x: &ComplexGrid) -> ComplexGrid {
    let mut out = x.clone();
    let shape = out.shape().to_vec();
    fft::forward(out.data_mut(), &shape);
    out
}

pub fn dft_inverse(x: &ComplexGrid) -> ComplexGrid {
    let mut out = x.clone();
    let shape = out.shape().to_vec();
    fft::inverse(out.data_mut(), &shape);
    out
}

pub(crate) fn dft_forward_in_place(x: &mut ComplexGrid) {
    let shape = x.shape().to_vec();
    fft::forward(x.data_mut(), &shape);
}

pub(crate) fn dft_inverse_in_place(x: &mut ComplexGrid) {
    let shape = x.shape().to_vec();
    fft::inverse(x.data_mut(), &shape);
}

fn check_factors(shape: &[usize], factors: &[usize]) -> Result<()> {
    if factors.len() != shape.len() {
        return Err(ScatterError::ShapeMismatch {
            expected: shape.to_vec(),
            actual: factors.to_vec(),
        });
    }
    for (&k, &n) in factors.iter().zip(shape) {
        if k == 0 || !k.is_power_of_two() || n % k != 0 {
            return Err(ScatterError::InvalidFactor { factor: k, len: n });
        }
    }
    Ok(())
}

/// Folds a spectrum onto the grid `N/k`:
/// `Y[m] = (1/prod k) * sum_r X[m + r*(N/k)]`.
///
/// The result is exactly the DFT of the spatially subsampled signal
/// `y[n] = x[k*n]`.
pub fn periodize_spectrum(x: &ComplexGrid, factors: &[usize]) -> Result<ComplexGrid> {
    check_factors(x.shape(), factors)?;
    let scale = 1.0 / factors.iter().product::<usize>() as f64;
    let mut out = fold(x, factors);
    for v in out.data_mut() {
        *v *= scale;
    }
    Ok(out)
}

/// Unscaled fold, `sum_r X[m + r*(N/k)]`. Factors must already be validated.
pub(crate) fn fold(x: &ComplexGrid, factors: &[usize]) -> ComplexGrid {
    let shape = x.shape();
    if factors.iter().all(|&k| k == 1) {
        return x.clone();
    }
    let out_shape: Vec<usize> = shape.iter().zip(factors).map(|(n, k)| n / k).collect();
    let mut out = vec![Complex64::default(); out_shape.iter().product()];
    let d = shape.len();
    let mut index = vec![0usize; d];
    for &v in x.data() {
        let mut offset = 0;
        for axis in 0..d {
            offset = offset * out_shape[axis] + index[axis] % out_shape[axis];
        }
        out[offset] += v;
        for axis in (0..d).rev() {
            index[axis] += 1;
            if index[axis] < shape[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
    ComplexGrid::from_parts(out_shape, out)
}

pub fn pointwise_multiply(x: &ComplexGrid, h: &ComplexGrid) -> Result<ComplexGrid> {
    if x.shape() != h.shape() {
        return Err(ScatterError::ShapeMismatch {
            expected: x.shape().to_vec(),
            actual: h.shape().to_vec(),
        });
    }
    let data = x.data().iter().zip(h.data()).map(|(a, b)| a * b).collect();
    Ok(ComplexGrid::from_parts(x.shape().to_vec(), data))
}

pub fn complex_modulus(x: &ComplexGrid) -> RealGrid {
    let data = x.data().iter().map(|c| c.norm()).collect();
    RealGrid::from_parts(x.shape().to_vec(), data)
}
