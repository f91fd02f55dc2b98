use std::f64::consts::PI;

use num_complex::Complex64;

use super::bin_frequency;
use crate::error::{Result, ScatterError};
use crate::spectral::{dft_forward_in_place, ComplexGrid};

fn gauss(omega: f64, sigma: f64) -> f64 {
    (-0.5 * sigma * sigma * omega * omega).exp()
}

/// Fourier-domain Morlet `g(w - xi) - kappa * g(w)`, periodized over
/// `w + 2*pi*k` for `k` in `-2..=2`, with `kappa` forcing `psi_hat(0) = 0`.
pub fn morlet_spectrum_1d(n: usize, xi: f64, sigma: f64) -> Result<ComplexGrid> {
    if n == 0 {
        return Err(ScatterError::param("morlet length must be positive"));
    }
    if !(xi > 0.0 && xi <= PI) {
        return Err(ScatterError::param(format!("morlet xi={xi} outside (0, pi]")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(ScatterError::param(format!("morlet sigma={sigma} must be positive")));
    }
    let periods = -2..=2;
    let shifted: f64 = periods.clone().map(|k| gauss(2.0 * PI * k as f64 - xi, sigma)).sum();
    let centred: f64 = periods.clone().map(|k| gauss(2.0 * PI * k as f64, sigma)).sum();
    let kappa = shifted / centred;
    let data = (0..n)
        .map(|bin| {
            let w = bin_frequency(bin, n);
            let v: f64 = periods
                .clone()
                .map(|k| {
                    let wk = w + 2.0 * PI * k as f64;
                    gauss(wk - xi, sigma) - kappa * gauss(wk, sigma)
                })
                .sum();
            Complex64::new(v, 0.0)
        })
        .collect();
    ComplexGrid::new(vec![n], data)
}

/// Spatially sampled 2D Morlet, returned as its spectrum.
///
/// `psi(u) = (exp(i xi u'_0) - kappa) exp(-(u'_0^2 + slant^2 u'_1^2) / (2 sigma^2))`
/// with `u' = R(-theta) u`. Sampled on the centred periodic lattice and summed
/// over enough neighbouring periods (at least two) that the envelope is
/// negligible beyond them; `kappa` makes the sampled filter sum to zero.
pub fn morlet_spectrum_2d(
    shape: &[usize],
    xi: f64,
    sigma: f64,
    theta: f64,
    slant: f64,
) -> Result<ComplexGrid> {
    if shape.len() != 2 || shape.contains(&0) {
        return Err(ScatterError::param(format!("2D morlet needs a 2D shape, got {shape:?}")));
    }
    if !(xi > 0.0 && xi <= PI) {
        return Err(ScatterError::param(format!("morlet xi={xi} outside (0, pi]")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) || !(slant > 0.0 && slant.is_finite()) {
        return Err(ScatterError::param("morlet sigma and slant must be positive"));
    }
    if !(0.0..PI).contains(&theta) {
        return Err(ScatterError::param(format!("morlet theta={theta} outside [0, pi)")));
    }
    let (h, w) = (shape[0], shape[1]);
    let (sin, cos) = theta.sin_cos();
    let inv = 1.0 / (2.0 * sigma * sigma);
    // Widest envelope axis is sigma / min(slant, 1); 9.5 widths puts the tail
    // below 1e-19.
    let reach = 9.5 * sigma / slant.min(1.0);
    let periods = |len: usize| 2.max((reach / len as f64).ceil() as i64 + 1);
    let (ph, pw) = (periods(h), periods(w));

    let mut carrier = vec![Complex64::default(); h * w];
    let mut envelope = vec![0.0f64; h * w];
    for r in 0..h {
        let base0 = centred(r, h);
        for c in 0..w {
            let base1 = centred(c, w);
            let mut acc_c = Complex64::default();
            let mut acc_e = 0.0;
            for a in -ph..=ph {
                let u0 = base0 + (a * h as i64) as f64;
                for b in -pw..=pw {
                    let u1 = base1 + (b * w as i64) as f64;
                    let along = cos * u0 + sin * u1;
                    let across = -sin * u0 + cos * u1;
                    let env = (-(along * along + slant * slant * across * across) * inv).exp();
                    acc_e += env;
                    acc_c += Complex64::from_polar(env, xi * along);
                }
            }
            carrier[r * w + c] = acc_c;
            envelope[r * w + c] = acc_e;
        }
    }
    let kappa: Complex64 = carrier.iter().sum::<Complex64>() / envelope.iter().sum::<f64>();
    let data = carrier
        .iter()
        .zip(&envelope)
        .map(|(&g, &e)| g - kappa * e)
        .collect();
    let mut grid = ComplexGrid::new(shape.to_vec(), data)?;
    dft_forward_in_place(&mut grid);
    Ok(grid)
}

/// Signed representative of lattice index `i` in `[-n/2, n/2)`.
fn centred(i: usize, n: usize) -> f64 {
    if i < n.div_ceil(2) {
        i as f64
    } else {
        i as f64 - n as f64
    }
}
