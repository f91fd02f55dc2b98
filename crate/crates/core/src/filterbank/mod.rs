//! Lowpass and wavelet filter banks, stored as spectra at every resolution
//! the cascade visits.
//!
//! All banks use a strictly periodic boundary. Wavelets are normalised so the
//! Littlewood-Paley sum stays below a ceiling (1 for the Morlet banks), which
//! makes the resulting scattering operator nonexpansive.

mod littlewood_paley;
mod morlet;
mod solid_harmonic;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use littlewood_paley::{littlewood_paley, littlewood_paley_function, FrameBounds};
pub use morlet::{morlet_spectrum_1d, morlet_spectrum_2d};
pub use solid_harmonic::{solid_harmonic_spectrum_3d, SOLID_HARMONIC_SIGMA0};

use crate::error::{Result, ScatterError};
use crate::spectral::{periodize_spectrum, ComplexGrid};

/// Highest Morlet centre frequency, radians per sample.
pub const XI_MAX: f64 = 0.75 * PI;

/// 1D Morlet bandwidth: `sigma = MORLET_1D_SIGMA_XI / xi` for every filter.
pub const MORLET_1D_SIGMA_XI: f64 = 2.0;

/// 1D lowpass width is `LOWPASS_1D_SIGMA0 * 2^J` samples.
pub const LOWPASS_1D_SIGMA0: f64 = 1.1;

/// 2D Morlet and lowpass width at scale `j` is `MORLET_2D_SIGMA0 * 2^j`.
pub const MORLET_2D_SIGMA0: f64 = 0.8;

/// Ceiling on the Littlewood-Paley sum of the 3D bank. The degree-zero
/// solid harmonics are Gaussians that overlap the lowpass at DC, so a sum of
/// exactly one is out of reach there.
pub const SOLID_HARMONIC_LP_CEILING: f64 = 1.01;

/// Angular frequency of DFT bin `k` on an axis of length `n`, in `[-pi, pi)`.
pub fn bin_frequency(k: usize, n: usize) -> f64 {
    let signed = if 2 * k < n { k as f64 } else { k as f64 - n as f64 };
    2.0 * PI * signed / n as f64
}

fn for_each_frequency(shape: &[usize], mut f: impl FnMut(&[f64])) {
    let len: usize = shape.iter().product();
    let mut index = vec![0usize; shape.len()];
    let mut w = vec![0.0; shape.len()];
    for _ in 0..len {
        for (axis, (&k, &n)) in index.iter().zip(shape).enumerate() {
            w[axis] = bin_frequency(k, n);
        }
        f(&w);
        for axis in (0..shape.len()).rev() {
            index[axis] += 1;
            if index[axis] < shape[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
}

/// `exp(-sigma^2 |w|^2 / 2)` on the DFT bins; unit gain at DC.
pub fn gauss_spectrum(shape: &[usize], sigma: f64) -> Result<ComplexGrid> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(ScatterError::param(format!("lowpass sigma={sigma} must be positive")));
    }
    let mut data = Vec::with_capacity(shape.iter().product());
    for_each_frequency(shape, |w| {
        let r2: f64 = w.iter().map(|v| v * v).sum();
        data.push(Complex64::new((-0.5 * sigma * sigma * r2).exp(), 0.0));
    });
    ComplexGrid::new(shape.to_vec(), data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    GaussianLowpass,
    Morlet,
    SolidHarmonic,
}

/// Design parameters of a single filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    pub kind: FilterKind,
    /// Centre frequency in radians per sample; zero for lowpass and solid harmonics.
    pub xi: f64,
    pub sigma: f64,
    pub j: u32,
    pub theta: Option<f64>,
    pub slant: Option<f64>,
    pub ell: Option<u32>,
    pub m: Option<i32>,
}

impl FilterSpec {
    fn lowpass(sigma: f64, j: u32) -> Self {
        Self {
            kind: FilterKind::GaussianLowpass,
            xi: 0.0,
            sigma,
            j,
            theta: None,
            slant: None,
            ell: None,
            m: None,
        }
    }
}

/// A filter spectrum together with its periodizations `spectra[r]` onto the
/// grids `N / 2^r`, `r = 0..=J`.
#[derive(Debug, Clone)]
pub struct PeriodizedFilter {
    pub spec: FilterSpec,
    spectra: Vec<ComplexGrid>,
}

impl PeriodizedFilter {
    fn new(spec: FilterSpec, spectrum: ComplexGrid, levels: u32) -> Result<Self> {
        let d = spectrum.ndim();
        let mut spectra = Vec::with_capacity(levels as usize + 1);
        for r in 1..=levels {
            spectra.push(periodize_spectrum(&spectrum, &vec![1usize << r; d])?);
        }
        spectra.insert(0, spectrum);
        Ok(Self { spec, spectra })
    }

    /// Spectrum at resolution `r`, i.e. the DFT of the filter subsampled by `2^r`.
    pub fn spectrum(&self, r: u32) -> &ComplexGrid {
        &self.spectra[r as usize]
    }

    pub fn levels(&self) -> u32 {
        self.spectra.len() as u32 - 1
    }

    /// Rescales the full-resolution spectrum and re-derives the coarser ones
    /// from it, so `spectra[r] == periodize(spectra[0], 2^r)` stays exact.
    fn scale(&mut self, s: f64) -> Result<()> {
        let mut base = self.spectra[0].clone();
        base.data_mut().iter_mut().for_each(|v| *v *= s);
        *self = Self::new(self.spec.clone(), base, self.levels())?;
        Ok(())
    }
}

/// Identity of a wavelet channel within its bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FilterIndex {
    /// Position in the bank's channel list.
    pub index: usize,
    /// Octave.
    pub j: u32,
    /// Orientation index `t` of `theta = pi * t / L` (2D).
    pub theta: Option<u32>,
    /// Harmonic degree (3D).
    pub ell: Option<u32>,
}

/// One wavelet channel. Morlet channels hold a single filter; solid-harmonic
/// channels hold the `2l + 1` filters whose moduli are aggregated.
#[derive(Debug, Clone)]
pub struct WaveletChannel {
    pub label: FilterIndex,
    pub filters: Vec<PeriodizedFilter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BankParams {
    pub q: Option<u32>,
    pub l: Option<u32>,
    pub l_max: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct FilterBank {
    shape: Vec<usize>,
    j: u32,
    params: BankParams,
    lowpass: PeriodizedFilter,
    first_order: Vec<WaveletChannel>,
    /// `None` when both orders share `first_order`.
    second_order: Option<Vec<WaveletChannel>>,
    wavelet_gain: f64,
    lp_ceiling: f64,
}

impl FilterBank {
    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Averaging scale exponent `J`.
    pub fn scale(&self) -> u32 {
        self.j
    }

    pub fn params(&self) -> BankParams {
        self.params
    }

    pub fn lowpass(&self) -> &PeriodizedFilter {
        &self.lowpass
    }

    pub fn first_order(&self) -> &[WaveletChannel] {
        &self.first_order
    }

    pub fn second_order(&self) -> &[WaveletChannel] {
        self.second_order.as_deref().unwrap_or(&self.first_order)
    }

    pub fn shares_orders(&self) -> bool {
        self.second_order.is_none()
    }

    /// Global factor applied to every wavelet after Littlewood-Paley normalisation.
    pub fn wavelet_gain(&self) -> f64 {
        self.wavelet_gain
    }

    pub fn lp_ceiling(&self) -> f64 {
        self.lp_ceiling
    }

    /// Number of distinct wavelet filters (counting every `m` separately).
    pub fn wavelet_count(&self) -> usize {
        let count = |chs: &[WaveletChannel]| chs.iter().map(|c| c.filters.len()).sum::<usize>();
        count(&self.first_order) + self.second_order.as_deref().map_or(0, count)
    }

    fn assemble(
        shape: Vec<usize>,
        j: u32,
        params: BankParams,
        lowpass: PeriodizedFilter,
        first_order: Vec<WaveletChannel>,
        second_order: Option<Vec<WaveletChannel>>,
        lp_ceiling: f64,
    ) -> Result<Self> {
        let mut bank = Self {
            shape,
            j,
            params,
            lowpass,
            first_order,
            second_order,
            wavelet_gain: 1.0,
            lp_ceiling,
        };
        bank.normalize()?;
        Ok(bank)
    }

    /// Rescales every wavelet by one global factor `s`, the largest for which
    /// `|phi|^2 + s^2 W <= ceiling` on every bin, where `W` is the wavelet part
    /// of the Littlewood-Paley sum of the first-order bank. The second-order
    /// bank of the 1D transform receives its own factor computed the same way.
    fn normalize(&mut self) -> Result<()> {
        let phi = self.lowpass.spectrum(0).clone();
        let ceiling = self.lp_ceiling;
        let gain = |channels: &[WaveletChannel], symmetrize: bool| {
            let w = littlewood_paley::wavelet_sum(channels, &self.shape, symmetrize);
            let peak = w.iter().copied().fold(0.0, f64::max);
            let floor = peak * 1e-12;
            let s2 = w
                .iter()
                .zip(phi.data())
                .filter(|(&wv, _)| wv > floor)
                .map(|(&wv, p)| (ceiling - p.norm_sqr()).max(0.0) / wv)
                .fold(f64::INFINITY, f64::min);
            if s2.is_finite() {
                s2.sqrt()
            } else {
                1.0
            }
        };
        let symmetrize = self.dim() != 3;
        let s1 = gain(&self.first_order, symmetrize);
        let s2 = self.second_order.as_deref().map(|ch| gain(ch, symmetrize));
        for ch in &mut self.first_order {
            for f in &mut ch.filters {
                f.scale(s1)?;
            }
        }
        if let (Some(chs), Some(s)) = (self.second_order.as_mut(), s2) {
            for f in chs.iter_mut().flat_map(|ch| &mut ch.filters) {
                f.scale(s)?;
            }
        }
        self.wavelet_gain = s1;
        Ok(())
    }
}

fn check_j(j: u32, max: u32) -> Result<()> {
    if j == 0 {
        return Err(ScatterError::param("J must be at least 1"));
    }
    if j > max {
        return Err(ScatterError::param(format!(
            "J={j} exceeds log2 of the smallest axis ({max})"
        )));
    }
    Ok(())
}

pub(crate) fn check_shape(shape: &[usize], dim: usize, j: u32) -> Result<()> {
    if shape.len() != dim {
        return Err(ScatterError::contract(format!(
            "expected a {dim}D shape, got {shape:?}"
        )));
    }
    for &n in shape {
        if n == 0 || !n.is_power_of_two() {
            return Err(ScatterError::contract(format!(
                "axis length {n} is not a power of two (shape {shape:?})"
            )));
        }
    }
    let min_log = shape.iter().map(|n| n.trailing_zeros()).min().unwrap_or(0);
    if j > min_log {
        return Err(ScatterError::contract(format!(
            "shape {shape:?} is not divisible by 2^J = {}",
            1u64 << j.min(63)
        )));
    }
    Ok(())
}

fn peak_normalized(mut g: ComplexGrid) -> ComplexGrid {
    let peak = g.data().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak > 0.0 {
        g.data_mut().iter_mut().for_each(|v| *v /= peak);
    }
    g
}

fn morlet_1d_channel(n: usize, index: usize, j: u32, xi: f64, levels: u32) -> Result<WaveletChannel> {
    let sigma = MORLET_1D_SIGMA_XI / xi;
    let spectrum = peak_normalized(morlet_spectrum_1d(n, xi, sigma)?);
    let spec = FilterSpec {
        kind: FilterKind::Morlet,
        xi,
        sigma,
        j,
        theta: None,
        slant: None,
        ell: None,
        m: None,
    };
    Ok(WaveletChannel {
        label: FilterIndex {
            index,
            j,
            theta: None,
            ell: None,
        },
        filters: vec![PeriodizedFilter::new(spec, spectrum, levels)?],
    })
}

/// 1D Morlet bank: `J*Q` first-order filters at `xi_q = XI_MAX * 2^(-q/Q)`,
/// `J` second-order filters at one per octave, and a Gaussian lowpass of
/// width `LOWPASS_1D_SIGMA0 * 2^J`.
pub fn build_bank_1d(n: usize, j: u32, q: u32) -> Result<FilterBank> {
    if q == 0 {
        return Err(ScatterError::param("Q must be at least 1"));
    }
    if n == 0 || !n.is_power_of_two() {
        return Err(ScatterError::contract(format!("length {n} is not a power of two")));
    }
    check_j(j, n.trailing_zeros())?;
    check_shape(&[n], 1, j)?;

    let first = (0..j * q)
        .map(|idx| {
            let xi = XI_MAX * 2f64.powf(-(idx as f64) / q as f64);
            morlet_1d_channel(n, idx as usize, idx / q, xi, j)
        })
        .collect::<Result<Vec<_>>>()?;
    let second = (0..j)
        .map(|idx| morlet_1d_channel(n, idx as usize, idx, XI_MAX * 2f64.powi(-(idx as i32)), j))
        .collect::<Result<Vec<_>>>()?;
    let sigma = LOWPASS_1D_SIGMA0 * f64::from(1u32 << j);
    let lowpass = PeriodizedFilter::new(
        FilterSpec::lowpass(sigma, j),
        gauss_spectrum(&[n], sigma)?,
        j,
    )?;
    FilterBank::assemble(
        vec![n],
        j,
        BankParams {
            q: Some(q),
            l: None,
            l_max: None,
        },
        lowpass,
        first,
        Some(second),
        1.0,
    )
}

/// 2D Morlet bank with `L` orientations in `[0, pi)` per octave, shared by
/// both orders.
pub fn build_bank_2d(shape: &[usize], j: u32, l: u32) -> Result<FilterBank> {
    if l == 0 {
        return Err(ScatterError::param("L must be at least 1"));
    }
    if j == 0 {
        return Err(ScatterError::param("J must be at least 1"));
    }
    check_shape(shape, 2, j)?;
    let slant = 4.0 / l as f64;
    let mut channels = Vec::with_capacity((j * l) as usize);
    for scale in 0..j {
        let xi = XI_MAX * 2f64.powi(-(scale as i32));
        let sigma = MORLET_2D_SIGMA0 * f64::from(1u32 << scale);
        for t in 0..l {
            let theta = PI * t as f64 / l as f64;
            let spectrum = peak_normalized(morlet_spectrum_2d(shape, xi, sigma, theta, slant)?);
            let spec = FilterSpec {
                kind: FilterKind::Morlet,
                xi,
                sigma,
                j: scale,
                theta: Some(theta),
                slant: Some(slant),
                ell: None,
                m: None,
            };
            channels.push(WaveletChannel {
                label: FilterIndex {
                    index: channels.len(),
                    j: scale,
                    theta: Some(t),
                    ell: None,
                },
                filters: vec![PeriodizedFilter::new(spec, spectrum, j)?],
            });
        }
    }
    let sigma = MORLET_2D_SIGMA0 * f64::from(1u32 << j);
    let lowpass = PeriodizedFilter::new(
        FilterSpec::lowpass(sigma, j),
        gauss_spectrum(shape, sigma)?,
        j,
    )?;
    FilterBank::assemble(
        shape.to_vec(),
        j,
        BankParams {
            q: None,
            l: Some(l),
            l_max: None,
        },
        lowpass,
        channels,
        None,
        1.0,
    )
}

/// 3D solid-harmonic bank: channels `(j, l)` for `j < J`, `l <= L_max`, each
/// holding `2l + 1` filters. Channels are ordered by `(l, j)`.
pub fn build_bank_3d(shape: &[usize], j: u32, l_max: u32) -> Result<FilterBank> {
    if j == 0 {
        return Err(ScatterError::param("J must be at least 1"));
    }
    check_shape(shape, 3, j)?;
    if l_max > 16 {
        return Err(ScatterError::param(format!("L_max={l_max} is unreasonably large")));
    }
    let mut channels = Vec::new();
    for l in 0..=l_max {
        for scale in 0..j {
            let spectra = solid_harmonic_spectrum_3d(shape, scale, l)?;
            let filters = spectra
                .into_iter()
                .zip(-(l as i32)..=l as i32)
                .map(|(g, m)| {
                    let spec = FilterSpec {
                        kind: FilterKind::SolidHarmonic,
                        xi: 0.0,
                        sigma: SOLID_HARMONIC_SIGMA0 * f64::from(1u32 << scale),
                        j: scale,
                        theta: None,
                        slant: None,
                        ell: Some(l),
                        m: Some(m),
                    };
                    PeriodizedFilter::new(spec, g, j)
                })
                .collect::<Result<Vec<_>>>()?;
            channels.push(WaveletChannel {
                label: FilterIndex {
                    index: channels.len(),
                    j: scale,
                    theta: None,
                    ell: Some(l),
                },
                filters,
            });
        }
    }
    let sigma = SOLID_HARMONIC_SIGMA0 * f64::from(1u32 << j);
    let lowpass = PeriodizedFilter::new(
        FilterSpec::lowpass(sigma, j),
        gauss_spectrum(shape, sigma)?,
        j,
    )?;
    FilterBank::assemble(
        shape.to_vec(),
        j,
        BankParams {
            q: None,
            l: None,
            l_max: Some(l_max),
        },
        lowpass,
        channels,
        None,
        SOLID_HARMONIC_LP_CEILING,
    )
}
