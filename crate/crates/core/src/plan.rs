use crate::cascade::{self, Mode, ScatteringOutput};
use crate::error::{Result, ScatterError};
use crate::filterbank::FilterBank;
use crate::paths::{self, PathMeta, PathRule};
use crate::spectral::RealGrid;

/// A filter bank, its path table and the subsampling schedule. Immutable once
/// built; share it freely between threads.
#[derive(Debug, Clone)]
pub struct Plan {
    bank: FilterBank,
    oversampling: u32,
    rule: PathRule,
    paths: Vec<PathMeta>,
    children: Vec<Vec<usize>>,
    output_shape: Vec<usize>,
}

impl Plan {
    pub(crate) fn from_bank(bank: FilterBank, oversampling: u32) -> Self {
        let rule = PathRule::for_dim(bank.dim());
        let (paths, children) = paths::enumerate(&bank, rule);
        let output_shape = bank.shape().iter().map(|n| n >> bank.scale()).collect();
        Self {
            bank,
            oversampling,
            rule,
            paths,
            children,
            output_shape,
        }
    }

    pub fn bank(&self) -> &FilterBank {
        &self.bank
    }

    pub fn shape(&self) -> &[usize] {
        self.bank.shape()
    }

    pub fn oversampling(&self) -> u32 {
        self.oversampling
    }

    pub fn rule(&self) -> PathRule {
        self.rule
    }

    /// Path metadata in output row order.
    pub fn paths(&self) -> &[PathMeta] {
        &self.paths
    }

    /// Second-order channel indices cascaded below first-order channel `c`.
    pub fn children(&self, c: usize) -> &[usize] {
        &self.children[c]
    }

    /// Spatial shape of every output row.
    pub fn output_shape(&self) -> &[usize] {
        &self.output_shape
    }

    pub fn output_len(&self) -> usize {
        self.output_shape.iter().product()
    }

    /// Resolution exponent at which the modulus of an octave-`j` convolution
    /// is sampled: stride `2^max(j - oversampling, 0)`, never beyond `2^J`.
    pub fn resolution(&self, j: u32) -> u32 {
        j.saturating_sub(self.oversampling).min(self.bank.scale())
    }

    fn check_input(&self, x: &RealGrid) -> Result<()> {
        if x.shape() != self.shape() {
            return Err(ScatterError::ShapeMismatch {
                expected: self.shape().to_vec(),
                actual: x.shape().to_vec(),
            });
        }
        if !x.is_finite() {
            return Err(ScatterError::NonFinite);
        }
        Ok(())
    }

    /// Runs the transform, spreading first-order subtrees over the current
    /// rayon pool when the `parallel` feature is enabled.
    pub fn scatter(&self, x: &RealGrid) -> Result<ScatteringOutput> {
        self.check_input(x)?;
        Ok(cascade::run(self, x, Mode::Parallel))
    }

    /// Runs the transform on the calling thread only.
    pub fn scatter_sequential(&self, x: &RealGrid) -> Result<ScatteringOutput> {
        self.check_input(x)?;
        Ok(cascade::run(self, x, Mode::Sequential))
    }
}
