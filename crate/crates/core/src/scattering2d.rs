use crate::error::Result;
use crate::filterbank::build_bank_2d;
use crate::plan::Plan;

/// Plans the 2D transform of `shape = [h, w]` images with `l` orientations
/// per octave.
pub fn plan_2d(shape: &[usize], j: u32, l: u32, oversampling: u32) -> Result<Plan> {
    Ok(Plan::from_bank(build_bank_2d(shape, j, l)?, oversampling))
}

/// `1 + J L + L^2 J (J - 1) / 2`.
pub fn path_count_2d(j: u32, l: u32) -> usize {
    let (j, l) = (j as usize, l as usize);
    1 + j * l + l * l * j * (j.saturating_sub(1)) / 2
}
