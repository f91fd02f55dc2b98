use crate::error::Result;
use crate::filterbank::build_bank_3d;
use crate::plan::Plan;

/// Plans the solid-harmonic transform of volumes of the given shape with
/// degrees `0..=l_max`.
pub fn plan_3d(shape: &[usize], j: u32, l_max: u32, oversampling: u32) -> Result<Plan> {
    Ok(Plan::from_bank(build_bank_3d(shape, j, l_max)?, oversampling))
}
