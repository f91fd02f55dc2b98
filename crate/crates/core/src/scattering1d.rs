use crate::error::Result;
use crate::filterbank::build_bank_1d;
use crate::plan::Plan;

/// Plans the 1D transform of length-`n` signals with `q` first-order filters
/// per octave and averaging scale `2^j`.
pub fn plan_1d(n: usize, j: u32, q: u32, oversampling: u32) -> Result<Plan> {
    Ok(Plan::from_bank(build_bank_1d(n, j, q)?, oversampling))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::RealGrid;

    #[test]
    fn small_path_table() {
        let plan = plan_1d(32, 3, 1, 0).unwrap();
        let paths = plan.paths();
        assert_eq!(paths.len(), 7);
        assert_eq!(paths[0].order, 0);
        let firsts: Vec<_> = paths[1..4].iter().map(|p| p.lambda1.unwrap().index).collect();
        assert_eq!(firsts, vec![0, 1, 2]);
        assert!(paths[1..4].iter().all(|p| p.order == 1 && p.lambda2.is_none()));
        let pairs: Vec<_> = paths[4..]
            .iter()
            .map(|p| (p.lambda1.unwrap().j, p.lambda2.unwrap().j))
            .collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(paths.iter().all(|p| p.output_stride == 8));
    }

    #[test]
    fn default_path_count() {
        // 48 first-order filters; octave j has 8 of them, each paired with
        // the 5 - j coarser second-order octaves: 8 * 15 = 120.
        assert_eq!(plan_1d(1024, 6, 8, 0).unwrap().paths().len(), 1 + 48 + 120);
    }

    #[test]
    fn schedule_respects_oversampling() {
        let plan = plan_1d(64, 4, 1, 0).unwrap();
        assert_eq!((0..4).map(|j| plan.resolution(j)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let plan = plan_1d(64, 4, 1, 4).unwrap();
        assert!((0..4).all(|j| plan.resolution(j) == 0));
        assert_eq!(plan.output_shape(), &[4]);
    }

    #[test]
    fn zero_and_constant_inputs() {
        let plan = plan_1d(64, 3, 2, 0).unwrap();
        let out = plan.scatter(&RealGrid::zeros(&[64])).unwrap();
        assert!(out.coefficients.data().iter().all(|&v| v == 0.0));
        let c = 2.5;
        let out = plan.scatter(&RealGrid::new(vec![64], vec![c; 64]).unwrap()).unwrap();
        assert!(out.row(0).iter().all(|v| (v - c).abs() <= 1e-10));
        for p in 1..out.path_count() {
            assert!(out.row(p).iter().all(|v| v.abs() <= 1e-10 * c));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let plan = plan_1d(64, 3, 1, 0).unwrap();
        assert!(plan.scatter(&RealGrid::zeros(&[32])).is_err());
        let mut x = RealGrid::zeros(&[64]);
        x.data_mut()[3] = f64::NAN;
        assert!(plan.scatter(&x).is_err());
        assert!(plan_1d(64, 0, 1, 0).unwrap_err().to_string().contains('J'));
    }
}
