use crate::filterbank::{FilterBank, FilterIndex};

/// One output row: the order and the filter channels along the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathMeta {
    pub order: u8,
    pub lambda1: Option<FilterIndex>,
    pub lambda2: Option<FilterIndex>,
    /// Subsampling factor of the output relative to the input grid, per axis.
    pub output_stride: usize,
}

/// Which second-order channels are cascaded below a first-order channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathRule {
    /// `j2 > j1`, any orientation.
    IncreasingOctave,
    /// `j2 > j1` and `l2 == l1` (solid harmonics).
    IncreasingOctaveSameDegree,
}

impl PathRule {
    pub fn for_dim(dim: usize) -> Self {
        if dim == 3 {
            PathRule::IncreasingOctaveSameDegree
        } else {
            PathRule::IncreasingOctave
        }
    }

    pub fn admits(self, first: &FilterIndex, second: &FilterIndex) -> bool {
        match self {
            PathRule::IncreasingOctave => second.j > first.j,
            PathRule::IncreasingOctaveSameDegree => second.j > first.j && second.ell == first.ell,
        }
    }
}

/// Paths in output order plus, for every first-order channel, the indices
/// of its admitted second-order channels in ascending order.
pub(crate) fn enumerate(bank: &FilterBank, rule: PathRule) -> (Vec<PathMeta>, Vec<Vec<usize>>) {
    let stride = 1usize << bank.scale();
    let children: Vec<Vec<usize>> = bank
        .first_order()
        .iter()
        .map(|a| {
            bank.second_order()
                .iter()
                .filter(|b| rule.admits(&a.label, &b.label))
                .map(|b| b.label.index)
                .collect()
        })
        .collect();
    let mut paths = vec![PathMeta {
        order: 0,
        lambda1: None,
        lambda2: None,
        output_stride: stride,
    }];
    paths.extend(bank.first_order().iter().map(|a| PathMeta {
        order: 1,
        lambda1: Some(a.label),
        lambda2: None,
        output_stride: stride,
    }));
    for (a, kids) in bank.first_order().iter().zip(&children) {
        paths.extend(kids.iter().map(|&b| PathMeta {
            order: 2,
            lambda1: Some(a.label),
            lambda2: Some(bank.second_order()[b].label),
            output_stride: stride,
        }));
    }
    (paths, children)
}
