#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scatter_core::RealGrid;

pub fn random_grid(shape: &[usize], seed: u64) -> RealGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RealGrid::from_fn(shape, |_| rng.gen_range(-1.0..1.0))
}

pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

/// Circular shift of a 1D signal: `y[n] = x[n - t]`.
pub fn shift_1d(x: &RealGrid, t: usize) -> RealGrid {
    let n = x.len();
    RealGrid::from_fn(x.shape(), |i| x.data()[(i[0] + n - t % n) % n])
}

/// `y[r, c] = x[r - a, c - b]`.
pub fn shift_2d(x: &RealGrid, a: usize, b: usize) -> RealGrid {
    let (h, w) = (x.shape()[0], x.shape()[1]);
    RealGrid::from_fn(x.shape(), |i| x.data()[((i[0] + h - a % h) % h) * w + (i[1] + w - b % w) % w])
}

/// Quarter turn about the origin of a square periodic image:
/// `y[r, c] = x[c, -r mod n]`.
pub fn rot90(x: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = x[c * n + (n - r) % n];
        }
    }
    out
}

/// The 24 signed permutation matrices with determinant one.
pub fn cube_rotations() -> Vec<[[i32; 3]; 3]> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in perms {
        for s in 0..8u32 {
            let mut m = [[0; 3]; 3];
            for (i, &pi) in p.iter().enumerate() {
                m[i][pi] = if (s >> i) & 1 == 1 { -1 } else { 1 };
            }
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if det == 1 {
                out.push(m);
            }
        }
    }
    out
}

/// `y(u) = x(R^T u)` on an `n^3` periodic lattice.
pub fn rotate_volume(x: &[f64], n: usize, m: &[[i32; 3]; 3]) -> Vec<f64> {
    let mut out = vec![0.0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let u = [a as i32, b as i32, c as i32];
                let mut v = [0usize; 3];
                for (i, vi) in v.iter_mut().enumerate() {
                    let s: i32 = (0..3).map(|k| m[k][i] * u[k]).sum();
                    *vi = s.rem_euclid(n as i32) as usize;
                }
                out[(a * n + b) * n + c] = x[(v[0] * n + v[1]) * n + v[2]];
            }
        }
    }
    out
}
