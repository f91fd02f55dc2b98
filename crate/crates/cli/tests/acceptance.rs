//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scatter_core::filterbank::littlewood_paley;
use scatter_core::oracle::reference_scatter;
use scatter_core::{path_count_2d, plan_1d, plan_2d, plan_3d, FilterIndex, PathMeta, Plan, RealGrid};

use common::{chirp, code, parse_npy, stderr, wav_bytes, wst};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_grid(shape: &[usize], seed: u64) -> RealGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RealGrid::from_fn(shape, |_| rng.gen_range(-1.0..1.0))
}

fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

fn oracle_error(plan: &Plan, seed: u64) -> f64 {
    let x = random_grid(plan.shape(), seed);
    let fast = plan.scatter(&x).unwrap();
    let slow = reference_scatter(plan.bank(), &x, plan.rule()).unwrap();
    assert_eq!(fast.meta, slow.meta);
    rel_l2(fast.coefficients.data(), slow.coefficients.data())
}

/// Worst error over `seeds` at oversampling 0, plus the same figure with
/// intermediates kept at full resolution.
fn oracle_criterion(
    make: impl Fn(u32) -> Plan,
    full: u32,
    seeds: u64,
    budget_s: f64,
) -> Outcome {
    let t = Instant::now();
    let plan = make(0);
    let worst = (0..seeds).map(|s| oracle_error(&plan, s)).fold(0.0, f64::max);
    let secs = t.elapsed().as_secs_f64();
    let plan = make(full);
    let worst_full = (0..seeds).map(|s| oracle_error(&plan, s)).fold(0.0, f64::max);
    outcome(
        worst <= 1e-6 && secs <= budget_s,
        format!(
            "max rel err {worst:.3e} at oversampling 0 ({secs:.2}s, budget {budget_s}s); \
             {worst_full:.3e} at oversampling {full}"
        ),
    )
}

fn c1() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_full = 0.0f64;
    for q in [1, 2] {
        let plan = plan_1d(64, 3, q, 0).unwrap();
        worst = (0..20).map(|s| oracle_error(&plan, s)).fold(worst, f64::max);
    }
    let secs = t.elapsed().as_secs_f64();
    for q in [1, 2] {
        let plan = plan_1d(64, 3, q, 2).unwrap();
        worst_full = (0..20).map(|s| oracle_error(&plan, s)).fold(worst_full, f64::max);
    }
    outcome(
        worst <= 1e-6 && secs <= 1.0,
        format!(
            "max rel err {worst:.3e} at oversampling 0 ({secs:.2}s, budget 1s); \
             {worst_full:.3e} at oversampling 2"
        ),
    )
}

fn c2() -> Outcome {
    oracle_criterion(|os| plan_2d(&[32, 32], 2, 4, os).unwrap(), 1, 10, 5.0)
}

fn c3() -> Outcome {
    oracle_criterion(|os| plan_3d(&[16, 16, 16], 2, 1, os).unwrap(), 1, 5, 30.0)
}

fn constant_errors(plan: &Plan) -> (f64, f64) {
    let x = RealGrid::from_fn(plan.shape(), |_| 1.0);
    let s = plan.scatter(&x).unwrap();
    let mut order0 = 0.0f64;
    let mut higher = 0.0f64;
    for (p, m) in s.meta.iter().enumerate() {
        for &v in s.row(p) {
            if m.order == 0 {
                order0 = order0.max((v - 1.0).abs());
            } else {
                higher = higher.max(v.abs());
            }
        }
    }
    (order0, higher)
}

fn c4() -> Outcome {
    let plans = [
        ("1d", plan_1d(1024, 6, 8, 0).unwrap()),
        ("2d", plan_2d(&[32, 32], 2, 8, 0).unwrap()),
        ("3d", plan_3d(&[16, 16, 16], 2, 2, 0).unwrap()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, plan) in &plans {
        let (e0, e1) = constant_errors(plan);
        pass &= e0 <= 1e-10 && e1 <= 1e-10;
        parts.push(format!("{name}: |S0-1| {e0:.1e}, max |S1,S2| {e1:.1e}"));
    }
    // Degree-zero solid harmonics are Gaussians with nonzero mean; without
    // them the remaining 3D channels are exactly zero-mean.
    let plan = &plans[2].1;
    let x = RealGrid::from_fn(plan.shape(), |_| 1.0);
    let s = plan.scatter(&x).unwrap();
    let no_ell0 = s
        .meta
        .iter()
        .enumerate()
        .filter(|(_, m)| m.order > 0 && m.lambda1.and_then(|l| l.ell) != Some(0))
        .flat_map(|(p, _)| s.row(p).iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    parts.push(format!("3d excluding l=0: {no_ell0:.1e}"));
    outcome(pass, parts.join("; "))
}

fn c5() -> Outcome {
    let b1 = littlewood_paley(plan_1d(8192, 6, 8, 0).unwrap().bank());
    let b2 = littlewood_paley(plan_2d(&[32, 32], 2, 8, 0).unwrap().bank());
    let b3 = littlewood_paley(plan_3d(&[32, 32, 32], 2, 2, 0).unwrap().bank());
    outcome(
        b1.b <= 1.01 && b2.b <= 1.01 && b3.b <= 1.01 && b1.a >= 0.25,
        format!(
            "1d A={:.4} B={:.6}; 2d A={:.4} B={:.6}; 3d A={:.4} B={:.6}",
            b1.a, b1.b, b2.a, b2.b, b3.a, b3.b
        ),
    )
}

/// `||S||` with every coefficient weighted by its stride volume `2^(J d)`.
fn compensated_norm(plan: &Plan, v: &[f64]) -> f64 {
    let d = plan.shape().len() as i32;
    let w = f64::from(1u32 << plan.bank().scale()).powi(d);
    (v.iter().map(|c| c * c).sum::<f64>() * w).sqrt()
}

fn c6() -> Outcome {
    let plans = [
        ("1d", plan_1d(1024, 6, 8, 0).unwrap()),
        ("2d", plan_2d(&[32, 32], 2, 8, 0).unwrap()),
        ("3d", plan_3d(&[16, 16, 16], 2, 2, 0).unwrap()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, (name, plan)) in plans.iter().enumerate() {
        let mut worst = 0.0f64;
        for pair in 0..100u64 {
            let seed = 1000 * k as u64 + 2 * pair;
            let x = random_grid(plan.shape(), seed);
            // Alternate between unrelated pairs and small perturbations.
            let y = if pair % 2 == 0 {
                random_grid(plan.shape(), seed + 1)
            } else {
                let e = random_grid(plan.shape(), seed + 1);
                RealGrid::from_fn(plan.shape(), |i| {
                    let o = x.offset(i);
                    x.data()[o] + 1e-3 * e.data()[o]
                })
            };
            let sx = plan.scatter(&x).unwrap();
            let sy = plan.scatter(&y).unwrap();
            let diff: Vec<f64> = sx
                .coefficients
                .data()
                .iter()
                .zip(sy.coefficients.data())
                .map(|(a, b)| a - b)
                .collect();
            let dx = distance(x.data(), y.data());
            worst = worst.max(compensated_norm(plan, &diff) / dx);
        }
        pass &= worst <= 1.01;
        parts.push(format!("{name}: max ratio {worst:.4}"));
    }
    outcome(pass, parts.join("; "))
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn shift_1d(x: &RealGrid, t: usize) -> RealGrid {
    let n = x.len();
    RealGrid::from_fn(x.shape(), |i| x.data()[(i[0] + n - t % n) % n])
}

fn shift_2d(x: &RealGrid, a: usize, b: usize) -> RealGrid {
    let (h, w) = (x.shape()[0], x.shape()[1]);
    RealGrid::from_fn(x.shape(), |i| x.data()[((i[0] + h - a) % h) * w + (i[1] + w - b) % w])
}

fn shift_error(plan: &Plan, x: &RealGrid, y: &RealGrid) -> f64 {
    let a = plan.scatter(x).unwrap();
    let b = plan.scatter(y).unwrap();
    rel_l2(b.coefficients.data(), a.coefficients.data())
}

fn invariance_trend(x: &RealGrid, y: &RealGrid, q: u32, oversampling: u32) -> (bool, Vec<f64>) {
    let errs: Vec<f64> = (3..=12)
        .map(|j| shift_error(&plan_1d(4096, j, q, oversampling).unwrap(), x, y))
        .collect();
    let monotone = errs.windows(2).all(|w| w[1] <= 1.05 * w[0]);
    (monotone, errs)
}

fn c7() -> Outcome {
    let x = random_grid(&[4096], 7);
    let y = shift_1d(&x, 8);
    let (monotone, errs) = invariance_trend(&x, &y, 8, 0);
    let (monotone_os, errs_os) = invariance_trend(&x, &y, 8, 12);
    let fmt = |e: &[f64]| e.iter().map(|v| format!("{v:.1e}")).collect::<Vec<_>>().join(" ");
    outcome(
        monotone && errs[9] <= 1e-10,
        format!(
            "oversampling 0: [{}] monotone={monotone}; oversampling 12: [{}] monotone={monotone_os}",
            fmt(&errs),
            fmt(&errs_os)
        ),
    )
}

fn c8() -> Outcome {
    let x1 = random_grid(&[64], 3);
    let x2 = random_grid(&[32, 32], 4);
    let worst = |os1: u32, os2: u32| {
        let p1 = plan_1d(64, 6, 8, os1).unwrap();
        let p2 = plan_2d(&[32, 32], 5, 8, os2).unwrap();
        let e1 = [1, 5, 32, 63]
            .iter()
            .map(|&t| shift_error(&p1, &x1, &shift_1d(&x1, t)))
            .fold(0.0, f64::max);
        let e2 = [(1, 0), (3, 17), (16, 16)]
            .iter()
            .map(|&(a, b)| shift_error(&p2, &x2, &shift_2d(&x2, a, b)))
            .fold(0.0, f64::max);
        (e1, e2)
    };
    let (e1, e2) = worst(0, 0);
    let (f1, f2) = worst(6, 5);
    outcome(
        e1 <= 1e-10 && e2 <= 1e-10,
        format!(
            "oversampling 0: 1d {e1:.2e}, 2d {e2:.2e}; oversampling J: 1d {f1:.2e}, 2d {f2:.2e}"
        ),
    )
}

fn rot90(x: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = x[c * n + (n - r) % n];
        }
    }
    out
}

fn turn(l: FilterIndex, orientations: u32) -> FilterIndex {
    let t = l.theta.unwrap();
    let t2 = (t + orientations / 2) % orientations;
    FilterIndex {
        index: l.index - t as usize + t2 as usize,
        theta: Some(t2),
        ..l
    }
}

fn cube_rotations() -> Vec<[[i32; 3]; 3]> {
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
fn rotate_volume(x: &[f64], n: usize, m: &[[i32; 3]; 3]) -> Vec<f64> {
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

fn c9() -> Outcome {
    let n = 32;
    let plan = plan_2d(&[n, n], 2, 8, 0).unwrap();
    let x = random_grid(&[n, n], 8);
    let xr = RealGrid::new(vec![n, n], rot90(x.data(), n)).unwrap();
    let a = plan.scatter(&x).unwrap();
    let b = plan.scatter(&xr).unwrap();
    let mut expected = Vec::with_capacity(b.coefficients.len());
    for meta in plan.paths() {
        let source = PathMeta {
            lambda1: meta.lambda1.map(|l| turn(l, 8)),
            lambda2: meta.lambda2.map(|l| turn(l, 8)),
            ..*meta
        };
        let src = plan.paths().iter().position(|p| *p == source).unwrap();
        expected.extend(rot90(a.row(src), n / 4));
    }
    let e2 = rel_l2(b.coefficients.data(), &expected);

    let m = 16;
    let plan = plan_3d(&[m, m, m], 2, 2, 0).unwrap();
    let x = random_grid(&[m, m, m], 9);
    let a = plan.scatter(&x).unwrap();
    let mut e3 = 0.0f64;
    for r in &cube_rotations() {
        let xr = RealGrid::new(vec![m, m, m], rotate_volume(x.data(), m, r)).unwrap();
        let b = plan.scatter(&xr).unwrap();
        let expected: Vec<f64> = (0..plan.paths().len())
            .flat_map(|k| rotate_volume(a.row(k), m / 4, r))
            .collect();
        e3 = e3.max(rel_l2(b.coefficients.data(), &expected));
    }
    outcome(
        e2 <= 1e-8 && e3 <= 1e-8,
        format!("2d quarter turn {e2:.2e}; 3d worst of 24 rotations {e3:.2e}"),
    )
}

fn c10() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let fast_peak = |plan: &Plan, seed| {
        let x = random_grid(plan.shape(), seed);
        plan.scatter_sequential(&x).unwrap().stats.peak_live_intermediates
    };
    let oracle_peak = |plan: &Plan, seed| {
        let x = random_grid(plan.shape(), seed);
        reference_scatter(plan.bank(), &x, plan.rule())
            .unwrap()
            .stats
            .peak_live_intermediates
    };
    let mut check = |name: &str, plan: Plan, with_oracle: bool| {
        let fast = fast_peak(&plan, 1);
        let lambda1 = plan.bank().first_order().len();
        let mut line = format!("{name}: depth-first {fast}");
        pass &= fast <= 3;
        if with_oracle {
            let slow = oracle_peak(&plan, 1);
            pass &= slow >= lambda1;
            line.push_str(&format!(", breadth-first {slow} (|L1|={lambda1})"));
        }
        parts.push(line);
    };
    check("1d N=512 J=8 Q=8", plan_1d(512, 8, 8, 0).unwrap(), true);
    check("2d 256x256 J=8 L=8", plan_2d(&[256, 256], 8, 8, 0).unwrap(), false);
    check("2d 32x32 J=5 L=8", plan_2d(&[32, 32], 5, 8, 0).unwrap(), true);
    check("3d 16^3 J=2 Lmax=2", plan_3d(&[16, 16, 16], 2, 2, 0).unwrap(), true);
    outcome(pass, parts.join("; "))
}

fn c11() -> Outcome {
    // Independent enumeration of the pairing rule.
    let count_1d = |j: u32, q: u32| {
        let order2: usize = (0..j * q)
            .map(|q1| (0..j).filter(|&j2| j2 > q1 / q).count())
            .sum();
        1 + (j * q) as usize + order2
    };
    let count_2d = |j: u32, l: u32| {
        let mut p = 1 + (j * l) as usize;
        for j1 in 0..j {
            for _t1 in 0..l {
                for j2 in 0..j {
                    for _t2 in 0..l {
                        p += usize::from(j2 > j1);
                    }
                }
            }
        }
        p
    };
    let count_3d = |j: u32, l_max: u32| {
        let mut p = 1 + ((l_max + 1) * j) as usize;
        for _ell in 0..=l_max {
            for j1 in 0..j {
                p += (0..j).filter(|&j2| j2 > j1).count();
            }
        }
        p
    };
    let planned = [
        plan_1d(1024, 6, 8, 0).unwrap().paths().len(),
        plan_2d(&[32, 32], 2, 8, 0).unwrap().paths().len(),
        plan_3d(&[16, 16, 16], 2, 2, 0).unwrap().paths().len(),
    ];
    let independent = [count_1d(6, 8), count_2d(2, 8), count_3d(2, 2)];
    let expected = [217, 81, 10];
    let pass = planned == expected && independent == expected && path_count_2d(2, 8) == 81;
    outcome(
        pass,
        format!(
            "planner {planned:?}, independent {independent:?}, expected {expected:?}; \
             j2>j1 over 6 octaves gives 8*(5+4+3+2+1+0)=120 order-2 paths in 1D"
        ),
    )
}

fn c12() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("tone.wav");
    fs::write(&wav, wav_bytes(1, &chirp(4096))).unwrap();
    let mut runs = Vec::new();
    for threads in ["1", "8"] {
        let npy = dir.path().join(format!("s{threads}.npy"));
        let out = wst(&[
            "scatter", "--dim", "1", "--J", "6", "--Q", "8", "--threads", threads, "--input",
            wav.to_str().unwrap(), "--output", npy.to_str().unwrap(),
        ]);
        if code(&out) != 0 {
            return outcome(false, format!("exit {}: {}", code(&out), stderr(&out)));
        }
        let bytes = fs::read(&npy).unwrap();
        let meta = fs::read(npy.with_extension("json")).unwrap();
        runs.push((bytes, meta));
    }
    let npy = parse_npy(&runs[0].0);
    let header_ok = npy.descr == "<f8" && !npy.fortran_order;
    let payload_ok = npy.payload.len() == npy.shape.iter().product::<usize>() * 8;
    let meta: serde_json::Value = serde_json::from_slice(&runs[0].1).unwrap();
    let sidecar_ok = meta["path_count"].as_u64() == Some(npy.shape[0] as u64)
        && meta["paths"].as_array().map(Vec::len) == Some(npy.shape[0]);
    let identical = runs[0] == runs[1];
    outcome(
        npy.shape == [217, 64] && header_ok && payload_ok && sidecar_ok && identical,
        format!(
            "shape {:?} (expected [217, 64]), header ok={header_ok}, payload ok={payload_ok}, \
             sidecar ok={sidecar_ok}, threads 1 vs 8 byte-identical={identical}",
            npy.shape
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("oracle equivalence 1D", c1),
        ("oracle equivalence 2D", c2),
        ("oracle equivalence 3D", c3),
        ("constant input", c4),
        ("frame bounds", c5),
        ("nonexpansiveness", c6),
        ("translation invariance trend", c7),
        ("full-averaging shift invariance", c8),
        ("rotation equivariance", c9),
        ("depth-first memory", c10),
        ("path counts", c11),
        ("CLI end-to-end", c12),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {} {name} [{:.1}s]: {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
