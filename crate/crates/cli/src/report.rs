//! Path tables, CSV rows and the JSON sidecar.

use serde::Serialize;
use scatter_core::{FilterIndex, PathMeta, Plan, ScatteringOutput};

#[derive(Debug, Serialize)]
pub struct Parameters {
    pub dim: usize,
    #[serde(rename = "J")]
    pub j: u32,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(rename = "Lmax", skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u32>,
    pub oversampling: u32,
}

#[derive(Debug, Serialize)]
struct Lambda {
    index: usize,
    j: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<u32>,
}

impl From<FilterIndex> for Lambda {
    fn from(f: FilterIndex) -> Self {
        Self {
            index: f.index,
            j: f.j,
            theta: f.theta,
            ell: f.ell,
        }
    }
}

#[derive(Debug, Serialize)]
struct PathEntry {
    index: usize,
    order: u8,
    lambda1: Option<Lambda>,
    lambda2: Option<Lambda>,
    output_stride: usize,
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    parameters: &'a Parameters,
    input_shape: &'a [usize],
    output_shape: Vec<usize>,
    path_count: usize,
    peak_live_intermediates: usize,
    paths: Vec<PathEntry>,
}

/// Pretty-printed JSON. Worker counts are left out so the file does not
/// depend on `--threads`.
pub fn sidecar(params: &Parameters, plan: &Plan, out: &ScatteringOutput) -> String {
    let doc = Sidecar {
        parameters: params,
        input_shape: plan.shape(),
        output_shape: out.coefficients.shape().to_vec(),
        path_count: out.path_count(),
        peak_live_intermediates: out.stats.peak_live_intermediates,
        paths: out
            .meta
            .iter()
            .enumerate()
            .map(|(index, m)| PathEntry {
                index,
                order: m.order,
                lambda1: m.lambda1.map(Lambda::from),
                lambda2: m.lambda2.map(Lambda::from),
                output_stride: m.output_stride,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("sidecar serializes");
    s.push('\n');
    s
}

/// `index` or `index:j<j>[,t<theta>][,l<ell>]`, empty when absent.
pub fn lambda_label(f: Option<FilterIndex>, long: bool) -> String {
    match f {
        None => String::new(),
        Some(f) if !long => f.index.to_string(),
        Some(f) => {
            let mut s = format!("{}:j{}", f.index, f.j);
            if let Some(t) = f.theta {
                s.push_str(&format!(",t{t}"));
            }
            if let Some(l) = f.ell {
                s.push_str(&format!(",l{l}"));
            }
            s
        }
    }
}

/// One CSV line per path after a header; spatial dims flattened row-major.
pub fn csv_lines(out: &ScatteringOutput) -> Vec<String> {
    let width = out.coefficients.len() / out.path_count().max(1);
    let mut header = String::from("path,order,lambda1,lambda2");
    for k in 0..width {
        header.push_str(&format!(",c{k}"));
    }
    let mut lines = vec![header];
    for (p, m) in out.meta.iter().enumerate() {
        let mut line = format!(
            "{p},{},{},{}",
            m.order,
            lambda_label(m.lambda1, false),
            lambda_label(m.lambda2, false)
        );
        for v in out.row(p) {
            line.push_str(&format!(",{v:e}"));
        }
        lines.push(line);
    }
    lines
}

pub fn path_table(plan: &Plan) -> Vec<String> {
    let shape = plan
        .output_shape()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("x");
    let mut lines = vec!["index\torder\tlambda1\tlambda2\toutput_shape".to_string()];
    lines.extend(plan.paths().iter().enumerate().map(|(i, m): (usize, &PathMeta)| {
        format!(
            "{i}\t{}\t{}\t{}\t{shape}",
            m.order,
            or_dash(lambda_label(m.lambda1, true)),
            or_dash(lambda_label(m.lambda2, true)),
        )
    }));
    lines
}

fn or_dash(s: String) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}
