use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use p5_algebra::par::Exec;
use serde::Serialize;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

pub const MIN_NODES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FredholmValue {
    pub value: f64,
    /// |det with m nodes − det with 2m nodes|
    pub error_estimate: f64,
    pub nodes: usize,
}

fn sine_kernel(x: f64, y: f64) -> f64 {
    let d = PI * (x - y);
    if d == 0.0 {
        1.0
    } else {
        d.sin() / d
    }
}

/// det(I − W^{1/2} K W^{1/2}) on [0, s] with `m` Gauss–Legendre nodes.
pub fn fredholm_sine_with(s: f64, m: usize, exec: Exec) -> f64 {
    if s <= 0.0 {
        return 1.0;
    }
    let m = m.max(MIN_NODES);
    let rule = GaussLegendre::new(NonZeroUsize::new(m).expect("m ≥ 8"));
    let (x, sw): (Vec<f64>, Vec<f64>) =
        rule.as_node_weight_pairs().iter().map(|&(t, w)| (0.5 * s * (t + 1.0), (0.5 * s * w).sqrt())).unzip();
    let rows = exec.map((0..m).collect(), |i| {
        (0..m)
            .map(|j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                delta - sw[i] * sine_kernel(x[i], x[j]) * sw[j]
            })
            .collect::<Vec<f64>>()
    });
    DMatrix::from_row_iterator(m, m, rows.into_iter().flatten()).lu().determinant()
}

pub fn fredholm_sine(s: f64, m: usize) -> f64 {
    fredholm_sine_with(s, m, Exec::default())
}

/// Value with m nodes and the node-doubling error estimate.
pub fn fredholm_sine_estimate(s: f64, m: usize, exec: Exec) -> FredholmValue {
    let m = m.max(MIN_NODES);
    let value = fredholm_sine_with(s, m, exec);
    let fine = fredholm_sine_with(s, 2 * m, exec);
    FredholmValue { value, error_estimate: (value - fine).abs(), nodes: m }
}
