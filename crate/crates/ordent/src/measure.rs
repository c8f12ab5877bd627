//! Measurement maps on Δⁿ (Shannon entropy, μ⁻, μ⁺) and randomized
//! strict-monotonicity reporting against any order.

use rand::Rng;
use serde::Serialize;

use crate::orders::OrderSpec;
use crate::sampling::{sample_pool, seeded_rng};
use crate::simplex::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeasurementKind {
    ShannonEntropy,
    MuMinus,
    MuPlus,
}

impl MeasurementKind {
    pub fn eval(&self, x: &Distribution) -> f64 {
        match self {
            MeasurementKind::ShannonEntropy => shannon_entropy(x),
            MeasurementKind::MuMinus => mu_minus(x),
            MeasurementKind::MuPlus => mu_plus(x),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MeasurementKind::ShannonEntropy => "entropy",
            MeasurementKind::MuMinus => "muminus",
            MeasurementKind::MuPlus => "muplus",
        }
    }
}

/// μ_S(x) = -Σ x_i ln x_i, with 0·ln 0 = 0. Lies in [0, ln n].
pub fn shannon_entropy(x: &Distribution) -> f64 {
    x.values()
        .iter()
        .map(|&v| if v > 0.0 { -v * v.ln() } else { 0.0 })
        .sum()
}

/// μ⁻(x) = 2n - 3 - 2Z(x) + x⁻, normalized so μ⁻(⊤₁) = 0. Strict monotone
/// for every restricted order, discontinuous at the zero boundary.
pub fn mu_minus(x: &Distribution) -> f64 {
    let s = x.spectral_stats();
    (2 * x.n()) as f64 - 3.0 - 2.0 * s.zeros as f64 + s.min_nonzero
}

/// μ⁺(x) = 1 - max x_i, in [0, 1 - 1/n].
pub fn mu_plus(x: &Distribution) -> f64 {
    1.0 - x.spectral_stats().max
}

/// One monotonicity violation: a comparable pair on which the measure
/// increases upward, or agrees without the points being equal.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityViolation {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub measure_x: f64,
    pub measure_y: f64,
    pub kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub measure: &'static str,
    pub order: &'static str,
    pub n: usize,
    pub trials: usize,
    pub comparable_pairs: usize,
    pub violations: usize,
    pub first_violation: Option<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Equal measures within this trigger the strictness (x == y) check.
const MEASURE_EQ_TOLERANCE: f64 = 1e-12;
const POINT_EQ_TOLERANCE: f64 = 1e-9;

/// Samples pairs and checks that `kind` is a strict monotone map into
/// [0,∞)* for the order: x ⊑ y implies measure(x) ≥ measure(y), with
/// equality only at equal points.
pub fn monotonicity_report(
    kind: MeasurementKind,
    spec: &OrderSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> MonotonicityReport {
    let mut rng = seeded_rng(seed);
    let pool = sample_pool(n, samples.max(2), &mut rng);
    let mut comparable = 0;
    let mut violations = 0;
    let mut first: Option<MonotonicityViolation> = None;
    for _ in 0..samples {
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let leq = match spec.leq(x, y) {
            Ok(b) => b,
            Err(_) => continue,
        };
        if !leq {
            continue;
        }
        comparable += 1;
        let mx = kind.eval(x);
        let my = kind.eval(y);
        let failure = if mx < my - MEASURE_EQ_TOLERANCE {
            Some("measure increased upward")
        } else if (mx - my).abs() <= MEASURE_EQ_TOLERANCE && !x.approx_eq(y, POINT_EQ_TOLERANCE) {
            Some("equal measure on distinct points")
        } else {
            None
        };
        if let Some(kind_str) = failure {
            violations += 1;
            if first.is_none() {
                first = Some(MonotonicityViolation {
                    x: x.values().to_vec(),
                    y: y.values().to_vec(),
                    measure_x: mx,
                    measure_y: my,
                    kind: kind_str,
                });
            }
        }
    }
    MonotonicityReport {
        measure: kind.name(),
        order: spec.name(),
        n,
        trials: samples,
        comparable_pairs: comparable,
        violations,
        first_violation: first,
    }
}
