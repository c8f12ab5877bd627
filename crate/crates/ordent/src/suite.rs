//! Randomized axiom suite for order relations on Δⁿ: the information-order
//! axioms, sampled relation laws, and the degeneracy condition.

use rand::Rng;
use serde::Serialize;

use crate::orders::OrderSpec;
use crate::sampling::{sample_permutation, sample_pool, seeded_rng};
use crate::simplex::{Distribution, ZERO_THRESHOLD};

const POINT_EQ_TOLERANCE: f64 = 1e-9;
const TIE_TOLERANCE: f64 = 1e-12;

/// Result of one axiom over the sampled data.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<Vec<Vec<f64>>>,
}

impl AxiomResult {
    fn new(axiom: &str) -> Self {
        Self {
            axiom: axiom.to_string(),
            trials: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<Vec<f64>>) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub order: &'static str,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub axioms: Vec<AxiomResult>,
}

impl PropertyReport {
    pub fn axiom(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == name)
    }

    /// All axioms except the named ones passed.
    pub fn passed_except(&self, allowed_failures: &[&str]) -> bool {
        self.axioms
            .iter()
            .all(|a| a.passed() || allowed_failures.contains(&a.axiom.as_str()))
    }

    pub fn all_passed(&self) -> bool {
        self.passed_except(&[])
    }
}

fn witness(points: &[&Distribution]) -> Vec<Vec<f64>> {
    points.iter().map(|d| d.values().to_vec()).collect()
}

/// Runs the axiom suite on seeded samples of Δⁿ plus deterministic
/// boundary cases. Errors from the relation count as failures.
pub fn order_property_suite(
    spec: &OrderSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let pool = sample_pool(n, samples.max(4), &mut rng);
    let leq = |a: &Distribution, b: &Distribution| spec.leq(a, b).unwrap_or(false);

    let mut reflexivity = AxiomResult::new("reflexivity");
    let mut antisymmetry = AxiomResult::new("antisymmetry");
    let mut transitivity = AxiomResult::new("transitivity");
    let mut permutation = AxiomResult::new("permutation_invariance");
    let mut mixing = AxiomResult::new("mixing");
    let mut bottom_least = AxiomResult::new("bottom_least");
    let mut tops_maximal = AxiomResult::new("tops_maximal");
    let mut top_reachable = AxiomResult::new("top_reachable");
    let mut degeneracy = AxiomResult::new("degeneracy");

    let bottom = Distribution::bottom(n);
    let tops: Vec<Distribution> = (1..=n)
        .map(|i| Distribution::top(n, i).expect("in range"))
        .collect();

    for x in &pool {
        reflexivity.record(leq(x, x), || witness(&[x]));
        bottom_least.record(leq(&bottom, x), || witness(&[x]));
        top_reachable.record(tops.iter().any(|t| leq(x, t)), || witness(&[x]));
        for t in &tops {
            if leq(t, x) {
                tops_maximal.record(x.approx_eq(t, POINT_EQ_TOLERANCE), || witness(&[t, x]));
            }
        }
    }

    for _ in 0..samples {
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let z = &pool[rng.gen_range(0..pool.len())];

        let xy = leq(x, y);

        if xy && leq(y, x) {
            antisymmetry.record(x.approx_eq(y, POINT_EQ_TOLERANCE), || witness(&[x, y]));
        }
        if xy && leq(y, z) {
            transitivity.record(leq(x, z), || witness(&[x, y, z]));
        }

        let sigma = sample_permutation(n, &mut rng);
        let sx = x.permute(&sigma).expect("same n");
        let sy = y.permute(&sigma).expect("same n");
        permutation.record(xy == leq(&sx, &sy), || witness(&[x, y, &sx, &sy]));

        if xy {
            let mut ok = true;
            for k in 1..10 {
                let t = k as f64 / 10.0;
                let m = x.mix(y, t).expect("same n");
                if !leq(x, &m) || !leq(&m, y) {
                    ok = false;
                    break;
                }
            }
            mixing.record(ok, || witness(&[x, y]));

            // Degeneracy condition: a tie above forces the tie below.
            let yv = y.values();
            let xv = x.values();
            let mut ok = true;
            'outer: for i in 0..n {
                for j in i + 1..n {
                    if (yv[i] - yv[j]).abs() <= TIE_TOLERANCE && yv[i] > ZERO_THRESHOLD {
                        let tied = (xv[i] - xv[j]).abs() <= POINT_EQ_TOLERANCE
                            && xv[i] > ZERO_THRESHOLD;
                        if !tied {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            degeneracy.record(ok, || witness(&[x, y]));
        }
    }

    PropertyReport {
        order: spec.name(),
        n,
        samples,
        seed,
        axioms: vec![
            reflexivity,
            antisymmetry,
            transitivity,
            permutation,
            mixing,
            bottom_least,
            tops_maximal,
            top_reachable,
            degeneracy,
        ],
    }
}
