//! Operational probes of the domain-theoretic claims: joins of increasing
//! chains and way-below witnesses.
//!
//! The probes are falsifiers, not verifiers: the approximation relation ≪
//! quantifies over all directed sets, so a finite seeded family can only
//! report "no counterexample found". The chain recipe is fixed for
//! reproducibility: geometric mixing parameters t_i = 1 - 2⁻ⁱ, length 40.

use rand::Rng;
use serde::Serialize;

use crate::density::{random_density, DensityOperator};
use crate::density_orders::{leq_minus_density, leq_plus_density};
use crate::error::{Error, Result};
use crate::orders::OrderSpec;
use crate::sampling::{sample_permutation, sample_simplex, seeded_rng};
use crate::simplex::{snap_clusters, Distribution};

/// Number of elements per generated chain.
pub const CHAIN_LENGTH: usize = 40;

/// The geometric mixing schedule t_i = 1 - 2⁻ⁱ, i = 1..=len. Each 1 - t_i
/// is an exact power of two, so scaling by it is exact in floating point.
pub fn chain_schedule(len: usize) -> Vec<f64> {
    (1..=len as i32).map(|i| 1.0 - (2.0_f64).powi(-i)).collect()
}

/// Residual over the last quarter must fall below this for a chain to
/// count as numerically convergent.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-7;

/// Outcome of joining an increasing chain.
#[derive(Debug, Clone, Serialize)]
pub enum JoinOutcome<T> {
    Join(T),
    NoJoinEvidence { violating_index: usize },
}

impl<T> JoinOutcome<T> {
    pub fn join(&self) -> Option<&T> {
        match self {
            JoinOutcome::Join(t) => Some(t),
            JoinOutcome::NoJoinEvidence { .. } => None,
        }
    }
}

/// Verifies the chain is increasing and numerically convergent, then
/// checks whether its numeric limit is an upper bound of every element.
///
/// `refine_limit` maps the last element to the limit point, snapping
/// almost-ties and almost-zeros; the order-theoretic content of a limit
/// often lives exactly in those degeneracies.
pub fn chain_join<T: Clone>(
    chain: &[T],
    mut leq: impl FnMut(&T, &T) -> Result<bool>,
    mut distance: impl FnMut(&T, &T) -> f64,
    refine_limit: impl FnOnce(&T) -> T,
) -> Result<JoinOutcome<T>> {
    if chain.is_empty() {
        return Err(Error::PreconditionFailed {
            reason: "empty chain".into(),
        });
    }
    for i in 0..chain.len() - 1 {
        if !leq(&chain[i], &chain[i + 1])? {
            return Err(Error::NotIncreasing { index: i });
        }
    }
    let last = chain.len() - 1;
    let quarter_start = chain.len() - chain.len().div_ceil(4);
    let residual = (quarter_start..last)
        .map(|i| distance(&chain[i], &chain[last]))
        .fold(0.0, f64::max);
    if residual > CONVERGENCE_TOLERANCE {
        return Err(Error::NotConvergent { residual });
    }
    let limit = refine_limit(&chain[last]);
    for (i, c) in chain.iter().enumerate() {
        if !leq(c, &limit)? {
            return Ok(JoinOutcome::NoJoinEvidence { violating_index: i });
        }
    }
    Ok(JoinOutcome::Join(limit))
}

/// Limit refinement on Δⁿ: kill sub-residual entries, snap near-ties,
/// renormalize.
pub fn snap_distribution_limit(d: &Distribution) -> Distribution {
    let cleaned: Vec<f64> = d
        .values()
        .iter()
        .map(|&v| if v <= CONVERGENCE_TOLERANCE { 0.0 } else { v })
        .collect();
    let snapped = snap_clusters(&cleaned, CONVERGENCE_TOLERANCE);
    Distribution::new(&snapped, d.n()).expect("snapped limit stays a distribution")
}

/// Joins a chain of distributions under the given order.
pub fn chain_join_distributions(
    spec: &OrderSpec,
    chain: &[Distribution],
) -> Result<JoinOutcome<Distribution>> {
    chain_join(
        chain,
        |a, b| spec.leq(a, b),
        |a, b| a.distance(b),
        snap_distribution_limit,
    )
}

/// Density orders the probes understand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityProbeOrder {
    Plus,
    Minus,
}

impl DensityProbeOrder {
    pub fn leq(&self, a: &DensityOperator, b: &DensityOperator) -> Result<bool> {
        match self {
            DensityProbeOrder::Plus => leq_plus_density(a, b),
            DensityProbeOrder::Minus => leq_minus_density(a, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DensityProbeOrder::Plus => "dplus",
            DensityProbeOrder::Minus => "dminus",
        }
    }
}

/// Limit refinement on DO(n): snap the spectrum, keep the eigenbasis.
pub fn snap_density_limit(rho: &DensityOperator) -> DensityOperator {
    let eig = rho.eigensystem();
    let cleaned: Vec<f64> = eig
        .values
        .iter()
        .map(|&v| if v <= CONVERGENCE_TOLERANCE { 0.0 } else { v })
        .collect();
    let snapped = snap_clusters(&cleaned, CONVERGENCE_TOLERANCE);
    let sum: f64 = snapped.iter().sum();
    let n = rho.n();
    let lam = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            num_complex::Complex64::new(snapped[i] / sum, 0.0)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    DensityOperator::from_valid(&eig.vectors * lam * eig.vectors.adjoint())
}

pub fn chain_join_densities(
    order: DensityProbeOrder,
    chain: &[DensityOperator],
) -> Result<JoinOutcome<DensityOperator>> {
    chain_join(
        chain,
        |a, b| order.leq(a, b),
        |a, b| a.distance(b),
        snap_density_limit,
    )
}

/// Probe outcome, serialized as {claim, chains_tried, counterexample}.
#[derive(Debug, Clone, Serialize)]
pub struct WayBelowReport<T> {
    pub claim: String,
    pub chains_tried: usize,
    pub counterexample: Option<Vec<T>>,
}

impl<T> WayBelowReport<T> {
    pub fn found_counterexample(&self) -> bool {
        self.counterexample.is_some()
    }
}

/// Searches for an increasing chain whose join dominates y while no
/// element dominates x: a witness against x ≪ y.
///
/// Chains mix a random start toward a random upper bound of y. With
/// `cross_sector` set, starts also range over permuted (sector-crossed)
/// points, the adversarial family that defeats approximation away from
/// the monotone sector.
pub fn way_below_probe_simplex(
    spec: &OrderSpec,
    x: &Distribution,
    y: &Distribution,
    sequence_budget: usize,
    seed: u64,
    cross_sector: bool,
) -> Result<WayBelowReport<Distribution>> {
    if !spec.leq(x, y)? {
        return Err(Error::PreconditionFailed {
            reason: "x must lie below y".into(),
        });
    }
    let n = x.n();
    let mut rng = seeded_rng(seed);
    let schedule = chain_schedule(CHAIN_LENGTH);
    let bottom = Distribution::bottom(n);

    for tried in 0..sequence_budget {
        // An upper bound of y: y itself, a mix toward the aligned pure
        // state, or that pure state.
        let aligned = top_aligned(y);
        let candidates = [
            y.clone(),
            y.mix(&aligned, rng.gen_range(0.05..0.95))?,
            aligned,
        ];
        let pick = rng.gen_range(0..candidates.len());
        let upper = if spec.leq(y, &candidates[pick])? {
            candidates[pick].clone()
        } else {
            y.clone()
        };

        // A start below the upper bound; ⊥ₙ always qualifies.
        let mut start = bottom.clone();
        for _ in 0..8 {
            let w = sample_simplex(n, &mut rng);
            let base = bottom.mix(&w, rng.gen_range(0.0..1.0))?;
            let candidate = if cross_sector && rng.gen::<bool>() {
                let sigma = sample_permutation(n, &mut rng);
                base.permute(&sigma)?
            } else {
                base.retract().0.as_distribution().clone()
            };
            if spec.leq(&candidate, &upper)? {
                start = candidate;
                break;
            }
        }

        let chain: Vec<Distribution> = schedule
            .iter()
            .map(|&t| start.mix(&upper, t))
            .collect::<Result<_>>()?;
        let mut hit = false;
        for c in &chain {
            if spec.leq(x, c)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(WayBelowReport {
                claim: claim_string(spec.name(), x, y),
                chains_tried: tried + 1,
                counterexample: Some(chain),
            });
        }
    }
    Ok(WayBelowReport {
        claim: claim_string(spec.name(), x, y),
        chains_tried: sequence_budget,
        counterexample: None,
    })
}

fn claim_string(order: &str, x: &Distribution, y: &Distribution) -> String {
    format!("way_below({order}, x={:?}, y={:?})", x.values(), y.values())
}

/// The pure state at the position of the largest entry.
fn top_aligned(y: &Distribution) -> Distribution {
    let argmax = y
        .values()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    Distribution::top(y.n(), argmax + 1).expect("argmax in range")
}

/// Density-side probe; starts include basis-rotated operators, the
/// adversarial family that breaks approximation for the orders lifted
/// from Δⁿ by simultaneous diagonalization.
pub fn way_below_probe_density(
    order: DensityProbeOrder,
    x: &DensityOperator,
    y: &DensityOperator,
    sequence_budget: usize,
    seed: u64,
) -> Result<WayBelowReport<Vec<Vec<(f64, f64)>>>> {
    if !order.leq(x, y)? {
        return Err(Error::PreconditionFailed {
            reason: "x must lie below y".into(),
        });
    }
    let n = x.n();
    let mut rng = seeded_rng(seed);
    let schedule = chain_schedule(CHAIN_LENGTH);
    let bottom = DensityOperator::bottom(n);

    for tried in 0..sequence_budget {
        let top = top_projector_of(y);
        let candidates = [
            y.clone(),
            y.mix(&top, rng.gen_range(0.05..0.95))?,
            top,
        ];
        let pick = rng.gen_range(0..candidates.len());
        let upper = if order.leq(y, &candidates[pick])? {
            candidates[pick].clone()
        } else {
            y.clone()
        };

        let mut start = bottom.clone();
        for _ in 0..8 {
            let candidate = random_density(n, &mut rng);
            let candidate = bottom.mix(&candidate, rng.gen_range(0.0..1.0))?;
            if order.leq(&candidate, &upper)? {
                start = candidate;
                break;
            }
        }

        let chain: Vec<DensityOperator> = schedule
            .iter()
            .map(|&t| start.mix(&upper, t))
            .collect::<Result<_>>()?;
        let mut hit = false;
        for c in &chain {
            if order.leq(x, c)? {
                hit = true;
                break;
            }
        }
        if !hit {
            let serialized = chain
                .iter()
                .map(|rho| {
                    rho.matrix()
                        .iter()
                        .map(|c| (c.re, c.im))
                        .collect::<Vec<_>>()
                })
                .collect();
            return Ok(WayBelowReport {
                claim: format!("way_below({}, n={n})", order.name()),
                chains_tried: tried + 1,
                counterexample: Some(vec![serialized]),
            });
        }
    }
    Ok(WayBelowReport {
        claim: format!("way_below({}, n={n})", order.name()),
        chains_tried: sequence_budget,
        counterexample: None,
    })
}

fn top_projector_of(rho: &DensityOperator) -> DensityOperator {
    let eig = rho.eigensystem();
    let v = eig.vectors.column(0).clone_owned();
    DensityOperator::pure(&v).expect("eigenvector is normalized")
}

/// The documented dcpo failure of ⊑_max at n = 3: the chain from a
/// nondegenerate x toward the embedded ⊥₂ has a decreasing family of
/// upper bounds but no least one, because ⊥₂ itself is not a bound.
#[derive(Debug, Clone, Serialize)]
pub struct DcpoMaxReport {
    pub chain_length: usize,
    pub no_join: bool,
    pub violating_index: Option<usize>,
    pub upper_bounds_checked: usize,
    pub upper_bounds_all_bound: bool,
    pub bottom2_is_bound: bool,
}

impl DcpoMaxReport {
    /// The counterexample reproduces as documented.
    pub fn reproduced(&self) -> bool {
        self.no_join && self.upper_bounds_all_bound && !self.bottom2_is_bound
    }
}

pub fn dcpo_max_counterexample() -> Result<DcpoMaxReport> {
    let spec = OrderSpec::new(crate::orders::OrderKind::MaxRestricted);
    let x = Distribution::new(&[0.5, 0.3, 0.2], 3)?;
    let bottom2 = Distribution::new(&[0.5, 0.5, 0.0], 3)?;
    let chain: Vec<Distribution> = chain_schedule(CHAIN_LENGTH)
        .iter()
        .map(|&t| x.mix(&bottom2, t))
        .collect::<Result<_>>()?;

    let outcome = chain_join_distributions(&spec, &chain)?;
    let (no_join, violating_index) = match outcome {
        JoinOutcome::NoJoinEvidence { violating_index } => (true, Some(violating_index)),
        JoinOutcome::Join(_) => (false, None),
    };

    // The decreasing upper-bound family y_k = ((1+1/k)/2, (1-1/k)/2, 0).
    let mut all_bound = true;
    let mut checked = 0;
    for k in 1..=64 {
        let kf = k as f64;
        let yk = Distribution::new(&[(1.0 + 1.0 / kf) / 2.0, (1.0 - 1.0 / kf) / 2.0, 0.0], 3)?;
        checked += 1;
        for c in &chain {
            if !spec.leq(c, &yk)? {
                all_bound = false;
            }
        }
    }
    let bottom2_is_bound = chain
        .iter()
        .map(|c| spec.leq(c, &bottom2))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    Ok(DcpoMaxReport {
        chain_length: chain.len(),
        no_join,
        violating_index,
        upper_bounds_checked: checked,
        upper_bounds_all_bound: all_bound,
        bottom2_is_bound,
    })
}
