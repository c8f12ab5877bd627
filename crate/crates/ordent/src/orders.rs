//! The order relations on Δⁿ and Λⁿ: the Bayesian order, the parametrized
//! restricted orders ⊑_A, their maximal and minimal limits, the two
//! renormalized Löwner orders, and majorization, behind one comparison API.
//!
//! Orders defined on the monotone sector are lifted to Δⁿ by requiring a
//! shared sector: a single permutation sorting both arguments descending.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{Distribution, MonotoneDistribution, ZERO_THRESHOLD};

/// Default slack for `a <= b` tests on degree-two products of probabilities.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[inline]
fn leq_tol(a: f64, b: f64, tol: f64) -> bool {
    a - b <= tol
}

/// Outcome of evaluating an order in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonResult {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl ComparisonResult {
    pub fn from_leq(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => ComparisonResult::Equal,
            (true, false) => ComparisonResult::Less,
            (false, true) => ComparisonResult::Greater,
            (false, false) => ComparisonResult::Incomparable,
        }
    }
}

impl std::fmt::Display for ComparisonResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ComparisonResult::Less => "LESS",
            ComparisonResult::Greater => "GREATER",
            ComparisonResult::Equal => "EQUAL",
            ComparisonResult::Incomparable => "INCOMPARABLE",
        };
        f.write_str(s)
    }
}

/// Parameters A^i_j of a restricted order ⊑_A on Λⁿ.
///
/// Row i (1 ≤ i ≤ n-1) holds the coefficients for j = i+2..=n; absent
/// parameters are zero. Feasibility requires every partial sum
/// 1 + Σ_{j=i+2}^k A^i_j to stay strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct RioParams {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// Named parameter presets from the thesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RioPreset {
    /// A ≡ 0.
    Bayesian,
    /// A¹_k = 1 for all k, other rows zero; entropy- and μ⁺-compatible.
    EntropyOrder,
    /// A^i_j = 1 everywhere.
    OnesOrder,
}

impl RioParams {
    /// All-zero parameters (the Bayesian order).
    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_rows(n, (1..n).map(|i| vec![0.0; n - i - 1]).collect())
    }

    pub fn preset(which: RioPreset, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: n });
        }
        let mut params = Self::zeros(n)?;
        match which {
            RioPreset::Bayesian => {}
            RioPreset::EntropyOrder => {
                for v in params.rows[0].iter_mut() {
                    *v = 1.0;
                }
            }
            RioPreset::OnesOrder => {
                for row in params.rows.iter_mut() {
                    for v in row.iter_mut() {
                        *v = 1.0;
                    }
                }
            }
        }
        params.check_feasible()?;
        Ok(params)
    }

    /// Builds from dense rows: `rows[i-1][j-i-2]` is A^i_j.
    pub fn from_rows(n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if n < 2 || rows.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n.saturating_sub(1),
                got: rows.len(),
            });
        }
        for (idx, row) in rows.iter().enumerate() {
            let i = idx + 1;
            if row.len() != n - i - 1 {
                return Err(Error::DimensionMismatch {
                    expected: n - i - 1,
                    got: row.len(),
                });
            }
        }
        let params = Self { n, rows };
        params.check_feasible()?;
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// A^i_j with 1-based i and j; zero outside the stored range.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i >= 1 && i < self.n && j >= i + 2 && j <= self.n {
            self.rows[i - 1][j - i - 2]
        } else {
            0.0
        }
    }

    pub fn check_feasible(&self) -> Result<()> {
        for i in 1..self.n {
            let mut partial = 0.0;
            for k in i + 2..=self.n {
                partial += self.coeff(i, k);
                if 1.0 + partial <= 0.0 {
                    return Err(Error::InfeasibleParams {
                        i,
                        k,
                        partial_sum: 1.0 + partial,
                    });
                }
            }
        }
        Ok(())
    }

    /// f_i(x) = x_i - x_{i+1}.
    pub fn f(&self, i: usize, x: &MonotoneDistribution) -> f64 {
        x.entry(i) - x.entry(i + 1)
    }

    /// g_i(y) = y_{i+1} + Σ_{j=i+2}^n A^i_j y_j.
    pub fn g(&self, i: usize, y: &MonotoneDistribution) -> f64 {
        let mut acc = y.entry(i + 1);
        for j in i + 2..=self.n {
            acc += self.coeff(i, j) * y.entry(j);
        }
        acc
    }

    /// The pair (f_i(x)g_i(y), f_i(y)g_i(x)) for each row i.
    pub fn inequality_sides(
        &self,
        x: &MonotoneDistribution,
        y: &MonotoneDistribution,
    ) -> Vec<(f64, f64)> {
        (1..self.n)
            .map(|i| (self.f(i, x) * self.g(i, y), self.f(i, y) * self.g(i, x)))
            .collect()
    }
}

/// JSON wire form: `{"n": 4, "A": {"1": {"3": 0.5, "4": -0.2}}}`.
#[derive(Serialize, Deserialize)]
struct RioParamsRepr {
    n: usize,
    #[serde(rename = "A", default)]
    a: BTreeMap<String, BTreeMap<String, f64>>,
}

impl Serialize for RioParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut a = BTreeMap::new();
        for i in 1..self.n {
            let mut row = BTreeMap::new();
            for j in i + 2..=self.n {
                let v = self.coeff(i, j);
                if v != 0.0 {
                    row.insert(j.to_string(), v);
                }
            }
            if !row.is_empty() {
                a.insert(i.to_string(), row);
            }
        }
        RioParamsRepr { n: self.n, a }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RioParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RioParamsRepr::deserialize(d)?;
        if repr.n < 2 {
            return Err(D::Error::custom("RioParams requires n >= 2"));
        }
        let mut params = RioParams::zeros(repr.n).map_err(D::Error::custom)?;
        for (i_str, row) in &repr.a {
            let i: usize = i_str
                .parse()
                .map_err(|_| D::Error::custom(format!("bad row index {i_str:?}")))?;
            for (j_str, &v) in row {
                let j: usize = j_str
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad column index {j_str:?}")))?;
                if i < 1 || i >= repr.n || j < i + 2 || j > repr.n {
                    return Err(D::Error::custom(format!(
                        "parameter A^{i}_{j} outside the valid index range for n = {}",
                        repr.n
                    )));
                }
                params.rows[i - 1][j - i - 2] = v;
            }
        }
        params.check_feasible().map_err(D::Error::custom)?;
        Ok(params)
    }
}

/// Which order relation to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderKind {
    Bayesian,
    Rio(RioParams),
    MaxRestricted,
    MinRestricted,
    LownerPlus,
    LownerMinus,
    Majorization,
}

/// An order together with its comparison tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub tol: f64,
}

impl OrderSpec {
    pub fn new(kind: OrderKind) -> Self {
        Self {
            kind,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tol(kind: OrderKind, tol: f64) -> Self {
        Self { kind, tol }
    }

    /// x ⊑ y on Δⁿ. Sector-restricted orders are lifted through the
    /// monotone retraction.
    pub fn leq(&self, x: &Distribution, y: &Distribution) -> Result<bool> {
        let tol = self.tol;
        match &self.kind {
            OrderKind::Bayesian => leq_bayesian(x, y, tol),
            OrderKind::Rio(p) => {
                check_dims(p.n(), x.n())?;
                lift_to_simplex(|a, b| leq_rio(p, a, b, tol), x, y)
            }
            OrderKind::MaxRestricted => {
                lift_to_simplex(|a, b| leq_max_restricted(a, b, tol), x, y)
            }
            OrderKind::MinRestricted => {
                lift_to_simplex(|a, b| leq_min_restricted(a, b, tol), x, y)
            }
            OrderKind::LownerPlus => leq_lowner_plus_simplex(x, y, tol),
            OrderKind::LownerMinus => leq_lowner_minus_simplex(x, y, tol),
            OrderKind::Majorization => leq_majorization(x, y, tol),
        }
    }

    /// Λⁿ-level relation, without the shared-sector condition. For the
    /// Löwner orders and majorization this is the plain Δⁿ relation.
    pub fn leq_monotone(
        &self,
        x: &MonotoneDistribution,
        y: &MonotoneDistribution,
    ) -> Result<bool> {
        let tol = self.tol;
        match &self.kind {
            OrderKind::Bayesian => leq_bayesian_monotone(x, y, tol),
            OrderKind::Rio(p) => leq_rio(p, x, y, tol),
            OrderKind::MaxRestricted => leq_max_restricted(x, y, tol),
            OrderKind::MinRestricted => leq_min_restricted(x, y, tol),
            OrderKind::LownerPlus => {
                leq_lowner_plus_simplex(x.as_distribution(), y.as_distribution(), tol)
            }
            OrderKind::LownerMinus => {
                leq_lowner_minus_simplex(x.as_distribution(), y.as_distribution(), tol)
            }
            OrderKind::Majorization => {
                leq_majorization(x.as_distribution(), y.as_distribution(), tol)
            }
        }
    }

    /// Evaluates both directions.
    pub fn compare(&self, x: &Distribution, y: &Distribution) -> Result<ComparisonResult> {
        Ok(ComparisonResult::from_leq(
            self.leq(x, y)?,
            self.leq(y, x)?,
        ))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::Bayesian => "bayesian",
            OrderKind::Rio(_) => "rio",
            OrderKind::MaxRestricted => "max",
            OrderKind::MinRestricted => "min",
            OrderKind::LownerPlus => "lplus",
            OrderKind::LownerMinus => "lminus",
            OrderKind::Majorization => "major",
        }
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Finds a permutation sorting both x and y descending, if one exists.
///
/// Sorting by x descending with y descending as the tie key is optimal: any
/// shared sector must order tied x-blocks by y, so the pair is simultaneously
/// sortable iff this candidate sorts y. Ties are exact value equality.
pub fn shared_sector(x: &Distribution, y: &Distribution) -> Option<(MonotoneDistribution, MonotoneDistribution)> {
    let n = x.n();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        x.values()[b]
            .partial_cmp(&x.values()[a])
            .unwrap()
            .then(y.values()[b].partial_cmp(&y.values()[a]).unwrap())
    });
    let xs: Vec<f64> = idx.iter().map(|&i| x.values()[i]).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| y.values()[i]).collect();
    if ys.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some((
        MonotoneDistribution::new(Distribution::from_values_unchecked(xs)).expect("sorted"),
        MonotoneDistribution::new(Distribution::from_values_unchecked(ys)).expect("sorted"),
    ))
}

/// Lifts a Λⁿ relation to Δⁿ: true iff the pair shares a sector and the
/// relation holds on the simultaneous retractions.
pub fn lift_to_simplex<F>(leq_monotone: F, x: &Distribution, y: &Distribution) -> Result<bool>
where
    F: Fn(&MonotoneDistribution, &MonotoneDistribution) -> Result<bool>,
{
    check_dims(x.n(), y.n())?;
    match shared_sector(x, y) {
        Some((mx, my)) => leq_monotone(&mx, &my),
        None => Ok(false),
    }
}

/// Bayesian order on Λⁿ: x_k y_{k+1} ≤ y_k x_{k+1} for all k.
pub fn leq_bayesian_monotone(
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let (xs, ys) = (x.values(), y.values());
    Ok((0..x.n() - 1).all(|k| leq_tol(xs[k] * ys[k + 1], ys[k] * xs[k + 1], tol)))
}

/// Bayesian order on Δⁿ.
pub fn leq_bayesian(x: &Distribution, y: &Distribution, tol: f64) -> Result<bool> {
    lift_to_simplex(|a, b| leq_bayesian_monotone(a, b, tol), x, y)
}

/// ⊑_A on Λⁿ: f_i(x)g_i(y) ≤ f_i(y)g_i(x) for every row i.
pub fn leq_rio(
    params: &RioParams,
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<bool> {
    check_dims(params.n(), x.n())?;
    check_dims(x.n(), y.n())?;
    Ok(params
        .inequality_sides(x, y)
        .into_iter()
        .all(|(lhs, rhs)| leq_tol(lhs, rhs, tol)))
}

fn is_zero(v: f64) -> bool {
    v <= ZERO_THRESHOLD
}

/// The maximal restricted order ⊑ⁿ_max on Λⁿ.
///
/// Three mutually exclusive cases on the last coordinate, recursing when
/// both vanish; the Λ² base case is x₁ ≤ y₁.
pub fn leq_max_restricted(
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let (xs, ys) = (x.values(), y.values());
    let mut n = x.n();
    // Case: x_n = y_n = 0 reduces to Λ^{n-1}.
    while n > 2 && is_zero(xs[n - 1]) && is_zero(ys[n - 1]) {
        n -= 1;
    }
    if n == 1 {
        return Ok(true);
    }
    if n == 2 {
        return Ok(leq_tol(xs[0], ys[0], tol));
    }
    let xn = xs[n - 1];
    let yn = ys[n - 1];
    if !is_zero(xn) && !is_zero(yn) {
        Ok((0..n - 1).all(|k| leq_tol((xs[k] - xs[k + 1]) * yn, (ys[k] - ys[k + 1]) * xn, tol)))
    } else if is_zero(yn) && !is_zero(xn) {
        // Every nonzero degeneracy of y must already be present in x; ties
        // at zero are not degeneracies (every x lies below ⊤₁).
        Ok((0..n - 1).all(|k| {
            is_zero(ys[k])
                || (ys[k] - ys[k + 1]).abs() > tol
                || (xs[k] - xs[k + 1]).abs() <= tol
        }))
    } else {
        // x_n = 0 < y_n: zeroes may only accumulate upward.
        Ok(false)
    }
}

/// The minimal restricted order ⊑ⁿ_min on Λⁿ: the intersection of every
/// feasible ⊑_A.
///
/// Row k of ⊑_A holds for all feasible parameters exactly when each gap
/// inequality (x_k-x_{k+1})(y_m-y_{m+1}) ≤ (y_k-y_{k+1})(x_m-x_{m+1}) holds
/// for m = k+1..n (with x_{n+1} = 0): the parameter rewrite
/// g_k(y) = Σ_m Q_m (y_m-y_{m+1}) has independent weights Q_m ranging over
/// (0,∞). The y ≠ ⊥ₙ clause restores antisymmetry, which the gap
/// inequalities alone lose at the uniform distribution.
pub fn leq_min_restricted(
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let n = x.n();
    let bottom = MonotoneDistribution::bottom(n);
    if y.approx_eq(&bottom, 1e-9) {
        return Ok(x.approx_eq(&bottom, 1e-9));
    }
    for k in 1..n {
        let fx = x.entry(k) - x.entry(k + 1);
        let fy = y.entry(k) - y.entry(k + 1);
        for m in k + 1..=n {
            let gx = x.entry(m) - x.entry(m + 1);
            let gy = y.entry(m) - y.entry(m + 1);
            if !leq_tol(fx * gy, fy * gx, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximum-eigenvalue renormalized Löwner order on Δⁿ:
/// x ⊑⁺ y iff x⁺ y_k ≤ y⁺ x_k for all k.
pub fn leq_lowner_plus_simplex(x: &Distribution, y: &Distribution, tol: f64) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let xp = x.spectral_stats().max;
    let yp = y.spectral_stats().max;
    Ok(x.values()
        .iter()
        .zip(y.values())
        .all(|(&xk, &yk)| leq_tol(xp * yk, yp * xk, tol)))
}

/// Minimum-eigenvalue renormalized Löwner order on Δⁿ, by zero-set cases.
pub fn leq_lowner_minus_simplex(x: &Distribution, y: &Distribution, tol: f64) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let zx = x.zero_set();
    let zy = y.zero_set();
    let sx = x.spectral_stats();
    let sy = y.spectral_stats();
    if zx == zy {
        Ok(x.values()
            .iter()
            .zip(y.values())
            .all(|(&xk, &yk)| leq_tol(xk * sy.min_nonzero, yk * sx.min_nonzero, tol)))
    } else if zx.iter().all(|i| zy.contains(i)) {
        // Z(x) ⊂ Z(y): need a coordinate where y vanished while x sits at
        // its smallest nonzero value.
        Ok(x.values()
            .iter()
            .zip(y.values())
            .any(|(&xk, &yk)| is_zero(yk) && !is_zero(xk) && xk <= sx.min_nonzero + tol))
    } else {
        Ok(false)
    }
}

/// Majorization on sorted entries: prefix-sum dominance.
pub fn leq_majorization(x: &Distribution, y: &Distribution, tol: f64) -> Result<bool> {
    check_dims(x.n(), y.n())?;
    let (mx, _) = x.retract();
    let (my, _) = y.retract();
    let mut px = 0.0;
    let mut py = 0.0;
    for (a, b) in mx.values().iter().zip(my.values()) {
        px += a;
        py += b;
        if !leq_tol(px, py, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
