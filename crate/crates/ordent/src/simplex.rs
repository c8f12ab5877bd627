//! Points of the probability simplex Δⁿ and its monotone sector Λⁿ.
//!
//! A `Distribution` is a nonnegative vector summing to one. A
//! `MonotoneDistribution` additionally has its entries sorted in
//! non-increasing order; sorting an arbitrary distribution (the monotone
//! retraction) yields one together with the witnessing permutation.

use crate::error::{Error, Result};

/// Entries at or below this count as zero for zero-set and minimum-nonzero
/// computations. Fixed so that the discontinuous orders behave reproducibly.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Negative noise allowed in raw input before construction rejects it.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;

/// A point of Δⁿ: nonnegative entries summing to one.
///
/// Construction clamps small negative noise to zero and renormalizes, so
/// count data can be ingested directly. Values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    values: Vec<f64>,
}

/// A point of the monotone sector Λⁿ: entries sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneDistribution {
    inner: Distribution,
}

/// A bijection of {0..n-1}. Applying it to a distribution x gives the
/// vector with entries x[map[i]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

/// Extremal statistics of a distribution: the largest entry, the smallest
/// entry above [`ZERO_THRESHOLD`], and the number of (near-)zero entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralStats {
    pub max: f64,
    pub min_nonzero: f64,
    pub zeros: usize,
}

impl Distribution {
    /// Builds a distribution from raw nonnegative data, renormalizing to
    /// unit mass. Entries in [-1e-12, 0) are clamped to zero.
    pub fn new(raw: &[f64], n: usize) -> Result<Self> {
        if raw.len() != n || n == 0 {
            return Err(Error::DimensionMismatch {
                expected: n.max(1),
                got: raw.len(),
            });
        }
        for (i, &v) in raw.iter().enumerate() {
            if v < -NEGATIVE_TOLERANCE || !v.is_finite() {
                return Err(Error::NegativeEntry { index: i, value: v });
            }
        }
        let clamped: Vec<f64> = raw.iter().map(|&v| v.max(0.0)).collect();
        let sum: f64 = clamped.iter().sum();
        if sum <= 0.0 {
            return Err(Error::ZeroMass { sum });
        }
        Ok(Self {
            values: clamped.into_iter().map(|v| v / sum).collect(),
        })
    }

    /// The uniform distribution ⊥ₙ.
    pub fn bottom(n: usize) -> Self {
        Self {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// The pure distribution ⊤ᵢ (1-indexed position).
    pub fn top(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut values = vec![0.0; n];
        values[i - 1] = 1.0;
        Ok(Self { values })
    }

    /// Wraps values that are already a valid simplex point, bypassing
    /// renormalization. Caller guarantees the invariants.
    pub(crate) fn from_values_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!((values.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Convex combination (1-t)·self + t·other.
    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange {
                name: "t",
                value: t,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (1.0 - t) * a + t * b)
            .collect();
        Ok(Self { values })
    }

    /// The monotone retraction r(x): entries sorted non-increasing, with a
    /// witness permutation such that `x.permute(&perm) == r(x)`. Ties keep
    /// their original relative order (stable sort), so the witness is
    /// deterministic.
    pub fn retract(&self) -> (MonotoneDistribution, Permutation) {
        let mut idx: Vec<usize> = (0..self.n()).collect();
        idx.sort_by(|&a, &b| self.values[b].partial_cmp(&self.values[a]).unwrap());
        let values: Vec<f64> = idx.iter().map(|&i| self.values[i]).collect();
        (
            MonotoneDistribution {
                inner: Distribution { values },
            },
            Permutation { map: idx },
        )
    }

    /// Applies σ: result[i] = self[σ(i)].
    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: sigma.n(),
            });
        }
        Ok(Self {
            values: sigma.map.iter().map(|&i| self.values[i]).collect(),
        })
    }

    /// Max entry, min nonzero entry and zero count under [`ZERO_THRESHOLD`].
    pub fn spectral_stats(&self) -> SpectralStats {
        let max = self.values.iter().cloned().fold(f64::MIN, f64::max);
        let mut min_nonzero = f64::MAX;
        let mut zeros = 0;
        for &v in &self.values {
            if v <= ZERO_THRESHOLD {
                zeros += 1;
            } else if v < min_nonzero {
                min_nonzero = v;
            }
        }
        SpectralStats {
            max,
            min_nonzero,
            zeros,
        }
    }

    /// Index set Z(x) of entries at or below the zero threshold.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.values[i] <= ZERO_THRESHOLD)
            .collect()
    }

    /// Componentwise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n() == other.n()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(&a, &b)| (a - b).abs() <= tol)
    }

    /// Largest absolute componentwise difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl MonotoneDistribution {
    /// Validates that the entries are non-increasing.
    pub fn new(d: Distribution) -> Result<Self> {
        for i in 0..d.n() - 1 {
            if d.values[i] < d.values[i + 1] {
                return Err(Error::ParameterOutOfRange {
                    name: "monotone entry",
                    value: d.values[i + 1],
                });
            }
        }
        Ok(Self { inner: d })
    }

    pub fn from_raw(raw: &[f64], n: usize) -> Result<Self> {
        Self::new(Distribution::new(raw, n)?)
    }

    pub fn bottom(n: usize) -> Self {
        Self {
            inner: Distribution::bottom(n),
        }
    }

    /// ⊤₁ is the only pure state inside Λⁿ.
    pub fn top(n: usize) -> Self {
        Self {
            inner: Distribution::top(n, 1).expect("n >= 1"),
        }
    }

    /// The extremal point ⊥ₖ of Λⁿ: 1/k on the first k coordinates.
    pub fn bottom_embedded(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let mut values = vec![0.0; n];
        for v in values.iter_mut().take(k) {
            *v = 1.0 / k as f64;
        }
        Ok(Self {
            inner: Distribution { values },
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn values(&self) -> &[f64] {
        self.inner.values()
    }

    pub fn as_distribution(&self) -> &Distribution {
        &self.inner
    }

    /// Entry with the convention x_{n+1} = 0 (1-indexed argument, so
    /// `gap(i) = x_i - x_{i+1}` uses `entry(i) - entry(i+1)`).
    pub(crate) fn entry(&self, i: usize) -> f64 {
        if i <= self.n() {
            self.values()[i - 1]
        } else {
            0.0
        }
    }

    /// Coordinates a_k = k(x_k - x_{k+1}) of x in the extremal basis
    /// {⊥ₖ}: nonnegative, summing to one, with Σ a_k ⊥ₖ = x.
    pub fn extremal_coordinates(&self) -> Vec<f64> {
        let n = self.n();
        (1..=n)
            .map(|k| k as f64 * (self.entry(k) - self.entry(k + 1)))
            .collect()
    }

    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        // Convexity keeps the entries sorted.
        Ok(Self {
            inner: self.inner.mix(&other.inner, t)?,
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.inner.approx_eq(&other.inner, tol)
    }
}

/// Replaces values within `tol` of each other by their cluster mean, so
/// near-degeneracies become exact ties.
pub(crate) fn snap_clusters(values: &[f64], tol: f64) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut out = values.to_vec();
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]] - values[idx[end - 1]] <= tol {
            end += 1;
        }
        let mean = idx[start..end].iter().map(|&i| values[i]).sum::<f64>() / (end - start) as f64;
        for &i in &idx[start..end] {
            out[i] = mean;
        }
        start = end;
    }
    out
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// Builds from a 0-indexed image vector; must be a bijection.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            seen[i] = true;
        }
        Ok(Self { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// The transposition swapping positions i and j (0-indexed).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Ok(Self { map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn construction_renormalizes() {
        let d = Distribution::new(&[1.0, 1.0, 1.0, 1.0], 4).unwrap();
        assert_eq!(d.values(), &[0.25, 0.25, 0.25, 0.25]);

        // The thesis's figure point x = (6,2,2)/10.
        let d = Distribution::new(&[6.0, 2.0, 2.0], 3).unwrap();
        assert_eq!(d.values(), &[0.6, 0.2, 0.2]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            Distribution::new(&[0.0, 0.0, -1.0], 3),
            Err(Error::NegativeEntry { index: 2, .. })
        ));
        assert!(matches!(
            Distribution::new(&[0.0, 0.0], 2),
            Err(Error::ZeroMass { .. })
        ));
        assert!(matches!(
            Distribution::new(&[1.0, 1.0], 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_elements() {
        assert_eq!(Distribution::bottom(3).values(), &[1.0 / 3.0; 3]);
        assert_eq!(Distribution::top(3, 2).unwrap().values(), &[0.0, 1.0, 0.0]);
        // ⊥₁ = ⊤₁ in dimension one.
        assert_eq!(Distribution::bottom(1).values(), &[1.0]);
        assert!(Distribution::top(3, 4).is_err());
        assert!(Distribution::top(3, 0).is_err());
    }

    #[test]
    fn retraction_sorts_with_witness() {
        let d = Distribution::new(&[0.2, 0.5, 0.3], 3).unwrap();
        let (m, sigma) = d.retract();
        assert_eq!(m.values(), &[0.5, 0.3, 0.2]);
        assert_eq!(sigma.map(), &[1, 2, 0]);
        assert_eq!(d.permute(&sigma).unwrap().values(), m.values());

        // Degenerate ties keep their original order.
        let u = Distribution::bottom(3);
        let (m, sigma) = u.retract();
        assert_eq!(m.values(), u.values());
        assert_eq!(sigma, Permutation::identity(3));

        let d = Distribution::new(&[0.6, 0.2, 0.2], 3).unwrap();
        let (m, sigma) = d.retract();
        assert_eq!(m.values(), d.values());
        assert_eq!(sigma, Permutation::identity(3));
    }

    #[test]
    fn retraction_is_sector_independent() {
        let d = Distribution::new(&[0.1, 0.4, 0.2, 0.3], 4).unwrap();
        let sigma = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let permuted = d.permute(&sigma).unwrap();
        assert_eq!(d.retract().0.values(), permuted.retract().0.values());
    }

    #[test]
    fn mixing_endpoints_and_midpoint() {
        let x = Distribution::new(&[1.0, 0.0], 2).unwrap();
        let y = Distribution::new(&[0.0, 1.0], 2).unwrap();
        assert_eq!(x.mix(&y, 0.0).unwrap().values(), x.values());
        assert_eq!(x.mix(&y, 0.5).unwrap().values(), &[0.5, 0.5]);

        let x = Distribution::new(&[0.6, 0.2, 0.2], 3).unwrap();
        let y = Distribution::new(&[0.5, 1.0 / 3.0, 1.0 / 6.0], 3).unwrap();
        let z = x.mix(&y, 0.5).unwrap();
        assert_relative_eq!(z.values()[0], 0.55, max_relative = 1e-14);
        assert_relative_eq!(z.values()[1], 4.0 / 15.0, max_relative = 1e-14);
        assert_relative_eq!(z.values()[2], 11.0 / 60.0, max_relative = 1e-14);

        assert!(x.mix(&y, 1.5).is_err());
    }

    #[test]
    fn extremal_coordinates_reconstruct() {
        let b3 = MonotoneDistribution::bottom(3);
        assert_eq!(b3.extremal_coordinates(), vec![0.0, 0.0, 1.0]);

        let t1 = MonotoneDistribution::top(3);
        assert_eq!(t1.extremal_coordinates(), vec![1.0, 0.0, 0.0]);

        let m = MonotoneDistribution::from_raw(&[0.5, 0.3, 0.2], 3).unwrap();
        let a = m.extremal_coordinates();
        assert_relative_eq!(a[0], 0.2, max_relative = 1e-12);
        assert_relative_eq!(a[1], 0.2, max_relative = 1e-12);
        assert_relative_eq!(a[2], 0.6, max_relative = 1e-12);

        // Σ a_k ⊥_k == x, checked per component.
        let n = m.n();
        let mut rebuilt = vec![0.0; n];
        for (k, &ak) in a.iter().enumerate() {
            let bk = MonotoneDistribution::bottom_embedded(n, k + 1).unwrap();
            for (r, &b) in rebuilt.iter_mut().zip(bk.values()) {
                *r += ak * b;
            }
        }
        for (r, v) in rebuilt.iter().zip(m.values()) {
            assert!((r - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn spectral_stats_examples() {
        let d = Distribution::new(&[0.5, 0.3, 0.2], 3).unwrap();
        let s = d.spectral_stats();
        assert_eq!((s.max, s.min_nonzero, s.zeros), (0.5, 0.2, 0));

        let t = Distribution::top(3, 1).unwrap();
        let s = t.spectral_stats();
        assert_eq!((s.max, s.min_nonzero, s.zeros), (1.0, 1.0, 2));

        let b = Distribution::bottom(4);
        let s = b.spectral_stats();
        assert_eq!((s.max, s.min_nonzero, s.zeros), (0.25, 0.25, 0));
    }

    #[test]
    fn spectral_stats_permutation_invariant() {
        let d = Distribution::new(&[0.5, 0.0, 0.3, 0.2], 4).unwrap();
        let sigma = Permutation::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(d.spectral_stats(), d.permute(&sigma).unwrap().spectral_stats());
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }
}
