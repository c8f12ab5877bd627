//! Seeded sample generation for the randomized suites.
//!
//! Δⁿ is sampled uniformly (symmetric Dirichlet with unit concentration,
//! via normalized exponentials). Suites mix these with a deterministic head
//! of boundary cases, since ties and zero patterns carry most of the
//! degeneracy-condition content.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::orders::RioParams;
use crate::simplex::{Distribution, Permutation};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One uniform draw from Δⁿ.
pub fn sample_simplex(n: usize, rng: &mut impl Rng) -> Distribution {
    let raw: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    Distribution::new(&raw, n).expect("exponential draws are positive")
}

/// A uniform random permutation (Fisher-Yates).
pub fn sample_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        map.swap(i, j);
    }
    Permutation::new(map).expect("shuffle is a bijection")
}

/// Deterministic boundary cases: extremal points, embedded uniforms, tie
/// points and a few fixed interior references.
pub fn boundary_cases(n: usize) -> Vec<Distribution> {
    let mut out = Vec::new();
    out.push(Distribution::bottom(n));
    for i in 1..=n {
        out.push(Distribution::top(n, i).expect("in range"));
    }
    for k in 1..n {
        // ⊥ₖ embedded in Δⁿ.
        let mut v = vec![0.0; n];
        for e in v.iter_mut().take(k) {
            *e = 1.0 / k as f64;
        }
        out.push(Distribution::new(&v, n).expect("valid"));
    }
    // Two-support points without ties, concentrated points, and a tied
    // interior point.
    if n >= 2 {
        let mut v = vec![0.0; n];
        v[0] = 0.55;
        v[1] = 0.45;
        out.push(Distribution::new(&v, n).expect("valid"));

        let mut v = vec![0.05 / (n as f64 - 1.0); n];
        v[0] = 0.95;
        out.push(Distribution::new(&v, n).expect("valid"));
    }
    if n >= 3 {
        let mut v = vec![0.1 / (n as f64 - 2.0); n];
        v[0] = 0.45;
        v[1] = 0.45;
        out.push(Distribution::new(&v, n).expect("valid"));

        let mut v = vec![0.0; n];
        v[0] = 0.5;
        v[1] = 0.3;
        v[2] = 0.2;
        out.push(Distribution::new(&v, n).expect("valid"));

        let mut v = vec![0.0; n];
        v[0] = 0.6;
        v[1] = 0.2;
        v[2] = 0.2;
        out.push(Distribution::new(&v, n).expect("valid"));
    }
    out
}

/// The sample pool for a property run: the deterministic boundary head,
/// permuted copies of it, then seeded Dirichlet draws up to `size`.
pub fn sample_pool(n: usize, size: usize, rng: &mut impl Rng) -> Vec<Distribution> {
    let mut pool = boundary_cases(n);
    let head = pool.clone();
    for d in &head {
        let sigma = sample_permutation(n, rng);
        pool.push(d.permute(&sigma).expect("same dimension"));
    }
    while pool.len() < size.max(pool.len()) {
        pool.push(sample_simplex(n, rng));
    }
    pool.truncate(size.max(head.len() * 2));
    pool
}

/// A feasible random parameter set: partial sums T_m = Σ A^i_j are drawn
/// in (-0.9, 3), which keeps 1 + T_m strictly positive.
pub fn sample_feasible_params(n: usize, rng: &mut impl Rng) -> RioParams {
    let mut rows = Vec::with_capacity(n - 1);
    for i in 1..n {
        let width = n - i - 1;
        let mut row = Vec::with_capacity(width);
        let mut prev = 0.0;
        for _ in 0..width {
            let t = rng.gen_range(-0.9..3.0);
            row.push(t - prev);
            prev = t;
        }
        rows.push(row);
    }
    RioParams::from_rows(n, rows).expect("partial sums stay above -0.9")
}

/// A feasible parameter set with all entries nonpositive (partial sums in
/// (-0.9, 0]), the regime where entropy compatibility is guaranteed.
pub fn sample_negative_params(n: usize, rng: &mut impl Rng) -> RioParams {
    let mut rows = Vec::with_capacity(n - 1);
    for i in 1..n {
        let width = n - i - 1;
        let mut row = Vec::with_capacity(width);
        let mut budget = 0.9;
        for _ in 0..width {
            let a = -rng.gen_range(0.0..budget / 2.0);
            row.push(a);
            budget += a;
        }
        rows.push(row);
    }
    RioParams::from_rows(n, rows).expect("partial sums stay above -0.9")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_samples_are_valid_and_seeded() {
        let mut rng = seeded_rng(7);
        let a = sample_simplex(5, &mut rng);
        assert_eq!(a.n(), 5);
        let mut rng2 = seeded_rng(7);
        let b = sample_simplex(5, &mut rng2);
        assert_eq!(a, b);
    }

    #[test]
    fn feasible_params_pass_their_check() {
        let mut rng = seeded_rng(3);
        for _ in 0..50 {
            sample_feasible_params(5, &mut rng).check_feasible().unwrap();
            let p = sample_negative_params(5, &mut rng);
            p.check_feasible().unwrap();
            for i in 1..5 {
                for j in i + 2..=5 {
                    assert!(p.coeff(i, j) <= 0.0);
                }
            }
        }
    }

    #[test]
    fn boundary_cases_include_ties_and_zeros() {
        let cases = boundary_cases(4);
        assert!(cases.iter().any(|d| d.spectral_stats().zeros > 0));
        assert!(cases.contains(&Distribution::bottom(4)));
    }
}
