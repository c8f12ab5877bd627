//! Distributional-semantics entailment machinery: word-vector ingestion,
//! word → distribution/density construction, smoothing, grading, graded
//! Löwner entailment, Sim scores, KL divergence and cosine baseline.

use std::collections::HashMap;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::{is_psd, DensityOperator, EigenspaceKind, PositiveOperator};
use crate::error::{Error, Result};
use crate::orders::{OrderSpec, RioParams};
use crate::simplex::{Distribution, MonotoneDistribution};

/// Raw entries below this are rejected; the range [-1e-9, 0) is clamped.
const INGEST_NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Token → nonnegative co-occurrence vector.
#[derive(Debug, Clone)]
pub struct WordVectorStore {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl WordVectorStore {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn raw(&self, token: &str) -> Result<&[f64]> {
        self.vectors
            .get(token)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::UnknownToken {
                token: token.to_string(),
            })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.vectors.contains_key(token)
    }
}

/// Parses the text vector format: an optional `<count> <dim>` header line,
/// then `<token> <v1> ... <vd>` per line. Duplicate tokens keep the last
/// occurrence and are reported as warnings.
pub fn load_vectors(path: &Path) -> Result<(WordVectorStore, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    parse_vectors(&text)
}

pub fn parse_vectors(text: &str) -> Result<(WordVectorStore, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut vectors: HashMap<String, Vec<f64>> = HashMap::new();
    let mut dim: Option<usize> = None;
    let mut saw_header = false;
    let mut first_data_line = true;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if first_data_line && !saw_header && tokens.len() == 2 {
            if let (Ok(_), Ok(d)) = (tokens[0].parse::<usize>(), tokens[1].parse::<usize>()) {
                dim = Some(d);
                saw_header = true;
                continue;
            }
        }
        first_data_line = false;
        if tokens.len() < 2 {
            return Err(Error::ParseError {
                line: line_no,
                message: "expected a token followed by vector entries".into(),
            });
        }
        let token = tokens[0].to_string();
        let mut values = Vec::with_capacity(tokens.len() - 1);
        for (j, raw) in tokens[1..].iter().enumerate() {
            let v: f64 = raw.parse().map_err(|_| Error::ParseError {
                line: line_no,
                message: format!("bad number {raw:?}"),
            })?;
            if v < -INGEST_NEGATIVE_TOLERANCE {
                return Err(Error::NegativeValue {
                    token: token.clone(),
                    index: j,
                    value: v,
                });
            }
            values.push(v.max(0.0));
        }
        match dim {
            None => dim = Some(values.len()),
            Some(d) if d != values.len() => {
                return Err(Error::ParseError {
                    line: line_no,
                    message: format!("expected {d} entries, got {}", values.len()),
                });
            }
            Some(_) => {}
        }
        if vectors.insert(token.clone(), values).is_some() {
            warnings.push(format!("duplicate token {token:?} at line {line_no}; last wins"));
        }
    }

    match dim {
        Some(d) if !vectors.is_empty() => Ok((
            WordVectorStore {
                dim: d,
                vectors,
            },
            warnings,
        )),
        _ => Err(Error::EmptyFile),
    }
}

/// L1-normalized distribution of a token's vector.
pub fn to_distribution(store: &WordVectorStore, token: &str) -> Result<Distribution> {
    let raw = store.raw(token)?;
    Distribution::new(raw, store.dim()).map_err(|e| match e {
        Error::ZeroMass { sum } => Error::ZeroMass { sum },
        other => other,
    })
}

/// Diagonal density of a token. With `context_rank` = 0 this embeds the
/// full normalized vector; a positive rank keeps only the largest
/// `context_rank` coordinate projections (weighted by the vector) before
/// normalizing. Non-diagonal constructions are deliberately not invented
/// here.
pub fn to_density(
    store: &WordVectorStore,
    token: &str,
    context_rank: usize,
) -> Result<DensityOperator> {
    let raw = store.raw(token)?;
    let truncated: Vec<f64> = if context_rank == 0 || context_rank >= store.dim() {
        raw.to_vec()
    } else {
        let mut idx: Vec<usize> = (0..raw.len()).collect();
        idx.sort_by(|&a, &b| raw[b].partial_cmp(&raw[a]).unwrap().then(a.cmp(&b)));
        let keep: Vec<usize> = idx.into_iter().take(context_rank).collect();
        (0..raw.len())
            .map(|i| if keep.contains(&i) { raw[i] } else { 0.0 })
            .collect()
    };
    let dist = Distribution::new(&truncated, store.dim())?;
    Ok(DensityOperator::from_diagonal(&dist))
}

/// Smoothed comparison x ⊑_α y ⟺ x ⊑ αx + (1-α)y. Recovers comparability
/// across sectors at the cost of transitivity.
pub fn smooth_leq(spec: &OrderSpec, alpha: f64, x: &Distribution, y: &Distribution) -> Result<bool> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha,
        });
    }
    let target = y.mix(x, alpha)?;
    spec.leq(x, &target)
}

/// Graded restricted order: k·f_i(x)g_i(y) ≤ f_i(y)g_i(x) for all rows.
pub fn graded_leq_classical(
    params: &RioParams,
    k: f64,
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<bool> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::ParameterOutOfRange { name: "k", value: k });
    }
    params.check_feasible()?;
    if params.n() != x.n() || x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: x.n().min(y.n()),
        });
    }
    Ok(params
        .inequality_sides(x, y)
        .into_iter()
        .all(|(lhs, rhs)| k * lhs - rhs <= tol))
}

/// Largest k with k·f_i(x)g_i(y) ≤ f_i(y)g_i(x) for all rows (∞-free:
/// capped at 1, the plain order).
pub fn max_grade_classical(
    params: &RioParams,
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
) -> Result<f64> {
    if params.n() != x.n() || x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: x.n().min(y.n()),
        });
    }
    let mut k: f64 = 1.0;
    for (lhs, rhs) in params.inequality_sides(x, y) {
        if lhs > 0.0 {
            k = k.min((rhs / lhs).max(0.0));
        } else if rhs < 0.0 {
            k = 0.0;
        }
    }
    Ok(k)
}

/// Graded Löwner entailment ρ ≤_k π ⟺ π - kρ ≥ 0.
pub fn graded_loewner(rho: &DensityOperator, pi: &DensityOperator, k: f64) -> Result<bool> {
    if rho.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: rho.n(),
            got: pi.n(),
        });
    }
    if k < 0.0 {
        return Err(Error::ParameterOutOfRange { name: "k", value: k });
    }
    Ok(is_psd(&(pi.matrix() - rho.matrix().scale(k))))
}

/// sup{k ≥ 0 : π - kρ ≥ 0}, the grade of entailment from ρ to π.
///
/// Splitting along supp(ρ) ⊕ ker(ρ), positivity of π - kρ reduces to the
/// Schur complement of the kernel block, whitened by ρ's spectrum; the
/// answer is that matrix's smallest eigenvalue.
pub fn max_grade(rho: &DensityOperator, pi: &DensityOperator) -> Result<f64> {
    if rho.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: rho.n(),
            got: pi.n(),
        });
    }
    let eig = rho.eigensystem();
    let lambda_max = eig.values[0];
    let zero_thr = crate::density::KERNEL_RELATIVE_THRESHOLD * lambda_max.max(0.0);
    let support: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] > zero_thr)
        .collect();
    let kernel: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] <= zero_thr)
        .collect();
    let n = rho.n();
    let pick = |cols: &[usize]| {
        let mut m = DMatrix::zeros(n, cols.len());
        for (c, &i) in cols.iter().enumerate() {
            m.set_column(c, &eig.vectors.column(i));
        }
        m
    };
    let vs = pick(&support);
    let pi_ss = vs.adjoint() * pi.matrix() * &vs;
    let schur = if kernel.is_empty() {
        pi_ss
    } else {
        let vk = pick(&kernel);
        let pi_sk = vs.adjoint() * pi.matrix() * &vk;
        let pi_kk = PositiveOperator::from_valid(vk.adjoint() * pi.matrix() * &vk);
        let kk_eig = pi_kk.eigensystem();
        let kk_max = kk_eig.values.first().copied().unwrap_or(0.0);
        // Pseudo-inverse of the kernel block.
        let k = kernel.len();
        let inv = DMatrix::from_fn(k, k, |i, j| {
            if i == j && kk_eig.values[i] > 1e-12 * kk_max.max(1.0) {
                Complex64::new(1.0 / kk_eig.values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let pinv = &kk_eig.vectors * inv * kk_eig.vectors.adjoint();
        &pi_ss - &pi_sk * pinv * pi_sk.adjoint()
    };
    let s = support.len();
    let whiten = DMatrix::from_fn(s, s, |i, j| {
        if i == j {
            Complex64::new(1.0 / eig.values[support[i]].sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let whitened = PositiveOperator::from_valid(&whiten * schur * &whiten);
    let min = whitened
        .eigensystem()
        .values
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(min.max(0.0))
}

/// Weights for the Sim scores: nonnegative, non-increasing, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimWeights {
    weights: Vec<f64>,
}

impl SimWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights {
                reason: "empty weight vector".into(),
            });
        }
        for w in weights.windows(2) {
            if w[1] > w[0] {
                return Err(Error::InvalidWeights {
                    reason: "weights must be non-increasing".into(),
                });
            }
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidWeights {
                reason: "weights must be nonnegative".into(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights {
                reason: format!("weights sum to {sum}, expected 1"),
            });
        }
        Ok(Self { weights })
    }

    pub fn uniform(count: usize) -> Self {
        Self {
            weights: vec![1.0 / count as f64; count],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.weights
    }
}

fn sign_with_tol(v: f64, tol: f64) -> f64 {
    if v >= tol {
        1.0
    } else if v <= -tol {
        -1.0
    } else {
        0.0
    }
}

/// Sim(x,y) = Σ A_i sign(F_i) with F_i = f_i(x)g_i(y) - f_i(y)g_i(x).
///
/// Orientation: F_i ≤ 0 (the "x below y" direction) contributes +A_i, so
/// a strict x ⊑_A y scores +1 and Sim is antisymmetric on tie-free pairs.
pub fn sim_classical(
    params: &RioParams,
    weights: &SimWeights,
    x: &MonotoneDistribution,
    y: &MonotoneDistribution,
    tol: f64,
) -> Result<f64> {
    if params.n() != x.n() || x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: x.n().min(y.n()),
        });
    }
    if weights.len() != x.n() - 1 {
        return Err(Error::WeightMismatch {
            expected: x.n() - 1,
            got: weights.len(),
        });
    }
    Ok(params
        .inequality_sides(x, y)
        .into_iter()
        .zip(weights.values())
        .map(|((lhs, rhs), &a)| a * sign_with_tol(rhs - lhs, tol))
        .sum())
}

/// Density Sim: quadratic forms of π⁺ρ - ρ⁺π along both eigenbases,
/// Sim(ρ,π) = Σ A_i (sign(s_i) + sign(t_i)) ∈ [-2, 2].
pub fn sim_density(
    weights: &SimWeights,
    rho: &DensityOperator,
    pi: &DensityOperator,
    tol: f64,
) -> Result<f64> {
    if rho.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: rho.n(),
            got: pi.n(),
        });
    }
    if weights.len() != rho.n() {
        return Err(Error::WeightMismatch {
            expected: rho.n(),
            got: weights.len(),
        });
    }
    let diff = pi.matrix().scale(-rho.max_eigenvalue()) + rho.matrix().scale(pi.max_eigenvalue());
    let quad = |basis: &DMatrix<Complex64>, i: usize| -> f64 {
        let col = basis.column(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..diff.nrows() {
            for c in 0..diff.ncols() {
                acc += col[r].conj() * diff[(r, c)] * col[c];
            }
        }
        acc.re
    };
    let v = rho.eigensystem().vectors;
    let w = pi.eigensystem().vectors;
    Ok(weights
        .values()
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (sign_with_tol(quad(&v, i), tol) + sign_with_tol(quad(&w, i), tol)))
        .sum())
}

/// Quantum relative entropy KL(ρ‖π) = Tr(ρ(ln ρ - ln π)), +∞ when
/// supp(ρ) ⊄ supp(π), and the representativeness R = 1/(1+KL) (0 at +∞).
pub fn kl_and_representativeness(
    rho: &DensityOperator,
    pi: &DensityOperator,
) -> Result<(f64, f64)> {
    if rho.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: rho.n(),
            got: pi.n(),
        });
    }
    let kl = kl_divergence(rho, pi)?;
    let r = if kl.is_finite() { 1.0 / (1.0 + kl) } else { 0.0 };
    Ok((kl, r))
}

pub fn kl_divergence(rho: &DensityOperator, pi: &DensityOperator) -> Result<f64> {
    // Support condition: mass of ρ outside supp(π).
    let ker_pi = pi.eigenspace(EigenspaceKind::Kernel);
    if ker_pi.ncols() > 0 {
        let leak = (ker_pi.adjoint() * rho.matrix() * &ker_pi).trace().re;
        if leak > 1e-9 {
            return Ok(f64::INFINITY);
        }
    }
    let eig_rho = rho.eigensystem();
    let lam_max = eig_rho.values[0];
    let thr_rho = crate::density::KERNEL_RELATIVE_THRESHOLD * lam_max.max(0.0);
    let term1: f64 = eig_rho
        .values
        .iter()
        .filter(|&&v| v > thr_rho)
        .map(|&v| v * v.ln())
        .sum();

    let eig_pi = pi.eigensystem();
    let mu_max = eig_pi.values[0];
    let thr_pi = crate::density::KERNEL_RELATIVE_THRESHOLD * mu_max.max(0.0);
    let mut term2 = 0.0;
    for (j, &mu) in eig_pi.values.iter().enumerate() {
        if mu > thr_pi {
            let col = eig_pi.vectors.column(j);
            let mut overlap = Complex64::new(0.0, 0.0);
            for r in 0..rho.n() {
                for c in 0..rho.n() {
                    overlap += col[r].conj() * rho.matrix()[(r, c)] * col[c];
                }
            }
            term2 += mu.ln() * overlap.re;
        }
    }
    Ok((term1 - term2).max(0.0))
}

/// Cosine similarity of the raw (unnormalized) vectors.
pub fn cosine_similarity(store: &WordVectorStore, a: &str, b: &str) -> Result<f64> {
    let va = store.raw(a)?;
    let vb = store.raw(b)?;
    let na: f64 = va.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nb: f64 = vb.iter().map(|v| v * v).sum::<f64>().sqrt();
    if na == 0.0 {
        return Err(Error::ZeroVector {
            token: a.to_string(),
        });
    }
    if nb == 0.0 {
        return Err(Error::ZeroVector {
            token: b.to_string(),
        });
    }
    let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
    Ok(dot / (na * nb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::random_density;
    use crate::orders::{OrderKind, RioPreset, DEFAULT_TOLERANCE};
    use crate::sampling::{sample_simplex, seeded_rng};
    use approx::assert_relative_eq;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn store_of(text: &str) -> WordVectorStore {
        parse_vectors(text).unwrap().0
    }

    #[test]
    fn load_vectors_formats() {
        let s = store_of("dog 1 2 0\nanimal 2 2 1\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s.dim(), 3);

        // word2vec-style header line is skipped.
        let s = store_of("2 3\ndog 1 2 0\nanimal 2 2 1\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s.dim(), 3);

        assert!(matches!(
            parse_vectors("dog 1 2 0\ncat 1 2\n"),
            Err(Error::ParseError { line: 2, .. })
        ));
        assert!(matches!(parse_vectors(""), Err(Error::EmptyFile)));
        assert!(matches!(
            parse_vectors("dog 1 -2 0\n"),
            Err(Error::NegativeValue { index: 1, .. })
        ));

        let (_, warnings) = parse_vectors("dog 1 2 0\ndog 2 2 2\n").unwrap();
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn to_distribution_examples() {
        let s = store_of("a 1 2 1\nb 0 0 0\nc 4 0 0\n");
        assert_eq!(
            to_distribution(&s, "a").unwrap().values(),
            &[0.25, 0.5, 0.25]
        );
        assert!(matches!(
            to_distribution(&s, "b"),
            Err(Error::ZeroMass { .. })
        ));
        assert_eq!(to_distribution(&s, "c").unwrap().values(), &[1.0, 0.0, 0.0]);
        assert!(matches!(
            to_distribution(&s, "missing"),
            Err(Error::UnknownToken { .. })
        ));
    }

    #[test]
    fn to_density_is_diagonal_and_valid() {
        let s = store_of("dog 1 2 1\n");
        let rho = to_density(&s, "dog", 0).unwrap();
        let x = to_distribution(&s, "dog").unwrap();
        assert!(rho.approx_eq(&DensityOperator::from_diagonal(&x), 1e-15));

        // Truncation to the top coordinate keeps only the largest entry.
        let top1 = to_density(&s, "dog", 1).unwrap();
        assert_eq!(top1.matrix()[(1, 1)].re, 1.0);
        assert_eq!(top1.matrix()[(0, 0)].re, 0.0);
    }

    #[test]
    fn smoothing_keeps_the_order_and_breaks_transitivity() {
        let spec = OrderSpec::new(OrderKind::Bayesian);
        let mut rng = seeded_rng(71);
        // α = 0 is the plain order; comparable pairs stay comparable.
        for _ in 0..50 {
            let x = sample_simplex(3, &mut rng);
            let y = sample_simplex(3, &mut rng);
            assert_eq!(
                smooth_leq(&spec, 0.0, &x, &y).unwrap(),
                spec.leq(&x, &y).unwrap()
            );
            if spec.leq(&x, &y).unwrap() {
                for alpha in [0.2, 0.5, 0.8] {
                    assert!(smooth_leq(&spec, alpha, &x, &y).unwrap());
                }
            }
        }
        // A transitivity violation exists at α = 0.5.
        let mut found = false;
        'search: for _ in 0..3000 {
            let x = sample_simplex(3, &mut rng);
            let y = sample_simplex(3, &mut rng);
            let z = sample_simplex(3, &mut rng);
            if smooth_leq(&spec, 0.5, &x, &y).unwrap()
                && smooth_leq(&spec, 0.5, &y, &z).unwrap()
                && !smooth_leq(&spec, 0.5, &x, &z).unwrap()
            {
                found = true;
                break 'search;
            }
        }
        assert!(found, "no smoothed-transitivity violation found");
    }

    #[test]
    fn graded_classical_reduces_to_the_order_at_k_one() {
        let params = RioParams::preset(RioPreset::Bayesian, 3).unwrap();
        let mut rng = seeded_rng(73);
        for _ in 0..100 {
            let (x, _) = sample_simplex(3, &mut rng).retract();
            let (y, _) = sample_simplex(3, &mut rng).retract();
            assert_eq!(
                graded_leq_classical(&params, 1.0, &x, &y, TOL).unwrap(),
                crate::orders::leq_rio(&params, &x, &y, TOL).unwrap()
            );
            // Monotone in k.
            if graded_leq_classical(&params, 0.7, &x, &y, TOL).unwrap() {
                assert!(graded_leq_classical(&params, 0.3, &x, &y, TOL).unwrap());
            }
            // Incomparable pairs become graded-comparable at the max grade.
            let kmax = max_grade_classical(&params, &x, &y).unwrap();
            if kmax > 1e-6 {
                assert!(graded_leq_classical(&params, kmax * 0.999, &x, &y, TOL).unwrap());
            }
            if kmax < 0.999 {
                assert!(!graded_leq_classical(&params, (kmax + 1e-3).min(1.0), &x, &y, TOL)
                    .unwrap());
            }
        }
    }

    #[test]
    fn graded_loewner_examples() {
        let mut rng = seeded_rng(79);
        for _ in 0..30 {
            let rho = random_density(3, &mut rng);
            let pi = random_density(3, &mut rng);
            assert!(graded_loewner(&rho, &pi, 0.0).unwrap());
            assert_relative_eq!(max_grade(&rho, &rho).unwrap(), 1.0, max_relative = 1e-9);
            // Bisection oracle agrees with the eigenvalue route.
            let exact = max_grade(&rho, &pi).unwrap();
            let (mut lo, mut hi) = (0.0_f64, 1.0_f64 + 1e-6);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if graded_loewner(&rho, &pi, mid).unwrap() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            assert!((exact - lo).abs() <= 1e-6, "exact={exact} bisect={lo}");
        }
    }

    #[test]
    fn max_grade_handles_kernels_via_the_schur_complement() {
        // ρ supported on e₁ against a π with strong off-diagonal coupling:
        // the naive restricted ratio (here 1.0) overestimates the grade.
        let rho = DensityOperator::new(DMatrix::from_fn(2, 2, |i, j| {
            Complex64::new(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0)
        }))
        .unwrap();
        let pi = DensityOperator::new(DMatrix::from_fn(2, 2, |i, j| {
            Complex64::new(if i == j { 0.5 } else { 0.45 }, 0.0)
        }))
        .unwrap();
        let exact = max_grade(&rho, &pi).unwrap();
        assert!(exact < 0.2, "exact={exact}");
        assert!(graded_loewner(&rho, &pi, exact * 0.999).unwrap());
        assert!(!graded_loewner(&rho, &pi, exact + 1e-6).unwrap());
    }

    #[test]
    fn max_grade_multiplicative_under_tensor_on_diagonals() {
        let mut rng = seeded_rng(83);
        for _ in 0..50 {
            let r1 = DensityOperator::from_diagonal(&sample_simplex(2, &mut rng));
            let p1 = DensityOperator::from_diagonal(&sample_simplex(2, &mut rng));
            let r2 = DensityOperator::from_diagonal(&sample_simplex(3, &mut rng));
            let p2 = DensityOperator::from_diagonal(&sample_simplex(3, &mut rng));
            let lhs = max_grade(&r1.tensor(&r2), &p1.tensor(&p2)).unwrap();
            let rhs = max_grade(&r1, &p1).unwrap() * max_grade(&r2, &p2).unwrap();
            assert!((lhs - rhs).abs() <= 1e-6, "lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn sim_classical_contract() {
        let params = RioParams::preset(RioPreset::Bayesian, 3).unwrap();
        let w = SimWeights::new(vec![0.6, 0.4]).unwrap();
        let x = MonotoneDistribution::from_raw(&[0.5, 0.3, 0.2], 3).unwrap();
        let y = MonotoneDistribution::from_raw(&[0.6, 0.3, 0.1], 3).unwrap();
        // Strict comparability scores 1; swapping flips the sign.
        assert_eq!(sim_classical(&params, &w, &x, &y, TOL).unwrap(), 1.0);
        assert_eq!(sim_classical(&params, &w, &y, &x, TOL).unwrap(), -1.0);
        assert_eq!(sim_classical(&params, &w, &x, &x, TOL).unwrap(), 0.0);

        assert!(matches!(
            sim_classical(&params, &SimWeights::uniform(3), &x, &y, TOL),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn sim_weights_validation() {
        assert!(SimWeights::new(vec![0.5, 0.5]).is_ok());
        assert!(SimWeights::new(vec![0.4, 0.6]).is_err());
        assert!(SimWeights::new(vec![0.9, 0.2]).is_err());
        assert!(SimWeights::new(vec![1.2, -0.2]).is_err());
    }

    #[test]
    fn sim_density_contract() {
        let mut rng = seeded_rng(89);
        let w = SimWeights::uniform(3);
        for _ in 0..20 {
            let rho = random_density(3, &mut rng);
            assert_eq!(sim_density(&w, &rho, &rho, TOL).unwrap(), 0.0);

            // A strictly comparable pair scores 2.
            let eigvec = rho.eigensystem().vectors.column(0).clone_owned();
            let top = DensityOperator::pure(&eigvec).unwrap();
            let pi = rho.mix(&top, 0.5).unwrap();
            let s = sim_density(&w, &rho, &pi, TOL).unwrap();
            assert!(s > 0.0, "s={s}");
            assert_relative_eq!(
                sim_density(&w, &pi, &rho, TOL).unwrap(),
                -s,
                max_relative = 1e-12
            );

            let sigma = random_density(3, &mut rng);
            let a = sim_density(&w, &rho, &sigma, TOL).unwrap();
            let b = sim_density(&w, &sigma, &rho, TOL).unwrap();
            assert_relative_eq!(a, -b, max_relative = 1e-9);
        }
    }

    #[test]
    fn kl_and_representativeness_examples() {
        let mut rng = seeded_rng(97);
        let rho = random_density(3, &mut rng);
        let (kl, r) = kl_and_representativeness(&rho, &rho).unwrap();
        assert!(kl.abs() < 1e-9);
        assert_relative_eq!(r, 1.0, max_relative = 1e-9);

        // Diagonal case reduces to classical relative entropy.
        let x = Distribution::new(&[0.5, 0.3, 0.2], 3).unwrap();
        let y = Distribution::new(&[0.4, 0.4, 0.2], 3).unwrap();
        let (kl, _) = kl_and_representativeness(
            &DensityOperator::from_diagonal(&x),
            &DensityOperator::from_diagonal(&y),
        )
        .unwrap();
        let classical: f64 = x
            .values()
            .iter()
            .zip(y.values())
            .map(|(&a, &b)| a * (a / b).ln())
            .sum();
        assert_relative_eq!(kl, classical, max_relative = 1e-9);

        // Support violation blows up.
        let supported = Distribution::new(&[0.5, 0.5, 0.0], 3).unwrap();
        let (kl, r) = kl_and_representativeness(
            &DensityOperator::from_diagonal(&x),
            &DensityOperator::from_diagonal(&supported),
        )
        .unwrap();
        assert!(kl.is_infinite());
        assert_eq!(r, 0.0);
    }

    #[test]
    fn cosine_examples() {
        let s = store_of("a 1 1 0\nb 1 0 0\nz 0 0 0\no 0 1 0\n");
        assert_relative_eq!(cosine_similarity(&s, "a", "a").unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            cosine_similarity(&s, "a", "b").unwrap(),
            1.0 / 2.0_f64.sqrt(),
            max_relative = 1e-12
        );
        assert_eq!(cosine_similarity(&s, "b", "o").unwrap(), 0.0);
        assert!(matches!(
            cosine_similarity(&s, "a", "z"),
            Err(Error::ZeroVector { .. })
        ));
    }
}
