//! Orders on density and positive operators: the Löwner order, its two
//! eigenvalue renormalizations, the four extensions to PO(n), the lift of
//! classical orders to commuting pairs, and the tensor-composition suite.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::density::{is_psd, max_norm, random_density, random_unitary, DensityOperator, EigenspaceKind, PositiveOperator};
use crate::error::{Error, Result};
use crate::orders::OrderSpec;
use crate::sampling::{sample_simplex, seeded_rng};
use crate::simplex::Distribution;

/// Trace comparisons in the PO(n) extensions use this slack.
pub const TRACE_TOLERANCE: f64 = 1e-9;

/// Subspace tests accept principal angles up to this many radians.
pub const PRINCIPAL_ANGLE_TOLERANCE: f64 = 1e-6;

/// Operators with every entry below this are treated as the zero operator.
const OPERATOR_ZERO_TOLERANCE: f64 = 1e-12;

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, got: b });
    }
    Ok(())
}

/// Singular values of a (possibly rectangular) complex matrix, descending,
/// via the Hermitian eigensystem of the Gram matrix.
fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return vec![];
    }
    let gram = PositiveOperator::from_valid(m.adjoint() * m);
    gram.eigensystem()
        .values
        .into_iter()
        .map(|v| v.max(0.0).sqrt())
        .collect()
}

/// Is span(u) contained in span(w)? Columns must be orthonormal bases.
pub fn subspace_contained(u: &DMatrix<Complex64>, w: &DMatrix<Complex64>) -> bool {
    if u.ncols() == 0 {
        return true;
    }
    if u.ncols() > w.ncols() {
        return false;
    }
    let sv = singular_values(&(w.adjoint() * u));
    let min = sv.last().copied().unwrap_or(0.0);
    min >= PRINCIPAL_ANGLE_TOLERANCE.cos()
}

/// Do the spanned subspaces intersect nontrivially (smallest principal
/// angle essentially zero)?
pub fn subspaces_intersect(u: &DMatrix<Complex64>, w: &DMatrix<Complex64>) -> bool {
    if u.ncols() == 0 || w.ncols() == 0 {
        return false;
    }
    let sv = singular_values(&(w.adjoint() * u));
    sv.first().copied().unwrap_or(0.0) >= PRINCIPAL_ANGLE_TOLERANCE.cos()
}

/// Löwner order A ⊑_L B ⟺ B - A ≥ 0 (dual reverses the difference).
pub fn leq_loewner(a: &PositiveOperator, b: &PositiveOperator, dual: bool) -> Result<bool> {
    check_dims(a.n(), b.n())?;
    let diff = if dual {
        a.matrix() - b.matrix()
    } else {
        b.matrix() - a.matrix()
    };
    Ok(is_psd(&diff))
}

/// Maximum eigenvalue order: ρ ⊑⁺ π ⟺ π⁺ρ - ρ⁺π ≥ 0.
pub fn leq_plus_density(rho: &DensityOperator, pi: &DensityOperator) -> Result<bool> {
    check_dims(rho.n(), pi.n())?;
    let rp = rho.max_eigenvalue();
    let pp = pi.max_eigenvalue();
    let diff = rho.matrix().scale(pp) - pi.matrix().scale(rp);
    Ok(is_psd(&diff))
}

/// Minimum eigenvalue order, by kernel cases:
/// ker(ρ) = ker(π) and ρ⁻π - π⁻ρ ≥ 0, or
/// ker(ρ) ⊂ ker(π) and L⁻(ρ) ∩ ker(π) ≠ {0}.
pub fn leq_minus_density(rho: &DensityOperator, pi: &DensityOperator) -> Result<bool> {
    check_dims(rho.n(), pi.n())?;
    let ker_rho = rho.eigenspace(EigenspaceKind::Kernel);
    let ker_pi = pi.eigenspace(EigenspaceKind::Kernel);
    let contained = subspace_contained(&ker_rho, &ker_pi);
    if ker_rho.ncols() == ker_pi.ncols() {
        if !contained {
            return Ok(false);
        }
        let rm = rho
            .as_positive()
            .min_nonzero_eigenvalue()
            .expect("density operators have a nonzero eigenvalue");
        let pm = pi
            .as_positive()
            .min_nonzero_eigenvalue()
            .expect("density operators have a nonzero eigenvalue");
        let diff = pi.matrix().scale(rm) - rho.matrix().scale(pm);
        Ok(is_psd(&diff))
    } else if contained && ker_rho.ncols() < ker_pi.ncols() {
        let bottom = rho.eigenspace(EigenspaceKind::BottomNonzero);
        Ok(subspaces_intersect(&bottom, &ker_pi))
    } else {
        Ok(false)
    }
}

/// The four extensions of the maximum eigenvalue order to PO(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtensionKind {
    Minimal,
    Intuitive,
    Maximal,
    Natural,
}

fn is_zero_operator(a: &PositiveOperator) -> bool {
    max_norm(a.matrix()) <= OPERATOR_ZERO_TOLERANCE
}

/// Zero-extension comparisons short-circuit before dividing by A⁺.
pub fn leq_extension(
    kind: ExtensionKind,
    a: &PositiveOperator,
    b: &PositiveOperator,
) -> Result<bool> {
    check_dims(a.n(), b.n())?;
    let a_zero = is_zero_operator(a);
    let b_zero = is_zero_operator(b);
    match kind {
        ExtensionKind::Minimal => {
            // (0,0) is an isolated point of the extension.
            if a_zero || b_zero {
                return Ok(a_zero && b_zero);
            }
            if (a.trace() - b.trace()).abs() > TRACE_TOLERANCE {
                return Ok(false);
            }
            let rho = DensityOperator::new(a.matrix().clone())?;
            let pi = DensityOperator::new(b.matrix().clone())?;
            leq_plus_density(&rho, &pi)
        }
        ExtensionKind::Intuitive => {
            // Zero is the unique maximal element.
            if b_zero {
                return Ok(true);
            }
            if a_zero {
                return Ok(false);
            }
            let left = b.matrix().scale(b.trace() / b.max_eigenvalue());
            let right = a.matrix().scale(a.trace() / a.max_eigenvalue());
            Ok(is_psd(&(right - left)))
        }
        ExtensionKind::Maximal => {
            if a_zero || b_zero {
                // Tr(A) > Tr(B) = 0 with the kernel condition vacuous.
                return Ok((a_zero && b_zero) || (!a_zero && b_zero));
            }
            let (ta, tb) = (a.trace(), b.trace());
            if (ta - tb).abs() <= TRACE_TOLERANCE {
                let diff = a.matrix().scale(1.0 / a.max_eigenvalue())
                    - b.matrix().scale(1.0 / b.max_eigenvalue());
                Ok(is_psd(&diff))
            } else if ta > tb + TRACE_TOLERANCE {
                Ok(subspace_contained(
                    &a.eigenspace(EigenspaceKind::Kernel),
                    &b.eigenspace(EigenspaceKind::Kernel),
                ))
            } else {
                // Tr(A) < Tr(B) is incomparable in this extension.
                Ok(false)
            }
        }
        ExtensionKind::Natural => {
            if b_zero {
                return Ok(true);
            }
            if a_zero {
                return Ok(false);
            }
            if a.trace() < b.trace() - TRACE_TOLERANCE {
                return Ok(false);
            }
            let diff = a.matrix().scale(1.0 / a.max_eigenvalue())
                - b.matrix().scale(1.0 / b.max_eigenvalue());
            Ok(is_psd(&diff))
        }
    }
}

use crate::simplex::snap_clusters;

/// Max-norm of the commutator ρπ - πρ.
pub fn commutator_norm(rho: &DensityOperator, pi: &DensityOperator) -> f64 {
    max_norm(&(rho.matrix() * pi.matrix() - pi.matrix() * rho.matrix()))
}

const COMMUTATOR_TOLERANCE: f64 = 1e-9;
const DIAGONALIZATION_RETRIES: usize = 5;

/// Lifts a classical order to DO(n): true iff ρ and π commute and the
/// order holds on their joint eigenvalue distributions.
///
/// A simultaneous eigenbasis is found by diagonalizing ρ + cπ for a
/// generic c (fixed internal seed, retried on degeneracy).
pub fn lift_classical_to_density(
    spec: &OrderSpec,
    rho: &DensityOperator,
    pi: &DensityOperator,
) -> Result<bool> {
    check_dims(rho.n(), pi.n())?;
    if commutator_norm(rho, pi) > COMMUTATOR_TOLERANCE {
        return Ok(false);
    }
    let n = rho.n();
    let mut rng = seeded_rng(0x0c0e_11a7);
    for _ in 0..DIAGONALIZATION_RETRIES {
        let c: f64 = rng.gen_range(0.05..0.95);
        let combined = PositiveOperator::from_valid(
            rho.matrix().scale(1.0 - c) + pi.matrix().scale(c),
        );
        let basis = combined.eigensystem().vectors;
        let d_rho = basis.adjoint() * rho.matrix() * &basis;
        let d_pi = basis.adjoint() * pi.matrix() * &basis;
        let off = |m: &DMatrix<Complex64>| {
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        worst = worst.max(m[(i, j)].norm());
                    }
                }
            }
            worst
        };
        if off(&d_rho) > COMMUTATOR_TOLERANCE || off(&d_pi) > COMMUTATOR_TOLERANCE {
            continue;
        }
        let diag = |m: &DMatrix<Complex64>| -> Result<Distribution> {
            let v: Vec<f64> = (0..n).map(|i| m[(i, i)].re.max(0.0)).collect();
            Distribution::new(&snap_clusters(&v, crate::density::CLUSTER_TOLERANCE), n)
        };
        return spec.leq(&diag(&d_rho)?, &diag(&d_pi)?);
    }
    Err(Error::ConvergenceFailure)
}

/// Which order family the composition suite exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompositionOrder {
    Loewner,
    Plus,
    Minus,
}

impl CompositionOrder {
    pub fn name(&self) -> &'static str {
        match self {
            CompositionOrder::Loewner => "loewner",
            CompositionOrder::Plus => "dplus",
            CompositionOrder::Minus => "dminus",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub order: &'static str,
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub tensor_trials: usize,
    pub tensor_violations: usize,
    pub embedding_trials: usize,
    pub embedding_violations: usize,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.tensor_violations == 0 && self.embedding_violations == 0
    }
}

/// Projector onto a top eigenvector of ρ, as a density operator.
fn top_projector(rho: &DensityOperator) -> DensityOperator {
    let eig = rho.eigensystem();
    let v = eig.vectors.column(0).clone_owned();
    DensityOperator::pure(&v).expect("eigenvector is normalized")
}

/// A pair ρ ⊑ π by construction, conjugated into a random basis.
fn comparable_density_pair(
    order: CompositionOrder,
    n: usize,
    rng: &mut impl Rng,
) -> (DensityOperator, DensityOperator) {
    let base = random_density(n, rng);
    let t: f64 = rng.gen_range(0.1..0.9);
    match order {
        CompositionOrder::Loewner => unreachable!("Löwner pairs are built on PO(n)"),
        CompositionOrder::Plus => {
            let top = top_projector(&base);
            let pi = base.mix(&top, t).expect("same n");
            (base, pi)
        }
        CompositionOrder::Minus => {
            // Mixing toward the aligned pure state keeps ⊑⁻ comparability;
            // with probability 1/2 push all the way to the kernel case.
            let top = top_projector(&base);
            let pi = base.mix(&top, t).expect("same n");
            if rng.gen::<bool>() {
                (pi, top)
            } else {
                (base, pi)
            }
        }
    }
}

fn comparable_positive_pair(n: usize, rng: &mut impl Rng) -> (PositiveOperator, PositiveOperator) {
    let scale_a: f64 = rng.gen_range(0.1..2.0);
    let scale_b: f64 = rng.gen_range(0.0..1.0);
    let a = random_density(n, rng).as_positive().scale(scale_a);
    let incr = random_density(n, rng).as_positive().scale(scale_b);
    let b = PositiveOperator::from_valid(a.matrix() + incr.matrix());
    (a, b)
}

/// Samples comparable pairs in each factor and asserts the tensored pair
/// is comparable; also checks that the right-tensor map R_κ is an order
/// embedding in both directions.
pub fn composition_suite(
    order: CompositionOrder,
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
) -> CompositionReport {
    let mut rng = seeded_rng(seed);
    let mut tensor_trials = 0;
    let mut tensor_violations = 0;
    let mut embedding_trials = 0;
    let mut embedding_violations = 0;

    for _ in 0..samples {
        match order {
            CompositionOrder::Loewner => {
                let (a1, b1) = comparable_positive_pair(n, &mut rng);
                let (a2, b2) = comparable_positive_pair(m, &mut rng);
                tensor_trials += 1;
                if !leq_loewner(&a1.tensor(&a2), &b1.tensor(&b2), false).unwrap_or(false) {
                    tensor_violations += 1;
                }
                // R_κ embedding, tested on a comparable and a random pair.
                let kappa = random_density(m, &mut rng).as_positive().scale(rng.gen_range(0.1..2.0));
                let c = random_density(n, &mut rng).as_positive().clone();
                let d = random_density(n, &mut rng).as_positive().clone();
                for (p, q) in [(&a1, &b1), (&c, &d)] {
                    embedding_trials += 1;
                    let plain = leq_loewner(p, q, false).unwrap();
                    let tensored =
                        leq_loewner(&p.tensor(&kappa), &q.tensor(&kappa), false).unwrap();
                    if plain != tensored {
                        embedding_violations += 1;
                    }
                }
            }
            CompositionOrder::Plus | CompositionOrder::Minus => {
                let leq = |a: &DensityOperator, b: &DensityOperator| match order {
                    CompositionOrder::Plus => leq_plus_density(a, b).unwrap(),
                    CompositionOrder::Minus => leq_minus_density(a, b).unwrap(),
                    CompositionOrder::Loewner => unreachable!(),
                };
                let (r1, p1) = comparable_density_pair(order, n, &mut rng);
                let (r2, p2) = comparable_density_pair(order, m, &mut rng);
                tensor_trials += 1;
                if !(leq(&r1, &p1) && leq(&r2, &p2)) || !leq(&r1.tensor(&r2), &p1.tensor(&p2)) {
                    tensor_violations += 1;
                }
                let kappa = random_density(m, &mut rng);
                let c = random_density(n, &mut rng);
                let d = random_density(n, &mut rng);
                for (p, q) in [(&r1, &p1), (&c, &d)] {
                    embedding_trials += 1;
                    let plain = leq(p, q);
                    let tensored = leq(&p.tensor(&kappa), &q.tensor(&kappa));
                    if plain != tensored {
                        embedding_violations += 1;
                    }
                }
            }
        }
    }

    CompositionReport {
        order: order.name(),
        n,
        m,
        samples,
        tensor_trials,
        tensor_violations,
        embedding_trials,
        embedding_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::OrderKind;

    fn real_density(rows: &[&[f64]]) -> DensityOperator {
        let n = rows.len();
        DensityOperator::new(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
        .unwrap()
    }

    fn diag_positive(d: &[f64]) -> PositiveOperator {
        PositiveOperator::from_real_diagonal(d).unwrap()
    }

    #[test]
    fn loewner_examples() {
        let a = diag_positive(&[2.0, 1.0]);
        let b = diag_positive(&[3.0, 1.0]);
        assert!(leq_loewner(&a, &a, false).unwrap());
        assert!(leq_loewner(&a, &b, false).unwrap());
        assert!(!leq_loewner(&b, &a, false).unwrap());
        assert!(leq_loewner(&b, &a, true).unwrap());

        // On DO(n) the Löwner order is trivial.
        let mut rng = seeded_rng(31);
        for _ in 0..20 {
            let rho = random_density(3, &mut rng);
            let pi = random_density(3, &mut rng);
            if leq_loewner(rho.as_positive(), pi.as_positive(), false).unwrap() {
                assert!(rho.approx_eq(&pi, 1e-7));
            }
        }
    }

    #[test]
    fn plus_density_examples() {
        let b2 = DensityOperator::bottom(2);
        let pure = real_density(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(leq_plus_density(&b2, &pure).unwrap());
        assert!(leq_plus_density(&pure, &pure).unwrap());
        assert!(!leq_plus_density(&pure, &b2).unwrap());
    }

    #[test]
    fn plus_kernel_and_top_inclusions_on_comparable_pairs() {
        let mut rng = seeded_rng(17);
        for _ in 0..50 {
            let (rho, pi) = comparable_density_pair(CompositionOrder::Plus, 3, &mut rng);
            assert!(leq_plus_density(&rho, &pi).unwrap());
            assert!(subspace_contained(
                &rho.eigenspace(EigenspaceKind::Kernel),
                &pi.eigenspace(EigenspaceKind::Kernel)
            ));
            assert!(subspace_contained(
                &pi.eigenspace(EigenspaceKind::Top),
                &rho.eigenspace(EigenspaceKind::Top)
            ));
        }
    }

    #[test]
    fn minus_density_examples() {
        let mut rng = seeded_rng(23);
        let rho = random_density(3, &mut rng);
        assert!(leq_minus_density(&rho, &rho).unwrap());

        // ⊥ₙ is least: L⁻(⊥ₙ) is the whole space.
        let b3 = DensityOperator::bottom(3);
        for _ in 0..20 {
            let pi = random_density(3, &mut rng);
            assert!(leq_minus_density(&b3, &pi).unwrap());
        }
        let degenerate = real_density(&[
            &[0.5, 0.0, 0.0],
            &[0.0, 0.5, 0.0],
            &[0.0, 0.0, 0.0],
        ]);
        assert!(leq_minus_density(&b3, &degenerate).unwrap());
    }

    #[test]
    fn minus_density_agrees_with_simplex_on_diagonals() {
        use crate::orders::leq_lowner_minus_simplex;
        let mut rng = seeded_rng(29);
        let cases: Vec<(Distribution, Distribution)> = (0..60)
            .map(|i| {
                let x = sample_simplex(3, &mut rng);
                if i % 3 == 0 {
                    let (mx, _) = x.retract();
                    let top = Distribution::top(3, 1).unwrap();
                    let z = mx.as_distribution().mix(&top, 0.4).unwrap();
                    (mx.as_distribution().clone(), z)
                } else {
                    (x, sample_simplex(3, &mut rng))
                }
            })
            .collect();
        for (x, y) in cases {
            let lhs = leq_minus_density(
                &DensityOperator::from_diagonal(&x),
                &DensityOperator::from_diagonal(&y),
            )
            .unwrap();
            let rhs = leq_lowner_minus_simplex(&x, &y, 1e-12).unwrap();
            assert_eq!(lhs, rhs, "x={x:?} y={y:?}");
        }
    }

    #[test]
    fn extension_fixtures_from_the_text() {
        // Intuitive extension fails mixing: A=diag(2,3), B=diag(2,1).
        let a = diag_positive(&[2.0, 3.0]);
        let b = diag_positive(&[2.0, 1.0]);
        let c = diag_positive(&[2.0, 2.0]);
        assert!(leq_extension(ExtensionKind::Intuitive, &a, &b).unwrap());
        assert!(!leq_extension(ExtensionKind::Intuitive, &a, &c).unwrap());

        // Natural vs dual Löwner on diag(3,1) / diag(2,1).
        let a = diag_positive(&[3.0, 1.0]);
        let b = diag_positive(&[2.0, 1.0]);
        assert!(leq_loewner(&a, &b, true).unwrap());
        assert!(!leq_extension(ExtensionKind::Natural, &a, &b).unwrap());

        // ⊥₂ (as ½I) vs diag(1,0): natural holds, dual Löwner does not.
        let half_eye = diag_positive(&[0.5, 0.5]);
        let proj = diag_positive(&[1.0, 0.0]);
        assert!(leq_extension(ExtensionKind::Natural, &half_eye, &proj).unwrap());
        assert!(!leq_loewner(&half_eye, &proj, true).unwrap());
    }

    #[test]
    fn extension_zero_operator_cases() {
        let zero = PositiveOperator::zero(2);
        let a = diag_positive(&[1.0, 0.5]);
        for kind in [ExtensionKind::Minimal, ExtensionKind::Intuitive, ExtensionKind::Maximal, ExtensionKind::Natural] {
            assert!(leq_extension(kind, &zero, &zero).unwrap());
        }
        // Zero is maximal for the intuitive, maximal and natural extensions,
        // and isolated for the minimal one.
        assert!(leq_extension(ExtensionKind::Intuitive, &a, &zero).unwrap());
        assert!(leq_extension(ExtensionKind::Maximal, &a, &zero).unwrap());
        assert!(leq_extension(ExtensionKind::Natural, &a, &zero).unwrap());
        assert!(!leq_extension(ExtensionKind::Minimal, &a, &zero).unwrap());
        assert!(!leq_extension(ExtensionKind::Natural, &zero, &a).unwrap());
    }

    #[test]
    fn minimal_extension_glues_density_sheets() {
        let a = diag_positive(&[0.9, 0.6]);
        let b = diag_positive(&[1.2, 0.3]);
        assert!(leq_extension(ExtensionKind::Minimal, &a, &b).unwrap());
        // Different traces are never minimal-comparable.
        let c = diag_positive(&[1.0, 1.0]);
        assert!(!leq_extension(ExtensionKind::Minimal, &a, &c).unwrap());
    }

    #[test]
    fn lift_classical_examples() {
        let spec = OrderSpec::new(OrderKind::Bayesian);
        let b3 = DensityOperator::bottom(3);
        let mut rng = seeded_rng(41);
        for _ in 0..10 {
            let pi = random_density(3, &mut rng);
            assert!(lift_classical_to_density(&spec, &b3, &pi).unwrap());
        }

        // Non-commuting pairs are incomparable.
        let rho = real_density(&[&[0.7, 0.0], &[0.0, 0.3]]);
        let pi = real_density(&[&[0.5, 0.2], &[0.2, 0.5]]);
        assert!(commutator_norm(&rho, &pi) > 1e-9);
        assert!(!lift_classical_to_density(&spec, &rho, &pi).unwrap());

        // Diagonal pairs reduce exactly to the classical order.
        let x = Distribution::new(&[0.5, 0.3, 0.2], 3).unwrap();
        let y = Distribution::new(&[0.6, 0.3, 0.1], 3).unwrap();
        assert!(lift_classical_to_density(
            &spec,
            &DensityOperator::from_diagonal(&x),
            &DensityOperator::from_diagonal(&y)
        )
        .unwrap());
        assert!(spec.leq(&x, &y).unwrap());
    }

    #[test]
    fn composition_suites_pass_at_desk_scale() {
        for order in [CompositionOrder::Loewner, CompositionOrder::Plus, CompositionOrder::Minus] {
            let report = composition_suite(order, 2, 2, 200, 11);
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn unitary_conjugation_invariance() {
        let mut rng = seeded_rng(53);
        for _ in 0..40 {
            let rho = random_density(3, &mut rng);
            let pi = if rng.gen::<bool>() {
                comparable_density_pair(CompositionOrder::Plus, 3, &mut rng).1
            } else {
                random_density(3, &mut rng)
            };
            let u = random_unitary(3, &mut rng);
            let (ur, up) = (rho.conjugate_by(&u), pi.conjugate_by(&u));
            assert_eq!(
                leq_plus_density(&rho, &pi).unwrap(),
                leq_plus_density(&ur, &up).unwrap()
            );
            assert_eq!(
                leq_minus_density(&rho, &pi).unwrap(),
                leq_minus_density(&ur, &up).unwrap()
            );
            assert_eq!(
                leq_loewner(rho.as_positive(), pi.as_positive(), false).unwrap(),
                leq_loewner(ur.as_positive(), up.as_positive(), false).unwrap()
            );
        }
    }

    #[test]
    fn fixed_point_of_conjugation_on_comparable_rotations() {
        // ρ ⊑ UρU† forces UρU† = ρ; search for counterexamples.
        let mut rng = seeded_rng(59);
        for _ in 0..60 {
            let rho = random_density(3, &mut rng);
            let u = random_unitary(3, &mut rng);
            let rotated = rho.conjugate_by(&u);
            if leq_plus_density(&rho, &rotated).unwrap() {
                assert!(rho.approx_eq(&rotated, 1e-7));
            }
        }
    }

    #[test]
    fn plus_mixing_endpoints_stay_comparable() {
        let mut rng = seeded_rng(61);
        for _ in 0..30 {
            let (rho, pi) = comparable_density_pair(CompositionOrder::Plus, 3, &mut rng);
            for k in 1..10 {
                let z = rho.mix(&pi, k as f64 / 10.0).unwrap();
                assert!(leq_plus_density(&rho, &z).unwrap());
                assert!(leq_plus_density(&z, &pi).unwrap());
            }
        }
    }

    #[test]
    fn plus_bottom_least_and_pure_states_maximal() {
        let mut rng = seeded_rng(67);
        let b3 = DensityOperator::bottom(3);
        for _ in 0..30 {
            let rho = random_density(3, &mut rng);
            assert!(leq_plus_density(&b3, &rho).unwrap());
            let pure = top_projector(&rho);
            if leq_plus_density(&pure, &rho).unwrap() {
                assert!(pure.approx_eq(&rho, 1e-7));
            }
        }
    }
}
