//! Positive operators and density matrices on ℂⁿ: validation,
//! eigensystems, tensor products and eigenspace extraction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::simplex::Distribution;

/// Hermitian asymmetry allowed before construction rejects the matrix.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Eigenvalues within this of each other form one eigenspace cluster. The
/// single source of degeneracy semantics on the operator side.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

/// Eigenvalues at or below `1e-10 * λ_max` count as zero (kernel).
pub const KERNEL_RELATIVE_THRESHOLD: f64 = 1e-10;

fn psd_slack(lambda_max: f64) -> f64 {
    1e-9 * lambda_max.max(1.0)
}

/// A Hermitian positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveOperator {
    m: DMatrix<Complex64>,
}

/// A positive operator with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: PositiveOperator,
}

/// Eigenvalues sorted descending with matching orthonormal eigenvector
/// columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

/// Which eigenvalue cluster to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenspaceKind {
    Kernel,
    Top,
    BottomNonzero,
}

pub fn max_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn hermitize(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let adj = m.adjoint();
    let asymmetry = max_norm(&(m - &adj));
    if asymmetry > 2.0 * HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok((m + adj).scale(0.5))
}

impl PositiveOperator {
    /// Validates Hermiticity and positive semidefiniteness, symmetrizing
    /// the input as (M + M†)/2.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let h = hermitize(&m)?;
        let eig = eigen_of(&h);
        let lambda_max = eig.values.first().copied().unwrap_or(0.0);
        let lambda_min = eig.values.last().copied().unwrap_or(0.0);
        if lambda_min < -psd_slack(lambda_max) {
            return Err(Error::NotPsd {
                min_eigenvalue: lambda_min,
            });
        }
        Ok(Self { m: h })
    }

    /// Wraps a matrix already known Hermitian PSD (convex combinations,
    /// tensor products, unitary conjugations of valid operators).
    pub(crate) fn from_valid(m: DMatrix<Complex64>) -> Self {
        Self { m }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            m: DMatrix::zeros(n, n),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        for (i, &v) in diag.iter().enumerate() {
            if v < 0.0 {
                return Err(Error::NegativeEntry { index: i, value: v });
            }
        }
        Ok(Self {
            m: DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(diag[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Eigenvalues descending with orthonormal eigenvectors.
    pub fn eigensystem(&self) -> EigenSystem {
        eigen_of(&self.m)
    }

    /// Largest eigenvalue A⁺.
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigensystem().values[0]
    }

    /// Kronecker product in row-major index convention (i,j) ↦ i·m + j.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.n(), other.n());
        let out = DMatrix::from_fn(n * m, n * m, |r, c| {
            let (i, k) = (r / m, r % m);
            let (j, l) = (c / m, c % m);
            self.m[(i, j)] * other.m[(k, l)]
        });
        Self::from_valid(out)
    }

    /// Orthonormal basis (as matrix columns) of the requested eigenvalue
    /// cluster. May have zero columns.
    pub fn eigenspace(&self, which: EigenspaceKind) -> DMatrix<Complex64> {
        let eig = self.eigensystem();
        let lambda_max = eig.values.first().copied().unwrap_or(0.0);
        let zero_thr = KERNEL_RELATIVE_THRESHOLD * lambda_max.max(0.0);
        let selected: Vec<usize> = match which {
            EigenspaceKind::Kernel => (0..eig.values.len())
                .filter(|&i| eig.values[i] <= zero_thr)
                .collect(),
            EigenspaceKind::Top => (0..eig.values.len())
                .filter(|&i| (eig.values[i] - lambda_max).abs() <= CLUSTER_TOLERANCE)
                .collect(),
            EigenspaceKind::BottomNonzero => {
                let bottom = eig
                    .values
                    .iter()
                    .copied()
                    .filter(|&v| v > zero_thr)
                    .fold(f64::MAX, f64::min);
                if bottom == f64::MAX {
                    vec![]
                } else {
                    (0..eig.values.len())
                        .filter(|&i| {
                            eig.values[i] > zero_thr
                                && (eig.values[i] - bottom).abs() <= CLUSTER_TOLERANCE
                        })
                        .collect()
                }
            }
        };
        let mut out = DMatrix::zeros(self.n(), selected.len());
        for (c, &i) in selected.iter().enumerate() {
            out.set_column(c, &eig.vectors.column(i));
        }
        out
    }

    /// Smallest eigenvalue above the kernel threshold (A⁻), if any.
    pub fn min_nonzero_eigenvalue(&self) -> Option<f64> {
        let eig = self.eigensystem();
        let lambda_max = eig.values.first().copied().unwrap_or(0.0);
        let zero_thr = KERNEL_RELATIVE_THRESHOLD * lambda_max.max(0.0);
        eig.values
            .iter()
            .copied()
            .filter(|&v| v > zero_thr)
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.min(v)))
            })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_valid(self.m.scale(s))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n() == other.n() && max_norm(&(&self.m - &other.m)) <= tol
    }

    pub fn conjugate_by(&self, u: &DMatrix<Complex64>) -> Self {
        Self::from_valid(u * &self.m * u.adjoint())
    }
}

impl DensityOperator {
    /// Validates and trace-normalizes.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let op = PositiveOperator::new(m)?;
        let tr = op.trace();
        if tr <= 0.0 {
            return Err(Error::ZeroTrace { trace: tr });
        }
        Ok(Self { op: op.scale(1.0 / tr) })
    }

    pub(crate) fn from_valid(m: DMatrix<Complex64>) -> Self {
        Self {
            op: PositiveOperator::from_valid(m),
        }
    }

    /// The maximally mixed state ⊥ₙ = Iₙ/n.
    pub fn bottom(n: usize) -> Self {
        Self::from_valid(DMatrix::from_diagonal_element(
            n,
            n,
            Complex64::new(1.0 / n as f64, 0.0),
        ))
    }

    /// The pure state |v⟩⟨v| for a (not necessarily normalized) vector.
    pub fn pure(v: &DVector<Complex64>) -> Result<Self> {
        let norm = v.norm();
        if norm <= 0.0 {
            return Err(Error::ZeroTrace { trace: 0.0 });
        }
        let u = v.unscale(norm);
        Ok(Self::from_valid(&u * u.adjoint()))
    }

    /// Diagonal embedding of a probability distribution.
    pub fn from_diagonal(x: &Distribution) -> Self {
        let n = x.n();
        Self::from_valid(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(x.values()[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.op.n()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.op.matrix()
    }

    pub fn as_positive(&self) -> &PositiveOperator {
        &self.op
    }

    pub fn eigensystem(&self) -> EigenSystem {
        self.op.eigensystem()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.op.max_eigenvalue()
    }

    pub fn eigenspace(&self, which: EigenspaceKind) -> DMatrix<Complex64> {
        self.op.eigenspace(which)
    }

    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange { name: "t", value: t });
        }
        Ok(Self::from_valid(
            self.matrix().scale(1.0 - t) + other.matrix().scale(t),
        ))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            op: self.op.tensor(&other.op),
        }
    }

    pub fn conjugate_by(&self, u: &DMatrix<Complex64>) -> Self {
        Self {
            op: self.op.conjugate_by(u),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.op.approx_eq(&other.op, tol)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        max_norm(&(self.matrix() - other.matrix()))
    }
}

/// Hermitian eigendecomposition, eigenvalues sorted descending.
fn eigen_of(m: &DMatrix<Complex64>) -> EigenSystem {
    let n = m.nrows();
    if n == 0 {
        return EigenSystem {
            values: vec![],
            vectors: DMatrix::zeros(0, 0),
        };
    }
    let se = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (c, &i) in idx.iter().enumerate() {
        vectors.set_column(c, &se.eigenvectors.column(i));
    }
    EigenSystem { values, vectors }
}

/// Is the (Hermitian) matrix positive semidefinite within the relative
/// slack ε = 1e-9·max(1, λ_max)?
pub fn is_psd(m: &DMatrix<Complex64>) -> bool {
    let eig = eigen_of(m);
    match (eig.values.first(), eig.values.last()) {
        (Some(&max), Some(&min)) => min >= -psd_slack(max),
        _ => true,
    }
}

/// A Haar-ish random unitary: orthonormalized complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let gaussian = |rng: &mut dyn rand::RngCore| {
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let mut cols: Vec<DVector<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = DVector::from_fn(n, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
        for c in &cols {
            let proj = c.dotc(&v);
            v -= c.scale_complex(proj);
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v.unscale(norm));
        }
    }
    DMatrix::from_columns(&cols)
}

trait ScaleComplex {
    fn scale_complex(&self, s: Complex64) -> Self;
}

impl ScaleComplex for DVector<Complex64> {
    fn scale_complex(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }
}

/// Random density operator: Dirichlet eigenvalues conjugated by a random
/// unitary.
pub fn random_density(n: usize, rng: &mut impl Rng) -> DensityOperator {
    let spectrum = crate::sampling::sample_simplex(n, rng);
    let u = random_unitary(n, rng);
    DensityOperator::from_diagonal(&spectrum).conjugate_by(&u)
}

/// Parses the matrix text format: first line `n`, then n rows of n
/// whitespace-separated entries like `0.5`, `0.5+0.25j` or `-0.1j`.
pub fn parse_matrix(text: &str) -> Result<DMatrix<Complex64>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, first) = lines.next().ok_or(Error::EmptyFile)?;
    let n: usize = first.trim().parse().map_err(|_| Error::ParseError {
        line: ln + 1,
        message: format!("expected dimension, got {first:?}"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines.next().ok_or(Error::ParseError {
            line: 0,
            message: "unexpected end of matrix".into(),
        })?;
        let row: Vec<Complex64> = line
            .split_whitespace()
            .map(|tok| parse_complex(tok).ok_or(Error::ParseError {
                line: ln + 1,
                message: format!("bad complex entry {tok:?}"),
            }))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::ParseError {
                line: ln + 1,
                message: format!("expected {n} entries, got {}", row.len()),
            });
        }
        rows.push(row);
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// `a`, `a+bj`, `a-bj` or `bj`; exponents in either part are fine.
pub fn parse_complex(tok: &str) -> Option<Complex64> {
    let tok = tok.trim();
    if let Some(body) = tok.strip_suffix('j') {
        // Split re and im at the last +/- that is not an exponent sign or
        // the leading sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().ok()?;
                let im_str = &body[i..];
                let im: f64 = if im_str == "+" || im_str == "-" {
                    format!("{im_str}1").parse().ok()?
                } else {
                    im_str.parse().ok()?
                };
                Some(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() || body == "+" || body == "-" {
                    format!("{body}1").parse().ok()?
                } else {
                    body.parse().ok()?
                };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        tok.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}

pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{:.12e}", c.re)
    } else if c.im < 0.0 {
        format!("{:.12e}-{:.12e}j", c.re, -c.im)
    } else {
        format!("{:.12e}+{:.12e}j", c.re, c.im)
    }
}
