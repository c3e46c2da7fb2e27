//! Single-mode boson operators on a truncated Fock basis, the coherent
//! (displacement) and squeezing Bogoliubov transformations, and the two
//! oscillators those transformations diagonalize exactly.

use thiserror::Error;

use crate::numerics::{Matrix, SymMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BosonError {
    #[error("displacement {z} needs z² ≤ M/4 but cutoff is M = {cutoff}")]
    CutoffTooSmall { z: f64, cutoff: usize },
    #[error("squeezing coupling λ = {lambda} must satisfy |λ| < 1/2")]
    SqueezeOutOfRange { lambda: f64 },
    #[error("parameter is not finite")]
    NonFinite,
}

/// Highest retained occupation number `M`; the basis is `|0⟩..|M⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockCutoff(pub usize);

impl FockCutoff {
    pub const DEFAULT: FockCutoff = FockCutoff(100);

    pub fn max_occupation(self) -> usize {
        self.0
    }

    /// Number of basis states, `M + 1`.
    pub fn dim(self) -> usize {
        self.0 + 1
    }
}

impl Default for FockCutoff {
    fn default() -> Self {
        FockCutoff::DEFAULT
    }
}

/// Truncated `b†`, `b` and `b†b`.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub create: Matrix,
    pub annihilate: Matrix,
    pub number: Matrix,
}

pub fn ladder_matrices(cutoff: FockCutoff) -> Ladder {
    let dim = cutoff.dim();
    let mut create = Matrix::zeros(dim, dim);
    for n in 0..cutoff.max_occupation() {
        create[(n + 1, n)] = ((n + 1) as f64).sqrt();
    }
    let annihilate = create.transpose();
    let number = Matrix::from_fn(dim, dim, |i, j| if i == j { i as f64 } else { 0.0 });
    Ladder {
        create,
        annihilate,
        number,
    }
}

/// Real displacement amplitude. The coherent boson is `a = b − z` and its
/// vacuum is the coherent state `|z⟩ = D(z)|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementParams {
    pub z: f64,
}

impl DisplacementParams {
    pub fn new(z: f64) -> Result<Self, BosonError> {
        if !z.is_finite() {
            return Err(BosonError::NonFinite);
        }
        Ok(DisplacementParams { z })
    }
}

/// `exp(z·(b† − b))` on the truncated basis.
///
/// Column `n` is the coherent-boson number state `|n; z⟩` expressed in the
/// original Fock basis. Computed by scaling and squaring a Taylor series of
/// the truncated generator, which is antisymmetric, so the result is
/// orthogonal to rounding.
pub fn displacement_matrix(params: DisplacementParams, cutoff: FockCutoff) -> Result<Matrix, BosonError> {
    let z = params.z;
    if !z.is_finite() {
        return Err(BosonError::NonFinite);
    }
    if z * z > cutoff.max_occupation() as f64 / 4.0 {
        return Err(BosonError::CutoffTooSmall {
            z,
            cutoff: cutoff.max_occupation(),
        });
    }
    let dim = cutoff.dim();
    if z == 0.0 {
        return Ok(Matrix::identity(dim));
    }
    let ladder = ladder_matrices(cutoff);
    let generator = ladder.create.sub(&ladder.annihilate).scaled(z);

    let norm = generator.norm_one();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) >= 0.5 {
        squarings += 1;
    }
    let scaled = generator.scaled(1.0 / 2f64.powi(squarings as i32));

    let mut sum = Matrix::identity(dim);
    let mut term = Matrix::identity(dim);
    for k in 1..=40 {
        term = term.matmul(&scaled).scaled(1.0 / k as f64);
        sum = sum.add(&term);
        if term.max_abs() <= f64::EPSILON * 1e-2 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// Parameters of the squeezing transformation that diagonalizes
/// `b†b + 1/2 + λ(b†² + b²)`.
///
/// Only `lambda`, `sigma` and `omega` drive any computation. The polar
/// form `(rho, theta, beta)` of the general squeeze operator is filled in
/// for the real case (`σ = −e^{−iθ} tanh(ρ/2)`, `β = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    pub lambda: f64,
    pub sigma: f64,
    pub omega: f64,
    pub rho: f64,
    pub theta: f64,
    pub beta: f64,
}

/// Physical-branch squeeze parameters: `Ω = √(1 − 4λ²)`,
/// `σ = (1 − Ω)/(2λ)` (zero at `λ = 0`). The other root of
/// `λσ² − σ + λ = 0` has `|σ| > 1` and gives an oscillator unbounded below.
pub fn squeeze_params(lambda: f64) -> Result<SqueezeParams, BosonError> {
    if !lambda.is_finite() {
        return Err(BosonError::NonFinite);
    }
    if lambda.abs() >= 0.5 {
        return Err(BosonError::SqueezeOutOfRange { lambda });
    }
    let omega = (1.0 - 4.0 * lambda * lambda).sqrt();
    // (1 − Ω)/(2λ) rewritten as 2λ/(1 + Ω) to avoid cancellation near λ = 0
    let sigma = 2.0 * lambda / (1.0 + omega);
    let rho = 2.0 * sigma.abs().atanh();
    let theta = if sigma > 0.0 { std::f64::consts::PI } else { 0.0 };
    Ok(SqueezeParams {
        lambda,
        sigma,
        omega,
        rho,
        theta,
        beta: 0.0,
    })
}

/// `b†b + λ(b† + b) + 1/2 + λ²`, the oscillator with its centre shifted
/// by `−√2·λ`. Exact spectrum `n + 1/2`.
pub fn displaced_osc_hamiltonian(lambda: f64, cutoff: FockCutoff) -> SymMatrix {
    let dim = cutoff.dim();
    let mut h = SymMatrix::zeros(dim);
    for n in 0..dim {
        h.set(n, n, n as f64 + 0.5 + lambda * lambda);
        if n + 1 < dim {
            h.set(n, n + 1, lambda * ((n + 1) as f64).sqrt());
        }
    }
    h
}

/// `b†b + 1/2 + λ(b†² + b²)`. Exact spectrum `(n + 1/2)·√(1 − 4λ²)`.
pub fn squeezed_osc_hamiltonian(lambda: f64, cutoff: FockCutoff) -> Result<SymMatrix, BosonError> {
    squeeze_params(lambda)?;
    let dim = cutoff.dim();
    let mut h = SymMatrix::zeros(dim);
    for n in 0..dim {
        h.set(n, n, n as f64 + 0.5);
        if n + 2 < dim {
            h.set(n, n + 2, lambda * (((n + 1) * (n + 2)) as f64).sqrt());
        }
    }
    Ok(h)
}
