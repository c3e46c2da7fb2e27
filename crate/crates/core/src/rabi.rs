//! The Rabi Hamiltonian on the truncated Fock ⊗ spin basis, its parity
//! blocks, coupling sweeps, and detection of opposite-parity level
//! crossings.
//!
//! Basis states are ordered `(n, spin)` lexicographically with spin-up
//! (σ_z = +1) first, so state `(n, s)` has index `2n + s`.

use thiserror::Error;

use crate::boson::FockCutoff;
use crate::numerics::{sym_eigvals, NumericsError, SymMatrix};

/// Energy difference at which a crossing counts as located.
pub const CROSSING_TOL: f64 = 1e-9;
/// Interior samples per grid cell used to confirm a crossing is isolated.
const ISOLATION_SAMPLES: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RabiError {
    #[error("mode frequency ω must be positive and finite, got {0}")]
    InvalidOmega(f64),
    #[error("model parameter is not finite")]
    NonFinite,
    #[error("coupling grid is empty")]
    EmptyGrid,
    #[error("coupling grid must be strictly increasing (at index {index})")]
    GridNotIncreasing { index: usize },
    #[error("requested {levels} levels per parity but blocks have dimension {dim}")]
    TooManyLevels { levels: usize, dim: usize },
    #[error("diagonalization failed at g = {g}: {source}")]
    Eigen { g: f64, source: NumericsError },
    #[error(
        "levels (+{plus_level}, -{minus_level}) cross more than once in g ∈ [{g_lo}, {g_hi}]; refine the grid"
    )]
    NonIsolatedCrossing {
        g_lo: f64,
        g_hi: f64,
        plus_level: usize,
        minus_level: usize,
    },
}

/// Physical couplings of the Rabi Hamiltonian
/// `H = ½ω₀σ_z + ω b†b + g(b† + b)σ_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega: f64,
    omega0: f64,
    g: f64,
}

impl ModelParams {
    pub fn new(omega: f64, omega0: f64, g: f64) -> Result<Self, RabiError> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(RabiError::InvalidOmega(omega));
        }
        if !(omega0.is_finite() && g.is_finite()) {
            return Err(RabiError::NonFinite);
        }
        Ok(ModelParams { omega, omega0, g })
    }

    /// `ω = ω₀ = 1`.
    pub fn resonant(g: f64) -> Self {
        ModelParams {
            omega: 1.0,
            omega0: 1.0,
            g,
        }
    }

    pub fn with_g(self, g: f64) -> Self {
        ModelParams { g, ..self }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// `ω̃ = ω₀/(2ω)`
    pub fn omega_tilde(&self) -> f64 {
        self.omega0 / (2.0 * self.omega)
    }

    /// `λ = 2g/ω`
    pub fn lambda(&self) -> f64 {
        2.0 * self.g / self.omega
    }

    /// `λ` for coupling `g` at this `ω`.
    pub fn lambda_at(&self, g: f64) -> f64 {
        2.0 * g / self.omega
    }

    /// Coupling that corresponds to a rescaled `λ` at this `ω`.
    pub fn g_for_lambda(&self, lambda: f64) -> f64 {
        0.5 * lambda * self.omega
    }
}

/// Energy units for assembled matrices and spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    /// Eigenvalues of `H̃ = H/ω`.
    #[default]
    Scaled,
    /// Eigenvalues of `H`.
    Unscaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sz(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Eigenvalue of the conserved parity `Π = −σ_z cos(π b†b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn value(self) -> i32 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    pub fn of_state(n: usize, spin: Spin) -> Parity {
        let even_n = n % 2 == 0;
        // −s·(−1)ⁿ
        match (spin, even_n) {
            (Spin::Up, true) | (Spin::Down, false) => Parity::Minus,
            (Spin::Up, false) | (Spin::Down, true) => Parity::Plus,
        }
    }
}

pub fn basis_index(n: usize, spin: Spin) -> usize {
    2 * n + spin.offset()
}

/// `H̃ = ω̃σ_z + b†b + λ(b† + b)σ_x`, or `ω·H̃` for [`Units::Unscaled`].
pub fn build_rabi(params: &ModelParams, cutoff: FockCutoff, units: Units) -> SymMatrix {
    let dim = cutoff.dim();
    let wt = params.omega_tilde();
    let lambda = params.lambda();
    let scale = match units {
        Units::Scaled => 1.0,
        Units::Unscaled => params.omega(),
    };
    let mut h = SymMatrix::zeros(2 * dim);
    for n in 0..dim {
        for spin in [Spin::Up, Spin::Down] {
            let i = basis_index(n, spin);
            h.set(i, i, scale * (wt * spin.sz() + n as f64));
            if n + 1 < dim {
                let j = basis_index(n + 1, spin.flip());
                h.set(i, j, scale * lambda * ((n + 1) as f64).sqrt());
            }
        }
    }
    h
}

/// Diagonal matrix of `Π` on the assembly basis.
pub fn parity_operator(cutoff: FockCutoff) -> SymMatrix {
    let mut diag = Vec::with_capacity(2 * cutoff.dim());
    for n in 0..cutoff.dim() {
        for spin in [Spin::Up, Spin::Down] {
            diag.push(Parity::of_state(n, spin).value() as f64);
        }
    }
    SymMatrix::from_diagonal(&diag)
}

/// The Hamiltonian restricted to one parity sector.
#[derive(Debug, Clone)]
pub struct ParityBlock {
    pub parity: Parity,
    /// `(n, spin)` of each block row, ascending in `n`.
    pub basis: Vec<(usize, Spin)>,
    pub matrix: SymMatrix,
}

impl ParityBlock {
    /// Indices of this block's states in the full assembly basis.
    pub fn full_indices(&self) -> Vec<usize> {
        self.basis.iter().map(|&(n, s)| basis_index(n, s)).collect()
    }
}

fn block_basis(parity: Parity, cutoff: FockCutoff) -> Vec<(usize, Spin)> {
    (0..cutoff.dim())
        .map(|n| {
            let spin = if Parity::of_state(n, Spin::Up) == parity {
                Spin::Up
            } else {
                Spin::Down
            };
            (n, spin)
        })
        .collect()
}

/// Splits the Hamiltonian into its `Π = +1` and `Π = −1` blocks. The
/// coupling changes `n` by one and flips the spin together, so the split
/// is exact even in the truncated basis.
pub fn parity_blocks(params: &ModelParams, cutoff: FockCutoff, units: Units) -> (ParityBlock, ParityBlock) {
    let full = build_rabi(params, cutoff, units);
    let make = |parity| {
        let basis = block_basis(parity, cutoff);
        let idx: Vec<usize> = basis.iter().map(|&(n, s)| basis_index(n, s)).collect();
        ParityBlock {
            parity,
            matrix: full.principal_submatrix(&idx),
            basis,
        }
    };
    (make(Parity::Plus), make(Parity::Minus))
}

/// Ascending eigenvalues of both parity blocks.
pub fn block_spectra(
    params: &ModelParams,
    cutoff: FockCutoff,
    units: Units,
) -> Result<(Vec<f64>, Vec<f64>), RabiError> {
    let (plus, minus) = parity_blocks(params, cutoff, units);
    let eig = |m: &SymMatrix| sym_eigvals(m).map_err(|source| RabiError::Eigen { g: params.g(), source });
    Ok((eig(&plus.matrix)?, eig(&minus.matrix)?))
}

/// Lowest energies per parity at each coupling of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub units: Units,
    pub levels: usize,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub g: f64,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl SpectrumRow {
    pub fn energies(&self, parity: Parity) -> &[f64] {
        match parity {
            Parity::Plus => &self.plus,
            Parity::Minus => &self.minus,
        }
    }
}

impl SpectrumTable {
    pub fn g_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.g).collect()
    }
}

/// Diagonalizes both parity blocks at every coupling in `g_grid` and keeps
/// the lowest `levels` energies of each. Grid points are independent; rows
/// come back in grid order.
pub fn spectrum_sweep(
    template: &ModelParams,
    g_grid: &[f64],
    cutoff: FockCutoff,
    levels: usize,
    units: Units,
) -> Result<SpectrumTable, RabiError> {
    if g_grid.is_empty() {
        return Err(RabiError::EmptyGrid);
    }
    if let Some(index) = g_grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(RabiError::GridNotIncreasing { index: index + 1 });
    }
    if g_grid.iter().any(|g| !g.is_finite()) {
        return Err(RabiError::NonFinite);
    }
    if levels > cutoff.dim() {
        return Err(RabiError::TooManyLevels {
            levels,
            dim: cutoff.dim(),
        });
    }
    let rows = g_grid
        .iter()
        .map(|&g| {
            let (mut plus, mut minus) = block_spectra(&template.with_g(g), cutoff, units)?;
            plus.truncate(levels);
            minus.truncate(levels);
            Ok(SpectrumRow { g, plus, minus })
        })
        .collect::<Result<Vec<_>, RabiError>>()?;
    Ok(SpectrumTable { units, levels, rows })
}

/// A degeneracy between level `plus_level` of the `Π = +1` block and level
/// `minus_level` of the `Π = −1` block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub g_star: f64,
    pub e_star: f64,
    pub plus_level: usize,
    pub minus_level: usize,
}

/// Locates every opposite-parity crossing among the tracked levels of
/// `table`.
///
/// Each sign change of `E⁺_i − E⁻_j` between neighbouring grid points is
/// confirmed isolated on a few interior samples and then bisected in `g`
/// (re-diagonalizing at `template.with_g(g)` in the table's units) until
/// `|E⁺_i − E⁻_j| ≤ CROSSING_TOL`. All `(i, j)` pairs are tracked, not just
/// adjacent levels.
pub fn find_crossings(
    table: &SpectrumTable,
    template: &ModelParams,
    cutoff: FockCutoff,
) -> Result<Vec<Crossing>, RabiError> {
    let k = table.levels;
    let spectra_at = |g: f64| -> Result<(Vec<f64>, Vec<f64>), RabiError> {
        block_spectra(&template.with_g(g), cutoff, table.units)
    };
    let mut out = Vec::new();

    if let Some(first) = table.rows.first() {
        for i in 0..first.plus.len().min(k) {
            for j in 0..first.minus.len().min(k) {
                if first.plus[i] == first.minus[j] {
                    out.push(Crossing {
                        g_star: first.g,
                        e_star: first.plus[i],
                        plus_level: i,
                        minus_level: j,
                    });
                }
            }
        }
    }

    for cell in table.rows.windows(2) {
        let (lo, hi) = (&cell[0], &cell[1]);
        let mut samples: Option<Vec<(f64, Vec<f64>, Vec<f64>)>> = None;
        for i in 0..k.min(lo.plus.len()).min(hi.plus.len()) {
            for j in 0..k.min(lo.minus.len()).min(hi.minus.len()) {
                let d0 = lo.plus[i] - lo.minus[j];
                let d1 = hi.plus[i] - hi.minus[j];
                if d1 == 0.0 {
                    out.push(Crossing {
                        g_star: hi.g,
                        e_star: hi.plus[i],
                        plus_level: i,
                        minus_level: j,
                    });
                    continue;
                }
                if d0 == 0.0 || d0.signum() == d1.signum() {
                    continue;
                }

                if samples.is_none() {
                    let mut s = vec![(lo.g, lo.plus.clone(), lo.minus.clone())];
                    for t in 1..=ISOLATION_SAMPLES {
                        let g = lo.g + (hi.g - lo.g) * t as f64 / (ISOLATION_SAMPLES + 1) as f64;
                        let (p, m) = spectra_at(g)?;
                        s.push((g, p, m));
                    }
                    s.push((hi.g, hi.plus.clone(), hi.minus.clone()));
                    samples = Some(s);
                }
                let s = samples.as_ref().expect("samples filled above");
                let diffs: Vec<f64> = s.iter().map(|(_, p, m)| p[i] - m[j]).collect();
                let changes: Vec<usize> = (0..diffs.len() - 1)
                    .filter(|&t| diffs[t] != 0.0 && diffs[t].signum() != diffs[t + 1].signum())
                    .collect();
                if changes.len() != 1 {
                    return Err(RabiError::NonIsolatedCrossing {
                        g_lo: lo.g,
                        g_hi: hi.g,
                        plus_level: i,
                        minus_level: j,
                    });
                }
                let t = changes[0];
                if diffs[t + 1] == 0.0 {
                    // interior sample landed on the crossing
                    out.push(Crossing {
                        g_star: s[t + 1].0,
                        e_star: s[t + 1].1[i],
                        plus_level: i,
                        minus_level: j,
                    });
                    continue;
                }
                out.push(refine_crossing(&spectra_at, s[t].0, s[t + 1].0, diffs[t], i, j)?);
            }
        }
    }
    out.sort_by(|a, b| {
        a.g_star
            .total_cmp(&b.g_star)
            .then(a.plus_level.cmp(&b.plus_level))
            .then(a.minus_level.cmp(&b.minus_level))
    });
    Ok(out)
}

fn refine_crossing(
    spectra_at: &impl Fn(f64) -> Result<(Vec<f64>, Vec<f64>), RabiError>,
    mut a: f64,
    mut b: f64,
    mut da: f64,
    i: usize,
    j: usize,
) -> Result<Crossing, RabiError> {
    loop {
        let mid = 0.5 * (a + b);
        let (p, m) = spectra_at(mid)?;
        let d = p[i] - m[j];
        if d.abs() <= CROSSING_TOL || mid <= a || mid >= b {
            return Ok(Crossing {
                g_star: mid,
                e_star: 0.5 * (p[i] + m[j]),
                plus_level: i,
                minus_level: j,
            });
        }
        if d.signum() == da.signum() {
            a = mid;
            da = d;
        } else {
            b = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::sym_eigvals;

    #[test]
    fn derived_couplings() {
        let p = ModelParams::new(2.0, 1.0, 0.3).unwrap();
        assert_eq!(p.omega_tilde(), 0.25);
        assert_eq!(p.lambda(), 0.3);
        assert_eq!(p.with_g(0.5).lambda(), 0.5);
        assert!(ModelParams::new(0.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 0.1).is_err());
    }

    #[test]
    fn uncoupled_ladder() {
        let h = build_rabi(&ModelParams::resonant(0.0), FockCutoff(20), Units::Scaled);
        let vals = sym_eigvals(&h).unwrap();
        assert_eq!(&vals[..3], &[-0.5, 0.5, 0.5]);
    }

    #[test]
    fn single_photon_element() {
        let p = ModelParams::resonant(0.15);
        let h = build_rabi(&p, FockCutoff(10), Units::Scaled);
        let lambda = p.lambda();
        assert_eq!(h.get(basis_index(0, Spin::Up), basis_index(1, Spin::Down)), lambda);
        assert_eq!(
            h.get(basis_index(2, Spin::Down), basis_index(3, Spin::Up)),
            lambda * 3f64.sqrt()
        );
        assert_eq!(h.get(basis_index(0, Spin::Up), basis_index(1, Spin::Up)), 0.0);
    }

    #[test]
    fn unscaled_is_omega_times_scaled() {
        let p = ModelParams::new(2.5, 1.0, 0.4).unwrap();
        let s = build_rabi(&p, FockCutoff(8), Units::Scaled);
        let u = build_rabi(&p, FockCutoff(8), Units::Unscaled);
        assert!(s.scaled(2.5).as_matrix().sub(u.as_matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn first_table_point_is_doubly_degenerate() {
        let h = build_rabi(&ModelParams::resonant(0.2165063510), FockCutoff(100), Units::Scaled);
        let vals = sym_eigvals(&h).unwrap();
        let near = vals.iter().filter(|e| (*e - 0.8125).abs() <= 1e-6).count();
        assert_eq!(near, 2);
    }

    #[test]
    fn parity_of_states() {
        assert_eq!(Parity::of_state(2, Spin::Up), Parity::Minus);
        assert_eq!(Parity::of_state(0, Spin::Down), Parity::Plus);
        assert_eq!(Parity::of_state(1, Spin::Up), Parity::Plus);
    }

    #[test]
    fn blocks_partition_basis() {
        let (plus, minus) = parity_blocks(&ModelParams::resonant(0.3), FockCutoff(100), Units::Scaled);
        assert_eq!(plus.matrix.dim(), 101);
        assert_eq!(minus.matrix.dim(), 101);
        let mut all: Vec<usize> = plus.full_indices();
        all.extend(minus.full_indices());
        all.sort();
        assert_eq!(all, (0..202).collect::<Vec<_>>());
        for &(n, s) in &plus.basis {
            assert_eq!(-s.sz() * if n % 2 == 0 { 1.0 } else { -1.0 }, 1.0);
        }
    }

    #[test]
    fn parity_commutes() {
        let cutoff = FockCutoff(40);
        let h = build_rabi(&ModelParams::new(1.3, 0.7, 0.45).unwrap(), cutoff, Units::Scaled);
        let pi = parity_operator(cutoff);
        let hp = h.as_matrix().matmul(pi.as_matrix());
        let ph = pi.as_matrix().matmul(h.as_matrix());
        assert!(hp.sub(&ph).max_abs() <= 1e-12);
    }

    #[test]
    fn block_spectra_union_is_full_spectrum() {
        let p = ModelParams::resonant(0.3);
        let cutoff = FockCutoff(60);
        let full = sym_eigvals(&build_rabi(&p, cutoff, Units::Scaled)).unwrap();
        let (a, b) = block_spectra(&p, cutoff, Units::Scaled).unwrap();
        let mut merged: Vec<f64> = a.into_iter().chain(b).collect();
        merged.sort_by(f64::total_cmp);
        for (x, y) in merged.iter().zip(&full) {
            assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn sweep_validation() {
        let t = ModelParams::resonant(0.0);
        let c = FockCutoff(10);
        assert_eq!(spectrum_sweep(&t, &[], c, 2, Units::Scaled), Err(RabiError::EmptyGrid));
        assert!(matches!(
            spectrum_sweep(&t, &[0.1, 0.1], c, 2, Units::Scaled),
            Err(RabiError::GridNotIncreasing { index: 1 })
        ));
        assert!(matches!(
            spectrum_sweep(&t, &[0.1], c, 12, Units::Scaled),
            Err(RabiError::TooManyLevels { .. })
        ));
    }

    #[test]
    fn sweep_at_zero_is_uncoupled_ladder() {
        let t = spectrum_sweep(&ModelParams::resonant(0.0), &[0.0], FockCutoff(20), 4, Units::Scaled).unwrap();
        let row = &t.rows[0];
        // Π = +1 holds (n even, down) and (n odd, up): −1/2, 3/2, 3/2, ...
        assert_eq!(row.plus, vec![-0.5, 1.5, 1.5, 3.5]);
        assert_eq!(row.minus, vec![0.5, 0.5, 2.5, 2.5]);
    }

    #[test]
    fn no_crossings_without_sign_change() {
        let grid = [0.01, 0.02, 0.03];
        let t = spectrum_sweep(&ModelParams::resonant(0.0), &grid, FockCutoff(30), 1, Units::Scaled).unwrap();
        let c = find_crossings(&t, &ModelParams::resonant(0.0), FockCutoff(30)).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn straddling_first_point_swaps_order() {
        let grid = [0.2, 0.23];
        let t = spectrum_sweep(&ModelParams::resonant(0.0), &grid, FockCutoff(100), 2, Units::Scaled).unwrap();
        let crossings = find_crossings(&t, &ModelParams::resonant(0.0), FockCutoff(100)).unwrap();
        let c = crossings
            .iter()
            .find(|c| (c.e_star - 0.8125).abs() < 1e-6)
            .expect("crossing at first point");
        assert!((c.g_star - 0.2165063510).abs() < 1e-8);
        let before = t.rows[0].plus[c.plus_level] - t.rows[0].minus[c.minus_level];
        let after = t.rows[1].plus[c.plus_level] - t.rows[1].minus[c.minus_level];
        assert!(before * after < 0.0);
    }
}
