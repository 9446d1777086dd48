//! Density-matrix check of the single-qubit quantum filter.
//!
//! Register order: ancilla `a1` (controls the `Z` sandwich), ancilla `a2`
//! (controls the `X` sandwich), then the data qubit `r`.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::pauli::Factor;
use crate::sim::dense::{controlled_single, factor_matrix, hadamard, identity, kron_all, Matrix};

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;
pub const COMPLETENESS_TOLERANCE: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

fn is_power_of_two_square(m: &Matrix) -> bool {
    m.nrows() == m.ncols() && m.nrows().is_power_of_two()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    rho: Matrix,
}

impl DensityMatrix {
    /// Validates `rho` as a density matrix.
    pub fn new(rho: Matrix) -> Result<Self> {
        if !is_power_of_two_square(&rho) {
            return Err(Error::InvalidSize(format!(
                "{}x{} density matrix",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let herm = (&rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidSize(format!(
                "density matrix not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = rho.trace();
        if (tr - c(1.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::InvalidSize(format!("density matrix has trace {tr}")));
        }
        let min = hermitian_eigenvalues(&rho).into_iter().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidSize(format!("density matrix has eigenvalue {min:.3e}")));
        }
        Ok(DensityMatrix {
            qubits: rho.nrows().trailing_zeros() as usize,
            rho,
        })
    }

    /// Random state `G G† / tr(G G†)` with `G` a Gaussian `2^qubits x rank` matrix.
    pub fn random(qubits: usize, rank: usize, rng: &mut impl Rng) -> Self {
        let g = gaussian_matrix(1 << qubits, rank.max(1), rng);
        let rho = &g * g.adjoint();
        let tr = rho.trace();
        DensityMatrix { qubits, rho: rho / tr }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &Matrix {
        &self.rho
    }

    /// `½ ‖self − other‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                expected: self.qubits,
                found: other.qubits,
            });
        }
        Ok(0.5
            * hermitian_eigenvalues(&(&self.rho - &other.rho))
                .iter()
                .map(|l| l.abs())
                .sum::<f64>())
    }
}

fn hermitian_eigenvalues(m: &Matrix) -> Vec<f64> {
    let sym = (m + m.adjoint()) * c(0.5);
    SymmetricEigen::new(sym).eigenvalues.iter().copied().collect()
}

#[derive(Clone, Debug)]
pub struct KrausChannel {
    qubits: usize,
    ops: Vec<Matrix>,
}

impl KrausChannel {
    /// Validates shapes and completeness `Σ E† E = I`.
    pub fn new(ops: Vec<Matrix>) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        };
        let dim = first.nrows();
        if ops.iter().any(|e| !is_power_of_two_square(e) || e.nrows() != dim) {
            return Err(Error::InvalidChannel(
                "Kraus operators must be square with equal power-of-two size".into(),
            ));
        }
        let residual = ops
            .iter()
            .fold(-Matrix::identity(dim, dim), |acc, e| acc + e.adjoint() * e)
            .norm();
        if residual > COMPLETENESS_TOLERANCE {
            return Err(Error::InvalidChannel(format!("completeness residual {residual:.3e}")));
        }
        Ok(KrausChannel {
            qubits: dim.trailing_zeros() as usize,
            ops,
        })
    }

    pub fn unitary(u: Matrix) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn identity(qubits: usize) -> Self {
        KrausChannel {
            qubits,
            ops: vec![identity(qubits)],
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.ops
    }

    /// `‖Σ E† E − I‖_F`.
    pub fn completeness_residual(&self) -> f64 {
        let dim = 1 << self.qubits;
        self.ops
            .iter()
            .fold(-Matrix::identity(dim, dim), |acc, e| acc + e.adjoint() * e)
            .norm()
    }

    /// `Σ E ρ E†`.
    pub fn apply(&self, rho: &Matrix) -> Matrix {
        self.ops.iter().fold(Matrix::zeros(rho.nrows(), rho.ncols()), |acc, e| {
            acc + e * rho * e.adjoint()
        })
    }
}

/// Random channel with `k` Kraus operators on one qubit, cut from a Gaussian
/// `2k x 2` isometry.
pub fn random_channel(k: usize, seed: u64) -> Result<KrausChannel> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidChannel(format!("Kraus count must be in 1..=4, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = gaussian_matrix(2 * k, 2, &mut rng).qr().q();
    let ops = (0..k).map(|j| v.rows(2 * j, 2).into_owned()).collect();
    KrausChannel::new(ops)
}

/// Outcome labels `u = u0 u1` in the order `00, 01, 10, 11`; `u0` is read from `a1`.
pub const OUTCOME_LABELS: [&str; 4] = ["00", "01", "10", "11"];

/// Applies the filter around `ch` to `rho`; returns the recovered data state and
/// the ancilla outcome probabilities.
pub fn filter_output(ch: &KrausChannel, rho: &DensityMatrix) -> Result<(DensityMatrix, [f64; 4])> {
    if ch.qubits() != 1 || rho.qubits() != 1 {
        return Err(Error::InvalidChannel("the filter acts on a single data qubit".into()));
    }
    let id1 = identity(1);
    let (x, z) = (factor_matrix(Factor::X), factor_matrix(Factor::Z));
    let cz = controlled_single(3, 0, 2, &z);
    let cx = controlled_single(3, 1, 2, &x);
    let h = hadamard();
    let plus = &h * Matrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]) * h.adjoint();
    let mut full = kron_all(&[plus.clone(), plus, rho.matrix().clone()]);

    let enter = &cx * &cz;
    full = &enter * full * enter.adjoint();
    let ops: Vec<Matrix> = ch
        .operators()
        .iter()
        .map(|e| kron_all(&[id1.clone(), id1.clone(), e.clone()]))
        .collect();
    full = ops
        .iter()
        .fold(Matrix::zeros(8, 8), |acc, e| acc + e * &full * e.adjoint());
    let exit = &cz * &cx;
    full = &exit * full * exit.adjoint();

    let minus_proj = |minus: bool| {
        let s = if minus { -0.5 } else { 0.5 };
        Matrix::from_row_slice(2, 2, &[c(0.5), c(s), c(s), c(0.5)])
    };
    let mut data = Matrix::zeros(2, 2);
    let mut probs = [0.0; 4];
    for (u, p) in probs.iter_mut().enumerate() {
        let (u0, u1) = (u & 2 != 0, u & 1 != 0);
        let mut correction = id1.clone();
        if u0 {
            correction = &x * correction;
        }
        if u1 {
            correction = &z * correction;
        }
        let k = kron_all(&[minus_proj(u0), minus_proj(u1), correction]);
        let branch = &k * &full * k.adjoint();
        *p = branch.trace().re;
        data += partial_trace_ancillas(&branch);
    }
    Ok((DensityMatrix { qubits: 1, rho: data }, probs))
}

/// Traces out the two most significant qubits of an 8x8 matrix.
fn partial_trace_ancillas(m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(2, 2);
    for a in 0..4 {
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] += m[(2 * a + i, 2 * a + j)];
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterReport {
    pub states: usize,
    pub max_trace_distance: f64,
    /// Outcome probabilities averaged over the input states, indexed as [`OUTCOME_LABELS`].
    pub outcome_distribution: [f64; 4],
    pub pass: bool,
}

/// Runs the filter on `states` random input density matrices.
pub fn filter_identity_check(ch: &KrausChannel, states: usize, seed: u64, tol: f64) -> Result<FilterReport> {
    if ch.qubits() != 1 {
        return Err(Error::InvalidChannel(format!(
            "filter check needs a 1-qubit channel, got {} qubits",
            ch.qubits()
        )));
    }
    let residual = ch.completeness_residual();
    if residual > COMPLETENESS_TOLERANCE {
        return Err(Error::InvalidChannel(format!("completeness residual {residual:.3e}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_td: f64 = 0.0;
    let mut dist = [0.0; 4];
    for i in 0..states {
        let rho = DensityMatrix::random(1, 1 + i % 2, &mut rng);
        let (out, probs) = filter_output(ch, &rho)?;
        max_td = max_td.max(out.trace_distance(&rho)?);
        for (d, p) in dist.iter_mut().zip(probs) {
            *d += p / states as f64;
        }
    }
    Ok(FilterReport {
        states,
        max_trace_distance: max_td,
        outcome_distribution: dist,
        pass: max_td <= tol,
    })
}

/// Summary over many random channels.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterBatch {
    pub channels: usize,
    pub max_trace_distance: f64,
    pub pass: bool,
}

/// `channels` random channels with `kraus` operators each, `states` inputs per channel.
pub fn filter_batch(
    kraus: usize,
    channels: usize,
    states: usize,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<FilterBatch> {
    let reports = exec.map_range(channels, |i| {
        let s = seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let ch = random_channel(kraus, s)?;
        filter_identity_check(&ch, states, s ^ 0x5555, tol)
    });
    let reports: Vec<FilterReport> = reports.into_iter().collect::<Result<_>>()?;
    let max_td = reports.iter().map(|r| r.max_trace_distance).fold(0.0, f64::max);
    Ok(FilterBatch {
        channels,
        max_trace_distance: max_td,
        pass: reports.iter().all(|r| r.pass),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_channel_lands_on_u10() {
        let ch = KrausChannel::unitary(factor_matrix(Factor::X)).unwrap();
        let r = filter_identity_check(&ch, 10, 1, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.outcome_distribution[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_channels_select_their_label() {
        for (u, f) in [Factor::I, Factor::Z, Factor::X, Factor::Y].into_iter().enumerate() {
            let ch = KrausChannel::unitary(factor_matrix(f)).unwrap();
            let r = filter_identity_check(&ch, 4, 2, 1e-12).unwrap();
            assert!(r.pass);
            assert!(
                (r.outcome_distribution[u] - 1.0).abs() < 1e-12,
                "{f:?}: {:?}",
                r.outcome_distribution
            );
        }
    }

    #[test]
    fn identity_channel_only_u00() {
        let r = filter_identity_check(&KrausChannel::identity(1), 6, 3, 1e-12).unwrap();
        assert!(r.pass);
        assert!((r.outcome_distribution[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_channels_are_complete_and_recovered() {
        for seed in 0..200 {
            let k = 1 + seed as usize % 4;
            let ch = random_channel(k, seed).unwrap();
            assert_eq!(ch.operators().len(), k);
            assert!(ch.completeness_residual() <= 1e-12);
            let rho = DensityMatrix::random(1, 2, &mut ChaCha8Rng::seed_from_u64(seed));
            DensityMatrix::new(ch.apply(rho.matrix())).unwrap();
        }
        let r = filter_identity_check(&random_channel(4, 7).unwrap(), 20, 7, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn one_kraus_channel_is_unitary() {
        let ch = random_channel(1, 11).unwrap();
        let e = &ch.operators()[0];
        assert!((e * e.adjoint() - identity(1)).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_channels() {
        let half = identity(1) * c(0.5);
        assert!(matches!(KrausChannel::new(vec![half]), Err(Error::InvalidChannel(_))));
        assert!(matches!(KrausChannel::new(vec![]), Err(Error::InvalidChannel(_))));
        assert!(random_channel(5, 0).is_err());
        assert!(matches!(
            filter_identity_check(&KrausChannel::identity(2), 1, 0, 1e-10),
            Err(Error::InvalidChannel(_))
        ));
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(identity(1)).is_err());
        assert!(DensityMatrix::new(identity(1) * c(0.5)).is_ok());
        let bad = Matrix::from_row_slice(2, 2, &[c(1.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(DensityMatrix::new(bad).is_err());
        let a = DensityMatrix::new(Matrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)])).unwrap();
        let b = DensityMatrix::new(Matrix::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.0), c(1.0)])).unwrap();
        assert!((a.trace_distance(&b).unwrap() - 1.0).abs() < 1e-14);
    }
}
