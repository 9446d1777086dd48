//! Dense simulation of synthesized circuits on the joint ancilla + data register.
//!
//! Joint layout: ancilla `a_1z, a_1x, ..., a_nz, a_nx` at positions `0..2n`,
//! data qubits at `2n..3n`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Correction, Gate, Stage};
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::pauli::{PauliString, SignedPauli};
use crate::sim::state::StateVector;

/// Branches below this probability are pruned.
pub const ZERO_PROBABILITY: f64 = 1e-12;
/// Largest `n` accepted by [`run_all_branches`].
pub const MAX_BRANCH_QUBITS: usize = 6;
/// Largest `n` accepted by [`sample_run`] (the joint register has `3n` qubits).
pub const MAX_SAMPLE_QUBITS: usize = 8;
/// Allowed ancilla residue when splitting off the data register.
pub const SEPARABILITY_TOLERANCE: f64 = 1e-10;

/// Measurement record `(m_1z, m_1x, ..., m_nz, m_nx)`; `true` is outcome `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OutcomeVector(pub Vec<bool>);

impl OutcomeVector {
    /// Outcome vector whose bit `k` is bit `2n - 1 - k` of `code` (bit `m_1z` most significant).
    pub fn from_index(n: usize, code: usize) -> Self {
        OutcomeVector((0..2 * n).map(|k| (code >> (2 * n - 1 - k)) & 1 == 1).collect())
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub outcome: OutcomeVector,
    pub probability: f64,
    /// Post-correction data state; `None` for pruned branches.
    pub state: Option<StateVector>,
}

fn check_input(c: &Circuit, psi: &StateVector) -> Result<()> {
    if psi.qubits() != c.n() {
        return Err(Error::Dimension {
            expected: c.n(),
            found: psi.qubits(),
        });
    }
    Ok(())
}

fn joint_initial(c: &Circuit, psi: &StateVector) -> StateVector {
    StateVector::zero(2 * c.n()).tensor(psi)
}

fn apply_unitary_gate(joint: &mut StateVector, n: usize, g: &Gate) {
    match g {
        Gate::PrepPlus(a) => joint.apply_h(a.index()),
        Gate::ControlledPauli { control, payload } => joint.apply_pauli(payload, 2 * n, Some(control.index())),
        _ => unreachable!("non-unitary gate in unitary stage"),
    }
}

fn apply_correction(joint: &mut StateVector, n: usize, pauli: Correction, qubit: usize, offset: usize) {
    let p = SignedPauli::new(PauliString::single(n, qubit, pauli.factor()), false);
    joint.apply_pauli(&p, offset, None);
}

/// Contracts the ancillas against `⊗ |±>` given by `minus_by_ancilla`; returns the
/// (unnormalized) data amplitudes.
fn contract_ancillas(joint: &StateVector, n: usize, minus_by_ancilla: &[bool]) -> StateVector {
    let data_dim = 1usize << n;
    let anc = 2 * n;
    let minus_mask: usize = minus_by_ancilla
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(k, _)| 1usize << (anc - 1 - k))
        .sum();
    let scale = 0.5f64.powi(n as i32);
    let amps = joint.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); data_dim];
    for a in 0..(1usize << anc) {
        let sign = if (a & minus_mask).count_ones() % 2 == 1 {
            -scale
        } else {
            scale
        };
        let row = &amps[a * data_dim..(a + 1) * data_dim];
        for (o, v) in out.iter_mut().zip(row) {
            *o += v * sign;
        }
    }
    StateVector::from_raw(n, out)
}

/// Runs one measurement branch, replacing each X measurement by the projector selected by `u`.
pub fn run_branch(c: &Circuit, psi: &StateVector, u: &OutcomeVector) -> Result<Branch> {
    check_input(c, psi)?;
    let n = c.n();
    if u.len() != 2 * n {
        return Err(Error::Dimension {
            expected: 2 * n,
            found: u.len(),
        });
    }
    let mut joint = joint_initial(c, psi);
    let mut probability = 1.0;
    let mut ancilla_minus = vec![false; 2 * n];
    let mut recorded = vec![false; 2 * n];
    for g in c.gates() {
        match g {
            Gate::PrepPlus(_) | Gate::ControlledPauli { .. } => apply_unitary_gate(&mut joint, n, g),
            Gate::MeasureX { ancilla, bit } => {
                let minus = u.0[bit.index()];
                let p = joint.project_x(ancilla.index(), minus);
                probability *= p;
                if probability < ZERO_PROBABILITY {
                    return Ok(Branch {
                        outcome: u.clone(),
                        probability,
                        state: None,
                    });
                }
                joint.normalize();
                ancilla_minus[ancilla.index()] = minus;
                recorded[bit.index()] = minus;
            }
            Gate::ClassicalCorrection { bit, pauli, qubit } => {
                if recorded[bit.index()] {
                    apply_correction(&mut joint, n, *pauli, *qubit, 2 * n);
                }
            }
        }
    }
    let mut data = contract_ancillas(&joint, n, &ancilla_minus);
    let kept = data.normalize();
    if (1.0 - kept).abs() > SEPARABILITY_TOLERANCE {
        return Err(Error::SimulationIntegrity(format!(
            "ancilla register not separable after measurement (residue {:.3e})",
            1.0 - kept
        )));
    }
    Ok(Branch {
        outcome: u.clone(),
        probability,
        state: Some(data),
    })
}

/// State after stages `A`, `CPn`, `CP1`.
fn unitary_prefix(c: &Circuit, psi: &StateVector) -> StateVector {
    let n = c.n();
    let mut joint = joint_initial(c, psi);
    for s in [Stage::A, Stage::CPn, Stage::CP1] {
        for g in c.stage(s) {
            apply_unitary_gate(&mut joint, n, g);
        }
    }
    joint
}

fn apply_corrections(c: &Circuit, data: &mut StateVector, u: &OutcomeVector) {
    for g in c.stage(Stage::P1) {
        if let Gate::ClassicalCorrection { bit, pauli, qubit } = g {
            if u.0[bit.index()] {
                apply_correction(data, c.n(), *pauli, *qubit, 0);
            }
        }
    }
}

/// Enumerates all `4^n` outcome vectors.
///
/// The unitary stages are simulated once; a Hadamard on every ancilla then turns
/// the X-basis projections into computational-basis slices of the joint state.
pub fn run_all_branches(c: &Circuit, psi: &StateVector, exec: Execution) -> Result<Vec<Branch>> {
    check_input(c, psi)?;
    let n = c.n();
    if n > MAX_BRANCH_QUBITS {
        return Err(Error::InvalidSize(format!(
            "branch enumeration limited to n <= {MAX_BRANCH_QUBITS}, got {n}"
        )));
    }
    let mut joint = unitary_prefix(c, psi);
    for k in 0..2 * n {
        joint.apply_h(k);
    }
    // ancilla_of_bit[b] = ancilla measured into bit b
    let mut ancilla_of_bit = vec![0usize; 2 * n];
    for g in c.stage(Stage::MA) {
        if let Gate::MeasureX { ancilla, bit } = g {
            ancilla_of_bit[bit.index()] = ancilla.index();
        }
    }
    let data_dim = 1usize << n;
    let joint = &joint;
    let ancilla_of_bit = &ancilla_of_bit;
    let branches = exec.map_range(1usize << (2 * n), |code| {
        let u = OutcomeVector::from_index(n, code);
        let a: usize =
            u.0.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(b, _)| 1usize << (2 * n - 1 - ancilla_of_bit[b]))
                .sum();
        let slice = joint.amplitudes()[a * data_dim..(a + 1) * data_dim].to_vec();
        let mut data = StateVector::from_raw(n, slice);
        let probability = data.normalize();
        let state = (probability > ZERO_PROBABILITY).then(|| {
            apply_corrections(c, &mut data, &u);
            data
        });
        Branch {
            outcome: u,
            probability,
            state,
        }
    });
    Ok(branches)
}

/// Samples every X measurement from its conditional probability.
pub fn sample_run(c: &Circuit, psi: &StateVector, seed: u64) -> Result<(OutcomeVector, StateVector)> {
    check_input(c, psi)?;
    let n = c.n();
    if n > MAX_SAMPLE_QUBITS {
        return Err(Error::InvalidSize(format!(
            "sampling limited to n <= {MAX_SAMPLE_QUBITS}, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut joint = unitary_prefix(c, psi);
    let mut outcome = OutcomeVector(vec![false; 2 * n]);
    let mut ancilla_minus = vec![false; 2 * n];
    for g in c.stage(Stage::MA) {
        if let Gate::MeasureX { ancilla, bit } = g {
            let p_minus = joint.prob_x_minus(ancilla.index());
            let minus = rng.random::<f64>() < p_minus;
            joint.project_x(ancilla.index(), minus);
            joint.normalize();
            outcome.0[bit.index()] = minus;
            ancilla_minus[ancilla.index()] = minus;
        }
    }
    let mut data = contract_ancillas(&joint, n, &ancilla_minus);
    let kept = data.normalize();
    if (1.0 - kept).abs() > SEPARABILITY_TOLERANCE {
        return Err(Error::SimulationIntegrity(format!(
            "ancilla register not separable after measurement (residue {:.3e})",
            1.0 - kept
        )));
    }
    apply_corrections(c, &mut data, &outcome);
    Ok((outcome, data))
}
