//! Verification drivers producing key/value reports.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::pauli::SignedPauli;
use crate::sim::branch::{run_all_branches, sample_run};
use crate::sim::dense::Matrix;
use crate::sim::filter::filter_batch;
use crate::sim::stabilizer::{stabilizer_run, StabilizerGroup};
use crate::sim::state::{apply_gates, StateVector};
use crate::tableau::{GateList, Tableau};

/// Random input density matrices per channel in filter mode.
pub const FILTER_STATES_PER_CHANNEL: usize = 20;
/// Allowed deviation of the summed branch probabilities from 1.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Branches,
    Sample,
    Stabilizer,
    Filter,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Branches => "branches",
            VerifyMode::Sample => "sample",
            VerifyMode::Stabilizer => "stabilizer",
            VerifyMode::Filter => "filter",
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub n: usize,
    pub trials: usize,
    pub branches_checked: usize,
    /// `1 - |<expected|got>|`, maximized; `None` where no state vectors are compared.
    pub max_infidelity: Option<f64>,
    pub max_trace_distance: Option<f64>,
    pub pass: bool,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "na".to_string(), |x| format!("{x:e}"))
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode={}", self.mode)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "branches_checked={}", self.branches_checked)?;
        writeln!(f, "max_infidelity={}", opt(self.max_infidelity))?;
        writeln!(f, "max_trace_distance={}", opt(self.max_trace_distance))?;
        writeln!(f, "pass={}", self.pass)
    }
}

/// Ideal action of the Clifford under test.
#[derive(Clone, Debug)]
pub enum Target {
    Gates(GateList),
    Unitary(Matrix),
}

impl Target {
    pub fn n(&self) -> usize {
        match self {
            Target::Gates(g) => g.n,
            Target::Unitary(u) => u.nrows().trailing_zeros() as usize,
        }
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        match self {
            Target::Gates(g) => apply_gates(psi, g),
            Target::Unitary(u) => {
                if u.nrows() != psi.amplitudes().len() {
                    return Err(Error::Dimension {
                        expected: u.nrows(),
                        found: psi.amplitudes().len(),
                    });
                }
                let v = u * nalgebra::DVector::from_column_slice(psi.amplitudes());
                let amps: Vec<Complex64> = v.iter().copied().collect();
                Ok(StateVector::from_raw(psi.qubits(), amps))
            }
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// `1 - |<a|b>|`.
pub fn infidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(1.0 - a.inner(b)?.norm())
}

fn check_n(c: &Circuit, target_n: usize) -> Result<()> {
    if c.n() != target_n {
        return Err(Error::Dimension {
            expected: target_n,
            found: c.n(),
        });
    }
    Ok(())
}

/// Enumerates every branch for `trials` random inputs.
pub fn verify_branches(
    c: &Circuit,
    target: &Target,
    trials: usize,
    tol: f64,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    check_n(c, target.n())?;
    let n = c.n();
    let per_trial = exec.map_range(trials, |i| -> Result<(f64, bool)> {
        let psi = StateVector::random(n, &mut trial_rng(seed, i));
        let expected = target.apply(&psi)?;
        let branches = run_all_branches(c, &psi, Execution::Sequential)?;
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        let mut worst: f64 = 0.0;
        for s in branches.iter().filter_map(|b| b.state.as_ref()) {
            worst = worst.max(infidelity(&expected, s)?);
        }
        Ok((worst, (total - 1.0).abs() <= PROBABILITY_SUM_TOLERANCE))
    });
    let per_trial: Vec<(f64, bool)> = per_trial.into_iter().collect::<Result<_>>()?;
    let max_inf = per_trial.iter().map(|t| t.0).fold(0.0, f64::max);
    Ok(VerificationReport {
        mode: VerifyMode::Branches,
        n,
        trials,
        branches_checked: 1 << (2 * n),
        max_infidelity: Some(max_inf),
        max_trace_distance: None,
        pass: max_inf <= tol && per_trial.iter().all(|t| t.1),
    })
}

/// One sampled run per random input.
pub fn verify_sample(
    c: &Circuit,
    target: &Target,
    trials: usize,
    tol: f64,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    check_n(c, target.n())?;
    let n = c.n();
    let per_trial = exec.map_range(trials, |i| -> Result<f64> {
        let psi = StateVector::random(n, &mut trial_rng(seed, i));
        let expected = target.apply(&psi)?;
        let (_, got) = sample_run(c, &psi, seed.wrapping_add(i as u64))?;
        infidelity(&expected, &got)
    });
    let max_inf = per_trial
        .into_iter()
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(VerificationReport {
        mode: VerifyMode::Sample,
        n,
        trials,
        branches_checked: trials,
        max_infidelity: Some(max_inf),
        max_trace_distance: None,
        pass: max_inf <= tol,
    })
}

/// Runs the stabilizer engine with `trials` outcome seeds and compares the data
/// group against the images of `Z_i` under `t`.
pub fn verify_stabilizer(
    c: &Circuit,
    t: &Tableau,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    check_n(c, t.n())?;
    let n = c.n();
    let images: Vec<SignedPauli> = (0..n).map(|q| t.z_image(q).clone()).collect();
    let expected = StabilizerGroup::new(n, &images)?;
    let results = exec.map_range(trials, |i| -> Result<bool> {
        let got = stabilizer_run(c, seed.wrapping_add(i as u64))?;
        Ok(StabilizerGroup::new(n, &got)?.same_as(&expected))
    });
    let results: Vec<bool> = results.into_iter().collect::<Result<_>>()?;
    Ok(VerificationReport {
        mode: VerifyMode::Stabilizer,
        n,
        trials,
        branches_checked: trials,
        max_infidelity: None,
        max_trace_distance: None,
        pass: results.iter().all(|&ok| ok),
    })
}

/// Filter identity check over `trials` random channels with `kraus` operators each.
pub fn verify_filter(kraus: usize, trials: usize, tol: f64, seed: u64, exec: Execution) -> Result<VerificationReport> {
    let batch = filter_batch(kraus, trials, FILTER_STATES_PER_CHANNEL, seed, tol, exec)?;
    Ok(VerificationReport {
        mode: VerifyMode::Filter,
        n: 1,
        trials,
        branches_checked: 4 * trials * FILTER_STATES_PER_CHANNEL,
        max_infidelity: None,
        max_trace_distance: Some(batch.max_trace_distance),
        pass: batch.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::synthesize;
    use crate::sim::dense::clifford_unitary;
    use crate::tableau::random_clifford;

    #[test]
    fn all_modes_pass_on_random_clifford() {
        let (t, gates) = random_clifford(2, 42).unwrap();
        let c = synthesize(&t).unwrap();
        let target = Target::Gates(gates);
        let r = verify_branches(&c, &target, 5, 1e-10, 1, Execution::Parallel).unwrap();
        assert!(r.pass && r.branches_checked == 16, "{r}");
        let u = Target::Unitary(clifford_unitary(&t).unwrap());
        assert!(
            verify_branches(&c, &u, 5, 1e-10, 1, Execution::Sequential)
                .unwrap()
                .pass
        );
        assert!(
            verify_sample(&c, &target, 5, 1e-10, 2, Execution::Parallel)
                .unwrap()
                .pass
        );
        assert!(verify_stabilizer(&c, &t, 5, 3, Execution::Parallel).unwrap().pass);
    }

    #[test]
    fn execution_modes_give_identical_reports() {
        let (t, gates) = random_clifford(3, 8).unwrap();
        let c = synthesize(&t).unwrap();
        let target = Target::Gates(gates);
        let a = verify_branches(&c, &target, 4, 1e-10, 9, Execution::Sequential).unwrap();
        let b = verify_branches(&c, &target, 4, 1e-10, 9, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_format() {
        let r = verify_filter(2, 3, 1e-10, 0, Execution::Sequential).unwrap();
        let text = r.to_string();
        assert!(text.starts_with("mode=filter\nn=1\ntrials=3\n"));
        assert!(text.contains("max_infidelity=na\n"));
        assert!(text.ends_with("pass=true\n"));
    }

    #[test]
    fn wrong_target_fails() {
        let (t, _) = random_clifford(2, 1).unwrap();
        let (_, other) = random_clifford(2, 2).unwrap();
        let c = synthesize(&t).unwrap();
        let r = verify_branches(&c, &Target::Gates(other), 3, 1e-10, 0, Execution::Sequential).unwrap();
        assert!(!r.pass);
    }
}
