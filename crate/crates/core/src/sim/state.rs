//! Dense state vectors. Qubit 0 is the most significant bit of the basis index.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::pauli::SignedPauli;
use crate::tableau::{CliffordGate, GateList};

/// Norm tolerance kept after normalized operations.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { qubits, amps }
    }

    /// Wraps amplitudes; the vector must have power-of-two length and unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::InvalidSize(format!(
                "state length {} is not a power of two",
                amps.len()
            )));
        }
        let s = StateVector {
            qubits: amps.len().trailing_zeros() as usize,
            amps,
        };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidSize(format!("state has squared norm {norm}")));
        }
        Ok(s)
    }

    /// Gaussian-random normalized state.
    pub fn random(qubits: usize, rng: &mut impl Rng) -> Self {
        let mut amps: Vec<Complex64> = (0..1usize << qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector { qubits, amps }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn from_raw(qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << qubits);
        StateVector { qubits, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales to unit norm and returns the previous squared norm.
    pub fn normalize(&mut self) -> f64 {
        let n2 = self.norm_sqr();
        if n2 > 0.0 {
            let s = n2.sqrt();
            for a in &mut self.amps {
                *a /= s;
            }
        }
        n2
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                expected: self.qubits,
                found: other.qubits,
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            qubits: self.qubits + other.qubits,
            amps,
        }
    }

    #[inline]
    fn mask(&self, q: usize) -> usize {
        1 << (self.qubits - 1 - q)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.qubits {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: q + 1,
                n: self.qubits,
            })
        }
    }

    pub fn apply_h(&mut self, q: usize) {
        let m = self.mask(q);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amps.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | m]);
                self.amps[b] = (a0 + a1) * s;
                self.amps[b | m] = (a0 - a1) * s;
            }
        }
    }

    pub fn apply_s(&mut self, q: usize) {
        let m = self.mask(q);
        let i = Complex64::new(0.0, 1.0);
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & m != 0 {
                *a *= i;
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (mc, mt) = (self.mask(control), self.mask(target));
        for b in 0..self.amps.len() {
            if b & mc != 0 && b & mt == 0 {
                self.amps.swap(b, b | mt);
            }
        }
    }

    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        match g {
            CliffordGate::H(q) => {
                self.check_qubit(q)?;
                self.apply_h(q)
            }
            CliffordGate::S(q) => {
                self.check_qubit(q)?;
                self.apply_s(q)
            }
            CliffordGate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                self.apply_cnot(control, target)
            }
        }
        Ok(())
    }

    /// Applies `payload` to qubits `offset..offset + payload.n()`, restricted to basis
    /// states where `control` (if any) is `|1>`.
    pub fn apply_pauli(&mut self, payload: &SignedPauli, offset: usize, control: Option<usize>) {
        let s = payload.string();
        let (mut xmask, mut zmask) = (0usize, 0usize);
        for q in 0..s.n() {
            let m = self.mask(offset + q);
            if s.x_bit(q) {
                xmask |= m;
            }
            if s.z_bit(q) {
                zmask |= m;
            }
        }
        let base = crate::sim::dense::phase_factor(((s.y_count() + 2 * payload.is_negative() as u32) % 4) as u8);
        let cmask = control.map(|c| self.mask(c));
        let coeff = |b: usize| {
            if (b & zmask).count_ones() % 2 == 1 {
                -base
            } else {
                base
            }
        };
        for b in 0..self.amps.len() {
            if let Some(cm) = cmask {
                if b & cm == 0 {
                    continue;
                }
            }
            let t = b ^ xmask;
            if t < b {
                continue;
            }
            if t == b {
                self.amps[b] *= coeff(b);
            } else {
                let (ab, at) = (self.amps[b], self.amps[t]);
                self.amps[t] = coeff(b) * ab;
                self.amps[b] = coeff(t) * at;
            }
        }
    }

    /// Projects qubit `q` onto `|+>` (`minus = false`) or `|->` without renormalizing;
    /// returns the squared norm of the result.
    pub fn project_x(&mut self, q: usize, minus: bool) -> f64 {
        let m = self.mask(q);
        for b in 0..self.amps.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | m]);
                if minus {
                    let d = (a0 - a1) * 0.5;
                    self.amps[b] = d;
                    self.amps[b | m] = -d;
                } else {
                    let s = (a0 + a1) * 0.5;
                    self.amps[b] = s;
                    self.amps[b | m] = s;
                }
            }
        }
        self.norm_sqr()
    }

    /// Probability that an X measurement of `q` yields `-1`.
    pub fn prob_x_minus(&self, q: usize) -> f64 {
        let m = self.mask(q);
        let mut p = 0.0;
        for b in 0..self.amps.len() {
            if b & m == 0 {
                p += ((self.amps[b] - self.amps[b | m]) * 0.5).norm_sqr() * 2.0;
            }
        }
        p
    }
}

pub fn apply_gates(psi: &StateVector, gates: &GateList) -> Result<StateVector> {
    if gates.n != psi.qubits() {
        return Err(Error::Dimension {
            expected: psi.qubits(),
            found: gates.n,
        });
    }
    let mut out = psi.clone();
    for &g in &gates.gates {
        out.apply_gate(g)?;
    }
    Ok(out)
}

/// `|<a|b>| >= 1 - tol`.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    Ok(a.inner(b)?.norm() >= 1.0 - tol)
}
