//! Stabilizer (CHP) simulation of synthesized circuits, for large `n`.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Correction, Gate, Stage};
use crate::error::{Error, Result};
use crate::pauli::{check_dims, Factor, PauliString, PhasedPauli, SignedPauli};
use crate::sim::branch::OutcomeVector;
use crate::tableau::{conjugate_row_by_gate, CliffordGate};

/// Destabilizer/stabilizer tableau of a pure stabilizer state.
///
/// Rows `0..m` are destabilizers, rows `m..2m` stabilizers.
#[derive(Clone, Debug)]
pub struct StabilizerState {
    qubits: usize,
    rows: Vec<SignedPauli>,
}

impl StabilizerState {
    /// `|0...0>`.
    pub fn zero(qubits: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * qubits);
        rows.extend((0..qubits).map(|q| SignedPauli::single(qubits, q, Factor::X)));
        rows.extend((0..qubits).map(|q| SignedPauli::single(qubits, q, Factor::Z)));
        StabilizerState { qubits, rows }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn stabilizers(&self) -> &[SignedPauli] {
        &self.rows[self.qubits..]
    }

    pub fn destabilizers(&self) -> &[SignedPauli] {
        &self.rows[..self.qubits]
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.qubits {
            return Err(Error::IndexOutOfRange {
                index: q + 1,
                n: self.qubits,
            });
        }
        Ok(())
    }

    pub fn apply(&mut self, g: CliffordGate) -> Result<()> {
        match g {
            CliffordGate::H(q) | CliffordGate::S(q) => self.check(q)?,
            CliffordGate::Cnot { control, target } => {
                self.check(control)?;
                self.check(target)?;
                if control == target {
                    return Err(Error::InvalidCircuit(format!(
                        "CNOT with control == target == {control}"
                    )));
                }
            }
        }
        for row in &mut self.rows {
            conjugate_row_by_gate(row, g);
        }
        Ok(())
    }

    fn apply_unchecked(&mut self, g: CliffordGate) {
        for row in &mut self.rows {
            conjugate_row_by_gate(row, g);
        }
    }

    fn apply_s_dagger(&mut self, q: usize) {
        for _ in 0..3 {
            self.apply_unchecked(CliffordGate::S(q));
        }
    }

    /// Pauli `X` on `q`: negates rows with a `Z` component there.
    pub fn apply_x(&mut self, q: usize) {
        for row in &mut self.rows {
            if row.string().z_bit(q) {
                row.flip_sign();
            }
        }
    }

    /// Pauli `Z` on `q`: negates rows with an `X` component there.
    pub fn apply_z(&mut self, q: usize) {
        for row in &mut self.rows {
            if row.string().x_bit(q) {
                row.flip_sign();
            }
        }
    }

    /// Controlled `payload` (on qubits `offset..offset+payload.n()`) with the given control.
    pub fn apply_controlled_pauli(&mut self, control: usize, payload: &SignedPauli, offset: usize) -> Result<()> {
        self.check(control)?;
        if offset + payload.n() > self.qubits {
            return Err(Error::Dimension {
                expected: self.qubits,
                found: offset + payload.n(),
            });
        }
        if (offset..offset + payload.n()).contains(&control) {
            return Err(Error::InvalidCircuit("control qubit inside payload register".into()));
        }
        for q in payload.string().support() {
            let t = offset + q;
            let cnot = CliffordGate::Cnot { control, target: t };
            match payload.string().get(q) {
                Factor::X => self.apply_unchecked(cnot),
                Factor::Z => {
                    self.apply_unchecked(CliffordGate::H(t));
                    self.apply_unchecked(cnot);
                    self.apply_unchecked(CliffordGate::H(t));
                }
                Factor::Y => {
                    self.apply_s_dagger(t);
                    self.apply_unchecked(cnot);
                    self.apply_unchecked(CliffordGate::S(t));
                }
                Factor::I => unreachable!(),
            }
        }
        if payload.is_negative() {
            self.apply_z(control);
        }
        Ok(())
    }

    /// Z-basis measurement; returns `true` for outcome `-1`. Random outcomes use `rng`.
    pub fn measure_z(&mut self, q: usize, rng: &mut impl Rng) -> Result<bool> {
        self.check(q)?;
        let m = self.qubits;
        if let Some(p) = (m..2 * m).find(|&i| self.rows[i].string().x_bit(q)) {
            let pivot = self.rows[p].clone();
            for i in 0..2 * m {
                if i != p && self.rows[i].string().x_bit(q) {
                    let mut prod = PhasedPauli::from(&self.rows[i]);
                    prod.mul_assign_signed(&pivot);
                    self.rows[i] = match prod.to_signed() {
                        Some(s) => s,
                        None if i < m => SignedPauli::new(prod.string().clone(), false),
                        None => {
                            return Err(Error::SimulationIntegrity(format!(
                                "stabilizer rows {i} and {p} anticommute"
                            )))
                        }
                    };
                }
            }
            let outcome = rng.random::<bool>();
            self.rows[p - m] = pivot;
            self.rows[p] = SignedPauli::new(PauliString::single(m, q, Factor::Z), outcome);
            Ok(outcome)
        } else {
            let mut acc = PhasedPauli::identity(m);
            for i in 0..m {
                if self.rows[i].string().x_bit(q) {
                    acc.mul_assign_signed(&self.rows[i + m]);
                }
            }
            let expected = PauliString::single(m, q, Factor::Z);
            match acc.to_signed() {
                Some(s) if *s.string() == expected => Ok(s.is_negative()),
                _ => Err(Error::SimulationIntegrity(format!(
                    "deterministic measurement on qubit {q} produced {acc}"
                ))),
            }
        }
    }

    pub fn measure_x(&mut self, q: usize, rng: &mut impl Rng) -> Result<bool> {
        self.check(q)?;
        self.apply_unchecked(CliffordGate::H(q));
        let outcome = self.measure_z(q, rng)?;
        self.apply_unchecked(CliffordGate::H(q));
        Ok(outcome)
    }

    /// Generators of the subgroup supported on `qubits`, restricted to that range.
    ///
    /// Fails unless the state factorizes across the boundary.
    pub fn reduced_generators(&self, qubits: Range<usize>) -> Result<Vec<SignedPauli>> {
        let m = self.qubits;
        if qubits.end > m || qubits.start > qubits.end {
            return Err(Error::IndexOutOfRange {
                index: qubits.end,
                n: m,
            });
        }
        let outside: Vec<usize> = (0..m).filter(|q| !qubits.contains(q)).collect();
        let mut rows: Vec<PhasedPauli> = self.stabilizers().iter().map(PhasedPauli::from).collect();
        let cols: Vec<usize> = outside.iter().flat_map(|&q| [2 * q, 2 * q + 1]).collect();
        let pivots = reduce(&mut rows, &cols)?;
        let want = qubits.len();
        if pivots.len() != outside.len() || rows.len() - pivots.len() != want {
            return Err(Error::SimulationIntegrity(format!(
                "register {qubits:?} is entangled with the rest (rank {} outside, expected {})",
                pivots.len(),
                outside.len()
            )));
        }
        rows[pivots.len()..]
            .iter()
            .map(|r| {
                let mut s = PauliString::identity(want);
                for (k, q) in qubits.clone().enumerate() {
                    s.set(k, r.string().get(q));
                }
                r.to_signed()
                    .map(|signed| SignedPauli::new(s, signed.is_negative()))
                    .ok_or_else(|| Error::SimulationIntegrity(format!("non-Hermitian generator {r}")))
            })
            .collect()
    }
}

fn column_bit(p: &PauliString, col: usize) -> bool {
    let q = col / 2;
    if col.is_multiple_of(2) {
        p.x_bit(q)
    } else {
        p.z_bit(q)
    }
}

/// Gauss-Jordan elimination over the listed symplectic columns (`2q` = X part,
/// `2q + 1` = Z part of qubit `q`). Pivot rows are moved to the front; returns
/// their pivot columns. Rows must pairwise commute so products stay Hermitian.
fn reduce(rows: &mut [PhasedPauli], cols: &[usize]) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    for &col in cols {
        let rank = pivots.len();
        let Some(p) = (rank..rows.len()).find(|&r| column_bit(rows[r].string(), col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && column_bit(row.string(), col) {
                row.mul_assign_unchecked(pivot.string(), pivot.phase());
                if !row.is_hermitian() {
                    return Err(Error::SimulationIntegrity(format!(
                        "generators do not commute (product {row})"
                    )));
                }
            }
        }
        pivots.push(col);
    }
    Ok(pivots)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// `-p` is in the group.
    NegatedMember,
    NotMember,
}

/// A stabilizer group held in reduced row echelon form (per qubit, X column before Z).
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    rows: Vec<PhasedPauli>,
    pivots: Vec<usize>,
}

impl StabilizerGroup {
    /// Group generated by `generators`, which must pairwise commute.
    pub fn new(n: usize, generators: &[SignedPauli]) -> Result<Self> {
        for g in generators {
            check_dims(n, g.n())?;
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.string().anticommutes_with(b.string()) {
                    return Err(Error::SimulationIntegrity(format!(
                        "generators {a} and {b} anticommute"
                    )));
                }
            }
        }
        let mut rows: Vec<PhasedPauli> = generators.iter().map(PhasedPauli::from).collect();
        let cols: Vec<usize> = (0..2 * n).collect();
        let pivots = reduce(&mut rows, &cols)?;
        if rows[pivots.len()..].iter().any(|r| r.phase() != 0) {
            return Err(Error::SimulationIntegrity("generators contain -I".into()));
        }
        rows.truncate(pivots.len());
        Ok(StabilizerGroup { n, rows, pivots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical generators.
    pub fn generators(&self) -> Vec<SignedPauli> {
        self.rows
            .iter()
            .map(|r| r.to_signed().expect("reduced rows are Hermitian"))
            .collect()
    }

    pub fn membership(&self, p: &SignedPauli) -> Result<Membership> {
        check_dims(self.n, p.n())?;
        let mut residue = p.to_phased();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if column_bit(residue.string(), col) {
                residue.mul_assign_unchecked(row.string(), row.phase());
            }
        }
        Ok(if !residue.string().is_identity() {
            Membership::NotMember
        } else {
            match residue.phase() {
                0 => Membership::Member,
                2 => Membership::NegatedMember,
                _ => Membership::NotMember,
            }
        })
    }

    /// Equality as groups, signs included.
    pub fn same_as(&self, other: &StabilizerGroup) -> bool {
        self.n == other.n && self.rank() == other.rank() && self.rows == other.rows
    }
}

/// Checks that `a` and `b` generate the same group, signs included.
pub fn same_group(n: usize, a: &[SignedPauli], b: &[SignedPauli]) -> Result<bool> {
    Ok(StabilizerGroup::new(n, a)?.same_as(&StabilizerGroup::new(n, b)?))
}

#[derive(Clone, Debug)]
pub struct StabilizerRun {
    pub outcome: OutcomeVector,
    /// Data-register generators in canonical form.
    pub generators: Vec<SignedPauli>,
}

/// Runs `c` on `|0...0>` with seeded measurement coins.
pub fn stabilizer_run_recorded(c: &Circuit, seed: u64) -> Result<StabilizerRun> {
    let n = c.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = StabilizerState::zero(3 * n);
    let mut outcome = OutcomeVector(vec![false; 2 * n]);
    for g in c.gates() {
        match g {
            Gate::PrepPlus(a) => state.apply(CliffordGate::H(a.index()))?,
            Gate::ControlledPauli { control, payload } => {
                state.apply_controlled_pauli(control.index(), payload, 2 * n)?
            }
            Gate::MeasureX { ancilla, bit } => {
                outcome.0[bit.index()] = state.measure_x(ancilla.index(), &mut rng)?;
            }
            Gate::ClassicalCorrection { bit, pauli, qubit } => {
                if outcome.0[bit.index()] {
                    match pauli {
                        Correction::X => state.apply_x(2 * n + qubit),
                        Correction::Z => state.apply_z(2 * n + qubit),
                    }
                }
            }
        }
    }
    debug_assert_eq!(c.stage(Stage::MA).len(), 2 * n);
    let generators = state.reduced_generators(2 * n..3 * n)?;
    let generators = StabilizerGroup::new(n, &generators)?.generators();
    Ok(StabilizerRun { outcome, generators })
}

/// Data-register stabilizer generators after running `c` on `|0...0>`.
pub fn stabilizer_run(c: &Circuit, seed: u64) -> Result<Vec<SignedPauli>> {
    Ok(stabilizer_run_recorded(c, seed)?.generators)
}
