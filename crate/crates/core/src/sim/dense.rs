//! Dense matrices for Paulis, gates and Clifford unitaries (small `n` only).
//!
//! Qubit 0 is the most significant tensor factor, matching the text order of
//! Pauli strings.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Factor, PauliString, PhasedPauli, SignedPauli};
use crate::tableau::{CliffordGate, GateList, Tableau};

pub type Matrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn factor_matrix(f: Factor) -> Matrix {
    let v = match f {
        Factor::I => [ONE, ZERO, ZERO, ONE],
        Factor::X => [ZERO, ONE, ONE, ZERO],
        Factor::Y => [ZERO, -I, I, ZERO],
        Factor::Z => [ONE, ZERO, ZERO, -ONE],
    };
    Matrix::from_row_slice(2, 2, &v)
}

pub fn identity(n_qubits: usize) -> Matrix {
    Matrix::identity(1 << n_qubits, 1 << n_qubits)
}

pub fn kron_all(ms: &[Matrix]) -> Matrix {
    ms.iter()
        .fold(Matrix::from_element(1, 1, ONE), |acc, m| acc.kronecker(m))
}

pub fn phase_factor(k: u8) -> Complex64 {
    [ONE, I, -ONE, -I][(k % 4) as usize]
}

pub fn pauli_string_matrix(p: &PauliString) -> Matrix {
    let fs: Vec<Matrix> = p.factors().map(factor_matrix).collect();
    kron_all(&fs)
}

pub fn phased_pauli_matrix(p: &PhasedPauli) -> Matrix {
    pauli_string_matrix(p.string()) * phase_factor(p.phase())
}

pub fn signed_pauli_matrix(p: &SignedPauli) -> Matrix {
    phased_pauli_matrix(&p.to_phased())
}

fn embed_single(n: usize, q: usize, m: &Matrix) -> Matrix {
    let fs: Vec<Matrix> = (0..n).map(|k| if k == q { m.clone() } else { identity(1) }).collect();
    kron_all(&fs)
}

pub fn hadamard() -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_row_slice(2, 2, &[ONE * s, ONE * s, ONE * s, -ONE * s])
}

pub fn phase_gate() -> Matrix {
    Matrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, I])
}

fn projector(bit: bool) -> Matrix {
    if bit {
        Matrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE])
    } else {
        Matrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO])
    }
}

/// `|0><0|_c ⊗ I + |1><1|_c ⊗ U_t` for single-qubit `u`.
pub fn controlled_single(n: usize, control: usize, target: usize, u: &Matrix) -> Matrix {
    let term = |bit: bool| {
        let fs: Vec<Matrix> = (0..n)
            .map(|k| {
                if k == control {
                    projector(bit)
                } else if k == target && bit {
                    u.clone()
                } else {
                    identity(1)
                }
            })
            .collect();
        kron_all(&fs)
    };
    term(false) + term(true)
}

pub fn gate_matrix(g: CliffordGate, n: usize) -> Matrix {
    match g {
        CliffordGate::H(q) => embed_single(n, q, &hadamard()),
        CliffordGate::S(q) => embed_single(n, q, &phase_gate()),
        CliffordGate::Cnot { control, target } => controlled_single(n, control, target, &factor_matrix(Factor::X)),
    }
}

/// Product of the gate matrices, first gate rightmost.
pub fn gates_unitary(gates: &GateList) -> Matrix {
    gates
        .gates
        .iter()
        .fold(identity(gates.n), |acc, &g| gate_matrix(g, gates.n) * acc)
}

/// `diag(I, payload)` over `(control ⊗ data)`, control as the most significant qubit.
pub fn controlled_pauli_matrix(payload: &SignedPauli) -> Matrix {
    let n = payload.n();
    let mut m = Matrix::zeros(2 << n, 2 << n);
    let dim = 1 << n;
    m.view_mut((0, 0), (dim, dim)).copy_from(&identity(n));
    m.view_mut((dim, dim), (dim, dim))
        .copy_from(&signed_pauli_matrix(payload));
    m
}

/// Dense unitary of the Clifford described by `t`, fixed up to one global phase.
///
/// `C|0>` is the joint `+1` eigenvector of the images of `Z_i`; column `x` is
/// `prod_i (C X_i C†)^(x_i) C|0>`.
pub fn clifford_unitary(t: &Tableau) -> Result<Matrix> {
    let n = t.n();
    if n > 10 {
        return Err(Error::InvalidSize(format!("dense unitary requested for n = {n}")));
    }
    let dim = 1usize << n;
    let mut proj = identity(n);
    for q in 0..n {
        proj = (identity(n) + signed_pauli_matrix(t.z_image(q))) * Complex64::new(0.5, 0.0) * proj;
    }
    let (best, _) = (0..dim)
        .map(|j| (j, proj.column(j).norm()))
        .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
    let v0 = proj.column(best).normalize();
    let x_images: Vec<Matrix> = (0..n).map(|q| signed_pauli_matrix(t.x_image(q))).collect();
    let mut u = Matrix::zeros(dim, dim);
    for x in 0..dim {
        let mut col = v0.clone();
        for (q, xm) in x_images.iter().enumerate() {
            if (x >> (n - 1 - q)) & 1 == 1 {
                col = xm * col;
            }
        }
        u.set_column(x, &col);
    }
    Ok(u)
}

/// Coefficients of `op` in the Pauli basis, keyed by the unsigned Pauli body (e.g. `"XZ"`).
pub fn pauli_coefficients(op: &Matrix) -> Result<BTreeMap<String, Complex64>> {
    if op.nrows() != op.ncols() {
        return Err(Error::Dimension {
            expected: op.nrows(),
            found: op.ncols(),
        });
    }
    let dim = op.nrows();
    if !dim.is_power_of_two() {
        return Err(Error::InvalidSize(format!(
            "operator dimension {dim} is not a power of two"
        )));
    }
    let m = dim.trailing_zeros() as usize;
    if m > 4 {
        return Err(Error::InvalidSize(format!(
            "Pauli expansion limited to 4 qubits, got {m}"
        )));
    }
    let mut out = BTreeMap::new();
    for code in 0..(1usize << (2 * m)) {
        let factors: Vec<Factor> = (0..m).map(|q| Factor::ALL[(code >> (2 * q)) & 3]).collect();
        let p = PauliString::from_factors(&factors);
        let pm = pauli_string_matrix(&p);
        let alpha = (pm.adjoint() * op).trace() / Complex64::new(dim as f64, 0.0);
        out.insert(p.to_string(), alpha);
    }
    Ok(out)
}

/// Reassembles `sum_u alpha_u P_u`.
pub fn from_pauli_coefficients(coeffs: &BTreeMap<String, Complex64>) -> Result<Matrix> {
    let mut acc: Option<Matrix> = None;
    for (body, &a) in coeffs {
        let p: SignedPauli = format!("+{body}").parse()?;
        let term = signed_pauli_matrix(&p) * a;
        acc = Some(match acc {
            Some(m) => m + term,
            None => term,
        });
    }
    acc.ok_or_else(|| Error::InvalidSize("empty coefficient map".into()))
}

/// `true` iff `a = e^{iθ} b` entrywise within `tol`.
pub fn equal_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let Some((idx, _)) = b.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())) else {
        return true;
    };
    if b[idx].norm() < tol {
        return a.iter().all(|z| z.norm() < tol);
    }
    let phase = a[idx] / b[idx];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    (a - b * phase).iter().all(|z| z.norm() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::random_clifford;

    #[test]
    fn pauli_coefficient_examples() {
        let h = pauli_coefficients(&hadamard()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h["X"] - Complex64::new(s, 0.0)).norm() < 1e-14);
        assert!((h["Z"] - Complex64::new(s, 0.0)).norm() < 1e-14);
        assert!(h["I"].norm() < 1e-14 && h["Y"].norm() < 1e-14);
        let id = pauli_coefficients(&identity(2)).unwrap();
        assert!((id["II"] - ONE).norm() < 1e-14);
        assert!(id.iter().filter(|(k, _)| *k != "II").all(|(_, v)| v.norm() < 1e-14));
        assert!(pauli_coefficients(&Matrix::zeros(2, 4)).is_err());
    }

    #[test]
    fn coefficients_reconstruct_and_normalize() {
        for seed in 0..20 {
            let n = 1 + seed as usize % 3;
            let (_, gates) = random_clifford(n, seed).unwrap();
            let u = gates_unitary(&gates);
            let c = pauli_coefficients(&u).unwrap();
            let total: f64 = c.values().map(|a| a.norm_sqr()).sum();
            assert!((total - 1.0).abs() < 1e-12);
            let back = from_pauli_coefficients(&c).unwrap();
            assert!((back - &u).iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn tableau_unitary_matches_gate_unitary() {
        for seed in 0..30 {
            let n = 1 + seed as usize % 4;
            let (t, gates) = random_clifford(n, seed).unwrap();
            let a = clifford_unitary(&t).unwrap();
            let b = gates_unitary(&gates);
            assert!(equal_up_to_phase(&a, &b, 1e-10), "seed {seed}");
        }
    }

    #[test]
    fn controlled_pauli_block_form() {
        let p: SignedPauli = "-XZ".parse().unwrap();
        let m = controlled_pauli_matrix(&p);
        assert_eq!(m.nrows(), 8);
        assert!((m.view((4, 4), (4, 4)) + pauli_string_matrix(p.string()))
            .iter()
            .all(|z| z.norm() < 1e-15));
    }
}
