#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use mcs_core::pauli::{commutes, multiply};
use mcs_core::sim::dense::{gate_matrix, identity, pauli_coefficients, phased_pauli_matrix, Matrix};
use mcs_core::{CliffordGate, Factor, PauliString, PhasedPauli, Tableau};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXACT: f64 = 1e-12;

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub const GOLDEN_NAMES: [&str; 4] = ["identity", "h", "s", "cnot"];

pub fn all_strings(n: usize) -> Vec<PauliString> {
    (0..1usize << (2 * n))
        .map(|code| {
            let fs: Vec<Factor> = (0..n).map(|q| Factor::ALL[(code >> (2 * q)) & 3]).collect();
            PauliString::from_factors(&fs)
        })
        .collect()
}

pub fn all_phased(n: usize) -> Vec<PhasedPauli> {
    all_strings(n)
        .into_iter()
        .flat_map(|s| (0..4).map(move |k| PhasedPauli::new(s.clone(), k)))
        .collect()
}

pub fn random_phased(n: usize, rng: &mut impl Rng) -> PhasedPauli {
    let fs: Vec<Factor> = (0..n).map(|_| Factor::ALL[rng.random_range(0..4)]).collect();
    PhasedPauli::new(PauliString::from_factors(&fs), rng.random_range(0..4))
}

pub fn close(a: &Matrix, b: &Matrix) -> bool {
    a.shape() == b.shape() && (a - b).iter().all(|z| z.norm() < EXACT)
}

/// Multiplication and commutation of one pair against dense matrices.
pub fn check_pair(p: &PhasedPauli, q: &PhasedPauli) -> Result<(), String> {
    let (mp, mq) = (phased_pauli_matrix(p), phased_pauli_matrix(q));
    let prod = multiply(p, q).map_err(|e| e.to_string())?;
    if !close(&phased_pauli_matrix(&prod), &(&mp * &mq)) {
        return Err(format!("{p} * {q} gave {prod}"));
    }
    if let (Some(a), Some(b)) = (p.to_signed(), q.to_signed()) {
        let dense = close(&(&mp * &mq), &(&mq * &mp));
        if commutes(&a, &b).map_err(|e| e.to_string())? != dense {
            return Err(format!("commutes({a}, {b}) disagrees with dense"));
        }
    }
    Ok(())
}

/// Every signed Clifford tableau on `n <= 2` qubits with a dense unitary, by
/// breadth-first closure under H, S and CNOT.
pub fn all_cliffords(n: usize) -> Vec<(Tableau, Matrix)> {
    let mut gens = Vec::new();
    for q in 0..n {
        gens.push(CliffordGate::H(q));
        gens.push(CliffordGate::S(q));
        for t in 0..n {
            if t != q {
                gens.push(CliffordGate::Cnot { control: q, target: t });
            }
        }
    }
    let gm: Vec<Matrix> = gens.iter().map(|&g| gate_matrix(g, n)).collect();
    let start = Tableau::identity(n).unwrap();
    let mut seen: HashMap<Tableau, usize> = HashMap::new();
    let mut out = vec![(start.clone(), identity(n))];
    seen.insert(start, 0);
    let mut head = 0;
    while head < out.len() {
        let (t, u) = out[head].clone();
        head += 1;
        for (g, m) in gens.iter().zip(&gm) {
            let next = t.apply_gate(*g).unwrap();
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), out.len());
                out.push((next, m * &u));
            }
        }
    }
    out
}

/// `conjugate(t, p)` against `U P U†`, phases exact.
pub fn check_conjugation(t: &Tableau, u: &Matrix, p: &PhasedPauli) -> Result<(), String> {
    let got = t.conjugate(p).map_err(|e| e.to_string())?;
    let want = u * phased_pauli_matrix(p) * u.adjoint();
    if close(&phased_pauli_matrix(&got), &want) {
        Ok(())
    } else {
        Err(format!("conjugating {p} gave {got}"))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|alpha_sigma|^2` of the Pauli expansion of `op`, keyed by body.
pub fn pauli_weights(op: &Matrix) -> BTreeMap<String, f64> {
    pauli_coefficients(op)
        .unwrap()
        .into_iter()
        .map(|(k, v): (String, Complex64)| (k, v.norm_sqr()))
        .collect()
}

/// Body of `prod_i X_i^{m_iz} Z_i^{m_ix}` (up to phase) for an outcome vector.
pub fn correction_body(outcome: &[bool]) -> String {
    outcome
        .chunks(2)
        .map(|b| match (b[0], b[1]) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        })
        .collect()
}
