mod common;

use common::*;
use mcs_core::sim::dense::{controlled_pauli_matrix, gates_unitary, identity, kron_all, signed_pauli_matrix};
use mcs_core::{random_clifford, PhasedPauli, SignedPauli};

#[test]
fn pauli_algebra_exhaustive_one_and_two_qubits() {
    for n in 1..=2 {
        let ps = all_phased(n);
        for p in &ps {
            for q in &ps {
                check_pair(p, q).unwrap();
            }
        }
    }
}

#[test]
fn pauli_algebra_random_three_qubits() {
    let mut r = rng(7);
    for _ in 0..500 {
        let (p, q) = (random_phased(3, &mut r), random_phased(3, &mut r));
        check_pair(&p, &q).unwrap();
    }
}

#[test]
fn clifford_group_sizes() {
    // signed tableaux = Clifford group modulo global phase
    assert_eq!(all_cliffords(1).len(), 24);
    assert_eq!(all_cliffords(2).len(), 11520);
}

#[test]
fn conjugation_exhaustive_one_qubit() {
    for (t, u) in all_cliffords(1) {
        for p in all_phased(1) {
            check_conjugation(&t, &u, &p).unwrap();
        }
    }
}

#[test]
fn conjugation_exhaustive_two_qubits() {
    let ps: Vec<_> = all_strings(2).into_iter().map(|s| PhasedPauli::new(s, 0)).collect();
    for (t, u) in all_cliffords(2) {
        for p in &ps {
            check_conjugation(&t, &u, p).unwrap();
        }
    }
}

#[test]
fn conjugation_random_three_qubits() {
    let mut r = rng(11);
    for seed in 0..500 {
        let (t, gates) = random_clifford(3, seed).unwrap();
        let u = gates_unitary(&gates);
        check_conjugation(&t, &u, &random_phased(3, &mut r)).unwrap();
    }
}

#[test]
fn controlled_conjugation_identity() {
    // (I ⊗ C) cP (I ⊗ C†) = c(C P C†)
    for seed in 0..40 {
        let n = 1 + seed as usize % 3;
        let (t, gates) = random_clifford(n, seed).unwrap();
        let u = gates_unitary(&gates);
        let q = random_phased(n, &mut rng(seed));
        let p = SignedPauli::new(q.string().clone(), q.phase() >= 2);
        let image = t.conjugate_signed(&p).unwrap();
        let lifted = kron_all(&[identity(1), u.clone()]);
        let lhs = &lifted * controlled_pauli_matrix(&p) * lifted.adjoint();
        assert!(close(&lhs, &controlled_pauli_matrix(&image)), "seed {seed}");
        assert!(close(
            &(&u * signed_pauli_matrix(&p) * u.adjoint()),
            &signed_pauli_matrix(&image)
        ));
    }
}
