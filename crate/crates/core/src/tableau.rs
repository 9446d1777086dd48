//! Stabilizer tableaus of Clifford unitaries.
//!
//! A [`Tableau`] for an `n`-qubit Clifford `C` stores the `2n` signed Paulis
//! `C Z_i C†` and `C X_i C†`, interleaved as `Z1, X1, Z2, X2, ...`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{check_dims, Factor, PauliString, PhasedPauli, SignedPauli};

/// Which single-qubit generator a tableau row is the image of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Z,
    X,
}

/// Row label such as `Z1` or `X3`. `qubit` is 0-based; text form is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RowLabel {
    pub qubit: usize,
    pub generator: Generator,
}

impl RowLabel {
    pub fn from_row_index(r: usize) -> Self {
        RowLabel {
            qubit: r / 2,
            generator: if r.is_multiple_of(2) {
                Generator::Z
            } else {
                Generator::X
            },
        }
    }

    pub fn row_index(self) -> usize {
        2 * self.qubit + matches!(self.generator, Generator::X) as usize
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::Z => 'Z',
            Generator::X => 'X',
        };
        write!(f, "{}{}", g, self.qubit + 1)
    }
}

/// A row pair with the wrong commutation relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticViolation {
    pub first: RowLabel,
    pub second: RowLabel,
    pub must_anticommute: bool,
}

impl fmt::Display for SymplecticViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.must_anticommute {
            "anticommute"
        } else {
            "commute"
        };
        write!(f, "({},{}) must {}", self.first, self.second, rel)
    }
}

/// Elementary Clifford gate. Qubit indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Cnot { control: usize, target: usize },
}

impl CliffordGate {
    fn max_qubit(self) -> usize {
        match self {
            CliffordGate::H(q) | CliffordGate::S(q) => q,
            CliffordGate::Cnot { control, target } => control.max(target),
        }
    }

    fn check(self, n: usize) -> Result<()> {
        let q = self.max_qubit();
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q + 1, n });
        }
        if let CliffordGate::Cnot { control, target } = self {
            if control == target {
                return Err(Error::InvalidSize(format!(
                    "CNOT control and target coincide on qubit {}",
                    control + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordGate::H(q) => write!(f, "H {}", q + 1),
            CliffordGate::S(q) => write!(f, "S {}", q + 1),
            CliffordGate::Cnot { control, target } => {
                write!(f, "CNOT {} {}", control + 1, target + 1)
            }
        }
    }
}

/// Ordered gate sequence on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GateList {
    pub n: usize,
    pub gates: Vec<CliffordGate>,
}

impl GateList {
    pub fn new(n: usize, gates: Vec<CliffordGate>) -> Result<Self> {
        for g in &gates {
            g.check(n)?;
        }
        Ok(GateList { n, gates })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// One gate per line: `H <q>`, `S <q>` or `CNOT <c> <t>`, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, n: usize) -> Result<Self> {
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let qubit = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(q) if (1..=n).contains(&q) => Ok(q - 1),
                    _ => Err(Error::parse(line_no, 1, format!("bad qubit index {s:?}"))),
                }
            };
            let g = match parts.as_slice() {
                ["H", q] => CliffordGate::H(qubit(q)?),
                ["S", q] => CliffordGate::S(qubit(q)?),
                ["CNOT", c, t] => CliffordGate::Cnot {
                    control: qubit(c)?,
                    target: qubit(t)?,
                },
                _ => return Err(Error::parse(line_no, 1, format!("bad gate line {line:?}"))),
            };
            g.check(n).map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
            gates.push(g);
        }
        Ok(GateList { n, gates })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    rows: Vec<SignedPauli>,
}

impl Tableau {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("tableau needs at least one qubit".into()));
        }
        let mut rows = Vec::with_capacity(2 * n);
        for q in 0..n {
            rows.push(SignedPauli::single(n, q, Factor::Z));
            rows.push(SignedPauli::single(n, q, Factor::X));
        }
        Ok(Tableau { n, rows })
    }

    /// Builds a tableau from interleaved rows, checking lengths and the symplectic condition.
    pub fn from_rows(rows: Vec<SignedPauli>) -> Result<Self> {
        let t = Self::from_rows_unchecked(rows)?;
        t.check_symplectic().map_err(Error::NotSymplectic)?;
        Ok(t)
    }

    /// Builds a tableau checking only shape; the symplectic condition is not enforced.
    pub fn from_rows_unchecked(rows: Vec<SignedPauli>) -> Result<Self> {
        if rows.is_empty() || !rows.len().is_multiple_of(2) {
            return Err(Error::InvalidSize(format!(
                "tableau needs a positive even number of rows, got {}",
                rows.len()
            )));
        }
        let n = rows.len() / 2;
        for r in &rows {
            check_dims(n, r.n())?;
        }
        Ok(Tableau { n, rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[SignedPauli] {
        &self.rows
    }

    pub fn row(&self, label: RowLabel) -> &SignedPauli {
        &self.rows[label.row_index()]
    }

    /// `C Z_q C†`.
    pub fn z_image(&self, q: usize) -> &SignedPauli {
        &self.rows[2 * q]
    }

    /// `C X_q C†`.
    pub fn x_image(&self, q: usize) -> &SignedPauli {
        &self.rows[2 * q + 1]
    }

    /// Every row pair with the wrong commutation relation; empty means symplectic.
    pub fn symplectic_violations(&self) -> Vec<SymplecticViolation> {
        let mut out = Vec::new();
        for a in 0..self.rows.len() {
            for b in (a + 1)..self.rows.len() {
                let must_anticommute = a / 2 == b / 2;
                let anti = self.rows[a].string().anticommutes_with(self.rows[b].string());
                if anti != must_anticommute {
                    out.push(SymplecticViolation {
                        first: RowLabel::from_row_index(a),
                        second: RowLabel::from_row_index(b),
                        must_anticommute,
                    });
                }
            }
        }
        out
    }

    pub fn check_symplectic(&self) -> std::result::Result<(), Vec<SymplecticViolation>> {
        let v = self.symplectic_violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// `C p C†`, with exact phase.
    ///
    /// `p` is expanded as `i^(phase - #Y) * prod_q Z_q^z X_q^x` (Z before X on
    /// each qubit, qubits ascending) and the images are multiplied left to right.
    pub fn conjugate(&self, p: &PhasedPauli) -> Result<PhasedPauli> {
        check_dims(self.n, p.n())?;
        Ok(self.conjugate_unchecked(p.string(), p.phase()))
    }

    fn conjugate_unchecked(&self, p: &PauliString, phase: u8) -> PhasedPauli {
        let y = (p.y_count() % 4) as u8;
        let mut acc = PhasedPauli::new(PauliString::identity(self.n), (phase + 4 - y) % 4);
        for q in 0..self.n {
            if p.z_bit(q) {
                acc.mul_assign_signed(&self.rows[2 * q]);
            }
            if p.x_bit(q) {
                acc.mul_assign_signed(&self.rows[2 * q + 1]);
            }
        }
        acc
    }

    /// Conjugates a Hermitian Pauli; the image of a Hermitian Pauli under a
    /// valid tableau is Hermitian, so an imaginary result signals a corrupt tableau.
    pub fn conjugate_signed(&self, p: &SignedPauli) -> Result<SignedPauli> {
        check_dims(self.n, p.n())?;
        let r = self.conjugate_unchecked(p.string(), if p.is_negative() { 2 } else { 0 });
        r.to_signed()
            .ok_or_else(|| Error::Internal(format!("conjugate of {p} is not Hermitian: {r}")))
    }

    /// Tableau of `C†`.
    ///
    /// The Pauli part is the block transpose of the symplectic matrix; each sign
    /// is read off by conjugating the unsigned candidate row with `C` and
    /// comparing against the generator it must map back to.
    pub fn invert(&self) -> Result<Tableau> {
        self.check_symplectic().map_err(Error::NotSymplectic)?;
        let n = self.n;
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut qz = PauliString::identity(n);
            let mut qx = PauliString::identity(n);
            for j in 0..n {
                let zj = self.z_image(j).string();
                let xj = self.x_image(j).string();
                qz.set_z(j, xj.x_bit(i));
                qz.set_x(j, zj.x_bit(i));
                qx.set_z(j, xj.z_bit(i));
                qx.set_x(j, zj.z_bit(i));
            }
            for (candidate, generator) in [(qz, Factor::Z), (qx, Factor::X)] {
                let image = self.conjugate_unchecked(&candidate, 0);
                let expected = PauliString::single(n, i, generator);
                let negative = match (image.string() == &expected, image.phase()) {
                    (true, 0) => false,
                    (true, 2) => true,
                    _ => {
                        return Err(Error::Internal(format!(
                            "generator {}{} times conjugated candidate is not ±I (got {image})",
                            generator.to_char(),
                            i + 1
                        )))
                    }
                };
                rows.push(SignedPauli::new(candidate, negative));
            }
        }
        Ok(Tableau { n, rows })
    }

    /// Tableau of `then ∘ self`.
    pub fn compose(&self, then: &Tableau) -> Result<Tableau> {
        check_dims(self.n, then.n)?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                then.conjugate_unchecked(r.string(), if r.is_negative() { 2 } else { 0 })
                    .to_signed()
                    .ok_or_else(|| Error::Internal(format!("composed image of {r} is not Hermitian")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tableau { n: self.n, rows })
    }

    /// Tableau of `g ∘ C`.
    pub fn apply_gate(&self, g: CliffordGate) -> Result<Tableau> {
        let mut t = self.clone();
        t.apply_gate_in_place(g)?;
        Ok(t)
    }

    pub fn apply_gate_in_place(&mut self, g: CliffordGate) -> Result<()> {
        g.check(self.n)?;
        for row in &mut self.rows {
            conjugate_row_by_gate(row, g);
        }
        Ok(())
    }

    /// Sum of row weights.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(SignedPauli::weight).sum()
    }

    /// Binary part as a `2n x 2n` matrix in block layout: all Z rows, then all
    /// X rows; columns are the `z` bits followed by the `x` bits.
    pub fn binary_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n;
        let order = (0..n).map(|q| 2 * q).chain((0..n).map(|q| 2 * q + 1));
        order
            .map(|r| {
                let s = self.rows[r].string();
                (0..n).map(|q| s.z_bit(q)).chain((0..n).map(|q| s.x_bit(q))).collect()
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TABLEAU_HEADER}\nn {}\n", self.n);
        for (r, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("{} -> {}\n", RowLabel::from_row_index(r), row));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Tableau> {
        let mut lines = content_lines(text);
        let last_line = text.lines().count().max(1);

        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, 1, "missing header"))?;
        if header != TABLEAU_HEADER {
            return Err(Error::parse(ln, 1, format!("malformed header {header:?}")));
        }
        let n = parse_size_line(&mut lines, last_line)?;

        let mut rows = Vec::with_capacity(2 * n);
        let mut row_lines = Vec::with_capacity(2 * n);
        for r in 0..2 * n {
            let label = RowLabel::from_row_index(r);
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line, 1, format!("missing row {label}")))?;
            let expected = format!("{label} -> ");
            let Some(body) = line.strip_prefix(&expected) else {
                return Err(Error::parse(ln, 1, format!("expected row {label}, found {line:?}")));
            };
            let p: SignedPauli = body.parse().map_err(|e: Error| e.at_line(ln, expected.len()))?;
            if p.n() != n {
                return Err(Error::parse(
                    ln,
                    expected.len() + 1,
                    format!("row {label} has {} qubits, expected {n}", p.n()),
                ));
            }
            rows.push(p);
            row_lines.push(ln);
        }
        if let Some((ln, line)) = lines.next() {
            return Err(Error::parse(ln, 1, format!("unexpected trailing line {line:?}")));
        }
        let t = Tableau { n, rows };
        if let Err(v) = t.check_symplectic() {
            let ln = row_lines[v[0].second.row_index()];
            return Err(Error::NotSymplectic(v).at_line(ln, 0));
        }
        Ok(t)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub const TABLEAU_HEADER: &str = "mcs-tableau v1";

/// Non-comment, non-blank lines with 1-based line numbers, trailing whitespace removed.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.trim_start().starts_with('#'))
}

pub(crate) fn parse_size_line<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    last_line: usize,
) -> Result<usize> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, 1, "missing size line"))?;
    match line.strip_prefix("n ").map(str::parse::<usize>) {
        Some(Ok(n)) if n >= 1 => Ok(n),
        _ => Err(Error::parse(ln, 1, format!("malformed size line {line:?}"))),
    }
}

#[inline]
pub(crate) fn conjugate_row_by_gate(row: &mut SignedPauli, g: CliffordGate) {
    match g {
        CliffordGate::H(q) => {
            let (z, x) = (row.string().z_bit(q), row.string().x_bit(q));
            if z && x {
                row.flip_sign();
            }
            let s = row.string_mut();
            s.set_z(q, x);
            s.set_x(q, z);
        }
        CliffordGate::S(q) => {
            let (z, x) = (row.string().z_bit(q), row.string().x_bit(q));
            if z && x {
                row.flip_sign();
            }
            row.string_mut().set_z(q, z ^ x);
        }
        CliffordGate::Cnot { control, target } => {
            let s = row.string();
            let (xc, zc, xt, zt) = (s.x_bit(control), s.z_bit(control), s.x_bit(target), s.z_bit(target));
            if xc && zt && !(xt ^ zc) {
                row.flip_sign();
            }
            let s = row.string_mut();
            s.set_x(target, xt ^ xc);
            s.set_z(control, zc ^ zt);
        }
    }
}

/// Column-major tableau used to fold long gate sequences: each gate touches
/// two or four bit columns of `2n` bits instead of every row.
struct ColumnTableau {
    n: usize,
    z: Vec<Vec<u64>>,
    x: Vec<Vec<u64>>,
    signs: Vec<u64>,
}

impl ColumnTableau {
    fn identity(n: usize) -> Self {
        let words = (2 * n).div_ceil(64);
        let mut z = vec![vec![0u64; words]; n];
        let mut x = vec![vec![0u64; words]; n];
        for q in 0..n {
            let (rz, rx) = (2 * q, 2 * q + 1);
            z[q][rz / 64] |= 1 << (rz % 64);
            x[q][rx / 64] |= 1 << (rx % 64);
        }
        ColumnTableau {
            n,
            z,
            x,
            signs: vec![0; words],
        }
    }

    fn apply(&mut self, g: CliffordGate) {
        match g {
            CliffordGate::H(q) => {
                for w in 0..self.signs.len() {
                    self.signs[w] ^= self.z[q][w] & self.x[q][w];
                }
                std::mem::swap(&mut self.z[q], &mut self.x[q]);
            }
            CliffordGate::S(q) => {
                for w in 0..self.signs.len() {
                    self.signs[w] ^= self.z[q][w] & self.x[q][w];
                    self.z[q][w] ^= self.x[q][w];
                }
            }
            CliffordGate::Cnot { control: c, target: t } => {
                for w in 0..self.signs.len() {
                    let (xc, zc, xt, zt) = (self.x[c][w], self.z[c][w], self.x[t][w], self.z[t][w]);
                    self.signs[w] ^= xc & zt & !(xt ^ zc);
                    self.x[t][w] = xt ^ xc;
                    self.z[c][w] = zc ^ zt;
                }
            }
        }
    }

    fn into_tableau(self) -> Tableau {
        let n = self.n;
        let bit = |v: &[u64], r: usize| (v[r / 64] >> (r % 64)) & 1 == 1;
        let rows = (0..2 * n)
            .map(|r| {
                let mut s = PauliString::identity(n);
                for q in 0..n {
                    s.set_z(q, bit(&self.z[q], r));
                    s.set_x(q, bit(&self.x[q], r));
                }
                SignedPauli::new(s, bit(&self.signs, r))
            })
            .collect();
        Tableau { n, rows }
    }
}

/// Folds `gates` onto the identity tableau.
pub fn tableau_from_gates(gates: &GateList) -> Result<Tableau> {
    if gates.n == 0 {
        return Err(Error::InvalidSize("tableau needs at least one qubit".into()));
    }
    let mut t = ColumnTableau::identity(gates.n);
    for &g in &gates.gates {
        g.check(gates.n)?;
        t.apply(g);
    }
    Ok(t.into_tableau())
}

/// Number of gates drawn by [`random_clifford`]: `5 n^2`.
pub fn random_gate_count(n: usize) -> usize {
    5 * n * n
}

/// Random Clifford as a uniformly drawn gate sequence of length `5 n^2`.
///
/// Not Haar-uniform over the Clifford group. For `n = 1` only `H` and `S` are drawn.
pub fn random_clifford(n: usize, seed: u64) -> Result<(Tableau, GateList)> {
    random_clifford_with_length(n, seed, random_gate_count(n))
}

pub fn random_clifford_with_length(n: usize, seed: u64, len: usize) -> Result<(Tableau, GateList)> {
    if n == 0 {
        return Err(Error::InvalidSize("tableau needs at least one qubit".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = if n == 1 { 2 } else { 3 };
    let gates = (0..len)
        .map(|_| match rng.random_range(0..kinds) {
            0 => CliffordGate::H(rng.random_range(0..n)),
            1 => CliffordGate::S(rng.random_range(0..n)),
            _ => {
                let control = rng.random_range(0..n);
                let mut target = rng.random_range(0..n - 1);
                if target >= control {
                    target += 1;
                }
                CliffordGate::Cnot { control, target }
            }
        })
        .collect();
    let gates = GateList { n, gates };
    let t = tableau_from_gates(&gates)?;
    Ok((t, gates))
}

pub fn identity_tableau(n: usize) -> Result<Tableau> {
    Tableau::identity(n)
}

pub fn tableau_weight(t: &Tableau) -> usize {
    t.weight()
}

pub fn parse_tableau(text: &str) -> Result<Tableau> {
    Tableau::from_text(text)
}

pub fn serialize_tableau(t: &Tableau) -> String {
    t.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPauli {
        s.parse().unwrap()
    }

    fn tab(rows: &[&str]) -> Tableau {
        Tableau::from_rows(rows.iter().map(|r| sp(r)).collect()).unwrap()
    }

    fn h() -> Tableau {
        tab(&["+X", "+Z"])
    }

    fn s() -> Tableau {
        tab(&["+Z", "+Y"])
    }

    fn cnot() -> Tableau {
        tab(&["+ZI", "+XX", "+ZZ", "+IX"])
    }

    #[test]
    fn identity_rows() {
        let t = Tableau::identity(2).unwrap();
        let texts: Vec<String> = t.rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(texts, ["+ZI", "+XI", "+IZ", "+IX"]);
        assert_eq!(Tableau::identity(1).unwrap().rows(), &[sp("+Z"), sp("+X")]);
        let c = Tableau::identity(3)
            .unwrap()
            .conjugate(&sp("+XIZ").to_phased())
            .unwrap();
        assert_eq!(c, sp("+XIZ").to_phased());
        assert!(matches!(Tableau::identity(0), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn symplectic_checks() {
        assert!(Tableau::identity(4).unwrap().check_symplectic().is_ok());
        let bad = Tableau::from_rows_unchecked(vec![sp("+X"), sp("+X")]).unwrap();
        let v = bad.check_symplectic().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "(Z1,X1) must anticommute");
        assert!(h().check_symplectic().is_ok());
        assert!(matches!(
            Tableau::from_rows(vec![sp("+X"), sp("+X")]),
            Err(Error::NotSymplectic(_))
        ));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(h().conjugate(&sp("+Y").to_phased()).unwrap(), sp("-Y").to_phased());
        assert_eq!(cnot().conjugate(&sp("+IZ").to_phased()).unwrap(), sp("+ZZ").to_phased());
        let (t, _) = random_clifford(3, 7).unwrap();
        assert_eq!(
            t.conjugate(&PhasedPauli::identity(3)).unwrap(),
            PhasedPauli::identity(3)
        );
        assert!(t.conjugate(&PhasedPauli::identity(2)).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(h().invert().unwrap(), h());
        assert_eq!(s().invert().unwrap(), tab(&["+Z", "-Y"]));
        assert_eq!(cnot().invert().unwrap(), cnot());
        let bad = Tableau::from_rows_unchecked(vec![sp("+X"), sp("+X")]).unwrap();
        assert!(matches!(bad.invert(), Err(Error::NotSymplectic(_))));
    }

    #[test]
    fn composition_examples() {
        let (t, _) = random_clifford(4, 11).unwrap();
        let id = Tableau::identity(4).unwrap();
        assert_eq!(t.compose(&id).unwrap(), t);
        assert_eq!(t.compose(&t.invert().unwrap()).unwrap(), id);
        assert_eq!(h().compose(&h()).unwrap(), Tableau::identity(1).unwrap());
        assert!(t.compose(&h()).is_err());
    }

    #[test]
    fn gate_application() {
        let id = Tableau::identity(1).unwrap();
        assert_eq!(id.apply_gate(CliffordGate::H(0)).unwrap(), h());
        assert_eq!(s().apply_gate(CliffordGate::S(0)).unwrap(), tab(&["+Z", "-X"]));
        let id2 = Tableau::identity(2).unwrap();
        assert_eq!(
            id2.apply_gate(CliffordGate::Cnot { control: 0, target: 1 }).unwrap(),
            cnot()
        );
        assert!(matches!(
            id.apply_gate(CliffordGate::S(1)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn row_and_column_folds_agree() {
        for seed in 0..50 {
            let n = 1 + (seed as usize % 6);
            let (t, gates) = random_clifford(n, seed).unwrap();
            let mut folded = Tableau::identity(n).unwrap();
            for &g in &gates.gates {
                folded.apply_gate_in_place(g).unwrap();
            }
            assert_eq!(folded, t, "seed {seed}");
            assert_eq!(gates.len(), 5 * n * n);
        }
    }

    #[test]
    fn random_clifford_edges() {
        let (t, g) = random_clifford_with_length(3, 5, 0).unwrap();
        assert!(g.is_empty());
        assert_eq!(t, Tableau::identity(3).unwrap());
        assert_eq!(random_clifford(3, 9).unwrap(), random_clifford(3, 9).unwrap());
        for seed in 0..1000 {
            let (t, _) = random_clifford(3, seed).unwrap();
            assert!(t.check_symplectic().is_ok());
        }
        let (_, g1) = random_clifford(1, 3).unwrap();
        assert!(g1.gates.iter().all(|g| !matches!(g, CliffordGate::Cnot { .. })));
    }

    #[test]
    fn weights() {
        assert_eq!(Tableau::identity(5).unwrap().weight(), 10);
        assert_eq!(cnot().weight(), 6);
        assert_eq!(h().weight(), 2);
    }

    #[test]
    fn conjugation_order_independent() {
        // X-before-Z expansion: Y = i X Z, so the phase correction is +#Y.
        for seed in 0..200 {
            let n = 1 + (seed as usize % 4);
            let (t, _) = random_clifford(n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
            let factors: Vec<Factor> = (0..n).map(|_| Factor::ALL[rng.random_range(0..4)]).collect();
            let p = PhasedPauli::new(PauliString::from_factors(&factors), rng.random_range(0..4));
            let y = (p.string().y_count() % 4) as u8;
            let mut acc = PhasedPauli::new(PauliString::identity(n), (p.phase() + y) % 4);
            for q in (0..n).rev() {
                if p.string().x_bit(q) {
                    acc.mul_assign_signed(t.x_image(q));
                }
                if p.string().z_bit(q) {
                    acc.mul_assign_signed(t.z_image(q));
                }
            }
            assert_eq!(acc, t.conjugate(&p).unwrap());
        }
    }

    #[test]
    fn commuting_products_stay_hermitian() {
        for seed in 0..100 {
            let n = 1 + (seed as usize % 8);
            let (t, _) = random_clifford(n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let subset: Vec<&SignedPauli> = (0..n).filter(|_| rng.random::<bool>()).map(|q| t.z_image(q)).collect();
            let mut acc = PhasedPauli::identity(n);
            for p in subset.iter().chain(subset.iter().rev()) {
                acc.mul_assign_signed(p);
            }
            assert!(acc.string().is_identity());
            assert!(acc.is_hermitian());
        }
    }

    #[test]
    fn text_format() {
        let text = Tableau::identity(1).unwrap().to_text();
        assert!(text.contains("Z1 -> +Z\n") && text.contains("X1 -> +X\n"));
        for seed in 0..20 {
            let (t, _) = random_clifford(1 + seed as usize % 9, seed).unwrap();
            assert_eq!(Tableau::from_text(&t.to_text()).unwrap(), t);
        }
        let with_comments = "# a comment\n\nmcs-tableau v1\n# size\nn 1\nZ1 -> +X\n\nX1 -> +Z\n";
        assert_eq!(Tableau::from_text(with_comments).unwrap(), h());
    }

    #[test]
    fn text_format_errors() {
        let line_of = |text: &str| match Tableau::from_text(text) {
            Err(Error::Parse { line, message, .. }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("mcs-tableau v2\nn 1\nZ1 -> +Z\nX1 -> +X\n").0, 1);
        assert_eq!(line_of("mcs-tableau v1\nn zero\n").0, 2);
        assert_eq!(line_of("mcs-tableau v1\nn 1\nX1 -> +X\nZ1 -> +Z\n").0, 3);
        assert_eq!(line_of("mcs-tableau v1\nn 1\nZ1 -> +Z\n").0, 3);
        assert_eq!(line_of("mcs-tableau v1\nn 1\nZ1 -> +ZZ\nX1 -> +X\n").0, 3);
        assert_eq!(
            line_of("mcs-tableau v1\nn 1\nZ1 -> +Q\nX1 -> +X\n"),
            (3, "illegal Pauli character 'Q'".into())
        );
        let (line, msg) = line_of("mcs-tableau v1\nn 1\nZ1 -> +X\nX1 -> +X\n");
        assert_eq!(line, 4);
        assert!(msg.contains("symplectic"), "{msg}");
    }

    #[test]
    fn gate_list_text() {
        let (_, g) = random_clifford(3, 1).unwrap();
        assert_eq!(GateList::from_text(&g.to_text(), 3).unwrap(), g);
        assert!(GateList::from_text("H 4\n", 3).is_err());
        assert!(GateList::from_text("CNOT 1 1\n", 3).is_err());
        assert!(GateList::from_text("T 1\n", 3).is_err());
    }
}
