//! Pauli strings in the binary symplectic `(z | x)` representation.
//!
//! Each qubit factor is stored as a pair of bits with the mapping
//! `(z, x) = (0,0) -> I, (0,1) -> X, (1,0) -> Z, (1,1) -> Y`. The `z` and
//! `x` halves are packed separately into `u64` words so that products and
//! symplectic inner products run a word at a time. `Y` carries no stored
//! local phase; any `i` factors produced by multiplication live in the
//! phase exponent of [`PhasedPauli`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    I,
    X,
    Y,
    Z,
}

impl Factor {
    pub const ALL: [Factor; 4] = [Factor::I, Factor::X, Factor::Y, Factor::Z];

    /// The `(z, x)` bit pair.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Factor::I => (false, false),
            Factor::X => (false, true),
            Factor::Z => (true, false),
            Factor::Y => (true, true),
        }
    }

    #[inline]
    pub fn from_bits(z: bool, x: bool) -> Self {
        match (z, x) {
            (false, false) => Factor::I,
            (false, true) => Factor::X,
            (true, false) => Factor::Z,
            (true, true) => Factor::Y,
        }
    }

    /// Index `2z + x` used by [`PRODUCT_PHASE`].
    #[inline]
    pub fn code(self) -> usize {
        let (z, x) = self.bits();
        2 * z as usize + x as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Factor::I => 'I',
            Factor::X => 'X',
            Factor::Y => 'Y',
            Factor::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Factor::I),
            'X' => Some(Factor::X),
            'Y' => Some(Factor::Y),
            'Z' => Some(Factor::Z),
            _ => None,
        }
    }
}

/// `PRODUCT_PHASE[a][b] = k` such that `a * b = i^k * c`, where `a`, `b`, `c`
/// are single-qubit Paulis indexed by [`Factor::code`] (`I, X, Z, Y`).
pub const PRODUCT_PHASE: [[u8; 4]; 4] = [
    // I·_
    [0, 0, 0, 0],
    // X·I, X·X, X·Z = -iY, X·Y = iZ
    [0, 0, 3, 1],
    // Z·I, Z·X = iY, Z·Z, Z·Y = -iX
    [0, 1, 0, 3],
    // Y·I, Y·X = -iZ, Y·Z = iX, Y·Y
    [0, 3, 1, 0],
];

/// Unsigned Pauli string on `n` qubits. Qubit 0 is the leftmost character in text form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    z: Vec<u64>,
    x: Vec<u64>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            z: vec![0; words_for(n)],
            x: vec![0; words_for(n)],
        }
    }

    /// A single non-identity factor at qubit `q` (0-based).
    pub fn single(n: usize, q: usize, factor: Factor) -> Self {
        let mut p = Self::identity(n);
        p.set(q, factor);
        p
    }

    pub fn from_factors(factors: &[Factor]) -> Self {
        let mut p = Self::identity(factors.len());
        for (q, &f) in factors.iter().enumerate() {
            p.set(q, f);
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / WORD] >> (q % WORD)) & 1 == 1
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / WORD] >> (q % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set_z(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % WORD);
        if v {
            self.z[q / WORD] |= m;
        } else {
            self.z[q / WORD] &= !m;
        }
    }

    #[inline]
    pub fn set_x(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % WORD);
        if v {
            self.x[q / WORD] |= m;
        } else {
            self.x[q / WORD] &= !m;
        }
    }

    #[inline]
    pub fn get(&self, q: usize) -> Factor {
        Factor::from_bits(self.z_bit(q), self.x_bit(q))
    }

    #[inline]
    pub fn set(&mut self, q: usize, f: Factor) {
        let (z, x) = f.bits();
        self.set_z(q, z);
        self.set_x(q, x);
    }

    pub fn factors(&self) -> impl Iterator<Item = Factor> + '_ {
        (0..self.n).map(|q| self.get(q))
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.z
            .iter()
            .zip(&self.x)
            .map(|(z, x)| (z | x).count_ones() as usize)
            .sum()
    }

    /// Qubits carrying a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.z_bit(q) || self.x_bit(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&w| w == 0)
    }

    pub fn y_count(&self) -> u32 {
        self.z.iter().zip(&self.x).map(|(z, x)| (z & x).count_ones()).sum()
    }

    /// Symplectic inner product `<z, x'> + <x, z'>` over GF(2); `true` means anticommuting.
    #[inline]
    pub fn anticommutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0u32;
        for i in 0..self.z.len() {
            acc ^= ((self.z[i] & other.x[i]) ^ (self.x[i] & other.z[i])).count_ones();
        }
        acc & 1 == 1
    }

    /// Phase exponent `k` with `self * other = i^k * (self xor other)`.
    ///
    /// Word-parallel form of [`PRODUCT_PHASE`]: a `+1` comes from the ordered
    /// pairs `(X,Y)`, `(Z,X)`, `(Y,Z)` and a `-1` from `(X,Z)`, `(Z,Y)`, `(Y,X)`.
    #[inline]
    pub fn product_phase(&self, other: &PauliString) -> u8 {
        debug_assert_eq!(self.n, other.n);
        let mut plus = 0u32;
        let mut minus = 0u32;
        for i in 0..self.z.len() {
            let (z1, x1, z2, x2) = (self.z[i], self.x[i], other.z[i], other.x[i]);
            let (xa, za, ya) = (x1 & !z1, z1 & !x1, z1 & x1);
            let (xb, zb, yb) = (x2 & !z2, z2 & !x2, z2 & x2);
            plus += ((xa & yb) | (za & xb) | (ya & zb)).count_ones();
            minus += ((xa & zb) | (za & yb) | (ya & xb)).count_ones();
        }
        ((plus + 3 * minus) % 4) as u8
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &PauliString) {
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
    }

    fn write_body(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in self.factors() {
            write!(f, "{}", factor.to_char())?;
        }
        Ok(())
    }

    fn parse_body(body: &str, column_offset: usize) -> Result<Self> {
        if body.is_empty() {
            return Err(Error::parse(1, column_offset + 1, "empty Pauli body"));
        }
        let factors = body
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Factor::from_char(c)
                    .ok_or_else(|| Error::parse(1, column_offset + i + 1, format!("illegal Pauli character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_factors(&factors))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_body(f)
    }
}

/// Hermitian Pauli with a `±1` sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    string: PauliString,
    negative: bool,
}

impl SignedPauli {
    pub fn new(string: PauliString, negative: bool) -> Self {
        SignedPauli { string, negative }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(PauliString::identity(n), false)
    }

    pub fn single(n: usize, q: usize, factor: Factor) -> Self {
        Self::new(PauliString::single(n, q, factor), false)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.string.n
    }

    #[inline]
    pub fn string(&self) -> &PauliString {
        &self.string
    }

    #[inline]
    pub fn string_mut(&mut self) -> &mut PauliString {
        &mut self.string
    }

    pub fn into_string(self) -> PauliString {
        self.string
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    #[inline]
    pub fn flip_sign(&mut self) {
        self.negative = !self.negative;
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn negated(&self) -> Self {
        Self::new(self.string.clone(), !self.negative)
    }

    pub fn weight(&self) -> usize {
        self.string.weight()
    }

    pub fn commutes(&self, other: &SignedPauli) -> Result<bool> {
        check_dims(self.n(), other.n())?;
        Ok(!self.string.anticommutes_with(&other.string))
    }

    pub fn to_phased(&self) -> PhasedPauli {
        PhasedPauli::new(self.string.clone(), if self.negative { 2 } else { 0 })
    }
}

impl FromStr for SignedPauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let negative = match s.chars().next() {
            Some('+') => false,
            Some('-') => true,
            Some(c) => return Err(Error::parse(1, 1, format!("expected sign '+' or '-', found {c:?}"))),
            None => return Err(Error::parse(1, 1, "empty Pauli text")),
        };
        let string = PauliString::parse_body(&s[1..], 1)?;
        Ok(SignedPauli { string, negative })
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        self.string.write_body(f)
    }
}

/// Pauli with a phase `i^phase`, `phase` in `0..4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    string: PauliString,
    phase: u8,
}

impl PhasedPauli {
    pub fn new(string: PauliString, phase: u8) -> Self {
        PhasedPauli {
            string,
            phase: phase % 4,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(PauliString::identity(n), 0)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.string.n
    }

    #[inline]
    pub fn string(&self) -> &PauliString {
        &self.string
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The signed form, if the phase is real.
    pub fn to_signed(&self) -> Option<SignedPauli> {
        match self.phase {
            0 => Some(SignedPauli::new(self.string.clone(), false)),
            2 => Some(SignedPauli::new(self.string.clone(), true)),
            _ => None,
        }
    }

    pub fn multiply(&self, other: &PhasedPauli) -> Result<PhasedPauli> {
        check_dims(self.n(), other.n())?;
        let mut r = self.clone();
        r.mul_assign_unchecked(&other.string, other.phase);
        Ok(r)
    }

    /// `self <- self * (i^phase * rhs)`. Lengths must match.
    #[inline]
    pub(crate) fn mul_assign_unchecked(&mut self, rhs: &PauliString, phase: u8) {
        let k = self.string.product_phase(rhs);
        self.phase = (self.phase + phase + k) % 4;
        self.string.xor_assign(rhs);
    }

    #[inline]
    pub(crate) fn mul_assign_signed(&mut self, rhs: &SignedPauli) {
        self.mul_assign_unchecked(&rhs.string, if rhs.negative { 2 } else { 0 });
    }
}

impl From<SignedPauli> for PhasedPauli {
    fn from(p: SignedPauli) -> Self {
        PhasedPauli::new(p.string, if p.negative { 2 } else { 0 })
    }
}

impl From<&SignedPauli> for PhasedPauli {
    fn from(p: &SignedPauli) -> Self {
        p.to_phased()
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        self.string.write_body(f)
    }
}

#[inline]
pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

pub fn parse_pauli(text: &str) -> Result<SignedPauli> {
    text.parse()
}

pub fn format_pauli(p: &SignedPauli) -> String {
    p.to_string()
}

pub fn multiply(p: &PhasedPauli, q: &PhasedPauli) -> Result<PhasedPauli> {
    p.multiply(q)
}

pub fn commutes(p: &SignedPauli, q: &SignedPauli) -> Result<bool> {
    p.commutes(q)
}

pub fn weight(p: &SignedPauli) -> usize {
    p.weight()
}
