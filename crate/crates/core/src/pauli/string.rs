use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::bits::BitVector;

/// A real sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(negative: bool) -> Self {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        Sign::from_bit(!self.is_negative())
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bit(self.is_negative() != rhs.is_negative())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Signed tensor product of Pauli operators in symplectic `(x|z)` form.
///
/// Qubit `q` carries `I, X, Z, Y` for `(x_q, z_q) = (0,0), (1,0), (0,1), (1,1)`,
/// with `Y` the Hermitian Pauli. The operator is `sign * P_0 ⊗ ... ⊗ P_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x: BitVector,
    z: BitVector,
    sign: Sign,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            sign: Sign::Plus,
        }
    }

    pub fn from_bits(x: BitVector, z: BitVector, sign: Sign) -> Result<Self> {
        Error::check_dim(x.len(), z.len())?;
        Ok(Self { x, z, sign })
    }

    /// `letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, letter);
        p
    }

    /// Parses `[+|-]<letters>`; leftmost letter is qubit 0.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (sign, body) = match text.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &text[1..]),
            Some(b'-') => (Sign::Minus, &text[1..]),
            _ => (Sign::Plus, text),
        };
        if body.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        let n = body.chars().count();
        let mut p = Self::identity(n);
        p.sign = sign;
        for (q, c) in body.chars().enumerate() {
            let letter = Pauli::from_char(c).ok_or_else(|| {
                Error::InvalidArgument(format!("invalid Pauli letter `{c}` in `{text}`"))
            })?;
            p.set(q, letter);
        }
        Ok(p)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn set_sign(&mut self, sign: Sign) {
        self.sign = sign;
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    pub fn negate(&mut self) {
        self.sign = self.sign.flipped();
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, letter: Pauli) {
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// True when every qubit carries `I` (the sign is ignored).
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.support().count()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_qubits()).filter(move |&q| self.x.get(q) || self.z.get(q))
    }

    /// Number of qubits carrying `Y`.
    pub fn y_count(&self) -> usize {
        self.x.and(&self.z).count_ones()
    }

    /// Concatenated `(x|z)` vector of length `2n`.
    pub fn symplectic_vector(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic(v: &BitVector, sign: Sign) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::Dimension {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Self::from_bits(v.slice(0, n), v.slice(n, n), sign)
    }

    /// Same letters, sign discarded.
    pub fn unsigned(&self) -> Self {
        self.clone().with_sign(Sign::Plus)
    }

    /// Product `self · other` as a Pauli string together with the extra power
    /// of `i` (0..4) it carries: `self · other = i^k · result`.
    pub fn mul_with_phase(&self, other: &PauliString) -> Result<(PauliString, u8)> {
        Error::check_dim(self.n_qubits(), other.n_qubits())?;
        let mut plus = 0u32;
        let mut minus = 0u32;
        for ((x1, z1), (x2, z2)) in self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()))
        {
            let (px, py, pz) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (qx, qy, qz) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, ZX = iY, YZ = iX and the reversed orders give -i.
            plus += ((px & qy) | (pz & qx) | (py & qz)).count_ones();
            minus += ((px & qz) | (pz & qy) | (py & qx)).count_ones();
        }
        let mut k = (plus + 3 * minus) % 4;
        if self.sign.is_negative() ^ other.sign.is_negative() {
            k = (k + 2) % 4;
        }
        let result = PauliString {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            sign: Sign::Plus,
        };
        Ok((result, k as u8))
    }

    /// Product `self · other`. Errors when the phase is `±i`, which happens
    /// exactly when the operands anticommute.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        let (mut r, k) = self.mul_with_phase(other)?;
        match k {
            0 => Ok(r),
            2 => {
                r.sign = Sign::Minus;
                Ok(r)
            }
            _ => Err(Error::ImaginaryPhase),
        }
    }

    /// Symplectic inner product: `false` iff the two strings commute.
    pub fn symplectic_product(&self, other: &PauliString) -> Result<bool> {
        Error::check_dim(self.n_qubits(), other.n_qubits())?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// Letters only, without a sign prefix.
    pub fn letters(&self) -> String {
        (0..self.n_qubits()).map(|q| self.get(q).letter()).collect()
    }

    // Conjugation by single Clifford gates: `self <- G self G†`.

    pub(crate) fn conj_h(&mut self, q: usize) {
        if self.x.get(q) && self.z.get(q) {
            self.negate();
        }
        let (x, z) = (self.x.get(q), self.z.get(q));
        self.x.set(q, z);
        self.z.set(q, x);
    }

    pub(crate) fn conj_s(&mut self, q: usize) {
        let x = self.x.get(q);
        if x && self.z.get(q) {
            self.negate();
        }
        if x {
            self.z.flip(q);
        }
    }

    pub(crate) fn conj_x(&mut self, q: usize) {
        if self.z.get(q) {
            self.negate();
        }
    }

    pub(crate) fn conj_z(&mut self, q: usize) {
        if self.x.get(q) {
            self.negate();
        }
    }

    pub(crate) fn conj_cx(&mut self, c: usize, t: usize) {
        let (xc, zc, xt, zt) = (self.x.get(c), self.z.get(c), self.x.get(t), self.z.get(t));
        if xc && zt && (xt == zc) {
            self.negate();
        }
        if xc {
            self.x.flip(t);
        }
        if zt {
            self.z.flip(c);
        }
    }

    pub(crate) fn conj_cz(&mut self, a: usize, b: usize) {
        self.conj_h(b);
        self.conj_cx(a, b);
        self.conj_h(b);
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&self.letters())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PauliString::parse(s)
    }
}

/// Free-function form of [`PauliString::symplectic_product`].
pub fn symplectic_product(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.symplectic_product(q)
}

/// Free-function form of [`PauliString::multiply`].
pub fn multiply(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    p.multiply(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["I", "XYZ", "-ZZIX", "YIYI"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("+XZ").to_string(), "XZ");
        assert!(PauliString::parse("XQ").is_err());
        assert!(PauliString::parse("").is_err());
        let y = p("Y");
        assert!(y.x_bits().get(0) && y.z_bits().get(0));
    }

    #[test]
    fn symplectic_product_examples() {
        assert!(p("X").symplectic_product(&p("Z")).unwrap());
        assert!(!p("XX").symplectic_product(&p("ZZ")).unwrap());
        assert!(!p("XIZ").symplectic_product(&p("ZZX")).unwrap());
        assert!(matches!(
            p("X").symplectic_product(&p("XX")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(p("X").multiply(&p("X")).unwrap(), p("I"));
        assert_eq!(p("ZI").multiply(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(p("XX").multiply(&p("ZZ")).unwrap(), p("-YY"));
        assert_eq!(p("ZZ").multiply(&p("XX")).unwrap(), p("-YY"));
        assert_eq!(p("X").multiply(&p("Z")), Err(Error::ImaginaryPhase));
        assert_eq!(p("X").mul_with_phase(&p("Y")).unwrap(), (p("Z"), 1));
        assert_eq!(p("-X").mul_with_phase(&p("Z")).unwrap(), (p("Y"), 1));
    }
}
