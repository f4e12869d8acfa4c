//! Two-bit DNA alphabet and the nucleotide algebra used by the texture cipher.
//!
//! Coding rule: `A = 00`, `G = 01`, `C = 10`, `T = 11`, four symbols per
//! byte, most significant pair first. Under the addition table `C` is the
//! identity and every symbol is its own inverse, so subtraction is the
//! group inverse of addition.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DnaError {
    #[error("invalid nucleotide symbol {0:?}")]
    BadSymbol(char),
    #[error("DNA byte needs exactly 4 symbols, got {0}")]
    BadLength(usize),
    #[error("value {0} does not fit in a byte")]
    OutOfRange(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nucleotide {
    A,
    G,
    C,
    T,
}

use Nucleotide::{A, C, G, T};

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [A, G, C, T];

    pub const fn bits(self) -> u8 {
        match self {
            A => 0b00,
            G => 0b01,
            C => 0b10,
            T => 0b11,
        }
    }

    /// Only the low two bits are looked at.
    pub const fn from_bits(bits: u8) -> Self {
        match bits & 0b11 {
            0b00 => A,
            0b01 => G,
            0b10 => C,
            _ => T,
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            A => 'A',
            G => 'G',
            C => 'C',
            T => 'T',
        }
    }

    /// Position in the addition table's row/column order (T, A, C, G).
    const fn table_index(self) -> usize {
        match self {
            T => 0,
            A => 1,
            C => 2,
            G => 3,
        }
    }
}

impl TryFrom<char> for Nucleotide {
    type Error = DnaError;

    fn try_from(c: char) -> Result<Self, DnaError> {
        match c.to_ascii_uppercase() {
            'A' => Ok(A),
            'G' => Ok(G),
            'C' => Ok(C),
            'T' => Ok(T),
            other => Err(DnaError::BadSymbol(other)),
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

// Rows and columns ordered T, A, C, G.
const ADD_TABLE: [[Nucleotide; 4]; 4] = [[C, G, T, A], [G, C, A, T], [T, A, C, G], [A, T, G, C]];

pub fn dna_add(a: Nucleotide, b: Nucleotide) -> Nucleotide {
    ADD_TABLE[a.table_index()][b.table_index()]
}

/// The unique `n` with `dna_add(n, b) == a`.
pub fn dna_sub(a: Nucleotide, b: Nucleotide) -> Nucleotide {
    // every element is self-inverse, so a - b = a + b
    dna_add(a, b)
}

pub fn dna_complement(n: Nucleotide) -> Nucleotide {
    match n {
        A => T,
        T => A,
        C => G,
        G => C,
    }
}

/// A byte as four nucleotides, most significant pair first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DnaByte(pub [Nucleotide; 4]);

impl DnaByte {
    pub fn complement(self) -> DnaByte {
        DnaByte(self.0.map(dna_complement))
    }
}

impl Add for DnaByte {
    type Output = DnaByte;

    fn add(self, other: DnaByte) -> DnaByte {
        DnaByte(std::array::from_fn(|i| dna_add(self.0[i], other.0[i])))
    }
}

impl Sub for DnaByte {
    type Output = DnaByte;

    fn sub(self, other: DnaByte) -> DnaByte {
        DnaByte(std::array::from_fn(|i| dna_sub(self.0[i], other.0[i])))
    }
}

impl FromStr for DnaByte {
    type Err = DnaError;

    fn from_str(s: &str) -> Result<Self, DnaError> {
        let symbols = s
            .chars()
            .map(Nucleotide::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let quads: [Nucleotide; 4] = symbols
            .try_into()
            .map_err(|v: Vec<_>| DnaError::BadLength(v.len()))?;
        Ok(DnaByte(quads))
    }
}

impl fmt::Display for DnaByte {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.0 {
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

pub fn encode_byte(b: u8) -> DnaByte {
    DnaByte([
        Nucleotide::from_bits(b >> 6),
        Nucleotide::from_bits(b >> 4),
        Nucleotide::from_bits(b >> 2),
        Nucleotide::from_bits(b),
    ])
}

/// Range-checked variant of [`encode_byte`] for untyped integers.
pub fn encode_value(v: i64) -> Result<DnaByte, DnaError> {
    u8::try_from(v)
        .map(encode_byte)
        .map_err(|_| DnaError::OutOfRange(v))
}

pub fn decode_byte(d: DnaByte) -> u8 {
    d.0.iter().fold(0u8, |acc, n| (acc << 2) | n.bits())
}
