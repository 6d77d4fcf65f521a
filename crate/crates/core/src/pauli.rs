use std::fmt;

use crate::error::{Error, Result};

/// Single-qubit Pauli operator, phases dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Pauli {
    #[default]
    I,
    X,
    Y,
    Z,
}

/// Product up to a global phase. `I=0, X=1, Y=3, Z=2` in the symplectic
/// (x, z) encoding makes this an XOR.
impl std::ops::Mul for Pauli {
    type Output = Pauli;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Pauli) -> Pauli {
        Pauli::from_xz(self.xz() ^ other.xz())
    }
}

impl Pauli {
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// `(x bit, z bit)` packed as `x | z << 1`.
    pub fn xz(self) -> u8 {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Z => 2,
            Pauli::Y => 3,
        }
    }

    pub fn from_xz(v: u8) -> Pauli {
        match v & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Z,
            _ => Pauli::Y,
        }
    }

    /// Position of an `X`/`Y`/`Z` label in the sign-triple order.
    pub fn axis(self) -> Option<usize> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(0),
            Pauli::Y => Some(1),
            Pauli::Z => Some(2),
        }
    }

    pub fn from_axis(axis: usize) -> Pauli {
        Pauli::XYZ[axis]
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Sign acquired by `σ_axis` under conjugation by `self`.
    pub fn conjugation_sign(self, axis: Pauli) -> i8 {
        if self == Pauli::I || axis == Pauli::I || self == axis {
            1
        } else {
            -1
        }
    }

    /// Gate whose conjugation applies the signs `(s_x, s_y, s_z)`.
    pub fn from_signs(signs: [i8; 3]) -> Result<Pauli> {
        match signs {
            [1, 1, 1] => Ok(Pauli::I),
            [1, -1, -1] => Ok(Pauli::X),
            [-1, 1, -1] => Ok(Pauli::Y),
            [-1, -1, 1] => Ok(Pauli::Z),
            _ => Err(Error::InvalidArgument(format!(
                "sign column {signs:?} is not realizable by a Pauli conjugation"
            ))),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn word_string(word: &[Pauli]) -> String {
    word.iter().map(|p| p.to_char()).collect()
}

pub fn parse_word(s: &str) -> Option<Vec<Pauli>> {
    s.chars().map(Pauli::from_char).collect()
}
