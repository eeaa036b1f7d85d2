use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, ModMatrix};

/// One abstract generator of Sp(2g, Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenLetter {
    /// (1 B; 0 1) with B symmetric.
    Upper(IntMatrix),
    /// (A 0; 0 A^{-T}) with A ∈ GL(g, Z).
    Gl(IntMatrix),
    /// (0 -1; 1 0).
    S,
}

impl GenLetter {
    pub fn validate(&self, g: usize) -> Result<()> {
        let square = |m: &IntMatrix| -> Result<()> {
            if m.rows() != g || m.cols() != g {
                return Err(Error::ShapeMismatch(format!(
                    "letter block is {}x{}, genus is {g}",
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(())
        };
        match self {
            GenLetter::Upper(b) => {
                square(b)?;
                if !b.is_symmetric() {
                    return Err(Error::InvalidArgument(format!("Upper block {b} is not symmetric")));
                }
            }
            GenLetter::Gl(a) => {
                square(a)?;
                let d = a.det_i128()?;
                if d != 1 && d != -1 {
                    return Err(Error::InvalidArgument(format!(
                        "GL block {a} has determinant {d}, not invertible over Z"
                    )));
                }
            }
            GenLetter::S => {}
        }
        Ok(())
    }

    /// The 2g × 2g integer symplectic matrix of the letter.
    pub fn symplectic_matrix(&self, g: usize) -> Result<IntMatrix> {
        self.validate(g)?;
        let zero = IntMatrix::zeros(g, g);
        let one = IntMatrix::identity(g);
        Ok(match self {
            GenLetter::Upper(b) => IntMatrix::from_blocks(&one, b, &zero, &one),
            GenLetter::Gl(a) => {
                let inv_t = a.inverse_unimodular()?.transpose();
                IntMatrix::from_blocks(a, &zero, &zero, &inv_t)
            }
            GenLetter::S => IntMatrix::from_blocks(&zero, &one.neg(), &one, &zero),
        })
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLetter::Upper(b) => write!(f, "U[{b}]"),
            GenLetter::Gl(a) => write!(f, "G[{a}]"),
            GenLetter::S => write!(f, "S"),
        }
    }
}

impl FromStr for GenLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "S" {
            return Ok(GenLetter::S);
        }
        let body = |prefix: char| -> Option<&str> {
            s.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')
        };
        if let Some(b) = body('U') {
            Ok(GenLetter::Upper(IntMatrix::parse(b)?))
        } else if let Some(a) = body('G') {
            Ok(GenLetter::Gl(IntMatrix::parse(a)?))
        } else {
            Err(Error::Parse(format!(
                "unknown generator '{s}' (expected S, U[..] or G[..])"
            )))
        }
    }
}

/// A word in the generators, read left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenWord {
    letters: Vec<GenLetter>,
}

impl GenWord {
    pub fn new(letters: Vec<GenLetter>) -> Self {
        GenWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GenWord { letters }
    }

    pub fn into_letters(self) -> Vec<GenLetter> {
        self.letters
    }

    pub fn symplectic_matrix_mod(&self, g: usize, n: u64) -> Result<ModMatrix> {
        let mut acc = ModMatrix::identity(2 * g, n);
        for letter in &self.letters {
            acc = acc.mul(&ModMatrix::from_int_matrix(&letter.symplectic_matrix(g)?, n))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GenWord {
    type Err = Error;

    /// Whitespace-separated letters; `e` or the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(GenWord::empty());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(GenWord::new)
    }
}
