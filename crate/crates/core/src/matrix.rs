//! Dense matrices over Z/nZ and over Z, plus the shared text format
//! `"a,b;c,d"` (rows separated by `;`, entries by `,`).

use std::fmt;

use crate::arith::{mod_inverse, mul_mod, reduce_i64, ZMod};
use crate::error::{invalid, Error, Result};

/// Dense matrix over Z/nZ stored row-major with reduced entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64], modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return invalid("modulus must be positive");
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ModMatrix {
            rows,
            cols,
            modulus,
            data: entries.iter().map(|&e| reduce_i64(e, modulus)).collect(),
        })
    }

    pub fn from_int_matrix(m: &IntMatrix, modulus: u64) -> Self {
        Self::from_ints(m.rows(), m.cols(), m.data(), modulus).expect("shape is consistent")
    }

    /// Parses the shared text format, e.g. `"2,1;1,2"`.
    pub fn parse(text: &str, modulus: u64) -> Result<Self> {
        let m = IntMatrix::parse(text)?;
        Self::from_ints(m.rows(), m.cols(), m.data(), modulus)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> ZMod {
        ZMod::new(self.get(i, j) as i64, self.modulus).expect("modulus is positive")
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = reduce_i64(value, self.modulus);
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    /// Entries lifted to the symmetric range (-n/2, n/2].
    pub fn centered(&self) -> IntMatrix {
        let n = self.modulus as i64;
        let data = self
            .data
            .iter()
            .map(|&v| {
                let v = v as i64;
                if 2 * v > n {
                    v - n
                } else {
                    v
                }
            })
            .collect();
        IntMatrix::new(self.rows, self.cols, data)
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_modulus(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let n = self.modulus;
        let mut out = Self::zeros(self.rows, rhs.cols, n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.data[k * rhs.cols + j];
                    if b != 0 {
                        let slot = &mut out.data[i * rhs.cols + j];
                        *slot = (*slot + mul_mod(a, b, n)) % n;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_modulus(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        let n = self.modulus;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| (a + b) % n).collect();
        Ok(ModMatrix { data, ..self.clone() })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let n = self.modulus;
        ModMatrix {
            data: self.data.iter().map(|&a| (n - a) % n).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let n = self.modulus;
        let c = reduce_i64(c, n);
        ModMatrix {
            data: self.data.iter().map(|&a| mul_mod(a, c, n)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows, self.modulus)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Entrywise reduction to a modulus dividing the current one.
    pub fn reduce(&self, modulus: u64) -> Result<Self> {
        if modulus == 0 || self.modulus % modulus != 0 {
            return invalid(format!(
                "cannot reduce mod {} matrix to mod {modulus}",
                self.modulus
            ));
        }
        Ok(ModMatrix {
            modulus,
            data: self.data.iter().map(|&v| v % modulus).collect(),
            ..self.clone()
        })
    }

    /// Determinant via fraction-free elimination over Z on the centered lift,
    /// reduced mod n.
    pub fn det(&self) -> Result<ZMod> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let d = self.centered().det_i128()?;
        ZMod::new((d.rem_euclid(self.modulus as i128)) as i64, self.modulus)
    }

    /// Inverse over Z/pZ for prime p (Gauss-Jordan with modular inverses).
    pub fn inverse_mod_prime(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let p = self.modulus;
        let mut a = self.clone();
        let mut inv = Self::identity(n, p);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.get(r, col) != 0 && mod_inverse(a.get(r, col), p).is_some())
                .ok_or_else(|| Error::InvalidArgument("matrix is not invertible".into()))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = mod_inverse(a.get(col, col), p).expect("pivot is a unit");
            a.scale_row(col, s);
            inv.scale_row(col, s);
            for r in 0..n {
                let f = a.get(r, col);
                if r != col && f != 0 {
                    a.add_row_multiple(r, col, p - f);
                    inv.add_row_multiple(r, col, p - f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        let n = self.modulus;
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = mul_mod(*v, s, n);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: u64) {
        let n = self.modulus;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            let v = &mut self.data[dst * self.cols + j];
            *v = (*v + mul_mod(s, f, n)) % n;
        }
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let m = a.modulus;
        for x in [b, c, d] {
            a.check_modulus(x)?;
        }
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch("inconsistent block shapes".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = Self::zeros(rows, cols, m);
        for i in 0..rows {
            for j in 0..cols {
                let v = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                out.data[i * cols + j] = v;
            }
        }
        Ok(out)
    }

    /// The sub-block starting at (r0, c0) with the given shape.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols, self.modulus);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    /// Canonical byte encoding used as a hash key during enumeration.
    pub fn key(&self) -> Vec<u8> {
        if self.modulus <= 256 {
            self.data.iter().map(|&v| v as u8).collect()
        } else {
            self.data.iter().flat_map(|v| v.to_le_bytes()).collect()
        }
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows, self.cols, |i, j| self.get(i, j).to_string())
    }
}

/// Dense integer matrix (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<i64> = rows.iter().flat_map(|row| row.iter().copied()).collect();
        Self::new(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Parses `"a,b;c,d"`. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for row in cleaned.split(';') {
            let parsed: std::result::Result<Vec<i64>, _> = row.split(',').map(str::parse).collect();
            rows.push(parsed.map_err(|e| Error::Parse(format!("bad entry in {row:?}: {e}")))?);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Self::new(rows.len(), cols, rows.concat()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = &mut out.data[i * rhs.cols + j];
                    *v = v
                        .checked_add(a.checked_mul(rhs.get(k, j)).expect("integer overflow"))
                        .expect("integer overflow");
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|v| -v).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det_i128(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }

    /// Inverse over Z for unimodular matrices (adjugate / det with det = ±1).
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = self.det_i128()?;
        if det != 1 && det != -1 {
            return invalid(format!("matrix with determinant {det} is not invertible over Z"));
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let cof = minor.det_i128()? * if (i + j) % 2 == 0 { 1 } else { -1 };
                out.set(i, j, (cof * det) as i64);
            }
        }
        Ok(out)
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                data.push(self.get(i, j));
            }
        }
        Self::new(n - 1, n - 1, data)
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows, self.cols, |i, j| self.get(i, j).to_string())
    }
}

fn write_rows(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> String,
) -> fmt::Result {
    let text: Vec<String> = (0..rows)
        .map(|i| (0..cols).map(|j| entry(i, j)).collect::<Vec<_>>().join(","))
        .collect();
    write!(f, "{}", text.join(";"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let m = ModMatrix::parse("2,1;1,2", 4).unwrap();
        assert_eq!(m.to_string(), "2,1;1,2");
        assert_eq!(ModMatrix::parse("-1, 0; 0 ,5", 4).unwrap().to_string(), "3,0;0,1");
        assert!(ModMatrix::parse("1,2;3", 4).is_err());
        assert!(ModMatrix::parse("1,x", 4).is_err());
        assert!(IntMatrix::parse("").is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::parse("1,2;3,4").unwrap().det_i128().unwrap(), -2);
        assert_eq!(IntMatrix::parse("0,1,0;1,0,0;0,0,1").unwrap().det_i128().unwrap(), -1);
        assert_eq!(IntMatrix::parse("2,0,0;0,3,0;0,0,4").unwrap().det_i128().unwrap(), 24);
        assert_eq!(ModMatrix::parse("2,1;1,2", 4).unwrap().det().unwrap().value(), 3);
    }

    #[test]
    fn inverses() {
        let a = IntMatrix::parse("2,1;1,1").unwrap();
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert!(IntMatrix::parse("2,0;0,1").unwrap().inverse_unimodular().is_err());
        let m = ModMatrix::parse("1,2,0;0,1,4;3,0,2", 5).unwrap();
        let mi = m.inverse_mod_prime().unwrap();
        assert!(m.mul(&mi).unwrap().is_identity());
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = ModMatrix::identity(2, 4);
        let b = ModMatrix::identity(2, 2);
        assert!(matches!(a.mul(&b), Err(Error::ModulusMismatch { .. })));
        assert!(a.reduce(3).is_err());
        assert!(a.reduce(2).unwrap().is_identity());
    }
}
