use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{cyclotomic_polynomial, CycScalar};
use crate::error::{Error, Result};

/// Sparse element of Z[ζ_M]: (exponent, coefficient) pairs sorted by
/// exponent. Entries produced by products are reduced modulo Φ_M, so two
/// reduced entries are equal iff their term lists are equal.
pub(crate) type Elt = Vec<(u32, i128)>;

/// A k^g × k^g matrix over Q(ζ_{2k}) stored as `scale · k^(kpow2/2) · E`
/// with E integral in Z[ζ_{2k}].
#[derive(Clone, Debug)]
pub struct ProjUnitary {
    genus: usize,
    level: u64,
    dim: usize,
    entries: Vec<Elt>,
    scale: BigRational,
    kpow2: i32,
}

fn overflow() -> Error {
    Error::Unsupported("coefficient overflow in exact matrix arithmetic".into())
}

struct Reducer {
    m: usize,
    d: usize,
    phi: Vec<i128>,
}

impl Reducer {
    fn new(m: usize) -> Self {
        let phi: Vec<i128> = cyclotomic_polynomial(m as u64).into_iter().map(i128::from).collect();
        Reducer { m, d: phi.len() - 1, phi }
    }

    /// Reduces a dense group-ring buffer (length m) modulo Φ_m and clears it.
    fn reduce(&self, buf: &mut [i128]) -> Result<Elt> {
        for i in (self.d..self.m).rev() {
            let top = buf[i];
            if top == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..self.d {
                if self.phi[j] != 0 {
                    let t = top.checked_mul(self.phi[j]).ok_or_else(overflow)?;
                    let slot = &mut buf[i - self.d + j];
                    *slot = slot.checked_sub(t).ok_or_else(overflow)?;
                }
            }
        }
        let mut out = Vec::new();
        for (j, c) in buf.iter_mut().enumerate().take(self.d) {
            if *c != 0 {
                out.push((j as u32, *c));
                *c = 0;
            }
        }
        Ok(out)
    }

    fn accumulate(&self, buf: &mut [i128], x: &Elt, y: &Elt) -> Result<()> {
        for &(i, a) in x {
            for &(j, b) in y {
                let idx = (i as usize + j as usize) % self.m;
                let t = a.checked_mul(b).ok_or_else(overflow)?;
                buf[idx] = buf[idx].checked_add(t).ok_or_else(overflow)?;
            }
        }
        Ok(())
    }

    fn product(&self, x: &Elt, y: &Elt) -> Result<Elt> {
        let mut buf = vec![0i128; self.m];
        self.accumulate(&mut buf, x, y)?;
        self.reduce(&mut buf)
    }

    fn canonical(&self, x: &Elt) -> Result<Elt> {
        let mut buf = vec![0i128; self.m];
        for &(i, a) in x {
            let slot = &mut buf[i as usize % self.m];
            *slot = slot.checked_add(a).ok_or_else(overflow)?;
        }
        self.reduce(&mut buf)
    }
}

fn content(entries: &[Elt]) -> i128 {
    let mut g: i128 = 0;
    for e in entries {
        for &(_, c) in e {
            g = g.gcd(&c);
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

impl ProjUnitary {
    pub(crate) fn from_parts(
        genus: usize,
        level: u64,
        entries: Vec<Elt>,
        scale: BigRational,
        kpow2: i32,
    ) -> Self {
        let dim = (level as usize).pow(genus as u32);
        assert_eq!(entries.len(), dim * dim, "entry count does not match k^g x k^g");
        ProjUnitary {
            genus,
            level,
            dim,
            entries,
            scale,
            kpow2,
        }
    }

    pub fn identity(genus: usize, level: u64) -> Self {
        let dim = (level as usize).pow(genus as u32);
        let mut entries = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = vec![(0, 1)];
        }
        Self::from_parts(genus, level, entries, BigRational::one(), 0)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Side length k^g.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Order of the cyclotomic field holding the entries.
    pub fn field_order(&self) -> u64 {
        2 * self.level
    }

    fn reducer(&self) -> Reducer {
        Reducer::new(self.field_order() as usize)
    }

    fn scale_scalar(&self) -> CycScalar {
        CycScalar::from_rational(&self.scale, 1).with_kpow(self.level, self.kpow2)
    }

    fn elt_scalar(&self, e: &Elt) -> CycScalar {
        let mut num = vec![BigInt::zero(); self.field_order() as usize];
        for &(j, c) in e {
            num[j as usize] += BigInt::from(c);
        }
        CycScalar::from_big(num, BigInt::one())
    }

    /// Entry (i, j) as an exact scalar.
    pub fn entry(&self, i: usize, j: usize) -> CycScalar {
        let e = &self.entries[i * self.dim + j];
        if e.is_empty() {
            return CycScalar::zero(self.field_order());
        }
        &self.elt_scalar(e) * &self.scale_scalar()
    }

    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.dim + j].is_empty()
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.genus != rhs.genus || self.level != rhs.level {
            return Err(Error::ShapeMismatch(format!(
                "(g, k) = ({}, {}) vs ({}, {})",
                self.genus, self.level, rhs.genus, rhs.level
            )));
        }
        Ok(())
    }

    fn canonicalized(&self) -> Result<Self> {
        let red = self.reducer();
        let entries = self
            .entries
            .iter()
            .map(|e| if e.is_empty() { Ok(Vec::new()) } else { red.canonical(e) })
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        out.entries = entries;
        out.extract_content();
        Ok(out)
    }

    fn extract_content(&mut self) {
        let c = content(&self.entries);
        if c > 1 {
            for e in &mut self.entries {
                for t in e.iter_mut() {
                    t.1 /= c;
                }
            }
            self.scale *= BigRational::from_integer(BigInt::from(c));
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let n = self.dim;
        let red = self.reducer();
        let m = red.m;
        let mut entries = vec![Vec::new(); n * n];
        let rhs_rows: Vec<Vec<usize>> = (0..n)
            .map(|l| (0..n).filter(|&j| !rhs.entries[l * n + j].is_empty()).collect())
            .collect();
        let mut acc = vec![0i128; n * m];
        let mut touched = vec![false; n];
        for i in 0..n {
            for l in 0..n {
                let a = &self.entries[i * n + l];
                if a.is_empty() {
                    continue;
                }
                for &j in &rhs_rows[l] {
                    touched[j] = true;
                    red.accumulate(&mut acc[j * m..(j + 1) * m], a, &rhs.entries[l * n + j])?;
                }
            }
            for j in 0..n {
                if touched[j] {
                    touched[j] = false;
                    entries[i * n + j] = red.reduce(&mut acc[j * m..(j + 1) * m])?;
                }
            }
        }
        let mut out = ProjUnitary {
            genus: self.genus,
            level: self.level,
            dim: n,
            entries,
            scale: &self.scale * &rhs.scale,
            kpow2: self.kpow2 + rhs.kpow2,
        };
        out.extract_content();
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::identity(self.genus, self.level);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let m = self.field_order() as u32;
        let mut entries = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut e: Elt = self.entries[i * n + j]
                    .iter()
                    .map(|&(x, c)| ((m - x) % m, c))
                    .collect();
                e.sort_unstable();
                entries[j * n + i] = e;
            }
        }
        ProjUnitary {
            entries,
            ..self.clone()
        }
    }

    /// If the matrix equals c·1, returns c.
    pub fn scalar_value(&self) -> Result<Option<CycScalar>> {
        let c = self.canonicalized()?;
        let n = c.dim;
        let d0 = &c.entries[0];
        for i in 0..n {
            for j in 0..n {
                let e = &c.entries[i * n + j];
                if (i == j && e != d0) || (i != j && !e.is_empty()) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(c.entry(0, 0)))
    }

    /// Exact unitarity: U* U = 1.
    pub fn is_unitary(&self) -> Result<bool> {
        let p = self.adjoint().mul(self)?;
        Ok(p.scalar_value()?.map(|c| c.is_one()).unwrap_or(false))
    }

    pub fn trace(&self) -> CycScalar {
        let mut t = CycScalar::zero(self.field_order());
        for i in 0..self.dim {
            if !self.is_entry_zero(i, i) {
                t = &t + &self.entry(i, i);
            }
        }
        t
    }

    /// The scalar c with self = c · rhs, or `NotProportional`.
    pub fn ratio_to(&self, rhs: &Self) -> Result<CycScalar> {
        self.check_compatible(rhs)?;
        let (a, b) = (self.canonicalized()?, rhs.canonicalized()?);
        let red = a.reducer();
        let n2 = a.entries.len();
        let pivot = (0..n2)
            .find(|&i| !b.entries[i].is_empty())
            .ok_or_else(|| Error::NotProportional("right-hand matrix is zero".into()))?;
        let (ap, bp) = (&a.entries[pivot], &b.entries[pivot]);
        if ap.is_empty() {
            return Err(Error::NotProportional(format!("zero pattern differs at index {pivot}")));
        }
        for i in 0..n2 {
            let (x, y) = (&a.entries[i], &b.entries[i]);
            if x.is_empty() != y.is_empty() {
                return Err(Error::NotProportional(format!("zero pattern differs at index {i}")));
            }
            if x.is_empty() {
                continue;
            }
            if red.product(x, bp)? != red.product(ap, y)? {
                return Err(Error::NotProportional(format!(
                    "entry ratio at index {i} differs from the ratio at index {pivot}"
                )));
            }
        }
        let ratio = a.elt_scalar(ap).checked_div(&b.elt_scalar(bp))?;
        let scale = a.scale_scalar().checked_div(&b.scale_scalar())?;
        Ok((&ratio * &scale).folded())
    }

    /// Exact matrix equality.
    pub fn exact_eq(&self, rhs: &Self) -> Result<bool> {
        match self.ratio_to(rhs) {
            Ok(c) => Ok(c.is_one()),
            Err(Error::NotProportional(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// True when some column permutation structure holds: every row and every
    /// column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let n = self.dim;
        let rows_ok = (0..n).all(|i| (0..n).filter(|&j| !self.is_entry_zero(i, j)).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| !self.is_entry_zero(i, j)).count() == 1);
        rows_ok && cols_ok
    }

    /// Column index of the nonzero entry in row i, for monomial matrices.
    pub fn support_in_row(&self, i: usize) -> Option<usize> {
        (0..self.dim).find(|&j| !self.is_entry_zero(i, j))
    }
}

impl fmt::Display for ProjUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scale_scalar();
        writeln!(f, "scale {s} · k^({}/2), k = {}", self.kpow2, self.level)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let e = &self.entries[i * self.dim + j];
                    if e.is_empty() {
                        "0".to_string()
                    } else {
                        e.iter()
                            .map(|&(x, c)| {
                                if x == 0 {
                                    format!("{c}")
                                } else {
                                    format!("{c}q^{x}")
                                }
                            })
                            .collect::<Vec<_>>()
                            .join("+")
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}
