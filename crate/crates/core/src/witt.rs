//! Symmetric nondegenerate bilinear forms over Z/4Z and their Witt classes.
//!
//! Every such form is an orthogonal sum of copies of ⟨1⟩, ⟨-1⟩, the form
//! ω = (2 1; 1 2) and split planes. The Witt group is cyclic of order 8,
//! generated by ⟨-1⟩, with ⟨1⟩ = -⟨-1⟩ and ω = 4⟨-1⟩.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::ModMatrix;

const MODULUS: u64 = 4;

/// Largest rank accepted by [`is_split`].
pub const DEFAULT_RANK_CAP: usize = 6;

/// A symmetric bilinear form over Z/4Z with unit determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilForm {
    gram: ModMatrix,
}

impl BilForm {
    pub fn new(gram: ModMatrix) -> Result<Self> {
        if gram.modulus() != MODULUS {
            return Err(Error::ModulusMismatch {
                left: gram.modulus(),
                right: MODULUS,
            });
        }
        if !gram.is_square() {
            return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        if gram.rows() > 0 && !gram.det()?.is_unit() {
            return Err(Error::Degenerate(format!("det {} is not a unit mod 4", gram.det()?.value())));
        }
        Ok(BilForm { gram })
    }

    /// Parses a Gram matrix such as `"2,1;1,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(ModMatrix::parse(text, MODULUS)?)
    }

    pub fn from_ints(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(ModMatrix::from_ints(n, n, entries, MODULUS)?)
    }

    /// The form of rank 0.
    pub fn empty() -> Self {
        BilForm {
            gram: ModMatrix::zeros(0, 0, MODULUS),
        }
    }

    /// ⟨u⟩ for a unit u.
    pub fn unit(u: i64) -> Result<Self> {
        Self::from_ints(1, &[u])
    }

    pub fn diagonal(units: &[i64]) -> Result<Self> {
        let n = units.len();
        let mut entries = vec![0; n * n];
        for (i, &u) in units.iter().enumerate() {
            entries[i * n + i] = u;
        }
        Self::from_ints(n, &entries)
    }

    pub fn omega() -> Self {
        Self::from_ints(2, &[2, 1, 1, 2]).expect("ω is nondegenerate")
    }

    pub fn hyperbolic() -> Self {
        Self::from_ints(2, &[0, 1, 1, 0]).expect("the hyperbolic plane is nondegenerate")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ModMatrix {
        &self.gram
    }

    pub fn pairing(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] * self.gram.get(i, j) * y[j];
            }
        }
        acc % MODULUS
    }

    /// The Gram matrix in the basis given by the columns of `p`.
    pub fn base_change(&self, p: &ModMatrix) -> Result<ModMatrix> {
        p.transpose().mul(&self.gram)?.mul(p)
    }

    /// Orthogonal sum (block-diagonal Gram matrix).
    pub fn direct_sum(&self, other: &BilForm) -> BilForm {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = ModMatrix::zeros(a + b, a + b, MODULUS);
        for i in 0..a {
            for j in 0..a {
                gram.set(i, j, self.gram.get(i, j) as i64);
            }
        }
        for i in 0..b {
            for j in 0..b {
                gram.set(a + i, a + j, other.gram.get(i, j) as i64);
            }
        }
        BilForm { gram }
    }

    /// The orthogonal sum of `m` copies.
    pub fn repeat(&self, m: usize) -> BilForm {
        (0..m).fold(BilForm::empty(), |acc, _| acc.direct_sum(self))
    }
}

impl fmt::Display for BilForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

pub fn direct_sum(f1: &BilForm, f2: &BilForm) -> BilForm {
    f1.direct_sum(f2)
}

/// An element of the Witt group Z/8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct WittClass(u8);

impl WittClass {
    pub fn new(value: i64) -> Self {
        WittClass(value.rem_euclid(8) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for WittClass {
    type Output = WittClass;
    fn add(self, rhs: Self) -> Self {
        WittClass((self.0 + rhs.0) % 8)
    }
}

impl Neg for WittClass {
    type Output = WittClass;
    fn neg(self) -> Self {
        WittClass((8 - self.0) % 8)
    }
}

impl Sub for WittClass {
    type Output = WittClass;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orthogonal decomposition of a form together with the basis realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: usize,
    pub minus: usize,
    pub omega: usize,
    pub split: usize,
    /// Block types in the order they were split off.
    pub blocks: Vec<Block>,
    /// Columns are the new basis; the Gram matrix in this basis is
    /// [`Decomposition::normal_form`].
    pub basis: ModMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Plus,
    Minus,
    Omega,
    /// The plane (s 1; 1 t) with s·t = 0.
    Split { s: u8, t: u8 },
}

impl Decomposition {
    /// The block-diagonal Gram matrix assembled from `blocks`.
    pub fn normal_form(&self) -> BilForm {
        self.blocks.iter().fold(BilForm::empty(), |acc, b| {
            let piece = match *b {
                Block::Plus => BilForm::unit(1),
                Block::Minus => BilForm::unit(-1),
                Block::Omega => Ok(BilForm::omega()),
                Block::Split { s, t } => BilForm::from_ints(2, &[s as i64, 1, 1, t as i64]),
            }
            .expect("normal-form blocks are nondegenerate");
            acc.direct_sum(&piece)
        })
    }

    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.plus, self.minus, self.omega, self.split)
    }
}

fn add_scaled(w: &mut [u64], v: &[u64], c: u64) {
    for (a, &b) in w.iter_mut().zip(v) {
        *a = (*a + c * b) % MODULUS;
    }
}

/// Splits off unit vectors ⟨u⟩ while possible, then planes spanned by the
/// first pair with odd pairing.
pub fn decompose(f: &BilForm) -> Decomposition {
    let n = f.rank();
    let mut rest: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        if let Some(pos) = rest.iter().position(|v| f.pairing(v, v) % 2 == 1) {
            let u = rest.remove(pos);
            let q = f.pairing(&u, &u);
            // q is its own inverse mod 4.
            for w in rest.iter_mut() {
                let c = (f.pairing(w, &u) * q) % MODULUS;
                add_scaled(w, &u, MODULUS - c);
            }
            blocks.push(if q == 1 { Block::Plus } else { Block::Minus });
            out.push(u);
            continue;
        }
        let (i, j) = (0..rest.len())
            .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .find(|&(i, j)| f.pairing(&rest[i], &rest[j]) % 2 == 1)
            .expect("nondegenerate form with even diagonal has an odd pairing");
        let e1 = rest[i].clone();
        let mut e2 = rest[j].clone();
        if f.pairing(&e1, &e2) == 3 {
            for x in e2.iter_mut() {
                *x = (MODULUS - *x) % MODULUS;
            }
        }
        rest.remove(j);
        rest.remove(i);
        let (s, t) = (f.pairing(&e1, &e1), f.pairing(&e2, &e2));
        // Inverse of (s 1; 1 t) is (st - 1)^{-1} (t -1; -1 s).
        let det_inv = (s * t + MODULUS - 1) % MODULUS;
        for w in rest.iter_mut() {
            let (b1, b2) = (f.pairing(w, &e1), f.pairing(w, &e2));
            let alpha = det_inv * (t * b1 + (MODULUS - 1) * b2) % MODULUS;
            let beta = det_inv * ((MODULUS - 1) * b1 + s * b2) % MODULUS;
            add_scaled(w, &e1, MODULUS - alpha);
            add_scaled(w, &e2, MODULUS - beta);
        }
        blocks.push(if s * t == 0 {
            Block::Split {
                s: s as u8,
                t: t as u8,
            }
        } else {
            Block::Omega
        });
        out.push(e1);
        out.push(e2);
    }
    let mut basis = ModMatrix::zeros(n, n, MODULUS);
    for (col, v) in out.iter().enumerate() {
        for (row, &x) in v.iter().enumerate() {
            basis.set(row, col, x as i64);
        }
    }
    let count = |pred: fn(&Block) -> bool| blocks.iter().filter(|b| pred(b)).count();
    Decomposition {
        plus: count(|b| *b == Block::Plus),
        minus: count(|b| *b == Block::Minus),
        omega: count(|b| *b == Block::Omega),
        split: count(|b| matches!(b, Block::Split { .. })),
        blocks,
        basis,
    }
}

/// (n₋ - n₊ + 4·n_ω) mod 8.
pub fn witt_class(f: &BilForm) -> WittClass {
    let d = decompose(f);
    WittClass::new(d.minus as i64 - d.plus as i64 + 4 * d.omega as i64)
}

/// det mod 4 as a representative of (Z/4)^*/squares = {1, 3}.
pub fn discriminant(f: &BilForm) -> u64 {
    if f.rank() == 0 {
        return 1;
    }
    f.gram.det().expect("square Gram matrix").value()
}

/// The rank cap for [`is_split`], overridable through `WEILCHECK_RANK_CAP`.
pub fn rank_cap_from_env() -> usize {
    std::env::var("WEILCHECK_RANK_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_RANK_CAP)
}

pub fn is_split(f: &BilForm) -> Result<bool> {
    is_split_with_cap(f, DEFAULT_RANK_CAP)
}

/// Whether f has a totally isotropic free direct summand of half rank.
///
/// Such a summand N satisfies N = N^⊥ by a rank count. Vectors span a free
/// direct summand iff their reductions mod 2 are independent.
pub fn is_split_with_cap(f: &BilForm, cap: usize) -> Result<bool> {
    let n = f.rank();
    if n > cap {
        return Err(Error::CapExceeded(format!("rank {n} exceeds the split-search cap {cap}")));
    }
    if n % 2 == 1 {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let total = 4usize.pow(n as u32);
    let decode = |mut code: usize| -> Vec<u64> {
        (0..n)
            .map(|_| {
                let d = (code % 4) as u64;
                code /= 4;
                d
            })
            .collect()
    };
    let candidates: Vec<Vec<u64>> = (1..total)
        .map(decode)
        .filter(|v| v.iter().any(|&x| x % 2 == 1) && f.pairing(v, v) == 0)
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    Ok(search(f, &candidates, &mut chosen, 0, n / 2))
}

fn mod2_mask(v: &[u64]) -> u64 {
    v.iter().enumerate().fold(0, |m, (i, &x)| m | ((x & 1) << i))
}

fn independent_mod2(masks: &[u64]) -> bool {
    let mut rows = masks.to_vec();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank == masks.len()
}

fn search(f: &BilForm, cands: &[Vec<u64>], chosen: &mut Vec<usize>, start: usize, want: usize) -> bool {
    if chosen.len() == want {
        return true;
    }
    for c in start..cands.len() {
        if chosen.iter().any(|&k| f.pairing(&cands[k], &cands[c]) != 0) {
            continue;
        }
        let mut masks: Vec<u64> = chosen.iter().map(|&k| mod2_mask(&cands[k])).collect();
        masks.push(mod2_mask(&cands[c]));
        if !independent_mod2(&masks) {
            continue;
        }
        chosen.push(c);
        if search(f, cands, chosen, c + 1, want) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A triple (L; q0, q1) of forms on the same module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTriple {
    q0: BilForm,
    q1: BilForm,
}

impl FormTriple {
    pub fn new(q0: BilForm, q1: BilForm) -> Result<Self> {
        if q0.rank() != q1.rank() {
            return Err(Error::ShapeMismatch(format!(
                "ranks {} and {} differ",
                q0.rank(),
                q1.rank()
            )));
        }
        Ok(FormTriple { q0, q1 })
    }

    pub fn rank(&self) -> usize {
        self.q0.rank()
    }

    pub fn q0(&self) -> &BilForm {
        &self.q0
    }

    pub fn q1(&self) -> &BilForm {
        &self.q1
    }
}

/// The image q1 - q0 in the Witt group.
pub fn v_class(t: &FormTriple) -> WittClass {
    witt_class(&t.q1) - witt_class(&t.q0)
}

#[cfg(test)]
mod tests;
