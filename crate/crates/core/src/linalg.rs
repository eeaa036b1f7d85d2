//! Incremental row-echelon spans over F_p, with a bit-packed variant for p = 2.

use crate::arith::{is_prime, mod_inverse};
use crate::error::{invalid, Result};

/// A subspace of F_p^n, grown one vector at a time.
#[derive(Clone, Debug)]
pub enum Span {
    F2(F2Span),
    Fp(FpSpan),
}

impl Span {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(if p == 2 {
            Span::F2(F2Span::new(n))
        } else {
            Span::Fp(FpSpan::new(p, n))
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Span::F2(s) => s.n,
            Span::Fp(s) => s.n,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Span::F2(s) => s.rank,
            Span::Fp(s) => s.rank,
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Adds a vector given by entries in [0, p); returns true if the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        match self {
            Span::F2(s) => s.insert(v),
            Span::Fp(s) => s.insert(v),
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        match self {
            Span::F2(s) => s.contains(v),
            Span::Fp(s) => s.contains(v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct F2Span {
    n: usize,
    rank: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

impl F2Span {
    pub fn new(n: usize) -> Self {
        F2Span {
            n,
            rank: 0,
            pivots: vec![None; n],
        }
    }

    fn pack(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n.div_ceil(64)];
        for (i, &x) in v.iter().enumerate() {
            if x % 2 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    /// Reduces against the stored pivots; returns the residue.
    fn reduce(&self, mut w: Vec<u64>) -> Vec<u64> {
        let mut word = 0;
        while word < w.len() {
            if w[word] == 0 {
                word += 1;
                continue;
            }
            let col = word * 64 + w[word].trailing_zeros() as usize;
            match &self.pivots[col] {
                Some(row) => {
                    for (a, b) in w.iter_mut().zip(row).skip(word) {
                        *a ^= b;
                    }
                }
                None => return w,
            }
        }
        w
    }

    fn leading(w: &[u64]) -> Option<usize> {
        w.iter()
            .enumerate()
            .find(|(_, &x)| x != 0)
            .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        if self.rank == self.n {
            return false;
        }
        let w = self.reduce(self.pack(v));
        match Self::leading(&w) {
            Some(col) => {
                self.pivots[col] = Some(w);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        Self::leading(&self.reduce(self.pack(v))).is_none()
    }
}

#[derive(Clone, Debug)]
pub struct FpSpan {
    p: u64,
    n: usize,
    rank: usize,
    /// Row with leading entry 1 at the given column.
    pivots: Vec<Option<Vec<u32>>>,
}

impl FpSpan {
    pub fn new(p: u64, n: usize) -> Self {
        assert!(p < (1 << 31), "prime too large for packed rows");
        FpSpan {
            p,
            n,
            rank: 0,
            pivots: vec![None; n],
        }
    }

    fn reduce(&self, v: &[u64]) -> Vec<u32> {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| (x % p) as u32).collect();
        for c in 0..self.n {
            let f = w[c] as u64;
            if f == 0 {
                continue;
            }
            let Some(row) = &self.pivots[c] else {
                return w;
            };
            for (a, &b) in w[c..].iter_mut().zip(&row[c..]) {
                if b != 0 {
                    *a = ((*a as u64 + (p - f) * b as u64) % p) as u32;
                }
            }
        }
        w
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        if self.rank == self.n {
            return false;
        }
        let mut w = self.reduce(v);
        let Some(col) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(w[col] as u64, self.p).expect("nonzero mod prime");
        for x in w.iter_mut() {
            *x = ((*x as u64 * inv) % self.p) as u32;
        }
        self.pivots[col] = Some(w);
        self.rank += 1;
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Rank of a list of vectors over F_p.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64, n: usize) -> Result<usize> {
    let mut span = Span::new(p, n)?;
    for r in rows {
        span.insert(r);
        if span.is_full() {
            break;
        }
    }
    Ok(span.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank_mod_p(&rows, 2, 3).unwrap(), 2);
        assert_eq!(rank_mod_p(&rows, 3, 3).unwrap(), 3);
        assert!(rank_mod_p(&rows, 4, 3).is_err());
    }

    #[test]
    fn membership() {
        let mut s = Span::new(5, 4).unwrap();
        assert!(s.insert(&[1, 2, 0, 0]));
        assert!(s.insert(&[0, 1, 3, 0]));
        assert!(s.contains(&[1, 3, 3, 0]));
        assert!(!s.contains(&[0, 0, 0, 1]));
        assert!(!s.insert(&[2, 4, 0, 0]));
    }

    #[test]
    fn f2_wide_vectors() {
        let n = 200;
        let mut s = Span::new(2, n).unwrap();
        for i in 0..n - 1 {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = 1;
            assert!(s.insert(&v));
        }
        let mut ends = vec![0; n];
        ends[0] = 1;
        ends[n - 1] = 1;
        assert!(s.contains(&ends));
        let mut single = vec![0; n];
        single[100] = 1;
        assert!(!s.contains(&single));
    }
}
