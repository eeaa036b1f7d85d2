//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Values live in the group ring Q[X]/(X^N - 1): multiplying by a root of
//! unity is an index shift and no reduction happens during ring operations.
//! Equality is decided by reducing the difference modulo the cyclotomic
//! polynomial Φ_N, which is the only place the field structure is used.
//!
//! A scalar may also carry a formal factor `k^(e/2)` for a positive integer
//! `k` (the `kpow` part). Values with different formal factors are folded
//! into plain cyclotomic coefficients on demand, using an exact expression
//! of √k as a Gauss sum.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zmod::{divisors, gcd, lcm, mobius};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
    k: u64,
    kpow2: i32,
}

impl CycScalar {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycScalar {
            order,
            num: vec![BigInt::zero(); order as usize],
            den: BigInt::one(),
            k: 1,
            kpow2: 0,
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(1, order)
    }

    pub fn from_int(value: i64, order: u64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_ratio(num: i64, den: i64, order: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(num);
        z.den = BigInt::from(den);
        z.normalize();
        z
    }

    /// ζ_order^exponent.
    pub fn root(order: u64, exponent: i64) -> Self {
        let mut z = Self::zero(order);
        let idx = exponent.rem_euclid(order as i64) as usize;
        z.num[idx] = BigInt::one();
        z
    }

    /// Builds Σ coeffs[j]·ζ_N^j with integer coefficients, N = coeffs.len().
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut z = Self::zero(coeffs.len() as u64);
        for (slot, &c) in z.num.iter_mut().zip(coeffs) {
            *slot = BigInt::from(c);
        }
        z
    }

    /// Builds (Σ num[j]·ζ_N^j) / den with N = num.len().
    pub fn from_big(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!num.is_empty(), "cyclotomic order must be positive");
        assert!(!den.is_zero(), "zero denominator");
        let mut z = CycScalar {
            order: num.len() as u64,
            num,
            den,
            k: 1,
            kpow2: 0,
        };
        z.normalize();
        z
    }

    pub fn from_rational(value: &BigRational, order: u64) -> Self {
        let mut num = vec![BigInt::zero(); order as usize];
        num[0] = value.numer().clone();
        Self::from_big(num, value.denom().clone())
    }

    /// Multiplies by the formal factor k^(twice_exponent / 2).
    pub fn with_kpow(mut self, k: u64, twice_exponent: i32) -> Self {
        assert!(k >= 1, "k must be positive");
        if twice_exponent == 0 {
            return self;
        }
        if self.kpow2 == 0 || self.k == k {
            self.k = k;
            self.kpow2 += twice_exponent;
            if self.kpow2 == 0 {
                self.k = 1;
            }
            self
        } else {
            self.folded().mul_ref(&Self::one(1).with_kpow(k, twice_exponent))
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Twice the formal exponent of `k`.
    pub fn kpow2(&self) -> i32 {
        self.kpow2
    }

    pub fn kbase(&self) -> u64 {
        self.k
    }

    /// Coefficient of ζ_N^j as an exact rational.
    pub fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.num[j].clone(), self.den.clone())
    }

    /// Cheap structural test: every group-ring coefficient is zero.
    /// `is_zero` is the semantic test.
    pub fn is_trivially_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Re-expresses the value in Q(ζ_target); `target` must be a multiple of the order.
    pub fn promote(&self, target: u64) -> Self {
        assert!(
            target % self.order == 0,
            "cannot promote order {} to {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut num = vec![BigInt::zero(); target as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[j * step] = c.clone();
            }
        }
        CycScalar {
            order: target,
            num,
            den: self.den.clone(),
            k: self.k,
            kpow2: self.kpow2,
        }
    }

    /// Absorbs the formal k-power into the cyclotomic coefficients.
    pub fn folded(&self) -> Self {
        if self.kpow2 == 0 {
            return self.clone();
        }
        let e = self.kpow2;
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let mut out = self.clone();
        out.k = 1;
        out.kpow2 = 0;
        out = out.scale_by_kpower(self.k, half);
        if odd {
            out = out.mul_ref(&sqrt_positive(self.k));
        }
        out
    }

    /// Multiplies by the rational k^exp (exp may be negative).
    fn scale_by_kpower(mut self, k: u64, exp: i32) -> Self {
        let factor = BigInt::from(k).pow(exp.unsigned_abs());
        if exp >= 0 {
            for c in &mut self.num {
                *c *= &factor;
            }
        } else {
            self.den *= factor;
        }
        self.normalize();
        self
    }

    /// Moves the formal exponent (base `k`) to `target` when the difference is
    /// an even number of half-steps, absorbing the rational factor.
    fn rescale_kpow(&self, k: u64, target: i32) -> Option<Self> {
        let diff = self.kpow2 - target;
        if diff % 2 != 0 {
            return None;
        }
        let mut out = self.clone();
        out.kpow2 = target;
        out.k = if target == 0 { 1 } else { k };
        Some(out.scale_by_kpower(k, diff / 2))
    }

    /// Brings two scalars to a common order and a common formal k-power.
    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let order = lcm(a.order, b.order);
        let (mut a, mut b) = (a.promote(order), b.promote(order));
        if a.kpow2 == b.kpow2 && (a.kpow2 == 0 || a.k == b.k) {
            return (a, b);
        }
        if a.is_trivially_zero() {
            a.k = b.k;
            a.kpow2 = b.kpow2;
            return (a, b);
        }
        if b.is_trivially_zero() {
            b.k = a.k;
            b.kpow2 = a.kpow2;
            return (a, b);
        }
        let same_base = a.kpow2 == 0 || b.kpow2 == 0 || a.k == b.k;
        if same_base && (a.kpow2 - b.kpow2) % 2 == 0 {
            let k = if a.kpow2 != 0 { a.k } else { b.k };
            let target = a.kpow2.min(b.kpow2);
            if let (Some(x), Some(y)) = (a.rescale_kpow(k, target), b.rescale_kpow(k, target)) {
                return (x, y);
            }
        }
        let (x, y) = (a.folded(), b.folded());
        let order = lcm(x.order, y.order);
        (x.promote(order), y.promote(order))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let (mut a, b) = Self::aligned(self, rhs);
        if a.den == b.den {
            for (x, y) in a.num.iter_mut().zip(&b.num) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        } else {
            let l = a.den.lcm(&b.den);
            let fa = &l / &a.den;
            let fb = &l / &b.den;
            for (x, y) in a.num.iter_mut().zip(&b.num) {
                *x = &*x * &fa + y * &fb;
            }
            a.den = l;
            a.normalize();
        }
        a
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (a, b) = if self.kpow2 != 0 && rhs.kpow2 != 0 && self.k != rhs.k {
            (self.folded(), rhs.folded())
        } else {
            (self.clone(), rhs.clone())
        };
        let order = lcm(a.order, b.order);
        let a = a.promote(order);
        let b = b.promote(order);
        let n = order as usize;
        let mut num = vec![BigInt::zero(); n];
        let bnz: Vec<(usize, &BigInt)> = b
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &bnz {
                let idx = (i + j) % n;
                num[idx] += x * y;
            }
        }
        let kpow2 = a.kpow2 + b.kpow2;
        let k = if kpow2 == 0 {
            1
        } else if a.kpow2 != 0 {
            a.k
        } else {
            b.k
        };
        let mut out = CycScalar {
            order,
            num,
            den: &a.den * &b.den,
            k,
            kpow2,
        };
        out.normalize();
        out
    }

    /// Complex conjugate; the formal k-power is real and positive.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut num = vec![BigInt::zero(); n];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[(n - j) % n] = c.clone();
            }
        }
        CycScalar {
            order: self.order,
            num,
            den: self.den.clone(),
            k: self.k,
            kpow2: self.kpow2,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Residue of the numerator modulo Φ_N, length φ(N).
    fn reduced_numerator(&self) -> Vec<BigInt> {
        reduce_mod_cyclotomic(&self.num, self.order)
    }

    pub fn is_zero(&self) -> bool {
        if self.is_trivially_zero() {
            return true;
        }
        self.reduced_numerator().iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        (self - &Self::one(1)).is_zero()
    }

    /// Exact inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let base = self.folded();
        let nonzero: Vec<usize> = (0..base.num.len()).filter(|&j| !base.num[j].is_zero()).collect();
        if nonzero.len() == 1 {
            let j = nonzero[0];
            let c = &base.num[j];
            let mut out = CycScalar::zero(base.order);
            out.num[(base.order as usize - j) % base.order as usize] = base.den.clone();
            out.den = c.clone();
            out.normalize();
            return Some(out);
        }
        let n = base.order;
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        let a = base.reduced_numerator();
        if a.iter().all(Zero::is_zero) {
            return None;
        }
        // Column j of the multiplication-by-a matrix is a·X^j mod Φ_N.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut cur: Vec<BigInt> = a.clone();
        for _ in 0..d {
            cols.push(cur.iter().map(|c| BigRational::from_integer(c.clone())).collect());
            let mut shifted = vec![BigInt::zero(); d + 1];
            for (i, c) in cur.iter().enumerate() {
                shifted[i + 1] = c.clone();
            }
            let top = shifted[d].clone();
            if !top.is_zero() {
                for i in 0..d {
                    shifted[i] -= &top * BigInt::from(phi[i]);
                }
            }
            shifted.truncate(d);
            cur = shifted;
        }
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve_rational(cols, rhs)?;
        let mut common = BigInt::one();
        for s in &sol {
            common = common.lcm(s.denom());
        }
        let mut out = CycScalar::zero(n);
        for (j, s) in sol.iter().enumerate() {
            out.num[j] = s.numer() * (&common / s.denom());
        }
        // (num/common)^-1 scaled: base = base.num/base.den, we inverted base.num.
        for c in &mut out.num {
            *c *= &base.den;
        }
        out.den = common;
        out.normalize();
        Some(out)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        Ok(self * &inv)
    }

    /// Numerical value as (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        let scale = (self.k as f64).powf(self.kpow2 as f64 / 2.0);
        (re * scale, im * scale)
    }

    /// If the value is a root of unity, returns (m, j) with value = ζ_m^j,
    /// m = lcm(N, 2) and 0 ≤ j < m.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let base = self.folded();
        let m = lcm(base.order, 2);
        let base = base.promote(m);
        // |x| must be 1; cheap numeric filter first, then an exact comparison.
        let (re, im) = base.to_complex();
        if ((re * re + im * im) - 1.0).abs() > 1e-6 {
            return None;
        }
        let angle = im.atan2(re);
        let guess = (angle / (2.0 * std::f64::consts::PI) * m as f64).round() as i64;
        let j = guess.rem_euclid(m as i64) as u64;
        if (&base - &CycScalar::root(m, j as i64)).is_zero() {
            return Some((m, j));
        }
        (0..m).find(|&j| (&base - &CycScalar::root(m, j as i64)).is_zero()).map(|j| (m, j))
    }

    /// The value reduced to its canonical coordinates in the power basis of
    /// Q(ζ_N), i.e. the residue modulo Φ_N, together with the denominator.
    pub fn canonical(&self) -> (Vec<BigInt>, BigInt) {
        let base = self.folded();
        let mut red = base.reduced_numerator();
        let mut g = base.den.clone();
        for c in &red {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        let mut den = base.den.clone();
        if !g.is_one() && !g.is_zero() {
            den /= &g;
            for c in &mut red {
                *c /= &g;
            }
        }
        (red, den)
    }
}

/// Gaussian elimination over Q. `cols` holds the matrix by columns.
fn solve_rational(cols: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let d = rhs.len();
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

/// Coefficients of Φ_n from the constant term up, via
/// Φ_n = Π_{d | n} (X^d - 1)^{μ(n/d)}.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let divs = divisors(n);
    let mut poly: Vec<i64> = vec![1];
    for &d in &divs {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i] -= c;
                next[i + d] += c;
            }
            poly = next;
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    poly
}

/// Remainder of Σ coeffs[j] X^j modulo Φ_n (length φ(n)).
fn reduce_mod_cyclotomic(coeffs: &[BigInt], n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    if let Some(small) = reduce_small(coeffs, &phi) {
        return small.into_iter().map(BigInt::from).collect();
    }
    let mut r: Vec<BigInt> = coeffs.to_vec();
    for i in (d..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut r[i]);
        for (j, &p) in phi.iter().enumerate().take(d) {
            if p != 0 {
                r[i - d + j] -= &c * p;
            }
        }
    }
    r.truncate(d);
    r
}

/// i128 fast path; `None` on overflow or oversized inputs.
fn reduce_small(coeffs: &[BigInt], phi: &[i64]) -> Option<Vec<i128>> {
    let d = phi.len() - 1;
    let mut r: Vec<i128> = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let v = c.to_i64()?;
        r.push(v as i128);
    }
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        r[i] = 0;
        for (j, &p) in phi.iter().enumerate().take(d) {
            if p != 0 {
                let t = c.checked_mul(p as i128)?;
                r[i - d + j] = r[i - d + j].checked_sub(t)?;
            }
        }
    }
    r.truncate(d);
    Some(r)
}

/// Exact positive square root of v in a cyclotomic field.
///
/// With v = s²·t and t squarefree, √t = Π √p over the primes p | t, where
/// √2 = ζ_8 + ζ_8^{-1} and, for odd p, √p = ε(p)^{-1}·Σ_x ζ_p^{x²}.
pub fn sqrt_positive(v: u64) -> CycScalar {
    assert!(v >= 1, "square root of zero or negative");
    let mut square = 1i64;
    let mut acc = CycScalar::one(1);
    for (p, e) in super::zmod::factorize(v) {
        square *= (p as i64).pow(e / 2);
        if e % 2 == 1 {
            acc = &acc * &sqrt_prime(p);
        }
    }
    let out = &acc * &CycScalar::from_int(square, 1);
    let (re, im) = out.to_complex();
    let expected = (v as f64).sqrt();
    assert!(
        (re - expected).abs() < 1e-9 * expected.max(1.0) && im.abs() < 1e-9 * expected.max(1.0),
        "sqrt({v}) failed its numerical check: got {re} + {im}i"
    );
    out
}

fn sqrt_prime(p: u64) -> CycScalar {
    if p == 2 {
        return &CycScalar::root(8, 1) + &CycScalar::root(8, 7);
    }
    let mut gauss = CycScalar::zero(p);
    for x in 0..p {
        let idx = (x * x % p) as usize;
        gauss.num[idx] += 1;
    }
    if p % 4 == 1 {
        gauss
    } else {
        // G(1,p) = i·√p
        &gauss * &CycScalar::root(4, 3)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        let mut out = self.clone();
        for c in &mut out.num {
            if !c.is_zero() {
                *c = -c.clone();
            }
        }
        out
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        self.add_ref(&rhs)
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl fmt::Display for CycScalar {
    /// Roots of unity print as `zeta{m}^{j}` (or `1`, `-1`); other values print
    /// their canonical power-basis coordinates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((m, j)) = self.as_root_of_unity() {
            let g = gcd(j, m);
            let (m, j) = (m / g, j / g);
            return match (m, j) {
                (1, _) => write!(f, "1"),
                (2, 1) => write!(f, "-1"),
                _ => write!(f, "zeta{m}^{j}"),
            };
        }
        let (red, den) = self.canonical();
        let order = self.folded().order;
        let mut terms = Vec::new();
        for (j, c) in red.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = BigRational::new(c.clone(), den.clone());
            terms.push(if j == 0 {
                format!("{coeff}")
            } else {
                format!("{coeff}*z^{j}")
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        if terms.len() == 1 && !terms[0].contains('z') {
            return write!(f, "{}", terms[0]);
        }
        write!(f, "({}) [z = zeta{order}]", terms.join(" + "))
    }
}
