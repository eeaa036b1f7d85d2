use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{invalid, Error, Result};

/// An element of Z/nZ, always stored reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl ZMod {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return invalid("modulus must be positive");
        }
        Ok(ZMod {
            value: reduce_i64(value, modulus),
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Representative in (-n/2, n/2].
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        let n = self.modulus as i64;
        if 2 * v > n {
            v - n
        } else {
            v
        }
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn inverse(self) -> Option<ZMod> {
        mod_inverse(self.value, self.modulus).map(|value| ZMod {
            value,
            modulus: self.modulus,
        })
    }

    pub fn checked_add(self, rhs: ZMod) -> Result<ZMod> {
        self.same_modulus(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_mul(self, rhs: ZMod) -> Result<ZMod> {
        self.same_modulus(rhs)?;
        Ok(self * rhs)
    }

    fn same_modulus(self, rhs: ZMod) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

// The operator impls panic on mismatched moduli; use the checked_* variants
// when the moduli are not known to agree.
impl Add for ZMod {
    type Output = ZMod;
    fn add(self, rhs: ZMod) -> ZMod {
        assert_eq!(self.modulus, rhs.modulus, "ZMod modulus mismatch");
        ZMod {
            value: ((self.value as u128 + rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for ZMod {
    type Output = ZMod;
    fn sub(self, rhs: ZMod) -> ZMod {
        self + (-rhs)
    }
}

impl Neg for ZMod {
    type Output = ZMod;
    fn neg(self) -> ZMod {
        ZMod {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for ZMod {
    type Output = ZMod;
    fn mul(self, rhs: ZMod) -> ZMod {
        assert_eq!(self.modulus, rhs.modulus, "ZMod modulus mismatch");
        ZMod {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

pub fn reduce_i64(value: i64, modulus: u64) -> u64 {
    (value as i128).rem_euclid(modulus as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 && !(n == 1 && old_r == 0) {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.append(&mut upper);
    out
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Smallest generator of (Z/pZ)^* for a prime p.
pub fn primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    if p == 2 {
        return Some(1);
    }
    let factors = factorize(p - 1);
    (2..p).find(|&a| factors.iter().all(|&(q, _)| pow_mod(a, (p - 1) / q, p) != 1))
}
