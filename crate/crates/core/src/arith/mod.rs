//! Modular, cyclotomic and quadratic-residue arithmetic.

mod cyclotomic;
mod zmod;

pub use cyclotomic::{cyclotomic_polynomial, sqrt_positive, CycScalar};
pub use zmod::{
    divisors, factorize, gcd, is_prime, lcm, mobius, mod_inverse, mul_mod, pow_mod, prime_power,
    primitive_root, reduce_i64, ZMod,
};

use crate::error::{invalid, Error, Result};

/// Jacobi symbol (P/Q) for odd Q ≥ 1.
pub fn jacobi(p: i64, q: i64) -> Result<i32> {
    if q < 1 || q % 2 == 0 {
        return invalid(format!("Jacobi symbol needs an odd positive modulus, got {q}"));
    }
    let mut a = p.rem_euclid(q) as u64;
    let mut n = q as u64;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// ε(a): 1 when a ≡ 1 (mod 4), √-1 when a ≡ 3 (mod 4).
pub fn epsilon(a: i64) -> Result<CycScalar> {
    match a.rem_euclid(4) {
        1 => Ok(CycScalar::one(4)),
        3 => Ok(CycScalar::root(4, 1)),
        _ => invalid(format!("epsilon needs an odd argument, got {a}")),
    }
}

/// G(u, v) = Σ_{x mod v} exp(2πi·u·x²/v), summed term by term in Q(ζ_v).
pub fn gauss_sum_bruteforce(u: i64, v: u64) -> Result<CycScalar> {
    if v == 0 {
        return invalid("Gauss sum modulus must be positive");
    }
    let u = reduce_i64(u, v);
    let mut coeffs = vec![0i64; v as usize];
    for x in 0..v {
        let e = mul_mod(u, mul_mod(x, x, v), v);
        coeffs[e as usize] += 1;
    }
    Ok(CycScalar::from_coeffs(&coeffs))
}

/// G(u, v) from the classical closed formula: gcd reduction, then the
/// odd / 2 mod 4 / 0 mod 4 cases.
pub fn gauss_sum_closed(u: i64, v: u64) -> Result<CycScalar> {
    if v == 0 {
        return invalid("Gauss sum modulus must be positive");
    }
    let u = reduce_i64(u, v);
    let d = gcd(u, v);
    let (u, v) = (u / d, v / d);
    let scale = CycScalar::from_int(d as i64, 1);
    let value = if v == 1 {
        CycScalar::one(1)
    } else if v % 2 == 1 {
        let sign = jacobi(u as i64, v as i64)?;
        &(&epsilon(v as i64)? * &CycScalar::from_int(sign as i64, 1)) * &sqrt_positive(v)
    } else if v % 4 == 2 {
        CycScalar::zero(1)
    } else {
        // u is odd here since gcd(u, v) = 1 and v is even.
        let sign = jacobi(v as i64, u as i64)?;
        let eps_bar = epsilon(u as i64)?.conj();
        let unit = &eps_bar * &CycScalar::from_int(sign as i64, 1);
        &(&unit * &CycScalar::root(8, 1)) * &sqrt_positive(2 * v)
    };
    Ok(&scale * &value)
}

/// Multiplicative order of a root of unity.
pub fn root_order(x: &CycScalar) -> Result<u64> {
    let (m, j) = x
        .as_root_of_unity()
        .ok_or_else(|| Error::NotRootOfUnity(x.to_string()))?;
    Ok(m / gcd(j, m))
}

/// Order of ζ_{2p}^{-12-p(p+1)}, the image of the central generator under
/// the level-p quantum representation.
pub fn center_order(p: u64) -> Result<u64> {
    if p < 2 {
        return invalid(format!("center_order needs p >= 2, got {p}"));
    }
    let two_p = 2 * p as u128;
    let exponent = 12 + p as u128 * (p as u128 + 1);
    let g = gcd_u128(two_p, exponent % two_p);
    Ok((two_p / g) as u64)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent route: Euler's criterion at each prime factor.
    fn jacobi_by_factoring(p: i64, q: u64) -> i32 {
        factorize(q)
            .into_iter()
            .map(|(r, e)| {
                let a = reduce_i64(p, r);
                let l: i32 = if a == 0 {
                    0
                } else if pow_mod(a, (r - 1) / 2, r) == 1 {
                    1
                } else {
                    -1
                };
                l.pow(e)
            })
            .product()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(5, 1).unwrap(), 1);
        assert_eq!(jacobi(2, 3).unwrap(), -1);
        assert_eq!(jacobi(3, 5).unwrap() * jacobi(5, 3).unwrap(), 1);
        assert_eq!(jacobi(0, 1).unwrap(), 1);
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert!(jacobi(1, 4).is_err());
        assert!(jacobi(1, -3).is_err());
        assert!(jacobi(1, 0).is_err());
    }

    #[test]
    fn jacobi_matches_factorization() {
        for q in (1..200u64).step_by(2) {
            for p in -50..150i64 {
                assert_eq!(jacobi(p, q as i64).unwrap(), jacobi_by_factoring(p, q), "({p}/{q})");
            }
        }
    }

    #[test]
    fn jacobi_reciprocity() {
        for p in (1..=99i64).step_by(2) {
            for q in (1..=99i64).step_by(2) {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let lhs = jacobi(p, q).unwrap() * jacobi(q, p).unwrap();
                let rhs = if ((p - 1) / 2) * ((q - 1) / 2) % 2 == 0 { 1 } else { -1 };
                assert_eq!(lhs, rhs, "({p},{q})");
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(1).unwrap(), CycScalar::one(1));
        assert_eq!(epsilon(3).unwrap(), CycScalar::root(4, 1));
        assert_eq!(epsilon(7).unwrap(), CycScalar::root(4, 1));
        assert_eq!(epsilon(-1).unwrap(), CycScalar::root(4, 1));
        assert!(epsilon(2).is_err());
    }

    #[test]
    fn gauss_bruteforce_examples() {
        assert_eq!(gauss_sum_bruteforce(1, 1).unwrap(), CycScalar::one(1));
        assert!(gauss_sum_bruteforce(1, 2).unwrap().is_zero());
        let expected = &CycScalar::from_int(2, 1) + &CycScalar::from_coeffs(&[0, 2, 0, 0]);
        assert_eq!(gauss_sum_bruteforce(1, 4).unwrap(), expected);
    }

    #[test]
    fn gauss_closed_examples() {
        let g13 = gauss_sum_closed(1, 3).unwrap();
        assert_eq!(g13, &CycScalar::root(4, 1) * &sqrt_positive(3));
        assert_eq!(g13, CycScalar::from_coeffs(&[1, 2, 0]));
        assert!(gauss_sum_closed(1, 6).unwrap().is_zero());
        let two_sqrt2 = &CycScalar::from_int(2, 1) * &sqrt_positive(2);
        let expected = &two_sqrt2 * &(&CycScalar::one(1) + &CycScalar::root(4, 1));
        assert_eq!(gauss_sum_closed(1, 8).unwrap(), expected);
        assert_eq!(gauss_sum_bruteforce(1, 8).unwrap(), expected);
        assert_eq!(gauss_sum_closed(0, 7).unwrap(), CycScalar::from_int(7, 1));
    }

    #[test]
    fn gauss_closed_matches_bruteforce_small() {
        for v in 1..=40u64 {
            for u in 0..v {
                assert_eq!(
                    gauss_sum_closed(u as i64, v).unwrap(),
                    gauss_sum_bruteforce(u as i64, v).unwrap(),
                    "G({u},{v})"
                );
            }
        }
    }

    #[test]
    fn root_order_examples() {
        assert_eq!(root_order(&CycScalar::root(4, 1)).unwrap(), 4);
        assert_eq!(root_order(&CycScalar::one(1)).unwrap(), 1);
        assert_eq!(root_order(&CycScalar::root(6, 2)).unwrap(), 3);
        assert_eq!(root_order(&CycScalar::from_int(-1, 1)).unwrap(), 2);
        assert!(root_order(&CycScalar::from_int(2, 1)).is_err());
        assert!(root_order(&sqrt_positive(2)).is_err());
    }

    #[test]
    fn root_order_is_minimal() {
        for n in 1..=36u64 {
            for j in 0..n {
                let x = CycScalar::root(n, j as i64);
                let m = root_order(&x).unwrap();
                assert!(x.pow(m as u32).is_one());
                for d in divisors(m) {
                    if d < m {
                        assert!(!x.pow(d as u32).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn center_order_examples() {
        assert_eq!(center_order(5).unwrap(), 5);
        assert_eq!(center_order(2).unwrap(), 2);
        assert_eq!(center_order(48).unwrap(), 8);
        assert!(center_order(1).is_err());
    }

    #[test]
    fn center_order_matches_root_of_unity_order() {
        for p in 2..=60u64 {
            let exponent = -12 - (p * (p + 1)) as i64;
            let x = CycScalar::root(2 * p, exponent);
            assert_eq!(center_order(p).unwrap(), root_order(&x).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn center_order_prime_powers() {
        for q in [5u64, 7, 11, 13] {
            let mut p = q;
            while p <= 200 {
                assert_eq!(center_order(p).unwrap(), p);
                p *= q;
            }
        }
    }
}
