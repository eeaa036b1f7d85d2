//! The Weil representation ρ_{g,k} of Sp(2g, Z) as exact matrices over
//! Q(ζ_{2k}), with rows and columns indexed by (Z/kZ)^g in lexicographic
//! order (first coordinate most significant).
//!
//! Generator images, with q = ζ_{2k}:
//! - `Upper(B)` = (1 B; 0 1) ↦ diag(q^{⟨m, Bm⟩})
//! - `GL(A)` = (A 0; 0 A^{-T}) ↦ δ_{Aᵀm, n}
//! - `S` = (0 -1; 1 0) ↦ k^{-g/2} ζ_k^{-⟨m, n⟩}

mod chain;
mod multiplier;
pub mod random;
mod unitary;
mod word;

pub use chain::{
    braid_lift_checks, braid_pairs, chain_defect, chain_defect_expected, chain_lift_matrices, check_braid_lifts,
    homology_twist_matrices, BraidCheck, ChainLifts, PairRelation, Twist,
};
pub use multiplier::{multiplier_zeta_g1, multiplier_zeta_gauss};
pub use unitary::ProjUnitary;
pub use word::{GenLetter, GenWord};

use num_rational::BigRational;
use num_traits::One;

use crate::arith::reduce_i64;
use crate::error::{invalid, Error, Result};
use crate::matrix::IntMatrix;
use crate::symplectic::is_theta_group;

/// Points of (Z/kZ)^g in index order.
pub fn index_points(g: usize, k: u64) -> Vec<Vec<i64>> {
    let dim = (k as usize).pow(g as u32);
    (0..dim)
        .map(|mut idx| {
            let mut m = vec![0i64; g];
            for slot in m.iter_mut().rev() {
                *slot = (idx % k as usize) as i64;
                idx /= k as usize;
            }
            m
        })
        .collect()
}

pub fn point_index(m: &[i64], k: u64) -> usize {
    m.iter().fold(0usize, |acc, &x| acc * k as usize + reduce_i64(x, k) as usize)
}

fn check_level(k: u64) -> Result<()> {
    if k < 2 {
        return invalid(format!("level k must be at least 2, got {k}"));
    }
    Ok(())
}

fn quad_form(m: &[i64], b: &IntMatrix) -> i64 {
    let g = m.len();
    let mut s = 0i64;
    for i in 0..g {
        for j in 0..g {
            s += m[i] * b.get(i, j) * m[j];
        }
    }
    s
}

/// Image of one generator.
pub fn rho_generator(letter: &GenLetter, g: usize, k: u64) -> Result<ProjUnitary> {
    check_level(k)?;
    letter.validate(g)?;
    let two_k = 2 * k;
    let points = index_points(g, k);
    let dim = points.len();
    let mut entries = vec![Vec::new(); dim * dim];
    match letter {
        GenLetter::Upper(b) => {
            for (i, m) in points.iter().enumerate() {
                let e = reduce_i64(quad_form(m, b), two_k) as u32;
                entries[i * dim + i] = vec![(e, 1)];
            }
            Ok(ProjUnitary::from_parts(g, k, entries, BigRational::one(), 0))
        }
        GenLetter::Gl(a) => {
            let at = a.transpose();
            for (i, m) in points.iter().enumerate() {
                let image: Vec<i64> = (0..g)
                    .map(|r| (0..g).map(|c| at.get(r, c) * m[c]).sum())
                    .collect();
                entries[i * dim + point_index(&image, k)] = vec![(0, 1)];
            }
            Ok(ProjUnitary::from_parts(g, k, entries, BigRational::one(), 0))
        }
        GenLetter::S => {
            for (i, m) in points.iter().enumerate() {
                for (j, n) in points.iter().enumerate() {
                    let dot: i64 = m.iter().zip(n).map(|(x, y)| x * y).sum();
                    // ζ_k^{-dot} = q^{-2 dot}
                    let e = reduce_i64(-2 * dot, two_k) as u32;
                    entries[i * dim + j] = vec![(e, 1)];
                }
            }
            Ok(ProjUnitary::from_parts(g, k, entries, BigRational::one(), -(g as i32)))
        }
    }
}

/// Ordered product of the generator images of a word. For odd k every
/// letter must lie in the theta group.
pub fn rho_word(word: &GenWord, g: usize, k: u64) -> Result<ProjUnitary> {
    check_level(k)?;
    let mut acc = ProjUnitary::identity(g, k);
    for letter in word.letters() {
        if k % 2 == 1 && !is_theta_group(&letter.symplectic_matrix(g)?)? {
            return Err(Error::NotThetaGroup(format!(
                "letter {letter} is outside the theta group, required for odd k = {k}"
            )));
        }
        acc = acc.mul(&rho_generator(letter, g, k)?)?;
    }
    Ok(acc)
}

/// The scalar η with ρ(w1)ρ(w2) = η·ρ(w12), for words whose symplectic
/// images agree modulo 2k.
pub fn cocycle_defect(
    w1: &GenWord,
    w2: &GenWord,
    w12: &GenWord,
    g: usize,
    k: u64,
) -> Result<crate::arith::CycScalar> {
    check_level(k)?;
    let n = 2 * k;
    let lhs = w1.symplectic_matrix_mod(g, n)?.mul(&w2.symplectic_matrix_mod(g, n)?)?;
    let rhs = w12.symplectic_matrix_mod(g, n)?;
    if lhs != rhs {
        return invalid(format!(
            "symplectic images differ mod {n}: {lhs} vs {rhs}"
        ));
    }
    let p = rho_word(w1, g, k)?.mul(&rho_word(w2, g, k)?)?;
    let w = rho_word(w12, g, k)?;
    p.ratio_to(&w)
}

/// Trace of S², the number of m ∈ (Z/kZ)^g with 2m = 0.
pub fn s_squared_trace(g: usize, k: u64) -> Result<u64> {
    check_level(k)?;
    Ok(index_points(g, k)
        .iter()
        .filter(|m| m.iter().all(|&x| (2 * x) % k as i64 == 0))
        .count() as u64)
}

#[cfg(test)]
mod tests;
