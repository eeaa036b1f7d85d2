//! The eighth-root multiplier ζ_γ of the theta transformation law.

use std::collections::HashSet;

use crate::arith::{jacobi, reduce_i64, root_order, sqrt_positive, CycScalar};
use crate::error::{invalid, Error, Result};
use crate::matrix::IntMatrix;
use crate::symplectic::is_theta_group;

fn require_theta(gamma: &IntMatrix) -> Result<()> {
    if !is_theta_group(gamma)? {
        return Err(Error::NotThetaGroup(gamma.to_string()));
    }
    Ok(())
}

/// Genus-1 case formulas, after normalizing to C > 0, or C = 0 and D > 0:
/// i^{(D-1)/2}·(C/|D|) for even C, ζ_8^{-C}·(D/C) for odd C.
pub fn multiplier_zeta_g1(gamma: &IntMatrix) -> Result<CycScalar> {
    if gamma.rows() != 2 || gamma.cols() != 2 {
        return invalid("genus-1 multiplier needs a 2x2 matrix");
    }
    require_theta(gamma)?;
    let (mut c, mut d) = (gamma.get(1, 0), gamma.get(1, 1));
    if c < 0 || (c == 0 && d < 0) {
        c = -c;
        d = -d;
    }
    if c % 2 == 0 {
        // d is odd since gcd(c, d) = 1
        let sign = jacobi(c, d.abs())?;
        let unit = CycScalar::root(4, ((d - 1) / 2).rem_euclid(4));
        Ok(&unit * &CycScalar::from_int(sign as i64, 1))
    } else {
        // theta condition forces d even here
        let sign = jacobi(d, c)?;
        Ok(&CycScalar::root(8, -c) * &CycScalar::from_int(sign as i64, 1))
    }
}

/// det^{-1/2}(D)·Σ_{ℓ ∈ Z^g/DZ^g} exp(πi⟨ℓ, BD^{-1}ℓ⟩) for g ≤ 2 and det D > 0.
pub fn multiplier_zeta_gauss(gamma: &IntMatrix) -> Result<CycScalar> {
    if !gamma.is_square() || gamma.rows() % 2 != 0 {
        return invalid("multiplier needs a 2g x 2g matrix");
    }
    let g = gamma.rows() / 2;
    if g == 0 || g > 2 {
        return Err(Error::Unsupported(format!("Gauss-sum multiplier is implemented for g <= 2, got {g}")));
    }
    require_theta(gamma)?;
    let b = gamma.block(0, g, g, g);
    let dm = gamma.block(g, g, g, g);
    let det = dm.det_i128()?;
    if det == 0 {
        return Err(Error::Degenerate("det D = 0".into()));
    }
    if det < 0 {
        return Err(Error::Unsupported(
            "det D < 0: the square-root branch of det(D)^(1/2) is not fixed".into(),
        ));
    }
    let d = det as i64;
    let adj = adjugate(&dm);
    let badj = b.mul(&adj);
    let two_d = 2 * d as u64;
    // Classes of Z^g / D Z^g, represented inside the box [0, d)^g and
    // identified through adj(D)·ℓ mod d.
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut coeffs = vec![0i64; two_d as usize];
    for l in box_points(g, d) {
        let key: Vec<u64> = (0..g)
            .map(|r| reduce_i64((0..g).map(|c| adj.get(r, c) * l[c]).sum(), d as u64))
            .collect();
        if !seen.insert(key) {
            continue;
        }
        let mut e = 0i64;
        for r in 0..g {
            for c in 0..g {
                e += l[r] * badj.get(r, c) * l[c];
            }
        }
        coeffs[reduce_i64(e, two_d) as usize] += 1;
    }
    if seen.len() as i64 != d {
        return Err(Error::Degenerate(format!(
            "found {} classes in Z^g/DZ^g, expected {d}",
            seen.len()
        )));
    }
    let sum = CycScalar::from_coeffs(&coeffs);
    let zeta = sum.checked_div(&sqrt_positive(d as u64))?;
    let order = root_order(&zeta)?;
    if 8 % order != 0 {
        return Err(Error::NotRootOfUnity(format!("multiplier {zeta} has order {order}, not dividing 8")));
    }
    Ok(zeta)
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    match m.rows() {
        1 => IntMatrix::identity(1),
        2 => IntMatrix::from_rows(&[&[m.get(1, 1), -m.get(0, 1)], &[-m.get(1, 0), m.get(0, 0)]]),
        _ => unreachable!("adjugate is only needed for g <= 2"),
    }
}

fn box_points(g: usize, d: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
