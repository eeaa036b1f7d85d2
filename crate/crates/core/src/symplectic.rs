//! Symplectic groups Sp(2g, Z/nZ), the Lie algebra sp_2g(p), transvections
//! and breadth-first enumeration of small generated groups.
//!
//! Coordinates are ordered (a_1..a_g, b_1..b_g) and the form is
//! ⟨x, y⟩ = xᵀ J_g y with J_g = [[0, 1_g], [-1_g, 0]], so ⟨a_i, b_i⟩ = 1.

use std::collections::{HashSet, VecDeque};

use crate::arith::{is_prime, pow_mod, prime_power, reduce_i64};
use crate::error::{invalid, Error, Result};
use crate::matrix::{IntMatrix, ModMatrix};

/// The standard symplectic form J_g over Z/nZ.
pub fn j_form(g: usize, n: u64) -> ModMatrix {
    ModMatrix::from_int_matrix(&j_form_int(g), n)
}

pub fn j_form_int(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, 1);
        j.set(g + i, i, -1);
    }
    j
}

fn check_shape(rows: usize, cols: usize, g: usize) -> Result<()> {
    if rows != 2 * g || cols != 2 * g {
        return Err(Error::ShapeMismatch(format!(
            "expected a {0}x{0} matrix for genus {g}, got {rows}x{cols}",
            2 * g
        )));
    }
    Ok(())
}

/// Mᵀ J_g M = J_g over Z/nZ.
pub fn is_symplectic(m: &ModMatrix, g: usize) -> Result<bool> {
    check_shape(m.rows(), m.cols(), g)?;
    let j = j_form(g, m.modulus());
    Ok(m.transpose().mul(&j)?.mul(m)? == j)
}

/// Mᵀ J_g M = J_g over Z.
pub fn is_symplectic_int(m: &IntMatrix, g: usize) -> Result<bool> {
    check_shape(m.rows(), m.cols(), g)?;
    let j = j_form_int(g);
    Ok(m.transpose().mul(&j).mul(m) == j)
}

/// Theta group membership for an integer symplectic matrix (A B; C D):
/// the diagonals of AᵀC and BᵀD are even.
pub fn is_theta_group(m: &IntMatrix) -> Result<bool> {
    if !m.is_square() || m.rows() % 2 != 0 {
        return Err(Error::ShapeMismatch("theta group test needs a 2g x 2g matrix".into()));
    }
    let g = m.rows() / 2;
    if !is_symplectic_int(m, g)? {
        return Err(Error::NotSymplectic(m.to_string()));
    }
    let (a, b) = (m.block(0, 0, g, g), m.block(0, g, g, g));
    let (c, d) = (m.block(g, 0, g, g), m.block(g, g, g, g));
    let ac = a.transpose().mul(&c);
    let bd = b.transpose().mul(&d);
    Ok((0..g).all(|i| ac.get(i, i) % 2 == 0 && bd.get(i, i) % 2 == 0))
}

/// An element of Sp(2g, Z/nZ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpElement {
    genus: usize,
    matrix: ModMatrix,
}

impl SpElement {
    pub fn new(matrix: ModMatrix, genus: usize) -> Result<Self> {
        if !is_symplectic(&matrix, genus)? {
            return Err(Error::NotSymplectic(matrix.to_string()));
        }
        Ok(SpElement { genus, matrix })
    }

    pub fn from_int(matrix: &IntMatrix, genus: usize, n: u64) -> Result<Self> {
        Self::new(ModMatrix::from_int_matrix(matrix, n), genus)
    }

    pub fn identity(genus: usize, n: u64) -> Self {
        SpElement {
            genus,
            matrix: ModMatrix::identity(2 * genus, n),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u64 {
        self.matrix.modulus()
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.genus != rhs.genus {
            return Err(Error::ShapeMismatch("genus mismatch".into()));
        }
        Ok(SpElement {
            genus: self.genus,
            matrix: self.matrix.mul(&rhs.matrix)?,
        })
    }

    /// M⁻¹ = J⁻¹ Mᵀ J = -J Mᵀ J.
    pub fn inverse(&self) -> Self {
        let j = j_form(self.genus, self.modulus());
        let inv = j
            .mul(&self.matrix.transpose())
            .and_then(|x| x.mul(&j))
            .expect("shapes agree")
            .neg();
        SpElement {
            genus: self.genus,
            matrix: inv,
        }
    }

    /// Entrywise reduction to a modulus dividing the current one.
    pub fn reduce(&self, modulus: u64) -> Result<Self> {
        Ok(SpElement {
            genus: self.genus,
            matrix: self.matrix.reduce(modulus)?,
        })
    }
}

/// ⟨x, y⟩ = xᵀ J_g y mod n.
pub fn pairing(x: &[i64], y: &[i64], g: usize, n: u64) -> i64 {
    let mut s: i128 = 0;
    for i in 0..g {
        s += x[i] as i128 * y[g + i] as i128 - x[g + i] as i128 * y[i] as i128;
    }
    s.rem_euclid(n as i128) as i64
}

/// The transvection x ↦ x + ⟨x, v⟩ v, i.e. the matrix 1 + v (J v)ᵀ.
pub fn transvection(v: &[i64], g: usize, n: u64) -> Result<SpElement> {
    if v.len() != 2 * g {
        return Err(Error::ShapeMismatch(format!(
            "transvection vector of length {} for genus {g}",
            v.len()
        )));
    }
    // (J v)_i = v_{g+i} for i < g, -v_{i-g} otherwise.
    let jv: Vec<i64> = (0..2 * g).map(|i| if i < g { v[g + i] } else { -v[i - g] }).collect();
    let mut m = ModMatrix::identity(2 * g, n);
    for r in 0..2 * g {
        for c in 0..2 * g {
            let cur = m.get(r, c) as i64;
            let add = reduce_i64(v[r], n) as i128 * reduce_i64(jv[c], n) as i128;
            m.set(r, c, ((cur as i128 + add) % n as i128) as i64);
        }
    }
    SpElement::new(m, g)
}

/// Basis vector a_i (1-based) in the (a, b) coordinates.
pub fn basis_a(i: usize, g: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    v[i - 1] = 1;
    v
}

/// Basis vector b_i (1-based).
pub fn basis_b(i: usize, g: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    v[g + i - 1] = 1;
    v
}

/// The 2g+1 transvections along a_1..a_g, b_1-b_2, …, b_{g-1}-b_g, b_{g-1}, b_g
/// (along a_1 and b_1 when g = 1).
pub fn humphries_generators(g: usize, n: u64) -> Result<Vec<SpElement>> {
    if g == 0 {
        return invalid("genus must be at least 1");
    }
    let mut vectors: Vec<Vec<i64>> = (1..=g).map(|i| basis_a(i, g)).collect();
    if g == 1 {
        vectors.push(basis_b(1, g));
    } else {
        for j in 1..g {
            let diff: Vec<i64> = basis_b(j, g)
                .iter()
                .zip(basis_b(j + 1, g))
                .map(|(x, y)| x - y)
                .collect();
            vectors.push(diff);
        }
        vectors.push(basis_b(g - 1, g));
        vectors.push(basis_b(g, g));
    }
    vectors.iter().map(|v| transvection(v, g, n)).collect()
}

/// Outcome of a capped enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u64),
    /// More than `cap` elements were found.
    Overflow { cap: u64 },
}

pub const DEFAULT_BFS_CAP: u64 = 1_000_000;

/// Order of the group generated by `gens`, by breadth-first search over
/// right multiplication by generators.
pub fn group_order_bfs(gens: &[SpElement], cap: u64) -> Result<GroupOrder> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    let (g, n) = (first.genus, first.modulus());
    if gens.iter().any(|s| s.genus != g || s.modulus() != n) {
        return Err(Error::ShapeMismatch("generators of different shapes".into()));
    }
    let start = ModMatrix::identity(2 * g, n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(start.key());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.mul(&s.matrix)?;
            if seen.insert(y.key()) {
                if seen.len() as u64 > cap {
                    return Ok(GroupOrder::Overflow { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(GroupOrder::Exact(seen.len() as u64))
}

/// |Sp(2g, Z/p^e Z)| = p^{(e-1)·g(2g+1)} · p^{g²} · Π_{i=1..g} (p^{2i} - 1).
pub fn sp_order_formula(g: usize, n: u64) -> Option<u128> {
    let (p, e) = prime_power(n)?;
    let p = p as u128;
    let dim = (g * (2 * g + 1)) as u32;
    let mut order = p.checked_pow((e - 1) * dim)?.checked_mul(p.checked_pow((g * g) as u32)?)?;
    for i in 1..=g as u32 {
        order = order.checked_mul(p.checked_pow(2 * i)? - 1)?;
    }
    Some(order)
}

/// Lie condition Mᵀ J + J M ≡ 0 (mod p).
pub fn is_sp_lie(m: &ModMatrix, p: u64) -> Result<bool> {
    if !m.is_square() || m.rows() % 2 != 0 {
        return Err(Error::ShapeMismatch(format!(
            "sp Lie test needs an even square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let m = if m.modulus() == p { m.clone() } else { m.reduce(p)? };
    let j = j_form(m.rows() / 2, p);
    Ok(m.transpose().mul(&j)?.add(&j.mul(&m)?)?.is_zero())
}

/// Reduction Sp(2g, Z/p^{k+1}) → Sp(2g, Z/p^k).
pub fn reduce_mod(m: &SpElement, p: u64) -> Result<SpElement> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    match prime_power(m.modulus()) {
        Some((q, e)) if q == p && e >= 2 => m.reduce(pow_mod(p, (e - 1) as u64, u64::MAX)),
        _ => invalid(format!(
            "modulus {} is not p^(k+1) with p = {p}, k >= 1",
            m.modulus()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_examples() {
        for g in 1..=3 {
            assert!(is_symplectic(&ModMatrix::identity(2 * g, 7), g).unwrap());
            assert!(is_symplectic(&j_form(g, 7), g).unwrap());
        }
        let d = ModMatrix::parse("2,0;0,1", 4).unwrap();
        assert!(!is_symplectic(&d, 1).unwrap());
        assert!(is_symplectic(&d, 2).is_err());
    }

    #[test]
    fn theta_group_examples() {
        assert!(is_theta_group(&IntMatrix::parse("0,-1;1,0").unwrap()).unwrap());
        assert!(!is_theta_group(&IntMatrix::parse("1,1;0,1").unwrap()).unwrap());
        assert!(is_theta_group(&IntMatrix::parse("1,2;0,1").unwrap()).unwrap());
        assert!(is_theta_group(&IntMatrix::parse("2,0;0,1").unwrap()).is_err());
    }

    #[test]
    fn transvection_examples() {
        let t = transvection(&basis_a(1, 1), 1, 5).unwrap();
        assert_eq!(t.matrix().to_string(), "1,4;0,1");
        // image of b_1 is b_1 - a_1 (second column)
        assert_eq!((t.matrix().get(0, 1), t.matrix().get(1, 1)), (4, 1));
        assert_eq!((t.matrix().get(0, 0), t.matrix().get(1, 0)), (1, 0));
        assert_eq!(transvection(&[0, 0, 0, 0], 2, 3).unwrap(), SpElement::identity(2, 3));
        assert!(transvection(&[1, 0, 0], 2, 3).is_err());
    }

    #[test]
    fn humphries_orders() {
        let cases = [(1usize, 2u64, 6u64), (1, 3, 24), (2, 2, 720)];
        for (g, n, expected) in cases {
            let gens = humphries_generators(g, n).unwrap();
            assert_eq!(gens.len(), 2 * g + 1 - usize::from(g == 1));
            assert_eq!(group_order_bfs(&gens, DEFAULT_BFS_CAP).unwrap(), GroupOrder::Exact(expected));
            assert_eq!(sp_order_formula(g, n), Some(expected as u128));
        }
    }

    #[test]
    fn bfs_edge_cases() {
        let id = SpElement::identity(1, 5);
        assert_eq!(group_order_bfs(&[id], 10).unwrap(), GroupOrder::Exact(1));
        let gens = humphries_generators(1, 3).unwrap();
        assert_eq!(group_order_bfs(&gens, 10).unwrap(), GroupOrder::Overflow { cap: 10 });
        let mixed = vec![SpElement::identity(1, 2), SpElement::identity(1, 3)];
        assert!(group_order_bfs(&mixed, 10).is_err());
        assert!(group_order_bfs(&[], 10).is_err());
    }

    #[test]
    fn lie_examples() {
        assert!(is_sp_lie(&ModMatrix::zeros(4, 4, 3), 3).unwrap());
        // n_11 = e_11 ⊕ (-e_11) at g = 2
        let mut n11 = ModMatrix::zeros(4, 4, 3);
        n11.set(0, 0, 1);
        n11.set(2, 2, -1);
        assert!(is_sp_lie(&n11, 3).unwrap());
        // B = e_12 in the upper-right block is not symmetric
        let mut b = ModMatrix::zeros(4, 4, 3);
        b.set(0, 3, 1);
        assert!(!is_sp_lie(&b, 3).unwrap());
        assert!(is_sp_lie(&ModMatrix::zeros(3, 3, 3), 3).is_err());
    }

    #[test]
    fn reduce_mod_examples() {
        let id = SpElement::identity(2, 4);
        assert_eq!(reduce_mod(&id, 2).unwrap(), SpElement::identity(2, 2));
        let mut k = ModMatrix::identity(4, 4);
        k.set(0, 0, 3);
        k.set(2, 2, -1);
        let kernel = SpElement::new(k, 2).unwrap();
        assert!(reduce_mod(&kernel, 2).unwrap().matrix().is_identity());
        let t4 = transvection(&basis_a(1, 2), 2, 4).unwrap();
        let t2 = transvection(&basis_a(1, 2), 2, 2).unwrap();
        assert_eq!(reduce_mod(&t4, 2).unwrap(), t2);
        assert!(reduce_mod(&SpElement::identity(1, 6), 2).is_err());
        assert!(reduce_mod(&SpElement::identity(1, 2), 2).is_err());
    }

    #[test]
    fn inverse_is_inverse() {
        for s in humphries_generators(3, 8).unwrap() {
            assert!(s.mul(&s.inverse()).unwrap().matrix().is_identity());
        }
    }
}
