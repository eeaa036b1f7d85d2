//! The adjoint module sp_2g(p) of Sp(2g, F_p), its exterior square, and
//! coinvariant computations.
//!
//! The coinvariants of a module M under a group generated by σ_1..σ_r are
//! M / span{σ_i·v - v}: the identity (gh)·v - v = g·(h·v) - h·v + (h·v - v)
//! shows that differences along generators already span all differences.

use std::fmt;

use crate::arith::{is_prime, primitive_root};
use crate::error::{invalid, Error, Result};
use crate::linalg::Span;
use crate::matrix::ModMatrix;
use crate::symplectic::{humphries_generators, is_sp_lie, SpElement};

/// Basis elements of sp_2g(p) (indices are 0-based, displayed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// Upper-right block e_ij + e_ji (e_ii on the diagonal), i ≤ j.
    U(usize, usize),
    /// Lower-left block e_ij + e_ji (e_ii on the diagonal), i ≤ j.
    L(usize, usize),
    /// (e_ij, 0; 0, -e_ji), i ≠ j.
    R(usize, usize),
    /// (e_ii, 0; 0, -e_ii).
    N(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::U(i, j) => write!(f, "u{}{}", i + 1, j + 1),
            BasisLabel::L(i, j) => write!(f, "l{}{}", i + 1, j + 1),
            BasisLabel::R(i, j) => write!(f, "r{}{}", i + 1, j + 1),
            BasisLabel::N(i) => write!(f, "n{}{}", i + 1, i + 1),
        }
    }
}

/// Ordered basis: u-block, l-block, then the matrix block, each in
/// lexicographic order of (i, j).
#[derive(Clone, Debug)]
pub struct SpBasis {
    genus: usize,
    prime: u64,
    labels: Vec<BasisLabel>,
}

impl SpBasis {
    pub fn new(genus: usize, prime: u64) -> Result<Self> {
        if genus == 0 {
            return invalid("genus must be at least 1");
        }
        if !is_prime(prime) {
            return invalid(format!("{prime} is not prime"));
        }
        let g = genus;
        let mut labels = Vec::with_capacity(g * (2 * g + 1));
        for i in 0..g {
            for j in i..g {
                labels.push(BasisLabel::U(i, j));
            }
        }
        for i in 0..g {
            for j in i..g {
                labels.push(BasisLabel::L(i, j));
            }
        }
        for i in 0..g {
            for j in 0..g {
                labels.push(if i == j { BasisLabel::N(i) } else { BasisLabel::R(i, j) });
            }
        }
        Ok(SpBasis {
            genus,
            prime,
            labels,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        let g = self.genus;
        let sym = |i: usize, j: usize| i * g - i * (i + 1) / 2 + j;
        let half = g * (g + 1) / 2;
        match label {
            BasisLabel::U(i, j) if i <= j && j < g => Some(sym(i, j)),
            BasisLabel::L(i, j) if i <= j && j < g => Some(half + sym(i, j)),
            BasisLabel::R(i, j) if i != j && i < g && j < g => Some(2 * half + i * g + j),
            BasisLabel::N(i) if i < g => Some(2 * half + i * g + i),
            _ => None,
        }
    }

    fn index(&self, label: BasisLabel) -> usize {
        self.index_of(label).unwrap_or_else(|| panic!("label {label} outside genus {}", self.genus))
    }

    /// The 2g × 2g matrix of a basis element over F_p.
    pub fn matrix(&self, label: BasisLabel) -> ModMatrix {
        let g = self.genus;
        let mut m = ModMatrix::zeros(2 * g, 2 * g, self.prime);
        match label {
            BasisLabel::U(i, j) => {
                m.set(i, g + j, 1);
                m.set(j, g + i, 1);
            }
            BasisLabel::L(i, j) => {
                m.set(g + i, j, 1);
                m.set(g + j, i, 1);
            }
            BasisLabel::R(i, j) => {
                m.set(i, j, 1);
                m.set(g + j, g + i, -1);
            }
            BasisLabel::N(i) => {
                m.set(i, i, 1);
                m.set(g + i, g + i, -1);
            }
        }
        m
    }

    /// Coordinates of an element of sp_2g(p): u_ij ↔ B_ij, l_ij ↔ C_ij,
    /// r_ij and n_ii ↔ A_ij.
    pub fn coordinates(&self, m: &ModMatrix) -> Result<Vec<u64>> {
        let g = self.genus;
        if m.rows() != 2 * g || m.cols() != 2 * g {
            return Err(Error::ShapeMismatch(format!("expected {0}x{0}", 2 * g)));
        }
        let m = if m.modulus() == self.prime { m.clone() } else { m.reduce(self.prime)? };
        if !is_sp_lie(&m, self.prime)? {
            return invalid(format!("matrix is not in sp_{}({}): {m}", 2 * g, self.prime));
        }
        Ok(self
            .labels
            .iter()
            .map(|&l| match l {
                BasisLabel::U(i, j) => m.get(i, g + j),
                BasisLabel::L(i, j) => m.get(g + i, j),
                BasisLabel::R(i, j) => m.get(i, j),
                BasisLabel::N(i) => m.get(i, i),
            })
            .collect())
    }

    /// The element Σ c_i b_i as a matrix.
    pub fn element(&self, coords: &[u64]) -> ModMatrix {
        let g = self.genus;
        let mut m = ModMatrix::zeros(2 * g, 2 * g, self.prime);
        for (c, &l) in coords.iter().zip(&self.labels) {
            if *c % self.prime != 0 {
                m = m.add(&self.matrix(l).scale(*c as i64)).expect("same shape");
            }
        }
        m
    }

    /// Dimension of ∧² of the module.
    pub fn wedge_len(&self) -> usize {
        let n = self.len();
        n * (n - 1) / 2
    }

    /// Index of b_i ∧ b_j for i < j.
    pub fn wedge_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        let n = self.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Coordinates of x ∧ y in the basis {b_i ∧ b_j : i < j}.
    pub fn wedge(&self, x: BasisLabel, y: BasisLabel) -> Vec<u64> {
        let mut v = vec![0u64; self.wedge_len()];
        let (i, j) = (self.index(x), self.index(y));
        if i < j {
            v[self.wedge_index(i, j)] = 1;
        } else if i > j {
            v[self.wedge_index(j, i)] = self.prime - 1;
        }
        v
    }
}

/// σ·A = σAσ^{-1} over F_p.
pub fn conj_action(sigma: &SpElement, a: &ModMatrix) -> Result<ModMatrix> {
    if sigma.modulus() != a.modulus() {
        return Err(Error::ModulusMismatch {
            left: sigma.modulus(),
            right: a.modulus(),
        });
    }
    sigma.matrix().mul(a)?.mul(sigma.inverse().matrix())
}

/// Matrix of the conjugation action in the basis (column i = σ·b_i).
pub fn action_matrix(sigma: &SpElement, basis: &SpBasis) -> Result<ModMatrix> {
    let n = basis.len();
    let sigma = reduce_to(sigma, basis.prime())?;
    let mut out = ModMatrix::zeros(n, n, basis.prime());
    for (c, &l) in basis.labels().iter().enumerate() {
        let image = basis.coordinates(&conj_action(&sigma, &basis.matrix(l))?)?;
        for (r, v) in image.into_iter().enumerate() {
            out.set(r, c, v as i64);
        }
    }
    Ok(out)
}

fn reduce_to(sigma: &SpElement, p: u64) -> Result<SpElement> {
    if sigma.modulus() == p {
        Ok(sigma.clone())
    } else {
        sigma.reduce(p)
    }
}

/// Sparse columns of the action: for each basis index, (row, value) pairs.
fn sparse_action(sigma: &SpElement, basis: &SpBasis) -> Result<Vec<Vec<(usize, u64)>>> {
    let a = action_matrix(sigma, basis)?;
    let n = basis.len();
    Ok((0..n)
        .map(|c| (0..n).filter_map(|r| Some((r, a.get(r, c))).filter(|x| x.1 != 0)).collect())
        .collect())
}

/// Image of b_i ∧ b_j under σ, given the sparse action columns.
fn wedge_image(
    cols: &[Vec<(usize, u64)>],
    basis: &SpBasis,
    i: usize,
    j: usize,
    out: &mut [u64],
) {
    let p = basis.prime();
    for &(k, a) in &cols[i] {
        for &(l, b) in &cols[j] {
            if k == l {
                continue;
            }
            let coef = a * b % p;
            let (idx, c) = if k < l {
                (basis.wedge_index(k, l), coef)
            } else {
                (basis.wedge_index(l, k), (p - coef) % p)
            };
            out[idx] = (out[idx] + c) % p;
        }
    }
}

/// The induced map on ∧² (column (i, j) = σb_i ∧ σb_j).
pub fn wedge_action_matrix(sigma: &SpElement, basis: &SpBasis) -> Result<ModMatrix> {
    let cols = sparse_action(sigma, basis)?;
    let w = basis.wedge_len();
    let n = basis.len();
    let mut out = ModMatrix::zeros(w, w, basis.prime());
    let mut col = vec![0u64; w];
    for i in 0..n {
        for j in i + 1..n {
            col.iter_mut().for_each(|x| *x = 0);
            wedge_image(&cols, basis, i, j, &mut col);
            let c = basis.wedge_index(i, j);
            for (r, &v) in col.iter().enumerate() {
                if v != 0 {
                    out.set(r, c, v as i64);
                }
            }
        }
    }
    Ok(out)
}

/// The span of σ·v - v over a generating set, in degree 1 (the module
/// itself) or degree 2 (its exterior square).
#[derive(Clone, Debug)]
pub struct RelationSpace {
    basis: SpBasis,
    degree: u8,
    span: Span,
}

impl RelationSpace {
    pub fn new(basis: SpBasis, degree: u8, generators: &[SpElement]) -> Result<Self> {
        let p = basis.prime();
        let len = match degree {
            1 => basis.len(),
            2 => basis.wedge_len(),
            _ => return invalid(format!("degree must be 1 or 2, got {degree}")),
        };
        let mut span = Span::new(p, len)?;
        let mut v = vec![0u64; len];
        for sigma in generators {
            if span.is_full() {
                break;
            }
            let cols = sparse_action(sigma, &basis)?;
            let n = basis.len();
            if degree == 1 {
                for (c, col) in cols.iter().enumerate() {
                    v.iter_mut().for_each(|x| *x = 0);
                    for &(r, a) in col {
                        v[r] = a;
                    }
                    v[c] = (v[c] + p - 1) % p;
                    span.insert(&v);
                }
            } else {
                for i in 0..n {
                    for j in i + 1..n {
                        v.iter_mut().for_each(|x| *x = 0);
                        wedge_image(&cols, &basis, i, j, &mut v);
                        let c = basis.wedge_index(i, j);
                        v[c] = (v[c] + p - 1) % p;
                        span.insert(&v);
                        if span.is_full() {
                            break;
                        }
                    }
                }
            }
        }
        Ok(RelationSpace { basis, degree, span })
    }

    pub fn basis(&self) -> &SpBasis {
        &self.basis
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Dimension of the coinvariant quotient.
    pub fn quotient_dim(&self) -> usize {
        self.span.dim() - self.span.rank()
    }

    /// True when the vector is zero in the coinvariants.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.span.contains(v)
    }
}

/// dim over F_p of the Sp(2g, F_p)-coinvariants of sp_2g(p) (degree 1) or
/// ∧² sp_2g(p) (degree 2), using the Humphries generators.
pub fn coinvariant_dim(g: usize, p: u64, degree: u8) -> Result<usize> {
    let basis = SpBasis::new(g, p)?;
    let gens = humphries_generators(g, p)?;
    Ok(RelationSpace::new(basis, degree, &gens)?.quotient_dim())
}

/// Whether n_11 ∧ n_22 survives in the degree-2 coinvariants over F_2.
///
/// It does not for any g >= 2: the trace form tr(XY) is invariant and
/// alternating on sp_2g(2), vanishes on the M-block, and is 1 on u_ii ∧ l_ii,
/// which spans the quotient.
pub fn class_n11n22_nonzero(g: usize) -> Result<bool> {
    if g < 2 {
        return invalid("n11 ^ n22 needs g >= 2");
    }
    let basis = SpBasis::new(g, 2)?;
    let v = basis.wedge(BasisLabel::N(0), BasisLabel::N(1));
    let rel = RelationSpace::new(basis, 2, &humphries_generators(g, 2)?)?;
    Ok(!rel.contains(&v))
}

fn e(g: usize, i: usize, j: usize, p: u64) -> ModMatrix {
    let mut m = ModMatrix::zeros(g, g, p);
    m.set(i, j, 1);
    m
}

fn block_element(a: &ModMatrix, b: &ModMatrix, c: &ModMatrix, d: &ModMatrix, g: usize) -> SpElement {
    let m = ModMatrix::from_blocks(a, b, c, d).expect("square blocks");
    SpElement::new(m, g).expect("auxiliary elements are symplectic")
}

/// τ^u_ij = (1, e_ii + e_jj; 0, 1).
pub fn tau_u(g: usize, p: u64, i: usize, j: usize) -> SpElement {
    let one = ModMatrix::identity(g, p);
    let s = e(g, i, i, p).add(&e(g, j, j, p)).expect("same shape");
    block_element(&one, &s, &ModMatrix::zeros(g, g, p), &one, g)
}

/// τ^l_ij = (1, 0; e_ii + e_jj, 1).
pub fn tau_l(g: usize, p: u64, i: usize, j: usize) -> SpElement {
    let one = ModMatrix::identity(g, p);
    let s = e(g, i, i, p).add(&e(g, j, j, p)).expect("same shape");
    block_element(&one, &ModMatrix::zeros(g, g, p), &s, &one, g)
}

/// τ^l_i = (1, 0; e_ii, 1).
pub fn tau_l_single(g: usize, p: u64, i: usize) -> SpElement {
    let one = ModMatrix::identity(g, p);
    block_element(&one, &ModMatrix::zeros(g, g, p), &e(g, i, i, p), &one, g)
}

/// A_ij = (1 - e_ji, 0; 0, 1 + e_ij).
pub fn a_map(g: usize, p: u64, i: usize, j: usize) -> SpElement {
    let one = ModMatrix::identity(g, p);
    let z = ModMatrix::zeros(g, g, p);
    block_element(
        &one.sub(&e(g, j, i, p)).expect("same shape"),
        &z,
        &z,
        &one.add(&e(g, i, j, p)).expect("same shape"),
        g,
    )
}

/// E_ij: a_i ↦ -b_i, b_i ↦ a_i, a_j ↦ -b_j, b_j ↦ a_j, other basis vectors fixed.
pub fn exchange(g: usize, p: u64, i: usize, j: usize) -> SpElement {
    let mut m = ModMatrix::identity(2 * g, p);
    for t in [i, j] {
        m.set(t, t, 0);
        m.set(g + t, g + t, 0);
        // column a_t = -b_t, column b_t = a_t
        m.set(g + t, t, -1);
        m.set(t, g + t, 1);
    }
    SpElement::new(m, g).expect("exchange map is symplectic")
}

/// τ^u_ij, τ^l_ij, A_ij and E_ij for all i ≠ j.
pub fn auxiliary_elements(g: usize, p: u64) -> Vec<SpElement> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in 0..g {
            if i != j {
                out.push(tau_u(g, p, i, j));
                out.push(tau_l(g, p, i, j));
                out.push(a_map(g, p, i, j));
                out.push(exchange(g, p, i, j));
            }
        }
    }
    out
}

/// Generators of GL(n, F_p): 1 + e_ij for i ≠ j and diag(ω, 1, …, 1) with ω
/// a primitive root.
pub fn gl_generators(n: usize, p: u64) -> Result<Vec<ModMatrix>> {
    let omega = primitive_root(p).ok_or_else(|| Error::InvalidArgument(format!("{p} is not prime")))?;
    let one = ModMatrix::identity(n, p);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(one.add(&e(n, i, j, p))?);
            }
        }
    }
    let mut d = one.clone();
    d.set(0, 0, omega as i64);
    out.push(d);
    Ok(out)
}

/// Matrix of X ↦ xXx^{-1} on vec(X) (index i·n + j).
fn conjugation_matrix(x: &ModMatrix) -> Result<ModMatrix> {
    let n = x.rows();
    let p = x.modulus();
    let xi = x.inverse_mod_prime()?;
    let mut out = ModMatrix::zeros(n * n, n * n, p);
    for s in 0..n {
        for t in 0..n {
            let img = x.mul(&e(n, s, t, p))?.mul(&xi)?;
            for i in 0..n {
                for j in 0..n {
                    out.set(i * n + j, s * n + t, img.get(i, j) as i64);
                }
            }
        }
    }
    Ok(out)
}

/// Dimensions of the spaces of conjugation-invariant bilinear forms on
/// M_n(F_p): (all forms, alternating forms).
pub fn invariant_bilinear_dim(n: usize, p: u64) -> Result<(usize, usize)> {
    if n < 2 {
        return invalid("invariant bilinear forms need n >= 2");
    }
    let m = n * n;
    let unknowns = m * m;
    let mut span = Span::new(p, unknowns)?;
    let var = |a: usize, b: usize| a * m + b;
    // B(X, Y) = vec(X)ᵀ G vec(Y); invariance under C is Cᵀ G C = G, i.e.
    // G C - C^{-T} G = 0.
    for x in gl_generators(n, p)? {
        let c = conjugation_matrix(&x)?;
        let c_inv_t = c.inverse_mod_prime()?.transpose();
        for a in 0..m {
            for b in 0..m {
                let mut row = vec![0u64; unknowns];
                for k in 0..m {
                    let v = var(a, k);
                    row[v] = (row[v] + c.get(k, b)) % p;
                    let w = var(k, b);
                    row[w] = (row[w] + p - c_inv_t.get(a, k)) % p;
                }
                span.insert(&row);
            }
        }
    }
    let total = unknowns - span.rank();
    for a in 0..m {
        let mut row = vec![0u64; unknowns];
        row[var(a, a)] = 1;
        span.insert(&row);
        for b in a + 1..m {
            let mut row = vec![0u64; unknowns];
            row[var(a, b)] = 1;
            row[var(b, a)] = 1;
            span.insert(&row);
        }
    }
    Ok((total, unknowns - span.rank()))
}

/// Checks that diag(x, x^{-T}) acts on the three blocks of sp_2g(p) by
/// A ↦ xAx^{-1}, B ↦ xBxᵀ and C ↦ x^{-T}Cx^{-1}, for x in a generating set
/// of GL(g, F_p).
pub fn gl_block_decomposition_check(g: usize, p: u64) -> Result<bool> {
    let basis = SpBasis::new(g, p)?;
    let gens = if g == 1 {
        let omega = primitive_root(p).ok_or_else(|| Error::InvalidArgument(format!("{p} is not prime")))?;
        vec![ModMatrix::from_ints(1, 1, &[omega as i64], p)?]
    } else {
        gl_generators(g, p)?
    };
    let z = ModMatrix::zeros(g, g, p);
    for x in gens {
        let xi = x.inverse_mod_prime()?;
        let xit = xi.transpose();
        let sigma = SpElement::new(ModMatrix::from_blocks(&x, &z, &z, &xit)?, g)?;
        for &l in basis.labels() {
            let m = basis.matrix(l);
            let img = conj_action(&sigma, &m)?;
            let (a, b, c) = (m.block(0, 0, g, g), m.block(0, g, g, g), m.block(g, 0, g, g));
            let expected = match l {
                BasisLabel::R(..) | BasisLabel::N(_) => {
                    let a2 = x.mul(&a)?.mul(&xi)?;
                    ModMatrix::from_blocks(&a2, &z, &z, &a2.transpose().neg())?
                }
                BasisLabel::U(..) => ModMatrix::from_blocks(&z, &x.mul(&b)?.mul(&x.transpose())?, &z, &z)?,
                BasisLabel::L(..) => ModMatrix::from_blocks(&z, &z, &xit.mul(&c)?.mul(&xi)?, &z)?,
            };
            if img != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
