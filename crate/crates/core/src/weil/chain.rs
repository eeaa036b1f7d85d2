//! Genus-2 harness for the chain relation (D_a D_b D_c)^4 = D_e D_d.

use std::fmt;

use crate::arith::{gauss_sum_closed, CycScalar};
use crate::error::{invalid, Result};
use crate::matrix::IntMatrix;

use super::{rho_generator, GenLetter, ProjUnitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Twist {
    pub const ALL: [Twist; 6] = [Twist::A, Twist::B, Twist::C, Twist::D, Twist::E, Twist::F];
    /// The twists with distinct lifts (R_d = R_e).
    pub const LIFTED: [Twist; 5] = [Twist::A, Twist::B, Twist::C, Twist::E, Twist::F];

    pub fn name(self) -> char {
        match self {
            Twist::A => 'a',
            Twist::B => 'b',
            Twist::C => 'c',
            Twist::D => 'd',
            Twist::E => 'e',
            Twist::F => 'f',
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Action of the six twists on homology, in the basis (b, f, a, e).
pub fn homology_twist_matrices() -> Vec<(Twist, IntMatrix)> {
    let t = |rows: [[i64; 4]; 4]| {
        let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
        IntMatrix::from_rows(&r)
    };
    let t_a = t([[1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, 1, 0], [0, 0, 0, 1]]);
    let t_b = t([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    let t_c = t([[1, 0, 0, 0], [0, 1, 0, 0], [-1, 1, 1, 0], [1, -1, 0, 1]]);
    let t_e = t([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, 0, 1]]);
    let t_f = t([[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]);
    vec![
        (Twist::A, t_a),
        (Twist::B, t_b),
        (Twist::C, t_c),
        (Twist::D, t_e.clone()),
        (Twist::E, t_e),
        (Twist::F, t_f),
    ]
}

fn twist_matrix(x: Twist) -> IntMatrix {
    homology_twist_matrices()
        .into_iter()
        .find(|(t, _)| *t == x)
        .map(|(_, m)| m)
        .expect("every twist has a matrix")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    Commute,
    Braid,
    /// Neither relation holds on homology; nothing is checked.
    Free,
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairRelation::Commute => "commute",
            PairRelation::Braid => "braid",
            PairRelation::Free => "free",
        })
    }
}

/// Relations among pairs of lifted twists, read off the homology matrices.
pub fn braid_pairs() -> Vec<(Twist, Twist, PairRelation)> {
    let mut out = Vec::new();
    for (i, &x) in Twist::LIFTED.iter().enumerate() {
        for &y in &Twist::LIFTED[i + 1..] {
            let (tx, ty) = (twist_matrix(x), twist_matrix(y));
            let rel = if tx.mul(&ty) == ty.mul(&tx) {
                PairRelation::Commute
            } else if tx.mul(&ty).mul(&tx) == ty.mul(&tx).mul(&ty) {
                PairRelation::Braid
            } else {
                PairRelation::Free
            };
            out.push((x, y, rel));
        }
    }
    out
}

/// The lifts R_a, R_b, R_c, R_e = R_d, R_f at level k.
#[derive(Clone, Debug)]
pub struct ChainLifts {
    pub level: u64,
    pub ra: ProjUnitary,
    pub rb: ProjUnitary,
    pub rc: ProjUnitary,
    pub re: ProjUnitary,
    pub rf: ProjUnitary,
}

impl ChainLifts {
    pub fn get(&self, x: Twist) -> &ProjUnitary {
        match x {
            Twist::A => &self.ra,
            Twist::B => &self.rb,
            Twist::C => &self.rc,
            Twist::D | Twist::E => &self.re,
            Twist::F => &self.rf,
        }
    }
}

fn check_even(k: u64) -> Result<()> {
    if k < 2 || k % 2 == 1 {
        return invalid(format!("the chain harness needs an even level k >= 2, got {k}"));
    }
    Ok(())
}

fn diag_lift(l: [[i64; 2]; 2], k: u64) -> Result<ProjUnitary> {
    let b = IntMatrix::from_rows(&[&l[0], &l[1]]);
    rho_generator(&GenLetter::Upper(b), 2, k)
}

/// R_a = diag(q^{x_1²}), R_c = diag(q^{(x_1+x_2)²}), R_e = diag(q^{x_2²}),
/// R_b = S³R_aS and R_f = S³R_eS.
pub fn chain_lift_matrices(k: u64) -> Result<ChainLifts> {
    check_even(k)?;
    let ra = diag_lift([[1, 0], [0, 0]], k)?;
    let rc = diag_lift([[1, 1], [1, 1]], k)?;
    let re = diag_lift([[0, 0], [0, 1]], k)?;
    let s = rho_generator(&GenLetter::S, 2, k)?;
    let s3 = s.pow(3)?;
    let rb = s3.mul(&ra)?.mul(&s)?;
    let rf = s3.mul(&re)?.mul(&s)?;
    Ok(ChainLifts {
        level: k,
        ra,
        rb,
        rc,
        re,
        rf,
    })
}

/// Outcome of one pair check among the lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidCheck {
    pub x: Twist,
    pub y: Twist,
    pub relation: PairRelation,
    pub holds: bool,
}

/// Checks every commuting pair for commutation and every braiding pair for
/// the braid relation, exactly.
pub fn braid_lift_checks(k: u64) -> Result<Vec<BraidCheck>> {
    let lifts = chain_lift_matrices(k)?;
    let mut out = Vec::new();
    for (x, y, relation) in braid_pairs() {
        let (rx, ry) = (lifts.get(x), lifts.get(y));
        let holds = match relation {
            PairRelation::Commute => rx.mul(ry)?.exact_eq(&ry.mul(rx)?)?,
            PairRelation::Braid => rx.mul(ry)?.mul(rx)?.exact_eq(&ry.mul(rx)?.mul(ry)?)?,
            PairRelation::Free => continue,
        };
        out.push(BraidCheck {
            x,
            y,
            relation,
            holds,
        });
    }
    Ok(out)
}

pub fn check_braid_lifts(k: u64) -> Result<bool> {
    Ok(braid_lift_checks(k)?.iter().all(|c| c.holds))
}

/// The scalar μ with (R_aR_bR_c)^4 = μ·R_eR_d.
pub fn chain_defect(k: u64) -> Result<CycScalar> {
    let l = chain_lift_matrices(k)?;
    let x = l.ra.mul(&l.rb)?.mul(&l.rc)?;
    let x2 = x.mul(&x)?;
    let x4 = x2.mul(&x2)?;
    x4.ratio_to(&l.re.mul(&l.re)?)
}

/// k^{-2}·(G(1, 2k)/2)^4.
pub fn chain_defect_expected(k: u64) -> Result<CycScalar> {
    check_even(k)?;
    let omega = &gauss_sum_closed(1, 2 * k)? * &CycScalar::from_ratio(1, 2, 1);
    Ok(&omega.pow(4) * &CycScalar::from_ratio(1, (k * k) as i64, 1))
}
