use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{random_word, rewrite_product};
use super::*;
use crate::arith::{gauss_sum_closed, root_order, sqrt_positive, CycScalar};
use crate::matrix::IntMatrix;
use crate::symplectic::{is_symplectic_int, j_form_int};

fn m(text: &str) -> IntMatrix {
    IntMatrix::parse(text).unwrap()
}

fn in_r8(x: &CycScalar) -> bool {
    root_order(x).map(|o| 8 % o == 0).unwrap_or(false)
}

#[test]
fn index_order_is_lexicographic() {
    assert_eq!(index_points(2, 3)[1], vec![0, 1]);
    assert_eq!(index_points(2, 3)[3], vec![1, 0]);
    for (i, p) in index_points(3, 4).iter().enumerate() {
        assert_eq!(point_index(p, 4), i);
    }
}

#[test]
fn generator_examples() {
    for g in 1..=2 {
        for k in 2..=4 {
            let id = ProjUnitary::identity(g, k);
            let zero = IntMatrix::zeros(g, g);
            let u0 = rho_generator(&GenLetter::Upper(zero), g, k).unwrap();
            let gl1 = rho_generator(&GenLetter::Gl(IntMatrix::identity(g)), g, k).unwrap();
            assert!(u0.exact_eq(&id).unwrap());
            assert!(gl1.exact_eq(&id).unwrap());
        }
    }
    let s = rho_generator(&GenLetter::S, 1, 2).unwrap();
    let h = sqrt_positive(2).inverse().unwrap();
    assert_eq!(s.entry(0, 0), h);
    assert_eq!(s.entry(0, 1), h);
    assert_eq!(s.entry(1, 0), h);
    assert_eq!(s.entry(1, 1), -&h);
}

#[test]
fn generator_validation() {
    assert!(rho_generator(&GenLetter::Upper(m("0,1;0,0")), 2, 2).is_err());
    assert!(rho_generator(&GenLetter::Gl(m("2,0;0,1")), 2, 2).is_err());
    assert!(rho_generator(&GenLetter::S, 2, 1).is_err());
    assert!(rho_generator(&GenLetter::Gl(m("1")), 2, 2).is_err());
}

#[test]
fn word_round_trip() {
    let w: GenWord = "S U[1,0;0,2] G[0,1;1,0] S".parse().unwrap();
    assert_eq!(w.len(), 4);
    assert_eq!(w.to_string().parse::<GenWord>().unwrap(), w);
    assert!("".parse::<GenWord>().unwrap().is_empty());
    assert!("X".parse::<GenWord>().is_err());
}

#[test]
fn rho_word_examples() {
    let id = ProjUnitary::identity(1, 2);
    assert!(rho_word(&GenWord::empty(), 1, 2).unwrap().exact_eq(&id).unwrap());
    let ss: GenWord = "S S".parse().unwrap();
    assert!(rho_word(&ss, 1, 2).unwrap().exact_eq(&id).unwrap());
    // S² is the permutation m ↦ -m, up to R_8
    for (g, k) in [(1, 3), (1, 4), (2, 2), (2, 3), (2, 5), (3, 3)] {
        let s2 = rho_word(&ss, g, k).unwrap();
        let neg = rho_generator(&GenLetter::Gl(IntMatrix::identity(g).neg()), g, k).unwrap();
        let c = s2.ratio_to(&neg).unwrap();
        assert!(in_r8(&c), "(g, k) = ({g}, {k}): ratio {c}");
    }
}

#[test]
fn odd_level_requires_theta_letters() {
    let bad: GenWord = "U[1]".parse().unwrap();
    assert!(matches!(rho_word(&bad, 1, 3), Err(crate::Error::NotThetaGroup(_))));
    let ok: GenWord = "U[2] S G[-1]".parse().unwrap();
    assert!(rho_word(&ok, 1, 3).is_ok());
    assert!(rho_word(&bad, 1, 4).is_ok());
}

#[test]
fn generators_are_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in [2u64, 4, 6] {
        let mut letters = vec![GenLetter::S];
        for _ in 0..6 {
            letters.push(random::random_letter(&mut rng, 2));
        }
        for l in &letters {
            let r = rho_generator(l, 2, k).unwrap();
            assert!(r.is_unitary().unwrap(), "k = {k}, letter {l}");
        }
    }
}

#[test]
fn gl_and_upper_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [2u64, 3, 4, 6] {
        for _ in 0..10 {
            let (w1, w2) = (random_word(&mut rng, 2, 1), random_word(&mut rng, 2, 1));
            match (&w1.letters()[0], &w2.letters()[0]) {
                (GenLetter::Gl(a), GenLetter::Gl(b)) => {
                    let lhs = rho_generator(&GenLetter::Gl(a.clone()), 2, k)
                        .unwrap()
                        .mul(&rho_generator(&GenLetter::Gl(b.clone()), 2, k).unwrap())
                        .unwrap();
                    let rhs = rho_generator(&GenLetter::Gl(a.mul(b)), 2, k).unwrap();
                    assert!(lhs.exact_eq(&rhs).unwrap());
                }
                (GenLetter::Upper(a), GenLetter::Upper(b)) if k % 2 == 0 => {
                    let lhs = rho_generator(&GenLetter::Upper(a.clone()), 2, k)
                        .unwrap()
                        .mul(&rho_generator(&GenLetter::Upper(b.clone()), 2, k).unwrap())
                        .unwrap();
                    let rhs = rho_generator(&GenLetter::Upper(a.add(b)), 2, k).unwrap();
                    assert!(lhs.exact_eq(&rhs).unwrap());
                }
                _ => {}
            }
        }
    }
    let a = m("1,1;0,1");
    let b = m("0,1;1,0");
    let lhs = rho_generator(&GenLetter::Gl(a.clone()), 2, 5)
        .unwrap()
        .mul(&rho_generator(&GenLetter::Gl(b.clone()), 2, 5).unwrap())
        .unwrap();
    assert!(lhs.exact_eq(&rho_generator(&GenLetter::Gl(a.mul(&b)), 2, 5).unwrap()).unwrap());
}

#[test]
fn s_fourth_power_is_r8_scalar() {
    let cases: Vec<(usize, u64)> = (2..=16)
        .map(|k| (1, k))
        .chain((2..=16).map(|k| (2, k)))
        .chain((2..=6).map(|k| (3, k)))
        .chain((2..=4).map(|k| (4, k)))
        .collect();
    for (g, k) in cases {
        assert!(k.pow(g as u32) <= 256);
        let s = rho_generator(&GenLetter::S, g, k).unwrap();
        let s2 = s.mul(&s).unwrap();
        let c = s2.mul(&s2).unwrap().scalar_value().unwrap().expect("S^4 is scalar");
        assert!(in_r8(&c), "(g, k) = ({g}, {k}): {c}");
    }
}

#[test]
fn s_squared_trace_values() {
    assert_eq!(s_squared_trace(2, 2).unwrap(), 4);
    assert_eq!(s_squared_trace(3, 3).unwrap(), 1);
    assert_eq!(s_squared_trace(1, 4).unwrap(), 2);
    for g in 1..=4usize {
        for k in 2..=9u64 {
            let expected = if k % 2 == 0 { 1u64 << g } else { 1 };
            assert_eq!(s_squared_trace(g, k).unwrap(), expected);
        }
    }
    // Against the trace of the exact matrix ρ(S)² for small cases.
    for (g, k) in [(1usize, 2u64), (1, 5), (2, 2), (2, 3), (2, 4)] {
        let s2 = rho_word(&"S S".parse().unwrap(), g, k).unwrap();
        let t = s2.trace();
        assert_eq!(t, CycScalar::from_int(s_squared_trace(g, k).unwrap() as i64, 1));
    }
}

#[test]
fn cocycle_examples() {
    let e = GenWord::empty();
    assert!(cocycle_defect(&e, &e, &e, 2, 2).unwrap().is_one());
    let s: GenWord = "S".parse().unwrap();
    let neg: GenWord = "G[-1,0;0,-1]".parse().unwrap();
    let eta = cocycle_defect(&s, &s, &neg, 2, 2).unwrap();
    assert!(eta.pow(8).is_one());
    assert!(cocycle_defect(&s, &s, &e, 2, 2).is_err());
}

#[test]
fn cocycle_values_are_eighth_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in [2u64, 4] {
        for _ in 0..50 {
            let l1 = 1 + (rand::Rng::gen_range(&mut rng, 0..4));
            let l2 = 1 + (rand::Rng::gen_range(&mut rng, 0..4));
            let w1 = random_word(&mut rng, 2, l1);
            let w2 = random_word(&mut rng, 2, l2);
            let w12 = rewrite_product(&mut rng, &w1, &w2, 2, 6);
            let eta = cocycle_defect(&w1, &w2, &w12, 2, k)
                .unwrap_or_else(|e| panic!("{w1} | {w2} | {w12}: {e}"));
            assert!(eta.pow(8).is_one(), "eta = {eta} for {w1} | {w2} | {w12}");
        }
    }
}

#[test]
fn cocycle_odd_genus_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (g, k) in [(1usize, 2u64), (1, 4), (1, 6), (3, 2)] {
        for _ in 0..10 {
            let w1 = random_word(&mut rng, g, 3);
            let w2 = random_word(&mut rng, g, 3);
            let w12 = rewrite_product(&mut rng, &w1, &w2, g, 4);
            let eta = cocycle_defect(&w1, &w2, &w12, g, k).unwrap();
            assert!(in_r8(&eta), "(g, k) = ({g}, {k}), eta = {eta}");
        }
    }
}

#[test]
fn homology_matrices() {
    let t = homology_twist_matrices();
    let get = |x: Twist| t.iter().find(|(y, _)| *y == x).unwrap().1.clone();
    for (_, mat) in &t {
        assert!(is_symplectic_int(mat, 2).unwrap());
    }
    assert_eq!(get(Twist::D), get(Twist::E));
    let (ta, tb, tc) = (get(Twist::A), get(Twist::B), get(Twist::C));
    assert_eq!(ta.mul(&tb).mul(&ta), tb.mul(&ta).mul(&tb));
    let j = j_form_int(2);
    let j_inv = j.neg();
    assert_eq!(tb, j_inv.mul(&ta).mul(&j));
    let chain = ta.mul(&tb).mul(&tc).pow(4);
    assert_eq!(chain, get(Twist::E).mul(&get(Twist::D)));
}

#[test]
fn braid_pair_derivation() {
    let pairs = braid_pairs();
    assert_eq!(pairs.len(), 10);
    let rel = |x: Twist, y: Twist| pairs.iter().find(|p| p.0 == x && p.1 == y).unwrap().2;
    assert_eq!(rel(Twist::A, Twist::B), PairRelation::Braid);
    assert_eq!(rel(Twist::B, Twist::C), PairRelation::Braid);
    assert_eq!(rel(Twist::A, Twist::C), PairRelation::Commute);
    assert!(pairs.iter().all(|p| p.2 != PairRelation::Free));
}

#[test]
fn chain_lift_examples() {
    let l = chain_lift_matrices(2).unwrap();
    let expected = [0i64, 0, 1, 1];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(l.ra.entry(i, i), CycScalar::root(4, *e));
    }
    assert!(chain_lift_matrices(3).is_err());
    // (R_b)_{m,n} = k^{-1} ω q^{-(n_1-m_1)²} δ_{m_2,n_2}, ω = G(1, 2k)/2
    for k in [2u64, 4, 6] {
        let l = chain_lift_matrices(k).unwrap();
        let omega = &gauss_sum_closed(1, 2 * k).unwrap() * &CycScalar::from_ratio(1, 2, 1);
        let pts = index_points(2, k);
        for (i, p) in pts.iter().enumerate() {
            for (j, n) in pts.iter().enumerate() {
                let expected = if p[1] == n[1] {
                    let d = n[0] - p[0];
                    &(&omega * &CycScalar::root(2 * k, -d * d)) * &CycScalar::from_ratio(1, k as i64, 1)
                } else {
                    CycScalar::zero(1)
                };
                assert_eq!(l.rb.entry(i, j), expected, "k = {k}, ({i}, {j})");
            }
        }
    }
}

#[test]
fn braid_lifts_hold() {
    for k in [2u64, 4, 6] {
        let checks = braid_lift_checks(k).unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.holds, "k = {k}: {} {} {}", c.x, c.y, c.relation);
        }
        assert!(check_braid_lifts(k).unwrap());
    }
}

#[test]
fn chain_defect_is_minus_one() {
    for k in [2u64, 4, 6, 8] {
        let mu = chain_defect(k).unwrap();
        assert_eq!(mu, CycScalar::from_int(-1, 1), "k = {k}");
        assert_eq!(mu, chain_defect_expected(k).unwrap());
    }
    assert!(chain_defect(5).is_err());
}

#[test]
fn multiplier_examples() {
    for text in ["1,2;0,1", "1,0;2,1", "1,2;2,5"] {
        assert!(multiplier_zeta_g1(&m(text)).unwrap().is_one(), "{text}");
        assert!(multiplier_zeta_gauss(&m(text)).unwrap().is_one(), "{text}");
    }
    assert!(multiplier_zeta_g1(&m("1,1;0,1")).is_err());
    let s = m("0,-1;1,0");
    assert_eq!(multiplier_zeta_g1(&s).unwrap(), CycScalar::root(8, -1));
    assert!(matches!(multiplier_zeta_gauss(&s), Err(crate::Error::Degenerate(_))));
    assert!(multiplier_zeta_gauss(&m("-1,-2;0,-1")).is_err());
}

/// Theta-group elements of SL(2, Z) with C >= 0 and D > 0, by search.
fn theta_g1_samples() -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for c in 0..=12i64 {
        for d in 1..=12i64 {
            for a in -12..=12i64 {
                for b in -12..=12i64 {
                    if a * d - b * c == 1 && (a * c) % 2 == 0 && (b * d) % 2 == 0 {
                        out.push(IntMatrix::from_rows(&[&[a, b], &[c, d]]));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn multiplier_formulas_agree_in_genus_one() {
    let samples = theta_g1_samples();
    assert!(samples.len() > 100);
    for gamma in samples {
        let z1 = multiplier_zeta_g1(&gamma).unwrap();
        let z2 = multiplier_zeta_gauss(&gamma).unwrap();
        assert_eq!(z1, z2, "gamma = {gamma}");
    }
}

#[test]
fn gauss_multiplier_is_multiplicative_on_block_sums() {
    let samples = theta_g1_samples();
    let picks: Vec<&IntMatrix> = samples.iter().step_by(samples.len() / 12).take(12).collect();
    for x in &picks {
        for y in &picks {
            let mut gamma = IntMatrix::zeros(4, 4);
            for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                gamma.set(2 * r, 2 * c, x.get(r, c));
                gamma.set(2 * r + 1, 2 * c + 1, y.get(r, c));
            }
            let z = multiplier_zeta_gauss(&gamma).unwrap();
            let expected = &multiplier_zeta_gauss(x).unwrap() * &multiplier_zeta_gauss(y).unwrap();
            assert_eq!(z, expected, "{x} ⊕ {y}");
        }
    }
}
