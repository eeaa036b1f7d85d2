use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::symplectic::{j_form, humphries_generators};
use BasisLabel::{L, N, R, U};

fn sum(basis: &SpBasis, terms: &[(i64, BasisLabel)]) -> ModMatrix {
    let mut m = ModMatrix::zeros(2 * basis.genus(), 2 * basis.genus(), basis.prime());
    for &(c, l) in terms {
        m = m.add(&basis.matrix(l).scale(c)).unwrap();
    }
    m
}

fn random_sp(rng: &mut ChaCha8Rng, g: usize, p: u64, len: usize) -> SpElement {
    let gens = humphries_generators(g, p).unwrap();
    let mut acc = SpElement::identity(g, p);
    for _ in 0..len {
        acc = acc.mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    acc
}

#[test]
fn basis_shape() {
    for g in 1..=5 {
        let b = SpBasis::new(g, 3).unwrap();
        assert_eq!(b.len(), g * (2 * g + 1));
        for (i, &l) in b.labels().iter().enumerate() {
            assert_eq!(b.index_of(l), Some(i));
            assert!(is_sp_lie(&b.matrix(l), 3).unwrap(), "{l}");
            let mut unit = vec![0; b.len()];
            unit[i] = 1;
            assert_eq!(b.coordinates(&b.matrix(l)).unwrap(), unit);
        }
    }
    assert!(SpBasis::new(2, 4).is_err());
    assert_eq!(SpBasis::new(2, 2).unwrap().labels()[0].to_string(), "u11");
}

#[test]
fn conj_action_examples() {
    let (g, p) = (3, 5);
    let b = SpBasis::new(g, p).unwrap();
    let id = SpElement::identity(g, p);
    let r12 = b.matrix(R(0, 1));
    assert_eq!(conj_action(&id, &r12).unwrap(), r12);
    let j = SpElement::new(j_form(g, p), g).unwrap();
    for i in 0..g {
        for k in i..g {
            let img = conj_action(&j, &b.matrix(U(i, k))).unwrap();
            assert_eq!(img, b.matrix(L(i, k)).neg());
        }
    }
    let img = conj_action(&tau_u(g, p, 0, 1), &r12).unwrap();
    assert_eq!(img, sum(&b, &[(1, R(0, 1)), (-1, U(0, 1))]));
}

#[test]
fn printed_action_formulas() {
    for (g, p) in [(3usize, 2u64), (3, 3), (4, 5)] {
        let b = SpBasis::new(g, p).unwrap();
        for i in 0..g {
            for j in 0..g {
                if i == j {
                    continue;
                }
                let (lo, hi) = (i.min(j), i.max(j));
                let act = |s: &SpElement, l| conj_action(s, &b.matrix(l)).unwrap();
                assert_eq!(
                    act(&tau_u(g, p, i, j), R(i, j)),
                    sum(&b, &[(1, R(i, j)), (-1, U(lo, hi))])
                );
                assert_eq!(
                    act(&tau_l(g, p, i, j), R(i, j)),
                    sum(&b, &[(1, R(i, j)), (1, L(lo, hi))])
                );
                assert_eq!(
                    act(&a_map(g, p, i, j), U(i, i)),
                    sum(&b, &[(1, U(i, i)), (1, U(j, j)), (-1, U(lo, hi))])
                );
                assert_eq!(act(&exchange(g, p, i, j), U(lo, hi)), b.matrix(L(lo, hi)).neg());
                assert_eq!(act(&exchange(g, p, i, j), U(i, i)), b.matrix(L(i, i)).neg());
                assert_eq!(act(&a_map(g, p, i, j), U(j, j)), b.matrix(U(j, j)));
                for k in 0..g {
                    for l in k..g {
                        assert_eq!(act(&tau_u(g, p, i, j), U(k, l)), b.matrix(U(k, l)));
                        assert_eq!(act(&tau_l(g, p, i, j), L(k, l)), b.matrix(L(k, l)));
                    }
                }
            }
        }
    }
}

#[test]
fn wedge_action_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, p) in [(1usize, 3u64), (2, 2), (2, 3)] {
        let b = SpBasis::new(g, p).unwrap();
        let id = wedge_action_matrix(&SpElement::identity(g, p), &b).unwrap();
        assert!(id.is_identity());
        for _ in 0..4 {
            let s = random_sp(&mut rng, g, p, 5);
            let t = random_sp(&mut rng, g, p, 5);
            let ws = wedge_action_matrix(&s, &b).unwrap();
            let wt = wedge_action_matrix(&t, &b).unwrap();
            let wst = wedge_action_matrix(&s.mul(&t).unwrap(), &b).unwrap();
            assert_eq!(ws.mul(&wt).unwrap(), wst);
            assert!(ws.det().unwrap().is_unit());
        }
    }
}

#[test]
fn coinvariant_examples() {
    assert_eq!(coinvariant_dim(4, 2, 2).unwrap(), 1);
    assert_eq!(coinvariant_dim(4, 3, 2).unwrap(), 0);
    assert_eq!(coinvariant_dim(4, 2, 1).unwrap(), 0);
    assert!(coinvariant_dim(4, 4, 2).is_err());
    assert!(coinvariant_dim(2, 2, 3).is_err());
}

#[test]
fn coinvariant_stability() {
    let d3 = coinvariant_dim(3, 2, 2).unwrap();
    let d4 = coinvariant_dim(4, 2, 2).unwrap();
    let d5 = coinvariant_dim(5, 2, 2).unwrap();
    assert_eq!((d3, d4, d5), (1, 1, 1));
}

#[test]
fn coinvariants_independent_of_generating_set() {
    for (g, p) in [(3usize, 2u64), (3, 3), (4, 2)] {
        let mut gens = humphries_generators(g, p).unwrap();
        gens.extend(auxiliary_elements(g, p));
        for degree in [1u8, 2] {
            let with_aux = RelationSpace::new(SpBasis::new(g, p).unwrap(), degree, &gens).unwrap();
            assert_eq!(with_aux.quotient_dim(), coinvariant_dim(g, p, degree).unwrap());
        }
    }
}

#[test]
fn humphries_generate_sp4_f3() {
    use crate::symplectic::{group_order_bfs, GroupOrder};
    let gens = humphries_generators(2, 3).unwrap();
    assert_eq!(group_order_bfs(&gens, 100_000).unwrap(), GroupOrder::Exact(51840));
}

/// tr(XY) is an Sp-invariant alternating form on sp_2g(2), so it factors
/// through the coinvariants of the exterior square.
fn trace_pairing(basis: &SpBasis, x: BasisLabel, y: BasisLabel) -> u64 {
    let prod = basis.matrix(x).mul(&basis.matrix(y)).unwrap();
    (0..prod.rows()).map(|i| prod.get(i, i)).sum::<u64>() % 2
}

#[test]
fn trace_form_detects_the_f2_class() {
    for g in [2usize, 3] {
        let basis = SpBasis::new(g, 2).unwrap();
        let rel = RelationSpace::new(basis.clone(), 2, &humphries_generators(g, 2).unwrap()).unwrap();
        assert_eq!(rel.quotient_dim(), 1);
        let labels = basis.labels().to_vec();
        for (a, &x) in labels.iter().enumerate() {
            for &y in &labels[a + 1..] {
                let vanishes = trace_pairing(&basis, x, y) == 0;
                assert_eq!(rel.contains(&basis.wedge(x, y)), vanishes, "{x} ^ {y}, g = {g}");
            }
        }
    }
}

#[test]
fn class_n11n22() {
    for g in [2usize, 3, 4, 5] {
        assert!(!class_n11n22_nonzero(g).unwrap(), "g = {g}");
    }
    assert!(class_n11n22_nonzero(1).is_err());
}

#[test]
fn vanishing_spot_checks() {
    for (g, p) in [(4usize, 2u64), (4, 3)] {
        let basis = SpBasis::new(g, p).unwrap();
        let rel = RelationSpace::new(basis.clone(), 2, &humphries_generators(g, p).unwrap()).unwrap();
        let cases = [
            (U(0, 0), L(1, 2)),
            (U(0, 1), L(0, 1)),
            (U(0, 1), L(2, 3)),
            (U(0, 0), U(1, 1)),
            (L(0, 1), N(2)),
            (R(0, 1), L(2, 3)),
            (N(0), N(1)),
        ];
        for (x, y) in cases {
            assert!(rel.contains(&basis.wedge(x, y)), "{x} ^ {y} at p = {p}");
        }
        for i in 0..g {
            assert_eq!(rel.contains(&basis.wedge(U(i, i), L(i, i))), p != 2);
        }
    }
}

fn all_invertible(n: usize, p: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    let total = p.pow((n * n) as u32);
    for code in 0..total {
        let mut c = code;
        let entries: Vec<i64> = (0..n * n)
            .map(|_| {
                let d = c % p;
                c /= p;
                d as i64
            })
            .collect();
        let m = ModMatrix::from_ints(n, n, &entries, p).unwrap();
        if m.det().unwrap().is_unit() {
            out.push(m);
        }
    }
    out
}

/// Dimensions of the invariant and alternating-invariant bilinear forms on
/// M_n(F_p), from the equations Cᵀ G C = G over the whole group.
fn bilinear_oracle(n: usize, p: u64) -> (usize, usize) {
    let m = n * n;
    let mut rows = Vec::new();
    for x in all_invertible(n, p) {
        let xi = x.inverse_mod_prime().unwrap();
        let mut c = vec![vec![0u64; m]; m];
        for s in 0..m {
            let mut unit = ModMatrix::zeros(n, n, p);
            unit.set(s / n, s % n, 1);
            let img = x.mul(&unit).unwrap().mul(&xi).unwrap();
            for t in 0..m {
                c[t][s] = img.get(t / n, t % n);
            }
        }
        for a in 0..m {
            for b in 0..m {
                let mut row = vec![0u64; m * m];
                for k in 0..m {
                    for l in 0..m {
                        row[k * m + l] = (row[k * m + l] + c[k][a] * c[l][b]) % p;
                    }
                }
                row[a * m + b] = (row[a * m + b] + p - 1) % p;
                rows.push(row);
            }
        }
    }
    let all = m * m - crate::linalg::rank_mod_p(&rows, p, m * m).unwrap();
    for a in 0..m {
        let mut row = vec![0u64; m * m];
        row[a * m + a] = 1;
        rows.push(row);
        for b in a + 1..m {
            let mut row = vec![0u64; m * m];
            row[a * m + b] = 1;
            row[b * m + a] = 1;
            rows.push(row);
        }
    }
    (all, m * m - crate::linalg::rank_mod_p(&rows, p, m * m).unwrap())
}

#[test]
fn invariant_bilinear_examples() {
    for (n, p) in [(2usize, 2u64), (3, 2), (2, 3), (3, 3), (2, 5)] {
        assert_eq!(invariant_bilinear_dim(n, p).unwrap(), bilinear_oracle(n, p), "(n, p) = ({n}, {p})");
    }
    assert_eq!(invariant_bilinear_dim(2, 3).unwrap(), (2, 0));
    assert_eq!(invariant_bilinear_dim(3, 2).unwrap(), (2, 1));
    assert_eq!(invariant_bilinear_dim(4, 2).unwrap(), (2, 1));
    assert!(invariant_bilinear_dim(1, 2).is_err());
}

#[test]
fn extra_alternating_form_when_p_divides_n() {
    // Brute force over every Gram matrix on M_2(F_2).
    let group = all_invertible(2, 2);
    let mut invariant = 0;
    let mut alternating = 0;
    for bits in 0u32..1 << 16 {
        let g = |a: usize, b: usize| ((bits >> (4 * a + b)) & 1) as u64;
        let ok = group.iter().all(|x| {
            let xi = x.inverse_mod_prime().unwrap();
            let act = |s: usize| {
                let mut unit = ModMatrix::zeros(2, 2, 2);
                unit.set(s / 2, s % 2, 1);
                let img = x.mul(&unit).unwrap().mul(&xi).unwrap();
                (0..4).map(|t| img.get(t / 2, t % 2)).collect::<Vec<_>>()
            };
            (0..4).all(|a| {
                (0..4).all(|b| {
                    let (ca, cb) = (act(a), act(b));
                    let mut v = 0;
                    for k in 0..4 {
                        for l in 0..4 {
                            v += ca[k] * g(k, l) * cb[l];
                        }
                    }
                    v % 2 == g(a, b)
                })
            })
        });
        if ok {
            invariant += 1;
            if (0..4).all(|a| g(a, a) == 0 && (0..4).all(|b| g(a, b) == g(b, a))) {
                alternating += 1;
            }
        }
    }
    assert_eq!((invariant, alternating), (8, 4));
    assert_eq!(invariant_bilinear_dim(2, 2).unwrap(), (3, 2));
}

#[test]
fn gl_block_examples() {
    for (g, p) in [(2usize, 2u64), (3, 3), (2, 5), (1, 7)] {
        assert!(gl_block_decomposition_check(g, p).unwrap(), "(g, p) = ({g}, {p})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conj_action_preserves_lie_algebra(seed in any::<u64>(), gp in prop::sample::select(vec![(2usize, 2u64), (2, 3), (3, 5)])) {
        let (g, p) = gp;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = SpBasis::new(g, p).unwrap();
        let s = random_sp(&mut rng, g, p, 8);
        let coords: Vec<u64> = (0..b.len()).map(|_| rng.gen_range(0..p)).collect();
        let a = b.element(&coords);
        let img = conj_action(&s, &a).unwrap();
        prop_assert!(is_sp_lie(&img, p).unwrap());
    }
}
