use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use super::*;

fn gram(n: usize, entries: &[i64]) -> ModMatrix {
    ModMatrix::from_ints(n, n, entries, 4).unwrap()
}

/// Every nondegenerate symmetric Gram matrix of rank n over Z/4Z.
fn all_forms(n: usize) -> Vec<BilForm> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mut code in 0..4usize.pow(slots.len() as u32) {
        let mut m = ModMatrix::zeros(n, n, 4);
        for &(i, j) in &slots {
            let v = (code % 4) as i64;
            code /= 4;
            m.set(i, j, v);
            m.set(j, i, v);
        }
        if let Ok(f) = BilForm::new(m) {
            out.push(f);
        }
    }
    out
}

fn all_invertible(n: usize) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for mut code in 0..4usize.pow((n * n) as u32) {
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push((code % 4) as i64);
            code /= 4;
        }
        let m = ModMatrix::from_ints(n, n, &entries, 4).unwrap();
        if m.det().unwrap().is_unit() {
            out.push(m);
        }
    }
    out
}

fn vectors(n: usize) -> Vec<Vec<u64>> {
    (0..4usize.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = (c % 4) as u64;
                    c /= 4;
                    d
                })
                .collect()
        })
        .collect()
}

/// Split test at rank 2 straight from the definition: some cyclic N with
/// N = N^⊥ that has a complement.
fn split_oracle_rank2(f: &BilForm) -> bool {
    let all = vectors(2);
    let span = |gens: &[&Vec<u64>]| -> HashSet<Vec<u64>> {
        let mut out = HashSet::new();
        for coeffs in vectors(gens.len()) {
            let mut v = vec![0u64; 2];
            for (c, g) in coeffs.iter().zip(gens) {
                for k in 0..2 {
                    v[k] = (v[k] + c * g[k]) % 4;
                }
            }
            out.insert(v);
        }
        out
    };
    all.iter().any(|v| {
        let n = span(&[v]);
        let perp: HashSet<Vec<u64>> = all
            .iter()
            .filter(|w| n.iter().all(|x| f.pairing(w, x) == 0))
            .cloned()
            .collect();
        n == perp && all.iter().any(|w| span(&[v, w]).len() == 16)
    })
}

#[test]
fn direct_sum_examples() {
    let d = direct_sum(&BilForm::unit(1).unwrap(), &BilForm::unit(3).unwrap());
    assert_eq!(d.gram(), &gram(2, &[1, 0, 0, 3]));
    let ww = BilForm::omega().direct_sum(&BilForm::omega());
    let iso = [vec![1, 0, 1, 0], vec![0, 1, 0, 3]];
    for x in &iso {
        for y in &iso {
            assert_eq!(ww.pairing(x, y), 0);
        }
    }
    // e1+e3 and e2+e4 are each isotropic but pair to 2.
    assert_eq!(ww.pairing(&[1, 0, 1, 0], &[0, 1, 0, 1]), 2);
    let f = BilForm::omega();
    assert_eq!(f.direct_sum(&BilForm::empty()), f);
}

#[test]
fn validation() {
    assert!(matches!(BilForm::parse("2,0;0,2"), Err(Error::Degenerate(_))));
    assert!(BilForm::parse("1,2;0,1").is_err());
    assert!(BilForm::new(ModMatrix::identity(2, 8)).is_err());
    assert_eq!(BilForm::parse("2,1;1,2").unwrap(), BilForm::omega());
    assert!(FormTriple::new(BilForm::omega(), BilForm::unit(1).unwrap()).is_err());
}

#[test]
fn split_examples() {
    assert!(is_split(&BilForm::hyperbolic()).unwrap());
    assert!(!is_split(&BilForm::omega()).unwrap());
    assert!(is_split(&BilForm::omega().repeat(2)).unwrap());
    assert!(!is_split(&BilForm::unit(1).unwrap()).unwrap());
    assert!(is_split(&BilForm::empty()).unwrap());
    assert!(matches!(
        is_split(&BilForm::unit(1).unwrap().repeat(8)),
        Err(Error::CapExceeded(_))
    ));
    assert!(is_split_with_cap(&BilForm::diagonal(&[1, 1, 1, 3, 3, 3]).unwrap(), 6).unwrap());
    assert!(!is_split(&BilForm::diagonal(&[3, 3, 3, 3, 3, 3]).unwrap()).unwrap());
}

#[test]
fn decompose_examples() {
    assert_eq!(decompose(&BilForm::diagonal(&[3, 3, 3, 3]).unwrap()).counts(), (0, 4, 0, 0));
    assert_eq!(decompose(&BilForm::omega()).counts(), (0, 0, 1, 0));
    assert_eq!(decompose(&BilForm::parse("0,1;1,2").unwrap()).counts(), (0, 0, 0, 1));
    assert_eq!(decompose(&BilForm::parse("2,3;3,2").unwrap()).counts(), (0, 0, 1, 0));
}

#[test]
fn class_examples() {
    assert_eq!(witt_class(&BilForm::diagonal(&[1, 3]).unwrap()), WittClass::new(0));
    assert_eq!(witt_class(&BilForm::omega()), WittClass::new(4));
    assert_eq!(witt_class(&BilForm::unit(3).unwrap().repeat(8)), WittClass::new(0));
    assert_eq!(witt_class(&BilForm::unit(1).unwrap()), WittClass::new(-1));
    assert_eq!(witt_class(&BilForm::empty()), WittClass::new(0));
}

#[test]
fn minus_one_has_order_eight() {
    let m1 = BilForm::unit(-1).unwrap();
    for m in 1..=8 {
        let c = witt_class(&m1.repeat(m));
        assert_eq!(c.value() as usize, m % 8);
        assert_eq!(c.is_zero(), m == 8);
    }
    assert_eq!(witt_class(&m1.repeat(4)), -witt_class(&BilForm::omega()));
    assert!(witt_class(&BilForm::omega().repeat(2)).is_zero());
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&BilForm::omega()), 3);
    assert_eq!(discriminant(&BilForm::unit(1).unwrap()), 1);
    assert_eq!(discriminant(&BilForm::hyperbolic()), 3);
}

#[test]
fn v_class_examples() {
    let q = BilForm::omega();
    assert!(v_class(&FormTriple::new(q.clone(), q.clone()).unwrap()).is_zero());
    let t = FormTriple::new(BilForm::diagonal(&[1, 1]).unwrap(), BilForm::omega()).unwrap();
    assert_eq!(v_class(&t), WittClass::new(6));
}

#[test]
fn explicit_rank4_isometry() {
    let f = BilForm::diagonal(&[3, 3, 3, 3]).unwrap();
    // Columns e1+e2, e1+e3, e1-e2-e3, e4.
    let p = gram(4, &[1, 1, 1, 0, 1, 0, -1, 0, 0, 1, -1, 0, 0, 0, 0, 1]);
    assert!(p.det().unwrap().is_unit());
    let minus_omega = BilForm::parse("-2,-1;-1,-2").unwrap();
    let expected = minus_omega
        .direct_sum(&BilForm::unit(1).unwrap())
        .direct_sum(&BilForm::unit(-1).unwrap());
    assert_eq!(&f.base_change(&p).unwrap(), expected.gram());
    // Swapping the last two basis vectors gives the other summand order.
    let q = gram(4, &[1, 1, 0, 1, 1, 0, 0, -1, 0, 1, 0, -1, 0, 0, 1, 0]);
    let swapped = minus_omega
        .direct_sum(&BilForm::unit(-1).unwrap())
        .direct_sum(&BilForm::unit(1).unwrap());
    assert_eq!(&f.base_change(&q).unwrap(), swapped.gram());
    assert_eq!(witt_class(&f), witt_class(&swapped));
}

#[test]
fn decomposition_certificates_exhaustive() {
    for n in 1..=4 {
        for f in all_forms(n) {
            let d = decompose(&f);
            assert_eq!(d.plus + d.minus + 2 * d.omega + 2 * d.split, n);
            assert!(d.basis.det().unwrap().is_unit(), "{f}");
            assert_eq!(&f.base_change(&d.basis).unwrap(), d.normal_form().gram(), "{f}");
        }
    }
}

#[test]
fn class_is_an_isometry_invariant_rank2_and_3() {
    for n in [2usize, 3] {
        let group = all_invertible(n);
        let forms = all_forms(n);
        let classes: HashMap<ModMatrix, WittClass> =
            forms.iter().map(|f| (f.gram().clone(), witt_class(f))).collect();
        for f in &forms {
            let c = classes[f.gram()];
            for p in group.iter().step_by(if n == 2 { 1 } else { 97 }) {
                assert_eq!(classes[&f.base_change(p).unwrap()], c, "{f}");
            }
        }
    }
}

#[test]
fn split_matches_definition_rank2() {
    for f in all_forms(2) {
        assert_eq!(is_split(&f).unwrap(), split_oracle_rank2(&f), "{f}");
    }
}

#[test]
fn split_iff_class_zero_exhaustive() {
    for n in [2usize, 4] {
        for f in all_forms(n) {
            assert_eq!(is_split(&f).unwrap(), witt_class(&f).is_zero(), "{f}");
        }
    }
}

fn arb_form(max_rank: usize) -> impl Strategy<Value = BilForm> {
    (1..=max_rank).prop_flat_map(arb_form_of_rank)
}

fn arb_form_of_rank(n: usize) -> impl Strategy<Value = BilForm> {
    prop::collection::vec(0i64..4, n * n)
        .prop_filter_map("degenerate", move |raw| {
            let mut m = ModMatrix::zeros(n, n, 4);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, raw[i * n + j]);
                    m.set(j, i, raw[i * n + j]);
                }
            }
            BilForm::new(m).ok()
        })
}

fn arb_invertible(n: usize) -> impl Strategy<Value = ModMatrix> {
    prop::collection::vec(0i64..4, n * n).prop_filter_map("singular", move |raw| {
        let m = ModMatrix::from_ints(n, n, &raw, 4).unwrap();
        m.det().unwrap().is_unit().then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn class_is_additive(f in arb_form(4), g in arb_form(4)) {
        prop_assert_eq!(witt_class(&f.direct_sum(&g)), witt_class(&f) + witt_class(&g));
    }

    #[test]
    fn discriminant_is_multiplicative(f in arb_form(4), g in arb_form(4)) {
        prop_assert_eq!(discriminant(&f.direct_sum(&g)), discriminant(&f) * discriminant(&g) % 4);
    }

    #[test]
    fn class_survives_base_change((f, p) in arb_form(5).prop_flat_map(|f| {
        let n = f.rank();
        (Just(f), arb_invertible(n))
    })) {
        let g = BilForm::new(f.base_change(&p).unwrap()).unwrap();
        prop_assert_eq!(witt_class(&g), witt_class(&f));
    }

    #[test]
    fn chasles((q0, q1, q2) in (1usize..=3).prop_flat_map(|n| (arb_form_of_rank(n), arb_form_of_rank(n), arb_form_of_rank(n)))) {
        let t01 = FormTriple::new(q0.clone(), q1.clone()).unwrap();
        let t12 = FormTriple::new(q1, q2.clone()).unwrap();
        let t02 = FormTriple::new(q0, q2).unwrap();
        prop_assert_eq!(v_class(&t01) + v_class(&t12), v_class(&t02));
    }
}
