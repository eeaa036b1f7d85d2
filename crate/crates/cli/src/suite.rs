use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use weilcheck::arith::{center_order, gauss_sum_bruteforce, gauss_sum_closed, CycScalar};
use weilcheck::coinvariants::{class_n11n22_nonzero, coinvariant_dim, invariant_bilinear_dim};
use weilcheck::matrix::ModMatrix;
use weilcheck::symplectic::{group_order_bfs, humphries_generators, GroupOrder, DEFAULT_BFS_CAP};
use weilcheck::weil::random::{random_word, rewrite_product};
use weilcheck::weil::{chain_defect, chain_defect_expected, check_braid_lifts, cocycle_defect, s_squared_trace};
use weilcheck::witt::{discriminant, is_split, witt_class, BilForm};
use weilcheck::Result;

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    All,
    Weil,
    Witt,
    Coinv,
    Arith,
}

type Battery = fn(u64) -> Result<(bool, String)>;

const ARITH: &[(&str, Battery)] = &[("gauss_sweep", gauss_sweep), ("center_order_families", center_families)];
const WEIL: &[(&str, Battery)] = &[
    ("chain_defect_even_levels", chain_levels),
    ("braid_lifts_levels", braid_levels),
    ("cocycle_eighth_roots", cocycle_roots),
    ("s2_trace_sweep", s2_sweep),
    ("humphries_group_orders", humphries_orders),
];
const COINV: &[(&str, Battery)] = &[
    ("coinvariant_dims", coinv_dims),
    ("n11n22_detected", n11n22_detected),
    ("invariant_form_dims", form_dims),
];
const WITT: &[(&str, Battery)] = &[
    ("witt_order_eight", order_eight),
    ("omega_nonsplit_2omega_split", omega_split),
    ("omega_discriminant", omega_disc),
    ("rank4_isometry", rank4_isometry),
];

pub fn run(name: SuiteName, seed: u64) -> Result<Vec<Report>> {
    let groups: Vec<(&str, &[(&str, Battery)])> = match name {
        SuiteName::All => vec![("arith", ARITH), ("weil", WEIL), ("coinv", COINV), ("witt", WITT)],
        SuiteName::Arith => vec![("arith", ARITH)],
        SuiteName::Weil => vec![("weil", WEIL)],
        SuiteName::Coinv => vec![("coinv", COINV)],
        SuiteName::Witt => vec![("witt", WITT)],
    };
    let mut out = Vec::new();
    for (group, battery) in groups {
        for &(check, f) in battery {
            let start = Instant::now();
            let (pass, detail) = f(seed)?;
            let mut r = Report::new("suite", seed)
                .input("group", group)
                .input("check", check)
                .result(json!(pass))
                .check(check, pass, detail);
            r.runtime_ms = start.elapsed().as_millis() as u64;
            out.push(r);
        }
    }
    Ok(out)
}

fn gauss_sweep(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for v in 1..=100u64 {
        for u in 0..v as i64 {
            if gauss_sum_closed(u, v)? != gauss_sum_bruteforce(u, v)? {
                bad.push((u, v));
            }
        }
    }
    Ok((bad.is_empty(), format!("5050 pairs, mismatches {bad:?}")))
}

fn center_families(_: u64) -> Result<(bool, String)> {
    let mut cases: Vec<(u64, u64)> = vec![(2, 2), (5, 5), (7, 7), (25, 25), (49, 49)];
    cases.extend((1..=4).map(|s| (12 * 2u64.pow(s), 2u64.pow(s + 1))));
    cases.extend((1..=3).map(|s| (12 * 3u64.pow(s), 3u64.pow(s))));
    let mut bad = Vec::new();
    for (p, want) in cases {
        let got = center_order(p)?;
        if got != want {
            bad.push(format!("p={p}: {got} != {want}"));
        }
    }
    Ok((bad.is_empty(), format!("12 levels, mismatches {bad:?}")))
}

fn chain_levels(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in [2u64, 4, 6, 8] {
        let mu = chain_defect(k)?;
        if mu != CycScalar::from_int(-1, 1) || mu != chain_defect_expected(k)? {
            bad.push(format!("k={k}: {mu}"));
        }
    }
    Ok((bad.is_empty(), format!("k = 2, 4, 6, 8; failing {bad:?}")))
}

fn braid_levels(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in [2u64, 4, 6] {
        if !check_braid_lifts(k)? {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("k = 2, 4, 6; failing {bad:?}")))
}

fn cocycle_roots(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for k in [2u64, 4] {
        for _ in 0..50 {
            let (l1, l2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let w1 = random_word(&mut rng, 2, l1);
            let w2 = random_word(&mut rng, 2, l2);
            let w12 = rewrite_product(&mut rng, &w1, &w2, 2, 6);
            if !cocycle_defect(&w1, &w2, &w12, 2, k)?.pow(8).is_one() {
                bad.push(format!("k={k}: {w1} | {w2}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("100 triples, failing {bad:?}")))
}

fn s2_sweep(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for g in 1..=4usize {
        for k in 2..=9u64 {
            let want = if k % 2 == 0 { 1 << g } else { 1 };
            if s_squared_trace(g, k)? != want {
                bad.push((g, k));
            }
        }
    }
    Ok((bad.is_empty(), format!("g <= 4, k <= 9; failing {bad:?}")))
}

fn humphries_orders(_: u64) -> Result<(bool, String)> {
    let mut got = Vec::new();
    for (g, n) in [(1usize, 2u64), (1, 3), (2, 2)] {
        got.push(group_order_bfs(&humphries_generators(g, n)?, DEFAULT_BFS_CAP)?);
    }
    let pass = got == [6, 24, 720].map(GroupOrder::Exact);
    Ok((pass, format!("{got:?}")))
}

fn coinv_dims(_: u64) -> Result<(bool, String)> {
    let cases = [
        ((4usize, 2u64, 2u8), 1usize),
        ((4, 3, 2), 0),
        ((4, 5, 2), 0),
        ((4, 2, 1), 0),
        ((3, 2, 2), 1),
        ((5, 2, 2), 1),
    ];
    let mut bad = Vec::new();
    for ((g, p, d), want) in cases {
        let got = coinvariant_dim(g, p, d)?;
        if got != want {
            bad.push(format!("({g},{p},{d}) = {got}"));
        }
    }
    Ok((bad.is_empty(), format!("6 cases, failing {bad:?}")))
}

fn n11n22_detected(_: u64) -> Result<(bool, String)> {
    let got = [3usize, 4, 5]
        .iter()
        .map(|&g| class_n11n22_nonzero(g))
        .collect::<Result<Vec<_>>>()?;
    Ok((got.iter().all(|&x| x), format!("g = 3, 4, 5: {got:?}")))
}

fn form_dims(_: u64) -> Result<(bool, String)> {
    let cases = [
        ((2usize, 3u64), (2usize, 0usize)),
        ((3, 3), (2, 0)),
        ((2, 5), (2, 0)),
        ((2, 2), (2, 1)),
        ((3, 2), (2, 1)),
        ((4, 2), (2, 1)),
    ];
    let mut bad = Vec::new();
    for ((n, p), want) in cases {
        let got = invariant_bilinear_dim(n, p)?;
        if got != want {
            bad.push(format!("({n},{p}) = {got:?}"));
        }
    }
    Ok((bad.is_empty(), format!("6 cases, failing {bad:?}")))
}

fn order_eight(_: u64) -> Result<(bool, String)> {
    let m1 = BilForm::unit(3)?;
    let classes: Vec<u8> = (1..=8).map(|m| witt_class(&m1.repeat(m)).value()).collect();
    let pass = classes.iter().enumerate().all(|(i, &c)| (c == 0) == (i == 7));
    Ok((pass, format!("classes of m<-1>, m = 1..8: {classes:?}")))
}

fn omega_split(_: u64) -> Result<(bool, String)> {
    let w = BilForm::omega();
    let (a, b) = (is_split(&w)?, is_split(&w.repeat(2))?);
    Ok((!a && b, format!("split(omega) = {a}, split(2 omega) = {b}")))
}

fn omega_disc(_: u64) -> Result<(bool, String)> {
    let d = discriminant(&BilForm::omega());
    Ok((d == 3, format!("disc(omega) = {d}")))
}

fn rank4_isometry(_: u64) -> Result<(bool, String)> {
    let f = BilForm::diagonal(&[3, 3, 3, 3])?;
    let p = ModMatrix::from_ints(4, 4, &[1, 1, 1, 0, 1, 0, -1, 0, 0, 1, -1, 0, 0, 0, 0, 1], 4)?;
    let target = BilForm::parse("-2,-1;-1,-2")?
        .direct_sum(&BilForm::unit(1)?)
        .direct_sum(&BilForm::unit(-1)?);
    let image = f.base_change(&p)?;
    Ok((p.det()?.is_unit() && &image == target.gram(), format!("Gram in new basis: {image}")))
}
