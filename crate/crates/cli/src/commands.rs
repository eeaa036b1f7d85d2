use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use weilcheck::arith::{self, factorize, CycScalar};
use weilcheck::coinvariants;
use weilcheck::matrix::{IntMatrix, ModMatrix};
use weilcheck::symplectic::{self, GroupOrder};
use weilcheck::weil::{self, random::rewrite_product, GenWord};
use weilcheck::witt::{self, BilForm, FormTriple};
use weilcheck::{Error, Result};

use crate::report::Report;

/// Inline matrix text, or the contents of a file for `@path`.
pub fn load(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn s(x: &CycScalar) -> Value {
    Value::String(x.to_string())
}

pub fn gauss(u: i64, v: u64, seed: u64) -> Result<Report> {
    let closed = arith::gauss_sum_closed(u, v)?;
    let brute = arith::gauss_sum_bruteforce(u, v)?;
    Ok(Report::new("gauss", seed)
        .input("u", u)
        .input("v", v)
        .result(json!({ "closed": s(&closed), "bruteforce": s(&brute) }))
        .check("gauss_closed_matches_bruteforce", closed == brute, format!("G({u}, {v}) = {closed}")))
}

pub fn jacobi(p: i64, q: i64, seed: u64) -> Result<Report> {
    let value = arith::jacobi(p, q)?;
    Ok(Report::new("jacobi", seed).input("p", p).input("q", q).result(value))
}

/// The order predicted for levels in the detecting families, if any.
fn predicted_center_order(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(2);
    }
    let f = factorize(p);
    if f.len() == 1 && f[0].0 >= 5 {
        return Some(p);
    }
    if p % 12 != 0 {
        return None;
    }
    let r = p / 12;
    match factorize(r).as_slice() {
        [(2, s)] => Some(2u64.pow(s + 1)),
        [(3, s)] => Some(3u64.pow(*s)),
        _ => None,
    }
}

pub fn center_order(p: u64, seed: u64) -> Result<Report> {
    let order = arith::center_order(p)?;
    let mut r = Report::new("center-order", seed).input("p", p).result(order);
    if let Some(want) = predicted_center_order(p) {
        r = r.check("center_order_predicted", order == want, format!("order {order}, predicted {want}"));
    }
    Ok(r)
}

fn genus_of(rows: usize, cols: usize) -> Result<usize> {
    if rows != cols || rows % 2 != 0 || rows == 0 {
        return Err(Error::ShapeMismatch(format!("expected a 2g x 2g matrix, got {rows}x{cols}")));
    }
    Ok(rows / 2)
}

pub fn sp_check(matrix: &str, n: Option<u64>, seed: u64) -> Result<Report> {
    let text = load(matrix)?;
    let (ok, g) = match n {
        Some(n) => {
            let m = ModMatrix::parse(&text, n)?;
            let g = genus_of(m.rows(), m.cols())?;
            (symplectic::is_symplectic(&m, g)?, g)
        }
        None => {
            let m = IntMatrix::parse(&text)?;
            let g = genus_of(m.rows(), m.cols())?;
            (symplectic::is_symplectic_int(&m, g)?, g)
        }
    };
    let over = n.map_or("Z".to_string(), |n| format!("Z/{n}Z"));
    let mut r = Report::new("sp-check", seed).input("matrix", text);
    if let Some(n) = n {
        r = r.input("n", n);
    }
    Ok(r.result(ok).check("is_symplectic", ok, format!("genus {g} over {over}")))
}

pub fn theta_check(matrix: &str, seed: u64) -> Result<Report> {
    let text = load(matrix)?;
    let m = IntMatrix::parse(&text)?;
    let ok = symplectic::is_theta_group(&m)?;
    Ok(Report::new("theta-check", seed)
        .input("matrix", text)
        .result(ok)
        .check("in_theta_group", ok, "diagonals of A^T C and B^T D"))
}

pub fn group_order(g: usize, n: u64, cap: u64, seed: u64) -> Result<Report> {
    let gens = symplectic::humphries_generators(g, n)?;
    let order = symplectic::group_order_bfs(&gens, cap)?;
    let r = Report::new("group-order", seed).input("g", g).input("n", n).input("cap", cap);
    Ok(match order {
        GroupOrder::Exact(o) => {
            let r = r.result(json!({ "order": o }));
            match symplectic::sp_order_formula(g, n) {
                Some(want) => r.check(
                    "order_matches_formula",
                    o as u128 == want,
                    format!("enumerated {o}, |Sp({}, Z/{n}Z)| = {want}", 2 * g),
                ),
                None => r,
            }
        }
        GroupOrder::Overflow { cap } => r.result(json!({ "overflow": cap })),
    })
}

pub fn chain_defect(k: u64, seed: u64) -> Result<Report> {
    let mu = weil::chain_defect(k)?;
    let expected = weil::chain_defect_expected(k)?;
    let braids = weil::check_braid_lifts(k)?;
    Ok(Report::new("chain-defect", seed)
        .input("k", k)
        .result(json!({ "mu": s(&mu) }))
        .check("mu_is_minus_one", mu == CycScalar::from_int(-1, 1), format!("mu = {mu}"))
        .check("mu_matches_gauss_closed_form", mu == expected, format!("k^-2 (G(1,2k)/2)^4 = {expected}"))
        .check("braid_lifts_normalized", braids, format!("level {k}")))
}

pub fn braid_check(k: u64, seed: u64) -> Result<Report> {
    let checks = weil::braid_lift_checks(k)?;
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "pair": format!("{}{}", c.x.name(), c.y.name()),
                "relation": format!("{:?}", c.relation).to_lowercase(),
                "holds": c.holds,
            })
        })
        .collect();
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{}{}", c.x.name(), c.y.name()))
        .collect();
    Ok(Report::new("braid-check", seed)
        .input("k", k)
        .result(Value::Array(rows))
        .check(
            "braid_lifts_normalized",
            failing.is_empty(),
            format!("{} pairs, failing {failing:?}", checks.len()),
        ))
}

pub fn s2_trace(g: usize, k: u64, seed: u64) -> Result<Report> {
    let t = weil::s_squared_trace(g, k)?;
    let want = if k % 2 == 0 { 1u64 << g } else { 1 };
    Ok(Report::new("s2-trace", seed)
        .input("g", g)
        .input("k", k)
        .result(t)
        .check("s2_trace_formula", t == want, format!("trace {t}, formula {want}")))
}

pub fn cocycle(g: usize, k: u64, w1: &str, w2: &str, w12: Option<&str>, seed: u64) -> Result<Report> {
    let a: GenWord = w1.parse()?;
    let b: GenWord = w2.parse()?;
    let ab: GenWord = match w12 {
        Some(w) => w.parse()?,
        None => rewrite_product(&mut ChaCha8Rng::seed_from_u64(seed), &a, &b, g, 6),
    };
    let eta = weil::cocycle_defect(&a, &b, &ab, g, k)?;
    Ok(Report::new("cocycle", seed)
        .input("g", g)
        .input("k", k)
        .input("w1", a.to_string())
        .input("w2", b.to_string())
        .result(json!({ "eta": s(&eta), "w12": ab.to_string() }))
        .check("eta_in_r8", eta.pow(8).is_one(), format!("eta = {eta}")))
}

pub fn multiplier(matrix: &str, seed: u64) -> Result<Report> {
    let text = load(matrix)?;
    let gamma = IntMatrix::parse(&text)?;
    let g1 = if gamma.rows() == 2 { Some(weil::multiplier_zeta_g1(&gamma)?) } else { None };
    let gauss = weil::multiplier_zeta_gauss(&gamma);
    if g1.is_none() {
        if let Err(e) = &gauss {
            return Err(e.clone());
        }
    }
    let s_matrix = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
    let zeta_s = weil::multiplier_zeta_g1(&s_matrix)?;
    let mut r = Report::new("multiplier", seed).input("matrix", text).result(json!({
        "zeta_g1": g1.as_ref().map(s),
        "zeta_gauss": match &gauss {
            Ok(z) => s(z),
            Err(e) => Value::String(format!("unavailable: {e}")),
        },
        "zeta_S": {
            "case_formula": s(&zeta_s),
            "exponential": s(&CycScalar::root(8, 1)),
        },
    }));
    if let (Some(a), Ok(b)) = (&g1, &gauss) {
        r = r.check("multiplier_formulas_agree", a == b, format!("case formula {a}, Gauss sum {b}"));
    }
    Ok(r)
}

pub fn coinv(g: usize, p: u64, deg: u8, seed: u64) -> Result<Report> {
    let d = coinvariants::coinvariant_dim(g, p, deg)?;
    let mut r = Report::new("coinv", seed)
        .input("g", g)
        .input("p", p)
        .input("deg", deg)
        .result(d);
    if g >= 3 {
        let want = usize::from(deg == 2 && p == 2);
        r = r.check("coinvariant_dim_expected", d == want, format!("dimension {d}, expected {want}"));
    }
    Ok(r)
}

pub fn class_n11n22(g: usize, seed: u64) -> Result<Report> {
    let nonzero = coinvariants::class_n11n22_nonzero(g)?;
    Ok(Report::new("class-n11n22", seed)
        .input("g", g)
        .result(nonzero)
        .check(
            "n11n22_class_nonzero",
            nonzero,
            if nonzero {
                "outside the relation span".to_string()
            } else {
                "inside the relation span; the F_2 class is carried by u_ii ^ l_ii".to_string()
            },
        ))
}

pub fn invariant_bilinear(n: usize, p: u64, seed: u64) -> Result<Report> {
    let (all, alt) = coinvariants::invariant_bilinear_dim(n, p)?;
    let want = (2, usize::from(p == 2));
    Ok(Report::new("invariant-bilinear", seed)
        .input("n", n)
        .input("p", p)
        .result(json!({ "invariant": all, "alternating": alt }))
        .check(
            "invariant_forms_match_claim",
            (all, alt) == want,
            format!("({all}, {alt}), expected {want:?}"),
        ))
}

fn form(arg: &str) -> Result<BilForm> {
    BilForm::parse(&load(arg)?)
}

fn split_if_within_cap(f: &BilForm) -> Result<Option<bool>> {
    let cap = witt::rank_cap_from_env();
    if f.rank() > cap {
        return Ok(None);
    }
    witt::is_split_with_cap(f, cap).map(Some)
}

pub fn witt_classify(gram: &str, seed: u64) -> Result<Report> {
    let f = form(gram)?;
    let d = witt::decompose(&f);
    let class = witt::witt_class(&f);
    let split = split_if_within_cap(&f)?;
    let certified = &f.base_change(&d.basis)? == d.normal_form().gram();
    let mut r = Report::new("witt classify", seed)
        .input("gram", f.to_string())
        .result(json!({
            "class": class.value(),
            "split": split,
            "discriminant": witt::discriminant(&f),
            "rank": f.rank(),
            "decomposition": {
                "plus": d.plus,
                "minus": d.minus,
                "omega": d.omega,
                "split_planes": d.split,
            },
        }))
        .check("decomposition_certificate", certified, format!("basis {}", d.basis));
    if let Some(split) = split {
        r = r.check(
            "split_iff_class_zero",
            split == class.is_zero(),
            format!("split {split}, class {class}"),
        );
    }
    Ok(r)
}

pub fn witt_split(gram: &str, seed: u64) -> Result<Report> {
    let f = form(gram)?;
    let split = witt::is_split_with_cap(&f, witt::rank_cap_from_env())?;
    let class = witt::witt_class(&f);
    Ok(Report::new("witt split", seed)
        .input("gram", f.to_string())
        .result(split)
        .check(
            "split_iff_class_zero",
            split == class.is_zero(),
            format!("split {split}, class {class}"),
        ))
}

pub fn witt_sum(a: &str, b: &str, seed: u64) -> Result<Report> {
    let (f, g) = (form(a)?, form(b)?);
    let sum = witt::direct_sum(&f, &g);
    let (cf, cg, cs) = (witt::witt_class(&f), witt::witt_class(&g), witt::witt_class(&sum));
    Ok(Report::new("witt sum", seed)
        .input("gram", json!([f.to_string(), g.to_string()]))
        .result(json!({ "gram": sum.to_string(), "class": cs.value() }))
        .check("class_additive", cs == cf + cg, format!("{cf} + {cg} = {cs}")))
}

pub fn witt_vclass(q0: &str, q1: &str, seed: u64) -> Result<Report> {
    let (a, b) = (form(q0)?, form(q1)?);
    let forward = witt::v_class(&FormTriple::new(a.clone(), b.clone())?);
    let backward = witt::v_class(&FormTriple::new(b.clone(), a.clone())?);
    Ok(Report::new("witt vclass", seed)
        .input("q0", a.to_string())
        .input("q1", b.to_string())
        .result(forward.value())
        .check(
            "v_class_antisymmetric",
            forward == -backward,
            format!("[q0, q1] = {forward}, [q1, q0] = {backward}"),
        ))
}
