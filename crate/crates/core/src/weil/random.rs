//! Random words and relation-preserving rewrites, used to exercise the
//! projective cocycle.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::IntMatrix;

use super::{GenLetter, GenWord};

fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, g: usize) -> IntMatrix {
    let mut b = IntMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = rng.gen_range(-2..=2);
            b.set(i, j, v);
            b.set(j, i, v);
        }
    }
    b
}

/// A random elementary element of GL(g, Z): a transvection 1 ± e_ij, a sign
/// change, or a coordinate swap.
fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, g: usize) -> IntMatrix {
    let mut a = IntMatrix::identity(g);
    let choice = if g == 1 { 1 } else { rng.gen_range(0..3) };
    match choice {
        0 => {
            let i = rng.gen_range(0..g);
            let j = (i + rng.gen_range(1..g)) % g;
            a.set(i, j, if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        1 => {
            let i = rng.gen_range(0..g);
            a.set(i, i, -1);
        }
        _ => {
            let i = rng.gen_range(0..g);
            let j = (i + rng.gen_range(1..g)) % g;
            a.set(i, i, 0);
            a.set(j, j, 0);
            a.set(i, j, 1);
            a.set(j, i, 1);
        }
    }
    a
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, g: usize) -> GenLetter {
    match rng.gen_range(0..3) {
        0 => GenLetter::S,
        1 => GenLetter::Upper(random_symmetric(rng, g)),
        _ => GenLetter::Gl(random_unimodular(rng, g)),
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, g: usize, len: usize) -> GenWord {
    GenWord::new((0..len).map(|_| random_letter(rng, g)).collect())
}

fn positions<F: Fn(&[GenLetter]) -> bool>(w: &[GenLetter], width: usize, pred: F) -> Vec<usize> {
    if w.len() < width {
        return Vec::new();
    }
    (0..=w.len() - width).filter(|&i| pred(&w[i..i + width])).collect()
}

/// Applies one relation of Sp(2g, Z) at a random place. Returns false when
/// the chosen relation does not apply.
fn rewrite_step<R: Rng + ?Sized>(rng: &mut R, w: &mut Vec<GenLetter>, g: usize) -> bool {
    use GenLetter::{Gl, Upper, S};
    let minus_one = IntMatrix::identity(g).neg();
    let rule = rng.gen_range(0..10);
    let pick = |rng: &mut R, ps: Vec<usize>| ps.choose(rng).copied();
    match rule {
        0 => {
            let Some(i) = pick(rng, positions(w, 2, |s| s[0] == S && s[1] == S)) else { return false };
            w.splice(i..i + 2, [Gl(minus_one)]);
        }
        1 => {
            let ps = positions(w, 2, |s| matches!((&s[0], &s[1]), (Gl(_), Gl(_))));
            let Some(i) = pick(rng, ps) else { return false };
            let (Gl(a), Gl(b)) = (&w[i], &w[i + 1]) else { unreachable!() };
            let prod = a.mul(b);
            w.splice(i..i + 2, [Gl(prod)]);
        }
        2 => {
            let ps = positions(w, 2, |s| matches!((&s[0], &s[1]), (Upper(_), Upper(_))));
            let Some(i) = pick(rng, ps) else { return false };
            let (Upper(a), Upper(b)) = (&w[i], &w[i + 1]) else { unreachable!() };
            let sum = a.add(b);
            w.splice(i..i + 2, [Upper(sum)]);
        }
        3 => {
            let ps = positions(w, 2, |s| matches!((&s[0], &s[1]), (Gl(_), S)));
            let Some(i) = pick(rng, ps) else { return false };
            let Gl(x) = &w[i] else { unreachable!() };
            let inv_t = x.inverse_unimodular().expect("validated letter").transpose();
            w.splice(i..i + 2, [S, Gl(inv_t)]);
        }
        4 => {
            let ps = positions(w, 2, |s| matches!((&s[0], &s[1]), (Gl(_), Upper(_))));
            let Some(i) = pick(rng, ps) else { return false };
            let (Gl(a), Upper(b)) = (&w[i], &w[i + 1]) else { unreachable!() };
            let conj = a.mul(b).mul(&a.transpose());
            let a = a.clone();
            w.splice(i..i + 2, [Upper(conj), Gl(a)]);
        }
        5 => {
            let ps = positions(w, 4, |s| s.iter().all(|x| *x == S));
            let Some(i) = pick(rng, ps) else { return false };
            w.drain(i..i + 4);
        }
        6 => {
            let i = rng.gen_range(0..=w.len());
            w.splice(i..i, [S, S, S, S]);
        }
        7 => {
            let i = rng.gen_range(0..=w.len());
            let b = random_symmetric(rng, g);
            w.splice(i..i, [Upper(b.clone()), Upper(b.neg())]);
        }
        8 => {
            let i = rng.gen_range(0..=w.len());
            let a = random_unimodular(rng, g);
            let inv = a.inverse_unimodular().expect("unimodular");
            w.splice(i..i, [Gl(a), Gl(inv)]);
        }
        _ => {
            // (S·Upper(1))^3 = GL(-1), so (S·Upper(1))^3·GL(-1) = 1.
            let i = rng.gen_range(0..=w.len());
            let u = Upper(IntMatrix::identity(g));
            let ins = [S, u.clone(), S, u.clone(), S, u, Gl(minus_one)];
            w.splice(i..i, ins);
        }
    }
    true
}

/// A word with the same image in Sp(2g, Z) as w1·w2, obtained by `steps`
/// successful random rewrites of the concatenation.
pub fn rewrite_product<R: Rng + ?Sized>(
    rng: &mut R,
    w1: &GenWord,
    w2: &GenWord,
    g: usize,
    steps: usize,
) -> GenWord {
    let mut letters = w1.concat(w2).into_letters();
    let mut done = 0;
    let mut attempts = 0;
    while done < steps && attempts < 50 * steps.max(1) {
        attempts += 1;
        if rewrite_step(rng, &mut letters, g) {
            done += 1;
        }
    }
    GenWord::new(letters)
}
