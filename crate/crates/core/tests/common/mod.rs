#![allow(dead_code)]

use hnstrat::{q, qi, Cocharacter, NewtonPoint, Rational};

pub fn cc(v: &[i64]) -> Cocharacter {
    Cocharacter::new(v.to_vec()).unwrap()
}

pub fn np(v: &[Rational]) -> NewtonPoint {
    NewtonPoint::new(v.to_vec()).unwrap()
}

pub fn rep(v: Rational, k: usize) -> Vec<Rational> {
    vec![v; k]
}

pub fn slopes(parts: &[(i64, i64, usize)]) -> NewtonPoint {
    let v: Vec<Rational> = parts
        .iter()
        .flat_map(|&(a, b, k)| rep(q(a, b), k))
        .collect();
    np(&v)
}

/// All dominant integer vectors of length `n` with entries in `[lo, hi]`.
pub fn dominant_cocharacters(n: usize, lo: i64, hi: i64) -> Vec<Cocharacter> {
    fn rec(n: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Cocharacter>) {
        if cur.len() == n {
            out.push(Cocharacter::new(cur.clone()).unwrap());
            return;
        }
        for x in (lo..=max).rev() {
            cur.push(x);
            rec(n, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Minuscule dominant cocharacters `(1^k, 0^{n-k})` and their shifts by -1.
pub fn minuscule_cocharacters(n: usize) -> Vec<Cocharacter> {
    let mut out = Vec::new();
    for shift in [-1, 0] {
        for k in 0..=n {
            let v: Vec<i64> = (0..n)
                .map(|i| if i < k { 1 + shift } else { shift })
                .collect();
            out.push(Cocharacter::new(v).unwrap());
        }
    }
    out
}

pub fn ratvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| qi(x)).collect()
}
