//! Brute-force reference implementations.
//!
//! Each function recomputes a quantity by exhaustive search without going
//! through the fast path it checks. They are exponential and meant for small
//! ranks only.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::hnengine::{hn_polygon_lattice, FilteredSpace, HnError, Polygon, SubobjectLattice};
use crate::kottwitz::{GroupDatum, NewtonPoint};
use crate::rational::{q, qi, Rational};
use crate::rootdata::{Cocharacter, Composition, WeylElement};
use crate::strata::HNType;

/// `B(GL_n, mu)` by scanning all weakly decreasing vectors of rationals
/// with denominators at most `n` between `min(mu)` and `max(mu)`.
pub fn brute_force_b(mu: &Cocharacter) -> Vec<NewtonPoint> {
    let n = mu.len();
    let lo = *mu.entries().iter().min().expect("non-empty");
    let hi = *mu.entries().iter().max().expect("non-empty");
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for d in 1..=n as i64 {
        for a in lo * d..=hi * d {
            values.insert(q(a, d));
        }
    }
    let values: Vec<Rational> = values.into_iter().rev().collect();
    let mut bound = Vec::with_capacity(n);
    let mut acc = 0i64;
    for &m in mu.dominant().entries() {
        acc += m;
        bound.push(qi(acc));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    scan(&values, 0, &bound, Rational::zero(), &mut cur, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn scan(
    values: &[Rational],
    start: usize,
    bound: &[Rational],
    sum: Rational,
    cur: &mut Vec<Rational>,
    out: &mut Vec<NewtonPoint>,
) {
    let n = bound.len();
    if cur.len() == n {
        if sum == bound[n - 1] {
            if let Ok(nu) = NewtonPoint::new(cur.clone()) {
                out.push(nu);
            }
        }
        return;
    }
    let left = (n - cur.len() - 1) as i64;
    for (i, &v) in values.iter().enumerate().skip(start) {
        let s = sum + v;
        // later entries are at most v, so the total would fall short
        if s + v * qi(left) < bound[n - 1] {
            break;
        }
        if s > bound[cur.len()] {
            continue;
        }
        cur.push(v);
        scan(values, i, bound, s, cur, out);
        cur.pop();
    }
}

/// Minimal length of `w` with `w.mu = pattern`, by scanning `S_n`.
pub fn brute_min_length(mu: &Cocharacter, pattern: &Cocharacter) -> Option<usize> {
    WeylElement::all(mu.len())
        .into_iter()
        .filter(|w| w.act(mu.entries()) == pattern.entries())
        .map(|w| w.length())
        .min()
}

fn young_generators(c: &Composition) -> Vec<usize> {
    let cuts = c.cuts();
    (0..c.n().saturating_sub(1))
        .filter(|i| !cuts.contains(&(i + 1)))
        .collect()
}

/// Shortest elements of the double cosets `W_1 w W_2`, found as connected
/// components of `S_n` under left multiplication by simple reflections of
/// `W_1` and right multiplication by those of `W_2`.
pub fn brute_double_cosets(m1: &Composition, m2: &Composition) -> Vec<WeylElement> {
    let all = WeylElement::all(m1.n());
    let index = |w: &[usize]| {
        all.binary_search_by(|x| x.one_line().cmp(w))
            .expect("permutation")
    };
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let left = young_generators(m1);
    let right = young_generators(m2);
    for (i, w) in all.iter().enumerate() {
        let mut neighbours = Vec::new();
        for &s in &left {
            // s w: swap the values s and s + 1
            let v: Vec<usize> = w
                .one_line()
                .iter()
                .map(|&x| {
                    if x == s {
                        s + 1
                    } else if x == s + 1 {
                        s
                    } else {
                        x
                    }
                })
                .collect();
            neighbours.push(v);
        }
        for &s in &right {
            let mut v = w.one_line().to_vec();
            v.swap(s, s + 1);
            neighbours.push(v);
        }
        for v in neighbours {
            let j = index(&v);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut best: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for i in 0..all.len() {
        let root = find(&mut parent, i);
        let len = all[i].length();
        let entry = best.entry(root).or_insert((len, i));
        if len < entry.0 {
            *entry = (len, i);
        }
    }
    let mut reps: Vec<WeylElement> = best.values().map(|&(_, i)| all[i].clone()).collect();
    reps.sort();
    reps
}

/// `<2 rho, v>` as the sum over positive roots `e_i - e_j` of `v_i - v_j`.
pub fn two_rho_by_roots(v: &[Rational]) -> Rational {
    let mut out = Rational::zero();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out += v[i] - v[j];
        }
    }
    out
}

fn partial_sums_leq(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// `Theta(mu, [b'])` by scanning every integer vector in the box
/// `[min mu, max mu]^n`.
pub fn brute_theta(g: &GroupDatum, mu: &Cocharacter, nu: &NewtonPoint) -> Vec<HNType> {
    let levi = nu.centralizer();
    if !g.levi_allowed(&levi) {
        return Vec::new();
    }
    let n = mu.len();
    let lo = *mu.entries().iter().min().expect("non-empty");
    let hi = *mu.entries().iter().max().expect("non-empty");
    let mu_dom = mu.dominant();
    let mut out = Vec::new();
    let mut v = vec![lo; n];
    loop {
        let blockwise_inc = levi
            .blocks()
            .into_iter()
            .all(|r| v[r].windows(2).all(|w| w[0] <= w[1]));
        let sums_match = levi.blocks().into_iter().all(|r| {
            let s: i64 = v[r.clone()].iter().sum();
            qi(s) == nu.slopes()[r].iter().sum::<Rational>()
        });
        if blockwise_inc && sums_match {
            let mut sorted = v.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if partial_sums_leq(&sorted, mu_dom.entries()) {
                let lam = Cocharacter::new(v.iter().map(|x| -x).collect()).expect("non-empty");
                out.push(HNType {
                    levi: levi.clone(),
                    lam,
                });
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if v[k] < hi {
                v[k] += 1;
                break;
            }
            v[k] = lo;
        }
    }
}

/// HN types with `-lambda` a rearrangement of `mu`, scanning all
/// permutations.
pub fn brute_dor(g: &GroupDatum, mu: &Cocharacter, nu: &NewtonPoint) -> Vec<HNType> {
    let levi = nu.centralizer();
    if !g.levi_allowed(&levi) {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    for w in WeylElement::all(mu.len()) {
        let v = w.act(mu.entries());
        let ok = levi.blocks().into_iter().all(|r| {
            v[r.clone()].windows(2).all(|p| p[0] <= p[1])
                && qi(v[r.clone()].iter().sum()) == nu.slopes()[r].iter().sum::<Rational>()
        });
        if ok {
            let lam = Cocharacter::new(v.iter().map(|x| -x).collect()).expect("non-empty");
            seen.insert(HNType {
                levi: levi.clone(),
                lam,
            });
        }
    }
    seen.into_iter().collect()
}

fn touches(mu: &Cocharacter, nu: &NewtonPoint, cut: usize) -> bool {
    let hodge: i64 = mu.dominant().entries()[..cut].iter().sum();
    let newton: Rational = nu.slopes()[..cut].iter().sum();
    qi(hodge) == newton
}

fn is_hnd(mu: &Cocharacter, nu: &NewtonPoint, levi: &Composition) -> bool {
    levi.cuts()
        .into_iter()
        .all(|c| nu.slopes()[c - 1] != nu.slopes()[c] && touches(mu, nu, c))
}

/// The finest Levi for which `(mu, nu)` is Hodge-Newton decomposable, by
/// scanning all compositions. Panics if the finest one is not unique.
pub fn brute_smallest_hnd_levi(mu: &Cocharacter, nu: &NewtonPoint) -> Composition {
    let valid: Vec<Composition> = Composition::all(nu.n())
        .into_iter()
        .filter(|c| is_hnd(mu, nu, c))
        .collect();
    let finest = valid
        .iter()
        .max_by_key(|c| c.num_blocks())
        .expect("(n) is always valid")
        .clone();
    assert!(
        valid.iter().all(|c| c.coarsens(&finest)),
        "valid Levis have no common refinement among themselves"
    );
    finest
}

/// Whether every non-basic class of `B(GL_n, mu)` is Hodge-Newton
/// decomposable, with the first counterexample.
pub fn brute_fully_hnd(mu: &Cocharacter) -> (bool, Option<NewtonPoint>) {
    for nu in brute_force_b(mu) {
        if !nu.is_basic() && brute_smallest_hnd_levi(mu, &nu).is_whole() {
            return (false, Some(nu));
        }
    }
    (true, None)
}

/// Lattice of spans of subsets of the adapted basis of a filtered space,
/// labelled by measuring each span against the filtration.
pub fn filtered_subset_lattice(space: &FilteredSpace) -> Result<SubobjectLattice, HnError> {
    let n = space.dim();
    let size = 1usize << n;
    let mut labels = Vec::with_capacity(size);
    for s in 0..size {
        let vectors: Vec<Vec<Rational>> = (0..n)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| space.column(i))
            .collect();
        labels.push(space.subspace_label(&vectors)?);
    }
    let leq: Vec<Vec<bool>> = (0..size)
        .map(|a| (0..size).map(|b| a & b == a).collect())
        .collect();
    SubobjectLattice::from_matrix(labels, leq)
}

/// HN polygon of a filtered space through its subset lattice.
pub fn brute_filtered_hn(space: &FilteredSpace) -> Result<Polygon, HnError> {
    Ok(hn_polygon_lattice(&filtered_subset_lattice(space)?))
}
