//! Type-A root datum combinatorics.
//!
//! Cocharacters of the diagonal torus of `GL_n` are integer vectors, rational
//! cocharacters are [`RationalVector`]s, standard Levi subgroups are
//! [`Composition`]s of `n` and the Weyl group is the symmetric group acting by
//! permuting coordinates. The Galois action is trivial throughout, so
//! `pi_1(M) = Z^r` for a Levi of type `(n_1, ..., n_r)`, computed by block sums.

use std::fmt;
use std::ops::Range;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational_list, qi, Rational};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("vector must have at least one entry")]
    Empty,
    #[error("{0} is not weakly decreasing")]
    NotDominant(String),
    #[error("invalid composition {0:?}: parts must be positive")]
    InvalidComposition(Vec<usize>),
    #[error("{0:?} is not a permutation")]
    NotPermutation(Vec<usize>),
    #[error("{pattern} is not a rearrangement of {mu}")]
    NotRearrangement { mu: String, pattern: String },
}

fn check_len(left: usize, right: usize) -> Result<(), RootDataError> {
    if left != right {
        return Err(RootDataError::LengthMismatch { left, right });
    }
    Ok(())
}

/// Integer cocharacter of the diagonal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocharacter(Vec<i64>);

impl Cocharacter {
    pub fn new(entries: Vec<i64>) -> Result<Self, RootDataError> {
        if entries.is_empty() {
            return Err(RootDataError::Empty);
        }
        Ok(Self(entries))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n.max(1)])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// The dominant representative of the Weyl orbit.
    pub fn dominant(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    /// Minuscule for `GL_n`: all entries differ by at most one.
    pub fn is_minuscule(&self) -> bool {
        let max = self.0.iter().max().copied().unwrap_or(0);
        let min = self.0.iter().min().copied().unwrap_or(0);
        max - min <= 1
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&x| qi(x)).collect())
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rational cocharacter, an element of `X_*(T)_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalVector(#[serde(with = "crate::rational::serde_rational::vec")] Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, RootDataError> {
        if entries.is_empty() {
            return Err(RootDataError::Empty);
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sorted_desc(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    /// Partial sums `s_1, s_1 + s_2, ..., total`.
    pub fn partial_sums(&self) -> Vec<Rational> {
        self.0
            .iter()
            .scan(Rational::zero(), |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

impl From<&Cocharacter> for RationalVector {
    fn from(c: &Cocharacter) -> Self {
        c.to_rational()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_rational_list(&self.0))
    }
}

/// Composition `(n_1, ..., n_r)` of `n`: the block type of a standard Levi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, RootDataError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(RootDataError::InvalidComposition(parts));
        }
        Ok(Self(parts))
    }

    /// The one-block composition `(n)`, i.e. the whole group.
    pub fn whole(n: usize) -> Self {
        Self(vec![n])
    }

    /// Builds the composition of `n` whose internal block boundaries are the
    /// given cut positions (each in `1..n`).
    pub fn from_cuts(n: usize, cuts: &[usize]) -> Self {
        let mut cuts: Vec<usize> = cuts.iter().copied().filter(|&c| c > 0 && c < n).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut parts = Vec::with_capacity(cuts.len() + 1);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(n)) {
            parts.push(c - prev);
            prev = c;
        }
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn is_whole(&self) -> bool {
        self.0.len() == 1
    }

    /// Internal cut positions: cumulative block ends strictly below `n`.
    pub fn cuts(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        for &p in &self.0[..self.0.len() - 1] {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// Index ranges of the blocks.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&p| {
                let r = start..start + p;
                start += p;
                r
            })
            .collect()
    }

    /// True if every cut of `self` is a cut of `finer`.
    pub fn coarsens(&self, finer: &Composition) -> bool {
        let fine = finer.cuts();
        self.n() == finer.n() && self.cuts().iter().all(|c| fine.contains(c))
    }

    /// All `2^(n-1)` compositions of `n`, in lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Permutation of `{0, .., n-1}` in one-line notation, `w(i) = self.0[i]`.
///
/// Acts on vectors by moving coordinates: `(w.v)[w(i)] = v[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement(Vec<usize>);

impl WeylElement {
    pub fn new(one_line: Vec<usize>) -> Result<Self, RootDataError> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &x in &one_line {
            if x >= n || seen[x] {
                return Err(RootDataError::NotPermutation(one_line));
            }
            seen[x] = true;
        }
        Ok(Self(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    /// `w.v`, with `(w.v)[w(i)] = v[i]`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.0.len(), "permutation and vector sizes differ");
        let mut out = v.to_vec();
        for (i, &wi) in self.0.iter().enumerate() {
            out[wi] = v[i].clone();
        }
        out
    }

    /// `w^{-1}.v`, i.e. `(w^{-1}.v)[i] = v[w(i)]`.
    pub fn act_inverse<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.0.len(), "permutation and vector sizes differ");
        self.0.iter().map(|&wi| v[wi].clone()).collect()
    }

    /// All permutations of `n` letters in lexicographic order.
    pub fn all(n: usize) -> Vec<WeylElement> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![WeylElement(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(WeylElement(cur.clone()));
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn partial_sums_leq(a: &[Rational], b: &[Rational]) -> bool {
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Dominance order on dominant rational cocharacters: `a <= b` iff `b - a` is
/// a non-negative rational combination of positive coroots.
pub fn dominance_leq(a: &RationalVector, b: &RationalVector) -> Result<bool, RootDataError> {
    check_len(a.len(), b.len())?;
    for v in [a, b] {
        if !v.is_dominant() {
            return Err(RootDataError::NotDominant(v.to_string()));
        }
    }
    Ok(partial_sums_leq(a.entries(), b.entries()))
}

/// The order `a ⪯ b` on arbitrary (not necessarily dominant) rational
/// cocharacters.
pub fn coroot_order(a: &RationalVector, b: &RationalVector) -> Result<bool, RootDataError> {
    check_len(a.len(), b.len())?;
    Ok(partial_sums_leq(a.entries(), b.entries()))
}

/// Which multiple of the half sum of positive roots to pair with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoScale {
    Rho,
    TwoRho,
}

/// `<rho, v>` or `<2 rho, v>` with `2 rho = (n-1, n-3, ..., -(n-1))`.
pub fn rho_pairing(v: &RationalVector, scale: RhoScale) -> Rational {
    let n = v.len() as i64;
    let two_rho: Rational = v
        .entries()
        .iter()
        .enumerate()
        .map(|(i, x)| x * qi(n - 1 - 2 * i as i64))
        .sum();
    match scale {
        RhoScale::TwoRho => two_rho,
        RhoScale::Rho => two_rho / qi(2),
    }
}

/// Minimal length `w` with `w.mu = pattern`.
///
/// The `k`-th occurrence of each value in `mu` is sent to the `k`-th
/// occurrence of that value in `pattern`; any other choice adds inversions.
pub fn min_length_weyl(
    mu_dominant: &Cocharacter,
    pattern: &Cocharacter,
) -> Result<(WeylElement, usize), RootDataError> {
    check_len(mu_dominant.len(), pattern.len())?;
    if !mu_dominant.is_dominant() {
        return Err(RootDataError::NotDominant(mu_dominant.to_string()));
    }
    if mu_dominant.dominant() != pattern.dominant() {
        return Err(RootDataError::NotRearrangement {
            mu: mu_dominant.to_string(),
            pattern: pattern.to_string(),
        });
    }
    let n = mu_dominant.len();
    let mut used = vec![false; n];
    let mut one_line = Vec::with_capacity(n);
    for &value in mu_dominant.entries() {
        let target = (0..n)
            .find(|&j| !used[j] && pattern.entries()[j] == value)
            .expect("rearrangement checked above");
        used[target] = true;
        one_line.push(target);
    }
    let w = WeylElement(one_line);
    let len = w.length();
    Ok((w, len))
}

/// Image of `lam` in `pi_1(M) = Z^r`: the block sums.
pub fn sharp_m(lam: &Cocharacter, levi: &Composition) -> Result<Vec<i64>, RootDataError> {
    check_len(lam.len(), levi.n())?;
    Ok(levi
        .blocks()
        .into_iter()
        .map(|r| lam.entries()[r].iter().sum())
        .collect())
}

/// Rational block sums of a rational vector.
pub fn sharp_m_rational(
    v: &RationalVector,
    levi: &Composition,
) -> Result<Vec<Rational>, RootDataError> {
    check_len(v.len(), levi.n())?;
    Ok(levi
        .blocks()
        .into_iter()
        .map(|r| v.entries()[r].iter().sum())
        .collect())
}

/// The unique rational cocharacter central in `M` with the same image in
/// `pi_1(M)_Q` as `lam`: block averages.
pub fn av_m(lam: &Cocharacter, levi: &Composition) -> Result<RationalVector, RootDataError> {
    av_m_rational(&lam.to_rational(), levi)
}

pub fn av_m_rational(
    v: &RationalVector,
    levi: &Composition,
) -> Result<RationalVector, RootDataError> {
    let sums = sharp_m_rational(v, levi)?;
    let mut out = Vec::with_capacity(v.len());
    for (&size, sum) in levi.parts().iter().zip(sums) {
        let avg = sum / qi(size as i64);
        out.extend(std::iter::repeat_n(avg, size));
    }
    Ok(RationalVector(out))
}

/// Minimal length representatives of the double cosets `W_1 \ S_n / W_2`.
///
/// Double cosets are in bijection with non-negative integer matrices whose
/// row sums are the parts of `m2` (position blocks) and column sums the parts
/// of `m1` (value blocks). The shortest element of a coset fills each
/// position block with the smallest unused values of each value block, in
/// increasing order.
pub fn double_coset_min_reps(
    m1: &Composition,
    m2: &Composition,
) -> Result<Vec<WeylElement>, RootDataError> {
    check_len(m1.n(), m2.n())?;
    let rows = m2.parts();
    let cols = m1.parts();
    let mut tables = Vec::new();
    let mut table = vec![vec![0usize; cols.len()]; rows.len()];
    let mut col_left = cols.to_vec();
    fill_tables(rows, 0, 0, rows[0], &mut col_left, &mut table, &mut tables);

    let value_starts: Vec<usize> = m1.blocks().into_iter().map(|r| r.start).collect();
    let mut reps: Vec<WeylElement> = tables
        .into_iter()
        .map(|t| {
            let mut next_value = value_starts.clone();
            let mut one_line = Vec::with_capacity(m1.n());
            for row in &t {
                for (col, &count) in row.iter().enumerate() {
                    for _ in 0..count {
                        one_line.push(next_value[col]);
                        next_value[col] += 1;
                    }
                }
            }
            WeylElement(one_line)
        })
        .collect();
    reps.sort();
    Ok(reps)
}

fn fill_tables(
    rows: &[usize],
    row: usize,
    col: usize,
    row_left: usize,
    col_left: &mut [usize],
    table: &mut [Vec<usize>],
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if row == rows.len() {
        out.push(table.to_vec());
        return;
    }
    let ncols = col_left.len();
    if col == ncols - 1 {
        // Last column takes whatever the row still needs.
        if row_left > col_left[col] {
            return;
        }
        table[row][col] = row_left;
        col_left[col] -= row_left;
        let next_left = rows.get(row + 1).copied().unwrap_or(0);
        fill_tables(rows, row + 1, 0, next_left, col_left, table, out);
        col_left[col] += row_left;
        table[row][col] = 0;
        return;
    }
    for take in 0..=row_left.min(col_left[col]) {
        table[row][col] = take;
        col_left[col] -= take;
        fill_tables(rows, row, col + 1, row_left - take, col_left, table, out);
        col_left[col] += take;
    }
    table[row][col] = 0;
}
