//! Newton points, Kottwitz sets and inner forms of `GL_n`.
//!
//! Signs: a point of the affine Grassmannian of type `mu` changes the degree
//! of a bundle by `+sum(mu)`, so the Newton points of modifications of a
//! trivial bundle form `B(G, mu)`, bounded above by `mu_dom`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{format_with_multiplicities, q, qi, Rational};
use crate::rootdata::{Cocharacter, Composition, RationalVector, RootDataError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum KottwitzError {
    #[error("Newton point must have at least one slope")]
    Empty,
    #[error("slopes {0} are not weakly decreasing")]
    NotDecreasing(String),
    #[error("slope {slope} occurs {multiplicity} times; isocrystal integrality needs a multiple of its denominator")]
    NotIntegral { slope: String, multiplicity: usize },
    #[error("total slope {0} is not an integer")]
    NonIntegralTotal(String),
    #[error("block {d}/{h}: height must be positive and gcd(d, h) = 1")]
    InvalidBlock { d: i64, h: i64 },
    #[error("isocrystal {0} is not basic")]
    NonBasic(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("group rank must be at least 1")]
    ZeroRank,
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Newton point of an isocrystal of height `n`: weakly decreasing slopes,
/// each slope `d/h` occurring with multiplicity divisible by `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonPoint(#[serde(with = "crate::rational::serde_rational::vec")] Vec<Rational>);

impl NewtonPoint {
    pub fn new(slopes: Vec<Rational>) -> Result<Self, KottwitzError> {
        if slopes.is_empty() {
            return Err(KottwitzError::Empty);
        }
        if slopes.windows(2).any(|w| w[0] < w[1]) {
            return Err(KottwitzError::NotDecreasing(format_with_multiplicities(
                &slopes,
            )));
        }
        let nu = Self(slopes);
        for (slope, mult) in nu.runs() {
            if !(slope * qi(mult as i64)).is_integer() {
                return Err(KottwitzError::NotIntegral {
                    slope: crate::rational::format_rational(&slope),
                    multiplicity: mult,
                });
            }
        }
        Ok(nu)
    }

    /// Sorts the slopes before validating.
    pub fn from_unsorted(mut slopes: Vec<Rational>) -> Result<Self, KottwitzError> {
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(slopes)
    }

    /// Constant Newton point `(total/n, ..., total/n)`.
    pub fn basic(n: usize, total: i64) -> Self {
        Self(vec![q(total, n as i64); n])
    }

    /// Newton point with integral breakpoints at the given vertices, which
    /// must start at `(0, 0)` and have strictly increasing `x`.
    fn from_vertices(vertices: &[(usize, i64)]) -> Self {
        let mut slopes = Vec::new();
        for w in vertices.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let s = q(y1 - y0, (x1 - x0) as i64);
            slopes.extend(std::iter::repeat_n(s, x1 - x0));
        }
        Self(slopes)
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.0.first() == self.0.last()
    }

    pub fn to_vector(&self) -> RationalVector {
        RationalVector::new(self.0.clone()).expect("non-empty")
    }

    /// Distinct slopes with multiplicities, in decreasing order.
    pub fn runs(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((t, m)) if *t == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// Block type of the centralizer of `nu`: the runs of equal slopes.
    pub fn centralizer(&self) -> Composition {
        Composition::new(self.runs().into_iter().map(|(_, m)| m).collect())
            .expect("runs are positive")
    }

    /// Number of slopes `>= s`.
    pub fn mult_at_least(&self, s: Rational) -> usize {
        self.0.iter().filter(|&&x| x >= s).count()
    }
}

impl PartialOrd for NewtonPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on slope vectors, used for canonical output order.
impl Ord for NewtonPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_with_multiplicities(&self.0))
    }
}

/// `GL_n` or its inner form `G_b` for `b` basic of slope `twist_degree / n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDatum {
    pub n: usize,
    pub twist_degree: i64,
}

impl GroupDatum {
    pub fn new(n: usize, twist_degree: i64) -> Result<Self, KottwitzError> {
        if n == 0 {
            return Err(KottwitzError::ZeroRank);
        }
        Ok(Self { n, twist_degree })
    }

    pub fn split(n: usize) -> Result<Self, KottwitzError> {
        Self::new(n, 0)
    }

    pub fn is_split(&self) -> bool {
        self.twist_degree.rem_euclid(self.n as i64) == 0
    }

    pub fn twist_slope(&self) -> Rational {
        q(self.twist_degree, self.n as i64)
    }

    /// A Levi of type `(n_1, ..., n_r)` exists in the inner form iff every
    /// `n_i * twist / n` is an integer.
    pub fn levi_allowed(&self, levi: &Composition) -> bool {
        levi.n() == self.n
            && levi
                .parts()
                .iter()
                .all(|&p| (p as i64 * self.twist_degree) % self.n as i64 == 0)
    }
}

impl fmt::Display for GroupDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist_degree == 0 {
            write!(f, "GL_{}", self.n)
        } else {
            write!(f, "GL_{} twisted by {}", self.n, self.twist_degree)
        }
    }
}

/// One simple isocrystal `O(d/h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleBlock {
    pub d: i64,
    pub h: usize,
}

impl SimpleBlock {
    pub fn new(d: i64, h: i64) -> Result<Self, KottwitzError> {
        if h <= 0 || d.gcd(&h) != 1 {
            return Err(KottwitzError::InvalidBlock { d, h });
        }
        Ok(Self { d, h: h as usize })
    }

    pub fn slope(&self) -> Rational {
        q(self.d, self.h as i64)
    }
}

/// Dieudonne-Manin decomposition: a list of simple summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsocrystalBlocks {
    blocks: Vec<SimpleBlock>,
}

impl IsocrystalBlocks {
    pub fn new(blocks: Vec<SimpleBlock>) -> Result<Self, KottwitzError> {
        if blocks.is_empty() {
            return Err(KottwitzError::Empty);
        }
        Ok(Self { blocks })
    }

    /// Builds from `(d, h)` pairs, validating each.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, KottwitzError> {
        let blocks = pairs
            .iter()
            .map(|&(d, h)| SimpleBlock::new(d, h))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(blocks)
    }

    /// Basic isocrystal of height `n` and degree `deg`.
    pub fn basic(n: usize, deg: i64) -> Result<Self, KottwitzError> {
        if n == 0 {
            return Err(KottwitzError::ZeroRank);
        }
        let slope = q(deg, n as i64);
        let h = *slope.denom();
        let block = SimpleBlock::new(*slope.numer(), h)?;
        Self::new(vec![block; n / h as usize])
    }

    pub fn blocks(&self) -> &[SimpleBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.h).sum()
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|b| b.d).sum()
    }

    pub fn is_basic(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].slope() == w[1].slope())
    }

    pub fn newton_point(&self) -> NewtonPoint {
        let mut slopes: Vec<Rational> = self
            .blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.slope(), b.h))
            .collect();
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        NewtonPoint(slopes)
    }
}

impl fmt::Display for IsocrystalBlocks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("O({}/{})", b.d, b.h))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Kottwitz point of `nu`: its total slope, which must be an integer.
pub fn kappa(nu: &NewtonPoint) -> Result<i64, KottwitzError> {
    let total = nu.total();
    if !total.is_integer() {
        return Err(KottwitzError::NonIntegralTotal(
            crate::rational::format_rational(&total),
        ));
    }
    Ok(total.to_integer())
}

fn check_rank(g: &GroupDatum, mu: &Cocharacter) -> Result<(), KottwitzError> {
    if mu.len() != g.n {
        return Err(KottwitzError::RankMismatch {
            expected: g.n,
            got: mu.len(),
        });
    }
    Ok(())
}

/// `B(G, mu)`: Newton points `nu <= mu_dom` with `sum(nu) = sum(mu)`, sorted
/// in decreasing lexicographic order. Inner forms share the set of `GL_n`.
pub fn enumerate_b(g: &GroupDatum, mu: &Cocharacter) -> Result<Vec<NewtonPoint>, KottwitzError> {
    check_rank(g, mu)?;
    let mu_dom = mu.dominant();
    let bound: Vec<Rational> = mu_dom.to_rational().partial_sums();
    Ok(concave_paths_below(&bound, mu.total()))
}

/// The constant Newton point of degree `sum(mu)`.
pub fn basic_element(g: &GroupDatum, mu: &Cocharacter) -> Result<NewtonPoint, KottwitzError> {
    check_rank(g, mu)?;
    Ok(NewtonPoint::basic(g.n, mu.total()))
}

/// Possible Newton points of modifications of type `mu` of the basic
/// isocrystal `b`: degree `deg(b) + sum(mu)` and bounded by `nu_b + mu_dom`.
pub fn enumerate_b_mu_b(
    g: &GroupDatum,
    mu: &Cocharacter,
    b: &IsocrystalBlocks,
) -> Result<Vec<NewtonPoint>, KottwitzError> {
    check_rank(g, mu)?;
    if b.rank() != g.n {
        return Err(KottwitzError::RankMismatch {
            expected: g.n,
            got: b.rank(),
        });
    }
    if !b.is_basic() {
        return Err(KottwitzError::NonBasic(b.to_string()));
    }
    let slope = b.blocks()[0].slope();
    let bound_vec: Vec<Rational> = mu
        .dominant()
        .entries()
        .iter()
        .map(|&m| qi(m) + slope)
        .collect();
    let bound = RationalVector::new(bound_vec)?.partial_sums();
    Ok(concave_paths_below(&bound, b.degree() + mu.total()))
}

/// All concave polygons from `(0, 0)` to `(n, total)` with integral
/// breakpoints lying on or below the concave polygon with values
/// `bound[x - 1]` at `x = 1..=n`.
fn concave_paths_below(bound: &[Rational], total: i64) -> Vec<NewtonPoint> {
    let n = bound.len();
    if bound[n - 1] != qi(total) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut vertices = vec![(0usize, 0i64)];
    extend_paths(bound, total, None, &mut vertices, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn extend_paths(
    bound: &[Rational],
    total: i64,
    prev_slope: Option<Rational>,
    vertices: &mut Vec<(usize, i64)>,
    out: &mut Vec<NewtonPoint>,
) {
    let n = bound.len();
    let (x, y) = *vertices.last().expect("starts at origin");
    if x == n {
        out.push(NewtonPoint::from_vertices(vertices));
        return;
    }
    let rest = n - x;
    for x1 in x + 1..=n {
        let dx = (x1 - x) as i64;
        // The path stays above the chord to the endpoint and below the bound.
        let lo = (qi(y) + q((total - y) * dx, rest as i64))
            .ceil()
            .to_integer();
        let hi = bound[x1 - 1].floor().to_integer();
        let hi = if x1 == n { total.min(hi) } else { hi };
        let lo = if x1 == n { total.max(lo) } else { lo };
        for y1 in lo..=hi {
            let s = q(y1 - y, dx);
            if prev_slope.is_some_and(|p| s >= p) {
                continue;
            }
            if x1 < n && q(total - y1, (n - x1) as i64) >= s {
                continue;
            }
            vertices.push((x1, y1));
            extend_paths(bound, total, Some(s), vertices, out);
            vertices.pop();
        }
    }
}

/// Levi types of the inner form, in lexicographic order of parts.
pub fn allowed_levis(g: &GroupDatum) -> Vec<Composition> {
    Composition::all(g.n)
        .into_iter()
        .filter(|c| g.levi_allowed(c))
        .collect()
}

/// `[b]* = [b^{-1}]`: negate and re-sort.
pub fn dual_class(nu: &NewtonPoint) -> NewtonPoint {
    NewtonPoint(nu.0.iter().rev().map(|x| -x).collect())
}

/// `nu <= nu'` in the dominance order (equal totals, partial sums below).
pub fn newton_leq(a: &NewtonPoint, b: &NewtonPoint) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for (x, y) in a.0.iter().zip(&b.0) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Checks `nu in B(G, mu)`: same rank, same total and `nu <= mu_dom`.
pub fn in_b(g: &GroupDatum, mu: &Cocharacter, nu: &NewtonPoint) -> Result<bool, KottwitzError> {
    check_rank(g, mu)?;
    if nu.n() != g.n {
        return Ok(false);
    }
    let mu_dom = NewtonPoint(mu.dominant().to_rational().into_entries());
    Ok(newton_leq(nu, &mu_dom))
}
