//! Harder-Narasimhan formalism on finite lattices of subobjects.
//!
//! A [`SubobjectLattice`] is a finite poset with bottom and top whose
//! elements carry a rank and a degree. Its HN polygon is the upper concave
//! envelope of the labels; the HN filtration picks, from the current step,
//! the element above it with maximal quotient slope and then maximal rank.
//!
//! Two concrete sources of lattices are provided: block-scalar
//! modifications of bundles on the curve ([`ModificationInstance`]) and
//! rational filtered vector spaces ([`FilteredSpace`]).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, q, qi, Rational};
use crate::rootdata::Cocharacter;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum HnError {
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("order relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("lattice has no unique bottom element")]
    NoBottom,
    #[error("lattice has no unique top element")]
    NoTop,
    #[error("bottom element must have rank 0 and degree 0")]
    BadBottom,
    #[error("rank does not increase strictly from element {lower} to element {upper}")]
    RankNotIncreasing { lower: usize, upper: usize },
    #[error("elements {first} and {second} both maximise slope {slope} at rank {rank}")]
    AmbiguousMaximizer {
        first: usize,
        second: usize,
        slope: String,
        rank: usize,
    },
    #[error("quotient slopes of the filtration do not strictly decrease at element {0}")]
    SlopesNotDecreasing(usize),
    #[error("elements do not form a chain at position {0}")]
    NotAChain(usize),
    #[error("filtration polygon lies above the HN polygon at rank {0}")]
    AboveHn(usize),
    #[error("filtration meets the HN polygon everywhere but misses its vertex at rank {0}")]
    MissingHnVertex(usize),
    #[error("polygon ranks differ ({left} vs {right})")]
    RankMismatch { left: usize, right: usize },
    #[error("block ({d}, {h}, {a}): height must be positive and gcd(d, h) = 1")]
    InvalidBlock { d: i64, h: i64, a: i64 },
    #[error("instance has no blocks")]
    EmptyInstance,
    #[error("matrix must be square of size {expected}")]
    NotSquare { expected: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Vertex `(rank, degree)` of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub rank: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub deg: Rational,
}

/// Piecewise linear graph through its vertices, starting at `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Vertex>,
}

impl Polygon {
    /// Polygon through the given points, dropping points that lie on the
    /// segment joining their neighbours.
    fn through(points: &[(usize, Rational)]) -> Self {
        let mut vertices: Vec<Vertex> = Vec::with_capacity(points.len());
        for &(rank, deg) in points {
            if vertices.len() >= 2 {
                let a = vertices[vertices.len() - 2];
                let b = vertices[vertices.len() - 1];
                if segment_slope(a, b) == segment_slope(b, Vertex { rank, deg }) {
                    vertices.pop();
                }
            }
            vertices.push(Vertex { rank, deg });
        }
        Self { vertices }
    }

    /// Polygon whose unit segments have the given slopes, in order.
    pub fn from_slopes(slopes: &[Rational]) -> Self {
        let mut points = vec![(0usize, Rational::zero())];
        let mut acc = Rational::zero();
        for (i, s) in slopes.iter().enumerate() {
            acc += s;
            points.push((i + 1, acc));
        }
        Self::through(&points)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.rank)
    }

    pub fn degree(&self) -> Rational {
        self.vertices.last().map_or_else(Rational::zero, |v| v.deg)
    }

    /// Slopes of the unit segments `[x, x + 1]`.
    pub fn slopes(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.rank());
        for w in self.vertices.windows(2) {
            let s = segment_slope(w[0], w[1]);
            out.extend(std::iter::repeat_n(s, w[1].rank - w[0].rank));
        }
        out
    }

    /// Value at integer rank `x`, interpolating linearly.
    pub fn value_at(&self, x: usize) -> Rational {
        for w in self.vertices.windows(2) {
            if x <= w[1].rank {
                return w[0].deg + segment_slope(w[0], w[1]) * qi((x - w[0].rank) as i64);
            }
        }
        self.degree()
    }

    /// Segment slopes strictly decrease.
    pub fn is_concave(&self) -> bool {
        let seg: Vec<Rational> = self
            .vertices
            .windows(2)
            .map(|w| segment_slope(w[0], w[1]))
            .collect();
        seg.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({},{})", v.rank, format_rational(&v.deg)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn segment_slope(a: Vertex, b: Vertex) -> Rational {
    (b.deg - a.deg) / qi((b.rank - a.rank) as i64)
}

/// Finite poset of subobjects labelled by rank and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubobjectLattice {
    ranks: Vec<usize>,
    degs: Vec<i64>,
    leq: Vec<Vec<bool>>,
    bottom: usize,
    top: usize,
}

impl SubobjectLattice {
    /// Lattice generated by `relations` (pairs `a <= b`) under reflexive and
    /// transitive closure.
    pub fn new(labels: Vec<(usize, i64)>, relations: &[(usize, usize)]) -> Result<Self, HnError> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(HnError::IndexOutOfRange(a.max(b)));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(labels, leq)
    }

    /// Lattice with an explicit order matrix, `leq[a][b]` meaning `a <= b`.
    pub fn from_matrix(labels: Vec<(usize, i64)>, leq: Vec<Vec<bool>>) -> Result<Self, HnError> {
        let n = labels.len();
        if n == 0 {
            return Err(HnError::EmptyLattice);
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(HnError::NotPartialOrder(
                "matrix size differs from element count".into(),
            ));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(HnError::NotPartialOrder(format!("{i} <= {i} fails")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(HnError::NotPartialOrder(format!(
                        "{i} and {j} are mutually below"
                    )));
                }
                if leq[i][j] {
                    for k in 0..n {
                        if leq[j][k] && !leq[i][k] {
                            return Err(HnError::NotPartialOrder(format!(
                                "{i} <= {j} <= {k} but not {i} <= {k}"
                            )));
                        }
                    }
                }
            }
        }
        let bottoms: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| leq[i][j])).collect();
        let tops: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| leq[j][i])).collect();
        let bottom = *bottoms.first().ok_or(HnError::NoBottom)?;
        let top = *tops.first().ok_or(HnError::NoTop)?;
        let (ranks, degs): (Vec<usize>, Vec<i64>) = labels.into_iter().unzip();
        if ranks[bottom] != 0 || degs[bottom] != 0 {
            return Err(HnError::BadBottom);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && ranks[i] >= ranks[j] {
                    return Err(HnError::RankNotIncreasing { lower: i, upper: j });
                }
            }
        }
        Ok(Self {
            ranks,
            degs,
            leq,
            bottom,
            top,
        })
    }

    /// Totally ordered lattice, labels listed from bottom to top.
    pub fn chain(labels: Vec<(usize, i64)>) -> Result<Self, HnError> {
        let rel: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, &rel)
    }

    /// Boolean lattice of sub-sums of the given `(rank, degree)` blocks.
    /// Element `s` is the bitmask of the blocks it contains.
    pub fn block_subsets(blocks: &[(usize, i64)]) -> Result<Self, HnError> {
        let k = blocks.len();
        let size = 1usize << k;
        let labels: Vec<(usize, i64)> = (0..size)
            .map(|s| {
                (0..k)
                    .filter(|i| s >> i & 1 == 1)
                    .fold((0, 0), |(r, d), i| (r + blocks[i].0, d + blocks[i].1))
            })
            .collect();
        let leq: Vec<Vec<bool>> = (0..size)
            .map(|a| (0..size).map(|b| a & b == a).collect())
            .collect();
        Self::from_matrix(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, e: usize) -> usize {
        self.ranks[e]
    }

    pub fn deg(&self, e: usize) -> i64 {
        self.degs[e]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn point(&self, e: usize) -> (usize, Rational) {
        (self.ranks[e], qi(self.degs[e]))
    }
}

/// Upper concave envelope of the `(rank, degree)` labels.
pub fn hn_polygon_lattice(lattice: &SubobjectLattice) -> Polygon {
    let mut best: Vec<Option<i64>> = vec![None; lattice.rank(lattice.top()) + 1];
    for e in 0..lattice.len() {
        let slot = &mut best[lattice.rank(e)];
        *slot = Some(slot.map_or(lattice.deg(e), |d| d.max(lattice.deg(e))));
    }
    let points: Vec<(i64, i64)> = best
        .iter()
        .enumerate()
        .filter_map(|(x, d)| d.map(|d| (x as i64, d)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let pts: Vec<(usize, Rational)> = hull.into_iter().map(|(x, y)| (x as usize, qi(y))).collect();
    Polygon::through(&pts)
}

/// The HN filtration as a chain of element indices from bottom to top.
pub fn hn_filtration_lattice(lattice: &SubobjectLattice) -> Result<Vec<usize>, HnError> {
    let mut chain = vec![lattice.bottom()];
    let mut last_slope: Option<Rational> = None;
    let mut cur = lattice.bottom();
    while cur != lattice.top() {
        let (r0, d0) = lattice.point(cur);
        let mut best: Vec<(Rational, usize, usize)> = Vec::new();
        for e in 0..lattice.len() {
            if e == cur || !lattice.leq(cur, e) {
                continue;
            }
            let (r, d) = lattice.point(e);
            let slope = (d - d0) / qi((r - r0) as i64);
            let key = (slope, r);
            match best.first().map(|&(s, rk, _)| key.cmp(&(s, rk))) {
                None | Some(Ordering::Equal) => best.push((slope, r, e)),
                Some(Ordering::Greater) => best = vec![(slope, r, e)],
                Some(Ordering::Less) => {}
            }
        }
        let &(slope, rank, next) = best.first().expect("top lies above every element");
        if best.len() > 1 {
            return Err(HnError::AmbiguousMaximizer {
                first: best[0].2,
                second: best[1].2,
                slope: format_rational(&slope),
                rank,
            });
        }
        if last_slope.is_some_and(|s| slope >= s) {
            return Err(HnError::SlopesNotDecreasing(next));
        }
        last_slope = Some(slope);
        chain.push(next);
        cur = next;
    }
    Ok(chain)
}

/// Outcome of comparing a filtration with the HN polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationVerdict {
    Below,
    EqualRefinement,
}

/// Compares the polygon of the chain `filtration` (bottom and top are added
/// if missing) with `hn`.
pub fn compare_filtration(
    lattice: &SubobjectLattice,
    filtration: &[usize],
    hn: &Polygon,
) -> Result<FiltrationVerdict, HnError> {
    let mut chain: Vec<usize> = Vec::with_capacity(filtration.len() + 2);
    if filtration.first() != Some(&lattice.bottom()) {
        chain.push(lattice.bottom());
    }
    for &e in filtration {
        if e >= lattice.len() {
            return Err(HnError::IndexOutOfRange(e));
        }
        chain.push(e);
    }
    if chain.last() != Some(&lattice.top()) {
        chain.push(lattice.top());
    }
    for (i, w) in chain.windows(2).enumerate() {
        if w[0] == w[1] || !lattice.leq(w[0], w[1]) {
            return Err(HnError::NotAChain(i + 1));
        }
    }
    let total = lattice.rank(lattice.top());
    if hn.rank() != total {
        return Err(HnError::RankMismatch {
            left: total,
            right: hn.rank(),
        });
    }
    let points: Vec<(usize, Rational)> = chain.iter().map(|&e| lattice.point(e)).collect();
    let poly = Polygon::through(&points);
    let mut strictly_below = false;
    for x in 0..=total {
        match poly.value_at(x).cmp(&hn.value_at(x)) {
            Ordering::Greater => return Err(HnError::AboveHn(x)),
            Ordering::Less => strictly_below = true,
            Ordering::Equal => {}
        }
    }
    if strictly_below {
        return Ok(FiltrationVerdict::Below);
    }
    for v in hn.vertices() {
        if !points.iter().any(|&(r, _)| r == v.rank) {
            return Err(HnError::MissingHnVertex(v.rank));
        }
    }
    Ok(FiltrationVerdict::EqualRefinement)
}

/// Simple summand `O(d/h)` twisted by `a` at the modification point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModBlock {
    pub d: i64,
    pub h: usize,
    pub a: i64,
}

impl ModBlock {
    pub fn new(d: i64, h: i64, a: i64) -> Result<Self, HnError> {
        if h <= 0 || d.gcd(&h) != 1 {
            return Err(HnError::InvalidBlock { d, h, a });
        }
        Ok(Self {
            d,
            h: h as usize,
            a,
        })
    }

    pub fn degree(&self) -> i64 {
        self.d + self.a * self.h as i64
    }

    pub fn slope(&self) -> Rational {
        q(self.degree(), self.h as i64)
    }
}

/// Block-scalar modification of a bundle on the curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModificationInstance {
    blocks: Vec<ModBlock>,
}

impl ModificationInstance {
    pub fn new(blocks: Vec<ModBlock>) -> Result<Self, HnError> {
        if blocks.is_empty() {
            return Err(HnError::EmptyInstance);
        }
        Ok(Self { blocks })
    }

    pub fn from_triples(triples: &[(i64, i64, i64)]) -> Result<Self, HnError> {
        let blocks = triples
            .iter()
            .map(|&(d, h, a)| ModBlock::new(d, h, a))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[ModBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.h).sum()
    }

    /// Direct sum.
    pub fn concat(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Self { blocks }
    }

    /// Tensor product: `O(s) (x) O(t)` is semistable of slope `s + t` and
    /// rank `h h'`, a sum of copies of the simple bundle of that slope.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut blocks = Vec::new();
        for x in &self.blocks {
            for y in &other.blocks {
                let base = q(x.d, x.h as i64) + q(y.d, y.h as i64);
                let h = *base.denom() as usize;
                let copies = x.h * y.h / h;
                let block = ModBlock {
                    d: *base.numer(),
                    h,
                    a: x.a + y.a,
                };
                blocks.extend(std::iter::repeat_n(block, copies));
            }
        }
        Self { blocks }
    }

    /// Lattice of sub-sums of the simple blocks.
    pub fn block_subset_lattice(&self) -> Result<SubobjectLattice, HnError> {
        let labels: Vec<(usize, i64)> = self.blocks.iter().map(|b| (b.h, b.degree())).collect();
        SubobjectLattice::block_subsets(&labels)
    }

    /// Block slopes repeated by height, sorted decreasingly.
    pub fn sorted_slopes(&self) -> Vec<Rational> {
        let mut slopes: Vec<Rational> = self
            .blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.slope(), b.h))
            .collect();
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        slopes
    }
}

/// `(rank, degree)` of the modified bundle.
pub fn deg_rank(inst: &ModificationInstance) -> (usize, i64) {
    (inst.rank(), inst.blocks.iter().map(ModBlock::degree).sum())
}

/// HN polygon of a block-scalar modification: every simple block is stable,
/// so the polygon has the sorted block slopes.
pub fn modification_hn(inst: &ModificationInstance) -> Polygon {
    Polygon::from_slopes(&inst.sorted_slopes())
}

/// Slopes of the tensor product: all pairwise sums, sorted decreasingly.
pub fn tensor_polygon(p: &[Rational], r: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p
        .iter()
        .flat_map(|a| r.iter().map(move |b| a + b))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Square rational matrix, stored as rows.
pub type Matrix = Vec<Vec<Rational>>;

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Rank of the span of `vectors`, by Gaussian elimination.
pub fn span_rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = BigRational::one() / rows[rank][col].clone();
        for c in col..width {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Vector space `F^n` with the filtration whose `k`-th step is spanned by
/// the columns `g e_i` with `jumps[i] >= k`.
#[derive(Clone, Debug)]
pub struct FilteredSpace {
    columns: Vec<Vec<BigRational>>,
    jumps: Vec<i64>,
}

impl FilteredSpace {
    pub fn new(g: &Matrix, jumps: &Cocharacter) -> Result<Self, HnError> {
        let n = jumps.len();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(HnError::NotSquare { expected: n });
        }
        let columns: Vec<Vec<BigRational>> = (0..n)
            .map(|j| (0..n).map(|i| big(&g[i][j])).collect())
            .collect();
        if span_rank(&columns) < n {
            return Err(HnError::Singular);
        }
        Ok(Self {
            columns,
            jumps: jumps.entries().to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.jumps.len()
    }

    pub fn jumps(&self) -> &[i64] {
        &self.jumps
    }

    fn fil(&self, k: i64) -> Vec<Vec<BigRational>> {
        self.columns
            .iter()
            .zip(&self.jumps)
            .filter(|(_, &j)| j >= k)
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// `(dim V', deg(Fil restricted to V'))` for the span `V'` of `vectors`,
    /// where the degree is the sum of the jumps of the induced filtration.
    pub fn subspace_label(&self, vectors: &[Vec<Rational>]) -> Result<(usize, i64), HnError> {
        let n = self.dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(HnError::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let sub: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().map(big).collect())
            .collect();
        let dim_sub = span_rank(&sub);
        if dim_sub == 0 {
            return Ok((0, 0));
        }
        let lo = *self.jumps.iter().min().expect("non-empty");
        let hi = *self.jumps.iter().max().expect("non-empty");
        // deg = lo * dim V' + sum_{k > lo} dim(Fil^k cap V')
        let mut deg = lo * dim_sub as i64;
        for k in lo + 1..=hi {
            let fil = self.fil(k);
            let mut joint = fil.clone();
            joint.extend(sub.iter().cloned());
            let meet = fil.len() + dim_sub - span_rank(&joint);
            deg += meet as i64;
        }
        Ok((dim_sub, deg))
    }

    /// The adapted basis vectors as rationals (columns of `g`).
    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.columns[j]
            .iter()
            .map(|x| {
                let n: i64 = x.numer().try_into().expect("entries fit in i64");
                let d: i64 = x.denom().try_into().expect("entries fit in i64");
                q(n, d)
            })
            .collect()
    }
}

/// HN polygon of the filtered vector space `(F^n, Fil_g)` of type `jumps`.
/// Over a rational classical point the filtration is its own HN filtration,
/// so the slopes are the sorted jumps.
pub fn filtered_hn(g: &Matrix, jumps: &Cocharacter) -> Result<Polygon, HnError> {
    FilteredSpace::new(g, jumps)?;
    let slopes: Vec<Rational> = jumps.dominant().entries().iter().map(|&j| qi(j)).collect();
    Ok(Polygon::from_slopes(&slopes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_lattice() -> SubobjectLattice {
        // bottom, (1,1), (2,1), top (3,0) in a chain plus a side element (1,0)
        SubobjectLattice::new(
            vec![(0, 0), (1, 1), (2, 1), (3, 0), (1, 0)],
            &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 2)],
        )
        .unwrap()
    }

    fn slopes(p: &Polygon) -> Vec<Rational> {
        p.slopes()
    }

    #[test]
    fn deg_rank_examples() {
        let i = ModificationInstance::from_triples(&[(0, 1, 1), (0, 1, 0)]).unwrap();
        assert_eq!(deg_rank(&i), (2, 1));
        let j = ModificationInstance::from_triples(&[(5, 7, 0)]).unwrap();
        assert_eq!(deg_rank(&j), (7, 5));
        let k = ModificationInstance::from_triples(&[(5, 7, 1)]).unwrap();
        assert_eq!(deg_rank(&k), (7, 12));
        assert!(ModificationInstance::from_triples(&[(2, 4, 0)]).is_err());
    }

    #[test]
    fn hull_examples() {
        let l = example_lattice();
        let p = hn_polygon_lattice(&l);
        let v: Vec<(usize, Rational)> = p.vertices().iter().map(|v| (v.rank, v.deg)).collect();
        assert_eq!(v, vec![(0, qi(0)), (1, qi(1)), (2, qi(1)), (3, qi(0))]);

        let below = SubobjectLattice::chain(vec![(0, 0), (1, 1), (2, 0), (3, 0)]).unwrap();
        let v: Vec<usize> = hn_polygon_lattice(&below)
            .vertices()
            .iter()
            .map(|v| v.rank)
            .collect();
        assert_eq!(v, vec![0, 1, 3]);
        assert!(p.is_concave());

        let semistable = SubobjectLattice::chain(vec![(0, 0), (2, 3)]).unwrap();
        assert_eq!(hn_polygon_lattice(&semistable).vertices().len(), 2);

        let inst = ModificationInstance::from_triples(&[(0, 1, 2), (0, 1, 0), (0, 1, 1)]).unwrap();
        let lat = inst.block_subset_lattice().unwrap();
        assert_eq!(slopes(&hn_polygon_lattice(&lat)), vec![qi(2), qi(1), qi(0)]);
    }

    #[test]
    fn filtration_examples() {
        let l = example_lattice();
        assert_eq!(hn_filtration_lattice(&l).unwrap(), vec![0, 1, 2, 3]);
        let semistable = SubobjectLattice::chain(vec![(0, 0), (2, 3)]).unwrap();
        assert_eq!(hn_filtration_lattice(&semistable).unwrap(), vec![0, 1]);

        let rel = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)];
        let ambiguous =
            SubobjectLattice::new(vec![(0, 0), (1, 1), (1, 1), (2, 1), (3, 0)], &rel).unwrap();
        assert!(matches!(
            hn_filtration_lattice(&ambiguous),
            Err(HnError::AmbiguousMaximizer { rank: 1, .. })
        ));
        let resolved =
            SubobjectLattice::new(vec![(0, 0), (1, 1), (1, 1), (2, 2), (3, 0)], &rel).unwrap();
        assert_eq!(hn_filtration_lattice(&resolved).unwrap(), vec![0, 3, 4]);
    }

    #[test]
    fn comparison_examples() {
        let l = example_lattice();
        let hn = hn_polygon_lattice(&l);
        assert_eq!(
            compare_filtration(&l, &[0, 2, 3], &hn).unwrap(),
            FiltrationVerdict::Below
        );
        let chain = hn_filtration_lattice(&l).unwrap();
        assert_eq!(
            compare_filtration(&l, &chain, &hn).unwrap(),
            FiltrationVerdict::EqualRefinement
        );
        assert!(matches!(
            compare_filtration(&l, &[1, 4], &hn),
            Err(HnError::NotAChain(_))
        ));
        assert!(matches!(
            compare_filtration(&l, &[9], &hn),
            Err(HnError::IndexOutOfRange(9))
        ));
        let flat = Polygon::from_slopes(&[qi(0); 3]);
        assert!(matches!(
            compare_filtration(&l, &chain, &flat),
            Err(HnError::AboveHn(1))
        ));
    }

    #[test]
    fn lattice_validation() {
        assert!(matches!(
            SubobjectLattice::new(vec![(0, 0), (1, 0)], &[(0, 1), (1, 0)]),
            Err(HnError::NotPartialOrder(_))
        ));
        assert!(matches!(
            SubobjectLattice::chain(vec![(0, 1), (1, 0)]),
            Err(HnError::BadBottom)
        ));
        assert!(matches!(
            SubobjectLattice::chain(vec![(0, 0), (2, 0), (2, 1)]),
            Err(HnError::RankNotIncreasing { .. })
        ));
        assert!(matches!(
            SubobjectLattice::new(vec![(0, 0), (1, 0), (1, 0)], &[(0, 1), (0, 2)]),
            Err(HnError::NoTop)
        ));
    }

    #[test]
    fn modification_examples() {
        let i = ModificationInstance::from_triples(&[(0, 1, 1), (0, 1, 0)]).unwrap();
        assert_eq!(slopes(&modification_hn(&i)), vec![qi(1), qi(0)]);
        let j = ModificationInstance::from_triples(&[(5, 7, 1)]).unwrap();
        assert_eq!(slopes(&modification_hn(&j)), vec![q(12, 7); 7]);
        let k = ModificationInstance::from_triples(&[(0, 1, 2), (0, 1, 0), (0, 1, 1)]).unwrap();
        assert_eq!(
            modification_hn(&k),
            hn_polygon_lattice(&k.block_subset_lattice().unwrap())
        );
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            tensor_polygon(&[qi(1), qi(0)], &[qi(0)]),
            vec![qi(1), qi(0)]
        );
        assert_eq!(tensor_polygon(&[qi(1)], &[qi(1)]), vec![qi(2)]);
        assert_eq!(
            tensor_polygon(&[qi(2), qi(0)], &[qi(1), qi(0)]),
            vec![qi(3), qi(2), qi(1), qi(0)]
        );
        let a = ModificationInstance::from_triples(&[(0, 1, 2), (0, 1, 0)]).unwrap();
        let b = ModificationInstance::from_triples(&[(0, 1, 1), (0, 1, 0)]).unwrap();
        assert_eq!(
            modification_hn(&a.tensor(&b)).slopes(),
            tensor_polygon(&a.sorted_slopes(), &b.sorted_slopes())
        );
        let c = ModificationInstance::from_triples(&[(1, 2, 0)]).unwrap();
        let t = c.tensor(&c);
        assert_eq!(t.rank(), 4);
        assert_eq!(t.sorted_slopes(), vec![qi(1); 4]);
    }

    #[test]
    fn filtered_examples() {
        let id: Matrix = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        let jumps = Cocharacter::new(vec![1, 0]).unwrap();
        assert_eq!(
            filtered_hn(&id, &jumps).unwrap().slopes(),
            vec![qi(1), qi(0)]
        );
        let singular: Matrix = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(filtered_hn(&singular, &jumps), Err(HnError::Singular));

        let g: Matrix = vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]];
        let space = FilteredSpace::new(&g, &jumps).unwrap();
        // Fil^1 is the line through (1, 0)
        assert_eq!(space.subspace_label(&[vec![qi(1), qi(0)]]).unwrap(), (1, 1));
        assert_eq!(space.subspace_label(&[vec![qi(1), qi(1)]]).unwrap(), (1, 0));
        assert_eq!(
            space
                .subspace_label(&[vec![qi(0), qi(1)], vec![qi(1), qi(0)]])
                .unwrap(),
            (2, 1)
        );
    }
}
