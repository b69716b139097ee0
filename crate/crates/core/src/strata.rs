//! Stratum-level invariants: HN types, non-emptiness of HN strata,
//! Hodge-Newton decomposability, dimension formulas and the pruner for
//! containment of Newton strata in the weakly admissible locus.
//!
//! The Levi of an HN type for `nu` is always the centralizer of `nu`: the
//! class has to be basic in `M`, so `nu` is central in `M`, and the parabolic
//! of `av_M(-lambda) = nu` has to be `P` itself.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::hnengine::{modification_hn, HnError, ModificationInstance, Polygon};
use crate::kottwitz::{
    allowed_levis, enumerate_b, enumerate_b_mu_b, in_b, newton_leq, GroupDatum, IsocrystalBlocks,
    KottwitzError, NewtonPoint,
};
use crate::rational::{format_rational, q, qi, Rational};
use crate::rootdata::{
    av_m, coroot_order, dominance_leq, rho_pairing, Cocharacter, Composition, RationalVector,
    RhoScale, RootDataError,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("{nu} is not in B(G, {mu})")]
    NotInB { nu: String, mu: String },
    #[error("no HN type exists for {0}")]
    EmptyTheta(String),
    #[error("{0} is not minuscule; the dimension formula is only established for minuscule cocharacters")]
    NotMinuscule(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("instance blocks do not align with Levi {0}")]
    NotAligned(String),
    #[error("pieces {left} and {right} are not separated by slope (P-regularity fails)")]
    NotRegular { left: usize, right: usize },
    #[error("{0} is not a modification of the given basic isocrystal")]
    NotInBMuB(String),
    #[error(transparent)]
    Kottwitz(#[from] KottwitzError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Hn(#[from] HnError),
}

/// HN type `(P, {lambda}_P)`: a standard Levi and a cocharacter `lambda`,
/// weakly decreasing inside each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HNType {
    pub levi: Composition,
    pub lam: Cocharacter,
}

impl HNType {
    pub fn neg_lam(&self) -> Cocharacter {
        self.lam.negated()
    }

    /// `av_M(-lambda)`, the slope vector of the reduction.
    pub fn newton(&self) -> RationalVector {
        av_m(&self.neg_lam(), &self.levi).expect("levi matches lambda")
    }

    pub fn is_blockwise_dominant(&self) -> bool {
        self.levi
            .blocks()
            .into_iter()
            .all(|r| self.lam.entries()[r].windows(2).all(|w| w[0] >= w[1]))
    }

    /// HN-pair condition: block averages of `-lambda` strictly decrease.
    pub fn is_hn_pair(&self) -> bool {
        let nu = self.newton();
        let starts: Vec<usize> = self.levi.blocks().into_iter().map(|r| r.start).collect();
        starts
            .windows(2)
            .all(|w| nu.entries()[w[0]] > nu.entries()[w[1]])
    }
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.neg_lam();
        let blocks: Vec<String> = self
            .levi
            .blocks()
            .into_iter()
            .map(|r| {
                neg.entries()[r]
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "P{} -lambda=({})", self.levi, blocks.join("|"))
    }
}

fn ensure_in_b(g: &GroupDatum, mu: &Cocharacter, nu: &NewtonPoint) -> Result<(), StrataError> {
    if !in_b(g, mu, nu)? {
        return Err(StrataError::NotInB {
            nu: nu.to_string(),
            mu: mu.to_string(),
        });
    }
    Ok(())
}

fn check_len(n: usize, got: usize) -> Result<(), StrataError> {
    if n != got {
        return Err(StrataError::RankMismatch { expected: n, got });
    }
    Ok(())
}

/// Weakly increasing integer vectors of length `len` with entries in
/// `[lo, hi]` and the given sum.
fn increasing_vectors(len: usize, sum: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, sum: i64, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let l = len as i64;
        for x in lo..=hi {
            if x * l > sum {
                break;
            }
            if x + hi * (l - 1) < sum {
                continue;
            }
            cur.push(x);
            rec(len - 1, sum - x, x, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, sum, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// All ways to distribute the multiset `mu` into consecutive blocks of the
/// given sizes; each block is returned weakly decreasing.
pub fn multiset_splits(mu: &Cocharacter, parts: &[usize]) -> Vec<Vec<Vec<i64>>> {
    let dom = mu.dominant();
    let mut values: Vec<(i64, usize)> = Vec::new();
    for &x in dom.entries() {
        match values.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => values.push((x, 1)),
        }
    }
    let mut out = Vec::new();
    let mut remaining: Vec<usize> = values.iter().map(|&(_, c)| c).collect();
    let mut blocks: Vec<Vec<i64>> = Vec::new();
    split_rec(&values, parts, &mut remaining, &mut blocks, &mut out);
    out
}

fn split_rec(
    values: &[(i64, usize)],
    parts: &[usize],
    remaining: &mut Vec<usize>,
    blocks: &mut Vec<Vec<i64>>,
    out: &mut Vec<Vec<Vec<i64>>>,
) {
    if blocks.len() == parts.len() {
        out.push(blocks.clone());
        return;
    }
    let size = parts[blocks.len()];
    let mut counts = vec![0usize; values.len()];
    choose_counts(
        values,
        0,
        size,
        remaining,
        &mut counts,
        &mut |counts, remaining| {
            let block: Vec<i64> = values
                .iter()
                .zip(counts)
                .flat_map(|(&(v, _), &c)| std::iter::repeat_n(v, c))
                .collect();
            blocks.push(block);
            split_rec(values, parts, remaining, blocks, out);
            blocks.pop();
        },
    );
}

fn choose_counts(
    values: &[(i64, usize)],
    idx: usize,
    left: usize,
    remaining: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize], &mut Vec<usize>),
) {
    if idx == values.len() {
        if left == 0 {
            f(counts, remaining);
        }
        return;
    }
    for c in (0..=left.min(remaining[idx])).rev() {
        counts[idx] = c;
        remaining[idx] -= c;
        choose_counts(values, idx + 1, left - c, remaining, counts, f);
        remaining[idx] += c;
    }
    counts[idx] = 0;
}

/// Iterates over the cartesian product of the given lists.
fn for_each_product<T: Clone>(lists: &[Vec<T>], f: &mut dyn FnMut(&[T])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    let mut cur: Vec<T> = lists.iter().map(|l| l[0].clone()).collect();
    loop {
        f(&cur);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                cur[k] = lists[k][idx[k]].clone();
                break;
            }
            idx[k] = 0;
            cur[k] = lists[k][0].clone();
        }
    }
}

/// Integral block sums `n_i nu_i` of a Newton point over its centralizer.
fn block_targets(nu: &NewtonPoint) -> Vec<(usize, i64)> {
    nu.runs()
        .into_iter()
        .map(|(s, m)| (m, (s * qi(m as i64)).to_integer()))
        .collect()
}

fn neg_blocks_to_type(levi: &Composition, neg_blocks: &[Vec<i64>]) -> HNType {
    let lam: Vec<i64> = neg_blocks.iter().flatten().map(|x| -x).collect();
    HNType {
        levi: levi.clone(),
        lam: Cocharacter::new(lam).expect("non-empty"),
    }
}

/// `Theta(mu, [b'])`: all HN types whose reduction has slope vector `nu`.
pub fn theta_set(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Vec<HNType>, StrataError> {
    ensure_in_b(g, mu, nu)?;
    let levi = nu.centralizer();
    if !g.levi_allowed(&levi) {
        return Ok(Vec::new());
    }
    let mu_dom = mu.dominant().to_rational();
    let lo = *mu.entries().iter().min().expect("non-empty");
    let hi = *mu.entries().iter().max().expect("non-empty");
    let per_block: Vec<Vec<Vec<i64>>> = block_targets(nu)
        .into_iter()
        .map(|(m, t)| increasing_vectors(m, t, lo, hi))
        .collect();
    let mut out = Vec::new();
    for_each_product(&per_block, &mut |blocks| {
        let neg: Vec<i64> = blocks.iter().flatten().copied().collect();
        let sorted = Cocharacter::new(neg)
            .expect("non-empty")
            .dominant()
            .to_rational();
        if dominance_leq(&sorted, &mu_dom).expect("same length, sorted") {
            out.push(neg_blocks_to_type(&levi, blocks));
        }
    });
    out.sort();
    Ok(out)
}

/// Whether the HN stratum of `nu` can be non-empty, with a witness type.
pub fn is_in_b_hn(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Option<HNType>, StrataError> {
    Ok(theta_set(g, mu, nu)?.into_iter().next())
}

/// HN types with `-lambda` in the Weyl orbit of `mu`, i.e. those realised on
/// the flag variety.
pub fn dor_types(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Vec<HNType>, StrataError> {
    ensure_in_b(g, mu, nu)?;
    let levi = nu.centralizer();
    if !g.levi_allowed(&levi) {
        return Ok(Vec::new());
    }
    let targets = block_targets(nu);
    let mut out: Vec<HNType> = multiset_splits(mu, levi.parts())
        .into_iter()
        .filter(|blocks| {
            blocks
                .iter()
                .zip(&targets)
                .all(|(b, &(_, t))| b.iter().sum::<i64>() == t)
        })
        .map(|blocks| {
            let inc: Vec<Vec<i64>> = blocks
                .into_iter()
                .map(|mut b| {
                    b.reverse();
                    b
                })
                .collect();
            neg_blocks_to_type(&levi, &inc)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Non-emptiness of the HN stratum of `nu` on the flag variety, with a
/// witness type.
pub fn dor_nonempty(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Option<HNType>, StrataError> {
    Ok(dor_types(g, mu, nu)?.into_iter().next())
}

/// Partial sums of `mu_dom - nu`.
pub fn hodge_newton_gap(mu: &Cocharacter, nu: &NewtonPoint) -> Result<Vec<Rational>, StrataError> {
    check_len(mu.len(), nu.n())?;
    let dom = mu.dominant();
    let mut acc = Rational::zero();
    Ok(dom
        .entries()
        .iter()
        .zip(nu.slopes())
        .map(|(&m, s)| {
            acc += qi(m) - s;
            acc
        })
        .collect())
}

/// `(mu, nu)` is Hodge-Newton decomposable for `levi`: the Levi contains
/// the centralizer of `nu` and the Hodge and Newton polygons touch at every
/// cut of `levi`.
pub fn hn_decomposable(
    mu: &Cocharacter,
    nu: &NewtonPoint,
    levi: &Composition,
) -> Result<bool, StrataError> {
    check_len(mu.len(), levi.n())?;
    let gap = hodge_newton_gap(mu, nu)?;
    Ok(levi.coarsens(&nu.centralizer()) && levi.cuts().iter().all(|&c| gap[c - 1].is_zero()))
}

/// The smallest Levi for which `(mu, nu)` is Hodge-Newton decomposable;
/// `(n)` when there is none.
pub fn smallest_hnd_levi(mu: &Cocharacter, nu: &NewtonPoint) -> Result<Composition, StrataError> {
    let gap = hodge_newton_gap(mu, nu)?;
    let cuts: Vec<usize> = nu
        .centralizer()
        .cuts()
        .into_iter()
        .filter(|&c| gap[c - 1].is_zero())
        .collect();
    Ok(Composition::from_cuts(nu.n(), &cuts))
}

/// The smallest Levi of `g` for which `(mu, nu)` is Hodge-Newton
/// decomposable. Inner forms only have the cuts `c` with `c * twist`
/// divisible by `n`; for split groups this is [`smallest_hnd_levi`].
pub fn smallest_hnd_levi_in(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Composition, StrataError> {
    let n = g.n as i64;
    let cuts: Vec<usize> = smallest_hnd_levi(mu, nu)?
        .cuts()
        .into_iter()
        .filter(|&c| (c as i64 * g.twist_degree) % n == 0)
        .collect();
    Ok(Composition::from_cuts(nu.n(), &cuts))
}

/// Result of the fully Hodge-Newton decomposability scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullyHnd {
    pub holds: bool,
    pub witness: Option<NewtonPoint>,
}

/// Every non-basic class of `B(G, mu)` is Hodge-Newton decomposable.
pub fn fully_hnd(g: &GroupDatum, mu: &Cocharacter) -> Result<FullyHnd, StrataError> {
    for nu in enumerate_b(g, mu)? {
        if !nu.is_basic() && smallest_hnd_levi_in(g, mu, &nu)?.is_whole() {
            return Ok(FullyHnd {
                holds: false,
                witness: Some(nu),
            });
        }
    }
    Ok(FullyHnd {
        holds: true,
        witness: None,
    })
}

/// Dimension of the Newton stratum: `<2 rho, mu_dom> - <2 rho, nu>`.
pub fn dim_newton(mu: &Cocharacter, nu: &NewtonPoint) -> Result<Rational, StrataError> {
    check_len(mu.len(), nu.n())?;
    Ok(rho_pairing(&mu.dominant().to_rational(), RhoScale::TwoRho)
        - rho_pairing(&nu.to_vector(), RhoScale::TwoRho))
}

fn require_minuscule(mu: &Cocharacter) -> Result<(), StrataError> {
    if !mu.is_minuscule() {
        return Err(StrataError::NotMinuscule(mu.to_string()));
    }
    Ok(())
}

/// `<rho, mu_dom + lambda>` for one HN type.
pub fn cell_dimension(mu: &Cocharacter, t: &HNType) -> Rational {
    let sum: Vec<Rational> = mu
        .dominant()
        .entries()
        .iter()
        .zip(t.lam.entries())
        .map(|(&a, &b)| qi(a + b))
        .collect();
    rho_pairing(&RationalVector::new(sum).expect("non-empty"), RhoScale::Rho)
}

/// Upper bound for the dimension of the HN stratum: the largest cell
/// dimension over `Theta(mu, [b'])`.
pub fn dim_hn_bound(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Rational, StrataError> {
    require_minuscule(mu)?;
    theta_set(g, mu, nu)?
        .iter()
        .map(|t| cell_dimension(mu, t))
        .max()
        .ok_or_else(|| StrataError::EmptyTheta(nu.to_string()))
}

/// Same bound with `<2 rho, mu_dom + lambda>`.
pub fn dim_hn_bound_two_rho(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<Rational, StrataError> {
    Ok(dim_hn_bound(g, mu, nu)? * qi(2))
}

/// The two dimensions agree iff `nu` is basic in the smallest Levi for which
/// `(mu, nu)` is Hodge-Newton decomposable.
pub fn dims_equal_classification(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<bool, StrataError> {
    require_minuscule(mu)?;
    if theta_set(g, mu, nu)?.is_empty() {
        return Err(StrataError::EmptyTheta(nu.to_string()));
    }
    let levi = smallest_hnd_levi(mu, nu)?;
    Ok(levi
        .blocks()
        .into_iter()
        .all(|r| nu.slopes()[r].windows(2).all(|w| w[0] == w[1])))
}

fn serialize_hnd_levi<S: Serializer>(levi: &Option<Composition>, s: S) -> Result<S::Ok, S::Error> {
    match levi {
        Some(c) => c.serialize(s),
        None => s.serialize_str("indecomposable"),
    }
}

fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// All stratum invariants of one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub nu: NewtonPoint,
    pub in_b: bool,
    pub in_b_hn: bool,
    pub theta: Vec<HNType>,
    #[serde(serialize_with = "serialize_hnd_levi")]
    pub hnd_levi: Option<Composition>,
    #[serde(with = "crate::rational::serde_rational")]
    pub dim_newton: Rational,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub dim_hn_bound: Option<Rational>,
    pub dims_equal: Option<bool>,
    pub dor_nonempty: bool,
}

/// Collects every invariant of `nu in B(G, mu)`. The dimension bound and the
/// classification are omitted when they are undefined (non-minuscule `mu`
/// or empty `Theta`).
pub fn stratum_report(
    g: &GroupDatum,
    mu: &Cocharacter,
    nu: &NewtonPoint,
) -> Result<StratumReport, StrataError> {
    let theta = theta_set(g, mu, nu)?;
    let levi = smallest_hnd_levi_in(g, mu, nu)?;
    let defined = mu.is_minuscule() && !theta.is_empty();
    let dim_hn_bound = if defined {
        Some(dim_hn_bound(g, mu, nu)?)
    } else {
        None
    };
    let dims_equal = if defined {
        Some(dims_equal_classification(g, mu, nu)?)
    } else {
        None
    };
    Ok(StratumReport {
        nu: nu.clone(),
        in_b: true,
        in_b_hn: !theta.is_empty(),
        hnd_levi: if levi.is_whole() { None } else { Some(levi) },
        dim_newton: dim_newton(mu, nu)?,
        dim_hn_bound,
        dims_equal,
        dor_nonempty: dor_nonempty(g, mu, nu)?.is_some(),
        theta,
    })
}

/// One row of the Newton/HN index comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRow {
    pub nu: NewtonPoint,
    pub in_b_hn: bool,
    /// HN indices that can occur on the Newton stratum of `nu`.
    pub newton_to_hn: Vec<NewtonPoint>,
    /// Newton indices that can occur on the HN stratum of `nu`.
    pub hn_to_newton: Vec<NewtonPoint>,
    /// `newton_to_hn` sharpened by Hodge-Newton decomposition.
    pub newton_to_hn_refined: Vec<NewtonPoint>,
}

/// Since `HN <= Newton` pointwise, the Newton stratum of `nu` only meets HN
/// strata of classes `<= nu`, and the HN stratum of `nu` only meets Newton
/// strata of classes `>= nu`. When `nu` is Hodge-Newton decomposable for its
/// centralizer, its Newton stratum lies in its own HN stratum.
pub fn index_relations(g: &GroupDatum, mu: &Cocharacter) -> Result<Vec<IndexRow>, StrataError> {
    let all = enumerate_b(g, mu)?;
    let mut hn = Vec::with_capacity(all.len());
    for nu in &all {
        hn.push(is_in_b_hn(g, mu, nu)?.is_some());
    }
    let b_hn: Vec<&NewtonPoint> = all
        .iter()
        .zip(&hn)
        .filter(|(_, &h)| h)
        .map(|(n, _)| n)
        .collect();
    let mut rows = Vec::with_capacity(all.len());
    for (nu, &nu_hn) in all.iter().zip(&hn) {
        let newton_to_hn: Vec<NewtonPoint> = b_hn
            .iter()
            .filter(|o| newton_leq(o, nu))
            .map(|o| (*o).clone())
            .collect();
        let hn_to_newton: Vec<NewtonPoint> =
            all.iter().filter(|o| newton_leq(nu, o)).cloned().collect();
        let refined = if nu_hn && hn_decomposable(mu, nu, &nu.centralizer())? {
            vec![nu.clone()]
        } else {
            newton_to_hn.clone()
        };
        rows.push(IndexRow {
            nu: nu.clone(),
            in_b_hn: nu_hn,
            newton_to_hn,
            hn_to_newton,
            newton_to_hn_refined: refined,
        });
    }
    Ok(rows)
}

/// Blockwise data of a Hodge-Newton decomposition of a block-scalar
/// modification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnProjection {
    pub pieces: Vec<ModificationInstance>,
    pub piece_polygons: Vec<Polygon>,
    pub piece_newton: Vec<NewtonPoint>,
    pub global: Polygon,
}

/// Splits `inst` along `levi` and checks that the pieces are separated by
/// slope, that their polygons concatenate to the global HN polygon and that
/// each piece has Newton point equal to its HN slopes.
pub fn hodge_newton_project(
    inst: &ModificationInstance,
    levi: &Composition,
) -> Result<HnProjection, StrataError> {
    check_len(levi.n(), inst.rank())?;
    let mut pieces = Vec::with_capacity(levi.num_blocks());
    let mut cur = Vec::new();
    let mut filled = 0usize;
    let mut part = 0usize;
    for block in inst.blocks() {
        cur.push(*block);
        filled += block.h;
        match filled.cmp(&levi.parts()[part]) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => {
                pieces.push(ModificationInstance::new(std::mem::take(&mut cur))?);
                filled = 0;
                part += 1;
            }
            std::cmp::Ordering::Greater => return Err(StrataError::NotAligned(levi.to_string())),
        }
    }
    let piece_slopes: Vec<Vec<Rational>> = pieces.iter().map(|p| p.sorted_slopes()).collect();
    for (i, w) in piece_slopes.windows(2).enumerate() {
        if w[0].last() <= w[1].first() {
            return Err(StrataError::NotRegular {
                left: i,
                right: i + 1,
            });
        }
    }
    let global = modification_hn(inst);
    let joined: Vec<Rational> = piece_slopes.iter().flatten().copied().collect();
    assert_eq!(
        global.slopes(),
        joined,
        "pieces must reassemble the global polygon"
    );
    let piece_polygons: Vec<Polygon> = pieces.iter().map(modification_hn).collect();
    let piece_newton = piece_slopes
        .iter()
        .map(|s| NewtonPoint::new(s.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    for (poly, nu) in piece_polygons.iter().zip(&piece_newton) {
        assert_eq!(
            poly.slopes(),
            nu.slopes(),
            "blockwise Newton and HN slopes agree"
        );
    }
    Ok(HnProjection {
        pieces,
        piece_polygons,
        piece_newton,
        global,
    })
}

/// Pruning rules for violation scenarios of weak admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WaRule {
    /// The reduction slope vector must lie below `nu'`.
    R0,
    /// The reduction must destabilise: some leading partial degree lies
    /// strictly above the average line.
    R1,
    /// Slopes `>= s` of `nu'` must be supplied by the pieces.
    R2,
}

impl fmt::Display for WaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One (Levi, split of `mu`) pair and what happened to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitRecord {
    pub levi: Composition,
    pub mu_split: Vec<Vec<i64>>,
    pub reduction: RationalVector,
    pub killed_by: Option<WaRule>,
    pub eta_tuples: usize,
    pub surviving: usize,
}

/// A violation scenario passing every rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaScenario {
    pub levi: Composition,
    pub mu_split: Vec<Vec<i64>>,
    pub reduction: RationalVector,
    pub eta: Vec<NewtonPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WaVerdict {
    /// No scenario survives: the Newton stratum lies in the weakly
    /// admissible locus.
    Contained,
    /// Some scenario survives; this is not a proof of non-containment.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaReport {
    pub verdict: WaVerdict,
    pub ledger: Vec<SplitRecord>,
    pub survivors: Vec<WaScenario>,
}

/// Decides, by exhausting necessary conditions, whether the Newton stratum
/// `nu_prime` of modifications of type `mu` of the basic isocrystal `b`
/// avoids every non-semistable HN stratum.
pub fn wa_containment(
    b: &IsocrystalBlocks,
    mu: &Cocharacter,
    nu_prime: &NewtonPoint,
) -> Result<WaReport, StrataError> {
    let n = b.rank();
    let g = GroupDatum::new(n, b.degree())?;
    let universe = enumerate_b_mu_b(&g, mu, b)?;
    if !universe.contains(nu_prime) {
        return Err(StrataError::NotInBMuB(nu_prime.to_string()));
    }
    let total = b.degree() + mu.total();
    let nu_vec = nu_prime.to_vector();
    let thresholds: Vec<Rational> = nu_prime.runs().into_iter().map(|(s, _)| s).collect();
    let mut ledger = Vec::new();
    let mut survivors = Vec::new();
    for levi in allowed_levis(&g).into_iter().filter(|c| !c.is_whole()) {
        for split in multiset_splits(mu, levi.parts()) {
            let degs: Vec<i64> = levi
                .parts()
                .iter()
                .zip(&split)
                .map(|(&m, mu_i)| m as i64 * b.degree() / n as i64 + mu_i.iter().sum::<i64>())
                .collect();
            let reduction: Vec<Rational> = levi
                .parts()
                .iter()
                .zip(&degs)
                .flat_map(|(&m, &d)| std::iter::repeat_n(q(d, m as i64), m))
                .collect();
            let reduction = RationalVector::new(reduction)?;
            let mut record = SplitRecord {
                levi: levi.clone(),
                mu_split: split.clone(),
                reduction: reduction.clone(),
                killed_by: None,
                eta_tuples: 0,
                surviving: 0,
            };
            let mut rank = 0usize;
            let mut deg = 0i64;
            let destabilising =
                levi.parts()[..levi.num_blocks() - 1]
                    .iter()
                    .zip(&degs)
                    .any(|(&m, &d)| {
                        rank += m;
                        deg += d;
                        qi(deg) > q(total * rank as i64, n as i64)
                    });
            if !destabilising {
                record.killed_by = Some(WaRule::R1);
                ledger.push(record);
                continue;
            }
            if !coroot_order(&reduction, &nu_vec)? {
                record.killed_by = Some(WaRule::R0);
                ledger.push(record);
                continue;
            }
            let mut candidates = Vec::with_capacity(split.len());
            for (&m, (mu_i, &d)) in levi.parts().iter().zip(split.iter().zip(&degs)) {
                let mu_i = Cocharacter::new(mu_i.clone())?;
                let deg_b = d - mu_i.total();
                let g_i = GroupDatum::new(m, deg_b)?;
                let b_i = IsocrystalBlocks::basic(m, deg_b)?;
                candidates.push(enumerate_b_mu_b(&g_i, &mu_i, &b_i)?);
            }
            let mut tuples = 0usize;
            for_each_product(&candidates, &mut |eta| {
                tuples += 1;
                let supplied = thresholds.iter().all(|&s| {
                    nu_prime.mult_at_least(s) <= eta.iter().map(|e| e.mult_at_least(s)).sum()
                });
                if supplied {
                    survivors.push(WaScenario {
                        levi: levi.clone(),
                        mu_split: split.clone(),
                        reduction: reduction.clone(),
                        eta: eta.to_vec(),
                    });
                    record.surviving += 1;
                }
            });
            record.eta_tuples = tuples;
            if record.surviving == 0 {
                record.killed_by = Some(WaRule::R2);
            }
            ledger.push(record);
        }
    }
    let verdict = if survivors.is_empty() {
        WaVerdict::Contained
    } else {
        WaVerdict::Inconclusive
    };
    Ok(WaReport {
        verdict,
        ledger,
        survivors,
    })
}
