mod common;

use common::cc;
use hnstrat::hnengine::{
    compare_filtration, deg_rank, filtered_hn, hn_filtration_lattice, hn_polygon_lattice,
    modification_hn, tensor_polygon, FilteredSpace, FiltrationVerdict, Matrix, ModBlock,
};
use hnstrat::oracle::{brute_filtered_hn, filtered_subset_lattice};
use hnstrat::{q, qi, HnError, ModificationInstance, Polygon, Rational, SubobjectLattice};
use num_integer::Integer;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_block(rng: &mut ChaCha8Rng) -> ModBlock {
    loop {
        let d = rng.gen_range(-3..=3i64);
        let h = rng.gen_range(1..=4i64);
        if d.gcd(&h) == 1 {
            return ModBlock::new(d, h, rng.gen_range(-3..=3)).unwrap();
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng, max_blocks: usize) -> ModificationInstance {
    let k = rng.gen_range(1..=max_blocks);
    ModificationInstance::new((0..k).map(|_| random_block(rng)).collect()).unwrap()
}

/// Random chain in the boolean lattice: blocks are added in a random order
/// and a random subset of the prefixes is kept.
fn random_subset_chain(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut chain = Vec::new();
    let mut mask = 0usize;
    for i in order {
        mask |= 1 << i;
        if rng.gen_bool(0.5) {
            chain.push(mask);
        }
    }
    chain
}

#[test]
fn modification_hn_matches_block_subset_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let inst = random_instance(&mut rng, 6);
        let lattice = inst.block_subset_lattice().unwrap();
        let brute = hn_polygon_lattice(&lattice);
        let fast = modification_hn(&inst);
        assert_eq!(fast, brute, "{inst:?}");
        assert!(fast.is_concave());
        let (rank, deg) = deg_rank(&inst);
        assert_eq!(fast.rank(), rank);
        assert_eq!(fast.degree(), qi(deg));
        assert_eq!(fast.vertices()[0].rank, 0);
        assert_eq!(fast.vertices()[0].deg, qi(0));
    }
}

#[test]
fn hn_filtration_of_block_sums_realises_the_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let inst = random_instance(&mut rng, 5);
        let lattice = inst.block_subset_lattice().unwrap();
        let hn = hn_polygon_lattice(&lattice);
        let chain = hn_filtration_lattice(&lattice).unwrap();
        let ranks: Vec<usize> = chain.iter().map(|&e| lattice.rank(e)).collect();
        let vertex_ranks: Vec<usize> = hn.vertices().iter().map(|v| v.rank).collect();
        assert_eq!(ranks, vertex_ranks);
        assert_eq!(
            compare_filtration(&lattice, &chain, &hn).unwrap(),
            FiltrationVerdict::EqualRefinement
        );
    }
}

#[test]
fn direct_sum_merges_slopes_and_adds_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let a = random_instance(&mut rng, 4);
        let b = random_instance(&mut rng, 4);
        let sum = a.concat(&b);
        let mut merged = [a.sorted_slopes(), b.sorted_slopes()].concat();
        merged.sort_unstable_by(|x, y| y.cmp(x));
        assert_eq!(modification_hn(&sum).slopes(), merged);
        let (ra, da) = deg_rank(&a);
        let (rb, db) = deg_rank(&b);
        assert_eq!(deg_rank(&sum), (ra + rb, da + db));
    }
}

#[test]
fn tensor_slopes_add() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let a = random_instance(&mut rng, 3);
        let b = random_instance(&mut rng, 3);
        let t = a.tensor(&b);
        assert_eq!(
            t.sorted_slopes(),
            tensor_polygon(&a.sorted_slopes(), &b.sorted_slopes())
        );
        let (ra, da) = deg_rank(&a);
        let (rb, db) = deg_rank(&b);
        assert_eq!(deg_rank(&t), (ra * rb, da * rb as i64 + db * ra as i64));
    }
}

#[test]
fn random_chains_in_block_lattices_stay_below() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut below = 0;
    let mut equal = 0;
    for _ in 0..100 {
        let inst = random_instance(&mut rng, 6);
        let lattice = inst.block_subset_lattice().unwrap();
        let hn = hn_polygon_lattice(&lattice);
        let k = inst.blocks().len();
        for _ in 0..100 {
            match compare_filtration(&lattice, &random_subset_chain(&mut rng, k), &hn) {
                Ok(FiltrationVerdict::Below) => below += 1,
                Ok(FiltrationVerdict::EqualRefinement) | Err(HnError::MissingHnVertex(_)) => {
                    equal += 1
                }
                Err(e) => panic!("{inst:?}: {e}"),
            }
        }
    }
    assert_eq!(below + equal, 10_000);
    assert!(below > 0);
}

/// Graded poset with random labels on every level and random cover
/// relations, closed off by a bottom and a top.
fn random_lattice(rng: &mut ChaCha8Rng) -> SubobjectLattice {
    let levels = rng.gen_range(1..=4usize);
    let mut labels = vec![(0usize, 0i64)];
    let mut by_level: Vec<Vec<usize>> = vec![vec![0]];
    for r in 1..=levels {
        let width = rng.gen_range(1..=3);
        let mut ids = Vec::new();
        for _ in 0..width {
            ids.push(labels.len());
            labels.push((r, rng.gen_range(-4..=4)));
        }
        by_level.push(ids);
    }
    let top = labels.len();
    labels.push((levels + 1, rng.gen_range(-4..=4)));
    let mut relations = Vec::new();
    for r in 1..=levels {
        for &e in &by_level[r] {
            let below = by_level[r - 1].choose(rng).copied().unwrap();
            relations.push((below, e));
            relations.push((e, top));
            if let Some(&extra) = by_level[r - 1].choose(rng) {
                relations.push((extra, e));
            }
        }
    }
    relations.push((0, top));
    SubobjectLattice::new(labels, &relations).unwrap()
}

fn random_lattice_chain(rng: &mut ChaCha8Rng, lattice: &SubobjectLattice) -> Vec<usize> {
    let mut chain = vec![lattice.bottom()];
    let mut cur = lattice.bottom();
    while cur != lattice.top() {
        let next: Vec<usize> = (0..lattice.len())
            .filter(|&e| e != cur && lattice.leq(cur, e))
            .collect();
        cur = *next.choose(rng).unwrap();
        chain.push(cur);
    }
    chain
}

#[test]
fn random_chains_in_random_posets_stay_below() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..500 {
        let lattice = random_lattice(&mut rng);
        let hn = hn_polygon_lattice(&lattice);
        assert!(hn.is_concave());
        for e in 0..lattice.len() {
            assert!(qi(lattice.deg(e)) <= hn.value_at(lattice.rank(e)));
        }
        for _ in 0..20 {
            let chain = random_lattice_chain(&mut rng, &lattice);
            match compare_filtration(&lattice, &chain, &hn) {
                Ok(_) | Err(HnError::MissingHnVertex(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                .collect()
        })
        .collect()
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, jumps: &[i64]) -> (Matrix, FilteredSpace) {
    loop {
        let g = random_matrix(rng, n);
        if let Ok(space) = FilteredSpace::new(&g, &cc(jumps)) {
            return (g, space);
        }
    }
}

#[test]
fn filtered_hn_matches_subset_lattice_for_random_flags() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let jumps = [4, 3, 2, 1, 0];
    let expected = Polygon::from_slopes(&jumps.map(qi));
    for _ in 0..100 {
        let (g, space) = random_invertible(&mut rng, 5, &jumps);
        assert_eq!(filtered_hn(&g, &cc(&jumps)).unwrap(), expected);
        assert_eq!(brute_filtered_hn(&space).unwrap(), expected);
    }
}

#[test]
fn random_subspaces_lie_below_the_filtered_polygon() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..60 {
        let jumps: Vec<i64> = {
            let mut j: Vec<i64> = (0..4).map(|_| rng.gen_range(-1..=2)).collect();
            j.shuffle(&mut rng);
            j
        };
        let (g, space) = random_invertible(&mut rng, 4, &jumps);
        let hn = filtered_hn(&g, &cc(&jumps)).unwrap();
        assert_eq!(
            space.subspace_label(&[space.column(0)]).unwrap(),
            (1, jumps[0])
        );
        for _ in 0..10 {
            let k = rng.gen_range(1..=4);
            let vectors: Vec<Vec<Rational>> = (0..k)
                .map(|_| (0..4).map(|_| qi(rng.gen_range(-2..=2))).collect())
                .collect();
            let (dim, deg) = space.subspace_label(&vectors).unwrap();
            assert!(qi(deg) <= hn.value_at(dim), "{jumps:?} {vectors:?}");
        }
    }
}

fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    (0..n * m)
        .map(|i| {
            (0..n * m)
                .map(|j| a[i / m][j / m] * b[i % m][j % m])
                .collect()
        })
        .collect()
}

#[test]
fn tensor_of_filtered_spaces_adds_jumps() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..20 {
        let ja: Vec<i64> = (0..2).map(|_| rng.gen_range(-1..=2)).collect();
        let jb: Vec<i64> = (0..3).map(|_| rng.gen_range(-1..=2)).collect();
        let (ga, _) = random_invertible(&mut rng, 2, &ja);
        let (gb, _) = random_invertible(&mut rng, 3, &jb);
        let g = kronecker(&ga, &gb);
        let jumps: Vec<i64> = ja
            .iter()
            .flat_map(|x| jb.iter().map(move |y| x + y))
            .collect();
        let space = FilteredSpace::new(&g, &cc(&jumps)).unwrap();
        let expected = tensor_polygon(
            &filtered_hn(&ga, &cc(&ja)).unwrap().slopes(),
            &filtered_hn(&gb, &cc(&jb)).unwrap().slopes(),
        );
        assert_eq!(
            hn_polygon_lattice(&filtered_subset_lattice(&space).unwrap()).slopes(),
            expected
        );
    }
}

fn block_strategy() -> impl Strategy<Value = (i64, i64, i64)> {
    (-3i64..=3, 1i64..=4, -3i64..=3).prop_filter("coprime", |&(d, h, _)| d.gcd(&h) == 1)
}

proptest! {
    #[test]
    fn polygons_are_concave_with_correct_endpoints(
        triples in prop::collection::vec(block_strategy(), 1..7)
    ) {
        let inst = ModificationInstance::from_triples(&triples).unwrap();
        let p = modification_hn(&inst);
        prop_assert!(p.is_concave());
        let (rank, deg) = deg_rank(&inst);
        prop_assert_eq!(p.rank(), rank);
        prop_assert_eq!(p.degree(), qi(deg));
        prop_assert_eq!(p.slopes().len(), rank);
        prop_assert!(p.slopes().windows(2).all(|w| w[0] >= w[1]));
    }
}
