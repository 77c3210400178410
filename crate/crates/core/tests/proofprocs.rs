use std::collections::{BTreeSet, HashSet};

use hyperturan::constructions::deletion_construct;
use hyperturan::counting::{cliques, count_copies, edge_multiplicity, is_blowup_free, CliqueFamily};
use hyperturan::hypercore::{complete_partite, shadow};
use hyperturan::proofprocs::{
    aligned_copies, auxiliary_h, edge_disjoint_greedy, find_blowup, lift_shadow, search_partition,
    shared_edge_count, thin_cliques, FindOptions, PartitionSampler, ThinningPlan,
};
use hyperturan::{BlowupSpec, Edge, PartitionMap, UniformHypergraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, s: usize, density: f64, seed: u64) -> UniformHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = UniformHypergraph::complete(n, s).unwrap();
    let keep: Vec<Edge> = full.edges().iter().copied().filter(|_| rng.gen_bool(density)).collect();
    UniformHypergraph::from_edges(n, s, keep).unwrap()
}

/// All `k`-subsets of `0..n` as edges.
fn subsets(n: usize, k: usize) -> Vec<Edge> {
    UniformHypergraph::complete(n, k).unwrap().edges().to_vec()
}

fn spans(g: &UniformHypergraph, set: Edge, s: usize) -> bool {
    set.subsets(s).iter().all(|e| g.has_edge(*e))
}

/// A seeded family of cliques of `g` in which every edge has multiplicity below `b`.
fn bounded_family(g: &UniformHypergraph, r: usize, b: usize, seed: u64) -> CliqueFamily {
    let mut all = cliques(g, r).unwrap().members().to_vec();
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut count = std::collections::HashMap::new();
    let mut keep = Vec::new();
    for c in all {
        let subs = c.subsets(r - 1);
        if subs.iter().all(|e| count.get(e).copied().unwrap_or(0) + 1 < b) {
            for e in subs {
                *count.entry(e).or_insert(0) += 1;
            }
            keep.push(c);
        }
    }
    CliqueFamily::new(g, r, keep).unwrap()
}

#[test]
fn lifting_selects_the_same_cliques() {
    for seed in 0..12 {
        let n = 6 + (seed as usize % 4);
        let s = 2 + (seed as usize % 2);
        let g = random_graph(n, s, 0.7, seed);
        let h = lift_shadow(&g).unwrap();
        for e in h.edges() {
            assert!(spans(&g, *e, s));
        }
        for set in subsets(n, s + 1) {
            assert_eq!(h.has_edge(set), spans(&g, set, s));
        }
        let back = shadow(&h, s).unwrap();
        assert!(back.edges().iter().all(|e| g.has_edge(*e)));
        for r in s + 2..=(s + 3).min(n) {
            for set in subsets(n, r) {
                assert_eq!(spans(&g, set, s), spans(&h, set, s + 1), "seed {seed}");
            }
        }
    }
}

#[test]
fn greedy_meets_the_claimed_bound() {
    let mut cases = 0;
    for seed in 0..100u64 {
        for (r, b) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
            let n = 7 + (seed as usize % 4);
            let g = random_graph(n, r - 1, 0.75, seed * 7 + r as u64);
            let family = bounded_family(&g, r, b, seed);
            let out = edge_disjoint_greedy(&g, &family, b).unwrap();
            assert!(edge_multiplicity(&g, &out).unwrap().max <= 1);
            assert!(out.len() * r * (b - 1) >= family.len());
            let kept: HashSet<Edge> = out.members().iter().copied().collect();
            assert!(kept.iter().all(|m| family.members().contains(m)));
            cases += 1;
        }
    }
    assert_eq!(cases, 400);
}

#[test]
fn greedy_rejects_dense_families() {
    let g = UniformHypergraph::complete(5, 2).unwrap();
    let family = cliques(&g, 3).unwrap();
    assert!(edge_disjoint_greedy(&g, &family, 3).is_err());
    assert!(edge_disjoint_greedy(&g, &family, 4).is_ok());
}

/// Groups of `a` cliques through a common edge, as a deduplicated set.
fn group_oracle(g: &UniformHypergraph, r: usize, a: usize) -> usize {
    let family = cliques(g, r).unwrap();
    let mut groups: HashSet<BTreeSet<Edge>> = HashSet::new();
    for e in g.edges() {
        let through: Vec<Edge> = family.members().iter().copied().filter(|m| e.is_subset_of(*m)).collect();
        let k = through.len();
        if k < a {
            continue;
        }
        for pick in subsets(k, a) {
            groups.insert(pick.vertices().map(|i| through[i]).collect());
        }
    }
    groups.len()
}

#[test]
fn shared_edge_count_matches_enumeration() {
    for seed in 0..20 {
        for (r, a) in [(3, 2), (3, 3), (4, 2)] {
            let g = random_graph(8, r - 1, 0.6, seed);
            let c = shared_edge_count(&g, r, a).unwrap();
            assert_eq!(c.groups as usize, group_oracle(&g, r, a));
            assert_eq!(c.pair_count, c.groups);
            assert!(c.bound >= c.groups);
        }
    }
}

#[test]
fn thinning_respects_multiplicity() {
    for seed in 0..200u64 {
        let r = 3 + (seed as usize % 2);
        let a = 2 + (seed as usize / 2 % 2);
        let g = random_graph(8, r - 1, 0.8, seed);
        let family = cliques(&g, r).unwrap();
        let out = thin_cliques(&family, a, seed).unwrap();
        let m = edge_multiplicity(&g, &out.family).unwrap();
        assert!(m.max < a, "seed {seed}");
        assert!(out.family.members().iter().all(|c| family.members().contains(c)));
    }
}

#[test]
fn thinning_keeps_half_of_p_n_on_average() {
    let g = UniformHypergraph::complete(8, 2).unwrap();
    let family = cliques(&g, 3).unwrap();
    let sizes: Vec<f64> = (0..100)
        .map(|seed| thin_cliques(&family, 2, seed).unwrap().family.len() as f64)
        .collect();
    let plan = thin_cliques(&family, 2, 0).unwrap().plan;
    let mean = sizes.iter().sum::<f64>() / sizes.len() as f64;
    let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (sizes.len() - 1) as f64;
    let se = (var / sizes.len() as f64).sqrt();
    let target = 0.4 * plan.p * plan.cliques as f64;
    assert!(mean + 3.0 * se >= target, "mean {mean}, target {target}");
}

#[test]
fn plan_probability_matches_regime() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let n: u64 = rng.gen_range(0..1_000_000);
        let groups: u128 = rng.gen_range(0..1_000_000);
        let a = rng.gen_range(2..7);
        let plan = ThinningPlan::new(n, groups, a, 0).unwrap();
        assert_eq!(plan.is_probability(), groups > 0 && n as u128 <= 2 * groups);
        assert!(plan.balance_holds());
        if plan.is_probability() {
            assert!(plan.p <= 1.0 && plan.p >= 0.0);
        }
    }
}

#[test]
fn aligned_partition_meets_averaging_bound() {
    let k3 = UniformHypergraph::complete(3, 2).unwrap();
    for seed in 0..10 {
        let g = random_graph(9, 2, 0.6, 100 + seed);
        let copies = count_copies(&g, &k3).unwrap();
        let search = search_partition(&g, &k3, seed, 200, PartitionSampler::Uniform).unwrap();
        let parts = search.partition.expect("averaging guarantees a partition");
        let aligned = aligned_copies(&g, &k3, &parts).unwrap();
        assert_eq!(search.threshold, copies.div_ceil(27));
        assert!(aligned.len() as u64 >= search.threshold);
        let h = auxiliary_h(&g, &k3, &parts).unwrap();
        for c in &aligned {
            let img = c.vertex_image();
            assert!(c.map().iter().all(|&x| h.has_edge(img.without(x))));
            assert!(c.map().iter().enumerate().all(|(i, &x)| parts.class_of(x) == i));
        }
    }
}

#[test]
fn auxiliary_graph_of_blowup() {
    let (g, parts) = complete_partite(2, &[2, 2, 2]).unwrap();
    let k3 = UniformHypergraph::complete(3, 2).unwrap();
    let h = auxiliary_h(&g, &k3, &parts).unwrap();
    assert_eq!(h, g);
    let bad = PartitionMap::consecutive(&[3, 3]);
    assert!(aligned_copies(&g, &k3, &bad).is_err());
}

#[test]
fn finder_recovers_blowups() {
    let k3 = UniformHypergraph::complete(3, 2).unwrap();
    let (g, _) = complete_partite(2, &[3, 3, 3]).unwrap();
    let report = find_blowup(&g, &k3, 2, &FindOptions::default()).unwrap();
    let found = report.found.unwrap();
    found.validate(&g).unwrap();
    let sub = UniformHypergraph::from_edges(
        9,
        2,
        g.edges().iter().copied().filter(|e| {
            let all: Vec<usize> = found.classes.concat();
            e.vertices().all(|v| all.contains(&v))
        }),
    )
    .unwrap();
    let spec = BlowupSpec::uniform(k3.clone(), 2).unwrap();
    assert!(!is_blowup_free(&sub, &spec).unwrap().free);

    let k4 = UniformHypergraph::complete(4, 3).unwrap();
    let (g4, _) = complete_partite(3, &[2, 2, 2, 2]).unwrap();
    let report = find_blowup(&g4, &k4, 2, &FindOptions::default()).unwrap();
    report.found.unwrap().validate(&g4).unwrap();
}

#[test]
fn finder_is_deterministic_across_pools() {
    let k3 = UniformHypergraph::complete(3, 2).unwrap();
    let (g, _) = complete_partite(2, &[3, 3, 3]).unwrap();
    let opts = FindOptions { sampler: PartitionSampler::Uniform, ..Default::default() };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| find_blowup(&g, &k3, 2, &opts).unwrap())
    };
    let a = run(1);
    assert_eq!(a, run(4));
    assert_eq!(a.trace_lines(), run(3).trace_lines());
    assert!(a.found.is_some());
}

#[test]
fn finder_reports_none_on_locally_linear_hosts() {
    let k3 = UniformHypergraph::complete(3, 2).unwrap();
    let spec = BlowupSpec::new(k3.clone(), vec![1, 1, 2]).unwrap();
    for seed in 0..20 {
        let (g, _) = deletion_construct(9, 3, &spec, 0.7, seed).unwrap();
        let opts = FindOptions { seed, retries: 20, ..Default::default() };
        assert!(find_blowup(&g, &k3, 2, &opts).unwrap().found.is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn found_blowups_revalidate(seed in 0u64..500, density in 0.5f64..1.0) {
        let g = random_graph(9, 2, density, seed);
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let report = find_blowup(&g, &k3, 2, &FindOptions { seed, retries: 30, ..Default::default() }).unwrap();
        if let Some(found) = report.found {
            prop_assert!(found.validate(&g).is_ok());
            prop_assert_eq!(found.sizes(), vec![2, 2, 2]);
            let all: BTreeSet<usize> = found.classes.concat().into_iter().collect();
            prop_assert_eq!(all.len(), 6);
        }
    }
}
