mod common;

use common::genotypes;
use moeadgm::variation::{
    learn_tree, learn_univariate, max_weight_spanning_forest, mutual_information_matrix,
    sample_tree, Algorithm, MutualInformationMatrix, OperatorConfig, TreeModel,
};
use moeadgm::Genotype;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tree_cfg(n: usize, prior_r: f64) -> OperatorConfig {
    let mut c = OperatorConfig::new(Algorithm::Tree, n);
    c.prior_r = prior_r;
    c
}

/// Draws from a chain 0 -> 1 -> ... where each child copies its parent
/// with probability `keep`.
fn chain_sample(n: usize, keep: f64, rng: &mut impl Rng) -> Genotype {
    let mut bits = Vec::with_capacity(n);
    bits.push(rng.gen::<bool>());
    for j in 1..n {
        let copy = rng.gen::<f64>() < keep;
        bits.push(if copy { bits[j - 1] } else { !bits[j - 1] });
    }
    Genotype::from_bits(bits)
}

#[test]
fn tree_fits_chain_data_at_least_as_well_as_univariate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for keep in [0.5, 0.7, 0.95] {
        let data: Vec<Genotype> = (0..300).map(|_| chain_sample(8, keep, &mut rng)).collect();
        let refs: Vec<&Genotype> = data.iter().collect();
        let tree = learn_tree(&refs, &tree_cfg(8, 0.0)).unwrap();
        let uni = learn_univariate(&refs, 0.0).unwrap();
        let lt: f64 = data.iter().map(|x| tree.log_likelihood(x)).sum();
        let lu: f64 = data.iter().map(|x| uni.log_likelihood(x)).sum();
        assert!(lt >= lu - 1e-9, "keep {keep}: tree {lt} < univariate {lu}");
        if keep > 0.9 {
            assert_eq!(tree.edges.len(), 7);
            assert!(tree.edges.iter().all(|&(a, b)| a.abs_diff(b) == 1));
        }
    }
}

#[test]
fn two_variable_sampling_matches_the_table() {
    let model = TreeModel {
        parent: vec![None, Some(0)],
        root_probs: vec![0.3, 0.5],
        cond_probs: vec![[0.3, 0.3], [0.2, 0.9]],
        edges: vec![(0, 1)],
        order: vec![0, 1],
    };
    let expected = [0.7 * 0.8, 0.7 * 0.2, 0.3 * 0.1, 0.3 * 0.9];
    let draws = 100_000;
    let mut counts = [0usize; 4];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..draws {
        let x = sample_tree(&model, &mut rng);
        counts[(x.get(0) as usize) << 1 | x.get(1) as usize] += 1;
    }
    for (cell, &p) in expected.iter().enumerate() {
        let freq = counts[cell] as f64 / draws as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        assert!(
            (freq - p).abs() <= 3.0 * sigma,
            "cell {cell}: {freq} vs {p}"
        );
    }
}

#[test]
fn two_blocks_stay_separate() {
    let rows = ["0000000000", "0000011111", "1111100000", "1111111111"];
    let pop: Vec<Genotype> = genotypes(&rows).into_iter().cycle().take(12).collect();
    let refs: Vec<&Genotype> = pop.iter().collect();

    let mi = mutual_information_matrix(&refs, 0.0).unwrap();
    assert!((mi.get(0, 4) - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(mi.get(0, 5), 0.0);

    let model = learn_tree(&refs, &tree_cfg(10, 0.0)).unwrap();
    assert_eq!(model.edges.len(), 8);
    for &(pa, child) in &model.edges {
        assert_eq!(pa / 5, child / 5, "edge {pa}->{child} crosses blocks");
        assert_eq!(model.cond_probs[child][1], 1.0);
        assert_eq!(model.cond_probs[child][0], 0.0);
    }
    assert_eq!(model.parent[0], None);
    assert_eq!(model.parent[5], None);
}

fn population(n: usize, l: usize) -> impl Strategy<Value = Vec<Genotype>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), n), l)
        .prop_map(|rows| rows.into_iter().map(Genotype::from_bits).collect())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

proptest! {
    #[test]
    fn mi_symmetric_nonnegative(pop in population(7, 12), r in 0.0f64..3.0) {
        let refs: Vec<&Genotype> = pop.iter().collect();
        let mi = mutual_information_matrix(&refs, r).unwrap();
        for j in 0..7 {
            prop_assert_eq!(mi.get(j, j), 0.0);
            for k in 0..7 {
                prop_assert!(mi.get(j, k) >= 0.0);
                prop_assert_eq!(mi.get(j, k), mi.get(k, j));
            }
        }
    }

    #[test]
    fn product_populations_have_zero_mi(a in prop::collection::vec(any::<bool>(), 1..6),
                                        b in prop::collection::vec(any::<bool>(), 1..6)) {
        // every pairing of a column-0 value with a column-1 value
        let pop: Vec<Genotype> = a.iter()
            .flat_map(|&x| b.iter().map(move |&y| Genotype::from_bits(vec![x, y])))
            .collect();
        prop_assume!(pop.len() >= 2);
        let refs: Vec<&Genotype> = pop.iter().collect();
        prop_assert_eq!(mutual_information_matrix(&refs, 0.0).unwrap().get(0, 1), 0.0);
    }

    #[test]
    fn spanning_tree_on_positive_weights(n in 2usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.01..1.0)).collect();
        let mi = MutualInformationMatrix::from_fn(n, |j, k| weights[j * n + k]);
        let edges = max_weight_spanning_forest(&mi, 0.0);
        prop_assert_eq!(edges.len(), n - 1);
        let mut parent: Vec<usize> = (0..n).collect();
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            prop_assert_ne!(ra, rb);
            parent[ra] = rb;
        }
    }

    #[test]
    fn learned_forests_are_valid(pop in population(9, 15), r in 0.0f64..2.0, t in 0.0f64..0.3) {
        let refs: Vec<&Genotype> = pop.iter().collect();
        let mut cfg = tree_cfg(9, r);
        cfg.mi_threshold = t;
        let model = learn_tree(&refs, &cfg).unwrap();
        prop_assert_eq!(model.edges.len(), model.n() - model.root_count());
        let mut seen = [false; 9];
        for &j in &model.order {
            if let Some(pa) = model.parent[j] {
                prop_assert!(seen[pa]);
            }
            seen[j] = true;
        }
        for j in 0..9 {
            prop_assert!((0.0..=1.0).contains(&model.root_probs[j]));
            for v in model.cond_probs[j] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn degenerate_model_reproduces_its_data(bits in prop::collection::vec(any::<bool>(), 1..40),
                                            seed in any::<u64>()) {
        let g = Genotype::from_bits(bits);
        let pop = vec![g.clone(); 4];
        let refs: Vec<&Genotype> = pop.iter().collect();
        let model = learn_tree(&refs, &tree_cfg(g.len(), 0.0)).unwrap();
        let uni = learn_univariate(&refs, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(sample_tree(&model, &mut rng), g.clone());
        prop_assert_eq!(moeadgm::variation::sample_univariate(&uni, &mut rng), g);
    }
}
