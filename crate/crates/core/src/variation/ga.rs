use rand::Rng;

use super::OperatorConfig;
use crate::error::{Error, Result};
use crate::problems::Genotype;

/// Two distinct neighbors, uniformly at random.
pub fn choose_parents<'a, R: Rng + ?Sized>(
    neighbors: &[&'a Genotype],
    rng: &mut R,
) -> Result<(&'a Genotype, &'a Genotype)> {
    if neighbors.len() < 2 {
        return Err(Error::invalid(format!(
            "crossover needs at least 2 neighbors, got {}",
            neighbors.len()
        )));
    }
    let first = rng.gen_range(0..neighbors.len());
    let mut second = rng.gen_range(0..neighbors.len() - 1);
    if second >= first {
        second += 1;
    }
    Ok((neighbors[first], neighbors[second]))
}

/// Uniform crossover producing a single child, then bit-flip mutation.
pub fn recombine<R: Rng + ?Sized>(
    first: &Genotype,
    second: &Genotype,
    cfg: &OperatorConfig,
    rng: &mut R,
) -> Genotype {
    let cross = cfg.crossover_rate >= 1.0 || rng.gen::<f64>() < cfg.crossover_rate;
    let mut child = first.clone();
    if cross {
        for (bit, &other) in child.bits_mut().iter_mut().zip(second.bits()) {
            if rng.gen::<bool>() {
                *bit = other;
            }
        }
    }
    for bit in child.bits_mut() {
        if rng.gen::<f64>() < cfg.mutation_rate {
            *bit = !*bit;
        }
    }
    child
}

pub fn ga_variation<R: Rng + ?Sized>(
    neighbors: &[&Genotype],
    cfg: &OperatorConfig,
    rng: &mut R,
) -> Result<Genotype> {
    let (a, b) = choose_parents(neighbors, rng)?;
    Ok(recombine(a, b, cfg, rng))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::variation::Algorithm;

    fn g(s: &str) -> Genotype {
        s.parse().unwrap()
    }

    #[test]
    fn identical_parents_without_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut cfg = OperatorConfig::new(Algorithm::Ga, 8);
        cfg.mutation_rate = 0.0;
        let p = g("10110010");
        for _ in 0..50 {
            assert_eq!(ga_variation(&[&p, &p], &cfg, &mut rng).unwrap(), p);
        }
    }

    #[test]
    fn full_mutation_complements_the_crossover_result() {
        let cfg_plain = {
            let mut c = OperatorConfig::new(Algorithm::Ga, 8);
            c.mutation_rate = 0.0;
            c
        };
        let cfg_flip = {
            let mut c = cfg_plain.clone();
            c.mutation_rate = 1.0;
            c
        };
        let (a, b) = (g("11110000"), g("10101010"));
        for seed in 0..20 {
            // the crossover draws come first, so the same seed gives the same crossover
            let plain = recombine(&a, &b, &cfg_plain, &mut ChaCha8Rng::seed_from_u64(seed));
            let flipped = recombine(&a, &b, &cfg_flip, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(flipped, plain.complement());
        }
    }

    #[test]
    fn agreeing_positions_survive_without_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut cfg = OperatorConfig::new(Algorithm::Ga, 8);
        cfg.mutation_rate = 0.0;
        let (a, b) = (g("11001100"), g("11110000"));
        for _ in 0..100 {
            let child = recombine(&a, &b, &cfg, &mut rng);
            for j in 0..8 {
                if a.get(j) == b.get(j) {
                    assert_eq!(child.get(j), a.get(j));
                } else {
                    assert!(child.get(j) == a.get(j) || child.get(j) == b.get(j));
                }
            }
        }
    }

    #[test]
    fn parents_are_distinct_neighbors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pool: Vec<Genotype> = (0..5).map(|i| g(&format!("{:03b}", i))).collect();
        let refs: Vec<&Genotype> = pool.iter().collect();
        for _ in 0..200 {
            let (a, b) = choose_parents(&refs, &mut rng).unwrap();
            assert!(!std::ptr::eq(a, b));
        }
        assert!(choose_parents(&refs[..1], &mut rng).is_err());
    }
}
