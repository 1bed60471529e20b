use rand::Rng;

use crate::problems::Genotype;

/// Draws from `sampler` until the result differs from every neighbor, giving up
/// after `max_tries` draws and returning the last one.
pub fn diversity_preserving_sample<R, F>(
    mut sampler: F,
    neighbors: &[&Genotype],
    max_tries: usize,
    rng: &mut R,
) -> Genotype
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Genotype,
{
    let tries = max_tries.max(1);
    let mut candidate = sampler(rng);
    for _ in 1..tries {
        if !neighbors.iter().any(|&nb| *nb == candidate) {
            return candidate;
        }
        candidate = sampler(rng);
    }
    candidate
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn distinct_first_sample_uses_one_call() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let nb = Genotype::zeros(4);
        let mut calls = 0;
        let out = diversity_preserving_sample(
            |_| {
                calls += 1;
                Genotype::ones(4)
            },
            &[&nb],
            20,
            &mut rng,
        );
        assert_eq!(calls, 1);
        assert_eq!(out, Genotype::ones(4));
    }

    #[test]
    fn exhausts_budget_on_duplicates() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let nb = Genotype::zeros(4);
        let mut calls = 0;
        let out = diversity_preserving_sample(
            |_| {
                calls += 1;
                Genotype::zeros(4)
            },
            &[&nb],
            20,
            &mut rng,
        );
        assert_eq!(calls, 20);
        assert_eq!(out, nb);
    }

    #[test]
    fn stops_at_first_novel_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let nb = Genotype::zeros(2);
        let mut calls = 0;
        let out = diversity_preserving_sample(
            |_| {
                calls += 1;
                if calls < 3 {
                    Genotype::zeros(2)
                } else {
                    Genotype::ones(2)
                }
            },
            &[&nb],
            10,
            &mut rng,
        );
        assert_eq!((calls, out), (3, Genotype::ones(2)));
    }
}
