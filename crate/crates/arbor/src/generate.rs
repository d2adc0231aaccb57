//! Seeded random trees for the property suite and for exploration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// `child_weights[k]` is the relative weight of giving a node `k`
    /// children.
    pub child_weights: Vec<u32>,
    pub seed: u64,
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        if self.min_nodes == 0 {
            return Err(Error::InvalidConfig("min_nodes must be at least 1".into()));
        }
        if self.min_nodes > self.max_nodes {
            return Err(Error::InvalidConfig(format!(
                "min_nodes {} exceeds max_nodes {}",
                self.min_nodes, self.max_nodes
            )));
        }
        if self.child_weights.iter().map(|&w| w as u64).sum::<u64>() == 0 {
            return Err(Error::InvalidConfig(
                "child_weights must have positive total weight".into(),
            ));
        }
        Ok(())
    }
}

fn sample_children(rng: &mut ChaCha8Rng, weights: &[u32]) -> usize {
    let total: u64 = weights.iter().map(|&w| w as u64).sum();
    let mut pick = rng.gen_range(0..total);
    for (k, &w) in weights.iter().enumerate() {
        if pick < w as u64 {
            return k;
        }
        pick -= w as u64;
    }
    unreachable!("total weight is positive")
}

/// Grows a tree breadth-first, sampling child counts from the weights.
/// A distribution that keeps dying out before `min_nodes` is rejected
/// after a bounded number of attempts.
pub fn random_tree(config: &GeneratorConfig) -> Result<Tree> {
    config.validate()?;
    for attempt in 0..64u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9)));
        let target = rng.gen_range(config.min_nodes..=config.max_nodes);
        let width = target.to_string().len();
        let label = |i: usize| format!("n{:0width$}", i);
        let mut made = 1usize;
        let mut frontier = vec![0usize];
        let mut edges: Vec<(String, String)> = Vec::new();
        while let Some(node) = frontier.pop() {
            if made == target {
                break;
            }
            let k = sample_children(&mut rng, &config.child_weights).min(target - made);
            for _ in 0..k {
                edges.push((label(node), label(made)));
                frontier.insert(0, made);
                made += 1;
            }
        }
        if made == target {
            let nodes: Vec<String> = (0..made).map(label).collect();
            return Tree::new(Forest::build(nodes, edges)?);
        }
    }
    Err(Error::InvalidConfig(format!(
        "child_weights {:?} keep dying out before {} nodes",
        config.child_weights, config.min_nodes
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(min: usize, max: usize, weights: &[u32], seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            min_nodes: min,
            max_nodes: max,
            child_weights: weights.to_vec(),
            seed,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = config(4, 12, &[2, 3, 3, 1], 42);
        let a = random_tree(&cfg).unwrap();
        let b = random_tree(&cfg).unwrap();
        assert_eq!(a.forest(), b.forest());
        let c = random_tree(&config(4, 12, &[2, 3, 3, 1], 43)).unwrap();
        assert!(a.len() >= 4 && a.len() <= 12);
        assert!(c.len() >= 4 && c.len() <= 12);
    }

    #[test]
    fn unary_weights_grow_chains() {
        let t = random_tree(&config(6, 6, &[0, 1], 7)).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.ids().all(|v| t.child_count(v) <= 1));
        assert_eq!(t.leaves().len(), 1);
    }

    #[test]
    fn binary_weights_fill_levels() {
        let t = random_tree(&config(7, 7, &[0, 0, 1], 7)).unwrap();
        assert_eq!(t.len(), 7);
        assert!(t.ids().all(|v| t.child_count(v) != 1));
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(matches!(
            random_tree(&config(0, 5, &[1], 1)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            random_tree(&config(5, 3, &[1], 1)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            random_tree(&config(1, 5, &[0, 0], 1)),
            Err(Error::InvalidConfig(_))
        ));
        // Pure leaves can never reach two nodes.
        assert!(matches!(
            random_tree(&config(2, 4, &[1], 9)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn sizes_cover_the_range() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let t = random_tree(&config(3, 6, &[1, 2, 2], seed)).unwrap();
            seen.insert(t.len());
        }
        assert!(seen.len() >= 3, "sizes seen: {:?}", seen);
    }
}
