//! Inputs shared by the benchmarks.

use ceresa_core::fixtures::{self, random_bridgeless, random_tree};
use ceresa_core::linalg::{rat, IntMatrix};
use ceresa_core::JacobianData;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Named curves of increasing genus, all with integral lengths.
pub fn curves() -> Vec<(String, JacobianData)> {
    let mut out = vec![
        ("theta".to_string(), JacobianData::with_default_tree(&fixtures::theta(&[rat(2), rat(3), rat(5)]))),
        ("k4".to_string(), fixtures::k4_jacobian(&(1..=6).map(rat).collect::<Vec<_>>())),
        ("tl3".to_string(), fixtures::tl3_jacobian(&(1..=9).map(rat).collect::<Vec<_>>())),
    ];
    let mut rng = StdRng::seed_from_u64(17);
    for g in [5, 6] {
        let graph = random_bridgeless(&mut rng, g, true);
        let tree = random_tree(&mut rng, &graph);
        out.push((format!("random-g{g}"), JacobianData::new(&graph, &tree)));
    }
    out
}

/// A seeded `n × n` integer matrix with entries in `-9..=9`.
pub fn random_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let data: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
    IntMatrix::from_i64(n, n, &data)
}
