#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use whitefact_core::{CayleyTable, FactorGroup, FactorSystem};

pub fn k3() -> FactorSystem {
    FactorSystem::cyclic(&[2, 2, 2]).unwrap()
}

pub fn z3z4z2() -> FactorSystem {
    FactorSystem::cyclic(&[3, 4, 2]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Permutations of {0,1,2} as image arrays, in the order
/// e, (12), (13), (23), (123), (132).
pub const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];

/// `a·b` is the permutation "apply b, then a".
pub fn s3_table() -> CayleyTable {
    let idx = |p: [usize; 3]| S3.iter().position(|q| *q == p).unwrap() as u32;
    let rows = S3
        .iter()
        .map(|a| S3.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
    CayleyTable::new(names, rows, 0)
}

/// S3 * Z/2 * Z/3.
pub fn s3_system() -> FactorSystem {
    FactorSystem::new(vec![FactorGroup::Table(s3_table()), FactorGroup::cyclic(2), FactorGroup::cyclic(3)]).unwrap()
}

/// Z/3 * Z * Z/2.
pub fn with_integers() -> FactorSystem {
    FactorSystem::new(vec![FactorGroup::cyclic(3), FactorGroup::InfiniteCyclic, FactorGroup::cyclic(2)]).unwrap()
}

pub fn finite_systems() -> Vec<FactorSystem> {
    vec![k3(), z3z4z2(), s3_system()]
}

pub fn all_systems() -> Vec<FactorSystem> {
    vec![k3(), z3z4z2(), s3_system(), with_integers(), FactorSystem::cyclic(&[3, 4, 2, 2]).unwrap()]
}
