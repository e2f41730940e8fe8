//! Seeded random models and configurations for oracle testing.
//!
//! All draws come from [`ChaCha8Rng`] seeded with `seed_from_u64`, so a seed
//! reproduces the same population on every platform.

use std::f64::consts::PI;

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::ets::{DhConvention, DhLink, DhTable, ElementaryTransform, Ets};
use crate::liealg::Axis;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform joint coordinates in `[-π, π]ⁿ`.
pub fn random_q<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-PI..=PI)).collect()
}

fn random_axis<R: Rng>(rng: &mut R) -> Axis {
    Axis::ALL[rng.random_range(0..Axis::ALL.len())]
}

/// A random sequence with `1..=max_joints` joints and `n..=max_len`
/// transforms.
///
/// Joint axes, flips and sequence positions are random, and joint indices
/// are shuffled so they need not appear in sequence order. Constants have
/// either sign: up to ±1 m for translations and ±π for rotations.
pub fn random_ets<R: Rng>(rng: &mut R, max_joints: usize, max_len: usize) -> Ets<f64> {
    assert!(
        max_joints >= 1 && max_len >= max_joints,
        "need 1 <= max_joints <= max_len"
    );
    let n = rng.random_range(1..=max_joints);
    let m = rng.random_range(n..=max_len);
    let mut positions = index::sample(rng, m, n).into_vec();
    positions.sort_unstable();
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);

    let mut transforms = Vec::with_capacity(m);
    let mut next = 0;
    for pos in 0..m {
        let axis = random_axis(rng);
        if next < n && positions[next] == pos {
            transforms.push(ElementaryTransform::joint(
                axis,
                labels[next],
                rng.random_bool(0.3),
            ));
            next += 1;
        } else {
            let span = if axis.is_rotation() { PI } else { 1.0 };
            transforms.push(ElementaryTransform::constant(
                axis,
                rng.random_range(-span..=span),
            ));
        }
    }
    Ets::new(transforms).expect("generated sequences are well formed")
}

/// A random DH table with `1..=max_links` links, each revolute with
/// probability 0.7, some with joint offsets.
pub fn random_dh<R: Rng>(rng: &mut R, convention: DhConvention, max_links: usize) -> DhTable<f64> {
    let count = rng.random_range(1..=max_links);
    let links = (0..count)
        .map(|_| {
            let a = rng.random_range(-0.5..=0.5);
            let alpha = rng.random_range(-PI..=PI);
            let link = if rng.random_bool(0.7) {
                DhLink::revolute(rng.random_range(-0.5..=0.5), a, alpha)
            } else {
                DhLink::prismatic(rng.random_range(-PI..=PI), a, alpha)
            };
            if rng.random_bool(0.3) {
                link.with_offset(rng.random_range(-1.0..=1.0))
            } else {
                link
            }
        })
        .collect();
    DhTable::new(convention, links).expect("generated tables are finite and non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_population() {
        let a: Vec<_> = (0..5).map(|_| random_ets(&mut rng(7), 10, 30)).collect();
        let b: Vec<_> = (0..5).map(|_| random_ets(&mut rng(7), 10, 30)).collect();
        assert_eq!(a, b);
        assert_eq!(random_q(&mut rng(3), 4), random_q(&mut rng(3), 4));
    }

    #[test]
    fn sizes_stay_in_bounds() {
        let mut r = rng(11);
        for _ in 0..200 {
            let e = random_ets(&mut r, 10, 30);
            assert!((1..=10).contains(&e.n()));
            assert!(e.len() >= e.n() && e.len() <= 30);
            let dh = random_dh(&mut r, DhConvention::Modified, 7);
            assert!((1..=7).contains(&dh.links.len()));
        }
    }

    #[test]
    fn population_is_mixed() {
        let mut r = rng(5);
        let (mut flipped, mut prismatic, mut revolute, mut negative) = (0, 0, 0, 0);
        for _ in 0..50 {
            let e = random_ets(&mut r, 10, 30);
            for s in e.joints() {
                flipped += s.flipped as usize;
                prismatic += !s.is_revolute() as usize;
                revolute += s.is_revolute() as usize;
            }
            negative += e
                .transforms()
                .iter()
                .filter(|t| matches!(t.param, crate::ets::EtParam::Constant(c) if c < 0.0))
                .count();
        }
        assert!(flipped > 0 && prismatic > 0 && revolute > 0 && negative > 0);
    }

    #[test]
    fn q_within_range() {
        let q = random_q(&mut rng(1), 1000);
        assert!(q.iter().all(|v| (-PI..=PI).contains(v)));
    }
}
