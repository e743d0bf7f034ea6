//! Shared input generators for the benchmark targets.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cp1graft_core::angle::AngleValue;
use cp1graft_core::circles::Circle;
use cp1graft_core::grafting::IndexTriple;
use cp1graft_core::mobius::MobiusMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// θ in (0.1, 4.9) staying 0.02 away from every integer, so the index
/// 2θπ is never a full-turn multiple.
fn random_theta(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let theta: f64 = rng.gen_range(0.1..4.9);
        if (theta - theta.round()).abs() > 0.02 {
            return theta;
        }
    }
}

pub fn index_triples(n: usize, seed: u64) -> Vec<IndexTriple> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let angles = [
                AngleValue::from_radians(2.0 * PI * random_theta(&mut rng)),
                AngleValue::from_radians(2.0 * PI * random_theta(&mut rng)),
                AngleValue::from_radians(2.0 * PI * random_theta(&mut rng)),
            ];
            IndexTriple::new(angles).expect("indices are positive non-multiples of 2pi")
        })
        .collect()
}

/// Triples with two slots in (0, π) and one anywhere in (0, 2π), all kept
/// 0.1π clear of the boundaries, so classification always succeeds.
pub fn angle_triples(n: usize, seed: u64) -> Vec<[AngleValue; 3]> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let mut angles = [
                AngleValue::from_radians(PI * rng.gen_range(0.1..0.9)),
                AngleValue::from_radians(PI * rng.gen_range(0.1..0.9)),
                AngleValue::from_radians(PI * rng.gen_range(0.1..0.9)),
            ];
            let big = rng.gen_range(0..3usize);
            if rng.gen_bool(0.5) {
                angles[big] = AngleValue::from_radians(PI * rng.gen_range(1.1..1.9));
            }
            angles
        })
        .collect()
}

pub fn circles(n: usize, seed: u64) -> Vec<Circle> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let center = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            Circle::from_center_radius(center, rng.gen_range(0.3..2.0)).expect("radius is positive")
        })
        .collect()
}

pub fn mobius_maps(n: usize, seed: u64) -> Vec<MobiusMap> {
    let mut rng = rng(seed);
    let mut maps = Vec::with_capacity(n);
    while maps.len() < n {
        let mut e = [Complex64::new(0.0, 0.0); 4];
        for entry in &mut e {
            *entry = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        }
        if (e[0] * e[3] - e[1] * e[2]).norm() < 0.3 {
            continue;
        }
        maps.push(MobiusMap::new(e[0], e[1], e[2], e[3]).expect("determinant checked"));
    }
    maps
}
