//! Seeded generators for rational test inputs.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
//! Coordinates are `p/q` with `p` uniform in `[-COORD_NUM, COORD_NUM]` and
//! `q` uniform in `[1, COORD_DEN]`; general position is not enforced.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centerpoint::PointConfig;
use crate::rational::{int, rat, Point, Rational};

pub const COORD_NUM: i64 = 12;
pub const COORD_DEN: i64 = 6;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `trial` of a seeded run: the seeded key on stream
/// number `trial`, so trials are independent of evaluation order.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.random_range(-COORD_NUM..=COORD_NUM);
    let q = rng.random_range(1..=COORD_DEN);
    rat(p, q)
}

pub fn point<R: Rng>(rng: &mut R, d: usize) -> Point {
    (0..d).map(|_| rational(rng)).collect()
}

pub fn config<R: Rng>(rng: &mut R, d: usize, n: usize) -> PointConfig {
    PointConfig::new(d, (0..n).map(|_| point(rng, d)).collect()).expect("uniform dimension")
}

/// A rational point of the standard simplex with `n_coords` barycentric
/// coordinates, forced to zero at `zero_at` when given.
pub fn barycentric<R: Rng>(rng: &mut R, n_coords: usize, zero_at: Option<usize>) -> Point {
    loop {
        let raw: Vec<i64> = (0..n_coords)
            .map(|i| {
                if Some(i) == zero_at {
                    0
                } else {
                    rng.random_range(0..=COORD_NUM)
                }
            })
            .collect();
        let total: i64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let total = int(total);
        let p: Point = raw.iter().map(|&x| int(x) / &total).collect();
        debug_assert!(!p.iter().all(Zero::is_zero));
        return p;
    }
}

/// Barycentric points of `Δ^n` meeting every facet: one point on each facet
/// followed by up to three unconstrained points.
pub fn facet_touching_set<R: Rng>(rng: &mut R, n: usize) -> Vec<Point> {
    let mut set: Vec<Point> = (0..=n).map(|i| barycentric(rng, n + 1, Some(i))).collect();
    let extra = rng.random_range(0..=3);
    set.extend((0..extra).map(|_| barycentric(rng, n + 1, None)));
    set
}
