//! Shared helpers for integration tests: the four classic test surfaces and
//! an exact rational point generator.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcdual_core::parse::parse_surface;
use pcdual_core::poly::{rat, Rat};
use pcdual_core::QuadricSurface;

pub struct TestSurface {
    pub name: &'static str,
    pub equation: &'static str,
    /// A rational point on the surface, used to seed the chord generator.
    pub base: [i64; 3],
}

pub const SURFACES: [TestSurface; 4] = [
    TestSurface {
        name: "saddle",
        equation: "z = -(x/2)^2 + (y/2)^2",
        base: [0, 0, 0],
    },
    TestSurface {
        name: "sphere",
        equation: "x^2 + y^2 + z^2 = 2",
        base: [1, 1, 0],
    },
    TestSurface {
        name: "hyperboloid-one-sheet",
        equation: "x^2 + y^2 - z^2 = 1",
        base: [1, 0, 0],
    },
    TestSurface {
        name: "hyperboloid-two-sheets",
        equation: "x^2 - 4y^2 + 2z^2 = -2",
        base: [0, 1, 1],
    },
];

pub fn surface(ts: &TestSurface) -> QuadricSurface {
    parse_surface(ts.equation).expect("test surface parses")
}

/// Exact rational points on a quadric through the chord construction: a line
/// through a known rational point meets the quadric in one more rational
/// point. Points with vanishing gradient are skipped.
pub fn chord_points(ts: &TestSurface, count: usize, seed: u64) -> Vec<Vec<Rat>> {
    let s = surface(ts);
    let f = s.polynomial();
    let grad = f.gradient();
    let base: Vec<Rat> = ts.base.iter().map(|&v| rat(v)).collect();
    assert!(
        f.evaluate(&base).is_zero(),
        "base point must lie on {}",
        ts.name
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut guard = 0usize;
    while out.len() < count {
        guard += 1;
        assert!(
            guard < count * 50,
            "chord generation stalled for {}",
            ts.name
        );
        let dir: Vec<Rat> = (0..3).map(|_| rat(rng.gen_range(-9i64..=9))).collect();
        if dir.iter().all(Zero::is_zero) {
            continue;
        }
        // F(base + t dir) = a t^2 + b t exactly for a quadric.
        let plus: Vec<Rat> = base.iter().zip(&dir).map(|(p, d)| p + d).collect();
        let minus: Vec<Rat> = base.iter().zip(&dir).map(|(p, d)| p - d).collect();
        let fp = f.evaluate(&plus);
        let fm = f.evaluate(&minus);
        let half = Rat::new(1.into(), 2.into());
        let a = (&fp + &fm) * &half;
        let b = (&fp - &fm) * &half;
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let t = -b / a;
        let point: Vec<Rat> = base.iter().zip(&dir).map(|(p, d)| p + d * &t).collect();
        assert!(f.evaluate(&point).is_zero(), "chord point off surface");
        if grad.iter().all(|g| g.evaluate(&point).is_zero()) {
            continue;
        }
        out.push(point);
    }
    out
}
