#![allow(dead_code)]

use std::collections::BTreeMap;

use aic_core::lattice::{ball, TorusCurve};
use aic_core::{Color, StructuredColoring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn col(s: &str) -> Color {
    Color::new(s).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A Prop-7-style coloring with distinct anchors `a0, a1, ...` and
/// exceptions drawn from a small palette.
pub fn random_construct(rng: &mut StdRng, level: u32) -> StructuredColoring {
    let palette = (0..1usize << level).map(|i| col(&format!("a{i}"))).collect();
    let shallow = aic_core::tree::vertices_to_depth(level)
        .unwrap()
        .into_iter()
        .filter(|v| v.level() < level as i64);
    let mut exceptions = BTreeMap::new();
    for v in shallow {
        if rng.random_bool(0.5) {
            exceptions.insert(v.label(), col(&format!("e{}", rng.random_range(0..3))));
        }
    }
    StructuredColoring::construct(level, palette, &exceptions).unwrap()
}

/// Curves of norm at most 30 whose `X1` representative sits at level `<= 7`,
/// so normal forms stay small.
pub fn override_pool() -> Vec<TorusCurve> {
    ball(30)
        .into_iter()
        .filter(|x| aic_core::tree::level_of(&x.orbit_rep_x1().0).unwrap() <= 7)
        .collect()
}

/// A random coloring with possibly repeated anchors and up to
/// `max_overrides` overrides from [`override_pool`].
pub fn random_coloring(rng: &mut StdRng, max_level: u32, max_overrides: usize) -> StructuredColoring {
    let level = rng.random_range(0..=max_level);
    let colors = ["red", "blue", "green"];
    let pick = |rng: &mut StdRng| col(colors[rng.random_range(0..colors.len())]);
    let base = random_construct(rng, level);
    let anchors = base.anchors().map(|(w, _)| (w, pick(rng))).collect::<Vec<_>>();
    let exceptions = base.exceptions().map(|(v, _)| (v.label(), pick(rng))).collect::<Vec<_>>();
    let pool = override_pool();
    let mut overrides = BTreeMap::new();
    for _ in 0..rng.random_range(0..=max_overrides) {
        let x: TorusCurve = pool[rng.random_range(0..pool.len())];
        overrides.insert(x, pick(rng));
    }
    StructuredColoring::from_parts(
        level,
        anchors.into_iter().collect(),
        exceptions.into_iter().collect(),
        overrides,
    )
    .unwrap()
}
