#![allow(dead_code)]

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};

use aic_core::lattice::{ball, TorusCurve};
use aic_core::{Color, StructuredColoring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the built `aic` binary.
pub fn aic(args: &[&str]) -> Run {
    aic_with_stdin(args, "")
}

pub fn aic_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn aic");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn col(s: &str) -> Color {
    Color::new(s).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Distinct anchors `a0, a1, ...` with a random half of the shallow
/// vertices recolored from a small palette.
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

/// Curves of norm at most 30 whose `X1` representative sits at level `<= 7`.
pub fn override_pool() -> Vec<TorusCurve> {
    ball(30)
        .into_iter()
        .filter(|x| aic_core::tree::level_of(&x.orbit_rep_x1().0).unwrap() <= 7)
        .collect()
}

/// Random anchors and exceptions over three colors plus up to
/// `max_overrides` overrides drawn from `pool`.
pub fn random_coloring(
    rng: &mut StdRng,
    pool: &[TorusCurve],
    max_level: u32,
    max_overrides: usize,
) -> StructuredColoring {
    let level = rng.random_range(0..=max_level);
    let colors = ["red", "blue", "green"];
    let pick = |rng: &mut StdRng| col(colors[rng.random_range(0..colors.len())]);
    let base = random_construct(rng, level);
    let anchors: Vec<_> = base.anchors().map(|(w, _)| (w, pick(rng))).collect();
    let exceptions: Vec<_> = base.exceptions().map(|(v, _)| (v.label(), pick(rng))).collect();
    let mut overrides = BTreeMap::new();
    for _ in 0..rng.random_range(0..=max_overrides) {
        overrides.insert(pool[rng.random_range(0..pool.len())], pick(rng));
    }
    StructuredColoring::from_parts(
        level,
        anchors.into_iter().collect(),
        exceptions.into_iter().collect(),
        overrides,
    )
    .unwrap()
}
