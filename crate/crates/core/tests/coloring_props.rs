mod common;

use std::collections::{BTreeMap, BTreeSet};

use aic_core::coloring::Equivalence;
use aic_core::lattice::{ball, Generator, TorusCurve};
use aic_core::StructuredColoring;
use common::{col, random_coloring, random_construct, rng};
use rand::Rng;

/// Independent oracle: scan a ball directly.
fn brute_defect(c: &StructuredColoring, g: Generator, radius: u32) -> BTreeSet<TorusCurve> {
    ball(radius)
        .into_iter()
        .filter(|x| c.color_of(&g.matrix().apply(x).unwrap()) != c.color_of(x))
        .collect()
}

#[test]
fn worked_defects_by_brute_force() {
    let blue = StructuredColoring::construct(
        0,
        vec![col("red")],
        &BTreeMap::from([(TorusCurve::BASE, col("blue"))]),
    )
    .unwrap();
    let expected: BTreeSet<_> = [TorusCurve::ROOT, TorusCurve::new(-1, 1).unwrap()].into();
    assert_eq!(brute_defect(&blue, Generator::S, 50), expected);
    assert_eq!(blue.defect(Generator::S).unwrap().defect, expected);
}

#[test]
fn override_free_defects_are_bounded_and_exact() {
    let mut rng = rng(7);
    for trial in 0..40 {
        let level = trial % 6;
        let c = random_construct(&mut rng, level);
        let s = c.defect(Generator::S).unwrap();
        assert!(s.defect.len() as u64 <= c.s_defect_bound());
        assert!(c.defect(Generator::R).unwrap().defect.is_empty());
        assert_eq!(s.defect, brute_defect(&c, Generator::S, 60));
        assert!(brute_defect(&c, Generator::R, 60).is_empty());
    }
}

#[test]
fn defects_with_overrides_match_ball_scan() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let c = random_coloring(&mut rng, 4, 12);
        for g in [Generator::S, Generator::R] {
            let d = c.defect(g).unwrap();
            assert!(d.certified);
            // every candidate has norm well inside 100
            assert_eq!(d.defect, brute_defect(&c, g, 100));
        }
        assert!(c.verify_ball(40).unwrap().consistent());
    }
}

#[test]
fn s_defect_is_closed_under_s() {
    let mut rng = rng(3);
    for _ in 0..50 {
        let c = random_coloring(&mut rng, 5, 10);
        let d = c.defect(Generator::S).unwrap().defect;
        for x in &d {
            assert!(d.contains(&x.s_image()));
        }
    }
}

#[test]
fn simplification_never_grows_defects() {
    let mut rng = rng(5);
    for _ in 0..50 {
        let c = random_coloring(&mut rng, 4, 8);
        let colors: Vec<_> = c.colors().into_iter().cloned().collect();
        let f: BTreeMap<_, _> = colors
            .iter()
            .map(|k| (k.clone(), colors[rng.random_range(0..colors.len())].clone()))
            .collect();
        let s = c.simplify(&f).unwrap();
        for g in [Generator::S, Generator::R] {
            let before = c.defect(g).unwrap().defect;
            let after = s.defect(g).unwrap().defect;
            assert!(after.is_subset(&before));
        }
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let mut rng = rng(13);
    let pool: Vec<_> = (0..12).map(|_| random_coloring(&mut rng, 3, 4)).collect();
    // add variants that are equivalent by construction
    let mut all = pool.clone();
    for c in &pool {
        all.push(c.normalize().unwrap());
        all.push(c.without_overrides());
        all.push(c.refine(c.level() + 1).unwrap());
    }
    let n = all.len();
    let eq: Vec<Vec<bool>> = all
        .iter()
        .map(|a| all.iter().map(|b| a.equivalent(b).unwrap().is_equivalent()).collect())
        .collect();
    for i in 0..n {
        assert!(eq[i][i]);
        for j in 0..n {
            assert_eq!(eq[i][j], eq[j][i]);
            for k in 0..n {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k]);
                }
            }
        }
    }
}

#[test]
fn equivalence_witnesses_are_exact() {
    let mut rng = rng(17);
    for _ in 0..40 {
        let a = random_coloring(&mut rng, 3, 6);
        let b = random_coloring(&mut rng, 3, 6);
        let scan = |a: &StructuredColoring, b: &StructuredColoring| -> BTreeSet<TorusCurve> {
            ball(80).into_iter().filter(|x| a.color_of(x) != b.color_of(x)).collect()
        };
        match a.equivalent(&b.without_overrides().simplify(&identity(&b)).unwrap()).unwrap() {
            Equivalence::Equivalent { differences } => {
                assert_eq!(differences, scan(&a, &b.without_overrides()));
            }
            Equivalence::Inequivalent { word } => {
                // the two anchor colors differ on the whole subtree below `word`
                let x = aic_core::tree::evaluate(&word).unwrap();
                let mut v = aic_core::TreeVertex::from_label(&x).unwrap();
                for _ in 0..6 {
                    assert_ne!(a.color_of(&v.label()), b.color_of(&v.label()));
                    v = v.children().unwrap().1;
                }
            }
        }
    }
}

fn identity(c: &StructuredColoring) -> BTreeMap<aic_core::Color, aic_core::Color> {
    c.colors().into_iter().map(|k| (k.clone(), k.clone())).collect()
}

#[test]
fn normal_forms() {
    let mut rng = rng(19);
    for _ in 0..60 {
        let c = random_coloring(&mut rng, 4, 20);
        let n = c.normalize().unwrap();
        assert!(n.overrides().is_empty());
        assert!(n.defect(Generator::R).unwrap().defect.is_empty());
        assert!(c.equivalent(&n).unwrap().is_equivalent());
        assert_eq!(n.normalize().unwrap(), n);
        // minimality: one level lower would misplace some label
        if n.level() > 0 {
            let s = n.defect(Generator::S).unwrap().defect;
            assert!(s.iter().any(|x| {
                x.region() == aic_core::Region::X1
                    && aic_core::tree::level_of(x).unwrap() == i64::from(n.level())
            }));
        }
    }
}

#[test]
fn equivalence_is_decided_by_normal_form_anchors() {
    let mut rng = rng(23);
    let pool: Vec<_> = (0..30).map(|_| random_coloring(&mut rng, 2, 3)).collect();
    let normal: Vec<_> = pool.iter().map(|c| c.normalize().unwrap()).collect();
    let anchors_at = |c: &StructuredColoring, level: u32| -> Vec<aic_core::Color> {
        c.refine(level).unwrap().anchors().map(|(_, k)| k.clone()).collect()
    };
    for (a, na) in pool.iter().zip(&normal) {
        for (b, nb) in pool.iter().zip(&normal) {
            let eq = a.equivalent(b).unwrap().is_equivalent();
            let level = na.level().max(nb.level());
            assert_eq!(eq, anchors_at(na, level) == anchors_at(nb, level));
            if na == nb {
                assert!(eq);
            }
        }
    }
}

#[test]
fn trivial_colorings_have_bounded_minorities() {
    let mut rng = rng(29);
    for _ in 0..30 {
        let c = random_coloring(&mut rng, 3, 6);
        let merged: BTreeMap<_, _> =
            c.colors().into_iter().map(|k| (k.clone(), col("red"))).collect();
        let mut t = c.simplify(&merged).unwrap();
        // recolor a few shallow spots so the minority is non-empty
        t.set_override(TorusCurve::ROOT, col("blue"));
        assert!(t.is_trivial());
        let bound = 3 * (1usize << t.level()) + t.overrides().len();
        for radius in [10, 40, 120] {
            let minority = ball(radius).into_iter().filter(|x| t.color_of(x).as_str() != "red").count();
            assert!(minority <= bound);
        }
    }
}

#[test]
fn binarized_colorings_split_anchors() {
    let mut rng = rng(31);
    for level in 1..=5 {
        let c = random_construct(&mut rng, level);
        let anchors: Vec<_> = c.anchors().map(|(_, k)| k.clone()).collect();
        let cut = rng.random_range(1..anchors.len());
        let class0: BTreeSet<_> = anchors[..cut].iter().cloned().collect();
        let b = c.binarize(&class0).unwrap();
        assert!(!b.is_trivial());
        let used: BTreeSet<_> = b.colors().into_iter().map(|k| k.as_str().to_string()).collect();
        assert_eq!(used, BTreeSet::from(["0".to_string(), "1".to_string()]));
        assert!(b.defect(Generator::R).unwrap().defect.is_empty());
        assert!(b.defect(Generator::S).unwrap().defect.len() as u64 <= b.s_defect_bound());
    }
}
