//! Property-based invariants for grid topology and measure evaluation.

use std::sync::Arc;

use proptest::prelude::*;

use qmlab::{
    connected_components, dilate, erode, is_solid, sets_adjacent, Cell, CellSet, Connectivity,
    DistinguishedGeometry, Grid, GridFunction, Image, Kind, QuasiMeasure, Value,
};

fn rect4() -> Arc<Grid> {
    Grid::rect(4, 4, Connectivity::Eight).unwrap()
}

fn square(n: u16) -> (Arc<Grid>, Arc<DistinguishedGeometry>) {
    let g = Grid::unit(n).unwrap();
    let geo = Arc::new(
        DistinguishedGeometry::for_grid(&g, &[(0.25, 0.25), (0.75, 0.25), (0.5, 0.75)]).unwrap(),
    );
    (g, geo)
}

fn cellset_from_bits(grid: &Grid, bits: u32) -> CellSet {
    CellSet::from_pred(grid, |c| {
        let idx = c.row as u32 * grid.cols() as u32 + c.col as u32;
        bits >> idx & 1 == 1
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(bits in any::<u16>()) {
        let g = rect4();
        let s = cellset_from_bits(&g, bits as u32);
        prop_assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn solidity_is_complement_symmetric(bits in any::<u16>(), open in any::<bool>()) {
        let g = rect4();
        let kind = if open { Kind::Open } else { Kind::Closed };
        let img = Image::new(cellset_from_bits(&g, bits as u32), kind);
        prop_assert_eq!(is_solid(&g, &img), is_solid(&g, &img.complement()));
    }

    #[test]
    fn erode_is_monotone(bits in any::<u16>(), extra in any::<u16>(), steps in 0u32..3) {
        let g = rect4();
        let s = cellset_from_bits(&g, bits as u32);
        let t = s.union(&cellset_from_bits(&g, extra as u32));
        prop_assert!(erode(&g, &s, steps).is_subset(&erode(&g, &t, steps)));
    }

    #[test]
    fn components_partition_and_are_maximal(bits in any::<u16>(), eight in any::<bool>()) {
        let g = rect4();
        let adjacency = if eight { Connectivity::Eight } else { Connectivity::Four };
        let s = cellset_from_bits(&g, bits as u32);
        let comps = connected_components(&s, adjacency);
        let mut union = CellSet::empty(&g);
        for (i, c) in comps.iter().enumerate() {
            prop_assert!(!c.is_empty());
            prop_assert!(c.is_subset(&s));
            prop_assert!(union.is_disjoint(c));
            union = union.union(c);
            for d in comps.iter().skip(i + 1) {
                prop_assert!(!sets_adjacent(c, d, adjacency));
            }
        }
        prop_assert_eq!(union, s);
    }

    #[test]
    fn eval_complementation_on_a_small_square(bits in any::<u32>(), open in any::<bool>()) {
        let (g, geo) = square(5);
        let m = QuasiMeasure::aarnes(g.clone(), geo).unwrap();
        let kind = if open { Kind::Open } else { Kind::Closed };
        let img = Image::new(cellset_from_bits(&g, bits & 0x1ff_ffff), kind);
        if let Ok(v) = m.eval(&img) {
            let vc = m.eval(&img.complement()).unwrap();
            prop_assert_eq!(v + vc, Value::one());
        }
    }

    #[test]
    fn mask_lines_round_trip(bits in any::<u16>()) {
        let g = rect4();
        let s = cellset_from_bits(&g, bits as u32);
        let lines = s.to_mask_lines();
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        prop_assert_eq!(CellSet::from_mask_lines(&g, &refs).unwrap(), s);
    }

    #[test]
    fn staircase_postconditions_hold(
        av in proptest::collection::vec(-4i8..4, 25),
        dv in proptest::collection::vec(0i8..4, 25),
        delta in prop_oneof![Just(1.0f64), Just(0.25)],
    ) {
        let g = Grid::unit(5).unwrap();
        let a = GridFunction::new(
            g.clone(),
            av.iter().map(|v| *v as f64 / 2.0).collect(),
            "a",
        ).unwrap();
        let b = GridFunction::new(
            g,
            av.iter().zip(&dv).map(|(x, d)| (*x as f64 + *d as f64) / 2.0).collect(),
            "b",
        ).unwrap();
        let dec = qmlab::staircase(&a, &b, delta).unwrap();
        qmlab::verify_staircase(&dec, &a, &b, 1e-12).unwrap();
    }

    #[test]
    fn pushforward_masses_sum_to_one(bits in any::<u32>()) {
        let (g, geo) = square(5);
        let m = QuasiMeasure::aarnes(g.clone(), geo).unwrap();
        let a = GridFunction::from_fn(g, "steps", |c| {
            let idx = c.row as u32 * 5 + c.col as u32;
            f64::from(bits >> (idx % 30) & 3)
        }).unwrap();
        let dist = qmlab::pushforward_distribution(&m, &a).unwrap();
        prop_assert!(dist.total_mass().is_one());
        let mut prev = f64::NEG_INFINITY;
        for (t, mass) in dist.jumps() {
            prop_assert!(*t > prev);
            prop_assert!(!mass.is_zero());
            prev = *t;
        }
    }

    #[test]
    fn integral_is_monotone_and_lipschitz(
        av in proptest::collection::vec(-8i8..8, 25),
        dv in proptest::collection::vec(0i8..6, 25),
    ) {
        let (g, geo) = square(5);
        let m = QuasiMeasure::aarnes(g.clone(), geo).unwrap();
        let a = GridFunction::new(g.clone(), av.iter().map(|v| *v as f64 / 4.0).collect(), "a").unwrap();
        let b = GridFunction::new(
            g,
            av.iter().zip(&dv).map(|(x, d)| (*x as f64 + *d as f64) / 4.0).collect(),
            "b",
        ).unwrap();
        let ia = qmlab::integrate(&m, &a).unwrap();
        let ib = qmlab::integrate(&m, &b).unwrap();
        prop_assert!(ia <= ib + 1e-12);
        let dist = a.zip_with(&b, "d", |x, y| (x - y).abs()).unwrap().max();
        prop_assert!((ia - ib).abs() <= dist + 1e-12);
    }
}

#[test]
fn duality_no_orphan_components_exhaustive_4x4() {
    // every complement component of a nonempty set touches the set
    let g = rect4();
    for bits in 1u32..=0xffff {
        let s = cellset_from_bits(&g, bits);
        for comp in connected_components(&s.complement(), g.complement_adjacency()) {
            let touches = sets_adjacent(&comp, &s, g.region_adjacency());
            assert!(touches, "orphan component for bits {bits:x}");
        }
    }
}

#[test]
fn erode_against_dilate_duality_spot_checks() {
    let g = rect4();
    for bits in [0x0f30u32, 0x1111, 0xfffe, 0x0001] {
        let s = cellset_from_bits(&g, bits);
        // erosion peels at least as much as dilation grows back
        let opened = dilate(&g, &erode(&g, &s, 1), 1);
        assert!(opened.is_subset(&s));
    }
    let _ = Cell::new(0, 0);
}
