mod common;

use common::*;
use graphwave::closed_form::StarGeometry;
use graphwave::control::{
    equal_length_controls, optimal_time, solve_controls, solve_controls_at, time_feeding_from_first,
    time_feeding_from_second, verify_control, ShapeTarget,
};
use graphwave::lattice::NodeCondition;
use graphwave::Error;
use proptest::prelude::*;

fn arb_geometry() -> impl Strategy<Value = StarGeometry> {
    (2usize..10, 2usize..10, 2usize..10).prop_map(|(a, b, c)| StarGeometry::new(a, b, c).unwrap())
}

fn residual(target: &ShapeTarget, geom: &StarGeometry, horizon: usize) -> f64 {
    let pair = solve_controls_at(target, geom, horizon).unwrap();
    verify_control(&pair, target, geom, &NodeCondition::matched(&geom.graph()))
        .unwrap()
        .max_residual
}

fn mix(a: f64, x: &ShapeTarget, b: f64, y: &ShapeTarget, geom: &StarGeometry) -> ShapeTarget {
    let [p1, p2, p3] = [1, 2, 3].map(|e| combine(a, x.edge(e), b, y.edge(e)));
    ShapeTarget::new(p1, p2, p3, geom).unwrap()
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn solved_controls_reach_the_target(geom in arb_geometry(), seed in any::<u64>()) {
        let target = random_target(&mut rng(seed), &geom);
        prop_assert!(residual(&target, &geom, optimal_time(&geom)) <= 1e-10);
    }

    #[test]
    fn longer_horizons_also_work(geom in arb_geometry(), extra in 1usize..6, seed in any::<u64>()) {
        let target = random_target(&mut rng(seed), &geom);
        prop_assert!(residual(&target, &geom, optimal_time(&geom) + extra) <= 1e-10);
    }

    #[test]
    fn controls_depend_linearly_on_the_target(
        geom in arb_geometry(),
        seed in any::<u64>(),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let mut r = rng(seed);
        let (x, y) = (random_target(&mut r, &geom), random_target(&mut r, &geom));
        let (cx, cy) = (solve_controls(&x, &geom).unwrap(), solve_controls(&y, &geom).unwrap());
        let cz = solve_controls(&mix(a, &x, b, &y, &geom), &geom).unwrap();
        for t in 0..cz.horizon {
            let at = |v: &[f64]| v.get(t).copied().unwrap_or(0.0);
            prop_assert!((at(&cz.f1) - a * at(&cx.f1) - b * at(&cy.f1)).abs() <= 1e-10);
            prop_assert!((at(&cz.f2) - a * at(&cx.f2) - b * at(&cy.f2)).abs() <= 1e-10);
        }
    }

    #[test]
    fn shorter_horizons_are_refused(geom in arb_geometry()) {
        let target = ShapeTarget::zeros(&geom);
        let short = optimal_time(&geom) - 1;
        let refused = matches!(solve_controls_at(&target, &geom, short), Err(Error::TimeTooShort { .. }));
        prop_assert!(refused);
    }

    #[test]
    fn explicit_equal_length_controls_agree(n in 2usize..12, seed in any::<u64>()) {
        let geom = StarGeometry::equal(n).unwrap();
        let target = random_target(&mut rng(seed), &geom);
        let explicit = equal_length_controls(&target, n).unwrap();
        let solved = solve_controls(&target, &geom).unwrap();
        prop_assert!(explicit.max_abs_diff(&solved) <= 1e-12);
    }
}

#[test]
fn optimal_time_picks_the_faster_feed() {
    let geom = StarGeometry::new(2, 2, 8).unwrap();
    assert_eq!(time_feeding_from_first(&geom), 10);
    assert_eq!(time_feeding_from_second(&geom), 10);
    let geom = StarGeometry::new(6, 2, 3).unwrap();
    assert_eq!(time_feeding_from_first(&geom), 9);
    assert_eq!(time_feeding_from_second(&geom), 6);
    assert_eq!(optimal_time(&geom), 6);
}

#[test]
fn discontinuous_targets_are_rejected() {
    let geom = StarGeometry::equal(3).unwrap();
    let t = ShapeTarget::new(vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.5], &geom);
    assert!(matches!(t, Err(Error::DiscontinuousTarget(_))));
    let t = ShapeTarget::new(vec![0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], &geom);
    assert!(matches!(t, Err(Error::TargetLength { .. })));
}
