// Steer the 3-star from rest to a prescribed shape with controls at v1 and v2.

use graphwave::closed_form::StarGeometry;
use graphwave::control::{optimal_time, solve_controls, verify_control, ShapeTarget};
use graphwave::lattice::NodeCondition;

pub fn run_example() -> graphwave::Result<()> {
    let geom = StarGeometry::new(4, 2, 5)?;
    // A tent on each edge, all meeting at height 1 at the center.
    let tent = |n: usize| (1..=n).map(|j| j as f64 / n as f64).collect::<Vec<_>>();
    let target = ShapeTarget::new(tent(4), tent(2), tent(5), &geom)?;

    let pair = solve_controls(&target, &geom)?;
    println!("optimal time T = {}", optimal_time(&geom));
    println!("{:>3} {:>9} {:>9}", "t", "f1", "f2");
    for t in 0..pair.horizon {
        println!("{t:>3} {:>9.4} {:>9.4}", pair.f1[t], pair.f2[t]);
    }

    let report = verify_control(&pair, &target, &geom, &NodeCondition::matched(&geom.graph()))?;
    println!("max residual at T: {:e}", report.max_residual);
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
