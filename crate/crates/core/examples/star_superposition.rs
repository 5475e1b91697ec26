// Build the 3-star field from interval solutions and the center trace, and
// find where that picture stops being exact.

use graphwave::closed_form::{center_trace_formula, star_field, star_forward, StarGeometry};
use graphwave::graph::VertexId;
use graphwave::lattice::{simulate, NodeCondition};

pub fn run_example() -> graphwave::Result<()> {
    for (n1, n2, n3) in [(3, 3, 3), (4, 4, 2), (2, 3, 4)] {
        let geom = StarGeometry::new(n1, n2, n3)?;
        let graph = geom.graph();
        let (f1, f2) = (vec![1.0, 0.5], vec![0.0, -1.0]);
        let window = geom.trace_window();

        let formula = star_forward(&f1, &f2, &geom, window - 1)?;
        let sim = simulate(
            &graph,
            &NodeCondition::matched(&graph),
            &geom.controls(&f1, &f2),
            window + 2,
        )?;
        let inside = (-1..window as i64)
            .flat_map(|t| (0..3).flat_map(move |e| (0..=geom.lengths[e]).map(move |j| (e, j, t))))
            .map(|(e, j, t)| (formula.at(e, j, t) - sim.at(e, j, t)).abs())
            .fold(0.0f64, f64::max);
        println!("({n1},{n2},{n3}): exact for t < {window}, max error {inside:e}");

        // Past the window, reflections from the driven leaves reach the center.
        let g = center_trace_formula(&f1, &f2, &geom, window + 2);
        let late = star_field(&f1, &f2, &g, &geom, window + 2)?;
        for t in window as i64..=window as i64 + 2 {
            let center = sim.vertex_value(&graph, VertexId(4), t)?;
            println!(
                "  t={t}: center {center:+.4} lattice, {:+.4} formula",
                late.at(0, n1, t)
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
