// The characteristic solution of a driven interval against time stepping.

use graphwave::closed_form::interval_left;
use graphwave::graph::{interval_graph, VertexId};
use graphwave::lattice::{simulate, ControlSignal, NodeCondition};

pub fn run_example() -> graphwave::Result<()> {
    let n = 6;
    let horizon = 4 * n;
    // A smooth bump followed by silence.
    let f: Vec<f64> = (0..5).map(|t| (std::f64::consts::PI * t as f64 / 4.0).sin()).collect();

    let graph = interval_graph(n)?;
    let traj = simulate(
        &graph,
        &NodeCondition::matched(&graph),
        &[ControlSignal::new(VertexId(1), f.clone())],
        horizon,
    )?;

    let mut worst = 0.0f64;
    for t in 0..=horizon as i64 {
        let row: Vec<String> = (0..=n)
            .map(|j| {
                let exact = interval_left(&f, n, j, t).unwrap();
                worst = worst.max((exact - traj.at(0, j, t)).abs());
                format!("{exact:6.3}")
            })
            .collect();
        println!("t={t:3} {}", row.join(" "));
    }
    println!("max |closed form - lattice| = {worst:e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
