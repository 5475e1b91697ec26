// Describe a graph in the text format, drive it, and watch the energy.

use graphwave::graph::{GraphSpec, VertexId};
use graphwave::lattice::{action, energies, simulate, ConditionKind, ControlSignal};

const SPEC: &str = "
# a tree: v5 has degree 3, v6 has degree 4
edge 1 1 5 3
edge 2 2 5 2
edge 3 5 6 4
edge 4 3 6 3
edge 5 4 6 2
edge 6 6 7 3
boundary 1 control
";

pub fn run_example() -> graphwave::Result<()> {
    let graph = SPEC.parse::<GraphSpec>()?.build()?;
    let drive = vec![ControlSignal::new(VertexId(1), vec![0.0, 1.0, 1.0, 0.0])];
    for kind in [
        ConditionKind::Matched,
        ConditionKind::DirectKirchhoff,
        ConditionKind::Mass(2.0),
    ] {
        let cond = kind.resolve(&graph);
        let traj = simulate(&graph, &cond, &drive, 20)?;
        println!("{kind}: action {:.4}", action(&traj, &graph, &cond)?);
        for t in (4..=20).step_by(4) {
            let e = energies(&traj, &graph, &cond, t)?;
            println!("  t={t:2} kinetic {:.4} potential {:.4}", e.kinetic, e.potential);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
