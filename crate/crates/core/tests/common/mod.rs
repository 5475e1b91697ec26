//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use graphwave::closed_form::StarGeometry;
use graphwave::control::ShapeTarget;
use graphwave::graph::{DiscreteGraph, EdgeEnd, GraphSpec, VertexId};
use graphwave::lattice::{
    action, node_residual, simulate, stencil_residual, ConditionKind, ControlSignal, Layer, NodeCondition, Trajectory,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Proptest settings without on-disk regression files.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_signal(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Small integers: every update stays exact in floating point.
pub fn integer_signal(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-4i32..=4) as f64).collect()
}

/// Random target on the 3-star, continuous at the center.
pub fn random_target(rng: &mut impl Rng, geom: &StarGeometry) -> ShapeTarget {
    let center: f64 = rng.gen_range(-1.0..1.0);
    let mut phi = geom.lengths.map(|n| {
        let mut v = random_signal(rng, n);
        v[n - 1] = center;
        v
    });
    let phi3 = std::mem::take(&mut phi[2]);
    let phi2 = std::mem::take(&mut phi[1]);
    let phi1 = std::mem::take(&mut phi[0]);
    ShapeTarget::new(phi1, phi2, phi3, geom).expect("continuous target")
}

pub const CONDITIONS: [ConditionKind; 5] = [
    ConditionKind::DirectKirchhoff,
    ConditionKind::UnitMass,
    ConditionKind::Matched,
    ConditionKind::Mass(0.7),
    ConditionKind::Mass(-0.4),
];

/// Test graphs: a star, a tree with vertices of degree 3 and 4, a graph with
/// a cycle, and a path through a degree-2 vertex.
pub fn test_graphs() -> Vec<(&'static str, DiscreteGraph)> {
    let specs = [
        (
            "star(3,4,5)",
            "edge 1 1 4 3\nedge 2 2 4 4\nedge 3 3 4 5\nboundary 1 control\n",
        ),
        (
            "tree",
            "edge 1 1 5 3\nedge 2 2 5 2\nedge 3 5 6 4\nedge 4 3 6 3\nedge 5 4 6 2\nedge 6 6 7 3\n\
             boundary 1 control\nboundary 4 control\n",
        ),
        (
            "cycle",
            "edge 1 4 1 3\nedge 2 1 2 3\nedge 3 2 3 4\nedge 4 3 1 2\nedge 5 5 2 2\nedge 6 6 3 4\n\
             boundary 4 control\nboundary 6 control\n",
        ),
        ("path", "edge 1 1 2 3\nedge 2 2 3 5\nboundary 1 control\n"),
    ];
    specs
        .into_iter()
        .map(|(name, text)| {
            let g = text.parse::<GraphSpec>().unwrap().build().unwrap();
            (name, g)
        })
        .collect()
}

pub fn random_controls(rng: &mut impl Rng, graph: &DiscreteGraph, len: usize) -> Vec<ControlSignal> {
    graph
        .control_vertices()
        .map(|v| ControlSignal::new(v, random_signal(rng, len)))
        .collect()
}

pub fn first_control(graph: &DiscreteGraph) -> VertexId {
    graph.control_vertices().next().expect("a control vertex")
}

/// Largest `|u|` in a trajectory, at least 1; used to scale tolerances for
/// conditions whose solutions grow.
pub fn scale(traj: &Trajectory) -> f64 {
    traj.layers()
        .iter()
        .flat_map(|l| l.sites.iter().flatten())
        .fold(1.0f64, |m, x| m.max(x.abs()))
}

pub fn combine(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    (0..x.len().max(y.len()))
        .map(|t| a * x.get(t).copied().unwrap_or(0.0) + b * y.get(t).copied().unwrap_or(0.0))
        .collect()
}

/// One site whose value a perturbation may move: an interior lattice site or
/// an internal vertex (all of its mirrored endpoint copies).
#[derive(Clone, Copy, Debug)]
pub enum Site {
    Interior { edge: usize, j: usize },
    Vertex(VertexId),
}

pub fn movable_sites(graph: &DiscreteGraph) -> Vec<Site> {
    let mut sites = Vec::new();
    for (pos, e) in graph.edges().iter().enumerate() {
        for j in 1..e.n_points {
            sites.push(Site::Interior { edge: pos, j });
        }
    }
    sites.extend(graph.internal_vertices().map(Site::Vertex));
    sites
}

pub fn bump(graph: &DiscreteGraph, layer: &mut Layer, site: Site, by: f64) {
    match site {
        Site::Interior { edge, j } => layer.sites[edge][j] += by,
        Site::Vertex(v) => {
            for inc in graph.incident(v).unwrap() {
                let j = match inc.side {
                    EdgeEnd::Start => 0,
                    EdgeEnd::End => graph.edges()[inc.edge].n_points,
                };
                layer.sites[inc.edge][j] += by;
            }
        }
    }
}

/// `traj` with `by` added at `site` in layer `t`.
pub fn perturbed(graph: &DiscreteGraph, traj: &Trajectory, site: Site, t: i64, by: f64) -> Trajectory {
    let mut layers = traj.layers().to_vec();
    bump(graph, &mut layers[(t + 1) as usize], site, by);
    Trajectory::from_layers(graph, layers).unwrap()
}

/// A trajectory that is zero except for `by` at one site of layer `t`.
pub fn single_site(graph: &DiscreteGraph, horizon: usize, site: Site, t: i64, by: f64) -> Trajectory {
    let layers = vec![Layer::zeros(graph); horizon + 2];
    let zero = Trajectory::from_layers(graph, layers).unwrap();
    perturbed(graph, &zero, site, t, by)
}

/// First variation of the action at `traj` in the direction of a one-site
/// bump, with the exact quadratic part removed:
/// `(S[u + eps h] - S[u] - eps^2 S[h]) / eps`.
pub fn first_variation(
    graph: &DiscreteGraph,
    cond: &NodeCondition,
    traj: &Trajectory,
    site: Site,
    t: i64,
    eps: f64,
) -> f64 {
    let s0 = action(traj, graph, cond).unwrap();
    let s1 = action(&perturbed(graph, traj, site, t, eps), graph, cond).unwrap();
    let h = single_site(graph, traj.horizon(), site, t, 1.0);
    let sh = action(&h, graph, cond).unwrap();
    (s1 - s0 - eps * eps * sh) / eps
}

/// Residuals of a simulated run, scaled by the largest field value.
pub struct Residuals {
    pub stencil: f64,
    pub node: f64,
    pub scale: f64,
}

pub fn residuals(graph: &DiscreteGraph, cond: &NodeCondition, traj: &Trajectory) -> Residuals {
    Residuals {
        stencil: stencil_residual(traj, graph),
        node: node_residual(traj, graph, cond).unwrap(),
        scale: scale(traj),
    }
}

pub fn run(graph: &DiscreteGraph, kind: ConditionKind, controls: &[ControlSignal], horizon: usize) -> Trajectory {
    simulate(graph, &kind.resolve(graph), controls, horizon).unwrap()
}

/// Random connected graph: a random tree over `m` vertices plus a few chords.
pub fn arb_spec() -> impl Strategy<Value = GraphSpec> {
    (3usize..9)
        .prop_flat_map(|m| {
            let parents: Vec<_> = (1..m).map(|v| 0..v).collect();
            let chords = prop::collection::vec((0..m, 0..m), 0..3);
            let lengths = prop::collection::vec(2usize..7, m + 3);
            (Just(m), parents, chords, lengths, any::<bool>())
        })
        .prop_map(|(_, parents, chords, lengths, flip)| {
            let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in chords {
                let (a, b) = (a.min(b), a.max(b));
                if a != b && !pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)) {
                    pairs.push((a, b));
                }
            }
            // A pendant edge guarantees at least one leaf.
            let m = parents.len() + 1;
            pairs.push((0, m));
            let mut spec = GraphSpec::default();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let (s, e) = if flip && i % 2 == 1 { (b, a) } else { (a, b) };
                spec = spec.edge(i + 1, s + 1, e + 1, lengths[i]);
            }
            spec
        })
}

/// Random connected graph with every leaf controlled.
pub fn arb_graph() -> impl Strategy<Value = DiscreteGraph> {
    arb_spec().prop_map(|spec| {
        let g = spec.clone().build().expect("valid random graph");
        let leaves: Vec<_> = g.boundary().map(|(v, _)| v.0).collect();
        leaves
            .into_iter()
            .fold(spec, |s, v| s.boundary(v, graphwave::graph::BoundaryKind::Control))
            .build()
            .expect("valid random graph")
    })
}

pub fn arb_condition() -> impl Strategy<Value = ConditionKind> {
    prop_oneof![
        Just(ConditionKind::DirectKirchhoff),
        Just(ConditionKind::UnitMass),
        Just(ConditionKind::Matched),
        (-0.9f64..2.0).prop_map(ConditionKind::Mass),
    ]
}
