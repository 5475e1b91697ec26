//! Explicit time stepping of the discrete wave equation on a graph.
//!
//! Interior sites follow the leapfrog stencil
//! `u[j, t+1] = u[j+1, t] + u[j-1, t] - u[j, t-1]`. Boundary vertices take
//! their control value (or zero when clamped). Internal vertices follow the
//! nodal-mass family of matching rules: a point mass `m` at vertex `v` of
//! degree `p` gives
//!
//! ```text
//! (1 + m) (u[v, t+1] + u[v, t-1]) = (2 + 2m - p) u[v, t] + sum of neighbor sites at t
//! ```
//!
//! and `m = -1` degenerates into the averaging constraint
//! `p u[v, t+1] = sum of neighbor sites at t+1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{BoundaryKind, DiscreteGraph, EdgeId, VertexId, VertexRole};

/// Values of `1 + m` smaller than this (other than `m = -1` itself) are rejected.
pub const MASS_CONDITIONING: f64 = 1e-9;

/// Named members of the nodal-mass family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConditionKind {
    /// `m = -1`: zero net mass, the plain discrete Kirchhoff sum.
    DirectKirchhoff,
    /// `m = 0`.
    UnitMass,
    /// `m = (p - 2) / 2`, single-layer transmission and reflection.
    Matched,
    /// The same mass at every internal vertex.
    Mass(f64),
}

impl ConditionKind {
    pub fn resolve(self, graph: &DiscreteGraph) -> NodeCondition {
        match self {
            ConditionKind::DirectKirchhoff => NodeCondition::uniform(graph, -1.0),
            ConditionKind::UnitMass => NodeCondition::uniform(graph, 0.0),
            ConditionKind::Matched => NodeCondition::matched(graph),
            ConditionKind::Mass(m) => NodeCondition::uniform(graph, m),
        }
    }
}

impl std::str::FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(ConditionKind::DirectKirchhoff),
            "unit-mass" => Ok(ConditionKind::UnitMass),
            "matched" => Ok(ConditionKind::Matched),
            other => match other.strip_prefix("mass=") {
                Some(m) => m
                    .parse()
                    .map(ConditionKind::Mass)
                    .map_err(|_| Error::Format(format!("invalid mass '{m}'"))),
                None => Err(Error::Format(format!(
                    "unknown condition '{other}', expected direct|unit-mass|matched|mass=<real>"
                ))),
            },
        }
    }
}

impl std::fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConditionKind::DirectKirchhoff => write!(f, "direct"),
            ConditionKind::UnitMass => write!(f, "unit-mass"),
            ConditionKind::Matched => write!(f, "matched"),
            ConditionKind::Mass(m) => write!(f, "mass={m}"),
        }
    }
}

/// Nodal mass `m_v` at each internal vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeCondition {
    masses: BTreeMap<VertexId, f64>,
}

impl NodeCondition {
    pub fn uniform(graph: &DiscreteGraph, mass: f64) -> Self {
        NodeCondition {
            masses: graph.internal_vertices().map(|v| (v, mass)).collect(),
        }
    }

    pub fn direct_kirchhoff(graph: &DiscreteGraph) -> Self {
        Self::uniform(graph, -1.0)
    }

    pub fn unit_mass(graph: &DiscreteGraph) -> Self {
        Self::uniform(graph, 0.0)
    }

    pub fn matched(graph: &DiscreteGraph) -> Self {
        NodeCondition {
            masses: graph
                .internal_vertices()
                .map(|v| {
                    let p = graph.degree(v).expect("internal vertex") as f64;
                    (v, (p - 2.0) / 2.0)
                })
                .collect(),
        }
    }

    pub fn from_masses(masses: impl IntoIterator<Item = (VertexId, f64)>) -> Self {
        NodeCondition {
            masses: masses.into_iter().collect(),
        }
    }

    pub fn with_mass(mut self, v: VertexId, mass: f64) -> Self {
        self.masses.insert(v, mass);
        self
    }

    pub fn mass(&self, v: VertexId) -> Option<f64> {
        self.masses.get(&v).copied()
    }

    pub fn validate(&self, graph: &DiscreteGraph) -> Result<()> {
        for &v in self.masses.keys() {
            if !graph.is_internal(v) {
                return Err(Error::MassOnBoundary(v));
            }
        }
        for v in graph.internal_vertices() {
            let m = self.mass(v).ok_or(Error::MissingMass(v))?;
            if m != -1.0 && (1.0 + m).abs() < MASS_CONDITIONING {
                return Err(Error::IllConditionedMass { vertex: v, mass: m });
            }
            if m == -1.0 {
                // The averaging constraint reads neighbor sites of the same
                // layer; those must be interior sites.
                for inc in graph.incident(v)? {
                    let (_, nb) = graph.site_of(inc);
                    let n = graph.edges()[inc.edge].n_points;
                    if nb == 0 || nb == n {
                        return Err(Error::ConstrainedNeighbor(v));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A real time series `f_0, f_1, ...` driving a boundary vertex. Samples past
/// the end of `values` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlSignal {
    pub vertex: VertexId,
    pub values: Vec<f64>,
}

impl ControlSignal {
    pub fn new(vertex: VertexId, values: Vec<f64>) -> Self {
        ControlSignal { vertex, values }
    }

    /// A unit impulse at `t = 0`.
    pub fn impulse(vertex: VertexId) -> Self {
        ControlSignal::new(vertex, vec![1.0])
    }

    pub fn at(&self, t: i64) -> f64 {
        sample(&self.values, t)
    }
}

/// Zero-extended lookup into a signal.
pub fn sample(values: &[f64], t: i64) -> f64 {
    if t < 0 {
        0.0
    } else {
        values.get(t as usize).copied().unwrap_or(0.0)
    }
}

/// One time layer: `sites[edge position][j]` for `j = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub sites: Vec<Vec<f64>>,
}

impl Layer {
    pub fn zeros(graph: &DiscreteGraph) -> Self {
        Layer {
            sites: graph.edges().iter().map(|e| vec![0.0; e.n_points + 1]).collect(),
        }
    }

    fn fits(&self, graph: &DiscreteGraph) -> bool {
        self.sites.len() == graph.edges().len()
            && self
                .sites
                .iter()
                .zip(graph.edges())
                .all(|(s, e)| s.len() == e.n_points + 1)
    }

    pub fn vertex_value(&self, graph: &DiscreteGraph, v: VertexId) -> Result<f64> {
        let inc = graph.incident(v)?[0];
        let (site, _) = graph.site_of(&inc);
        Ok(self.sites[inc.edge][site])
    }

    fn set_vertex(&mut self, graph: &DiscreteGraph, v: VertexId, value: f64) {
        for inc in graph.incident(v).expect("known vertex") {
            let (site, _) = graph.site_of(inc);
            self.sites[inc.edge][site] = value;
        }
    }

    fn neighbor_sum(&self, graph: &DiscreteGraph, v: VertexId) -> f64 {
        graph
            .incident(v)
            .expect("known vertex")
            .iter()
            .map(|inc| self.sites[inc.edge][graph.site_of(inc).1])
            .sum()
    }
}

/// Boundary controls resolved against a graph.
#[derive(Clone, Debug)]
pub struct Controls<'a> {
    signals: BTreeMap<VertexId, &'a [f64]>,
}

impl<'a> Controls<'a> {
    pub fn resolve(graph: &DiscreteGraph, signals: &'a [ControlSignal]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in signals {
            match graph.role(s.vertex)? {
                VertexRole::Boundary(BoundaryKind::Control) => {}
                _ => return Err(Error::NotAControlVertex(s.vertex)),
            }
            if map.insert(s.vertex, s.values.as_slice()).is_some() {
                return Err(Error::DuplicateControl(s.vertex));
            }
        }
        for v in graph.control_vertices() {
            if !map.contains_key(&v) {
                return Err(Error::MissingControl(v));
            }
        }
        Ok(Controls { signals: map })
    }

    fn value(&self, v: VertexId, t: i64) -> f64 {
        self.signals.get(&v).map_or(0.0, |s| sample(s, t))
    }
}

/// Advance one layer: given layers `t` and `t - 1`, return layer `t + 1`.
pub fn step(
    graph: &DiscreteGraph,
    condition: &NodeCondition,
    current: &Layer,
    previous: &Layer,
    controls: &Controls<'_>,
    t: usize,
) -> Result<Layer> {
    if !current.fits(graph) || !previous.fits(graph) {
        return Err(Error::LayerShape);
    }
    let mut next = Layer::zeros(graph);

    for (pos, e) in graph.edges().iter().enumerate() {
        let (cur, prev, out) = (&current.sites[pos], &previous.sites[pos], &mut next.sites[pos]);
        for j in 1..e.n_points {
            out[j] = cur[j + 1] + cur[j - 1] - prev[j];
        }
    }

    for (v, kind) in graph.boundary() {
        let value = match kind {
            BoundaryKind::Control => controls.value(v, t as i64 + 1),
            BoundaryKind::Clamped => 0.0,
        };
        next.set_vertex(graph, v, value);
    }

    for v in graph.internal_vertices() {
        let m = condition.mass(v).ok_or(Error::MissingMass(v))?;
        let p = graph.degree(v)? as f64;
        let value = if m == -1.0 {
            next.neighbor_sum(graph, v) / p
        } else {
            (current.neighbor_sum(graph, v) + (2.0 + 2.0 * m - p) * current.vertex_value(graph, v)?
                - (1.0 + m) * previous.vertex_value(graph, v)?)
                / (1.0 + m)
        };
        next.set_vertex(graph, v, value);
    }
    Ok(next)
}

/// The field on every edge for `t = -1..=horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    edge_ids: Vec<EdgeId>,
    /// `layers[t + 1]`.
    layers: Vec<Layer>,
}

impl Trajectory {
    /// Wrap precomputed layers for `t = -1..`; `layers[0]` is the `t = -1` layer.
    pub fn from_layers(graph: &DiscreteGraph, layers: Vec<Layer>) -> Result<Self> {
        if layers.len() < 2 || layers.iter().any(|l| !l.fits(graph)) {
            return Err(Error::LayerShape);
        }
        Ok(Trajectory {
            edge_ids: graph.edges().iter().map(|e| e.id).collect(),
            layers,
        })
    }

    pub fn horizon(&self) -> usize {
        self.layers.len() - 2
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn layer(&self, t: i64) -> Result<&Layer> {
        if t < -1 || t > self.horizon() as i64 {
            return Err(Error::TimeOutOfRange {
                t,
                min: -1,
                max: self.horizon() as i64,
            });
        }
        Ok(&self.layers[(t + 1) as usize])
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// `u^e_{j,t}`, by edge position.
    pub fn at(&self, edge: usize, j: usize, t: i64) -> f64 {
        self.layers[(t + 1) as usize].sites[edge][j]
    }

    pub fn value(&self, e: EdgeId, j: usize, t: i64) -> Result<f64> {
        let pos = self
            .edge_ids
            .iter()
            .position(|&id| id == e)
            .ok_or(Error::UnknownEdge(e))?;
        let layer = self.layer(t)?;
        layer.sites[pos].get(j).copied().ok_or(Error::SiteOutOfRange {
            j,
            n: layer.sites[pos].len() - 1,
        })
    }

    pub fn vertex_value(&self, graph: &DiscreteGraph, v: VertexId, t: i64) -> Result<f64> {
        self.layer(t)?.vertex_value(graph, v)
    }

    /// Largest pointwise difference to another trajectory of the same shape.
    pub fn max_abs_diff(&self, other: &Trajectory) -> f64 {
        assert_eq!(self.layers.len(), other.layers.len(), "horizons differ");
        self.layers
            .iter()
            .zip(&other.layers)
            .flat_map(|(a, b)| a.sites.iter().zip(&b.sites))
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// Run the lattice from rest to `horizon`.
pub fn simulate(
    graph: &DiscreteGraph,
    condition: &NodeCondition,
    controls: &[ControlSignal],
    horizon: usize,
) -> Result<Trajectory> {
    condition.validate(graph)?;
    let controls = Controls::resolve(graph, controls)?;

    let before = Layer::zeros(graph);
    let mut initial = Layer::zeros(graph);
    for v in graph.control_vertices() {
        initial.set_vertex(graph, v, controls.value(v, 0));
    }
    let mut layers = Vec::with_capacity(horizon + 2);
    layers.push(before);
    layers.push(initial);
    for t in 0..horizon {
        let next = step(graph, condition, &layers[t + 1], &layers[t], &controls, t)?;
        layers.push(next);
    }
    Trajectory::from_layers(graph, layers)
}

/// Discrete kinetic and potential energy at one time layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    pub t: usize,
    pub kinetic: f64,
    pub potential: f64,
}

/// Kinetic energy between layers `t - 1` and `t`, for `1 <= t <= horizon`.
/// Every vertex carries unit mass, internal vertices add their nodal mass.
pub fn kinetic_energy(
    trajectory: &Trajectory,
    graph: &DiscreteGraph,
    condition: &NodeCondition,
    t: usize,
) -> Result<f64> {
    if t < 1 || t > trajectory.horizon() {
        return Err(Error::TimeOutOfRange {
            t: t as i64,
            min: 1,
            max: trajectory.horizon() as i64,
        });
    }
    let (now, before) = (trajectory.layer(t as i64)?, trajectory.layer(t as i64 - 1)?);
    let mut energy = 0.0;
    for (pos, e) in graph.edges().iter().enumerate() {
        for j in 1..e.n_points {
            let d = now.sites[pos][j] - before.sites[pos][j];
            energy += d * d / 2.0;
        }
    }
    for v in graph.vertices() {
        let d = now.vertex_value(graph, v)? - before.vertex_value(graph, v)?;
        let mass = 1.0 + condition.mass(v).unwrap_or(0.0);
        energy += mass * d * d / 2.0;
    }
    Ok(energy)
}

/// Potential energy of layer `t`, for `0 <= t <= horizon`.
pub fn potential_energy(trajectory: &Trajectory, graph: &DiscreteGraph, t: usize) -> Result<f64> {
    if t > trajectory.horizon() {
        return Err(Error::TimeOutOfRange {
            t: t as i64,
            min: 0,
            max: trajectory.horizon() as i64,
        });
    }
    let now = trajectory.layer(t as i64)?;
    let mut energy = 0.0;
    for (pos, e) in graph.edges().iter().enumerate() {
        for j in 1..=e.n_points {
            let d = now.sites[pos][j] - now.sites[pos][j - 1];
            energy += d * d / 2.0;
        }
    }
    Ok(energy)
}

pub fn energies(
    trajectory: &Trajectory,
    graph: &DiscreteGraph,
    condition: &NodeCondition,
    t: usize,
) -> Result<EnergyReport> {
    Ok(EnergyReport {
        t,
        kinetic: kinetic_energy(trajectory, graph, condition, t)?,
        potential: potential_energy(trajectory, graph, t)?,
    })
}

/// `S[u] = sum_{t=1}^{T} T_D(t) - sum_{t=0}^{T} U_D(t)`.
pub fn action(trajectory: &Trajectory, graph: &DiscreteGraph, condition: &NodeCondition) -> Result<f64> {
    let horizon = trajectory.horizon();
    let mut s = 0.0;
    for t in 1..=horizon {
        s += kinetic_energy(trajectory, graph, condition, t)?;
    }
    for t in 0..=horizon {
        s -= potential_energy(trajectory, graph, t)?;
    }
    Ok(s)
}

/// Largest `|u[j,t+1] + u[j,t-1] - u[j+1,t] - u[j-1,t]|` over interior sites
/// and `0 <= t < horizon`.
pub fn stencil_residual(trajectory: &Trajectory, graph: &DiscreteGraph) -> f64 {
    let mut worst = 0.0f64;
    for t in 0..trajectory.horizon() as i64 {
        for (pos, e) in graph.edges().iter().enumerate() {
            for j in 1..e.n_points {
                let r = trajectory.at(pos, j, t + 1) + trajectory.at(pos, j, t - 1)
                    - trajectory.at(pos, j + 1, t)
                    - trajectory.at(pos, j - 1, t);
                worst = worst.max(r.abs());
            }
        }
    }
    worst
}

/// Largest residual of the nodal-mass matching rule over internal vertices
/// and `0 <= t < horizon`. For `m = -1` the averaging constraint is checked
/// at every layer `0..=horizon`.
pub fn node_residual(trajectory: &Trajectory, graph: &DiscreteGraph, condition: &NodeCondition) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in graph.internal_vertices() {
        let m = condition.mass(v).ok_or(Error::MissingMass(v))?;
        let p = graph.degree(v)? as f64;
        if m == -1.0 {
            for t in 0..=trajectory.horizon() as i64 {
                let layer = trajectory.layer(t)?;
                let r = layer.neighbor_sum(graph, v) - p * layer.vertex_value(graph, v)?;
                worst = worst.max(r.abs());
            }
        } else {
            for t in 0..trajectory.horizon() as i64 {
                let u = |s: i64| trajectory.vertex_value(graph, v, s);
                let r = -(1.0 + m) * (u(t + 1)? + u(t - 1)?)
                    + (2.0 + 2.0 * m - p) * u(t)?
                    + trajectory.layer(t)?.neighbor_sum(graph, v);
                worst = worst.max(r.abs());
            }
        }
    }
    Ok(worst)
}
