//! Characteristic (d'Alembert-type) solution formulas.
//!
//! On a single edge `0..=N` with one end driven and the other clamped, every
//! site value is a finite signed sum of control samples taken along the
//! characteristics `t - j` and `t + j`, each reflection off a clamped end
//! flipping the sign. On the 3-star with matched center the same formulas,
//! fed with the center trace, give the whole field.

use crate::error::{Error, Result};
use crate::graph::{BoundaryKind, DiscreteGraph, GraphSpec};
use crate::lattice::{sample, ControlSignal, Layer, Trajectory};

/// Field at site `j`, time `t` on `0..=n`, driven by `f` at `j = 0` and
/// clamped at `j = n`, starting from rest.
pub fn interval_left(f: &[f64], n: usize, j: usize, t: i64) -> Result<f64> {
    if j > n {
        return Err(Error::SiteOutOfRange { j, n });
    }
    let (n, j) = (n as i64, j as i64);
    let period = 2 * n;
    let mut value = 0.0;
    let mut idx = t - j;
    while idx >= 0 {
        value += sample(f, idx);
        idx -= period;
    }
    let mut idx = t + j - period;
    while idx >= 0 {
        value -= sample(f, idx);
        idx -= period;
    }
    Ok(value)
}

/// Field at site `j`, time `t` on `0..=n`, driven by `g` at `j = n` and
/// clamped at `j = 0`, starting from rest.
pub fn interval_right(g: &[f64], n: usize, j: usize, t: i64) -> Result<f64> {
    if j > n {
        return Err(Error::SiteOutOfRange { j, n });
    }
    let (n, j) = (n as i64, j as i64);
    let period = 2 * n;
    let mut value = 0.0;
    let mut idx = t + j - n;
    while idx >= 0 {
        value += sample(g, idx);
        idx -= period;
    }
    let mut idx = t - j - n;
    while idx >= 0 {
        value -= sample(g, idx);
        idx -= period;
    }
    Ok(value)
}

/// Edge lattice sizes of the 3-star. Edge `i` runs from leaf `v_i` to the
/// center `v_4`; `v_1`, `v_2` are driven and `v_3` is clamped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarGeometry {
    pub lengths: [usize; 3],
}

impl StarGeometry {
    pub fn new(n1: usize, n2: usize, n3: usize) -> Result<Self> {
        let lengths = [n1, n2, n3];
        if lengths.iter().any(|&n| n < 2) {
            return Err(Error::InvalidGeometry(lengths.to_vec()));
        }
        Ok(StarGeometry { lengths })
    }

    pub fn equal(n: usize) -> Result<Self> {
        Self::new(n, n, n)
    }

    pub fn n(&self, edge: usize) -> usize {
        self.lengths[edge - 1]
    }

    /// Exclusive upper bound on horizons for which the center trace formula
    /// holds: the first scattered pulse returns to the center at
    /// `min(N1, N2) + 2 min(N1, N2, N3)`.
    pub fn trace_window(&self) -> usize {
        let [n1, n2, _] = self.lengths;
        n1.min(n2) + 2 * self.lengths.iter().min().unwrap()
    }

    /// The looser bound `N1 + N2 + N3 + min - max`. It coincides with
    /// [`Self::trace_window`] when edge 3 is the shortest and overshoots it
    /// otherwise, e.g. (2, 3, 4) gives 7 while the formula first fails at 6.
    pub fn claimed_trace_window(&self) -> usize {
        let sum: usize = self.lengths.iter().sum();
        let min = *self.lengths.iter().min().unwrap();
        let max = *self.lengths.iter().max().unwrap();
        sum + min - max
    }

    /// Star graph with `v_1`, `v_2` controlled and `v_3` clamped.
    pub fn graph(&self) -> DiscreteGraph {
        let [n1, n2, n3] = self.lengths;
        GraphSpec::default()
            .edge(1, 1, 4, n1)
            .edge(2, 2, 4, n2)
            .edge(3, 3, 4, n3)
            .boundary(1, BoundaryKind::Control)
            .boundary(2, BoundaryKind::Control)
            .boundary(3, BoundaryKind::Clamped)
            .build()
            .expect("valid star geometry")
    }

    /// The two control signals in the order expected by [`Self::graph`].
    pub fn controls(&self, f1: &[f64], f2: &[f64]) -> Vec<ControlSignal> {
        let g = self.graph();
        let mut it = g.control_vertices();
        let (v1, v2) = (it.next().unwrap(), it.next().unwrap());
        vec![ControlSignal::new(v1, f1.to_vec()), ControlSignal::new(v2, f2.to_vec())]
    }
}

/// Center trace `g_t = 2/3 (f1[t - N1] + f2[t - N2])` for `t = 0..=horizon`.
pub fn star_center_trace(f1: &[f64], f2: &[f64], geom: &StarGeometry, horizon: usize) -> Result<Vec<f64>> {
    let bound = geom.trace_window();
    if horizon >= bound {
        return Err(Error::WindowExceeded { horizon, bound });
    }
    Ok(center_trace_formula(f1, f2, geom, horizon))
}

/// The center trace formula evaluated without any window check.
pub fn center_trace_formula(f1: &[f64], f2: &[f64], geom: &StarGeometry, horizon: usize) -> Vec<f64> {
    let [n1, n2, _] = geom.lengths;
    (0..=horizon as i64)
        .map(|t| 2.0 / 3.0 * (sample(f1, t - n1 as i64) + sample(f2, t - n2 as i64)))
        .collect()
}

/// Full 3-star field for `t = -1..=horizon` by superposing interval
/// solutions with the center trace.
pub fn star_forward(f1: &[f64], f2: &[f64], geom: &StarGeometry, horizon: usize) -> Result<Trajectory> {
    let g = star_center_trace(f1, f2, geom, horizon)?;
    star_field(f1, f2, &g, geom, horizon)
}

/// 3-star field given an already known center trace `g` (zero-extended).
pub fn star_field(f1: &[f64], f2: &[f64], g: &[f64], geom: &StarGeometry, horizon: usize) -> Result<Trajectory> {
    let graph = geom.graph();
    let drives: [Option<&[f64]>; 3] = [Some(f1), Some(f2), None];
    let mut layers = Vec::with_capacity(horizon + 2);
    layers.push(Layer::zeros(&graph));
    for t in 0..=horizon as i64 {
        let mut layer = Layer::zeros(&graph);
        for (pos, drive) in drives.iter().enumerate() {
            let n = geom.lengths[pos];
            for j in 0..=n {
                let mut u = interval_right(g, n, j, t)?;
                if let Some(f) = drive {
                    u += interval_left(f, n, j, t)?;
                }
                layer.sites[pos][j] = u;
            }
        }
        layers.push(layer);
    }
    Trajectory::from_layers(&graph, layers)
}
