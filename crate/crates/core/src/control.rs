//! Boundary shape control on the 3-star.
//!
//! The star has its center `v_4` under the matched condition, leaves `v_1`,
//! `v_2` driven and `v_3` clamped. Given a target shape `phi` on all three
//! edges, we look for controls `f1`, `f2` such that the field at time `T`
//! equals `phi` at every site `j = 1..=N_i`.
//!
//! Edge 3 has no control of its own, so its final shape must be written by
//! the center trace `g`. One of the driven edges (the "feeding" edge) shapes
//! `g`; afterwards both driven edges set their own final shape through the
//! control samples that arrive too late to reach the center before `T`.
//! Every unknown enters its equation with a known nonzero coefficient and
//! all other terms involve samples fixed earlier, so the system is solved by
//! back-substitution through the characteristic formulas.

use crate::closed_form::{interval_left, interval_right, StarGeometry};
use crate::error::{Error, Result};
use crate::lattice::{sample, simulate, NodeCondition};

/// Residual above which [`solve_controls`] reports failure, relative to the
/// largest target value.
pub const SOLVE_TOLERANCE: f64 = 1e-9;

/// Final displacement `phi[i - 1][j - 1] = phi^i_j` for `j = 1..=N_i`.
/// The three edges meet at the center, so their last entries must agree.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeTarget {
    phi: [Vec<f64>; 3],
}

impl ShapeTarget {
    pub fn new(phi1: Vec<f64>, phi2: Vec<f64>, phi3: Vec<f64>, geom: &StarGeometry) -> Result<Self> {
        let phi = [phi1, phi2, phi3];
        for (i, p) in phi.iter().enumerate() {
            if p.len() != geom.lengths[i] {
                return Err(Error::TargetLength {
                    edge: i + 1,
                    got: p.len(),
                    expected: geom.lengths[i],
                });
            }
        }
        let center = [
            phi[0][phi[0].len() - 1],
            phi[1][phi[1].len() - 1],
            phi[2][phi[2].len() - 1],
        ];
        let scale = center.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if (center[0] - center[1]).abs() > 1e-12 * scale || (center[0] - center[2]).abs() > 1e-12 * scale {
            return Err(Error::DiscontinuousTarget(center));
        }
        Ok(ShapeTarget { phi })
    }

    pub fn zeros(geom: &StarGeometry) -> Self {
        ShapeTarget {
            phi: geom.lengths.map(|n| vec![0.0; n]),
        }
    }

    /// `phi^edge_j`; the leaf site `j = 0` reads as zero.
    pub fn get(&self, edge: usize, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.phi[edge - 1][j - 1]
        }
    }

    pub fn edge(&self, edge: usize) -> &[f64] {
        &self.phi[edge - 1]
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        ShapeTarget {
            phi: self.phi.clone().map(|p| p.into_iter().map(|x| alpha * x).collect()),
        }
    }

    fn max_abs(&self) -> f64 {
        self.phi.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// Controls at `v_1`, `v_2` for `t = 0..horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlPair {
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub horizon: usize,
}

impl ControlPair {
    pub fn max_abs_diff(&self, other: &ControlPair) -> f64 {
        let len = self.f1.len().max(other.f1.len()).max(self.f2.len()).max(other.f2.len());
        (0..len as i64)
            .map(|t| {
                let d1 = (sample(&self.f1, t) - sample(&other.f1, t)).abs();
                let d2 = (sample(&self.f2, t) - sample(&other.f2, t)).abs();
                d1.max(d2)
            })
            .fold(0.0, f64::max)
    }
}

/// `L1 = max(N1 + N3, N2)`: time needed when edge 1 feeds the center.
pub fn time_feeding_from_first(geom: &StarGeometry) -> usize {
    let [n1, n2, n3] = geom.lengths;
    (n1 + n3).max(n2)
}

/// `L2 = max(N1, N2 + N3)`: time needed when edge 2 feeds the center.
pub fn time_feeding_from_second(geom: &StarGeometry) -> usize {
    let [n1, n2, n3] = geom.lengths;
    n1.max(n2 + n3)
}

/// `T = min(L1, L2)`.
pub fn optimal_time(geom: &StarGeometry) -> usize {
    time_feeding_from_first(geom).min(time_feeding_from_second(geom))
}

/// Center trace that writes `phi3` onto edge 3 at time `horizon`:
/// `g[T - k] = phi3[N3 - k]` for `k = 0..=N3` and zero before. Returned for
/// `t = 0..=horizon`.
pub fn g_from_target(phi3: &[f64], geom: &StarGeometry, horizon: usize) -> Result<Vec<f64>> {
    let n3 = geom.lengths[2];
    if phi3.len() != n3 {
        return Err(Error::TargetLength {
            edge: 3,
            got: phi3.len(),
            expected: n3,
        });
    }
    if horizon < n3 {
        return Err(Error::TimeTooShort {
            time: horizon,
            minimum: n3,
        });
    }
    let mut g = vec![0.0; horizon + 1];
    for k in 0..n3 {
        g[horizon - k] = phi3[n3 - k - 1];
    }
    Ok(g)
}

/// Controls reaching `target` at the optimal time.
pub fn solve_controls(target: &ShapeTarget, geom: &StarGeometry) -> Result<ControlPair> {
    solve_controls_at(target, geom, optimal_time(geom))
}

/// Controls reaching `target` at `horizon`, which must be at least the
/// optimal time.
pub fn solve_controls_at(target: &ShapeTarget, geom: &StarGeometry, horizon: usize) -> Result<ControlPair> {
    let (l1, l2) = (time_feeding_from_first(geom), time_feeding_from_second(geom));
    // Edge indices 0 and 1: which driven edge feeds the center.
    let (feed, other) = if horizon >= l1 {
        (0, 1)
    } else if horizon >= l2 {
        (1, 0)
    } else {
        return Err(Error::TimeTooShort {
            time: horizon,
            minimum: l1.min(l2),
        });
    };

    let g = g_from_target(target.edge(3), geom, horizon)?;
    let n = geom.lengths;
    let mut f = [vec![0.0; horizon], vec![0.0; horizon]];

    // Stage 1: shape the center trace. The matched node relation at time t,
    //   3/2 (g[t+1] + g[t-1]) = sum_i u^i[N_i - 1, t],
    // contains f_feed[t + 1 - N_feed] with coefficient 1 on the right.
    for s in 0..=horizon - n[feed] {
        let t = (s + n[feed]) as i64 - 1;
        let mut rest = 0.0;
        for edge in 0..3 {
            rest += interval_right(&g, n[edge], n[edge] - 1, t)?;
            if edge < 2 {
                rest += interval_left(&f[edge], n[edge], n[edge] - 1, t)?;
            }
        }
        f[feed][s] = 1.5 * (sample(&g, t + 1) + sample(&g, t - 1)) - rest;
    }

    // Stage 2: final shape on each driven edge. u[j, T] contains f[T - j]
    // with coefficient 1; those samples reach the center only after T.
    let t_final = horizon as i64;
    for edge in [feed, other] {
        for j in 1..n[edge] {
            let s = horizon - j;
            let known = interval_left(&f[edge], n[edge], j, t_final)? + interval_right(&g, n[edge], j, t_final)?;
            f[edge][s] = target.get(edge + 1, j) - known;
        }
    }

    let [f1, f2] = f;
    let pair = ControlPair { f1, f2, horizon };
    let report = verify_control(&pair, target, geom, &NodeCondition::matched(&geom.graph()))?;
    let tolerance = SOLVE_TOLERANCE * target.max_abs().max(1.0);
    if report.max_residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual: report.max_residual,
            tolerance,
        });
    }
    Ok(pair)
}

/// Explicit controls for equal edge lengths `N`, horizon `2N`.
///
/// The printed closed form indexes controls `j = 0..2N-1` with sample `j`
/// acting at time `j + 1`; here the samples are shifted onto the time axis
/// (`f[0] = 0`) and boundary-site targets `phi^i_0` are zero, which drops the
/// last printed sample.
pub fn equal_length_controls(target: &ShapeTarget, n: usize) -> Result<ControlPair> {
    let geom = StarGeometry::equal(n)?;
    for edge in 1..=3 {
        if target.edge(edge).len() != n {
            return Err(Error::TargetLength {
                edge,
                got: target.edge(edge).len(),
                expected: n,
            });
        }
    }
    let horizon = optimal_time(&geom);
    let phi = |edge, j| target.get(edge, j);
    let printed_f1 = |j: usize| {
        if j < n {
            1.5 * phi(3, j + 1)
        } else {
            phi(1, 2 * n - j - 1) + 0.5 * phi(3, 2 * n - j - 1)
        }
    };
    let printed_f2 = |j: usize| {
        if j < n {
            0.0
        } else {
            phi(2, 2 * n - j - 1) - phi(3, 2 * n - j - 1)
        }
    };
    let mut f1 = vec![0.0; horizon];
    let mut f2 = vec![0.0; horizon];
    for t in 1..horizon {
        f1[t] = printed_f1(t - 1);
        f2[t] = printed_f2(t - 1);
    }
    Ok(ControlPair { f1, f2, horizon })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualEntry {
    pub edge: usize,
    pub j: usize,
    pub target: f64,
    pub actual: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub entries: Vec<ResidualEntry>,
}

/// Simulate the controls to their horizon and compare the final layer with
/// the target on every site `j = 1..=N_i`.
pub fn verify_control(
    pair: &ControlPair,
    target: &ShapeTarget,
    geom: &StarGeometry,
    condition: &NodeCondition,
) -> Result<ResidualReport> {
    let graph = geom.graph();
    let traj = simulate(&graph, condition, &geom.controls(&pair.f1, &pair.f2), pair.horizon)?;
    let t = pair.horizon as i64;
    let mut entries = Vec::new();
    for edge in 1..=3 {
        for j in 1..=geom.n(edge) {
            let actual = traj.at(edge - 1, j, t);
            let want = target.get(edge, j);
            entries.push(ResidualEntry {
                edge,
                j,
                target: want,
                actual,
                residual: actual - want,
            });
        }
    }
    let max_residual = entries.iter().fold(0.0f64, |m, e| m.max(e.residual.abs()));
    Ok(ResidualReport { max_residual, entries })
}
