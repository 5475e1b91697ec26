//! Scattering of a unit pulse at the center of a star.
//!
//! A unit impulse is injected at leaf `v_1` of the star `S_k` (every other
//! leaf clamped) and followed through the center. The tables show the whole
//! field of `S_3` with `N = 3` under three node conditions; the transmission
//! measurement extracts the transmitted and reflected amplitudes.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{star_graph, VertexId};
use crate::lattice::{simulate, ConditionKind, ControlSignal, Trajectory};

/// Values closer than this to zero count as no signal.
const PULSE_THRESHOLD: f64 = 1e-12;

/// Field of the impulse-driven equal-length 3-star, one row per time layer.
/// Columns: edge 1 sites `0..=N`, the center, then edge 2 (equal to edge 3)
/// sites `N-1` down to `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarTable {
    pub condition: ConditionKind,
    pub n: usize,
    /// Column headers as lattice indices.
    pub sites: Vec<usize>,
    /// `(t, values)` from the top (latest) row down to `t = -1`.
    pub rows: Vec<(i64, Vec<f64>)>,
}

pub fn star_table(condition: ConditionKind, n: usize, horizon: usize) -> Result<StarTable> {
    let graph = star_graph(&[n, n, n])?;
    let cond = condition.resolve(&graph);
    let traj = simulate(&graph, &cond, &[ControlSignal::impulse(VertexId(1))], horizon)?;
    let mut sites: Vec<usize> = (0..=n).collect();
    sites.extend((0..n).rev());
    let rows = (-1..=horizon as i64)
        .rev()
        .map(|t| {
            let mut row: Vec<f64> = (0..=n).map(|j| traj.at(0, j, t)).collect();
            row.extend((0..n).rev().map(|j| traj.at(1, j, t)));
            (t, row)
        })
        .collect();
    Ok(StarTable {
        condition,
        n,
        sites,
        rows,
    })
}

/// The three `S_3`, `N = 3`, impulse tables for `t = -1..=6`: direct
/// Kirchhoff, unit mass, matched.
pub fn run_tables() -> Result<Vec<StarTable>> {
    [
        ConditionKind::DirectKirchhoff,
        ConditionKind::UnitMass,
        ConditionKind::Matched,
    ]
    .into_iter()
    .map(|c| star_table(c, 3, 6))
    .collect()
}

/// `p/q` with `q <= 6` when `x` is within `1e-12` of one, else `None`.
pub fn as_small_rational(x: f64) -> Option<(i64, i64)> {
    for q in 1..=6i64 {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() <= 1e-12 {
            let p = p as i64;
            let d = gcd(p.abs(), q);
            return Some((p / d, q / d));
        }
    }
    None
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

pub fn format_rational(x: f64) -> String {
    match as_small_rational(x) {
        Some((p, 1)) => p.to_string(),
        Some((p, q)) => format!("{p}/{q}"),
        None => format_decimal(x),
    }
}

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude < -4 {
        let s = format!("{x:.11e}");
        let (mantissa, exp) = s.split_once('e').unwrap();
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

impl StarTable {
    fn render(&self, f: &mut fmt::Formatter<'_>, cell: fn(f64) -> String) -> fmt::Result {
        let n = self.n;
        let mut body: Vec<(String, Vec<String>)> = self
            .rows
            .iter()
            .map(|(t, row)| (t.to_string(), row.iter().map(|&x| cell(x)).collect()))
            .collect();
        body.push(("t/j".into(), self.sites.iter().map(|j| j.to_string()).collect()));
        let lead = body.iter().map(|(t, _)| t.len()).max().unwrap_or(1);
        let width = body
            .iter()
            .flat_map(|(_, r)| r.iter().map(String::len))
            .max()
            .unwrap_or(1);
        writeln!(f, "condition: {} (S_3, N = {n}, unit impulse at v1)", self.condition)?;
        for (i, (t, row)) in body.iter().enumerate() {
            if i + 1 == body.len() {
                writeln!(f, "{}", "-".repeat(lead + 3 + (width + 1) * row.len() + 4))?;
            }
            write!(f, "{t:>lead$} |")?;
            for (c, v) in row.iter().enumerate() {
                if c == n || c == n + 1 {
                    write!(f, " |")?;
                }
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "{:>lead$}   edge 1 | center | edges 2, 3", "")
    }

    pub fn decimal(&self) -> DecimalTable<'_> {
        DecimalTable(self)
    }

    /// Value at time `t` and column `col`.
    pub fn value(&self, t: i64, col: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|(row_t, _)| *row_t == t)
            .and_then(|(_, r)| r.get(col).copied())
    }
}

impl fmt::Display for StarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, format_rational)
    }
}

/// The same table with every entry as a 12-significant-digit decimal.
pub struct DecimalTable<'a>(&'a StarTable);

impl fmt::Display for DecimalTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(f, format_decimal)
    }
}

/// Amplitudes of a unit pulse scattered at the center of `S_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionReport {
    pub k: usize,
    pub n: usize,
    pub condition: ConditionKind,
    /// Sum of the outgoing pulse on each outgoing edge; `None` when the pulse
    /// does not localize.
    pub transmitted: Option<f64>,
    /// Sum of the returning pulse on the incoming edge.
    pub reflected: Option<f64>,
    /// Number of consecutive nonzero layers of the reflected pulse.
    pub spread: usize,
    /// First time layer of each observation window.
    pub window_start: usize,
    /// Raw samples at the site next to the center, over the window.
    pub transmitted_samples: Vec<f64>,
    pub reflected_samples: Vec<f64>,
}

#[derive(Debug)]
struct Pulse {
    sum: f64,
    len: usize,
    /// Still nonzero at the end of the window.
    open: bool,
}

fn extract_pulse(samples: &[f64]) -> Pulse {
    let Some(first) = samples.iter().position(|x| x.abs() > PULSE_THRESHOLD) else {
        return Pulse {
            sum: 0.0,
            len: 0,
            open: false,
        };
    };
    let len = samples[first..]
        .iter()
        .take_while(|x| x.abs() > PULSE_THRESHOLD)
        .count();
    let tail = &samples[first + len..];
    let open = first + len == samples.len() || tail.iter().any(|x| x.abs() > PULSE_THRESHOLD);
    Pulse {
        sum: samples[first..first + len].iter().sum(),
        len,
        open,
    }
}

/// Inject a unit impulse at `v_1` of the equal-length star `S_k` and measure
/// the pulses at the site next to the center, on the incoming edge (reflected)
/// and on every outgoing edge (transmitted). Observation runs over
/// `t = N..=3N-3`, after the incident pulse has passed and before anything
/// reflected off a leaf can come back.
pub fn measure_transmission(k: usize, n: usize, condition: ConditionKind) -> Result<TransmissionReport> {
    if k < 2 {
        return Err(Error::InvalidStarOrder(k));
    }
    if n < 3 {
        return Err(Error::PulsesOverlap(n));
    }
    let graph = star_graph(&vec![n; k])?;
    let cond = condition.resolve(&graph);
    let horizon = 3 * n - 3;
    let traj: Trajectory = simulate(&graph, &cond, &[ControlSignal::impulse(VertexId(1))], horizon)?;
    let window = n as i64..=horizon as i64;
    let reflected_samples: Vec<f64> = window.clone().map(|t| traj.at(0, n - 1, t)).collect();
    let transmitted_samples: Vec<f64> = window.clone().map(|t| traj.at(1, n - 1, t)).collect();
    for edge in 2..k {
        let other: Vec<f64> = window.clone().map(|t| traj.at(edge, n - 1, t)).collect();
        debug_assert_eq!(other, transmitted_samples);
    }

    let reflected = extract_pulse(&reflected_samples);
    let transmitted = extract_pulse(&transmitted_samples);
    let localized = !reflected.open && !transmitted.open;
    Ok(TransmissionReport {
        k,
        n,
        condition,
        transmitted: localized.then_some(transmitted.sum),
        reflected: localized.then_some(reflected.sum),
        spread: if localized {
            reflected.len
        } else {
            reflected_samples.len()
        },
        window_start: n,
        transmitted_samples,
        reflected_samples,
    })
}

impl fmt::Display for TransmissionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: Option<f64>| c.map_or("unset".to_string(), format_rational);
        writeln!(
            f,
            "star order k = {}, edge length N = {}, condition {}",
            self.k, self.n, self.condition
        )?;
        writeln!(f, "transmitted: {}", show(self.transmitted))?;
        writeln!(f, "reflected:   {}", show(self.reflected))?;
        writeln!(f, "spread:      {} layer(s)", self.spread)?;
        if let (Some(_), Some(_)) = (self.transmitted, self.reflected) {
            writeln!(
                f,
                "continuous: transmitted {}, reflected {}",
                format_rational(2.0 / self.k as f64),
                format_rational(-(self.k as f64 - 2.0) / self.k as f64)
            )?;
        }
        Ok(())
    }
}
