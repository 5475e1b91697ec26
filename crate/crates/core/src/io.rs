//! CSV formats.
//!
//! | file            | header                              |
//! |-----------------|-------------------------------------|
//! | trajectory      | `edge,j,t,value`                    |
//! | control signal  | `t,value`                           |
//! | shape target    | `edge,j,value`                      |
//! | control pair    | `t,f1,f2`                           |
//! | residual report | `edge,j,target,actual,residual`     |
//!
//! Floats are written in Rust's shortest round-trip form, so identical
//! inputs always give byte-identical files.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::closed_form::StarGeometry;
use crate::control::{ControlPair, ResidualReport, ShapeTarget};
use crate::error::{Error, Result};
use crate::lattice::Trajectory;

fn check_header<R: Read>(reader: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::Format(format!(
            "expected header '{}', found '{}'",
            expected.join(","),
            got.join(",")
        )));
    }
    Ok(())
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, idx: usize, name: &str) -> Result<T> {
    let line = record.position().map_or(0, |p| p.line());
    let raw = record
        .get(idx)
        .ok_or_else(|| Error::Format(format!("line {line}: missing column '{name}'")))?
        .trim();
    raw.parse()
        .map_err(|_| Error::Format(format!("line {line}: invalid {name} '{raw}'")))
}

/// Rows sorted by `(edge, t, j)`, `t` from `-1`. Vertex values repeat on every
/// incident edge endpoint.
pub fn write_trajectory<W: Write>(trajectory: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge", "j", "t", "value"])?;
    for (pos, id) in trajectory.edge_ids().iter().enumerate() {
        for t in -1..=trajectory.horizon() as i64 {
            let sites = &trajectory.layer(t)?.sites[pos];
            for (j, value) in sites.iter().enumerate() {
                w.write_record([id.0.to_string(), j.to_string(), t.to_string(), value.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// One boundary control as `t,value` rows; unlisted times are zero.
pub fn read_control<R: Read>(input: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["t", "value"])?;
    let mut values = BTreeMap::new();
    for record in r.records() {
        let record = record?;
        let t: usize = field(&record, 0, "t")?;
        let v: f64 = field(&record, 1, "value")?;
        if values.insert(t, v).is_some() {
            return Err(Error::Format(format!("time {t} listed twice")));
        }
    }
    let len = values.keys().next_back().map_or(0, |t| t + 1);
    let mut signal = vec![0.0; len];
    for (t, v) in values {
        signal[t] = v;
    }
    Ok(signal)
}

pub fn write_control<W: Write>(values: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "value"])?;
    for (t, v) in values.iter().enumerate() {
        w.write_record([t.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Target shape as `edge,j,value`; every site `j = 1..=N_i` of edges 1..3
/// must be listed exactly once.
pub fn read_target<R: Read>(input: R, geom: &StarGeometry) -> Result<ShapeTarget> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["edge", "j", "value"])?;
    let mut phi: [Vec<Option<f64>>; 3] = geom.lengths.map(|n| vec![None; n]);
    for record in r.records() {
        let record = record?;
        let edge: usize = field(&record, 0, "edge")?;
        let j: usize = field(&record, 1, "j")?;
        let v: f64 = field(&record, 2, "value")?;
        if !(1..=3).contains(&edge) || j == 0 || j > geom.lengths[edge - 1] {
            return Err(Error::Format(format!("site (edge {edge}, j {j}) is not a target site")));
        }
        let slot = &mut phi[edge - 1][j - 1];
        if slot.replace(v).is_some() {
            return Err(Error::Format(format!("site (edge {edge}, j {j}) listed twice")));
        }
    }
    let mut full = Vec::with_capacity(3);
    for (i, edge) in phi.into_iter().enumerate() {
        let values: Option<Vec<f64>> = edge.iter().copied().collect();
        let values = values.ok_or_else(|| Error::Format(format!("target for edge {} is incomplete", i + 1)))?;
        full.push(values);
    }
    let phi3 = full.pop().unwrap();
    let phi2 = full.pop().unwrap();
    let phi1 = full.pop().unwrap();
    ShapeTarget::new(phi1, phi2, phi3, geom)
}

pub fn write_target<W: Write>(target: &ShapeTarget, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge", "j", "value"])?;
    for edge in 1..=3 {
        for (idx, v) in target.edge(edge).iter().enumerate() {
            w.write_record([edge.to_string(), (idx + 1).to_string(), v.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_controls<W: Write>(pair: &ControlPair, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "f1", "f2"])?;
    for t in 0..pair.horizon {
        let f1 = pair.f1.get(t).copied().unwrap_or(0.0);
        let f2 = pair.f2.get(t).copied().unwrap_or(0.0);
        w.write_record([t.to_string(), f1.to_string(), f2.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_controls<R: Read>(input: R) -> Result<ControlPair> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["t", "f1", "f2"])?;
    let (mut f1, mut f2) = (Vec::new(), Vec::new());
    for record in r.records() {
        let record = record?;
        let t: usize = field(&record, 0, "t")?;
        if t != f1.len() {
            return Err(Error::Format(format!("expected t = {}, found {t}", f1.len())));
        }
        f1.push(field(&record, 1, "f1")?);
        f2.push(field(&record, 2, "f2")?);
    }
    let horizon = f1.len();
    Ok(ControlPair { f1, f2, horizon })
}

pub fn write_residuals<W: Write>(report: &ResidualReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge", "j", "target", "actual", "residual"])?;
    for e in &report.entries {
        w.write_record([
            e.edge.to_string(),
            e.j.to_string(),
            e.target.to_string(),
            e.actual.to_string(),
            e.residual.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
