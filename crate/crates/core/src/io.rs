//! CSV and JSON export.
//!
//! Floats in CSV are written with 17 significant digits, which round-trips
//! every `f64`. JSON objects are written with sorted keys so that identical
//! inputs give identical bytes.

use std::io::{Read, Write};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cost::CostTable;
use crate::error::{Error, Result};
use crate::geometry::VolumeProfile;
use crate::measure::LongJumpMeasure;
use crate::mixing::MixingCurve;

/// `x` with 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `index,probability`, one row per group element.
pub fn write_measure_csv<W: Write>(out: W, measure: &LongJumpMeasure) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "probability"])?;
    for (i, &p) in measure.density().iter().enumerate() {
        w.write_record([i.to_string(), fmt_f64(p)])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the probabilities back from [`write_measure_csv`] output, in index order.
pub fn read_measure_csv<R: Read>(input: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        let index: usize = record[0].parse().map_err(|_| Error::Parse(format!("bad index {:?}", &record[0])))?;
        if index != row {
            return Err(Error::Parse(format!("index {index} out of order at row {row}")));
        }
        out.push(record[1].parse().map_err(|_| Error::Parse(format!("bad probability {:?}", &record[1])))?);
    }
    Ok(out)
}

/// `element,cost,witness_degs` with degrees joined by `;`.
pub fn write_cost_csv<W: Write>(out: W, table: &CostTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["element", "cost", "witness_degs"])?;
    let group = table.group();
    for (i, &c) in table.costs().iter().enumerate() {
        let degs: Vec<String> = table.witness(i).iter().map(|d| d.to_string()).collect();
        w.write_record([group.element_at(i).to_string(), fmt_f64(c), degs.join(";")])?;
    }
    w.flush()?;
    Ok(())
}

/// `r,count,V` at each breakpoint.
pub fn write_volume_csv<W: Write>(out: W, profile: &VolumeProfile) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "count", "V"])?;
    for (&r, &count) in profile.radii.iter().zip(&profile.counts) {
        w.write_record([fmt_f64(r), count.to_string(), fmt_f64(count as f64 / profile.order as f64)])?;
    }
    w.flush()?;
    Ok(())
}

/// `n,l2,tv` along the curve.
pub fn write_mixing_csv<W: Write>(out: W, curve: &MixingCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "l2", "tv"])?;
    for ((&t, &l2), &tv) in curve.times.iter().zip(&curve.l2).zip(&curve.tv) {
        let n = if t.fract() == 0.0 { format!("{t}") } else { fmt_f64(t) };
        w.write_record([n, fmt_f64(l2), fmt_f64(tv)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows of already formatted fields under `header`.
pub fn write_rows<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    // serde_json's default map is ordered by key
    let value = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    out.write_all(to_json_string(value)?.as_bytes())?;
    Ok(())
}

/// Diameter, a maximizing element, and the cost histogram.
pub fn cost_report(table: &CostTable) -> Value {
    let histogram: Vec<Value> = table.histogram().iter().map(|&(c, n)| json!({ "cost": c, "count": n })).collect();
    json!({
        "group": table.group().to_string(),
        "order": table.len(),
        "diameter": table.diameter(),
        "argmax": table.argmax().to_string(),
        "histogram": histogram,
    })
}
