// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Trajectory CSV format.
//!
//! Header `t,re_00,im_00,re_01,im_01,…` with operator entries flattened
//! row-major; one row per grid node. Values are written with 17
//! significant digits so that reading a file back is lossless.

use std::io::{Read, Write};

use super::grid::Trajectory;
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Format(format!("csv: {e}"))
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_header(dim: usize) -> Vec<String> {
    let mut header = vec!["t".to_string()];
    for r in 0..dim {
        for c in 0..dim {
            header.push(format!("re_{r}{c}"));
            header.push(format!("im_{r}{c}"));
        }
    }
    header
}

pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(trajectory_header(traj.dim())).map_err(csv_err)?;
    for (k, op) in traj.samples.iter().enumerate() {
        let mut row = vec![format_float(traj.grid.node(k))];
        for z in op.as_slice() {
            row.push(format_float(z.re));
            row.push(format_float(z.im));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))
}

/// Reads node times and operators back from the trajectory CSV format.
pub fn read_trajectory_csv<R: Read>(input: R) -> Result<(Vec<f64>, Vec<Operator>)> {
    let mut rdr = csv::Reader::from_reader(input);
    let width = rdr.headers().map_err(csv_err)?.len();
    if width < 3 || (width - 1) % 2 != 0 {
        return Err(Error::Format(format!("unexpected column count {width}")));
    }
    let entries = (width - 1) / 2;
    let dim = (entries as f64).sqrt().round() as usize;
    if dim * dim != entries {
        return Err(Error::NotSquare { len: entries });
    }
    let mut times = Vec::new();
    let mut ops = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let vals = record
            .iter()
            .map(|f| f.trim().parse::<f64>().map_err(|e| Error::Format(format!("bad number `{f}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        times.push(vals[0]);
        let data = vals[1..].chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        ops.push(Operator::from_row_major(dim, data)?);
    }
    Ok((times, ops))
}
