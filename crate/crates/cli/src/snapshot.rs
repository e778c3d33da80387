//! The snapshot CSV format: UTF-8, header `dim_0,...,dim_{d-1}[,label]`,
//! one row per point, decimal reals written with round-trip precision.

use crate::errors::CodedError;
use anyhow::{Context, Result};
use phsep_core::geometry::PointCloud;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub fn write_snapshot(path: &Path, pc: &PointCloud) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    let mut header: Vec<String> = (0..pc.dim()).map(|j| format!("dim_{j}")).collect();
    if pc.labels().is_some() {
        header.push("label".to_string());
    }
    writeln!(out, "{}", header.join(","))?;
    for (i, p) in pc.points().enumerate() {
        let mut row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
        if let Some(labels) = pc.labels() {
            row.push(labels[i].to_string());
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Parses a snapshot file, reporting malformed content with its line number.
pub fn read_snapshot(path: &Path) -> Result<PointCloud> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let (_, header_line) = lines
        .next()
        .ok_or_else(|| CodedError::parse(format!("{}: empty file", path.display())))?;
    let header = header_line.with_context(|| format!("reading {}", path.display()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_label = columns.last() == Some(&"label");
    let dim = columns.len() - usize::from(has_label);
    for (j, col) in columns[..dim].iter().enumerate() {
        if *col != format!("dim_{j}") {
            return Err(CodedError::parse(format!(
                "{}: line 1: expected column `dim_{j}`, found `{col}`",
                path.display()
            )));
        }
    }
    if dim == 0 {
        return Err(CodedError::parse(format!(
            "{}: line 1: no coordinate columns",
            path.display()
        )));
    }

    let mut data = Vec::new();
    let mut labels = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.with_context(|| format!("reading {}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(CodedError::parse(format!(
                "{}: line {line_no}: expected {} fields, found {}",
                path.display(),
                columns.len(),
                fields.len()
            )));
        }
        for field in &fields[..dim] {
            let value: f64 = field.parse().map_err(|_| {
                CodedError::parse(format!(
                    "{}: line {line_no}: `{field}` is not a number",
                    path.display()
                ))
            })?;
            if !value.is_finite() {
                return Err(CodedError::parse(format!(
                    "{}: line {line_no}: coordinate `{field}` is not finite",
                    path.display()
                )));
            }
            data.push(value);
        }
        if has_label {
            let label: usize = fields[dim].parse().map_err(|_| {
                CodedError::parse(format!(
                    "{}: line {line_no}: label `{}` is not a nonnegative integer",
                    path.display(),
                    fields[dim]
                ))
            })?;
            labels.push(label);
        }
    }

    let pc = if has_label {
        PointCloud::with_labels(data, dim, labels)
    } else {
        PointCloud::new(data, dim)
    };
    pc.map_err(|e| CodedError::parse(format!("{}: {e}", path.display())))
}

/// Plain label file: one nonnegative integer per line.
pub fn read_labels(path: &Path) -> Result<Vec<usize>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut labels = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let label: usize = trimmed.parse().map_err(|_| {
            CodedError::parse(format!(
                "{}: line {}: label `{trimmed}` is not a nonnegative integer",
                path.display(),
                idx + 1
            ))
        })?;
        labels.push(label);
    }
    Ok(labels)
}
