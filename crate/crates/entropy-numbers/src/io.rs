//! Line-oriented text serialization of the combinatorial and geometric
//! witnesses, with lossless round-trip parsers.
//!
//! Formats:
//! - set family: header `g v count`, then one member per line as
//!   space-separated 1-based indices;
//! - weight sequences: header `m count`, then one sequence per line as
//!   space-separated rationals `num/den` with `den = m`;
//! - nets and packings: header `m q radius count` (for packings the radius
//!   slot carries the separation), then one center per line, coordinates in
//!   scientific notation with 17 significant digits.

use crate::combinat::{EpsilonSequence, SetFamily};
use crate::error::{Error, Result};
use crate::nets::{Net, Packing};
use crate::space::{Exponent, Point};

/// 17 significant digits: enough for exact f64 round-trips.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse number `{s}`")))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer `{s}`")))
}

fn header_fields(line: Option<&str>, expect: usize) -> Result<Vec<&str>> {
    let line = line.ok_or_else(|| Error::InvalidInput("missing header line".into()))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expect {
        return Err(Error::InvalidInput(format!(
            "header needs {expect} fields, got `{line}`"
        )));
    }
    Ok(fields)
}

pub fn write_set_family(family: &SetFamily) -> String {
    let mut out = format!("{} {} {}\n", family.ground_size, family.v, family.members.len());
    for member in &family.members {
        let row: Vec<String> = member.iter().map(|i| i.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_set_family(text: &str) -> Result<SetFamily> {
    let mut lines = text.lines();
    let header = header_fields(lines.next(), 3)?;
    let ground_size = parse_u64(header[0])? as u32;
    let v = parse_u64(header[1])? as u32;
    let count = parse_u64(header[2])? as usize;
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("family truncated".into()))?;
        let member = line
            .split_whitespace()
            .map(|t| parse_u64(t).map(|i| i as u32))
            .collect::<Result<Vec<u32>>>()?;
        members.push(member);
    }
    let family = SetFamily { ground_size, v, members };
    family.validate()?;
    Ok(family)
}

pub fn write_gamma(m: u32, sequences: &[EpsilonSequence]) -> String {
    let mut out = format!("{m} {}\n", sequences.len());
    for seq in sequences {
        let row: Vec<String> = seq.numerators().iter().map(|n| format!("{n}/{m}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_gamma(text: &str) -> Result<(u32, Vec<EpsilonSequence>)> {
    let mut lines = text.lines();
    let header = header_fields(lines.next(), 2)?;
    let m = parse_u64(header[0])? as u32;
    let count = parse_u64(header[1])? as usize;
    let mut sequences = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("sequence list truncated".into()))?;
        let nums = line
            .split_whitespace()
            .map(|t| {
                let (num, den) = t
                    .split_once('/')
                    .ok_or_else(|| Error::InvalidInput(format!("expected num/den, got `{t}`")))?;
                if parse_u64(den)? as u32 != m {
                    return Err(Error::InvalidInput(format!("denominator must be {m}: `{t}`")));
                }
                Ok(parse_u64(num)? as u32)
            })
            .collect::<Result<Vec<u32>>>()?;
        sequences.push(EpsilonSequence::new(m, nums)?);
    }
    Ok((m, sequences))
}

fn write_points(dim: usize, q: Exponent, radius: f64, points: &[Point]) -> String {
    let mut out = format!("{dim} {q} {} {}\n", fmt_f64(radius), points.len());
    for pt in points {
        let row: Vec<String> = pt.coords.iter().map(|&c| fmt_f64(c)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn read_points(text: &str) -> Result<(usize, Exponent, f64, Vec<Point>)> {
    let mut lines = text.lines();
    let header = header_fields(lines.next(), 4)?;
    let dim = parse_u64(header[0])? as usize;
    let q: Exponent = header[1].parse()?;
    let radius = parse_f64(header[2])?;
    let count = parse_u64(header[3])? as usize;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("point list truncated".into()))?;
        let coords = line
            .split_whitespace()
            .map(parse_f64)
            .collect::<Result<Vec<f64>>>()?;
        if coords.len() != dim {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, header says {dim}",
                coords.len()
            )));
        }
        points.push(Point::new(coords));
    }
    Ok((dim, q, radius, points))
}

pub fn write_net(net: &Net) -> String {
    write_points(net.points[0].dim(), net.metric_q, net.radius, &net.points)
}

pub fn read_net(text: &str) -> Result<Net> {
    let (_, q, radius, points) = read_points(text)?;
    let index = crate::nets::index_for_count(points.len() as u64);
    Net::new(points, radius, q, index)
}

pub fn write_packing(packing: &Packing) -> String {
    let dim = packing.points.first().map_or(0, |p| p.dim());
    write_points(dim, packing.metric_q, packing.separation, &packing.points)
}

pub fn read_packing(text: &str) -> Result<Packing> {
    let (_, q, separation, points) = read_points(text)?;
    let index = crate::nets::packing_index_for_count(points.len() as u64);
    Ok(Packing { points, separation, metric_q: q, claimed_index: index })
}
