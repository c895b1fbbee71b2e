//! Polygon input and file output.
//!
//! Polygons are read from JSON of the form
//! `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`.

use crate::geom::{GeomError, Point, Polygon};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid polygon: loop {loop_index}: {reason}")]
    InvalidPolygon { loop_index: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct PolygonJson {
    outer: Vec<[f64; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[f64; 2]>>,
}

fn points(v: &[[f64; 2]]) -> Vec<Point> {
    v.iter().map(|p| Point::new(p[0], p[1])).collect()
}

/// Parse polygon JSON. Loops given with the wrong orientation are turned
/// around and reported in the returned warnings.
pub fn parse_polygon(text: &str) -> Result<(Polygon, Vec<String>), IoError> {
    let j: PolygonJson = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    if j.outer.iter().chain(j.holes.iter().flatten()).any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(IoError::Parse("coordinates must be finite".into()));
    }
    Polygon::from_loops(points(&j.outer), j.holes.iter().map(|h| points(h)).collect()).map_err(|e| match e {
        GeomError::InvalidPolygon { loop_index, reason } => IoError::InvalidPolygon { loop_index, reason },
        other => IoError::InvalidPolygon { loop_index: 0, reason: other.to_string() },
    })
}

/// Read and validate a polygon file.
pub fn load_polygon(path: &Path) -> Result<(Polygon, Vec<String>), IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_owned(), source })?;
    parse_polygon(&text)
}

/// Polygon JSON for `poly`, loops in their stored orientation.
pub fn polygon_to_json(poly: &Polygon) -> String {
    let loop_json = |l: &[Point]| l.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>();
    let j = PolygonJson { outer: loop_json(&poly.outer), holes: poly.holes.iter().map(|h| loop_json(h)).collect() };
    serde_json::to_string(&j).expect("polygon serializes")
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.to_owned(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_parses() {
        let (p, w) = parse_polygon(r#"{"outer":[[0,0],[1,0],[1,1],[0,1]],"holes":[]}"#).unwrap();
        assert_eq!(p.n(), 4);
        assert!(w.is_empty());
        assert!((p.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clockwise_outer_is_turned_with_a_warning() {
        let (p, w) = parse_polygon(r#"{"outer":[[0,0],[0,1],[1,1],[1,0]]}"#).unwrap();
        assert_eq!(w.len(), 1);
        assert!(p.area() > 0.0);
    }

    #[test]
    fn bowtie_is_rejected() {
        let r = parse_polygon(r#"{"outer":[[0,0],[1,1],[1,0],[0,1]],"holes":[]}"#);
        assert!(matches!(r, Err(IoError::InvalidPolygon { loop_index: 0, .. })), "{r:?}");
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(parse_polygon("{\"outer\": 3}"), Err(IoError::Parse(_))));
    }

    #[test]
    fn json_round_trip_keeps_loops() {
        let poly = crate::fixtures::square_with_hole();
        let (back, w) = parse_polygon(&polygon_to_json(&poly)).unwrap();
        assert!(w.is_empty());
        assert_eq!(back, poly);
    }
}
