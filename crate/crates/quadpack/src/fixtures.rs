//! Reference domains used by the tests, the acceptance suite and the CLI.

use crate::geom::{Point, Polygon};
use std::f64::consts::PI;

fn loop_of(v: &[(f64, f64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

pub fn unit_square() -> Polygon {
    Polygon::new(loop_of(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), vec![]).expect("valid square")
}

pub fn rectangle_2x1() -> Polygon {
    Polygon::new(loop_of(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)]), vec![]).expect("valid rectangle")
}

/// Regular `m`-gon inscribed in the unit circle.
pub fn regular(m: usize) -> Polygon {
    let pts = (0..m)
        .map(|k| Point::from_angle(2.0 * PI * k as f64 / m as f64))
        .collect();
    Polygon::new(pts, vec![]).expect("valid regular polygon")
}

/// L-shaped hexagon with one reflex corner at (1, 1).
pub fn l_shape() -> Polygon {
    Polygon::new(loop_of(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]), vec![])
        .expect("valid L")
}

/// Eight-pointed star: tips on the unit circle, reflex corners at radius 0.5.
pub fn star8() -> Polygon {
    let pts = (0..16)
        .map(|k| {
            let r = if k % 2 == 0 { 1.0 } else { 0.5 };
            Point::from_angle(PI * k as f64 / 8.0) * r
        })
        .collect();
    Polygon::new(pts, vec![]).expect("valid star")
}

/// Square [0, 3]^2 with the square hole [1, 2]^2.
pub fn square_with_hole() -> Polygon {
    Polygon::new(
        loop_of(&[(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (0.0, 3.0)]),
        vec![loop_of(&[(1.0, 1.0), (1.0, 2.0), (2.0, 2.0), (2.0, 1.0)])],
    )
    .expect("valid holed square")
}

/// The full corpus with stable names.
pub fn corpus() -> Vec<(&'static str, Polygon)> {
    vec![
        ("square", unit_square()),
        ("rectangle", rectangle_2x1()),
        ("8-gon", regular(8)),
        ("16-gon", regular(16)),
        ("32-gon", regular(32)),
        ("64-gon", regular(64)),
        ("l-shape", l_shape()),
        ("star", star8()),
        ("holed-square", square_with_hole()),
    ]
}
