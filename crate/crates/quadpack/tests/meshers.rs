//! Mesher outputs on the fixture corpus, checked through the public API.

use quadpack::fixtures;
use quadpack::geom::{Point, Polygon, Tolerances};
use quadpack::mesh::{quad_angles, quality_report, validate};
use quadpack::meshers::{
    mesh_120_from_kites, mesh_kites_detailed, mesh_opposite_right_angles_detailed, mesh_voronoi_detailed, power_duality_check,
    subdivide_kite_120,
};
use quadpack::packing::{pack, PackMode, PackOptions};
use proptest::prelude::*;

fn unit(poly: &Polygon) -> Polygon {
    let nz = poly.normalization();
    poly.map(|p| nz.forward(p))
}

fn packed(poly: &Polygon, mode: PackMode) -> quadpack::packing::Packing {
    pack(poly, &PackOptions::new(mode)).expect("packing")
}

#[test]
fn kite_census_predicts_the_kite_count() {
    for (name, poly) in fixtures::corpus() {
        let u = unit(&poly);
        let km = mesh_kites_detailed(&packed(&u, PackMode::BoundaryTangent), &u).unwrap();
        assert_eq!(km.census.expected_kites(), km.mesh.quads.len(), "{name}");
        assert!(validate(&km.mesh, &u).is_ok(), "{name}");
    }
}

#[test]
fn every_kite_splits_into_six_quads() {
    let u = unit(&fixtures::l_shape());
    let kites = mesh_kites_detailed(&packed(&u, PackMode::BoundaryTangent), &u).unwrap().mesh;
    let fine = mesh_120_from_kites(&kites, &u, Tolerances::default()).unwrap();
    assert_eq!(fine.quads.len(), 6 * kites.quads.len());
    assert!(validate(&fine, &u).is_ok());
}

#[test]
fn voronoi_meshes_pass_power_duality() {
    for name in ["square", "l-shape", "star", "holed-square"] {
        let poly = fixtures::corpus().into_iter().find(|c| c.0 == name).unwrap().1;
        let u = unit(&poly);
        let vm = mesh_voronoi_detailed(&packed(&u, PackMode::BoundaryCentered), &u).unwrap();
        let d = power_duality_check(&vm.mesh, &vm.family, &u);
        assert!(d.passed(), "{name}: {:?}", d.failures);
        assert_eq!(vm.generators.len(), vm.mesh.quads.len());
        assert!(vm.diagnostics.is_empty(), "{name}: {:?}", vm.diagnostics);
    }
}

#[test]
fn moving_a_vertex_breaks_power_duality() {
    let u = unit(&fixtures::unit_square());
    let vm = mesh_voronoi_detailed(&packed(&u, PackMode::BoundaryCentered), &u).unwrap();
    let interior = (0..vm.mesh.vertices.len()).find(|&v| !vm.mesh.boundary[v]).expect("an interior vertex");
    let mut moved = vm.mesh.clone();
    moved.vertices[interior] = moved.vertices[interior] + Point::new(1e-4, -2e-4);
    let d = power_duality_check(&moved, &vm.family, &u);
    assert!(!d.passed());
    assert!(d.max_residual > 1e-9);
}

#[test]
fn right_angle_cells_on_convex_and_reflex_domains() {
    for name in ["square", "rectangle", "8-gon", "l-shape"] {
        let poly = fixtures::corpus().into_iter().find(|c| c.0 == name).unwrap().1;
        let u = unit(&poly);
        let rm = mesh_opposite_right_angles_detailed(&packed(&u, PackMode::BoundaryCentered), &u, false).unwrap();
        assert!(rm.foot_residual <= 1e-9, "{name}: {}", rm.foot_residual);
        let q = quality_report(&rm.mesh, &u, Tolerances::default());
        assert_eq!(q.cyclic_fraction, 1.0, "{name}");
        assert_eq!(q.right_angle_fraction, 1.0, "{name}");
        assert!(validate(&rm.mesh, &u).is_ok(), "{name}");
    }
}

#[test]
fn meshers_refuse_the_wrong_packing_mode() {
    let u = unit(&fixtures::unit_square());
    assert!(mesh_voronoi_detailed(&packed(&u, PackMode::BoundaryTangent), &u).is_err());
    assert!(mesh_kites_detailed(&packed(&u, PackMode::BoundaryCentered), &u).is_err());
}

/// Kite with apex angle `a` at the origin, tangency points at unit distance
/// along the two sides and the far vertex on the bisector.
fn kite(a: f64, far: f64) -> [Point; 4] {
    let half = a / 2.0;
    let l = Point::new(half.cos(), -half.sin());
    let r = Point::new(half.cos(), half.sin());
    [Point::new(0.0, 0.0), l, Point::new(far, 0.0), r]
}

proptest! {
    /// Every kite with right angles at its tangency points splits into quads
    /// with no angle above 120 degrees.
    #[test]
    fn split_kites_stay_below_120_degrees(apex in 0.2..2.9f64) {
        let far = 1.0 / (apex / 2.0).cos();
        let (parts, _) = subdivide_kite_120(&kite(apex, far), Tolerances::default()).unwrap();
        prop_assert_eq!(parts.len(), 6);
        let total: f64 = parts.iter().map(|q| quadpack::geom::signed_area(q)).sum();
        prop_assert!((total - quadpack::geom::signed_area(&kite(apex, far))).abs() < 1e-12);
        for q in &parts {
            let worst = quad_angles(q).into_iter().fold(0.0, f64::max);
            prop_assert!(worst <= 120.0 + 1e-6f64.to_degrees(), "{worst}");
        }
    }
}
