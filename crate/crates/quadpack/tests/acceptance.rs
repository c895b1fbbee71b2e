//! Acceptance suite over the fixture corpus.
//!
//! Each criterion is its own test and writes one `PASS`/`FAIL` line to
//! stderr (outside the test harness capture) before asserting. The geometric
//! checks below are computed from raw coordinates rather than through the
//! crate's own metric functions.

use quadpack::fixtures::{self, corpus};
use quadpack::geom::{apollonius_inscribed, Circle, Point, Polygon, Tolerances};
use quadpack::mesh::QuadMesh;
use quadpack::meshers::{mesh_arc_gap, mesh_opposite_right_angles_detailed, mesh_voronoi_detailed, power_duality_check};
use quadpack::packing::gap::{fit_circle, split_bad_gap, Gap, GapKind};
use quadpack::packing::faces::CornerKind;
use quadpack::packing::{pack, PackMode, PackOptions, Packing};
use quadpack::pipeline::{execute, Method, RunOutput, Settings};
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;

const MESH_METHODS: [Method; 4] = [Method::Kite, Method::Maxangle, Method::Rightangle, Method::Voronoi];
const REL: f64 = 1e-9;
const RAD: f64 = 1e-6;

/// Print a verdict line that survives output capture, then assert it.
fn verdict(id: u32, title: &str, failures: &[String], summary: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "[acceptance] criterion {id:>2} {title}: {status} ({summary})");
    for f in failures.iter().take(12) {
        let _ = writeln!(err, "[acceptance]      {f}");
    }
    if failures.len() > 12 {
        let _ = writeln!(err, "[acceptance]      ... and {} more", failures.len() - 12);
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:#?}");
}

/// One pipeline run per (fixture, method), shared by all criteria.
fn runs() -> &'static BTreeMap<(usize, Method), RunOutput> {
    static RUNS: OnceLock<BTreeMap<(usize, Method), RunOutput>> = OnceLock::new();
    RUNS.get_or_init(run_all)
}

fn run_all() -> BTreeMap<(usize, Method), RunOutput> {
    let fx = corpus();
    std::thread::scope(|s| {
        let handles: Vec<_> = fx
            .iter()
            .enumerate()
            .flat_map(|(k, (name, poly))| {
                MESH_METHODS.map(|m| (k, m, s.spawn(move || execute(poly, m, &Settings::default(), name))))
            })
            .collect();
        handles.into_iter().map(|(k, m, h)| ((k, m), h.join().expect("run thread"))).collect()
    })
}

fn fixture_name(k: usize) -> &'static str {
    corpus()[k].0
}

// ---------------------------------------------------------------------------
// Independent geometry oracles.

fn pts(mesh: &QuadMesh, k: usize) -> [Point; 4] {
    mesh.quads[k].map(|v| mesh.vertices[v])
}

fn shoelace(p: &[Point]) -> f64 {
    (0..p.len()).map(|k| {
        let (a, b) = (p[k], p[(k + 1) % p.len()]);
        a.x * b.y - b.x * a.y
    })
    .sum::<f64>()
        / 2.0
}

fn polygon_area(poly: &Polygon) -> f64 {
    shoelace(&poly.outer).abs() - poly.holes.iter().map(|h| shoelace(h).abs()).sum::<f64>()
}

fn in_loop(lp: &[Point], p: Point) -> bool {
    let mut inside = false;
    for k in 0..lp.len() {
        let (a, b) = (lp[k], lp[(k + 1) % lp.len()]);
        if (a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y) {
            inside = !inside;
        }
    }
    inside
}

fn in_polygon(poly: &Polygon, p: Point) -> bool {
    in_loop(&poly.outer, p) && !poly.holes.iter().any(|h| in_loop(h, p))
}

fn side_lengths(q: &[Point; 4]) -> [f64; 4] {
    [0, 1, 2, 3].map(|k| q[k].dist(q[(k + 1) % 4]))
}

/// Interior angles in radians from arc cosines, with reflex corners
/// detected by the turn direction.
fn angles(q: &[Point; 4]) -> [f64; 4] {
    [0, 1, 2, 3].map(|k| {
        let (prev, here, next) = (q[(k + 3) % 4], q[k], q[(k + 1) % 4]);
        let (u, w) = (next - here, prev - here);
        let a = (u.dot(w) / (u.norm() * w.norm())).clamp(-1.0, 1.0).acos();
        if (here - prev).cross(next - here) < 0.0 {
            2.0 * PI - a
        } else {
            a
        }
    })
}

fn scale_of(mesh: &QuadMesh) -> f64 {
    let (mut lo, mut hi) = (mesh.vertices[0], mesh.vertices[0]);
    for p in &mesh.vertices {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    lo.dist(hi)
}

fn unit_frame(poly: &Polygon) -> Polygon {
    let nz = poly.normalization();
    poly.map(|p| nz.forward(p))
}

/// Meshes produced by the pipeline, with the runs that failed to emit one.
fn emitted(method: Method) -> (Vec<(usize, &'static QuadMesh)>, Vec<String>) {
    let mut ok = Vec::new();
    let mut missing = Vec::new();
    for ((k, m), out) in runs() {
        if *m != method {
            continue;
        }
        match &out.mesh {
            Some(mesh) => ok.push((*k, mesh)),
            None => missing.push(format!(
                "{} {}: no mesh ({})",
                fixture_name(*k),
                method,
                out.report.diagnostics.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; ")
            )),
        }
    }
    (ok, missing)
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_kite_guarantee() {
    let (meshes, mut fails) = emitted(Method::Kite);
    let mut quads = 0;
    for (k, mesh) in &meshes {
        let scale = scale_of(mesh);
        for e in 0..mesh.quads.len() {
            let s = side_lengths(&pts(mesh, e));
            let eq = |a: f64, b: f64| (a - b).abs() <= REL * scale;
            let kite = (eq(s[0], s[1]) && eq(s[2], s[3])) || (eq(s[1], s[2]) && eq(s[3], s[0]));
            let cross = (s[0] * s[2] / (s[1] * s[3]) - 1.0).abs();
            if !kite || cross > REL {
                fails.push(format!("{} quad {e}: sides {s:?}, cross ratio deviation {cross:.3e}", fixture_name(*k)));
            }
        }
        quads += mesh.quads.len();
    }
    verdict(1, "kite guarantee", &fails, &format!("{} fixtures, {quads} quads", meshes.len()));
}

#[test]
fn criterion_02_max_angle_guarantee() {
    let (meshes, mut fails) = emitted(Method::Maxangle);
    let kite_counts: HashMap<usize, usize> = emitted(Method::Kite).0.into_iter().map(|(k, m)| (k, m.quads.len())).collect();
    let bound = 2.0 * PI / 3.0 + RAD;
    let mut worst: f64 = 0.0;
    for (k, mesh) in &meshes {
        for e in 0..mesh.quads.len() {
            let a = angles(&pts(mesh, e)).into_iter().fold(0.0, f64::max);
            worst = worst.max(a);
            if a > bound {
                fails.push(format!("{} quad {e}: angle {:.9} deg", fixture_name(*k), a.to_degrees()));
            }
        }
        match kite_counts.get(k) {
            Some(&kq) if mesh.quads.len() == 6 * kq => {}
            other => fails.push(format!("{}: {} quads against kite count {other:?}", fixture_name(*k), mesh.quads.len())),
        }
    }
    verdict(2, "max-angle guarantee", &fails, &format!("{} fixtures, worst angle {:.9} deg", meshes.len(), worst.to_degrees()));
}

#[test]
fn criterion_03_opposite_right_angles() {
    let (meshes, mut fails) = emitted(Method::Rightangle);
    let mut quads = 0;
    for (k, mesh) in &meshes {
        for e in 0..mesh.quads.len() {
            let a = angles(&pts(mesh, e));
            let cyclic = (a[0] + a[2] - PI).abs() <= RAD && (a[1] + a[3] - PI).abs() <= RAD;
            let right = |i: usize, j: usize| (a[i] - PI / 2.0).abs() <= RAD && (a[j] - PI / 2.0).abs() <= RAD;
            if !cyclic || !(right(0, 2) || right(1, 3)) {
                fails.push(format!("{} quad {e}: angles {:?} deg", fixture_name(*k), a.map(f64::to_degrees)));
            }
        }
        quads += mesh.quads.len();
    }
    // The feet of each shared side must agree, seen from both cells.
    for (k, (name, poly)) in corpus().iter().enumerate() {
        if !meshes.iter().any(|(j, _)| *j == k) {
            continue;
        }
        let unit = unit_frame(poly);
        let pk = pack(&unit, &PackOptions::new(PackMode::BoundaryCentered)).expect("packing");
        match mesh_opposite_right_angles_detailed(&pk, &unit, false) {
            Ok(rm) if rm.foot_residual <= REL => {}
            Ok(rm) => fails.push(format!("{name}: foot residual {:.3e}", rm.foot_residual)),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    verdict(3, "opposite-right-angle guarantee", &fails, &format!("{} of 9 fixtures meshed, {quads} quads", meshes.len()));
}

fn inside_quad(q: &[Point; 4], p: Point, eps: f64) -> bool {
    (0..4).all(|k| (q[(k + 1) % 4] - q[k]).cross(p - q[k]) >= -eps)
}

#[test]
fn criterion_04_voronoi_structure() {
    let mut fails = Vec::new();
    let (mut edges, mut worst_mid, mut worst_angle, mut worst_power) = (0usize, 0.0f64, 0.0f64, 0.0f64);
    for (name, poly) in corpus() {
        let unit = unit_frame(&poly);
        let pk = pack(&unit, &PackOptions::new(PackMode::BoundaryCentered)).expect("packing");
        let vm = match mesh_voronoi_detailed(&pk, &unit) {
            Ok(vm) => vm,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        let mesh = &vm.mesh;
        let scale = scale_of(mesh);
        for (e, t) in vm.generators.iter().enumerate() {
            let q = pts(mesh, e);
            if !inside_quad(&q, *t, REL * scale * scale) {
                fails.push(format!("{name} quad {e}: generator {t:?} outside its cell"));
            }
        }
        let mut users: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (e, q) in mesh.quads.iter().enumerate() {
            for s in 0..4 {
                let (a, b) = (q[s], q[(s + 1) % 4]);
                users.entry((a.min(b), a.max(b))).or_default().push(e);
            }
        }
        for ((a, b), qs) in &users {
            if qs.len() != 2 {
                continue;
            }
            edges += 1;
            let (pa, pb) = (mesh.vertices[*a], mesh.vertices[*b]);
            let (t1, t2) = (vm.generators[qs[0]], vm.generators[qs[1]]);
            let (dir, chord) = (pb - pa, t2 - t1);
            let len = dir.norm();
            let angle = (dir.dot(chord) / (len * chord.norm())).clamp(-1.0, 1.0).acos();
            let mid = t1.mid(t2);
            let off = dir.cross(mid - pa).abs() / len / len;
            let t = dir.dot(mid - pa) / (len * len);
            worst_mid = worst_mid.max(off);
            worst_angle = worst_angle.max((angle - PI / 2.0).abs());
            if (angle - PI / 2.0).abs() > RAD || off > REL {
                fails.push(format!("{name} edge {a}-{b}: angle {:.3e} rad off, midpoint {off:.3e} off the line", (angle - PI / 2.0).abs()));
            } else if !(-REL..=1.0 + REL).contains(&t) {
                fails.push(format!("{name} edge {a}-{b}: dual segment meets the edge line outside the edge (t = {t:.6})"));
            }
        }
        let d = power_duality_check(mesh, &vm.family, &unit);
        worst_power = worst_power.max(d.max_residual);
        fails.extend(d.failures.iter().map(|f| format!("{name}: {f}")));
    }
    verdict(
        4,
        "Voronoi structure and power duality",
        &fails,
        &format!(
            "{edges} interior edges, worst midpoint offset {worst_mid:.3e}, worst angle {worst_angle:.3e} rad, worst power residual {worst_power:.3e}"
        ),
    );
}

#[test]
fn criterion_05_counting_identities() {
    let mut fails = Vec::new();
    let mut checked = 0;
    for ((k, m), out) in runs() {
        let Some(mesh) = &out.mesh else { continue };
        let h = corpus()[*k].1.holes.len() as i64;
        let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
        for q in &mesh.quads {
            for s in 0..4 {
                let (a, b) = (q[s], q[(s + 1) % 4]);
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut on_boundary = vec![false; mesh.vertices.len()];
        let mut used = vec![false; mesh.vertices.len()];
        for (&(a, b), &n) in &uses {
            used[a] = true;
            used[b] = true;
            if n == 1 {
                on_boundary[a] = true;
                on_boundary[b] = true;
            }
        }
        let x = on_boundary.iter().filter(|b| **b).count() as i64;
        let i = used.iter().filter(|u| **u).count() as i64 - x;
        let (q, e) = (mesh.quads.len() as i64, uses.len() as i64);
        if 4 * q != 2 * e - x || x + i + q - e != 1 - h {
            fails.push(format!("{} {m}: x={x} i={i} q={q} e={e} h={h}", fixture_name(*k)));
        }
        checked += 1;
    }
    verdict(5, "counting identities", &fails, &format!("{checked} emitted meshes"));
}

#[test]
fn criterion_06_linearity() {
    let mut fails = Vec::new();
    let mut lines = Vec::new();
    let gons: Vec<usize> = corpus().iter().enumerate().filter(|(_, (n, _))| n.ends_with("-gon")).map(|(k, _)| k).collect();
    for method in MESH_METHODS {
        let mut ratios = Vec::new();
        for &k in &gons {
            let m = corpus()[k].1.n();
            match &runs()[&(k, method)].mesh {
                Some(mesh) => ratios.push((m, mesh.quads.len() as f64 / m as f64)),
                None => fails.push(format!("{method}: no mesh for the {m}-gon, ratio undetermined")),
            }
        }
        let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
        if ratios.len() == gons.len() && hi / lo > 2.0 {
            fails.push(format!("{method}: q/m spread {:.3}", hi / lo));
        }
        lines.push(format!("{method} q/m {:?}", ratios.iter().map(|r| format!("{}:{:.2}", r.0, r.1)).collect::<Vec<_>>()));
    }
    // Voronoi element counts against the 3n..4n expectation, gated at 50n.
    for (k, (name, poly)) in corpus().iter().enumerate() {
        if let Some(mesh) = &runs()[&(k, Method::Voronoi)].mesh {
            let (q, n) = (mesh.quads.len(), poly.n());
            let band = if (3 * n..=4 * n).contains(&q) { "inside" } else { "outside" };
            lines.push(format!("voronoi {name}: q={q}, n={n}, {band} 3n..4n"));
            if q > 50 * n {
                fails.push(format!("voronoi {name}: q={q} exceeds 50n={}", 50 * n));
            }
        }
    }
    let mut err = std::io::stderr().lock();
    for l in &lines {
        let _ = writeln!(err, "[acceptance]      {l}");
    }
    drop(err);
    verdict(6, "linearity on regular polygons", &fails, "max/min q/m <= 2 per method, voronoi q <= 50n");
}

/// Corners of a gap that are tangency points.
fn tangency_corners(g: &Gap) -> Vec<Point> {
    g.sides.iter().filter(|s| matches!(s.corner, CornerKind::Tangency | CornerKind::EdgeTangency)).map(|s| s.start).collect()
}

fn check_bad_split(g: &Gap, label: &str, fails: &mut Vec<String>) {
    let sp = match split_bad_gap(g) {
        Ok(sp) => sp,
        Err(e) => {
            fails.push(format!("{label}: bad gap not split: {e}"));
            return;
        }
    };
    let mut ids: Vec<(usize, Circle)> = g.sides.iter().enumerate().map(|(k, s)| (k, s.circle().expect("arc side"))).collect();
    ids.push((4, sp.circle));
    let (i, j) = sp.sides;
    for order in [[i, (i + 1) % 4, j, 4], [j, (j + 1) % 4, i, 4]] {
        let v: Vec<(usize, Circle)> = order.iter().map(|&k| ids[k]).collect();
        match Gap::from_circles(&v) {
            Ok(child) if child.kind == GapKind::GoodFourSided => {}
            Ok(child) => fails.push(format!("{label}: child {order:?} is {:?}", child.kind)),
            Err(e) => fails.push(format!("{label}: child {order:?}: {e}")),
        }
    }
}

/// Four circles whose tangency quadrilateral does not hold its circumcenter.
fn constructed_bad_gap() -> Gap {
    let big = Circle::new(Point::new(0.0, -101.0), 100.0).unwrap();
    let place = |x: f64| {
        let a = (x / 101.0f64).asin();
        Point::new(101.0 * a.sin(), -101.0 + 101.0 * a.cos())
    };
    let w = 1.9;
    let (pa, pc) = (place(-w), place(w));
    let a = Circle::new(pa, 1.0).unwrap();
    let c = Circle::new(pc, 1.0).unwrap();
    let h = (4.0 - (pc.x - pa.x).powi(2) / 4.0).sqrt();
    let b = Circle::new(Point::new(0.0, pa.y + h), 1.0).unwrap();
    Gap::from_circles(&[(0, big), (1, c), (2, b), (3, a)]).unwrap()
}

#[test]
fn criterion_07_packing_validity() {
    let tol = Tolerances::default();
    let mut fails = Vec::new();
    let (mut gaps, mut bad, mut worst) = (0usize, 0usize, 0.0f64);
    for (name, poly) in corpus() {
        let unit = unit_frame(&poly);
        for mode in [PackMode::BoundaryTangent, PackMode::BoundaryCentered] {
            let pk: Packing = match pack(&unit, &PackOptions::new(mode)) {
                Ok(pk) => pk,
                Err(e) => {
                    fails.push(format!("{name} {mode:?}: {e}"));
                    continue;
                }
            };
            for g in pk.gaps() {
                gaps += 1;
                if g.sides.len() >= 5 {
                    fails.push(format!("{name} {mode:?}: gap with {} sides", g.sides.len()));
                }
                let t = tangency_corners(&g);
                if t.len() >= 4 {
                    let res = fit_circle(&t).map(|r| r.1).unwrap_or(f64::INFINITY);
                    worst = worst.max(res);
                    if res > 10.0 * tol.eps_rel {
                        fails.push(format!("{name} {mode:?}: tangency points off their circle by {res:.3e}"));
                    }
                }
                if g.kind == GapKind::BadFourSided {
                    bad += 1;
                    check_bad_split(&g, &format!("{name} {mode:?}"), &mut fails);
                }
            }
        }
    }
    let g = constructed_bad_gap();
    if g.kind == GapKind::BadFourSided {
        bad += 1;
        check_bad_split(&g, "constructed gap", &mut fails);
    } else {
        fails.push(format!("constructed gap classified {:?}", g.kind));
    }
    verdict(
        7,
        "packing validity",
        &fails,
        &format!("{gaps} gaps in 18 packings, worst cocircularity {worst:.3e}, {bad} bad gaps split"),
    );
}

#[test]
fn criterion_08_oracles() {
    let mut fails = Vec::new();
    let s3 = 3f64.sqrt();
    let unit = |x: f64, y: f64| Circle::new(Point::new(x, y), 1.0).unwrap();
    let (a, b, c) = (unit(0.0, 0.0), unit(2.0, 0.0), unit(1.0, s3));
    let descartes = 2.0 / s3 - 1.0;
    match apollonius_inscribed(&a, &b, &c) {
        Ok(r) if (r.radius - descartes).abs() <= 1e-12 => {}
        other => fails.push(format!("inscribed circle {other:?}, expected radius {descartes}")),
    }
    let g = Gap::from_circles(&[(0, a), (1, b), (2, c)]).unwrap();
    match mesh_arc_gap(&g) {
        Ok(fill) => match fill.quads.iter().find(|q| q.iter().any(|p| p.dist(a.center) < 1e-12)) {
            Some(q) => {
                let start = q.iter().position(|p| p.dist(a.center) < 1e-12).unwrap();
                let s = side_lengths(&[0, 1, 2, 3].map(|k| q[(start + k) % 4]));
                let want = [1.0, 1.0 / s3, 1.0 / s3, 1.0];
                if s.iter().zip(want).any(|(x, y)| (x - y).abs() > 1e-12) {
                    fails.push(format!("kite sides {s:?}, expected {want:?}"));
                }
            }
            None => fails.push("no kite at the first center".into()),
        },
        Err(e) => fails.push(format!("kites of three unit circles: {e}")),
    }
    verdict(8, "Descartes radius and three-circle kite", &fails, &format!("radius 2/sqrt(3) - 1 = {descartes:.15}"));
}

#[test]
fn criterion_09_coverage() {
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for ((k, m), out) in runs() {
        let Some(mesh) = &out.mesh else { continue };
        let poly = &corpus()[*k].1;
        let area: f64 = (0..mesh.quads.len()).map(|e| shoelace(&pts(mesh, e))).sum();
        let rel = (area - polygon_area(poly)).abs() / polygon_area(poly);
        worst = worst.max(rel);
        if rel > 1e-6 {
            fails.push(format!("{} {m}: area off by {rel:.3e}", fixture_name(*k)));
        }
        for e in 0..mesh.quads.len() {
            let q = pts(mesh, e);
            // Split along the diagonal that keeps both triangles positive and
            // test their centroids.
            let tri = |a: usize, b: usize, c: usize| (shoelace(&[q[a], q[b], q[c]]), (q[a] + q[b] + q[c]) / 3.0);
            let split = [[tri(0, 1, 2), tri(0, 2, 3)], [tri(1, 2, 3), tri(1, 3, 0)]];
            let Some(halves) = split.iter().find(|h| h.iter().all(|t| t.0 > 0.0)) else {
                fails.push(format!("{} {m} quad {e}: not a positively oriented simple quad", fixture_name(*k)));
                continue;
            };
            if let Some(p) = halves.iter().map(|t| t.1).find(|p| !in_polygon(poly, *p)) {
                fails.push(format!("{} {m} quad {e}: interior point {p:?} outside the domain", fixture_name(*k)));
            }
        }
        checked += 1;
    }
    let (_, missing) = emitted(Method::Rightangle);
    verdict(
        9,
        "coverage",
        &fails,
        &format!("{checked} emitted meshes, worst area residual {worst:.3e}; {} runs emitted no mesh", missing.len()),
    );
}

#[test]
fn criterion_10_determinism() {
    let mut fails = Vec::new();
    let fx = corpus();
    let again = std::thread::scope(|s| {
        let hs: Vec<_> = fx
            .iter()
            .enumerate()
            .flat_map(|(k, (name, poly))| MESH_METHODS.map(|m| (k, m, s.spawn(move || execute(poly, m, &Settings::default(), name)))))
            .collect();
        hs.into_iter().map(|(k, m, h)| ((k, m), h.join().expect("run thread"))).collect::<Vec<_>>()
    });
    for (key, second) in &again {
        let first = &runs()[key];
        let name = fixture_name(key.0);
        let json = |o: &RunOutput| o.mesh.as_ref().map(QuadMesh::to_json);
        if json(first) != json(second) {
            fails.push(format!("{name} {}: mesh JSON differs between runs", key.1));
        }
        if first.report.to_json() != second.report.to_json() {
            fails.push(format!("{name} {}: report JSON differs between runs", key.1));
        }
    }
    verdict(10, "determinism", &fails, &format!("{} run pairs compared", again.len()));
}

#[test]
fn fixtures_cover_the_listed_domains() {
    let names: Vec<&str> = corpus().iter().map(|c| c.0).collect();
    assert_eq!(names.len(), 9);
    assert_eq!(fixtures::square_with_hole().holes.len(), 1);
    assert_eq!(fixtures::star8().n(), 16);
}
