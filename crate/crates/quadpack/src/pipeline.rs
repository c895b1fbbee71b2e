//! End-to-end runs: load, pack, mesh, validate, check the method's
//! guarantee, and write the requested artifacts.
//!
//! Work happens on a copy of the domain scaled to the unit bounding box, so
//! relative tolerances mean the same thing for every input. Meshes and
//! packings are mapped back before they are written.

use crate::geom::{Circle, Polygon, Tolerances};
use crate::io::{load_polygon, write_text, IoError};
use crate::mesh::{quality_report, validate, QualityReport, QuadMesh, Validation};
use crate::meshers::{
    kite::mesh_kites_with, mesh_120_from_kites, mesh_opposite_right_angles_detailed, mesh_voronoi_detailed,
    power_duality_check, MeshingError,
};
use crate::packing::{pack, GapCensus, PackError, PackMode, PackOptions, Packing};
use crate::svg::{render_svg, Scene};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Voronoi,
    Rightangle,
    Kite,
    Maxangle,
    PackOnly,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Voronoi, Method::Rightangle, Method::Kite, Method::Maxangle, Method::PackOnly];

    pub fn name(self) -> &'static str {
        match self {
            Method::Voronoi => "voronoi",
            Method::Rightangle => "rightangle",
            Method::Kite => "kite",
            Method::Maxangle => "maxangle",
            Method::PackOnly => "pack-only",
        }
    }

    /// Packing mode the method needs.
    pub fn pack_mode(self) -> PackMode {
        match self {
            Method::Kite | Method::Maxangle => PackMode::BoundaryTangent,
            Method::Voronoi | Method::Rightangle | Method::PackOnly => PackMode::BoundaryCentered,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}; expected one of voronoi, rightangle, kite, maxangle, pack-only"))
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Success,
    ValidationFailure,
    InputError,
    GuaranteeViolation,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::ValidationFailure => 1,
            ExitStatus::InputError => 2,
            ExitStatus::GuaranteeViolation => 3,
        }
    }
}

/// Knobs shared by every run, independent of files.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub eps_sep: Option<f64>,
    pub eps_inset: Option<f64>,
    pub tol: Tolerances,
    pub simplify: bool,
    /// Packing mode for `pack-only`; other methods pick their own.
    pub pack_mode: Option<PackMode>,
}

impl Settings {
    pub fn pack_options(&self, method: Method) -> PackOptions {
        let mode = match method {
            Method::PackOnly => self.pack_mode.unwrap_or(PackMode::BoundaryCentered),
            m => m.pack_mode(),
        };
        let mut o = PackOptions::new(mode);
        if let Some(v) = self.eps_sep {
            o.eps_sep = v;
        }
        if let Some(v) = self.eps_inset {
            o.eps_inset = v;
        }
        o.tol = self.tol;
        o
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub method: Method,
    pub mesh_out: Option<PathBuf>,
    pub off_out: Option<PathBuf>,
    pub packing_out: Option<PathBuf>,
    pub report_out: Option<PathBuf>,
    pub svg_out: Option<PathBuf>,
    pub settings: Settings,
    /// Reserved; every stage is deterministic.
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, method: Method) -> Self {
        RunConfig {
            input: input.into(),
            method,
            mesh_out: None,
            off_out: None,
            packing_out: None,
            report_out: None,
            svg_out: None,
            settings: Settings::default(),
            seed: None,
        }
    }
}

/// A machine-readable problem found during a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: &str, message: impl fmt::Display) -> Self {
        Diagnostic { kind: kind.to_string(), message: message.to_string() }
    }
}

/// The property each method promises, checked on its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuaranteeCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingSummary {
    pub circles: usize,
    pub tangencies: usize,
    pub census: GapCensus,
    pub violations: Vec<String>,
}

/// Aggregate mesh numbers; per-element metrics are left out of reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshSummary {
    pub vertices: usize,
    pub quads: usize,
    pub max_angle_deg: f64,
    pub min_angle_deg: f64,
    pub q_over_n: f64,
    pub area_residual: f64,
    pub euler_residuals: [i64; 2],
    pub kite_fraction: f64,
    pub cyclic_fraction: f64,
    pub right_angle_fraction: f64,
    pub max_cross_ratio_deviation: f64,
}

impl MeshSummary {
    fn new(mesh: &QuadMesh, q: &QualityReport) -> Self {
        MeshSummary {
            vertices: mesh.vertices.len(),
            quads: mesh.quads.len(),
            max_angle_deg: q.max_angle,
            min_angle_deg: q.min_angle,
            q_over_n: q.q_over_n,
            area_residual: q.area_residual,
            euler_residuals: q.euler_residuals,
            kite_fraction: q.kite_fraction,
            cyclic_fraction: q.cyclic_fraction,
            right_angle_fraction: q.right_angle_fraction,
            max_cross_ratio_deviation: q.max_cross_ratio_deviation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub method: Method,
    pub status: ExitStatus,
    pub exit_code: i32,
    pub warnings: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
    pub packing: Option<PackingSummary>,
    pub mesh: Option<MeshSummary>,
    pub validation: Option<Validation>,
    pub guarantee: Option<GuaranteeCheck>,
    /// Circles a mesher added on top of the packing.
    pub added_circles: usize,
}

impl Report {
    fn new(input: String, method: Method) -> Self {
        Report {
            input,
            method,
            status: ExitStatus::Success,
            exit_code: 0,
            warnings: Vec::new(),
            diagnostics: Vec::new(),
            packing: None,
            mesh: None,
            validation: None,
            guarantee: None,
            added_circles: 0,
        }
    }

    fn finish(mut self, status: ExitStatus) -> Self {
        self.status = status;
        self.exit_code = status.code();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything a run produced, in input coordinates.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub status: ExitStatus,
    pub report: Report,
    pub domain: Option<Polygon>,
    pub packing: Option<Packing>,
    pub mesh: Option<QuadMesh>,
    pub extra_circles: Vec<Circle>,
}

/// Result of meshing in the unit frame, before checks.
struct Meshed {
    packing: Packing,
    mesh: Option<QuadMesh>,
    extra: Vec<Circle>,
    /// Method-specific requirement beyond the element metrics, if any.
    side_check: Option<(bool, String)>,
}

fn mesh_unit(poly: &Polygon, method: Method, s: &Settings) -> Result<Meshed, MeshingError> {
    let opts = s.pack_options(method);
    let pk = pack(poly, &opts)?;
    Ok(match method {
        Method::PackOnly => Meshed { packing: pk, mesh: None, extra: Vec::new(), side_check: None },
        Method::Kite | Method::Maxangle => {
            let km = mesh_kites_with(&pk, poly, &opts)?;
            let mesh = if method == Method::Kite { km.mesh } else { mesh_120_from_kites(&km.mesh, poly, opts.tol)? };
            Meshed { packing: pk, mesh: Some(mesh), extra: km.aux_circles, side_check: None }
        }
        Method::Voronoi => {
            let vm = mesh_voronoi_detailed(&pk, poly)?;
            let d = power_duality_check(&vm.mesh, &vm.family, poly);
            let ok = d.passed() && vm.diagnostics.is_empty();
            let detail = format!(
                "power duality on {} edges, max residual {:.3e}, {} failures, {} cell diagnostics",
                d.edges_checked,
                d.max_residual,
                d.failures.len(),
                vm.diagnostics.len()
            );
            let extra = vm.packing.circles[pk.circles.len()..].iter().map(|c| c.circle).collect();
            Meshed { packing: pk, mesh: Some(vm.mesh), extra, side_check: Some((ok, detail)) }
        }
        Method::Rightangle => {
            let rm = mesh_opposite_right_angles_detailed(&pk, poly, s.simplify)?;
            let ok = rm.foot_residual <= 1e-9;
            let detail = format!("foot residual {:.3e}, {} sites removed", rm.foot_residual, rm.removed_sites);
            Meshed { packing: pk, mesh: Some(rm.mesh), extra: Vec::new(), side_check: Some((ok, detail)) }
        }
    })
}

/// Check the element-level promise of `method` on a mesh.
pub fn guarantee(method: Method, q: &QualityReport, tol: Tolerances) -> GuaranteeCheck {
    let (name, passed, detail) = match method {
        Method::Kite => (
            "every element is a kite with cross ratio 1",
            q.kite_fraction == 1.0 && q.max_cross_ratio_deviation <= 1e-9,
            format!("kite fraction {}, cross ratio deviation {:.3e}", q.kite_fraction, q.max_cross_ratio_deviation),
        ),
        Method::Maxangle => {
            let bound = 120.0 + tol.eps_angle.to_degrees();
            (
                "no angle above 120 degrees",
                q.max_angle <= bound,
                format!("max angle {:.10} degrees, bound {bound:.10}", q.max_angle),
            )
        }
        Method::Rightangle => (
            "every element is cyclic with two opposite right angles",
            q.cyclic_fraction == 1.0 && q.right_angle_fraction == 1.0,
            format!("cyclic fraction {}, right-angle fraction {}", q.cyclic_fraction, q.right_angle_fraction),
        ),
        Method::Voronoi => ("mesh is a Voronoi quadrilateralization", true, String::new()),
        Method::PackOnly => ("packing invariants hold", true, String::new()),
    };
    GuaranteeCheck { name: name.to_string(), passed, detail }
}

fn meshing_status(e: &MeshingError) -> ExitStatus {
    match e {
        MeshingError::Pack(PackError::InvalidPolygon(_) | PackError::InvalidOptions(_)) => ExitStatus::InputError,
        _ => ExitStatus::GuaranteeViolation,
    }
}

/// Pack and mesh `poly` with `method`, validate, and check the guarantee.
/// Writes nothing.
pub fn execute(poly: &Polygon, method: Method, s: &Settings, input: &str) -> RunOutput {
    let mut report = Report::new(input.to_string(), method);
    let fail = |report: Report, status| RunOutput {
        status,
        report: report.finish(status),
        domain: Some(poly.clone()),
        packing: None,
        mesh: None,
        extra_circles: Vec::new(),
    };
    if let Err(e) = s.tol.validate() {
        report.diagnostics.push(Diagnostic::new("InvalidOptions", e));
        return fail(report, ExitStatus::InputError);
    }
    if let Err(e) = s.pack_options(method).validate() {
        report.diagnostics.push(Diagnostic::new("InvalidOptions", e));
        return fail(report, ExitStatus::InputError);
    }
    let nz = poly.normalization();
    let unit = poly.map(|p| nz.forward(p));
    let m = match mesh_unit(&unit, method, s) {
        Ok(m) => m,
        Err(e) => {
            let kind = format!("{e:?}");
            let kind = kind.split(['(', ' ', '{']).next().unwrap_or("MeshingError").to_string();
            report.diagnostics.push(Diagnostic::new(&kind, &e));
            let status = meshing_status(&e);
            return fail(report, status);
        }
    };

    let opts = s.pack_options(method);
    let violations = m.packing.check(&opts);
    let census = m.packing.census();
    let big_gaps: usize = m.packing.gaps().iter().filter(|g| g.sides.len() >= 5).count();
    report.packing = Some(PackingSummary {
        circles: m.packing.circles.len(),
        tangencies: m.packing.tangencies.len(),
        census,
        violations: violations.clone(),
    });
    report.added_circles = m.extra.len();
    let mut status = ExitStatus::Success;
    if !violations.is_empty() || big_gaps > 0 {
        report.diagnostics.extend(violations.iter().map(|v| Diagnostic::new("PackingInvariant", v)));
        if big_gaps > 0 {
            report.diagnostics.push(Diagnostic::new("PackingInvariant", format!("{big_gaps} gaps with five or more sides")));
        }
        status = ExitStatus::GuaranteeViolation;
    }

    if let Some(mesh) = &m.mesh {
        let v = validate(mesh, &unit);
        let q = quality_report(mesh, &unit, s.tol);
        let mut g = guarantee(method, &q, s.tol);
        if let Some((ok, detail)) = &m.side_check {
            g.passed &= ok;
            g.detail = if g.detail.is_empty() { detail.clone() } else { format!("{}; {detail}", g.detail) };
        }
        report.mesh = Some(MeshSummary::new(mesh, &q));
        if !v.is_ok() {
            report.diagnostics.push(Diagnostic::new("Validation", format!("{} violations", v.violations.len())));
            status = ExitStatus::ValidationFailure;
        } else if !g.passed && status == ExitStatus::Success {
            report.diagnostics.push(Diagnostic::new("Guarantee", &g.detail));
            status = ExitStatus::GuaranteeViolation;
        }
        report.validation = Some(v);
        report.guarantee = Some(g);
    } else {
        report.guarantee = Some(GuaranteeCheck {
            name: "packing invariants hold".into(),
            passed: status == ExitStatus::Success,
            detail: format!("{} circles", m.packing.circles.len()),
        });
    }

    let back = |p| nz.inverse(p);
    RunOutput {
        status,
        report: report.finish(status),
        domain: Some(poly.clone()),
        packing: Some(m.packing.denormalized(&nz)),
        mesh: m.mesh.map(|mm| mm.map(back)),
        extra_circles: m
            .extra
            .iter()
            .map(|c| Circle { center: back(c.center), radius: c.radius / nz.scale })
            .collect(),
    }
}

/// Validate an existing mesh against a domain, with the element checks of
/// `method` when one is given.
pub fn check_mesh(poly: &Polygon, mesh: &QuadMesh, method: Option<Method>, tol: Tolerances, input: &str) -> Report {
    let mut report = Report::new(input.to_string(), method.unwrap_or(Method::PackOnly));
    let nz = poly.normalization();
    let unit = poly.map(|p| nz.forward(p));
    let mesh = mesh.map(|p| nz.forward(p));
    let v = validate(&mesh, &unit);
    let q = quality_report(&mesh, &unit, tol);
    report.mesh = Some(MeshSummary::new(&mesh, &q));
    let mut status = ExitStatus::Success;
    if !v.is_ok() {
        report.diagnostics.push(Diagnostic::new("Validation", format!("{} violations", v.violations.len())));
        status = ExitStatus::ValidationFailure;
    }
    if let Some(m) = method.filter(|m| *m != Method::PackOnly) {
        let g = guarantee(m, &q, tol);
        if !g.passed && status == ExitStatus::Success {
            report.diagnostics.push(Diagnostic::new("Guarantee", &g.detail));
            status = ExitStatus::GuaranteeViolation;
        }
        report.guarantee = Some(g);
    }
    report.validation = Some(v);
    report.finish(status)
}

fn input_failure(cfg: &RunConfig, e: &IoError) -> RunOutput {
    let kind = match e {
        IoError::InvalidPolygon { .. } => "InvalidPolygon",
        IoError::Parse(_) => "ParseError",
        _ => "IoError",
    };
    let mut report = Report::new(cfg.input.display().to_string(), cfg.method);
    report.diagnostics.push(Diagnostic::new(kind, e));
    RunOutput {
        status: ExitStatus::InputError,
        report: report.finish(ExitStatus::InputError),
        domain: None,
        packing: None,
        mesh: None,
        extra_circles: Vec::new(),
    }
}

/// Write every artifact that `cfg` asks for and that `out` has.
pub fn write_outputs(cfg: &RunConfig, out: &RunOutput) -> Result<(), IoError> {
    if let Some(p) = &cfg.report_out {
        write_text(p, &out.report.to_json())?;
    }
    if let (Some(p), Some(m)) = (&cfg.mesh_out, &out.mesh) {
        write_text(p, &m.to_json())?;
    }
    if let (Some(p), Some(m)) = (&cfg.off_out, &out.mesh) {
        write_text(p, &m.to_off())?;
    }
    if let (Some(p), Some(pk)) = (&cfg.packing_out, &out.packing) {
        write_text(p, &serde_json::to_string(pk).expect("packing serializes"))?;
    }
    if let (Some(p), Some(domain)) = (&cfg.svg_out, &out.domain) {
        let scene = Scene { domain, packing: out.packing.as_ref(), mesh: out.mesh.as_ref(), extra_circles: &out.extra_circles };
        render_svg(&scene, p)?;
    }
    Ok(())
}

/// Load, execute and write. The report is written whenever one is
/// requested, failures included.
pub fn run(cfg: &RunConfig) -> RunOutput {
    let mut out = match load_polygon(&cfg.input) {
        Ok((poly, warnings)) => {
            let mut o = execute(&poly, cfg.method, &cfg.settings, &cfg.input.display().to_string());
            o.report.warnings.extend(warnings);
            o
        }
        Err(e) => input_failure(cfg, &e),
    };
    if let Err(e) = write_outputs(cfg, &out) {
        out.report.diagnostics.push(Diagnostic::new("IoError", &e));
        out.status = ExitStatus::InputError;
        out.report = out.report.clone().finish(ExitStatus::InputError);
        if let Some(p) = &cfg.report_out {
            let _ = write_text(p, &out.report.to_json());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::unit_square;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!("delaunay".parse::<Method>().is_err());
    }

    #[test]
    fn exit_codes_are_fixed() {
        let codes: Vec<i32> = [ExitStatus::Success, ExitStatus::ValidationFailure, ExitStatus::InputError, ExitStatus::GuaranteeViolation]
            .iter()
            .map(|s| s.code())
            .collect();
        assert_eq!(codes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn square_kite_run_succeeds() {
        let out = execute(&unit_square(), Method::Kite, &Settings::default(), "square");
        assert_eq!(out.status, ExitStatus::Success, "{:?}", out.report.diagnostics);
        assert_eq!(out.report.mesh.as_ref().unwrap().kite_fraction, 1.0);
    }

    #[test]
    fn bad_options_are_input_errors() {
        let s = Settings { eps_sep: Some(-1.0), ..Settings::default() };
        let out = execute(&unit_square(), Method::Kite, &s, "square");
        assert_eq!(out.status, ExitStatus::InputError);
    }

    #[test]
    fn output_returns_to_input_coordinates() {
        let poly = crate::fixtures::rectangle_2x1().map(|p| p * 10.0);
        let out = execute(&poly, Method::Voronoi, &Settings::default(), "rect");
        assert_eq!(out.status, ExitStatus::Success, "{:?}", out.report.diagnostics);
        let mesh = out.mesh.unwrap();
        assert!(((mesh.area() - poly.area()) / poly.area()).abs() < 1e-9);
    }
}
