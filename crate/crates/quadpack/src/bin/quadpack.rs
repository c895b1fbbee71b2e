use clap::{Args, Parser, Subcommand};
use quadpack::geom::Tolerances;
use quadpack::io::{load_polygon, IoError};
use quadpack::mesh::QuadMesh;
use quadpack::packing::PackMode;
use quadpack::pipeline::{check_mesh, run, ExitStatus, Method, RunConfig, RunOutput, Settings};
use quadpack::svg::{render_svg, Scene};
use std::path::PathBuf;
use std::process::ExitCode;

/// Circle packing and quadrilateral meshing of polygons.
///
/// Exit codes: 0 success, 1 validation failure, 2 input error,
/// 3 guarantee violation.
#[derive(Parser)]
#[command(name = "quadpack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack a polygon with tangent circles.
    Pack {
        #[command(flatten)]
        common: Common,
        /// Keep circles tangent to the boundary instead of centered on it.
        #[arg(long)]
        tangent: bool,
        /// Packing JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pack and mesh a polygon.
    Mesh {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "kite")]
        method: Method,
        /// Mesh JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// OFF output.
        #[arg(long)]
        off: Option<PathBuf>,
        /// Packing JSON output.
        #[arg(long)]
        packing: Option<PathBuf>,
        /// Remove Voronoi sites greedily before the right-angle subdivision.
        #[arg(long)]
        simplify: bool,
    },
    /// Check a mesh JSON file against its polygon.
    Validate {
        /// Polygon JSON.
        input: PathBuf,
        /// Mesh JSON to check.
        #[arg(long)]
        mesh: PathBuf,
        /// Also check the element guarantee of this method.
        #[arg(long)]
        method: Option<Method>,
        /// Relative tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Report JSON output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw a polygon with its packing and mesh.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "pack-only")]
        method: Method,
        /// Draw this mesh JSON over the domain instead of running a method.
        #[arg(long)]
        mesh: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Polygon JSON: {"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}.
    input: PathBuf,
    /// Edge separation of boundary-tangent circles, as a fraction of radius.
    #[arg(long)]
    eps_sep: Option<f64>,
    /// Inset fraction for boundary-tangent replacement circles.
    #[arg(long)]
    eps_inset: Option<f64>,
    /// Relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// SVG output.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Report JSON output.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn tolerances(tol: Option<f64>) -> Tolerances {
    Tolerances { eps_rel: tol.unwrap_or(Tolerances::default().eps_rel), ..Tolerances::default() }
}

impl Common {
    fn config(&self, method: Method) -> RunConfig {
        let mut cfg = RunConfig::new(&self.input, method);
        cfg.settings = Settings { eps_sep: self.eps_sep, eps_inset: self.eps_inset, tol: tolerances(self.tol), ..Settings::default() };
        cfg.svg_out = self.svg.clone();
        cfg.report_out = self.report.clone();
        cfg
    }
}

fn summarize(out: &RunOutput) -> ExitStatus {
    let r = &out.report;
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    for d in &r.diagnostics {
        eprintln!("{}: {}", d.kind, d.message);
    }
    let circles = r.packing.as_ref().map_or(0, |p| p.circles);
    match &r.mesh {
        Some(m) => println!(
            "{}: {} circles, {} quads, max angle {:.6} deg, {}",
            r.method,
            circles,
            m.quads,
            m.max_angle_deg,
            status_word(out.status)
        ),
        None => println!("{}: {} circles, {}", r.method, circles, status_word(out.status)),
    }
    out.status
}

fn status_word(s: ExitStatus) -> &'static str {
    match s {
        ExitStatus::Success => "ok",
        ExitStatus::ValidationFailure => "validation failed",
        ExitStatus::InputError => "input error",
        ExitStatus::GuaranteeViolation => "guarantee violated",
    }
}

fn input_error(e: &IoError) -> ExitStatus {
    eprintln!("error: {e}");
    ExitStatus::InputError
}

fn read_mesh(path: &PathBuf) -> Result<QuadMesh, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    QuadMesh::from_json(&text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Pack { common, tangent, out } => {
            let mut cfg = common.config(Method::PackOnly);
            cfg.settings.pack_mode = Some(if tangent { PackMode::BoundaryTangent } else { PackMode::BoundaryCentered });
            cfg.packing_out = out;
            summarize(&run(&cfg))
        }
        Command::Mesh { common, method, out, off, packing, simplify } => {
            let mut cfg = common.config(method);
            cfg.settings.simplify = simplify;
            cfg.mesh_out = out;
            cfg.off_out = off;
            cfg.packing_out = packing;
            summarize(&run(&cfg))
        }
        Command::Validate { input, mesh, method, tol, report } => match load_polygon(&input) {
            Err(e) => input_error(&e),
            Ok((poly, _)) => match read_mesh(&mesh) {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitStatus::InputError
                }
                Ok(m) => {
                    let r = check_mesh(&poly, &m, method, tolerances(tol), &input.display().to_string());
                    if let Some(p) = report {
                        if let Err(e) = quadpack::io::write_text(&p, &r.to_json()) {
                            return ExitCode::from(input_error(&e).code() as u8);
                        }
                    }
                    for d in &r.diagnostics {
                        eprintln!("{}: {}", d.kind, d.message);
                    }
                    println!("{} quads, {}", m.quads.len(), status_word(r.status));
                    r.status
                }
            },
        },
        Command::Render { common, method, mesh } => {
            let cfg = common.config(method);
            if let (Some(svg), Some(mesh_path)) = (&cfg.svg_out, &mesh) {
                match (load_polygon(&cfg.input), read_mesh(mesh_path)) {
                    (Err(e), _) => input_error(&e),
                    (_, Err(e)) => {
                        eprintln!("error: {e}");
                        ExitStatus::InputError
                    }
                    (Ok((poly, _)), Ok(m)) => {
                        let scene = Scene { mesh: Some(&m), ..Scene::domain(&poly) };
                        match render_svg(&scene, svg) {
                            Ok(()) => ExitStatus::Success,
                            Err(e) => input_error(&e),
                        }
                    }
                }
            } else if cfg.svg_out.is_none() {
                eprintln!("error: render needs --svg");
                ExitStatus::InputError
            } else {
                summarize(&run(&cfg))
            }
        }
    };
    ExitCode::from(status.code() as u8)
}
