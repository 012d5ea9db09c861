//! Command-line surface: argument definitions and one handler per
//! subcommand. Handlers return a JSON document; `run` routes it to stdout
//! or to the `--json` file.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use archtrop_core::amoeba::{
    archtrop_segments, directed_hausdorff_cloud_to_trop, directed_hausdorff_trop_to_cloud, univariate_log_norms,
    Window, DEFAULT_GRID, DEFAULT_PHASES,
};
use archtrop_core::hardness::{
    brute_force_mixed_vertex, has_balanced_partition, has_balanced_product_partition, log_partition_to_instance,
    partition_to_instance, verify_certificate, MixedVertexInstance,
};
use archtrop_core::polyhedra::{vertices, Point};
use archtrop_core::startpoints::{
    binomial_log_norms, newton_refine, solve_binomials, start_system, tropical_start, NewtonOutcome,
    DEFAULT_NEWTON_MAXIT, DEFAULT_NEWTON_TOL,
};
use archtrop_core::tropical::{
    cell_at, classify, complement_components, distance_to_archtrop, dominant_terms, induced_subdivision, multi_cell_at,
    ArchTropComplex, CellAtPoint, Classification,
};
use archtrop_core::{Error, LaurentPolynomial, PolynomialSystem, Rational};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::input;
use crate::json::{self, envelope, form, one_based, point, point_f64};
use crate::sampling::sample_amoeba_2d_par;
use crate::svg::{clip_polygon, render, Scene};

#[derive(Parser, Debug)]
#[command(name = "archtrop-kit", version, about = "Archimedean tropical varieties as certified amoeba approximations")]
pub struct Cli {
    /// Bits of the decimal enclosures printed for exact quantities.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(8..=4096))]
    pub precision_bits: u32,
    /// Seed for amoeba sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Plot and sampling window `x0,x1,y0,y1` [default: -7,7,-7,7].
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = window_arg)]
    pub window: Option<Window>,
    #[command(subcommand)]
    pub command: Command,
}

fn window_arg(s: &str) -> Result<Window, String> {
    input::parse_window(s).map_err(|e| format!("{e:#}"))
}

fn point_arg(s: &str) -> Result<Point, String> {
    input::parse_point(s).map_err(|e| format!("{e:#}"))
}

/// Where the polynomials come from.
#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// A polynomial such as `1 + x1^3 + x2^2 - 3*x1*x2`; repeatable.
    #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
    pub polys: Vec<String>,
    /// A preset (two-poly, f1, example-f, example-g) or a file with one
    /// polynomial per line.
    #[arg(long)]
    pub system: Option<String>,
    /// Number of variables [default: largest index occurring].
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    /// Slices per axis.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Phases per slice.
    #[arg(long, default_value_t = DEFAULT_PHASES)]
    pub phases: usize,
}

/// A query point `w1,w2,...`; coordinates may be log-linear such as `1/2*ln(3)`.
#[derive(Args, Debug, Clone)]
pub struct PointArg {
    /// Query point `w1,w2,...`
    #[arg(short = 'w', long = "point", allow_hyphen_values = true, value_parser = point_arg)]
    pub point: Point,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cells of ArchTrop(f) with their exact descriptions.
    Archtrop {
        #[command(flatten)]
        polys: PolyArgs,
        /// Also draw the curve (n = 2) to this SVG file.
        #[arg(long, value_name = "FILE")]
        render: Option<PathBuf>,
    },
    /// The subdivision of Newt(f) induced by the lifted points.
    Subdivision {
        #[command(flatten)]
        polys: PolyArgs,
    },
    /// The cell containing a point, with its facets and mixed vertices.
    Cell {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        w: PointArg,
        /// Also draw the curves and the cell (n = 2) to this SVG file.
        #[arg(long, value_name = "FILE")]
        render: Option<PathBuf>,
    },
    /// Exact distance from a point to ArchTrop(f).
    Dist {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        w: PointArg,
    },
    /// Near ArchTrop(f), or certified off the amoeba.
    Classify {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        w: PointArg,
    },
    /// Tropical start points for a square system near a query point.
    Startpoints {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        w: PointArg,
        /// Residual tolerance for Newton refinement
        #[arg(long, default_value_t = DEFAULT_NEWTON_TOL)]
        newton_tol: f64,
        /// Iteration cap for Newton refinement
        #[arg(long, default_value_t = DEFAULT_NEWTON_MAXIT)]
        newton_maxit: usize,
    },
    /// Sample the amoeba (n = 2 point cloud, or root log-norms for n = 1).
    SampleAmoeba {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        sampling: SampleArgs,
        /// Write the cloud to this CSV file.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// One-sided Hausdorff estimates between a sampled amoeba and ArchTrop(f).
    Hausdorff {
        #[command(flatten)]
        polys: PolyArgs,
        #[command(flatten)]
        sampling: SampleArgs,
        /// Spacing of the samples taken along ArchTrop(f).
        #[arg(long, default_value_t = 0.01)]
        spacing: f64,
        /// Compare ArchTrop(f) with Amoeba(f^{*s}) scaled by 1/s.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=64))]
        deform: u32,
    },
    /// Decide or certify a mixed vertex of a Mixed-Vertex instance.
    Mixedvertex {
        /// Instance JSON as written by `reduce-partition`.
        #[arg(long, value_name = "FILE", conflicts_with = "alpha")]
        instance: Option<PathBuf>,
        /// Build the instance from a Partition instance `a1,a2,...`.
        #[arg(long, required_unless_present = "instance")]
        alpha: Option<String>,
        /// Use the logarithmic construction (with --alpha).
        #[arg(long, requires = "alpha")]
        log: bool,
        /// Check this point instead of searching.
        #[arg(long, allow_hyphen_values = true, value_parser = point_arg)]
        certificate: Option<Point>,
    },
    /// Write the Mixed-Vertex instance of a Partition instance.
    ReducePartition {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        log: bool,
        /// Instance output file [default: stdout].
        #[arg(short = 'o', long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Draw tropical curves, optionally with sampled amoebas and a query cell.
    Render {
        #[command(flatten)]
        polys: PolyArgs,
        /// SVG output file.
        #[arg(short = 'o', long, value_name = "FILE")]
        output: PathBuf,
        /// Overlay the sampled amoeba of every polynomial.
        #[arg(long)]
        amoeba: bool,
        /// Shade the cell containing this point.
        #[arg(long, allow_hyphen_values = true, value_parser = point_arg)]
        cell: Option<Point>,
        #[command(flatten)]
        sampling: SampleArgs,
    },
}

/// Invalid input; maps to exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| anyhow::Error::new(Usage(format!("{e:#}"))))
}

fn usage_msg(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

/// Exit code for a failed run: 2 for invalid input, 1 for failed computations.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Syntax { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidArgument(_)
                | Error::ZeroPolynomial
                | Error::LogOfZero
                | Error::LogOfNonPositive
                | Error::NotSquare => 2,
                _ => 1,
            };
        }
    }
    1
}

struct Ctx {
    bits: u32,
    seed: u64,
    window: Window,
}

impl Ctx {
    fn window_json(&self) -> Value {
        let w = &self.window;
        json!([w.x0, w.x1, w.y0, w.y1])
    }
}

fn load(p: &PolyArgs, hint: usize) -> Result<Vec<LaurentPolynomial>> {
    usage(
        input::polynomial_texts(&p.polys, p.system.as_deref()).and_then(|t| input::parse_polynomials(&t, p.vars, hint)),
    )
}

fn load_one(p: &PolyArgs, hint: usize) -> Result<LaurentPolynomial> {
    let mut v = load(p, hint)?;
    if v.len() != 1 {
        return Err(usage_msg(format!("this command takes one polynomial, got {}", v.len())));
    }
    Ok(v.remove(0))
}

fn require_plane(f: &LaurentPolynomial) -> Result<()> {
    if f.dim() != 2 {
        return Err(usage_msg(format!("this command needs n = 2, got n = {}", f.dim())));
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn poly_json(f: &LaurentPolynomial) -> Value {
    json!({ "text": f.to_string(), "n": f.dim(), "terms": f.len() })
}

/// A vertex with the dominant terms of each polynomial there.
type ActiveVertex = (Point, Vec<Vec<usize>>);

/// Vertices of the cell lying on every variety; `None` beyond the vertex
/// enumeration limit.
fn mixed_vertices(polys: &[LaurentPolynomial], cell: &CellAtPoint) -> Result<Option<Vec<ActiveVertex>>> {
    let vs = match vertices(&cell.closure) {
        Ok(v) => v,
        Err(Error::DimensionTooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for v in vs {
        let active: Vec<Vec<usize>> = polys.iter().map(|p| dominant_terms(p, &v)).collect::<Result<_, _>>()?;
        if active.iter().all(|a| a.len() >= 2) {
            out.push((v, active));
        }
    }
    Ok(Some(out))
}

fn vertex_json(v: &Point, active: &[Vec<usize>], bits: u32) -> Value {
    json!({
        "point": point(v, bits),
        "approx": point_f64(v),
        "active_terms": active.iter().map(|a| one_based(a)).collect::<Vec<_>>(),
    })
}

fn cmd_archtrop(ctx: &Ctx, polys: &PolyArgs, render_to: Option<&Path>) -> Result<Value> {
    let f = load_one(polys, 0)?;
    let complex = ArchTropComplex::new(&f)?;
    let cells: Vec<Value> = complex
        .cells()
        .iter()
        .map(|c| {
            json!({
                "dim": c.dim,
                "terms": one_based(&c.terms),
                "constraints": json::polyhedron(&c.polyhedron, ctx.bits),
            })
        })
        .collect();
    let mut body = json!({
        "polynomial": poly_json(&f),
        "cells": cells,
        "vertices": complex.vertices().iter().map(|v| point(v, ctx.bits)).collect::<Vec<_>>(),
    });
    if f.dim() == 2 {
        let segs = archtrop_segments(&complex, &ctx.window);
        body["window"] = ctx.window_json();
        body["segments"] = segs
            .iter()
            .map(|s| json!({ "cell": s.cell + 1, "start": s.start, "end": s.end }))
            .collect::<Vec<_>>()
            .into();
        if let Some(path) = render_to {
            write_file(path, &render(&Scene { curves: vec![segs], ..Scene::default() }, &ctx.window))?;
            body["svg"] = path.display().to_string().into();
        }
    } else if render_to.is_some() {
        return Err(usage_msg("--render needs n = 2"));
    }
    Ok(body)
}

fn cmd_subdivision(polys: &PolyArgs) -> Result<Value> {
    let f = load_one(polys, 0)?;
    let sub = induced_subdivision(&f)?;
    let cells: Vec<Value> = sub
        .cells
        .iter()
        .map(|c| json!({ "dim": c.dim, "points": one_based(&c.points), "vertices": one_based(&c.vertices) }))
        .collect();
    let mut body = json!({
        "polynomial": poly_json(&f),
        "dim": sub.dim,
        "cells": cells,
        "maximal_cells": sub.maximal_cells().count(),
    });
    if f.dim() == 2 {
        let (total, bounded) = complement_components(&f)?;
        body["complement_components"] = json!({ "total": total, "bounded": bounded });
    }
    Ok(body)
}

fn cmd_cell(ctx: &Ctx, polys: &PolyArgs, w: &Point, render_to: Option<&Path>) -> Result<Value> {
    let fs = load(polys, w.len())?;
    let cell = if fs.len() == 1 { cell_at(&fs[0], w)? } else { multi_cell_at(&PolynomialSystem::new(fs.clone())?, w)? };
    let mut body = json!({
        "polynomials": fs.iter().map(poly_json).collect::<Vec<_>>(),
        "cell": json::cell(&cell, ctx.bits),
    });
    body["mixed_vertices"] = match mixed_vertices(&fs, &cell)? {
        Some(vs) => vs.iter().map(|(v, a)| vertex_json(v, a, ctx.bits)).collect::<Vec<_>>().into(),
        None => Value::Null,
    };
    if let Some(path) = render_to {
        if w.len() != 2 {
            return Err(usage_msg("--render needs n = 2"));
        }
        let scene = Scene {
            curves: fs
                .iter()
                .map(|f| Ok(archtrop_segments(&ArchTropComplex::new(f)?, &ctx.window)))
                .collect::<Result<_>>()?,
            cell: Some(clip_polygon(&cell.closure, &ctx.window)),
            point: Some([w[0].to_f64(), w[1].to_f64()]),
            ..Scene::default()
        };
        write_file(path, &render(&scene, &ctx.window))?;
        body["svg"] = path.display().to_string().into();
    }
    Ok(body)
}

fn classification_json(f: &LaurentPolynomial, c: &Classification) -> Value {
    let t = f.len() as f64;
    let lt = (t - 1.0).ln();
    match c {
        Classification::Near { distance } => json!({
            "case": "a",
            "near": true,
            "distance_to_archtrop": distance,
            "archtrop_bound": lt,
            "amoeba_distance_bound": (2.0 * t - 2.0) * lt,
        }),
        Classification::Far { gap } => json!({ "case": "b", "near": false, "amoeba_distance_lower_bound": gap }),
    }
}

fn cmd_dist(ctx: &Ctx, polys: &PolyArgs, w: &Point) -> Result<Value> {
    let f = load_one(polys, w.len())?;
    let d = distance_to_archtrop(&f, w)?;
    let witness = d.witness.as_ref().map(|wit| {
        json!({
            "constraint": json::halfspace(&wit.constraint, ctx.bits),
            "origin": json::origin(&wit.origin),
            "slack": form(&wit.slack, ctx.bits),
            "normal_norm_sqr": json::rational(&wit.norm_sqr),
        })
    });
    Ok(json!({
        "polynomial": poly_json(&f),
        "point": point(w, ctx.bits),
        "distance": d.value,
        "witness": witness,
        "classification": classification_json(&f, &classify(&f, w)?),
    }))
}

fn cmd_classify(polys: &PolyArgs, w: &Point) -> Result<Value> {
    let f = load_one(polys, w.len())?;
    Ok(json!({
        "polynomial": poly_json(&f),
        "point": point_f64(w),
        "classification": classification_json(&f, &classify(&f, w)?),
    }))
}

fn newton_json(o: &NewtonOutcome) -> Value {
    match o {
        NewtonOutcome::Converged { root, residual, iterations } => json!({
            "status": "converged",
            "root": root.iter().map(json::complex).collect::<Vec<_>>(),
            "log_norms": root.iter().map(|z| z.norm().ln()).collect::<Vec<_>>(),
            "residual": residual,
            "iterations": iterations,
        }),
        NewtonOutcome::Diverged { last, residual, reason } => json!({
            "status": "diverged",
            "last": last.iter().map(json::complex).collect::<Vec<_>>(),
            "residual": residual,
            "reason": reason,
        }),
    }
}

fn cmd_startpoints(ctx: &Ctx, polys: &PolyArgs, w: &Point, tol: f64, maxit: usize) -> Result<Value> {
    if !tol.is_finite() || tol <= 0.0 || maxit == 0 {
        return Err(usage_msg("--newton-tol must be positive and --newton-maxit at least 1"));
    }
    let system = PolynomialSystem::new(load(polys, w.len())?)?;
    let out = tropical_start(&system, w)?;
    let mut body = json!({
        "polynomials": system.polys().iter().map(poly_json).collect::<Vec<_>>(),
        "cell": json::cell(out.cell(), ctx.bits),
    });
    if out.no_roots_certificate().is_some() {
        body["no_roots"] = true.into();
        body["message"] = "There are no roots of F in the cell of w.".into();
        body["candidates"] = json!([]);
        return Ok(body);
    }
    body["no_roots"] = false.into();
    let mut cands = Vec::new();
    for c in out.candidates() {
        let mut v = vertex_json(&c.vertex.coordinates, &c.vertex.active, ctx.bits);
        v["index_sets"] = c.index_sets.sets.iter().map(|s| one_based(s)).collect::<Vec<_>>().into();
        v["binomial"] = c.index_sets.binomial.into();
        if c.index_sets.binomial {
            v["start_system"] = match start_system(&system, &c.index_sets).and_then(|g| {
                let roots = solve_binomials(&g)?;
                let norms = binomial_log_norms(&g)?;
                let refined =
                    roots.iter().map(|r| newton_refine(&system, r, tol, maxit)).collect::<Result<Vec<_>, _>>()?;
                Ok(json!({
                    "exponents": g.exponents,
                    "targets": g.targets.iter().map(json::complex).collect::<Vec<_>>(),
                    "log_norms": norms,
                    "roots": roots.iter().map(|r| r.iter().map(json::complex).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "newton": refined.iter().map(newton_json).collect::<Vec<_>>(),
                }))
            }) {
                Ok(s) => s,
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
        cands.push(v);
    }
    body["candidates"] = cands.into();
    Ok(body)
}

fn check_sampling(s: &SampleArgs) -> Result<()> {
    if s.grid == 0 || s.phases == 0 {
        return Err(usage_msg("--grid and --phases must be positive"));
    }
    Ok(())
}

fn cmd_sample(ctx: &Ctx, polys: &PolyArgs, s: &SampleArgs, csv_to: Option<&Path>) -> Result<Value> {
    check_sampling(s)?;
    let f = load_one(polys, 0)?;
    if f.dim() == 1 {
        if csv_to.is_some() {
            return Err(usage_msg("--csv needs n = 2"));
        }
        return Ok(json!({ "polynomial": poly_json(&f), "log_norms": univariate_log_norms(&f)? }));
    }
    require_plane(&f)?;
    let cloud = sample_amoeba_2d_par(&f, &ctx.window, s.grid, s.phases, ctx.seed)?;
    let mut body = json!({
        "polynomial": poly_json(&f),
        "window": ctx.window_json(),
        "grid": s.grid,
        "phases": s.phases,
        "seed": ctx.seed,
        "points": cloud.len(),
        "cloud_to_archtrop_estimate": directed_hausdorff_cloud_to_trop(&cloud, &f),
    });
    if let Some(path) = csv_to {
        write_file(path, &crate::csv::cloud_to_string(&cloud.points))?;
        body["csv"] = path.display().to_string().into();
    }
    Ok(body)
}

fn cmd_hausdorff(ctx: &Ctx, polys: &PolyArgs, s: &SampleArgs, spacing: f64, deform: u32) -> Result<Value> {
    check_sampling(s)?;
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(usage_msg("--spacing must be positive"));
    }
    let f = load_one(polys, 0)?;
    require_plane(&f)?;
    let k = deform as f64;
    let g = f.power_deform(&Rational::from_integer(deform.into()))?;
    let cloud = sample_amoeba_2d_par(&g, &ctx.window.scale(k), s.grid, s.phases, ctx.seed)?.scaled(1.0 / k);
    let to_trop = directed_hausdorff_cloud_to_trop(&cloud, &f);
    let from_trop = directed_hausdorff_trop_to_cloud(&f, &cloud, &ctx.window, spacing)?;
    let lt = ((f.len() - 1) as f64).ln();
    Ok(json!({
        "polynomial": poly_json(&f),
        "window": ctx.window_json(),
        "grid": s.grid,
        "phases": s.phases,
        "seed": ctx.seed,
        "deform": deform,
        "points": cloud.len(),
        "estimate": true,
        "cloud_to_archtrop": to_trop,
        "archtrop_to_cloud": from_trop,
        "symmetric": to_trop.max(from_trop),
        "bounds": { "cloud_to_archtrop": lt / k, "hausdorff": (2.0 * f.len() as f64 - 3.0) * lt / k },
    }))
}

fn build_instance(alpha: &str, log: bool) -> Result<(Vec<i64>, MixedVertexInstance)> {
    let a = usage(input::parse_alpha(alpha))?;
    let inst = if log { log_partition_to_instance(&a)? } else { partition_to_instance(&a)? };
    Ok((a, inst))
}

fn cmd_mixedvertex(
    ctx: &Ctx,
    instance: Option<&Path>,
    alpha: Option<&str>,
    log: bool,
    certificate: Option<&Point>,
) -> Result<Value> {
    let (alpha, inst) = match (instance, alpha) {
        (Some(path), _) => {
            let text = usage(std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())))?;
            let j: json::InstanceJson = usage(serde_json::from_str(&text).context("malformed instance JSON"))?;
            (None, usage(json::instance_from_json(&j))?)
        }
        (None, Some(a)) => {
            let (a, i) = build_instance(a, log)?;
            (Some(a), i)
        }
        (None, None) => return Err(usage_msg("give --instance or --alpha")),
    };
    let mut body = json!({ "n": inst.n, "size": inst.size() });
    if let Some(v) = certificate {
        if v.len() != inst.n {
            return Err(usage_msg(format!("certificate has {} coordinates, expected {}", v.len(), inst.n)));
        }
        body["certificate"] = point(v, ctx.bits);
        body["valid"] = verify_certificate(v, &inst).into();
    } else {
        let found = brute_force_mixed_vertex(&inst)?;
        body["mixed_vertex"] = found.as_ref().map(|v| point(v, ctx.bits)).unwrap_or(Value::Null);
        body["has_mixed_vertex"] = found.is_some().into();
    }
    if let Some(a) = alpha {
        body["alpha"] = a.clone().into();
        body["variant"] = if log { "product" } else { "sum" }.into();
        body["balanced_partition"] =
            if log { has_balanced_product_partition(&a) } else { has_balanced_partition(&a) }.into();
    }
    Ok(body)
}

fn cmd_reduce(alpha: &str, log: bool, output: Option<&Path>) -> Result<Option<Value>> {
    let (_, inst) = build_instance(alpha, log)?;
    let text = serde_json::to_string_pretty(&json::instance_to_json(&inst))? + "\n";
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Some(json!({ "n": inst.n, "size": inst.size(), "instance": path.display().to_string() })))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

fn cmd_render(
    ctx: &Ctx,
    polys: &PolyArgs,
    output: &Path,
    amoeba: bool,
    cell: Option<&Point>,
    s: &SampleArgs,
) -> Result<Value> {
    check_sampling(s)?;
    let fs = load(polys, 2)?;
    for f in &fs {
        require_plane(f)?;
    }
    let mut scene = Scene::default();
    for f in &fs {
        scene.curves.push(archtrop_segments(&ArchTropComplex::new(f)?, &ctx.window));
        if amoeba {
            scene.cloud.extend(sample_amoeba_2d_par(f, &ctx.window, s.grid, s.phases, ctx.seed)?.points);
        }
    }
    if let Some(w) = cell {
        if w.len() != 2 {
            return Err(usage_msg("--cell needs a point in the plane"));
        }
        let c =
            if fs.len() == 1 { cell_at(&fs[0], w)? } else { multi_cell_at(&PolynomialSystem::new(fs.clone())?, w)? };
        scene.cell = Some(clip_polygon(&c.closure, &ctx.window));
        scene.point = Some([w[0].to_f64(), w[1].to_f64()]);
    }
    write_file(output, &render(&scene, &ctx.window))?;
    Ok(json!({
        "svg": output.display().to_string(),
        "window": ctx.window_json(),
        "cells_drawn": scene.curves.iter().map(Vec::len).sum::<usize>(),
        "amoeba_points": scene.cloud.len(),
    }))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Archtrop { .. } => "archtrop",
        Command::Subdivision { .. } => "subdivision",
        Command::Cell { .. } => "cell",
        Command::Dist { .. } => "dist",
        Command::Classify { .. } => "classify",
        Command::Startpoints { .. } => "startpoints",
        Command::SampleAmoeba { .. } => "sample-amoeba",
        Command::Hausdorff { .. } => "hausdorff",
        Command::Mixedvertex { .. } => "mixedvertex",
        Command::ReducePartition { .. } => "reduce-partition",
        Command::Render { .. } => "render",
    }
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    let ctx = Ctx { bits: cli.precision_bits, seed: cli.seed, window: cli.window.unwrap_or(Window::square(7.0)) };
    let body = match &cli.command {
        Command::Archtrop { polys, render } => Some(cmd_archtrop(&ctx, polys, render.as_deref())?),
        Command::Subdivision { polys } => Some(cmd_subdivision(polys)?),
        Command::Cell { polys, w, render } => Some(cmd_cell(&ctx, polys, &w.point, render.as_deref())?),
        Command::Dist { polys, w } => Some(cmd_dist(&ctx, polys, &w.point)?),
        Command::Classify { polys, w } => Some(cmd_classify(polys, &w.point)?),
        Command::Startpoints { polys, w, newton_tol, newton_maxit } => {
            Some(cmd_startpoints(&ctx, polys, &w.point, *newton_tol, *newton_maxit)?)
        }
        Command::SampleAmoeba { polys, sampling, csv } => Some(cmd_sample(&ctx, polys, sampling, csv.as_deref())?),
        Command::Hausdorff { polys, sampling, spacing, deform } => {
            Some(cmd_hausdorff(&ctx, polys, sampling, *spacing, *deform)?)
        }
        Command::Mixedvertex { instance, alpha, log, certificate } => {
            Some(cmd_mixedvertex(&ctx, instance.as_deref(), alpha.as_deref(), *log, certificate.as_ref())?)
        }
        Command::ReducePartition { alpha, log, output } => cmd_reduce(alpha, *log, output.as_deref())?,
        Command::Render { polys, output, amoeba, cell, sampling } => {
            Some(cmd_render(&ctx, polys, output, *amoeba, cell.as_ref(), sampling)?)
        }
    };
    let Some(body) = body else { return Ok(()) };
    let text = serde_json::to_string_pretty(&envelope(command_name(&cli.command), body))? + "\n";
    match &cli.json {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
