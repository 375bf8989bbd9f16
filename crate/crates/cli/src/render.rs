//! SVG sections and geodesic projections, OBJ mesh of the `d3` unit sphere.

use std::fmt::Write as _;
use std::path::PathBuf;

use pansu_core::{d3, dinf, synthesize_geodesic, Error, HeisPoint, ProdPoint};

use crate::CliError;

/// Ray bisection stops once the bracket is this narrow.
const RAY_TOL: f64 = 1e-9;
/// Every emitted vertex must satisfy `|d − 1| ≤ VERTEX_TOL`.
pub const VERTEX_TOL: f64 = 1e-6;
pub const MIN_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RenderMetric {
    D3,
    Dinf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RenderMode {
    Section,
    Mesh,
    Geodesic,
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub metric: RenderMetric,
    pub mode: RenderMode,
    pub plane: String,
    pub resolution: usize,
    pub point: Option<HeisPoint>,
    pub out: PathBuf,
}

impl RenderMetric {
    fn axes(self) -> &'static [&'static str] {
        match self {
            RenderMetric::D3 => &["x", "y", "z"],
            RenderMetric::Dinf => &["v", "x", "y", "z"],
        }
    }

    /// Distance from the identity of the point with ambient coordinates `c`.
    fn distance(self, c: &[f64]) -> f64 {
        match self {
            RenderMetric::D3 => d3(HeisPoint::new(c[0], c[1], c[2])),
            RenderMetric::Dinf => dinf(ProdPoint::new(c[0], c[1], c[2], c[3])),
        }
    }
}

/// A coordinate plane through the origin: indices of the two free axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plane {
    pub axes: [usize; 2],
}

fn invalid(msg: String) -> CliError {
    CliError::Core(Error::InvalidParameter(msg))
}

/// Parses `"x,z"` style pairs or the `"y=0"` shorthand.
///
/// For `d3` the shorthand fixes one axis and frees the other two. For `dinf`
/// the ambient space is 4-dimensional, so `x=0` and `y=0` both mean the
/// `(v,z)` plane and `z=0` means the `(v,x)` plane.
pub fn parse_plane(metric: RenderMetric, spec: &str) -> Result<Plane, CliError> {
    let names = metric.axes();
    let index = |name: &str| {
        names
            .iter()
            .position(|a| *a == name.trim())
            .ok_or_else(|| invalid(format!("axis `{}` is not one of {names:?}", name.trim())))
    };
    let spec = spec.trim().to_ascii_lowercase();
    if let Some((axis, value)) = spec.split_once('=') {
        if value.trim().parse::<f64>().ok() != Some(0.0) {
            return Err(invalid(format!("plane `{spec}` must pass through the origin")));
        }
        let fixed = index(axis)?;
        let free: Vec<usize> = match metric {
            RenderMetric::D3 => (0..3).filter(|&i| i != fixed).collect(),
            RenderMetric::Dinf => match names[fixed] {
                "x" | "y" => vec![0, 3],
                "z" => vec![0, 1],
                _ => return Err(invalid(format!("plane `{spec}` is ambiguous in 4 dimensions; name two axes"))),
            },
        };
        return Ok(Plane { axes: [free[0], free[1]] });
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(invalid(format!("plane `{spec}`: expected `a,b` or `axis=0`")));
    }
    let (a, b) = (index(parts[0])?, index(parts[1])?);
    if a == b {
        return Err(invalid(format!("plane `{spec}` repeats an axis")));
    }
    Ok(Plane { axes: [a, b] })
}

/// Radius along the Euclidean ray `dir` at which the distance crosses 1.
fn unit_crossing<F: Fn(&[f64]) -> f64>(dist: F, dir: &[f64]) -> Result<f64, CliError> {
    let at = |r: f64| dist(&dir.iter().map(|c| c * r).collect::<Vec<_>>());
    let mut hi = 1.0;
    let mut guard = 0;
    while at(hi) < 1.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(CliError::Core(Error::Internal(format!("ray {dir:?} never leaves the unit ball"))));
        }
    }
    let mut lo = 0.0;
    while hi - lo > RAY_TOL {
        let mid = 0.5 * (lo + hi);
        if at(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let d = at(r);
    if (d - 1.0).abs() > VERTEX_TOL {
        return Err(CliError::Core(Error::Internal(format!("ray {dir:?}: |d − 1| = {:.3e}", (d - 1.0).abs()))));
    }
    Ok(r)
}

/// Polyline of the unit sphere's slice by `plane`, in plane coordinates.
///
/// Rays are spread in a rescaled frame so that the thin vertical extent of
/// the ball still gets its share of vertices.
pub fn section_polyline(metric: RenderMetric, plane: Plane, resolution: usize) -> Result<Vec<(f64, f64)>, CliError> {
    let dim = metric.axes().len();
    let scale = |axis: usize| if metric.axes()[axis] == "z" { 0.125 } else { 1.0 };
    let (sa, sb) = (scale(plane.axes[0]), scale(plane.axes[1]));
    let mut out = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let theta = std::f64::consts::TAU * k as f64 / resolution as f64;
        let (da, db) = (sa * theta.cos(), sb * theta.sin());
        let mut dir = vec![0.0; dim];
        dir[plane.axes[0]] = da;
        dir[plane.axes[1]] = db;
        let r = unit_crossing(|c| metric.distance(c), &dir)?;
        out.push((da * r, db * r));
    }
    Ok(out)
}

fn bounds(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    points.iter().fold((f64::MAX, f64::MIN, f64::MAX, f64::MIN), |(x0, x1, y0, y1), &(x, y)| {
        (x0.min(x), x1.max(x), y0.min(y), y1.max(y))
    })
}

/// SVG 1.1 document holding `points` in their own coordinates; each axis is
/// stretched independently to fill the canvas.
pub fn polyline_svg(points: &[(f64, f64)], labels: [&str; 2], title: &str, closed: bool) -> String {
    const SIZE: f64 = 512.0;
    const MARGIN: f64 = 32.0;
    let (x0, x1, y0, y1) = bounds(points);
    let span = |a: f64, b: f64| if b - a > 1e-12 { b - a } else { 1.0 };
    let (sx, sy) = ((SIZE - 2.0 * MARGIN) / span(x0, x1), (SIZE - 2.0 * MARGIN) / span(y0, y1));
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "  <title>{title}</title>");
    let _ = writeln!(
        s,
        r#"  <g transform="translate({} {}) scale({} {}) translate({} {})">"#,
        SIZE / 2.0,
        SIZE / 2.0,
        fmt(sx),
        fmt(-sy),
        fmt(-cx),
        fmt(-cy)
    );
    let _ = writeln!(
        s,
        r##"    <line x1="{}" y1="0" x2="{}" y2="0" stroke="#999" stroke-width="0.5" vector-effect="non-scaling-stroke"/>"##,
        fmt(x0),
        fmt(x1)
    );
    let _ = writeln!(
        s,
        r##"    <line x1="0" y1="{}" x2="0" y2="{}" stroke="#999" stroke-width="0.5" vector-effect="non-scaling-stroke"/>"##,
        fmt(y0),
        fmt(y1)
    );
    let mut coords: Vec<String> = points.iter().map(|&(x, y)| format!("{},{}", fmt(x), fmt(y))).collect();
    if closed && !coords.is_empty() {
        coords.push(coords[0].clone());
    }
    let _ = writeln!(
        s,
        r##"    <polyline points="{}" fill="none" stroke="#000" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##,
        coords.join(" ")
    );
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(
        s,
        r#"  <text x="{}" y="{}" font-size="14" text-anchor="end">{} ∈ [{}, {}]</text>"#,
        SIZE - 4.0,
        SIZE - 6.0,
        labels[0],
        fmt6(x0),
        fmt6(x1)
    );
    let _ = writeln!(s, r#"  <text x="4" y="16" font-size="14">{} ∈ [{}, {}]</text>"#, labels[1], fmt6(y0), fmt6(y1));
    s.push_str("</svg>\n");
    s
}

/// Shortest round-trip decimal, so parsed vertices are the computed ones.
fn fmt(v: f64) -> String {
    if v == 0.0 { "0".into() } else { format!("{v}") }
}

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

/// OBJ triangulation of the `d3` unit sphere: `resolution` longitudes and
/// `resolution / 2` latitude bands, one vertex at each pole.
pub fn d3_sphere_obj(resolution: usize) -> Result<String, CliError> {
    let cols = resolution;
    let rows = resolution / 2;
    let mut verts: Vec<[f64; 3]> = Vec::with_capacity(cols * (rows - 1) + 2);
    let radial = |dir: [f64; 3]| -> Result<[f64; 3], CliError> {
        let r = unit_crossing(|c| d3(HeisPoint::new(c[0], c[1], c[2])), &dir)?;
        Ok([dir[0] * r, dir[1] * r, dir[2] * r])
    };
    verts.push(radial([0.0, 0.0, 0.125])?);
    for i in 1..rows {
        let phi = std::f64::consts::PI * i as f64 / rows as f64;
        for j in 0..cols {
            let theta = std::f64::consts::TAU * j as f64 / cols as f64;
            verts.push(radial([phi.sin() * theta.cos(), phi.sin() * theta.sin(), 0.125 * phi.cos()])?);
        }
    }
    verts.push(radial([0.0, 0.0, -0.125])?);

    // 1-based OBJ indices
    let ring = |i: usize, j: usize| 2 + (i - 1) * cols + (j % cols);
    let south = verts.len();
    let mut s = format!("# d3 unit sphere: {} vertices\n", verts.len());
    for v in &verts {
        let _ = writeln!(s, "v {} {} {}", fmt(v[0]), fmt(v[1]), fmt(v[2]));
    }
    for j in 0..cols {
        let _ = writeln!(s, "f 1 {} {}", ring(1, j), ring(1, j + 1));
    }
    for i in 1..rows - 1 {
        for j in 0..cols {
            let (a, b, c, d) = (ring(i, j), ring(i, j + 1), ring(i + 1, j), ring(i + 1, j + 1));
            let _ = writeln!(s, "f {a} {c} {d}");
            let _ = writeln!(s, "f {a} {d} {b}");
        }
    }
    for j in 0..cols {
        let _ = writeln!(s, "f {} {} {south}", ring(rows - 1, j), ring(rows - 1, j + 1));
    }
    Ok(s)
}

/// Planar projection of the synthesized geodesic to `p`.
pub fn geodesic_svg(p: HeisPoint) -> Result<String, CliError> {
    let plan = synthesize_geodesic(p)?;
    let verts = plan.planar_vertices();
    let title = format!("geodesic to ({}, {}, {}), length {}", fmt(p.x), fmt(p.y), fmt(p.z), fmt(plan.length));
    Ok(polyline_svg(&verts, ["x", "y"], &title, false))
}

/// Produces the artifact text for `spec`.
pub fn render(spec: &RenderSpec) -> Result<String, CliError> {
    if spec.resolution < MIN_RESOLUTION {
        return Err(invalid(format!("resolution must be at least {MIN_RESOLUTION}, got {}", spec.resolution)));
    }
    match spec.mode {
        RenderMode::Section => {
            let plane = parse_plane(spec.metric, &spec.plane)?;
            let names = spec.metric.axes();
            let labels = [names[plane.axes[0]], names[plane.axes[1]]];
            let pts = section_polyline(spec.metric, plane, spec.resolution)?;
            let metric = match spec.metric {
                RenderMetric::D3 => "d3",
                RenderMetric::Dinf => "dinf",
            };
            let title = format!("{metric} unit sphere, ({},{}) plane", labels[0], labels[1]);
            Ok(polyline_svg(&pts, labels, &title, true))
        }
        RenderMode::Mesh => match spec.metric {
            RenderMetric::D3 => d3_sphere_obj(spec.resolution),
            RenderMetric::Dinf => Err(invalid("mesh mode draws the 3-dimensional d3 sphere only".into())),
        },
        RenderMode::Geodesic => {
            let p = spec.point.ok_or_else(|| invalid("geodesic mode needs --point".into()))?;
            geodesic_svg(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_planes() {
        assert_eq!(parse_plane(RenderMetric::D3, "y=0").unwrap().axes, [0, 2]);
        assert_eq!(parse_plane(RenderMetric::D3, "z = 0").unwrap().axes, [0, 1]);
        assert_eq!(parse_plane(RenderMetric::Dinf, "y=0").unwrap().axes, [0, 3]);
        assert_eq!(parse_plane(RenderMetric::Dinf, "x,y").unwrap().axes, [1, 2]);
        assert!(parse_plane(RenderMetric::D3, "v,z").is_err());
        assert!(parse_plane(RenderMetric::D3, "y=1").is_err());
        assert!(parse_plane(RenderMetric::D3, "x,x").is_err());
        assert!(parse_plane(RenderMetric::Dinf, "v=0").is_err());
    }

    #[test]
    fn horizontal_section_is_the_l1_square() {
        let plane = parse_plane(RenderMetric::D3, "z=0").unwrap();
        let pts = section_polyline(RenderMetric::D3, plane, 128).unwrap();
        for (x, y) in pts {
            assert!((x.abs() + y.abs() - 1.0).abs() < 1e-8, "({x}, {y})");
        }
    }

    #[test]
    fn dinf_section_has_cusps_on_the_v_axis() {
        let plane = parse_plane(RenderMetric::Dinf, "y=0").unwrap();
        let pts = section_polyline(RenderMetric::Dinf, plane, 256).unwrap();
        // θ = 0 lands on (1, 0); neighbours hug the axis quadratically
        assert!((pts[0].0 - 1.0).abs() < 1e-8 && pts[0].1.abs() < 1e-12);
        let (v, z) = pts[1];
        assert!((z - (1.0 - v).powi(2) / 16.0).abs() < 1e-8);
        // slope towards the pole vanishes
        let slope = |(v, z): (f64, f64)| z / (1.0 - v);
        assert!(slope(pts[1]) < slope(pts[2]) && slope(pts[2]) < slope(pts[3]));
    }

    #[test]
    fn mesh_vertices_lie_on_the_sphere() {
        let obj = d3_sphere_obj(64).unwrap();
        let mut faces = 0;
        for line in obj.lines() {
            if let Some(rest) = line.strip_prefix("v ") {
                let c: Vec<f64> = rest.split(' ').map(|t| t.parse().unwrap()).collect();
                assert!((d3(HeisPoint::new(c[0], c[1], c[2])) - 1.0).abs() <= VERTEX_TOL);
            } else if line.starts_with("f ") {
                faces += 1;
            }
        }
        assert_eq!(faces, 2 * 64 * (32 - 1));
    }
}
