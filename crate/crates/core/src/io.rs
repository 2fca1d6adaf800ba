//! Versioned JSON documents for surfaces, balls and triangulations, plus
//! DOT and SVG export.
//!
//! Canonical output has sorted keys, one vertex or facet per line, and a
//! trailing newline, so that parse followed by emit is byte-identical.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::charpoint::characteristic_points;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::poset::{Ball, CpOrder};
use crate::schnyder::PlaneTriangulation;
use crate::surface::OrthoSurface;

pub const SURFACE_FORMAT: &str = "orthosurf/surface";
pub const BALL_FORMAT: &str = "orthosurf/ball";
pub const TRIANGULATION_FORMAT: &str = "orthosurf/triangulation";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    /// With `suspend` set, the listed vertices are inner vertices and the
    /// suspensions are appended on load.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub suspend: bool,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SurfaceDocument {
    pub fn from_surface(s: &OrthoSurface) -> Self {
        SurfaceDocument {
            format: SURFACE_FORMAT.into(),
            version: VERSION,
            dim: s.dim(),
            suspend: false,
            vertices: s.vertices().iter().map(|v| v.coords().to_vec()).collect(),
            name: None,
            note: None,
        }
    }

    pub fn to_surface(&self) -> Result<OrthoSurface> {
        check_header(&self.format, SURFACE_FORMAT, self.version)?;
        for (k, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::Parse(format!(
                    "vertices[{k}]: expected {} coordinates, found {}",
                    self.dim,
                    v.len()
                )));
            }
        }
        let pts: Vec<Point> = self.vertices.iter().cloned().map(Point::new).collect();
        if self.suspend {
            OrthoSurface::make_suspended(pts)
        } else {
            OrthoSurface::new(self.dim, pts)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDocument {
    pub format: String,
    pub version: u32,
    pub n: u32,
    pub dim: usize,
    /// `false` for a polytopal ball whose faces are intersections of facets.
    #[serde(default = "yes", skip_serializing_if = "Clone::clone")]
    pub simplicial: bool,
    pub facets: Vec<Vec<u32>>,
    pub outer: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn yes() -> bool {
    true
}

impl BallDocument {
    pub fn from_ball(b: &Ball, dim: usize) -> Self {
        BallDocument {
            format: BALL_FORMAT.into(),
            version: VERSION,
            n: b.n(),
            dim,
            simplicial: b.is_simplicial(),
            facets: b.facets().to_vec(),
            outer: b.outer().to_vec(),
            name: None,
            note: None,
        }
    }

    pub fn to_ball(&self) -> Result<Ball> {
        check_header(&self.format, BALL_FORMAT, self.version)?;
        if self.simplicial {
            if let Some(k) = self.facets.iter().position(|f| f.len() != self.dim) {
                return Err(Error::Parse(format!(
                    "facets[{k}]: expected {} vertices, found {}",
                    self.dim,
                    self.facets[k].len()
                )));
            }
        }
        if let Some(k) = self.facets.iter().position(|f| f.iter().any(|&v| v == 0 || v > self.n)) {
            return Err(Error::Parse(format!("facets[{k}]: labels must lie in 1..={}", self.n)));
        }
        let b = if self.simplicial {
            Ball::simplicial(self.facets.clone(), self.outer.clone())?
        } else {
            Ball::polytope(self.facets.clone(), self.outer.clone())?
        };
        if b.n() != self.n {
            return Err(Error::Parse(format!("n: facets use {} vertices, not {}", b.n(), self.n)));
        }
        Ok(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationDocument {
    pub format: String,
    pub version: u32,
    pub n: usize,
    /// Inner faces, counterclockwise.
    pub faces: Vec<[usize; 3]>,
    /// Suspensions `a_1, a_2, a_3`, clockwise.
    pub outer: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TriangulationDocument {
    pub fn from_triangulation(g: &PlaneTriangulation) -> Self {
        TriangulationDocument {
            format: TRIANGULATION_FORMAT.into(),
            version: VERSION,
            n: g.n(),
            faces: g.faces().to_vec(),
            outer: g.outer(),
            name: None,
            note: None,
        }
    }

    pub fn to_triangulation(&self) -> Result<PlaneTriangulation> {
        check_header(&self.format, TRIANGULATION_FORMAT, self.version)?;
        PlaneTriangulation::new(self.n, self.faces.clone(), self.outer)
    }
}

fn check_header(format: &str, expected: &str, version: u32) -> Result<()> {
    if format != expected {
        return Err(Error::Parse(format!("format: expected \"{expected}\", found \"{format}\"")));
    }
    if version != VERSION {
        return Err(Error::Parse(format!("version: unsupported version {version}")));
    }
    Ok(())
}

/// Parse any document type; errors carry line and column.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Canonical JSON text of a document.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) => {
            out.push_str("{\n");
            // serde_json's default map keeps keys sorted
            for (k, (key, val)) in m.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(key.clone()));
                write_value(out, val, indent + 1);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", "  ".repeat(indent));
        }
        Value::Array(a) if !is_flat(v) => {
            out.push_str("[\n");
            for (k, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", "  ".repeat(indent));
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// Graphviz text of the cover relation. Nodes carry the rank and the
/// down-set with 1-based vertex ids.
pub fn export_poset_dot(order: &CpOrder) -> String {
    let mut out = String::from("digraph cporder {\n  rankdir=BT;\n  node [shape=box];\n");
    let n = order.poset().len();
    for e in 0..n {
        let label = match order.point(e) {
            None if e == order.bottom() => "bottom".to_string(),
            None => "top".to_string(),
            Some(c) => {
                let ids: Vec<String> = c.downset.iter().map(|v| (v + 1).to_string()).collect();
                format!("{} r{} {{{}}}", c.point, c.rank, ids.join(","))
            }
        };
        let _ = writeln!(out, "  n{e} [label=\"{label}\"];");
    }
    for &(a, b) in order.poset().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// SVG drawing of a 3-dimensional surface projected along `(1,1,1)`:
/// vertices as dots, each edge as its two orthogonal arcs through the join.
pub fn render3d_svg(s: &OrthoSurface) -> Result<String> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.dim(),
        });
    }
    let proj = |p: &Point| {
        let (x, y, z) = (p.get(0) as f64, p.get(1) as f64, p.get(2) as f64);
        ((x - y) * 3f64.sqrt() / 2.0, z - (x + y) / 2.0)
    };
    let cps = characteristic_points(s);
    let mut pts: Vec<(f64, f64)> = s.vertices().iter().map(proj).collect();
    pts.extend(cps.iter().map(|c| proj(&c.point)));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let size = 480.0;
    let k = size / (x1 - x0).max(y1 - y0).max(1.0);
    let at = |p: (f64, f64)| (20.0 + (p.0 - x0) * k, 20.0 + (y1 - p.1) * k);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">",
        w = size + 40.0
    );
    for c in cps.iter().filter(|c| c.rank == 1) {
        let m = at(proj(&c.point));
        for &v in &c.downset {
            let a = at(proj(s.vertex(v)));
            let _ = writeln!(
                out,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
                a.0, a.1, m.0, m.1
            );
        }
    }
    for (id, v) in s.vertices().iter().enumerate() {
        let a = at(proj(v));
        let _ = writeln!(out, "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"red\"/>", a.0, a.1);
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
            a.0 + 6.0,
            a.1 - 6.0,
            id + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
