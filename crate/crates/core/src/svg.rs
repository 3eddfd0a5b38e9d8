//! Deterministic SVG rendering of fundamental polygons and fan maps:
//! alternating region fills, rays from the origin, vertex dots, and optional
//! region labels ordered by the map's action (region i goes to region i+1).

use thiserror::Error;

use crate::conemap::ConeFanMap;
use crate::geom::{mod_inverse, LatticeVector};
use crate::polygon::FundamentalPolygon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("region labels need a map that is periodic and orientation-preserving within {max_n} iterations")]
    LabelsNeedPeriodicity { max_n: u32 },
    #[error("a globally linear aperiodic map has no rays or polygon to draw")]
    NothingToRender,
}

/// Fixed theme: regions alternate these two fills.
const FILL_A: &str = "#fdf0a6";
const FILL_B: &str = "#c9e8b5";
const STROKE: &str = "#222222";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    /// Pixels per lattice unit.
    pub scale: u32,
    /// Blank border in pixels.
    pub margin: u32,
    pub label_regions: bool,
    pub label_vertices: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { scale: 40, margin: 20, label_regions: false, label_vertices: false }
    }
}

/// Integer pixel frame with the mathematical orientation (y up).
struct Frame {
    scale: i64,
    ox: i64,
    oy: i64,
    width: i64,
    height: i64,
}

impl Frame {
    fn new(points: &[LatticeVector], opts: &RenderOptions) -> Frame {
        let xmin = points.iter().map(|p| p.x).min().unwrap_or(0).min(0);
        let xmax = points.iter().map(|p| p.x).max().unwrap_or(0).max(0);
        let ymin = points.iter().map(|p| p.y).min().unwrap_or(0).min(0);
        let ymax = points.iter().map(|p| p.y).max().unwrap_or(0).max(0);
        let scale = opts.scale as i64;
        let margin = opts.margin as i64;
        Frame {
            scale,
            ox: margin - xmin * scale,
            oy: margin + ymax * scale,
            width: (xmax - xmin) * scale + 2 * margin,
            height: (ymax - ymin) * scale + 2 * margin,
        }
    }

    fn px(&self, p: LatticeVector) -> (i64, i64) {
        (self.ox + p.x * self.scale, self.oy - p.y * self.scale)
    }

    /// Pixel position of the rational point (u/3, v/3), for label anchors.
    fn px_thirds(&self, u: i64, v: i64) -> (i64, i64) {
        (self.ox + u * self.scale / 3, self.oy - v * self.scale / 3)
    }
}

fn svg_open(out: &mut String, frame: &Frame) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = frame.width,
        h = frame.height
    ));
}

fn push_dot(out: &mut String, frame: &Frame, p: LatticeVector) {
    let (x, y) = frame.px(p);
    let r = (frame.scale / 10).max(2);
    out.push_str(&format!(
        "  <circle class=\"vertex\" cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"#000000\"/>\n"
    ));
}

fn push_ray(out: &mut String, frame: &Frame, p: LatticeVector) {
    let (ox, oy) = frame.px(LatticeVector::ZERO);
    let (x, y) = frame.px(p);
    out.push_str(&format!(
        "  <line class=\"ray\" x1=\"{ox}\" y1=\"{oy}\" x2=\"{x}\" y2=\"{y}\" stroke=\"{STROKE}\" stroke-width=\"1\"/>\n"
    ));
}

fn font_size(frame: &Frame) -> i64 {
    (frame.scale * 2 / 5).max(10)
}

/// Renders a fundamental polygon. Region j is the triangle 0 e_j e_{j+1};
/// with labels on it is labelled j, matching the action of the polygon's own
/// map, which sends region j to region j+1.
pub fn render_polygon(p: &FundamentalPolygon, opts: &RenderOptions) -> String {
    render_polygon_with_inverse(p, opts, 1)
}

/// Renders a periodic map through its fundamental polygon, labelling regions
/// by the map's own action. Aperiodic fan maps render as a bare fan, but only
/// without labels; reversing or aperiodic maps cannot be labelled.
pub fn render_map(
    map: &ConeFanMap,
    opts: &RenderOptions,
    max_period: u32,
) -> Result<String, RenderError> {
    match FundamentalPolygon::of_map(map, max_period) {
        Ok(p) => {
            let rn = map
                .rotation_number(max_period)
                .expect("a map with a fundamental polygon has a rotation number");
            let inv = mod_inverse(rn.numerator(), rn.denominator())
                .expect("rotation numerator is coprime to the period");
            Ok(render_polygon_with_inverse(&p, opts, inv as i64))
        }
        Err(_) => {
            if opts.label_regions {
                return Err(RenderError::LabelsNeedPeriodicity { max_n: max_period });
            }
            if map.is_linear() {
                return Err(RenderError::NothingToRender);
            }
            Ok(render_fan(map, opts))
        }
    }
}

/// The shared polygon renderer. The map behind the figure advances regions
/// by k each application, so region j carries label j * k^-1 mod n.
fn render_polygon_with_inverse(p: &FundamentalPolygon, opts: &RenderOptions, inv: i64) -> String {
    let verts = p.vertices();
    let n = verts.len() as i64;
    let frame = Frame::new(verts, opts);
    let mut out = String::new();
    svg_open(&mut out, &frame);

    let (ox, oy) = frame.px(LatticeVector::ZERO);
    for j in 0..verts.len() {
        let a = frame.px(verts[j]);
        let b = frame.px(verts[(j + 1) % verts.len()]);
        let fill = if j % 2 == 0 { FILL_A } else { FILL_B };
        out.push_str(&format!(
            "  <path class=\"region\" d=\"M {ox} {oy} L {} {} L {} {} Z\" fill=\"{fill}\" stroke=\"none\"/>\n",
            a.0, a.1, b.0, b.1
        ));
    }

    let mut d = String::new();
    for (i, &v) in verts.iter().enumerate() {
        let (x, y) = frame.px(v);
        d.push_str(if i == 0 { "M " } else { "L " });
        d.push_str(&format!("{x} {y} "));
    }
    d.push('Z');
    out.push_str(&format!(
        "  <path class=\"boundary\" d=\"{d}\" fill=\"none\" stroke=\"{STROKE}\" stroke-width=\"2\"/>\n"
    ));

    for &v in verts {
        push_ray(&mut out, &frame, v);
    }
    for &v in verts {
        push_dot(&mut out, &frame, v);
    }

    if opts.label_regions {
        let fs = font_size(&frame);
        for j in 0..verts.len() {
            let a = verts[j];
            let b = verts[(j + 1) % verts.len()];
            let (x, y) = frame.px_thirds(a.x + b.x, a.y + b.y);
            let label = (j as i64 * inv).rem_euclid(n);
            out.push_str(&format!(
                "  <text class=\"region-label\" x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"{fs}\">{label}</text>\n"
            ));
        }
    }
    if opts.label_vertices {
        let fs = font_size(&frame);
        for &v in verts {
            let (x, y) = frame.px(v);
            out.push_str(&format!(
                "  <text class=\"vertex-label\" x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"{fs}\">{},{}</text>\n",
                y - frame.scale / 5,
                v.x,
                v.y
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Bare fan: rays and their primitive points, for maps without a polygon.
fn render_fan(map: &ConeFanMap, opts: &RenderOptions) -> String {
    let doubled: Vec<LatticeVector> = map.rays().iter().map(|&r| 2 * r).collect();
    let frame = Frame::new(&doubled, opts);
    let mut out = String::new();
    svg_open(&mut out, &frame);
    for &r in &doubled {
        push_ray(&mut out, &frame, r);
    }
    for &r in map.rays() {
        push_dot(&mut out, &frame, r);
    }
    out.push_str("</svg>\n");
    out
}
