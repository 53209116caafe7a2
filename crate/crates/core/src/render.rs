//! Figure output: parallel axes, dual-region scatter, boundary conic trace,
//! and classic polygonal-line point representations, all as deterministic
//! SVG text.

use serde::Serialize;

use crate::boundary::BoundaryCurve;
use crate::error::{Error, Result};
use crate::parse::AxisSpacing;
use crate::poly::Polynomial;
use crate::sample::CloudReport;

/// Polygonal-line representation of a point: one vertex per axis.
pub fn polyline_image(point: &[f64], spacing: &AxisSpacing) -> Vec<(f64, f64)> {
    let d = spacing.as_f64();
    assert_eq!(point.len(), d.len(), "spacing length mismatch");
    d.into_iter().zip(point.iter().copied()).collect()
}

/// Axis-aligned data window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        if !(x_min < x_max && y_min < y_max) {
            return Err(Error::InvalidConfig("degenerate viewport".into()));
        }
        Ok(Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

/// March a square grid over the viewport and trace the zero set of a
/// two-variable polynomial. Returns polyline strips in deterministic order.
pub fn conic_trace(curve: &Polynomial, viewport: &Viewport, steps: usize) -> Vec<Vec<(f64, f64)>> {
    assert!(curve.nvars() == 2, "conic_trace expects a curve in x, y");
    assert!(steps >= 2, "grid must have at least 2 steps");
    let nx = steps;
    let ny = steps;
    let dx = (viewport.x_max - viewport.x_min) / nx as f64;
    let dy = (viewport.y_max - viewport.y_min) / ny as f64;
    let xs: Vec<f64> = (0..=nx).map(|i| viewport.x_min + i as f64 * dx).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| viewport.y_min + j as f64 * dy).collect();
    let mut values = vec![vec![0.0f64; ny + 1]; nx + 1];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            values[i][j] = curve.evaluate_f64(&[x, y]);
        }
    }
    // Each segment endpoint sits on a cell edge, linearly interpolated.
    let interp = |x0: f64, y0: f64, v0: f64, x1: f64, y1: f64, v1: f64| -> (f64, f64) {
        let t = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
        (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    };
    let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let (x0, x1) = (xs[i], xs[i + 1]);
            let (y0, y1) = (ys[j], ys[j + 1]);
            let v00 = values[i][j];
            let v10 = values[i + 1][j];
            let v01 = values[i][j + 1];
            let v11 = values[i + 1][j + 1];
            let mut case = 0u8;
            if v00 > 0.0 {
                case |= 1;
            }
            if v10 > 0.0 {
                case |= 2;
            }
            if v11 > 0.0 {
                case |= 4;
            }
            if v01 > 0.0 {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = || interp(x0, y0, v00, x1, y0, v10);
            let right = || interp(x1, y0, v10, x1, y1, v11);
            let top = || interp(x0, y1, v01, x1, y1, v11);
            let left = || interp(x0, y0, v00, x0, y1, v01);
            let mut push = |a: (f64, f64), b: (f64, f64)| segments.push((a, b));
            match case {
                1 | 14 => push(left(), bottom()),
                2 | 13 => push(bottom(), right()),
                3 | 12 => push(left(), right()),
                4 | 11 => push(right(), top()),
                6 | 9 => push(bottom(), top()),
                7 | 8 => push(left(), top()),
                5 | 10 => {
                    // Saddle cell: disambiguate with the center sample.
                    let cx = 0.5 * (x0 + x1);
                    let cy = 0.5 * (y0 + y1);
                    let center = curve.evaluate_f64(&[cx, cy]);
                    let same_as_case5 = (center > 0.0) == (case == 5);
                    if same_as_case5 {
                        push(left(), bottom());
                        push(right(), top());
                    } else {
                        push(left(), top());
                        push(bottom(), right());
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    chain_segments(segments, dx.min(dy))
}

/// Join segments that share endpoints into polyline strips; order is fixed by
/// construction (first-come seeds, greedy extension both ways).
fn chain_segments(mut segments: Vec<((f64, f64), (f64, f64))>, cell: f64) -> Vec<Vec<(f64, f64)>> {
    let tol = cell * 1e-9;
    let close = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol;
    let mut strips = Vec::new();
    while let Some((a, b)) = segments.first().copied() {
        segments.remove(0);
        let mut strip = vec![a, b];
        loop {
            let tail = *strip.last().expect("nonempty");
            let next = segments
                .iter()
                .position(|&(s, e)| close(s, tail) || close(e, tail));
            match next {
                Some(k) => {
                    let (s, e) = segments.remove(k);
                    strip.push(if close(s, tail) { e } else { s });
                }
                None => break,
            }
        }
        loop {
            let head = strip[0];
            let prev = segments
                .iter()
                .position(|&(s, e)| close(s, head) || close(e, head));
            match prev {
                Some(k) => {
                    let (s, e) = segments.remove(k);
                    strip.insert(0, if close(s, head) { e } else { s });
                }
                None => break,
            }
        }
        strips.push(strip);
    }
    strips
}

/// Everything a figure can contain.
#[derive(Debug, Clone)]
pub struct Scene {
    pub spacing: AxisSpacing,
    /// Vertical range drawn for the axes.
    pub axis_range: (f64, f64),
    pub cloud: Option<CloudReport>,
    pub curve: Option<BoundaryCurve>,
    /// Points drawn as classic polygonal lines for comparison.
    pub polylines: Vec<Vec<f64>>,
    pub viewport: Viewport,
    /// Marching-squares resolution for the conic trace.
    pub trace_steps: usize,
}

impl Scene {
    pub fn new(spacing: AxisSpacing, viewport: Viewport) -> Self {
        Scene {
            spacing,
            axis_range: (viewport.y_min, viewport.y_max),
            cloud: None,
            curve: None,
            polylines: Vec::new(),
            viewport,
            trace_steps: 512,
        }
    }

    fn has_content(&self) -> bool {
        true // axes alone are a valid scene
    }
}

/// A viewport that covers the finite duals of a cloud, padded by 10% and
/// clamped to `[-limit, limit]`.
pub fn viewport_for_cloud(report: &CloudReport, limit: f64) -> Viewport {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in &report.samples {
        if s.is_ideal {
            continue;
        }
        if let Some((x, y)) = s.dual.affine() {
            if x.abs() <= limit && y.abs() <= limit {
                x_min = x_min.min(x);
                x_max = x_max.max(x);
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
        }
    }
    if !(x_min < x_max && y_min < y_max) {
        return Viewport {
            x_min: -4.0,
            x_max: 4.0,
            y_min: -4.0,
            y_max: 4.0,
        };
    }
    let pad_x = 0.1 * (x_max - x_min).max(1e-3);
    let pad_y = 0.1 * (y_max - y_min).max(1e-3);
    Viewport {
        x_min: x_min - pad_x,
        x_max: x_max + pad_x,
        y_min: y_min - pad_y,
        y_max: y_max + pad_y,
    }
}

const PAGE_W: f64 = 640.0;
const PAGE_H: f64 = 480.0;
const MARGIN: f64 = 40.0;

struct PageMap {
    vp: Viewport,
}

impl PageMap {
    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.vp.x_min) / (self.vp.x_max - self.vp.x_min) * (PAGE_W - 2.0 * MARGIN)
    }

    fn y(&self, y: f64) -> f64 {
        // SVG y grows downward.
        PAGE_H
            - MARGIN
            - (y - self.vp.y_min) / (self.vp.y_max - self.vp.y_min) * (PAGE_H - 2.0 * MARGIN)
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    // Trim trailing zeros but keep at least one decimal digit off.
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// Render a scene as a standalone SVG document. Pure function of its input:
/// identical scenes give byte-identical text.
pub fn render_svg(scene: &Scene) -> String {
    assert!(scene.has_content());
    let map = PageMap { vp: scene.viewport };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{PAGE_W}\" height=\"{PAGE_H}\" viewBox=\"0 0 {PAGE_W} {PAGE_H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Parallel axes: vertical lines at the spacing positions, labeled X1..Xn.
    for (i, d) in scene.spacing.as_f64().iter().enumerate() {
        if *d < scene.viewport.x_min || *d > scene.viewport.x_max {
            continue;
        }
        let x = map.x(*d);
        let y0 = map.y(scene.axis_range.0);
        let y1 = map.y(scene.axis_range.1);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            fmt(x),
            fmt(y0),
            fmt(x),
            fmt(y1)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">X{}</text>\n",
            fmt(x),
            fmt(y1 - 6.0),
            i + 1
        ));
    }

    // Classic polygonal lines.
    for point in &scene.polylines {
        let verts = polyline_image(point, &scene.spacing);
        let path: Vec<String> = verts
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| {
                format!(
                    "{}{} {}",
                    if k == 0 { "M" } else { "L" },
                    fmt(map.x(x)),
                    fmt(map.y(y))
                )
            })
            .collect();
        svg.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\"/>\n",
            path.join(" ")
        ));
    }

    // Dual cloud: interior dots gray, boundary hits red, ideal duals drawn as
    // direction arrows pinned to the viewport edge.
    if let Some(cloud) = &scene.cloud {
        for s in &cloud.samples {
            if s.is_ideal {
                svg.push_str(&ideal_arrow(&map, &scene.viewport, s.dual.eta, s.dual.xi));
                continue;
            }
            let Some((x, y)) = s.dual.affine() else {
                continue;
            };
            if !scene.viewport.contains(x, y) {
                continue; // explicit clip
            }
            let (r, fill) = if s.is_boundary {
                (2.4, "crimson")
            } else {
                (1.6, "dimgray")
            };
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{fill}\"/>\n",
                fmt(map.x(x)),
                fmt(map.y(y))
            ));
        }
    }

    // Boundary conic as marching-squares strips.
    if let Some(curve) = &scene.curve {
        for strip in conic_trace(curve.conic(), &scene.viewport, scene.trace_steps) {
            let path: Vec<String> = strip
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| {
                    format!(
                        "{}{} {}",
                        if k == 0 { "M" } else { "L" },
                        fmt(map.x(x)),
                        fmt(map.y(y))
                    )
                })
                .collect();
            svg.push_str(&format!(
                "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
    }

    svg.push_str("</svg>\n");
    svg
}

/// Arrow on the viewport edge pointing along the ideal direction
/// `(eta : xi)`.
fn ideal_arrow(map: &PageMap, vp: &Viewport, eta: f64, xi: f64) -> String {
    let len = (eta * eta + xi * xi).sqrt();
    if len == 0.0 {
        return String::new();
    }
    let (ux, uy) = (eta / len, xi / len);
    // Walk from the viewport center to the edge along the direction.
    let cx = 0.5 * (vp.x_min + vp.x_max);
    let cy = 0.5 * (vp.y_min + vp.y_max);
    let mut t = f64::INFINITY;
    if ux > 0.0 {
        t = t.min((vp.x_max - cx) / ux);
    } else if ux < 0.0 {
        t = t.min((vp.x_min - cx) / ux);
    }
    if uy > 0.0 {
        t = t.min((vp.y_max - cy) / uy);
    } else if uy < 0.0 {
        t = t.min((vp.y_min - cy) / uy);
    }
    if !t.is_finite() {
        return String::new();
    }
    let (ex, ey) = (cx + t * ux, cy + t * uy);
    let (bx, by) = (cx + 0.92 * t * ux, cy + 0.92 * t * uy);
    // Shaft plus a small triangular head at the edge, in page coordinates.
    let (px0, py0) = (map.x(bx), map.y(by));
    let (px1, py1) = (map.x(ex), map.y(ey));
    let (dx, dy) = (px1 - px0, py1 - py0);
    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
    let (hx, hy) = (dx / len, dy / len);
    let (nx, ny) = (-hy, hx);
    let head = 5.0;
    format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"darkorange\" stroke-width=\"1.2\"/>\n<polygon points=\"{},{} {},{} {},{}\" fill=\"darkorange\"/>\n",
        fmt(px0),
        fmt(py0),
        fmt(px1),
        fmt(py1),
        fmt(px1),
        fmt(py1),
        fmt(px1 - head * hx + 0.5 * head * nx),
        fmt(py1 - head * hy + 0.5 * head * ny),
        fmt(px1 - head * hx - 0.5 * head * nx),
        fmt(py1 - head * hy - 0.5 * head * ny)
    )
}

/// JSON scene dump for debugging.
#[derive(Debug, Serialize)]
pub struct SceneDump {
    pub spacing: Vec<String>,
    pub viewport: Viewport,
    pub samples: usize,
    pub boundary_hits: usize,
    pub curve: Option<String>,
    pub polylines: usize,
}

pub fn scene_dump(scene: &Scene) -> SceneDump {
    SceneDump {
        spacing: scene.spacing.texts(),
        viewport: scene.viewport,
        samples: scene.cloud.as_ref().map(|c| c.samples.len()).unwrap_or(0),
        boundary_hits: scene
            .cloud
            .as_ref()
            .map(|c| c.boundary_hits.len())
            .unwrap_or(0),
        curve: scene.curve.as_ref().map(|c| c.boundary_text()),
        polylines: scene.polylines.len(),
    }
}
