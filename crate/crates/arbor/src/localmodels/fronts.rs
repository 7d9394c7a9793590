//! Planar scenes of model fronts with coorientation arrows, exported as SVG
//! or JSON polylines.

use super::LocalModelError;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontModel {
    A2,
    A2TimesInterval,
    A3,
    Ridge1,
    Ridge2,
}

impl FrontModel {
    pub fn parse(name: &str) -> Result<Self, LocalModelError> {
        match name.to_ascii_lowercase().as_str() {
            "a2" => Ok(FrontModel::A2),
            "a2_times_interval" | "a2xi" => Ok(FrontModel::A2TimesInterval),
            "a3" => Ok(FrontModel::A3),
            "ridge1" => Ok(FrontModel::Ridge1),
            "ridge2" => Ok(FrontModel::Ridge2),
            _ => Err(LocalModelError::UnknownModel(name.to_string())),
        }
    }

    /// Number of independent coorientation flips.
    pub fn orientation_bits(self) -> u32 {
        match self {
            FrontModel::A2 | FrontModel::A2TimesInterval => 1,
            FrontModel::A3 => 2,
            FrontModel::Ridge1 | FrontModel::Ridge2 => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    ZeroSection,
    Front,
    Ridge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub label: String,
    pub kind: PieceKind,
    pub points: Vec<[f64; 2]>,
}

/// A coorientation arrow based on a front piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arrow {
    pub piece: String,
    pub base: [f64; 2],
    pub direction: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub text: String,
    pub at: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontScene {
    pub schema_version: u32,
    pub model: FrontModel,
    pub orientation: u32,
    /// Axis names for the two drawing coordinates.
    pub axes: [String; 2],
    pub pieces: Vec<Piece>,
    pub arrows: Vec<Arrow>,
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontOptions {
    /// Points per parametric piece.
    pub samples: usize,
    /// Side of the square SVG viewport in pixels.
    pub size: f64,
}

impl Default for FrontOptions {
    fn default() -> Self {
        FrontOptions { samples: 65, size: 400.0 }
    }
}

/// Drawing window is `[-EXTENT, EXTENT]²`.
const EXTENT: f64 = 1.0;
const ARROW_LEN: f64 = 0.25;

fn segment(a: [f64; 2], b: [f64; 2], samples: usize) -> Vec<[f64; 2]> {
    let k = samples.max(2) - 1;
    (0..=k)
        .map(|i| {
            let t = i as f64 / k as f64;
            [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
        })
        .collect()
}

fn curve(samples: usize, t0: f64, t1: f64, f: impl Fn(f64) -> [f64; 2]) -> Vec<[f64; 2]> {
    let k = samples.max(2) - 1;
    (0..=k).map(|i| f(t0 + (t1 - t0) * i as f64 / k as f64)).collect()
}

fn unit(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

fn flip(v: [f64; 2], flipped: bool) -> [f64; 2] {
    if flipped { [-v[0], -v[1]] } else { v }
}

pub fn render_front(model: FrontModel, orientation: u32, opts: &FrontOptions) -> Result<FrontScene, LocalModelError> {
    let bits = model.orientation_bits();
    if orientation >> bits != 0 {
        return Err(LocalModelError::BadOrientation { orientation, classes: 1 << bits });
    }
    let s = opts.samples;
    let bit = |i: u32| orientation >> i & 1 == 1;
    let mut pieces = Vec::new();
    let mut arrows = Vec::new();
    let mut labels = Vec::new();
    let axes;
    match model {
        FrontModel::A2 => {
            // Base ℝ¹ drawn on the horizontal axis; the front is the point 0.
            axes = ["x0".to_string(), String::new()];
            pieces.push(Piece { label: "zero section".into(), kind: PieceKind::ZeroSection, points: segment([-EXTENT, 0.0], [EXTENT, 0.0], s) });
            pieces.push(Piece { label: "front".into(), kind: PieceKind::Front, points: vec![[0.0, 0.0]] });
            arrows.push(Arrow { piece: "front".into(), base: [0.0, 0.0], direction: flip([ARROW_LEN, 0.0], bit(0)) });
            labels.push(Label { text: "x0 = 0".into(), at: [0.05, 0.1] });
        }
        FrontModel::A2TimesInterval => {
            axes = ["x0".to_string(), "x1".to_string()];
            pieces.push(Piece { label: "front".into(), kind: PieceKind::Front, points: segment([0.0, -EXTENT], [0.0, EXTENT], s) });
            for y in [-0.5, 0.0, 0.5] {
                arrows.push(Arrow { piece: "front".into(), base: [0.0, y], direction: flip([ARROW_LEN, 0.0], bit(0)) });
            }
            labels.push(Label { text: "x0 = 0".into(), at: [0.05, 0.9] });
        }
        FrontModel::A3 => {
            axes = ["x0".to_string(), "x1".to_string()];
            pieces.push(Piece { label: "hyperplane".into(), kind: PieceKind::Front, points: segment([0.0, -EXTENT], [0.0, EXTENT], s) });
            // x0 = x1², x1 ∈ [0, 1]; drawn with x0 horizontal.
            pieces.push(Piece { label: "cusp".into(), kind: PieceKind::Front, points: curve(s, 0.0, EXTENT, |t| [t * t, t]) });
            for y in [-0.5, 0.5] {
                arrows.push(Arrow { piece: "hyperplane".into(), base: [0.0, y], direction: flip([ARROW_LEN, 0.0], bit(0)) });
            }
            for t in [0.4_f64, 0.8] {
                // Conormal to x0 − x1² = 0 is (1, −2x1).
                let d = unit([1.0, -2.0 * t]);
                arrows.push(Arrow {
                    piece: "cusp".into(),
                    base: [t * t, t],
                    direction: flip([ARROW_LEN * d[0], ARROW_LEN * d[1]], bit(1)),
                });
            }
            labels.push(Label { text: "x0 = x1², x1 ≥ 0".into(), at: [0.45, 0.9] });
        }
        FrontModel::Ridge1 => {
            // The corner p = |q| in the (q, p) plane.
            axes = ["q".to_string(), "p".to_string()];
            pieces.push(Piece { label: "corner".into(), kind: PieceKind::Ridge, points: curve(s, -EXTENT, EXTENT, |t| [t, t.abs()]) });
            labels.push(Label { text: "p = |q|".into(), at: [0.1, 0.9] });
        }
        FrontModel::Ridge2 => {
            // Base (q1, q2): the ridge locus is the union of the axes, splitting
            // the product of two corners into four smooth sheets.
            axes = ["q1".to_string(), "q2".to_string()];
            pieces.push(Piece { label: "ridge q1 = 0".into(), kind: PieceKind::Ridge, points: segment([0.0, -EXTENT], [0.0, EXTENT], s) });
            pieces.push(Piece { label: "ridge q2 = 0".into(), kind: PieceKind::Ridge, points: segment([-EXTENT, 0.0], [EXTENT, 0.0], s) });
            for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
                let text = format!("p = ({}q1, {}q2)", if sx > 0.0 { "" } else { "-" }, if sy > 0.0 { "" } else { "-" });
                labels.push(Label { text, at: [0.5 * sx - 0.2, 0.5 * sy] });
            }
        }
    }
    Ok(FrontScene { schema_version: 1, model, orientation, axes, pieces, arrows, labels })
}

impl FrontScene {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// SVG 1.1 document; the scene window `[-1, 1]²` fills the viewport
    /// with a margin.
    pub fn to_svg(&self, opts: &FrontOptions) -> String {
        let size = opts.size;
        let half = size / 2.0;
        let scale = half * 0.8 / EXTENT;
        let px = |p: [f64; 2]| (half + scale * p[0], half - scale * p[1]);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            out,
            r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="crimson"/></marker></defs>"#
        );
        for piece in &self.pieces {
            let (stroke, width) = match piece.kind {
                PieceKind::ZeroSection => ("gray", 1.5),
                PieceKind::Front => ("black", 2.0),
                PieceKind::Ridge => ("navy", 2.0),
            };
            if piece.points.len() == 1 {
                let (x, y) = px(piece.points[0]);
                let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{stroke}"/>"#);
                continue;
            }
            let pts: Vec<String> = piece.points.iter().map(|p| { let (x, y) = px(*p); format!("{x:.2},{y:.2}") }).collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{stroke}" stroke-width="{width}" points="{}"/>"#,
                pts.join(" ")
            );
        }
        for a in &self.arrows {
            let (x1, y1) = px(a.base);
            let (x2, y2) = px([a.base[0] + a.direction[0], a.base[1] + a.direction[1]]);
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="crimson" stroke-width="1.5" marker-end="url(#head)"/>"#
            );
        }
        for l in &self.labels {
            let (x, y) = px(l.at);
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-family="serif" font-size="12">{}</text>"#, escape(&l.text));
        }
        for (i, axis) in self.axes.iter().enumerate().filter(|(_, a)| !a.is_empty()) {
            let (x, y) = if i == 0 { (size - 24.0, half - 6.0) } else { (half + 6.0, 14.0) };
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-family="serif" font-size="12" fill="gray">{}</text>"#, escape(axis));
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
