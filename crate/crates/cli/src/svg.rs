//! Static SVG 1.1 figure: spectrum polylines, Juddian point diamonds and
//! optional baselines `E = N − λ(g)²`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::format::{PointRecord, SpectrumRecord};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;
const BASELINE_SAMPLES: usize = 200;
const DIAMOND: f64 = 5.0;
const TICKS: usize = 5;

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub baselines: bool,
}

struct Frame {
    g_lo: f64,
    g_hi: f64,
    e_lo: f64,
    e_hi: f64,
}

impl Frame {
    fn px(&self, g: f64) -> f64 {
        LEFT + (g - self.g_lo) / (self.g_hi - self.g_lo) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, e: f64) -> f64 {
        HEIGHT - BOTTOM - (e - self.e_lo) / (self.e_hi - self.e_lo) * (HEIGHT - TOP - BOTTOM)
    }
}

fn range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

fn widen(lo: f64, hi: f64, pad_frac: f64) -> (f64, f64) {
    if hi > lo {
        let pad = (hi - lo) * pad_frac;
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// Mode frequency implied by the points (`λ = 2g/ω`), 1 if none carry it.
fn omega_from_points(points: &[PointRecord]) -> f64 {
    points
        .iter()
        .find(|p| p.lambda > 0.0 && p.g > 0.0)
        .map(|p| 2.0 * p.g / p.lambda)
        .unwrap_or(1.0)
}

pub fn render(spectrum: &[SpectrumRecord], points: &[PointRecord], opts: &PlotOptions) -> String {
    let (g_lo, g_hi) = range(spectrum.iter().map(|r| r.g).chain(points.iter().map(|p| p.g)))
        .map(|(lo, hi)| if hi > lo { (lo, hi) } else { widen(lo, hi, 0.0) })
        .unwrap_or((0.0, 1.0));
    let (e_lo, e_hi) = range(spectrum.iter().map(|r| r.energy).chain(points.iter().map(|p| p.energy)))
        .map(|(lo, hi)| widen(lo, hi, 0.03))
        .unwrap_or((0.0, 1.0));
    let f = Frame { g_lo, g_hi, e_lo, e_hi };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{}" height="{}"/></clipPath></defs>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    axes(&mut s, &f);

    if opts.baselines {
        baselines(&mut s, &f, points, spectrum);
    }

    // levels grouped by (parity, level), +1 first
    let mut curves: BTreeMap<(i32, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for r in spectrum {
        curves.entry((-r.parity, r.level)).or_default().push((r.g, r.energy));
    }
    let _ = writeln!(s, r#"<g id="levels" clip-path="url(#plot-area)" fill="none" stroke-width="1.2">"#);
    for ((neg_parity, level), mut pts) in curves {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (colour, dash) = if neg_parity < 0 {
            ("#1f3b73", "")
        } else {
            ("#8c1c1c", r#" stroke-dasharray="5,3""#)
        };
        let coords: Vec<String> = pts.iter().map(|&(g, e)| format!("{:.3},{:.3}", f.px(g), f.py(e))).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="parity{} level{level}" stroke="{colour}"{dash} points="{}"/>"#,
            if neg_parity < 0 { "-plus" } else { "-minus" },
            coords.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");

    if !points.is_empty() {
        let _ = writeln!(s, r##"<g id="juddian-points" fill="#000000" stroke="none">"##);
        for p in points {
            let (x, y) = (f.px(p.g), f.py(p.energy));
            let _ = writeln!(
                s,
                r#"<path d="M{:.3},{:.3} L{:.3},{:.3} L{:.3},{:.3} L{:.3},{:.3} Z"/>"#,
                x,
                y - DIAMOND,
                x + DIAMOND,
                y,
                x,
                y + DIAMOND,
                x - DIAMOND,
                y
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, "</svg>");
    s
}

fn axes(s: &mut String, f: &Frame) {
    let x0 = LEFT;
    let x1 = WIDTH - RIGHT;
    let y0 = HEIGHT - BOTTOM;
    let y1 = TOP;
    let _ = writeln!(s, r##"<g id="axes" stroke="#000000" stroke-width="1" font-family="serif" font-size="12">"##);
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none"/>"#, x1 - x0, y0 - y1);
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let g = f.g_lo + t * (f.g_hi - f.g_lo);
        let x = f.px(g);
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="{y0}" x2="{x:.3}" y2="{}"/>"#, y0 + 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{x:.3}" y="{}" stroke="none" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            tick_label(g)
        );
        let e = f.e_lo + t * (f.e_hi - f.e_lo);
        let y = f.py(e);
        let _ = writeln!(s, r#"<line x1="{}" y1="{y:.3}" x2="{x0}" y2="{y:.3}"/>"#, x0 - 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.3}" stroke="none" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            y + 4.0,
            tick_label(e)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{}" stroke="none" text-anchor="middle" font-size="16" font-style="italic">g</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.3}" stroke="none" text-anchor="middle" font-size="16" font-style="italic">E</text>"#,
        (y0 + y1) / 2.0
    );
    let _ = writeln!(s, "</g>");
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn baselines(s: &mut String, f: &Frame, points: &[PointRecord], spectrum: &[SpectrumRecord]) {
    let omega = omega_from_points(points);
    // up to the largest point order, else every baseline starting inside the figure
    let max_n = points
        .iter()
        .map(|p| p.n)
        .max()
        .unwrap_or_else(|| range(spectrum.iter().map(|r| r.energy)).map_or(1, |(_, hi)| hi.floor().max(1.0) as usize));
    let _ = writeln!(
        s,
        r##"<g id="baselines" clip-path="url(#plot-area)" fill="none" stroke="#b0b0b0" stroke-width="0.8">"##
    );
    for n in 1..=max_n {
        let coords: Vec<String> = (0..=BASELINE_SAMPLES)
            .map(|i| {
                let g = f.g_lo + (f.g_hi - f.g_lo) * i as f64 / BASELINE_SAMPLES as f64;
                let lambda = 2.0 * g / omega;
                format!("{:.3},{:.3}", f.px(g), f.py(n as f64 - lambda * lambda))
            })
            .collect();
        let _ = writeln!(s, r#"<polyline class="baseline N{n}" points="{}"/>"#, coords.join(" "));
    }
    let _ = writeln!(s, "</g>");
}
