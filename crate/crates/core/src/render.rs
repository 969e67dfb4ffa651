//! Deterministic SVG rendering of tiling patches, flag triangles, and
//! highlighted walks drawn through flag-triangle centroids.

use crate::stabilizer::{catalog, cell_boundary, cell_of, CellKind};
use crate::tiling::{Flag, FlagSystem, TilingId};
use crate::word::Word;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// What to draw: a window of cells, optional highlighted walks starting
/// at the base flag, and markers for the base flag and its β/γ images.
#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub tiling: TilingId,
    pub radius: i64,
    pub highlight_walks: Vec<Word>,
    pub show_base_flag: bool,
    pub stroke_width: f64,
    pub scale: f64,
}

impl RenderSpec {
    pub fn new(tiling: TilingId) -> RenderSpec {
        RenderSpec {
            tiling,
            radius: 2,
            highlight_walks: Vec::new(),
            show_base_flag: true,
            stroke_width: 1.0,
            scale: 40.0,
        }
    }
}

fn face_fill(codegree: u32) -> &'static str {
    match codegree {
        3 => "#d7e8d0",
        4 => "#d0dcec",
        6 => "#f1e4c4",
        8 => "#e6d0e0",
        12 => "#f4d6c2",
        _ => "#e0e0e0",
    }
}

const WALK_COLORS: [&str; 10] = [
    "#c62828", "#1565c0", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f", "#ad1457", "#4e342e",
    "#9e9d24", "#283593",
];

/// Renders the spec to a standalone SVG 1.1 document. Output is
/// byte-stable for identical specs: all element orders are canonical and
/// coordinates are formatted with fixed precision. If a highlighted walk
/// leaves the window, the window expands to contain it.
pub fn render_svg(sys: &FlagSystem, spec: &RenderSpec) -> String {
    assert_eq!(sys.id(), spec.tiling, "render spec targets a different tiling");
    assert!(spec.radius >= 1);
    let r = spec.radius;
    let (mut lo, mut hi) = ((-r, -r), (r, r));
    let base = sys.base_flag();
    let walks: Vec<(String, Vec<Flag>)> = spec
        .highlight_walks
        .iter()
        .map(|w| (w.to_string(), sys.walk_of(base, w).flags))
        .collect();
    for (_, flags) in &walks {
        for f in flags {
            lo.0 = lo.0.min(f.cell.0 - 1);
            lo.1 = lo.1.min(f.cell.1 - 1);
            hi.0 = hi.0.max(f.cell.0 + 1);
            hi.1 = hi.1.max(f.cell.1 + 1);
        }
    }

    let sx = |p: (f64, f64)| p.0 * spec.scale;
    let sy = |p: (f64, f64)| -p.1 * spec.scale;

    // Collect window flags, faces and geometry bounds.
    let mut flags: Vec<Flag> = Vec::new();
    for x in lo.0..=hi.0 {
        for y in lo.1..=hi.1 {
            for c in 0..sys.class_count() as u32 {
                flags.push(Flag::new(c, (x, y)));
            }
        }
    }
    let mut faces: BTreeSet<Flag> = BTreeSet::new();
    for &f in &flags {
        faces.insert(cell_of(sys, f, CellKind::Face).anchor);
    }
    let mut min_x = f64::MAX;
    let mut min_y = f64::MAX;
    let mut max_x = f64::MIN;
    let mut max_y = f64::MIN;
    let mut touch = |x: f64, y: f64| {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    };

    let mut body = String::new();
    // Faces.
    for &anchor in &faces {
        let cell = cell_of(sys, anchor, CellKind::Face);
        let boundary = cell_boundary(sys, &cell);
        let mut points: Vec<(f64, f64)> = Vec::new();
        for f in boundary {
            let v = sys.embed(f)[0].to_f64();
            let q = (sx(v), sy(v));
            if points.last() != Some(&q) {
                points.push(q);
            }
        }
        if points.last() == points.first() && points.len() > 1 {
            points.pop();
        }
        let mut attr = String::new();
        for (x, y) in &points {
            touch(*x, *y);
            let _ = write!(attr, "{x:.3},{y:.3} ");
        }
        let fill = face_fill(cell.size);
        let _ = writeln!(
            body,
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"#555555\" stroke-width=\"{:.2}\"/>",
            attr.trim_end(),
            fill,
            0.6 * spec.stroke_width
        );
    }
    // Flag triangles, faint.
    for &f in &flags {
        let tri = sys.embed(f);
        let pts: Vec<(f64, f64)> = tri.iter().map(|p| (sx(p.to_f64()), sy(p.to_f64()))).collect();
        let _ = writeln!(
            body,
            "<polygon points=\"{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"{:.2}\"/>",
            pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1,
            0.35 * spec.stroke_width
        );
    }
    // Base flag and its lattice-step images under β and γ.
    if spec.show_base_flag {
        let mut marked: Vec<(Flag, &str, &str)> = vec![(base, "#37474f", "base")];
        if sys.id().is_uniform() {
            if let Ok(cat) = catalog(sys) {
                marked.push((sys.apply_word(base, &cat.beta), "#00695c", "beta"));
                marked.push((sys.apply_word(base, &cat.gamma), "#bf360c", "gamma"));
            }
        }
        for (f, color, label) in marked {
            let tri = sys.embed(f);
            let pts: Vec<(f64, f64)> =
                tri.iter().map(|p| (sx(p.to_f64()), sy(p.to_f64()))).collect();
            let _ = writeln!(
                body,
                "<polygon points=\"{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"none\"/>",
                pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1, color
            );
            let cx = (pts[0].0 + pts[1].0 + pts[2].0) / 3.0;
            let cy = (pts[0].1 + pts[1].1 + pts[2].1) / 3.0;
            let _ = writeln!(
                body,
                "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"{:.1}\" fill=\"{}\">{}</text>",
                cx + 4.0,
                cy - 4.0,
                0.22 * spec.scale,
                color,
                label
            );
        }
    }
    // Highlighted walks through flag centroids.
    for (i, (label, wflags)) in walks.iter().enumerate() {
        let color = WALK_COLORS[i % WALK_COLORS.len()];
        let mut attr = String::new();
        for f in wflags {
            let c = sys.centroid(*f).to_f64();
            let (x, y) = (sx(c), sy(c));
            touch(x, y);
            let _ = write!(attr, "{x:.3},{y:.3} ");
        }
        let _ = writeln!(
            body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.2}\" stroke-linejoin=\"round\" stroke-opacity=\"0.9\"/>",
            attr.trim_end(),
            color,
            1.6 * spec.stroke_width
        );
        let start = sys.centroid(wflags[0]).to_f64();
        let _ = writeln!(
            body,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"{:.1}\" fill=\"{}\">{}</text>",
            sx(start) + 5.0,
            sy(start) + 12.0 + 14.0 * i as f64,
            0.25 * spec.scale,
            color,
            label
        );
    }

    let margin = spec.scale;
    let vb = (
        min_x - margin,
        min_y - margin,
        (max_x - min_x) + 2.0 * margin,
        (max_y - min_y) + 2.0 * margin,
    );
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\">",
        vb.0, vb.1, vb.2, vb.3
    );
    let _ = writeln!(out, "<title>{} patch</title>", sys.id().name());
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}
