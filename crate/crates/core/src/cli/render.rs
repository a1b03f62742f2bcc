//! Boundary exports. Output depends only on the samples, so identical input
//! gives byte-identical files.

use std::fmt::Write as _;

use serde::Serialize;

use crate::criteria::Ellipse;
use crate::linalg::Complex;
use crate::nr::{BoundarySample, FlatPortion};

const ELLIPSE_POINTS: usize = 256;

pub fn csv(samples: &[BoundarySample]) -> String {
    let mut s = String::from("theta,re,im,support_value,gap\n");
    for b in samples {
        let _ = writeln!(s, "{},{},{},{},{}", b.theta, b.point.re, b.point.im, b.support_value, b.multiplicity_gap);
    }
    s
}

#[derive(Serialize)]
struct BoundaryDoc<'a> {
    samples: &'a [BoundarySample],
    ellipses: Option<[Ellipse; 2]>,
    eigenvalues: &'a [Complex],
    flats: &'a [FlatPortion],
}

pub fn json(
    samples: &[BoundarySample],
    ellipses: Option<[Ellipse; 2]>,
    eigenvalues: &[Complex],
    flats: &[FlatPortion],
) -> String {
    let doc = BoundaryDoc { samples, ellipses, eigenvalues, flats };
    serde_json::to_string_pretty(&doc).expect("boundary document serializes") + "\n"
}

fn path(points: impl Iterator<Item = Complex>) -> String {
    let mut d = String::new();
    for (k, z) in points.enumerate() {
        let _ = write!(d, "{}{:.6},{:.6} ", if k == 0 { 'M' } else { 'L' }, z.re, -z.im);
    }
    d.push('Z');
    d
}

/// Self-contained SVG: the sampled boundary, criterion ellipses (if any),
/// eigenvalues and flat portions. The viewBox is the bounding box of the
/// samples and eigenvalues with a 5% margin; the imaginary axis points up.
pub fn svg(
    samples: &[BoundarySample],
    ellipses: Option<[Ellipse; 2]>,
    eigenvalues: &[Complex],
    flats: &[FlatPortion],
) -> String {
    let pts = samples.iter().map(|s| s.point).chain(eigenvalues.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in pts {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let margin = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = 0.004 * span;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        x0 - margin,
        -(y1 + margin),
        w,
        h,
        800.0 * h / w
    );
    let _ = writeln!(
        s,
        r#"<path d="{}" style="fill:#dde8f4;stroke:#1f4e79;stroke-width:{stroke:.6}"/>"#,
        path(samples.iter().map(|b| b.point))
    );
    if let Some(es) = ellipses {
        for e in es {
            let ring =
                (0..ELLIPSE_POINTS).map(|k| e.point_at(std::f64::consts::TAU * k as f64 / ELLIPSE_POINTS as f64));
            let _ = writeln!(
                s,
                r#"<path d="{}" style="fill:none;stroke:#c0392b;stroke-width:{:.6};stroke-dasharray:{:.6}"/>"#,
                path(ring),
                0.6 * stroke,
                3.0 * stroke
            );
        }
    }
    for f in flats {
        let (a, b) = f.endpoints;
        let _ = writeln!(
            s,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" style="stroke:#27ae60;stroke-width:{:.6}"/>"#,
            a.re,
            -a.im,
            b.re,
            -b.im,
            2.0 * stroke
        );
    }
    for z in eigenvalues {
        let _ =
            writeln!(s, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" style="fill:#000"/>"#, z.re, -z.im, 2.0 * stroke);
    }
    s.push_str("</svg>\n");
    s
}
