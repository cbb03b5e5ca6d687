//! Scatter plot of the poles of `u_λ` in the complex plane.

use std::fmt::Write as _;

use serde::Serialize;

use crate::locus::{negation_asymmetry, pole_structure, LocusConfiguration, NumericsConfig};
use crate::{Partition, Result};

/// A root counts as real when `|Im z|` is at most this.
pub const REAL_AXIS_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct FigureReport {
    pub partition: Partition,
    /// Whether the input was doubled before plotting.
    pub doubled: bool,
    pub degree: usize,
    pub distinct_roots: usize,
    pub min_abs_im: f64,
    /// Largest distance from a root to the nearest negated root.
    pub negation_asymmetry: f64,
    /// Doubled partitions must have no real roots.
    pub passed: bool,
    #[serde(skip)]
    pub configuration: LocusConfiguration,
    #[serde(skip)]
    pub svg: String,
    #[serde(skip)]
    pub csv: String,
}

/// Roots of `W_λ` (or of `W` for the doubled partition) as SVG and CSV.
pub fn fig1(lambda: &Partition, double: bool, cfg: &NumericsConfig) -> Result<FigureReport> {
    let target = if double { lambda.doubled() } else { lambda.clone() };
    let conf = pole_structure(&target, cfg)?;
    let min_abs_im = conf.roots.iter().map(|z| z.im.abs()).fold(f64::INFINITY, f64::min);
    let asym = negation_asymmetry(&conf.expanded_roots());
    let passed = !double || conf.roots.iter().all(|z| z.im.abs() > REAL_AXIS_TOL);
    Ok(FigureReport {
        partition: target.clone(),
        doubled: double,
        degree: conf.degree(),
        distinct_roots: conf.roots.len(),
        min_abs_im,
        negation_asymmetry: asym,
        passed,
        svg: render_svg(&conf),
        csv: conf.to_csv(),
        configuration: conf,
    })
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// Axis-equal plot centred at the origin, so the `z -> -z` symmetry is visible.
fn render_svg(conf: &LocusConfiguration) -> String {
    let extent = conf
        .roots
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(0.0, f64::max)
        .max(0.5)
        * 1.15;
    let half = SIZE / 2.0;
    let scale = (half - MARGIN) / extent;
    let px = |x: f64| half + x * scale;
    let py = |y: f64| half - y * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"  <g stroke="#999" stroke-width="1"><line x1="{m}" y1="{half}" x2="{e}" y2="{half}"/><line x1="{half}" y1="{m}" x2="{half}" y2="{e}"/></g>"##,
        m = MARGIN,
        e = SIZE - MARGIN
    );
    // unit ticks along both axes
    let ticks = extent.floor() as i64;
    let _ = write!(s, r##"  <g stroke="#999" stroke-width="1">"##);
    for k in (-ticks..=ticks).filter(|&k| k != 0) {
        let t = k as f64;
        let _ = write!(
            s,
            r#"<line x1="{x:.2}" y1="{a:.2}" x2="{x:.2}" y2="{b:.2}"/><line x1="{a:.2}" y1="{y:.2}" x2="{b:.2}" y2="{y:.2}"/>"#,
            x = px(t),
            y = py(t),
            a = half - 4.0,
            b = half + 4.0
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"  <text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">zeros of W for {} (degree {})</text>"#,
        conf.partition,
        conf.degree()
    );
    let _ = writeln!(s, r##"  <g fill="#1f4e9c">"##);
    for (z, nu) in conf.roots.iter().zip(&conf.multiplicities) {
        let r = 3.0 + 1.5 * (*nu as f64 - 1.0);
        let _ = writeln!(
            s,
            r#"    <circle cx="{:.3}" cy="{:.3}" r="{r:.1}"><title>{} {:+}i (multiplicity {nu})</title></circle>"#,
            px(z.re),
            py(z.im),
            z.re,
            z.im
        );
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}
