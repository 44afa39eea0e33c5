//! Plain SVG renderings of lattice folds and energy profiles.

use std::fmt::Write as _;

use crate::energy::EnergyReport;
use crate::fold::{embed, OriginPolicy, StepVector};
use crate::seq::BinaryProfile;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];
const MARGIN: i64 = 1;

/// One `polyline` per fold, with a filled circle on each hydrophobic vertex.
/// Folds are drawn with the origin prepended; `profile` bit `j` marks point
/// `j`. The viewBox covers the bounding box of every fold plus a unit margin.
pub fn folds_svg(folds: &[(usize, &StepVector)], profile: &BinaryProfile) -> String {
    let embeddings: Vec<_> = folds
        .iter()
        .map(|(idx, s)| (*idx, embed(s, OriginPolicy::PrependOrigin).points))
        .collect();
    let all = embeddings.iter().flat_map(|(_, pts)| pts.iter());
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0i64, 0i64, 0i64, 0i64);
    for p in all {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    // SVG y grows downward, so lattice y is negated.
    let (vx, vy) = (min_x - MARGIN, -max_y - MARGIN);
    let (vw, vh) = (max_x - min_x + 2 * MARGIN, max_y - min_y + 2 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {vw} {vh}" width="{}" height="{}">"#,
        vw * 20,
        vh * 20
    );
    for (n, (idx, pts)) in embeddings.iter().enumerate() {
        let color = PALETTE[n % PALETTE.len()];
        let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", p.x, -p.y)).collect();
        let _ = writeln!(out, r#"<g id="fold-{idx}">"#);
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="0.1"/>"#,
            coords.join(" ")
        );
        for (p, _) in pts.iter().zip(profile.bits()).filter(|(_, &b)| b) {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="0.2" fill="{color}"/>"#,
                p.x, -p.y
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Energy against fold index as a polyline, with the unfolded baseline as a
/// dashed horizontal line.
pub fn energy_profile_svg(report: &EnergyReport) -> String {
    let (w, h, pad) = (800.0, 400.0, 40.0);
    let energies = report.energies();
    let lo = energies
        .iter()
        .copied()
        .fold(report.unfolded_energy, f64::min);
    let hi = energies
        .iter()
        .copied()
        .fold(report.unfolded_energy, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let n = energies.len().max(2) as f64 - 1.0;
    let sx = |i: usize| pad + (w - 2.0 * pad) * i as f64 / n;
    let sy = |e: f64| h - pad - (h - 2.0 * pad) * (e - lo) / span;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    let base = sy(report.unfolded_energy);
    let _ = writeln!(
        out,
        r##"<line x1="{pad}" y1="{base:.3}" x2="{}" y2="{base:.3}" stroke="#888" stroke-dasharray="4 4"/>"##,
        w - pad
    );
    let coords: Vec<String> = energies
        .iter()
        .enumerate()
        .map(|(i, &e)| format!("{:.3},{:.3}", sx(i), sy(e)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
        coords.join(" ")
    );
    let _ = writeln!(
        out,
        r#"<text x="{pad}" y="20" font-size="12">min {lo:.4} / max {hi:.4} / unfolded {:.4}</text>"#,
        report.unfolded_energy
    );
    out.push_str("</svg>\n");
    out
}
