//! Formula radio number vs `n`, one line per `m`, even and odd `m` in
//! separate panels. Output is a standalone SVG plus a tidy CSV of the same
//! points.

use std::collections::BTreeMap;
use std::fmt::Write;

use prismrn_core::{Parity, SweepRecord};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub parity: Parity,
    pub m: usize,
    /// `(n, formula_rn)` sorted by `n`.
    pub points: Vec<(usize, u64)>,
}

impl Series {
    pub fn is_strictly_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }
}

pub fn series(records: &[SweepRecord]) -> Vec<Series> {
    let mut by_m: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for r in records {
        by_m.entry(r.m).or_default().push((r.n, r.formula_rn));
    }
    by_m.into_iter()
        .map(|(m, mut points)| {
            points.sort_unstable();
            points.dedup_by_key(|p| p.0);
            Series {
                parity: Parity::of(m),
                m,
                points,
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct TidyRow {
    parity: Parity,
    m: usize,
    n: usize,
    formula_rn: u64,
    constructed_span: u64,
    exact_rn: Option<u64>,
    formula_minus_exact: Option<i64>,
}

/// One row per plotted point, with the construction and exact columns
/// alongside.
pub fn tidy_csv(records: &[SweepRecord]) -> anyhow::Result<String> {
    let mut rows: Vec<&SweepRecord> = records.iter().collect();
    rows.sort_by_key(|r| (r.m % 2, r.m, r.n));
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in rows {
        writer.serialize(TidyRow {
            parity: r.parity,
            m: r.m,
            n: r.n,
            formula_rn: r.formula_rn,
            constructed_span: r.constructed_span,
            exact_rn: r.exact_rn,
            formula_minus_exact: r.formula_delta(),
        })?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 320.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn render_svg(all: &[Series]) -> String {
    let panels: Vec<(Parity, Vec<&Series>)> = [Parity::Even, Parity::Odd]
        .into_iter()
        .map(|p| (p, all.iter().filter(|s| s.parity == p && !s.points.is_empty()).collect::<Vec<_>>()))
        .filter(|(_, s)| !s.is_empty())
        .collect();

    let width = PANEL_W * panels.len().max(1) as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (i, (parity, group)) in panels.iter().enumerate() {
        panel(&mut out, i as f64 * PANEL_W, *parity, group);
    }
    out.push_str("</svg>\n");
    out
}

fn panel(out: &mut String, x0: f64, parity: Parity, group: &[&Series]) {
    let points = group.iter().flat_map(|s| s.points.iter());
    let (n_min, n_max) = points.clone().fold((usize::MAX, 0), |(lo, hi), &(n, _)| (lo.min(n), hi.max(n)));
    let (v_min, v_max) = points.fold((u64::MAX, 0), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)));
    let n_span = (n_max - n_min).max(1) as f64;
    let v_span = (v_max - v_min).max(1) as f64;

    let left = x0 + MARGIN;
    let right = x0 + PANEL_W - 16.0;
    let top = 32.0;
    let bottom = PANEL_H - 40.0;
    let sx = |n: usize| left + (n - n_min) as f64 / n_span * (right - left);
    let sy = |v: u64| bottom - (v - v_min) as f64 / v_span * (bottom - top);

    writeln!(
        out,
        r#"<text x="{:.1}" y="18" text-anchor="middle" font-size="13">formula radio number, {} m</text>"#,
        (left + right) / 2.0,
        parity
    )
    .unwrap();
    writeln!(
        out,
        r##"<path d="M{left:.1},{top:.1} V{bottom:.1} H{right:.1}" fill="none" stroke="#333"/>"##
    )
    .unwrap();
    for n in n_min..=n_max {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{n}</text>"#,
            sx(n),
            bottom + 14.0
        )
        .unwrap();
    }
    writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n</text>"#, (left + right) / 2.0, bottom + 30.0).unwrap();
    for v in [v_min, (v_min + v_max) / 2, v_max] {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v}</text>"#,
            left - 6.0,
            sy(v) + 4.0
        )
        .unwrap();
    }

    for (k, s) in group.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let path: Vec<String> = s.points.iter().map(|&(n, v)| format!("{:.1},{:.1}", sx(n), sy(v))).collect();
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.join(" ")
        )
        .unwrap();
        for &(n, v) in &s.points {
            writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="2.5" fill="{color}"><title>n={n} m={} rn={v}</title></circle>"#,
                sx(n),
                sy(v),
                s.m
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}">m={}</text>"#,
            left + 8.0,
            top + 12.0 + 13.0 * k as f64,
            s.m
        )
        .unwrap();
    }
}
