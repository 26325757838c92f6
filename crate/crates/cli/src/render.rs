//! CSV, ASCII and SVG projections of a [`Document`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use clap::ValueEnum;
use whcalc_core::ahss::{ChartDocument, Valuation};
use whcalc_core::steenrod::GradedDims;
use whcalc_core::torsion::TorsionProfile;
use whcalc_core::whcohomology::Piece;

use crate::document::{Document, Payload};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    AsciiChart,
    SvgChart,
}

pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => render_csv(doc),
        Format::AsciiChart => Ok(render_ascii(doc)),
        Format::SvgChart => Ok(render_svg(doc)),
    }
}

/// Renders `format` from the JSON form of `doc`, so every projection sees
/// exactly what the JSON carries.
pub fn emit(doc: &Document, format: Format) -> Result<String, CliError> {
    let json = doc.to_json()?;
    if format == Format::Json {
        return Ok(json);
    }
    render(&Document::from_json(&json)?, format)
}

fn order_string(p: u64, v: u32) -> String {
    (p as u128).checked_pow(v).map_or_else(|| format!("{p}^{v}"), |n| n.to_string())
}

fn valuation_string(v: Valuation) -> String {
    match v {
        Valuation::Finite(v) => v.to_string(),
        Valuation::Infinite => "Z".into(),
    }
}

/// Pieces plus a final column for their sum.
fn cohomology_columns(doc: &Document) -> Option<(Vec<(String, GradedDims)>, i64)> {
    let (pieces, sum, label, max): (&[Piece], &GradedDims, &str, i64) = match &doc.payload {
        Payload::Cohomology(r) => (&r.pieces, &r.total, "total", r.max_degree),
        Payload::CohomologyPieces(s) => (&s.pieces, &s.dims, "sum", s.max_degree),
        _ => return None,
    };
    let mut cols: Vec<(String, GradedDims)> = pieces.iter().map(|x| (x.name.clone(), x.dims.clone())).collect();
    cols.push((label.to_string(), sum.clone()));
    Some((cols, max))
}

fn render_csv(doc: &Document) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &doc.payload {
        Payload::TorsionProfile(t) => {
            w.write_record(["degree", "valuation", "order", "generators", "structure"])?;
            for e in &t.entries {
                w.write_record([
                    e.degree.to_string(),
                    e.valuation.to_string(),
                    order_string(t.p, e.valuation),
                    e.generators.join("; "),
                    e.structure.clone().unwrap_or_default(),
                ])?;
            }
        }
        Payload::AhssChart(c) => {
            w.write_record(["s", "t", "total_degree", "valuation", "aggregate_only", "labels"])?;
            for r in &c.records {
                w.write_record([
                    r.s.to_string(),
                    r.t.to_string(),
                    (r.s + r.t).to_string(),
                    r.valuation.to_string(),
                    r.aggregate_only.to_string(),
                    r.labels.join("; "),
                ])?;
            }
        }
        Payload::Cohomology(_) | Payload::CohomologyPieces(_) => {
            let (cols, _) = cohomology_columns(doc).expect("cohomology payload");
            w.write_record(["degree", "piece", "dim"])?;
            for (name, dims) in &cols {
                for (d, n) in dims.iter() {
                    w.write_record([d.to_string(), name.clone(), n.to_string()])?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_ascii(doc: &Document) -> String {
    match &doc.payload {
        Payload::TorsionProfile(t) => ascii_torsion(t),
        Payload::AhssChart(c) => ascii_chart(c),
        _ => {
            let (cols, max) = cohomology_columns(doc).expect("cohomology payload");
            ascii_cohomology(doc, &cols, max)
        }
    }
}

fn ascii_torsion(t: &TorsionProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p-torsion in pi_*(Wh(*)), p = {}, degrees <= {}", t.p, t.max_degree);
    let _ = writeln!(s, "degree  order       generators");
    for e in &t.entries {
        let bar = "#".repeat(e.valuation as usize);
        let mut line = format!("{:>6}  {:<10}  {:<6}{}", e.degree, format!("{}^{}", t.p, e.valuation), bar, e.generators.join(", "));
        if let Some(st) = &e.structure {
            let _ = write!(line, " [{st}]");
        }
        let _ = writeln!(s, "{}", line.trim_end());
    }
    if t.entries.is_empty() {
        let _ = writeln!(s, "(none)");
    }
    s
}

fn chart_cells(c: &ChartDocument) -> BTreeMap<(i64, i64), String> {
    c.records
        .iter()
        .map(|r| {
            let mut cell = valuation_string(r.valuation);
            if r.aggregate_only {
                cell.push('*');
            }
            ((r.s, r.t), cell)
        })
        .collect()
}

fn chart_axes(c: &ChartDocument) -> (Vec<i64>, i64) {
    let s_min = c.records.iter().map(|r| r.s).min().unwrap_or(0);
    let s_max = c.records.iter().map(|r| r.s).max().unwrap_or(0);
    let t_max = c.records.iter().map(|r| r.t).max().unwrap_or(0);
    let mut cols: BTreeSet<i64> = c.records.iter().map(|r| r.s).collect();
    cols.extend((s_min..=s_max).filter(|s| s % 2 == 0));
    (cols.into_iter().collect(), t_max)
}

fn ascii_chart(c: &ChartDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} {} page, p = {}, total degree <= {}",
        c.target,
        page_name(c),
        c.p,
        c.max_total_degree
    );
    let cells = chart_cells(c);
    let (cols, t_max) = chart_axes(c);
    for t in (0..=t_max).rev() {
        let mut line = format!("{t:>4} |");
        for s_ in &cols {
            let cell = cells.get(&(*s_, t)).map_or(".", String::as_str);
            let _ = write!(line, "{cell:>4}");
        }
        let _ = writeln!(s, "{}", line.trim_end());
    }
    let mut axis = "     +".to_string();
    axis.push_str(&"-".repeat(4 * cols.len()));
    let _ = writeln!(s, "{axis}");
    let mut labels = "   s  ".to_string();
    for s_ in &cols {
        let _ = write!(labels, "{s_:>4}");
    }
    let _ = writeln!(s, "{labels}");
    let _ = writeln!(s, "cells: valuation of the group, Z = integral, * = aggregate only");
    for r in &c.records {
        let _ = writeln!(
            s,
            "  ({}, {}) v={}{}  {}",
            r.s,
            r.t,
            valuation_string(r.valuation),
            if r.aggregate_only { " aggregate-only" } else { "" },
            r.labels.join(", ")
        );
    }
    for d in &c.axis_deficit {
        let _ = writeln!(s, "  axis deficit in total degree {}: {}", d.total_degree, d.valuation);
    }
    s
}

fn page_name(c: &ChartDocument) -> &'static str {
    match c.page_label {
        whcalc_core::ahss::PageLabel::E2 => "E2",
        whcalc_core::ahss::PageLabel::Einf => "EINF",
    }
}

fn ascii_cohomology(doc: &Document, cols: &[(String, GradedDims)], max: i64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mod {} cohomology of Wh(*), degrees <= {}", doc.header.p, max);
    for (i, (name, _)) in cols.iter().enumerate() {
        let _ = writeln!(s, "  [{}] {}", i + 1, name);
    }
    let mut head = "degree".to_string();
    for i in 0..cols.len() {
        let _ = write!(head, "{:>6}", format!("[{}]", i + 1));
    }
    let _ = writeln!(s, "{head}");
    for d in 0..=max {
        if cols.iter().all(|(_, dims)| dims.get(d) == 0) {
            continue;
        }
        let mut line = format!("{d:>6}");
        for (_, dims) in cols {
            let n = dims.get(d);
            let cell = if n == 0 { ".".to_string() } else { n.to_string() };
            let _ = write!(line, "{cell:>6}");
        }
        let _ = writeln!(s, "{line}");
    }
    if let Payload::Cohomology(r) = &doc.payload {
        for a in &r.annotations {
            let _ = writeln!(s, "note: {a}");
        }
    }
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn svg_open(s: &mut String, width: i64, height: i64, title: &str) {
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", xml_escape(title));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="10" y="20" font-family="monospace" font-size="14">{}</text>"#,
        xml_escape(title)
    );
}

fn render_svg(doc: &Document) -> String {
    match &doc.payload {
        Payload::TorsionProfile(t) => svg_torsion(t),
        Payload::AhssChart(c) => svg_chart(c),
        _ => {
            let (cols, max) = cohomology_columns(doc).expect("cohomology payload");
            svg_cohomology(doc.header.p, &cols, max)
        }
    }
}

const MARGIN: i64 = 40;

fn svg_torsion(t: &TorsionProfile) -> String {
    let (bar, unit) = (12, 20);
    let top_v = t.entries.iter().map(|e| e.valuation).max().unwrap_or(1) as i64;
    let width = 2 * MARGIN + bar * (t.max_degree + 1);
    let height = 2 * MARGIN + unit * top_v + 20;
    let base = MARGIN + 20 + unit * top_v;
    let mut s = String::new();
    svg_open(&mut s, width, height, &format!("p-torsion in pi_*(Wh(*)), p = {}", t.p));
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        width - MARGIN
    );
    for e in &t.entries {
        let x = MARGIN + bar * e.degree;
        let h = unit * e.valuation as i64;
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{h}" fill="steelblue"><title>degree {}: order {}^{} {}</title></rect>"#,
            x + 1,
            base - h,
            bar - 2,
            e.degree,
            t.p,
            e.valuation,
            xml_escape(&e.generators.join(", "))
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="8" text-anchor="middle">{}</text>"#,
            x + bar / 2,
            base + 12,
            e.degree
        );
    }
    s.push_str("</svg>\n");
    s
}

fn svg_chart(c: &ChartDocument) -> String {
    let cell = 28;
    let (cols, t_max) = chart_axes(c);
    let width = 2 * MARGIN + cell * cols.len() as i64;
    let height = 2 * MARGIN + cell * (t_max + 1) + 20;
    let x_of = |s_: i64| MARGIN + cell * cols.iter().position(|&c| c == s_).unwrap_or(0) as i64 + cell / 2;
    let y_of = |t: i64| MARGIN + 20 + cell * (t_max - t) + cell / 2;
    let mut s = String::new();
    svg_open(
        &mut s,
        width,
        height,
        &format!("{} {} page, p = {}", c.target, page_name(c), c.p),
    );
    s.push_str(
        r#"<defs><pattern id="hatch" width="4" height="4" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="4" stroke="gray" stroke-width="2"/></pattern></defs>"#,
    );
    s.push('\n');
    for s_ in &cols {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="9" text-anchor="middle">{s_}</text>"#,
            x_of(*s_),
            height - MARGIN / 2
        );
    }
    for t in 0..=t_max {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="9" text-anchor="end">{t}</text>"#,
            MARGIN - 4,
            y_of(t) + 3
        );
    }
    for r in &c.records {
        let (x, y) = (x_of(r.s), y_of(r.t));
        let fill = if r.aggregate_only { "url(#hatch)" } else { "lightsteelblue" };
        let _ = writeln!(
            s,
            r#"<circle cx="{x}" cy="{y}" r="{}" fill="{fill}" stroke="black"><title>({}, {}) {}</title></circle>"#,
            cell / 2 - 3,
            r.s,
            r.t,
            xml_escape(&r.labels.join(", "))
        );
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-family="monospace" font-size="10" text-anchor="middle">{}</text>"#,
            y + 4,
            valuation_string(r.valuation)
        );
    }
    s.push_str("</svg>\n");
    s
}

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];

fn svg_cohomology(p: u64, cols: &[(String, GradedDims)], max: i64) -> String {
    let (bar, unit) = (10, 14);
    let pieces = &cols[..cols.len() - 1];
    let sum = &cols[cols.len() - 1].1;
    let top = (0..=max).map(|d| sum.get(d)).max().unwrap_or(0).max(1) as i64;
    let legend = 14 * cols.len() as i64;
    let width = 2 * MARGIN + bar * (max + 1);
    let height = 2 * MARGIN + unit * top + 20 + legend;
    let base = MARGIN + 20 + unit * top;
    let mut s = String::new();
    svg_open(&mut s, width.max(400), height, &format!("mod {p} cohomology of Wh(*)"));
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        width - MARGIN
    );
    for d in 0..=max {
        let mut y = base;
        for (i, (name, dims)) in pieces.iter().enumerate() {
            let n = dims.get(d) as i64;
            if n == 0 {
                continue;
            }
            y -= unit * n;
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{y}" width="{}" height="{}" fill="{}"><title>degree {d}: {} {n}</title></rect>"#,
                MARGIN + bar * d + 1,
                bar - 2,
                unit * n,
                PALETTE[i % PALETTE.len()],
                xml_escape(name)
            );
        }
        if d % 10 == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="8" text-anchor="middle">{d}</text>"#,
                MARGIN + bar * d + bar / 2,
                base + 12
            );
        }
    }
    for (i, (name, _)) in pieces.iter().enumerate() {
        let y = base + 24 + 14 * i as i64;
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}" font-family="monospace" font-size="10">{}</text>"#,
            y - 9,
            PALETTE[i % PALETTE.len()],
            MARGIN + 14,
            y,
            xml_escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}
