//! Standalone SVG figures.
//!
//! Four figure kinds are supported:
//!
//! - modifiability bar: portability drawn leftwards and scalability
//!   rightwards on a shared −3..+3 axis, with a marker at the center of the
//!   bar;
//! - surface: portability and scalability on the two upper axes of a
//!   three-axis radar, complexity (normalized by a reference value) on the
//!   downward axis;
//! - autonomy radar: operator independence up, self-preservation down,
//!   strategy left, coordination right;
//! - panels: several surface or autonomy figures side by side on a shared
//!   scale, left to right in input order.
//!
//! Every coordinate is a linear function of the requested width and height,
//! so scaling both dimensions scales the whole drawing. Output is
//! deterministic and numbers are printed with full precision.

use std::fmt::Write as _;

use thiserror::Error;

use crate::assessment::MAX_FACTOR;
use crate::metrics::{AutonomyProfile, MetricsReport};

pub const SVG_NS: &str = "http://www.w3.org/2000/svg";
pub const MIN_DIMENSION: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityNormalization {
    /// Complexity drawn at full axis length. `None` uses the largest
    /// complexity among the rendered reports.
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    /// Width of one panel in pixels.
    pub width: f64,
    pub height: f64,
    pub normalization: ComplexityNormalization,
    pub labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 600.0,
            height: 600.0,
            normalization: ComplexityNormalization { reference: None },
            labels: true,
        }
    }
}

impl RenderSpec {
    pub fn with_reference(mut self, reference: f64) -> Self {
        self.normalization.reference = Some(reference);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("figure size {width}x{height} is below the minimum of {MIN_DIMENSION}")]
    TooSmall { width: f64, height: f64 },
    #[error("{quantity} = {value} lies outside [{min}, {max}]")]
    OutOfRange {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("complexity reference must be greater than 0, got {0}")]
    NonpositiveReference(f64),
    #[error("panel figures need at least 2 items, got {0}")]
    TooFewPanels(usize),
}

/// What one panel shows.
#[derive(Debug, Clone, PartialEq)]
pub enum PanelContent {
    /// Drawn as a surface figure.
    Report(MetricsReport),
    Autonomy(AutonomyProfile),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub title: String,
    pub content: PanelContent,
}

impl Panel {
    pub fn autonomy(title: impl Into<String>, profile: AutonomyProfile) -> Self {
        Self {
            title: title.into(),
            content: PanelContent::Autonomy(profile),
        }
    }

    pub fn report(title: impl Into<String>, report: MetricsReport) -> Self {
        Self {
            title: title.into(),
            content: PanelContent::Report(report),
        }
    }
}

/// Formats a value for on-figure text: at most four decimals, at least one,
/// and a bare `0` for zero.
pub fn format_decimal(x: f64) -> String {
    let rounded = (x * 10_000.0).round() / 10_000.0;
    if rounded == 0.0 {
        return "0".to_string();
    }
    let mut s = format!("{rounded:.4}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}

fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

struct Svg {
    out: String,
}

impl Svg {
    fn new(width: f64, height: f64) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="{SVG_NS}" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
            w = num(width),
            h = num(height),
        );
        Self { out }
    }

    fn attrs(&mut self, attrs: &[(&str, String)]) {
        for (k, v) in attrs {
            let _ = write!(self.out, r#" {k}="{}""#, escape(v));
        }
    }

    fn element(&mut self, name: &str, attrs: &[(&str, String)]) {
        self.out.push('<');
        self.out.push_str(name);
        self.attrs(attrs);
        self.out.push_str("/>\n");
    }

    fn text(&mut self, attrs: &[(&str, String)], content: &str) {
        self.out.push_str("<text");
        self.attrs(attrs);
        let _ = writeln!(self.out, ">{}</text>", escape(content));
    }

    fn open_group(&mut self, attrs: &[(&str, String)]) {
        self.out.push_str("<g");
        self.attrs(attrs);
        self.out.push_str(">\n");
    }

    fn close_group(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn points(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn s(v: &str) -> String {
    v.to_string()
}

/// Drawing area of one figure, in local coordinates.
#[derive(Clone, Copy)]
struct Frame {
    w: f64,
    h: f64,
    labels: bool,
}

impl Frame {
    /// Length unit that scales with the figure.
    fn unit(&self) -> f64 {
        self.w.min(self.h)
    }
}

fn check_spec(spec: &RenderSpec) -> Result<Frame, RenderError> {
    if !(spec.width >= MIN_DIMENSION && spec.height >= MIN_DIMENSION)
        || !spec.width.is_finite()
        || !spec.height.is_finite()
    {
        return Err(RenderError::TooSmall {
            width: spec.width,
            height: spec.height,
        });
    }
    Ok(Frame {
        w: spec.width,
        h: spec.height,
        labels: spec.labels,
    })
}

fn check_range(quantity: &'static str, value: f64, min: f64, max: f64) -> Result<(), RenderError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(RenderError::OutOfRange {
            quantity,
            value,
            min,
            max,
        })
    }
}

fn check_report(report: &MetricsReport) -> Result<(), RenderError> {
    check_range("portability", report.portability, 0.0, MAX_FACTOR)?;
    check_range("scalability", report.scalability, 0.0, MAX_FACTOR)?;
    check_range("complexity", report.complexity, 0.0, f64::MAX)
}

fn check_profile(p: &AutonomyProfile) -> Result<(), RenderError> {
    check_range("operator independence", p.a_i, 0.0, 100.0)?;
    check_range("self-preservation", p.a_p, 0.0, 100.0)?;
    check_range("strategy", p.a_s, 0.0, 100.0)?;
    check_range("coordination", p.a_c, 0.0, 100.0)?;
    check_range("autonomy total", p.total, 0.0, 4.0)
}

fn background(svg: &mut Svg, f: Frame) {
    svg.element(
        "rect",
        &[
            ("x", s("0")),
            ("y", s("0")),
            ("width", num(f.w)),
            ("height", num(f.h)),
            ("fill", s("#ffffff")),
        ],
    );
}

fn title(svg: &mut Svg, f: Frame, text: &str) {
    let u = f.unit();
    svg.text(
        &[
            ("class", s("title")),
            ("x", num(f.w / 2.0)),
            ("y", num(0.07 * u)),
            ("font-size", num(0.045 * u)),
            ("text-anchor", s("middle")),
        ],
        text,
    );
}

fn label(svg: &mut Svg, f: Frame, x: f64, y: f64, anchor: &str, text: &str) {
    if !f.labels {
        return;
    }
    svg.text(
        &[
            ("class", s("label")),
            ("x", num(x)),
            ("y", num(y)),
            ("font-size", num(0.032 * f.unit())),
            ("text-anchor", s(anchor)),
        ],
        text,
    );
}

fn line(svg: &mut Svg, class: &str, from: (f64, f64), to: (f64, f64), stroke: &str, width: f64, extra: &[(&str, String)]) {
    let mut attrs = vec![
        ("class", s(class)),
        ("x1", num(from.0)),
        ("y1", num(from.1)),
        ("x2", num(to.0)),
        ("y2", num(to.1)),
        ("stroke", s(stroke)),
        ("stroke-width", num(width)),
    ];
    attrs.extend_from_slice(extra);
    svg.element("line", &attrs);
}

fn draw_modifiability(svg: &mut Svg, f: Frame, heading: &str, report: &MetricsReport) {
    let u = f.unit();
    let (p, sc) = (report.portability, report.scalability);
    let y = f.h / 2.0;
    let x0 = 0.1 * f.w;
    let x1 = 0.9 * f.w;
    let at = |v: f64| x0 + (v + MAX_FACTOR) / (2.0 * MAX_FACTOR) * (x1 - x0);

    background(svg, f);
    title(svg, f, heading);
    line(svg, "axis", (x0, y), (x1, y), "#333333", 0.004 * u, &[]);
    for tick in -3i32..=3 {
        let x = at(f64::from(tick));
        let (class, half) = if tick == 0 {
            ("zero-tick", 0.04 * u)
        } else {
            ("tick", 0.015 * u)
        };
        line(svg, class, (x, y - half), (x, y + half), "#333333", 0.004 * u, &[]);
        label(svg, f, x, y + 0.08 * u, "middle", &tick.abs().to_string());
    }
    line(
        svg,
        "segment",
        (at(-p), y),
        (at(sc), y),
        "#1f77b4",
        0.02 * u,
        &[("stroke-linecap", s("butt"))],
    );
    svg.element(
        "circle",
        &[
            ("class", s("midpoint")),
            ("cx", num(at((sc - p) / 2.0))),
            ("cy", num(y)),
            ("r", num(0.014 * u)),
            ("fill", s("#d62728")),
        ],
    );
    label(svg, f, x0, y - 0.07 * u, "start", "Portability");
    label(svg, f, x1, y - 0.07 * u, "end", "Scalability");
    label(svg, f, f.w / 2.0, y + 0.15 * u, "middle", "Portability | Scalability");
    label(
        svg,
        f,
        f.w / 2.0,
        f.h - 0.06 * u,
        "middle",
        &format!(
            "P = {}   S = {}   length = {}",
            format_decimal(p),
            format_decimal(sc),
            format_decimal(p + sc)
        ),
    );
}

fn draw_surface(svg: &mut Svg, f: Frame, heading: &str, report: &MetricsReport, reference: f64) {
    let u = f.unit();
    let (cx, cy) = (f.w / 2.0, f.h / 2.0 + 0.04 * u);
    let r = 0.34 * u;
    let half_root3 = 3f64.sqrt() / 2.0;
    let axes = [
        ("portability", (-half_root3, -0.5)),
        ("scalability", (half_root3, -0.5)),
        ("complexity", (0.0, 1.0)),
    ];
    let at = |dir: (f64, f64), frac: f64| (cx + dir.0 * r * frac, cy + dir.1 * r * frac);

    background(svg, f);
    title(svg, f, heading);
    for level in 1..=3 {
        let frac = f64::from(level) / 3.0;
        let ring: Vec<_> = axes.iter().map(|(_, d)| at(*d, frac)).collect();
        svg.element(
            "polygon",
            &[
                ("class", s("grid")),
                ("points", points(&ring)),
                ("fill", s("none")),
                ("stroke", s("#cccccc")),
                ("stroke-width", num(0.002 * u)),
            ],
        );
    }
    for (metric, dir) in axes {
        line(svg, "axis", (cx, cy), at(dir, 1.0), "#333333", 0.004 * u, &[("data-metric", s(metric))]);
    }
    svg.element(
        "circle",
        &[
            ("class", s("center")),
            ("cx", num(cx)),
            ("cy", num(cy)),
            ("r", num(0.006 * u)),
            ("fill", s("#333333")),
        ],
    );

    let ratio = report.complexity / reference;
    let clipped = ratio > 1.0;
    let vertices = [
        at(axes[0].1, report.portability / MAX_FACTOR),
        at(axes[1].1, report.scalability / MAX_FACTOR),
        at(axes[2].1, ratio.min(1.0)),
    ];
    svg.element(
        "polygon",
        &[
            ("class", s("surface")),
            ("points", points(&vertices)),
            ("fill", s("#1f77b4")),
            ("fill-opacity", s("0.35")),
            ("stroke", s("#1f77b4")),
            ("stroke-width", num(0.005 * u)),
            ("data-clipped", s(if clipped { "true" } else { "false" })),
        ],
    );

    let end = |i: usize, pad: f64| at(axes[i].1, 1.0 + pad);
    let (px, py) = end(0, 0.08);
    label(svg, f, px, py, "middle", &format!("Portability {}", format_decimal(report.portability)));
    let (sx, sy) = end(1, 0.08);
    label(svg, f, sx, sy, "middle", &format!("Scalability {}", format_decimal(report.scalability)));
    let (kx, ky) = end(2, 0.12);
    label(
        svg,
        f,
        kx,
        ky,
        "middle",
        &format!(
            "Complexity {} (ref {}){}",
            format_decimal(report.complexity),
            format_decimal(reference),
            if clipped { ", clipped" } else { "" }
        ),
    );
}

fn draw_autonomy(svg: &mut Svg, f: Frame, heading: &str, p: &AutonomyProfile) {
    let u = f.unit();
    let (cx, cy) = (f.w / 2.0, f.h / 2.0 + 0.03 * u);
    let r = 0.34 * u;
    // up, right, down, left
    let dirs = [(0.0, -1.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)];
    let metrics = ["operator_independence", "coordination", "self_preservation", "strategy"];
    let values = [p.a_i, p.a_c, p.a_p, p.a_s];
    let at = |dir: (f64, f64), frac: f64| (cx + dir.0 * r * frac, cy + dir.1 * r * frac);

    background(svg, f);
    title(svg, f, heading);
    for quarter in 1..=4 {
        let frac = f64::from(quarter) / 4.0;
        let ring: Vec<_> = dirs.iter().map(|d| at(*d, frac)).collect();
        svg.element(
            "polygon",
            &[
                ("class", s("grid")),
                ("points", points(&ring)),
                ("fill", s("none")),
                ("stroke", s("#cccccc")),
                ("stroke-width", num(0.002 * u)),
            ],
        );
    }
    for (dir, metric) in dirs.iter().zip(metrics) {
        line(svg, "axis", (cx, cy), at(*dir, 1.0), "#333333", 0.004 * u, &[("data-metric", s(metric))]);
    }
    svg.element(
        "circle",
        &[
            ("class", s("center")),
            ("cx", num(cx)),
            ("cy", num(cy)),
            ("r", num(0.006 * u)),
            ("fill", s("#333333")),
        ],
    );
    let vertices: Vec<_> = dirs
        .iter()
        .zip(values)
        .map(|(d, v)| at(*d, v / 100.0))
        .collect();
    svg.element(
        "polygon",
        &[
            ("class", s("autonomy")),
            ("points", points(&vertices)),
            ("fill", s("#2ca02c")),
            ("fill-opacity", s("0.35")),
            ("stroke", s("#2ca02c")),
            ("stroke-width", num(0.005 * u)),
        ],
    );

    let pct = |v: f64| format!("{}%", format_decimal(v));
    label(svg, f, cx, cy - r - 0.03 * u, "middle", &format!("Operator independence {}", pct(p.a_i)));
    label(svg, f, cx, cy + r + 0.06 * u, "middle", &format!("Self-preservation {}", pct(p.a_p)));
    label(svg, f, cx - r, cy - 0.03 * u, "start", &format!("Strategy {}", pct(p.a_s)));
    label(svg, f, cx + r, cy - 0.03 * u, "end", &format!("Coordination {}", pct(p.a_c)));
    label(svg, f, 0.03 * u, f.h - 0.09 * u, "start", "Automation vertical, intelligence horizontal");
    label(svg, f, 0.03 * u, f.h - 0.05 * u, "start", &format!("Strategy: {}; coordination: {}", p.strategy_band, p.coordination_band));

    svg.text(
        &[
            ("class", s("area-label")),
            ("x", num(f.w - 0.03 * u)),
            ("y", num(f.h - 0.09 * u)),
            ("font-size", num(0.032 * u)),
            ("text-anchor", s("end")),
        ],
        "Autonomy",
    );
    svg.text(
        &[
            ("class", s("area-value")),
            ("x", num(f.w - 0.03 * u)),
            ("y", num(f.h - 0.04 * u)),
            ("font-size", num(0.045 * u)),
            ("text-anchor", s("end")),
        ],
        &format_decimal(p.total),
    );
}

fn resolve_reference(spec: &RenderSpec, complexities: impl Iterator<Item = f64>) -> Result<f64, RenderError> {
    match spec.normalization.reference {
        Some(r) if r > 0.0 && r.is_finite() => Ok(r),
        Some(r) => Err(RenderError::NonpositiveReference(r)),
        None => {
            let max = complexities.fold(0.0f64, f64::max);
            Ok(if max > 0.0 { max } else { 1.0 })
        }
    }
}

/// Portability/scalability bar.
pub fn render_modifiability(report: &MetricsReport, spec: &RenderSpec) -> Result<String, RenderError> {
    let f = check_spec(spec)?;
    check_report(report)?;
    let mut svg = Svg::new(f.w, f.h);
    draw_modifiability(&mut svg, f, &format!("Portability and scalability: {}", report.pms), report);
    Ok(svg.finish())
}

/// Portability, scalability and normalized complexity triangle. When the
/// report's complexity exceeds the reference, the vertex is clipped to the
/// axis end and the polygon carries `data-clipped="true"`.
pub fn render_surface(report: &MetricsReport, spec: &RenderSpec) -> Result<String, RenderError> {
    let f = check_spec(spec)?;
    check_report(report)?;
    let reference = resolve_reference(spec, std::iter::once(report.complexity))?;
    let mut svg = Svg::new(f.w, f.h);
    draw_surface(&mut svg, f, &format!("Complexity with portability and scalability: {}", report.pms), report, reference);
    Ok(svg.finish())
}

/// Autonomy radar, annotated with the autonomy total.
pub fn render_autonomy(profile: &AutonomyProfile, spec: &RenderSpec) -> Result<String, RenderError> {
    let f = check_spec(spec)?;
    check_profile(profile)?;
    let mut svg = Svg::new(f.w, f.h);
    draw_autonomy(&mut svg, f, "Autonomy", profile);
    Ok(svg.finish())
}

/// Side-by-side panels, each `spec.width` wide. Report panels share one
/// complexity reference.
pub fn render_panels(items: &[Panel], spec: &RenderSpec) -> Result<String, RenderError> {
    if items.len() < 2 {
        return Err(RenderError::TooFewPanels(items.len()));
    }
    let f = check_spec(spec)?;
    for item in items {
        match &item.content {
            PanelContent::Report(r) => check_report(r)?,
            PanelContent::Autonomy(p) => check_profile(p)?,
        }
    }
    let reference = resolve_reference(
        spec,
        items.iter().filter_map(|p| match &p.content {
            PanelContent::Report(r) => Some(r.complexity),
            PanelContent::Autonomy(_) => None,
        }),
    )?;

    let mut svg = Svg::new(f.w * items.len() as f64, f.h);
    for (i, item) in items.iter().enumerate() {
        svg.open_group(&[
            ("class", s("panel")),
            ("data-index", i.to_string()),
            ("transform", format!("translate({} 0)", num(f.w * i as f64))),
        ]);
        match &item.content {
            PanelContent::Report(r) => draw_surface(&mut svg, f, &item.title, r, reference),
            PanelContent::Autonomy(p) => draw_autonomy(&mut svg, f, &item.title, p),
        }
        if i > 0 {
            line(&mut svg, "separator", (0.0, 0.0), (0.0, f.h), "#999999", 0.003 * f.unit(), &[]);
        }
        svg.close_group();
    }
    Ok(svg.finish())
}
