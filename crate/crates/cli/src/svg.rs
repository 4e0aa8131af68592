//! Minimal self-contained SVG line and scatter charts.
//!
//! Output is a pure function of the chart description, so repeated runs
//! produce identical files.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Dashed,
    Markers,
    /// Horizontal-then-vertical steps between successive points.
    Steps,
    /// Vertical segments from `y = 0`, with a dot on top.
    Stems,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>, style: Style) -> Self {
        Series {
            label: label.into(),
            points,
            style,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Fixed x range; `None` fits the data.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    pub series: Vec<Series>,
}

impl Chart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Chart {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x_range: None,
            y_range: None,
            series: Vec::new(),
        }
    }

    pub fn with(mut self, s: Series) -> Self {
        self.series.push(s);
        self
    }

    fn data_range(&self, pick: impl Fn(&(f64, f64)) -> f64, with_zero: bool) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.series {
            for p in s
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
            {
                lo = lo.min(pick(p));
                hi = hi.max(pick(p));
            }
        }
        if with_zero {
            lo = lo.min(0.0);
            hi = hi.max(0.0);
        }
        if !lo.is_finite() {
            return (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
            return (lo - pad, hi + pad);
        }
        (lo, hi)
    }

    pub fn render(&self) -> String {
        let has_stems = self.series.iter().any(|s| s.style == Style::Stems);
        let (x0, x1) = self
            .x_range
            .unwrap_or_else(|| self.data_range(|p| p.0, false));
        let (y0, y1) = self.y_range.unwrap_or_else(|| {
            let (lo, hi) = self.data_range(|p| p.1, has_stems);
            let pad = 0.05 * (hi - lo);
            (if lo == 0.0 { 0.0 } else { lo - pad }, hi + pad)
        });
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let mut o = String::new();
        let _ = writeln!(
            o,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            o,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            o,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            c(LEFT + pw / 2.0),
            escape(&self.title)
        );
        let _ = writeln!(
            o,
            r#"<g class="plot-area" data-x-min="{}" data-x-max="{}" data-y-min="{}" data-y-max="{}">"#,
            crate::format::num(x0),
            crate::format::num(x1),
            crate::format::num(y0),
            crate::format::num(y1)
        );
        let _ = writeln!(
            o,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333"/>"##,
            c(LEFT),
            c(TOP),
            c(pw),
            c(ph)
        );
        for t in ticks(x0, x1) {
            let x = sx(t);
            let _ = writeln!(
                o,
                r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#333"/><text x="{0}" y="{3}" text-anchor="middle">{4}</text>"##,
                c(x),
                c(TOP + ph),
                c(TOP + ph + 5.0),
                c(TOP + ph + 18.0),
                tick_label(t)
            );
        }
        for t in ticks(y0, y1) {
            let y = sy(t);
            let _ = writeln!(
                o,
                r##"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#333"/><text x="{3}" y="{4}" text-anchor="end">{5}</text>"##,
                c(LEFT - 5.0),
                c(y),
                c(LEFT),
                c(LEFT - 8.0),
                c(y + 4.0),
                tick_label(t)
            );
        }
        let _ = writeln!(
            o,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            c(LEFT + pw / 2.0),
            c(HEIGHT - 14.0),
            escape(&self.x_label)
        );
        let _ = writeln!(
            o,
            r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
            c(TOP + ph / 2.0),
            escape(&self.y_label)
        );

        let inside = |p: &&(f64, f64)| p.0.is_finite() && p.1.is_finite() && p.0 >= x0 && p.0 <= x1;
        for (k, s) in self.series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let pts: Vec<&(f64, f64)> = s.points.iter().filter(inside).collect();
            let _ = writeln!(o, r#"<g class="series" data-label="{}">"#, escape(&s.label));
            match s.style {
                Style::Line | Style::Dashed | Style::Steps => {
                    let mut path = String::new();
                    for (i, p) in pts.iter().enumerate() {
                        if i > 0 && s.style == Style::Steps {
                            let _ = write!(path, "{},{} ", c(sx(p.0)), c(sy(pts[i - 1].1)));
                        }
                        let _ = write!(path, "{},{} ", c(sx(p.0)), c(sy(p.1)));
                    }
                    let dash = if s.style == Style::Dashed {
                        r#" stroke-dasharray="6 4""#
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        o,
                        r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                        path.trim_end()
                    );
                }
                Style::Markers => {
                    for p in &pts {
                        let _ = writeln!(
                            o,
                            r#"<circle cx="{}" cy="{}" r="2.2" fill="{color}"/>"#,
                            c(sx(p.0)),
                            c(sy(p.1))
                        );
                    }
                }
                Style::Stems => {
                    for p in &pts {
                        let _ = writeln!(
                            o,
                            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="{color}" stroke-width="1.5"/><circle cx="{0}" cy="{2}" r="3" fill="{color}"/>"#,
                            c(sx(p.0)),
                            c(sy(0.0)),
                            c(sy(p.1))
                        );
                    }
                }
            }
            let ly = TOP + 10.0 + 18.0 * k as f64;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                o,
                r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{color}" stroke-width="2"/><text x="{3}" y="{4}">{5}</text>"#,
                c(lx),
                c(ly),
                c(lx + 18.0),
                c(lx + 24.0),
                c(ly + 4.0),
                escape(&s.label)
            );
            o.push_str("</g>\n");
        }
        o.push_str("</g>\n</svg>\n");
        o
    }
}

fn c(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn tick_label(t: f64) -> String {
    let s = format!("{:.6}", t);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Round tick positions covering `[lo, hi]`, about five of them.
pub fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round_and_cover() {
        assert_eq!(
            ticks(0.0, 1.0),
            vec![0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0]
        );
        let t = ticks(-5.2, 5.2);
        assert_eq!(t, vec![-5.0, 0.0, 5.0]);
        assert_eq!(ticks(1.0, 1.0), vec![1.0]);
    }

    #[test]
    fn render_is_deterministic_and_escaped() {
        let chart = Chart::new("a < b & c", "x", "y")
            .with(Series::new("s", vec![(0.0, 1.0), (1.0, 2.0)], Style::Line))
            .with(Series::new("t", vec![(0.5, 0.5)], Style::Stems));
        let a = chart.render();
        assert_eq!(a, chart.render());
        assert!(a.contains("a &lt; b &amp; c"));
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn fixed_range_is_recorded() {
        let mut chart = Chart::new("t", "x", "y").with(Series::new(
            "s",
            vec![(-10.0, 1.0), (10.0, 2.0)],
            Style::Line,
        ));
        chart.x_range = Some((-5.0, 5.0));
        let svg = chart.render();
        assert!(svg.contains(r#"data-x-min="-5""#));
        assert!(svg.contains(r#"data-x-max="5""#));
    }
}
