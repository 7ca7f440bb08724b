//! SVG rendering of a representation: one row per interval, filled dots for
//! closed ends, hollow dots for open ends, dashed zone lines.

use std::fmt::Write;

use mixint::interval::IntervalRecord;
use mixint::Rational;

const WIDTH: f64 = 640.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const ROW: f64 = 24.0;
const TOP: f64 = 20.0;
const DOT: f64 = 4.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(records: &[IntervalRecord], zones: &[Rational]) -> String {
    let height = TOP * 2.0 + ROW * records.len() as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    let values: Vec<Rational> = records.iter().flat_map(|r| [r.l, r.r]).chain(zones.iter().copied()).collect();
    if let (Some(lo), Some(hi)) = (values.iter().min(), values.iter().max()) {
        let (lo, hi) = (lo.to_f64(), hi.to_f64());
        let span = if hi > lo { hi - lo } else { 1.0 };
        let x = |v: Rational| LEFT + (v.to_f64() - lo) / span * (WIDTH - LEFT - RIGHT);
        for z in zones {
            writeln!(
                out,
                r##"  <line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
                x(*z),
                TOP / 2.0,
                height - TOP / 2.0
            )
            .unwrap();
        }
        for (i, r) in records.iter().enumerate() {
            let y = TOP + ROW * (i as f64 + 0.5);
            writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{}</text>"#, LEFT - 10.0, y + 4.0, esc(&r.v)).unwrap();
            writeln!(out, r#"  <line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="2"/>"#, x(r.l), x(r.r)).unwrap();
            for (v, closed) in [(r.l, r.lc), (r.r, r.rc)] {
                let fill = if closed { "black" } else { "white" };
                writeln!(out, r#"  <circle cx="{:.2}" cy="{y:.2}" r="{DOT}" fill="{fill}" stroke="black"/>"#, x(v)).unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
