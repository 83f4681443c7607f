//! Deterministic artifact encoding. All numeric formatting routes through
//! fixed-width or 12-significant-digit forms so identical runs produce
//! byte-identical files regardless of worker count.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut buf = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Io(format!("cannot encode {}: {e}", path.display())))?;
    buf.push(b'\n');
    write_bytes(path, &buf)
}

/// Quote a CSV field only when it needs it (commas, quotes, newlines).
pub fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub struct CsvTable {
    lines: Vec<String>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable { lines: vec![header.join(",")] }
    }

    pub fn row(&mut self, fields: &[String]) {
        let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        self.lines.push(quoted.join(","));
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text = self.lines.join("\n");
        text.push('\n');
        write_bytes(path, text.as_bytes())
    }
}

/// Stroke-only SVG figure at 100 units per coordinate unit, y pointing up.
pub struct SvgCanvas {
    shapes: Vec<String>,
    min: (f64, f64),
    max: (f64, f64),
}

const SCALE: f64 = 100.0;

impl SvgCanvas {
    pub fn new() -> Self {
        SvgCanvas {
            shapes: Vec::new(),
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn cover(&mut self, p: (f64, f64)) {
        self.min.0 = self.min.0.min(p.0);
        self.min.1 = self.min.1.min(p.1);
        self.max.0 = self.max.0.max(p.0);
        self.max.1 = self.max.1.max(p.1);
    }

    fn map(&mut self, p: (f64, f64)) -> (f64, f64) {
        let q = (p.0 * SCALE, -p.1 * SCALE);
        self.cover(q);
        q
    }

    /// Closed polygon outline in workbench coordinates.
    pub fn polygon(&mut self, points: &[(f64, f64)]) {
        let mapped: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        self.shapes.push(format!(
            "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
            mapped.join(" ")
        ));
    }

    pub fn segment(&mut self, a: (f64, f64), b: (f64, f64)) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        self.shapes.push(format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"black\" stroke-width=\"1\"/>"
        ));
    }

    /// Small stroked marker for a lattice center.
    pub fn marker(&mut self, c: (f64, f64)) {
        let (x, y) = self.map(c);
        self.shapes.push(format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"none\" \
             stroke=\"black\" stroke-width=\"1\"/>"
        ));
    }

    pub fn finish(&self) -> String {
        let (w, h, x0, y0) = if self.shapes.is_empty() {
            (100.0, 100.0, 0.0, 0.0)
        } else {
            let margin = 10.0;
            (
                self.max.0 - self.min.0 + 2.0 * margin,
                self.max.1 - self.min.1 + 2.0 * margin,
                self.min.0 - margin,
                self.min.1 - margin,
            )
        };
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.2} {y0:.2} {w:.2} {h:.2}\">\n"
        );
        for s in &self.shapes {
            out.push_str("  ");
            out.push_str(s);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_fields_quote_commas_and_quotes() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("pair z=[1, 2]"), "\"pair z=[1, 2]\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn svg_canvas_frames_its_content() {
        let mut canvas = SvgCanvas::new();
        canvas.polygon(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        canvas.marker((0.5, 0.5));
        let text = canvas.finish();
        assert!(text.starts_with("<svg"));
        assert!(text.contains("viewBox=\"-10.00 -110.00 120.00 120.00\""));
        assert!(text.contains("fill=\"none\""));
        assert_eq!(text.matches("<circle").count(), 1);
    }
}
