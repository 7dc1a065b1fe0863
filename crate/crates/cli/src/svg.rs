//! Minimal SVG writer: a data-to-pixel frame plus polylines, segments, markers and cells.

use std::fmt::Write;

#[derive(Debug, Clone, Copy)]
pub struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
    height: f64,
}

const MARGIN: f64 = 20.0;

impl Frame {
    /// Maps the bounding box of `pts` into the canvas. With `equal` both axes share a scale.
    pub fn fit(
        pts: impl IntoIterator<Item = (f64, f64)>,
        width: u32,
        height: u32,
        equal: bool,
    ) -> Frame {
        let (mut xl, mut xh, mut yl, mut yh) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for (x, y) in pts {
            if x.is_finite() && y.is_finite() {
                xl = xl.min(x);
                xh = xh.max(x);
                yl = yl.min(y);
                yh = yh.max(y);
            }
        }
        if !xl.is_finite() {
            (xl, xh, yl, yh) = (0.0, 1.0, 0.0, 1.0);
        }
        if xh - xl <= 0.0 {
            xl -= 0.5;
            xh += 0.5;
        }
        if yh - yl <= 0.0 {
            yl -= 0.5;
            yh += 0.5;
        }
        let (w, h) = (width as f64 - 2.0 * MARGIN, height as f64 - 2.0 * MARGIN);
        let (mut sx, mut sy) = (w / (xh - xl), h / (yh - yl));
        if equal {
            let s = sx.min(sy);
            xl -= 0.5 * (w / s - (xh - xl));
            yl -= 0.5 * (h / s - (yh - yl));
            sx = s;
            sy = s;
        }
        Frame {
            x0: xl,
            y0: yl,
            sx,
            sy,
            height: height as f64,
        }
    }

    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.x0) * self.sx,
            self.height - MARGIN - (y - self.y0) * self.sy,
        )
    }
}

pub struct Svg {
    width: u32,
    height: u32,
    body: String,
}

fn points_attr(frame: &Frame, pts: &[(f64, f64)]) -> String {
    let mut s = String::with_capacity(pts.len() * 16);
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (px, py) = frame.map(x, y);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{px:.3},{py:.3}");
    }
    s
}

impl Svg {
    pub fn new(width: u32, height: u32) -> Svg {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<rect width="{width}" height="{height}" fill="white"/>"#
        );
        Svg {
            width,
            height,
            body,
        }
    }

    pub fn title(&mut self, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="14" font-family="sans-serif" font-size="12">{}</text>"#,
            MARGIN,
            escape(text)
        );
    }

    pub fn polyline(
        &mut self,
        frame: &Frame,
        id: &str,
        pts: &[(f64, f64)],
        stroke: &str,
        dash: Option<&str>,
    ) {
        let dash = dash
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            self.body,
            r#"<polyline id="{id}" data-count="{}" fill="none" stroke="{stroke}" stroke-width="1"{dash} points="{}"/>"#,
            pts.len(),
            points_attr(frame, pts)
        );
    }

    pub fn segment(
        &mut self,
        frame: &Frame,
        class: &str,
        a: (f64, f64),
        b: (f64, f64),
        stroke: &str,
    ) {
        let (x1, y1) = frame.map(a.0, a.1);
        let (x2, y2) = frame.map(b.0, b.1);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="1"/>"#
        );
    }

    pub fn marker(&mut self, frame: &Frame, class: &str, p: (f64, f64), r: f64, fill: &str) {
        let (cx, cy) = frame.map(p.0, p.1);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{cx:.3}" cy="{cy:.3}" r="{r}" fill="{fill}"/>"#
        );
    }

    /// Filled rectangle spanning data corners a and b.
    pub fn cell(&mut self, frame: &Frame, a: (f64, f64), b: (f64, f64), fill: &str) {
        let (x1, y1) = frame.map(a.0, a.1);
        let (x2, y2) = frame.map(b.0, b.1);
        let _ = writeln!(
            self.body,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            x1.min(x2),
            y1.min(y2),
            (x2 - x1).abs(),
            (y2 - y1).abs()
        );
    }

    /// Axis lines through data zero, where zero is inside the frame's span.
    pub fn axes(&mut self, frame: &Frame, xr: (f64, f64), yr: (f64, f64)) {
        if yr.0 <= 0.0 && 0.0 <= yr.1 {
            self.segment(frame, "axis", (xr.0, 0.0), (xr.1, 0.0), "#bbbbbb");
        }
        if xr.0 <= 0.0 && 0.0 <= xr.1 {
            self.segment(frame, "axis", (0.0, yr.0), (0.0, yr.1), "#bbbbbb");
        }
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn bounds(pts: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let f = |sel: fn(&(f64, f64)) -> f64| {
        pts.iter()
            .map(sel)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    (f(|p| p.0), f(|p| p.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_corners() {
        let f = Frame::fit([(0.0, 0.0), (1.0, 2.0)], 100, 200, false);
        assert_eq!(f.map(0.0, 0.0), (20.0, 180.0));
        assert_eq!(f.map(1.0, 2.0), (80.0, 20.0));
    }

    #[test]
    fn document_shape() {
        let mut s = Svg::new(50, 50);
        let f = Frame::fit([(0.0, 0.0), (1.0, 1.0)], 50, 50, true);
        s.polyline(&f, "p", &[(0.0, 0.0), (1.0, 1.0)], "black", None);
        let doc = s.finish();
        assert!(doc.starts_with("<?xml"));
        assert!(doc.trim_end().ends_with("</svg>"));
        assert!(doc.contains(r#"data-count="2""#));
    }
}
