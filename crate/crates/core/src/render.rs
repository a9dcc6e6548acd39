//! ASCII and SVG drawings of lattice paths.

use std::fmt::Write;

use crate::labeled::LabeledPath;
use crate::paths::{LatticePath, Step};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub labels: bool,
    pub levels: bool,
}

/// What gets drawn: the column of the north step in each row, optional
/// labels, and the box `[0,a] × [0,b]`.
struct Figure {
    a: i64,
    b: i64,
    xs: Vec<i64>,
    labels: Option<Vec<usize>>,
}

impl Figure {
    fn of_path(q: &LatticePath) -> Self {
        let mut x = 0;
        let mut xs = Vec::new();
        for s in q.steps() {
            match s {
                Step::E => x += 1,
                Step::N => xs.push(x),
            }
        }
        Figure {
            a: q.a(),
            b: q.b(),
            xs,
            labels: None,
        }
    }

    fn of_labeled(q: &LabeledPath) -> Self {
        Figure {
            a: q.a(),
            b: q.b(),
            xs: q.xs().to_vec(),
            labels: Some(q.labels().to_vec()),
        }
    }

    fn width(&self) -> i64 {
        self.a.max(self.xs.last().copied().unwrap_or(0))
    }

    fn overflow(&self) -> bool {
        self.xs.last().is_some_and(|&x| x > self.a)
    }

    fn points(&self) -> Vec<(i64, i64)> {
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for &nx in &self.xs {
            while x < nx {
                x += 1;
                pts.push((x, y));
            }
            y += 1;
            pts.push((x, y));
        }
        while x < self.a {
            x += 1;
            pts.push((x, y));
        }
        pts
    }

    fn level(&self, (x, y): (i64, i64)) -> i64 {
        self.a * y - self.b * x
    }
}

const CELL: usize = 4;

fn ascii(fig: &Figure, opts: RenderOptions) -> String {
    let w = fig.width() as usize;
    let h = fig.b as usize;
    let cols = w * CELL + 6;
    let mut grid = vec![vec![' '; cols]; 2 * h + 1];
    let row_of = |y: i64| 2 * (h - y as usize);

    for y in 0..=h as i64 {
        for x in 0..=w as i64 {
            grid[row_of(y)][x as usize * CELL] = '.';
        }
    }
    for half in 0..=2 * h {
        let y2 = half as i64;
        // the diagonal crosses height y2/2 at x = a·y2 / 2b
        let col = (fig.a * y2 * CELL as i64 + fig.b) / (2 * fig.b);
        let row = 2 * h - half;
        if (col as usize) < cols {
            grid[row][col as usize] = '/';
        }
    }
    let pts = fig.points();
    for pair in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        if y1 == y0 {
            for c in 1..CELL {
                grid[row_of(y0)][x0 as usize * CELL + c] = '_';
            }
        } else {
            grid[row_of(y0) - 1][x0 as usize * CELL] = '|';
        }
        grid[row_of(y0)][x0 as usize * CELL] = 'o';
        grid[row_of(y1)][x1 as usize * CELL] = 'o';
    }
    if opts.labels {
        if let Some(labels) = &fig.labels {
            for (r, (&x, &l)) in fig.xs.iter().zip(labels).enumerate() {
                let row = row_of(r as i64) - 1;
                for (i, ch) in l.to_string().chars().enumerate() {
                    let col = x as usize * CELL + 1 + i;
                    if col < cols {
                        grid[row][col] = ch;
                    }
                }
            }
        }
    }
    if fig.overflow() {
        for (r, line) in grid.iter_mut().enumerate() {
            if r % 2 == 1 || r == 0 {
                line[fig.a as usize * CELL] = '!';
            }
        }
    }

    let mut out = String::new();
    for line in grid {
        let s: String = line.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    if fig.overflow() {
        let top = fig.xs[fig.xs.len() - 1];
        let _ = writeln!(out, "overflow: top north step at x={top}, past a={}", fig.a);
    }
    if opts.levels {
        let _ = write!(out, "levels:");
        for p in &pts {
            let _ = write!(out, " ({},{})={}", p.0, p.1, fig.level(*p));
        }
        out.push('\n');
    }
    out
}

pub fn ascii_path(q: &LatticePath, opts: RenderOptions) -> String {
    ascii(&Figure::of_path(q), opts)
}

pub fn ascii_labeled(q: &LabeledPath, opts: RenderOptions) -> String {
    ascii(&Figure::of_labeled(q), opts)
}

const UNIT: i64 = 40;
const MARGIN: i64 = 30;

fn svg(fig: &Figure, opts: RenderOptions) -> String {
    let w = fig.width();
    let (pw, ph) = (w * UNIT + 2 * MARGIN, fig.b * UNIT + 2 * MARGIN);
    let px = |x: i64| MARGIN + x * UNIT;
    let py = |y: i64| MARGIN + (fig.b - y) * UNIT;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw}" height="{ph}" viewBox="0 0 {pw} {ph}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"<g stroke="#ccc" stroke-width="1">"##);
    for x in 0..=w {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            px(x),
            py(0),
            py(fig.b)
        );
    }
    for y in 0..=fig.b {
        let _ = writeln!(
            out,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            py(y),
            px(0),
            px(w)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c33" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        px(0),
        py(0),
        px(fig.a),
        py(fig.b)
    );
    if fig.overflow() {
        let _ = writeln!(
            out,
            r##"<line class="overflow" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#e80" stroke-width="3"/>"##,
            px(fig.a),
            py(0) + 10,
            py(fig.b) - 10
        );
    }
    let pts = fig.points();
    let coords: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline class="path" points="{}" fill="none" stroke="black" stroke-width="3"/>"#,
        coords.join(" ")
    );
    if opts.labels {
        if let Some(labels) = &fig.labels {
            for (r, (&x, &l)) in fig.xs.iter().zip(labels).enumerate() {
                let _ = writeln!(
                    out,
                    r#"<text class="label" x="{}" y="{}" font-family="sans-serif" font-size="16">{l}</text>"#,
                    px(x) + 6,
                    py(r as i64) - UNIT / 2 + 6
                );
            }
        }
    }
    if opts.levels {
        for &p in &pts {
            let _ = writeln!(
                out,
                r##"<text class="level" x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#36c">{}</text>"##,
                px(p.0) + 3,
                py(p.1) + 13,
                fig.level(p)
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    out
}

pub fn svg_path(q: &LatticePath, opts: RenderOptions) -> String {
    svg(&Figure::of_path(q), opts)
}

pub fn svg_labeled(q: &LabeledPath, opts: RenderOptions) -> String {
    svg(&Figure::of_labeled(q), opts)
}
