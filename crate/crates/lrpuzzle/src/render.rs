//! ASCII and SVG drawings of fillings.

use std::fmt::Write;

use crate::engine::{down_index, up_index, Filling};
use crate::pieces::{display_label, Dangle, LabelTree, Orient};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

pub fn render(f: &Filling, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(f),
        RenderFormat::Svg => render_svg(f),
    }
}

/// Halves of equivariant pieces carry an internal label whose leaves do not decrease.
fn is_equivariant_half(f: &Filling, idx: usize) -> bool {
    f.cells[idx].part.labels.iter().any(|l| display_label(l).parse::<LabelTree>().map(|t| !t.is_valid()).unwrap_or(false))
}

fn gashes(f: &Filling) -> Vec<(usize, usize, String, String)> {
    let mut v = Vec::new();
    for (idx, c) in f.cells.iter().enumerate() {
        if let Some((side, outer)) = &c.part.gash {
            v.push((idx, *side, display_label(&c.part.labels[*side]).to_string(), outer.clone()));
        }
    }
    v
}

fn cell_name(f: &Filling, idx: usize) -> String {
    let c = &f.cells[idx];
    let o = if c.part.orient == Orient::Up { 'U' } else { 'D' };
    format!("{o}({},{})", c.row, c.col)
}

/// Text drawing: each row is a line of slanted edges followed by a line of
/// bottom edges, with labels written beside their edges, then a legend of
/// equivariant halves and gashes.
pub fn render_ascii(f: &Filling) -> String {
    let n = f.n;
    let lw = f.cells.iter().flat_map(|c| c.part.labels.iter()).map(|l| display_label(l).len()).max().unwrap_or(1);
    let w = (lw + 2) & !1;
    let width = 2 * n * w + w + 1;
    let col = |i: usize, j: usize| (n - i) * w + 2 * j * w;
    let mut lines = vec![vec![' '; width]; 2 * n + 1];
    let put = |line: &mut Vec<char>, at: usize, s: &str| {
        for (k, ch) in s.chars().enumerate() {
            if at + k < line.len() {
                line[at + k] = ch;
            }
        }
    };
    put(&mut lines[0], col(0, 0), ".");
    for r in 1..=n {
        for c in 1..=r {
            let apex = col(r - 1, c - 1);
            let u = up_index(r, c);
            let mid = &mut lines[2 * r - 1];
            put(mid, apex - w / 2, "/");
            put(mid, apex + w / 2, "\\");
            let left = display_label(&f.cells[u].part.labels[0]);
            let right = display_label(&f.cells[u].part.labels[1]);
            put(mid, apex - w / 2 + 1, &format!("{left:<width$}", width = w - 1));
            put(mid, apex + w / 2 + 1, &format!("{right:<width$}", width = w - 1));
            let bottom = display_label(&f.cells[u].part.labels[2]);
            let seg = format!("{bottom:_^width$}", width = 2 * w - 1);
            put(&mut lines[2 * r], col(r, c - 1) + 1, &seg);
            put(&mut lines[2 * r], col(r, c - 1), ".");
            put(&mut lines[2 * r], col(r, c), ".");
        }
    }
    let mut out: String = lines.iter().map(|l| l.iter().collect::<String>().trim_end().to_string() + "\n").collect();
    for idx in 0..f.cells.len() {
        if f.cells[idx].part.orient == Orient::Up && is_equivariant_half(f, idx) {
            let c = &f.cells[idx];
            let (i, j) = crate::engine::eqvar_indices(n, c.row, c.col);
            let _ = writeln!(out, "equivariant {}+D({},{}) (i,j)=({i},{j})", cell_name(f, idx), c.row + 1, c.col);
        }
    }
    for (idx, side, inner, outer) in gashes(f) {
        let _ = writeln!(out, "gash {} side {side}: inside {inner}, outside {outer}", cell_name(f, idx));
    }
    for c in &f.cells {
        match c.part.dangle {
            Some(Dangle::SouthWest) => {
                let _ = writeln!(out, "dangle SW below D({},{})", c.row, c.col);
            }
            Some(Dangle::SouthEast) => {
                let _ = writeln!(out, "dangle SE below D({},{})", c.row, c.col);
            }
            None => {}
        }
    }
    out
}

const UNIT: f64 = 60.0;
const MARGIN: f64 = 20.0;

fn vertex(i: usize, j: usize, n: usize) -> (f64, f64) {
    let h = UNIT * 3f64.sqrt() / 2.0;
    (MARGIN + (n as f64 - i as f64) * UNIT / 2.0 + j as f64 * UNIT, MARGIN + i as f64 * h)
}

/// Vertices of a cell, listed so that side s joins corners s and s+1.
fn corners(f: &Filling, idx: usize) -> [(f64, f64); 3] {
    let c = &f.cells[idx];
    let (r, col, n) = (c.row, c.col, f.n);
    match c.part.orient {
        Orient::Up => [vertex(r, col - 1, n), vertex(r - 1, col - 1, n), vertex(r, col, n)],
        Orient::Down => [vertex(r - 1, col - 1, n), vertex(r - 1, col, n), vertex(r, col, n)],
    }
}

/// Endpoints of side `s` of a cell: Up sides are (left, right, bottom), Down
/// sides are (top, right, left).
fn side_points(f: &Filling, idx: usize, s: usize) -> ((f64, f64), (f64, f64)) {
    let k = corners(f, idx);
    (k[s], k[(s + 1) % 3])
}

fn centroid(k: &[(f64, f64); 3]) -> (f64, f64) {
    ((k[0].0 + k[1].0 + k[2].0) / 3.0, (k[0].1 + k[1].1 + k[2].1) / 3.0)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 drawing. Equivariant halves are shaded, gashed sides are drawn in
/// red and dangling gashes dashed.
pub fn render_svg(f: &Filling) -> String {
    let n = f.n;
    let (wd, ht) = (2.0 * MARGIN + n as f64 * UNIT, 2.0 * MARGIN + n as f64 * UNIT * 3f64.sqrt() / 2.0 + 10.0);
    let fs = UNIT / 5.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{wd:.1}\" height=\"{ht:.1}\" viewBox=\"0 0 {wd:.1} {ht:.1}\">"
    );
    let _ = writeln!(out, "<title>{} * {} -> {}</title>", f.alpha, f.beta, f.gamma);
    for idx in 0..f.cells.len() {
        let k = corners(f, idx);
        let fill = if is_equivariant_half(f, idx) { "#cfe0f4" } else { "#ffffff" };
        let class = if is_equivariant_half(f, idx) { "cell equivariant" } else { "cell" };
        let _ = writeln!(
            out,
            "<polygon class=\"{class}\" points=\"{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}\" fill=\"{fill}\" stroke=\"#333333\" stroke-width=\"1\"/>",
            k[0].0, k[0].1, k[1].0, k[1].1, k[2].0, k[2].1
        );
    }
    for idx in 0..f.cells.len() {
        let k = corners(f, idx);
        let cen = centroid(&k);
        let cell = &f.cells[idx];
        for s in 0..3 {
            let shared_from_up = cell.part.orient == Orient::Down && cell.part.gash.as_ref().map(|g| g.0) != Some(s);
            if shared_from_up {
                continue;
            }
            let (a, b) = side_points(f, idx, s);
            let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let p = (m.0 + 0.28 * (cen.0 - m.0), m.1 + 0.28 * (cen.1 - m.1) + fs / 3.0);
            let label = xml_escape(display_label(&cell.part.labels[s]));
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"{fs:.1}\" text-anchor=\"middle\">{label}</text>",
                p.0, p.1
            );
        }
        if let Some((s, _)) = &cell.part.gash {
            let (a, b) = side_points(f, idx, *s);
            let _ = writeln!(
                out,
                "<line class=\"gash\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#c0392b\" stroke-width=\"4\"/>",
                a.0, a.1, b.0, b.1
            );
        }
        if let Some(d) = cell.part.dangle {
            let (r, c) = (cell.row, cell.col);
            let ((a, b), side) = match d {
                Dangle::SouthWest => (side_points(f, down_index(r + 1, c), 1), "sw"),
                Dangle::SouthEast => (side_points(f, up_index(r + 1, c + 1), 1), "se"),
            };
            let _ = writeln!(
                out,
                "<line class=\"dangle {side}\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#c0392b\" stroke-width=\"3\" stroke-dasharray=\"6,4\"/>",
                a.0, a.1, b.0, b.1
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::enumerate_fillings;
    use crate::pieces::Theory;

    #[test]
    fn basic_pair_renders_distinctly() {
        let fs = enumerate_fillings(4, "0101", "0101", &Theory::H.pieces(), None).unwrap();
        assert_eq!(fs.len(), 2);
        assert_ne!(render_ascii(&fs[0]), render_ascii(&fs[1]));
        assert_ne!(render_svg(&fs[0]), render_svg(&fs[1]));
    }

    #[test]
    fn single_triangle() {
        let fs = enumerate_fillings(1, "1", "1", &Theory::H.pieces(), None).unwrap();
        let svg = render_svg(&fs[0]);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(render_ascii(&fs[0]).contains('/'));
    }

    #[test]
    fn kt_third_puzzle_marks() {
        let fs = enumerate_fillings(3, "010", "010", &Theory::KT.pieces(), None).unwrap();
        let marked: Vec<String> = fs.iter().map(render_svg).filter(|s| s.contains("class=\"gash\"")).collect();
        assert_eq!(marked.len(), 1);
        assert_eq!(marked[0].matches("cell equivariant").count(), 2);
        assert_eq!(marked[0].matches("class=\"gash\"").count(), 1);
    }
}
