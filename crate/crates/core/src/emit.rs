//! Deterministic CSV, JSON and SVG renderings of a [`FractalGraph`].

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::FractalGraph;
use crate::rational::{decimal_string, exact_string, parse_rational, round_half_up};

const SVG_WIDTH: i64 = 700;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Format::Svg),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse {
                what: "format",
                token: s.to_string(),
            }),
        }
    }
}

/// The plotted window `[xmin, xmax] x [ymin, ymax]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewport {
    pub xmin: BigRational,
    pub xmax: BigRational,
    pub ymin: BigRational,
    pub ymax: BigRational,
}

impl Viewport {
    pub fn new(
        xmin: BigRational,
        xmax: BigRational,
        ymin: BigRational,
        ymax: BigRational,
    ) -> Result<Self> {
        if xmin >= xmax || ymin >= ymax {
            return Err(Error::EmptyViewport);
        }
        Ok(Viewport {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    fn width(&self) -> BigRational {
        &self.xmax - &self.xmin
    }

    fn height(&self) -> BigRational {
        &self.ymax - &self.ymin
    }
}

/// `(-4, 3) x (-4, 1)`, the window of the approximation figure.
impl Default for Viewport {
    fn default() -> Self {
        let int = |v: i64| BigRational::from_integer(v.into());
        Viewport {
            xmin: int(-4),
            xmax: int(3),
            ymin: int(-4),
            ymax: int(1),
        }
    }
}

impl FromStr for Viewport {
    type Err = Error;

    /// `xmin,xmax,ymin,ymax`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                what: "viewport",
                token: s.to_string(),
            });
        }
        let v = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>>>()?;
        let [xmin, xmax, ymin, ymax]: [BigRational; 4] = v.try_into().expect("four parts");
        Viewport::new(xmin, xmax, ymin, ymax)
    }
}

/// Serializes `graph`; identical inputs give identical bytes.
pub fn emit(
    graph: &FractalGraph,
    format: Format,
    viewport: &Viewport,
    precision: usize,
) -> Result<Vec<u8>> {
    if viewport.xmin >= viewport.xmax || viewport.ymin >= viewport.ymax {
        return Err(Error::EmptyViewport);
    }
    match format {
        Format::Csv => emit_csv(graph, precision),
        Format::Json => emit_json(graph, precision),
        Format::Svg => Ok(emit_svg(graph, viewport).into_bytes()),
    }
}

fn emit_csv(graph: &FractalGraph, precision: usize) -> Result<Vec<u8>> {
    let io = |e: csv::Error| Error::OutOfDomain(format!("csv: {e}"));
    let mut out = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["seq", "x_exact", "y_exact", "x_dec", "y_dec"])
            .map_err(io)?;
        for node in &graph.nodes {
            let (x, y) = (node.point.x.as_ratio(), node.point.y.as_ratio());
            w.write_record([
                node.seq.to_string(),
                exact_string(x),
                exact_string(y),
                decimal_string(x, precision),
                decimal_string(y, precision),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::OutOfDomain(e.to_string()))?;
    }
    out.push(b'\n');
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["parent_seq", "child_seq"]).map_err(io)?;
        for &(p, c) in &graph.edges {
            w.write_record([
                graph.nodes[p].seq.to_string(),
                graph.nodes[c].seq.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::OutOfDomain(e.to_string()))?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct JsonGraph {
    depth: usize,
    nodes: Vec<JsonNode>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct JsonNode {
    seq: Vec<u64>,
    x: String,
    y: String,
    x_dec: String,
    y_dec: String,
}

fn emit_json(graph: &FractalGraph, precision: usize) -> Result<Vec<u8>> {
    let doc = JsonGraph {
        depth: graph.depth,
        nodes: graph
            .nodes
            .iter()
            .map(|n| {
                let (x, y) = (n.point.x.as_ratio(), n.point.y.as_ratio());
                JsonNode {
                    seq: n.seq.values(),
                    x: exact_string(x),
                    y: exact_string(y),
                    x_dec: decimal_string(x, precision),
                    y_dec: decimal_string(y, precision),
                }
            })
            .collect(),
        edges: graph.edges.iter().map(|&(p, c)| [p, c]).collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| Error::OutOfDomain(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// Fixed-point rendering with `decimals` places, half away from zero.
fn fixed(r: &BigRational, decimals: u32) -> String {
    let scale = BigInt::from(10u8).pow(decimals);
    let n = round_half_up(&(r.abs() * BigRational::from_integer(scale.clone())));
    let sign = if r.is_negative() && !n.is_zero() {
        "-"
    } else {
        ""
    };
    let int = &n / &scale;
    let frac = &n % &scale;
    format!(
        "{sign}{int}.{:0>width$}",
        frac.to_string(),
        width = decimals as usize
    )
}

struct Canvas<'a> {
    view: &'a Viewport,
    width: BigRational,
    height: BigRational,
}

impl Canvas<'_> {
    fn px(&self, x: &BigRational) -> String {
        fixed(
            &((x - &self.view.xmin) / self.view.width() * &self.width),
            3,
        )
    }

    // y grows downward in SVG
    fn py(&self, y: &BigRational) -> String {
        fixed(
            &((&self.view.ymax - y) / self.view.height() * &self.height),
            3,
        )
    }
}

fn emit_svg(graph: &FractalGraph, view: &Viewport) -> String {
    let width = BigRational::from_integer(SVG_WIDTH.into());
    let height = round_half_up(&(&width * view.height() / view.width())).max(BigInt::from(1));
    let canvas = Canvas {
        view,
        width: width.clone(),
        height: BigRational::from_integer(height.clone()),
    };
    let zero = BigRational::zero();

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // axes and the diagonal y = x
    let corner = |x: &BigRational, y: &BigRational| format!("{},{}", canvas.px(x), canvas.py(y));
    let _ = writeln!(
        s,
        r#"<path class="axis" d="M{} L{} M{} L{}" stroke="gray" stroke-width="0.5" fill="none"/>"#,
        corner(&view.xmin, &zero),
        corner(&view.xmax, &zero),
        corner(&zero, &view.ymin),
        corner(&zero, &view.ymax),
    );
    let lo = (&view.xmin).max(&view.ymin).clone();
    let hi = (&view.xmax).min(&view.ymax).clone();
    if lo < hi {
        let _ = writeln!(
            s,
            r#"<path class="diagonal" d="M{} L{}" stroke="gray" stroke-width="0.5" stroke-dasharray="4 3" fill="none"/>"#,
            corner(&lo, &lo),
            corner(&hi, &hi),
        );
    }

    let _ = writeln!(s, r#"<g stroke="black" stroke-width="0.6">"#);
    for &(p, c) in &graph.edges {
        let (a, b) = (&graph.nodes[p].point, &graph.nodes[c].point);
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            canvas.px(a.x.as_ratio()),
            canvas.py(a.y.as_ratio()),
            canvas.px(b.x.as_ratio()),
            canvas.py(b.y.as_ratio()),
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="steelblue">"#);
    for node in &graph.nodes {
        let _ = writeln!(
            s,
            r#"<circle class="node" cx="{}" cy="{}" r="1.5" data-seq="{}"/>"#,
            canvas.px(node.point.x.as_ratio()),
            canvas.py(node.point.y.as_ratio()),
            node.seq,
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
