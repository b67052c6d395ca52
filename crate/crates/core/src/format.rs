//! Serializers for pieces, closures, Hasse diagrams, cellular reports and
//! verification tables. Every function returns the full output as a string
//! with a fixed ordering, so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::bruhat::BruhatMatrix;
use crate::cells::CellularReport;
use crate::error::{Error, Result};
use crate::piece::{j_infinity, piece_dimension, PieceIndex};
use crate::twist::Automorphism;
use crate::verify::Outcome;
use crate::weyl::{Element, WeylGroup};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?} (json|csv|dot|text)"))),
        }
    }
}

fn unsupported(what: &str, f: Format) -> Error {
    Error::Parse(format!("format {f:?} is not available for {what}").to_lowercase())
}

#[derive(Serialize)]
pub struct PieceRecord {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub w: Vec<usize>,
    pub dim: usize,
    pub j_inf: Vec<usize>,
}

impl PieceRecord {
    pub fn new(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Self {
        PieceRecord {
            j: p.j.labels(),
            w: g.reduced_word(&p.w),
            dim: piece_dimension(g, d, p),
            j_inf: j_infinity(g, d, p.j, &p.w).expect("pieces are valid").labels(),
        }
    }
}

#[derive(Serialize)]
struct PieceRef {
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: Vec<usize>,
}

impl PieceRef {
    fn new(g: &WeylGroup, p: &PieceIndex) -> Self {
        PieceRef { j: p.j.labels(), w: g.reduced_word(&p.w) }
    }
}

#[derive(Serialize)]
struct Edge {
    from: PieceRef,
    to: PieceRef,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn labels(l: &[usize]) -> String {
    l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `J:{1,2}|w:121`, the node label used in DOT output.
pub fn dot_label(g: &WeylGroup, p: &PieceIndex) -> String {
    format!("J:{}|w:{}", p.j, g.word_string(&p.w))
}

/// Pieces with their `J_inf` and dimension.
pub fn pieces(g: &WeylGroup, d: &Automorphism, list: &[PieceIndex], f: Format) -> Result<String> {
    let records: Vec<PieceRecord> = list.iter().map(|p| PieceRecord::new(g, d, p)).collect();
    Ok(match f {
        Format::Json => json(&records),
        Format::Csv => csv_table(
            &["J", "w", "j_inf", "dim"],
            list.iter().zip(&records).map(|(p, r)| {
                vec![labels(&r.j), g.word_string(&p.w), labels(&r.j_inf), r.dim.to_string()]
            }),
        ),
        Format::Text => list
            .iter()
            .zip(&records)
            .map(|(p, r)| {
                format!("{}\tJ_inf={}\tdim={}\n", p.display(g), p_jinf(g, d, p), r.dim)
            })
            .collect(),
        Format::Dot => return Err(unsupported("piece listings", f)),
    })
}

fn p_jinf(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> crate::subset::Subset {
    j_infinity(g, d, p.j, &p.w).expect("pieces are valid")
}

/// Directed graph on `nodes` with edges `(lower, upper)`.
pub fn relation(g: &WeylGroup, nodes: &[PieceIndex], edges: &[(usize, usize)], f: Format) -> Result<String> {
    Ok(match f {
        Format::Dot => {
            let mut s = String::from("digraph pieces {\n  rankdir=BT;\n  node [shape=box];\n");
            for (k, p) in nodes.iter().enumerate() {
                let _ = writeln!(s, "  n{k} [label=\"{}\"];", dot_label(g, p));
            }
            for &(a, b) in edges {
                let _ = writeln!(s, "  n{a} -> n{b};");
            }
            s.push_str("}\n");
            s
        }
        Format::Json => json(
            &edges
                .iter()
                .map(|&(a, b)| Edge { from: PieceRef::new(g, &nodes[a]), to: PieceRef::new(g, &nodes[b]) })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_table(
            &["from_J", "from_w", "to_J", "to_w"],
            edges.iter().map(|&(a, b)| {
                let (p, q) = (&nodes[a], &nodes[b]);
                vec![labels(&p.j.labels()), g.word_string(&p.w), labels(&q.j.labels()), g.word_string(&q.w)]
            }),
        ),
        Format::Text => edges
            .iter()
            .map(|&(a, b)| format!("{} < {}\n", nodes[a].display(g), nodes[b].display(g)))
            .collect(),
    })
}

#[derive(Serialize)]
struct Violator {
    u: Vec<usize>,
    #[serde(rename = "I2")]
    i2: Vec<usize>,
}

#[derive(Serialize)]
struct ReportDoc {
    finite: bool,
    violator: Option<Violator>,
    alpha_order: Vec<Vec<usize>>,
    cells_by_dim: std::collections::BTreeMap<usize, usize>,
}

pub fn cells(g: &WeylGroup, r: &CellularReport, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => json(&ReportDoc {
            finite: r.finite,
            violator: r.violator.as_ref().map(|(u, k)| Violator { u: g.reduced_word(u), i2: k.labels() }),
            alpha_order: r.alpha_order.iter().map(|u| g.reduced_word(u)).collect(),
            cells_by_dim: r.cells_by_dim.clone(),
        }),
        Format::Csv => csv_table(
            &["dim", "cells"],
            r.cells_by_dim.iter().map(|(d, c)| vec![d.to_string(), c.to_string()]),
        ),
        Format::Text => {
            let mut s = format!("finite: {}\n", r.finite);
            if let Some((u, k)) = &r.violator {
                let _ = writeln!(s, "violator: u={} I2={k}", g.word_string(u));
            }
            if r.finite {
                let order: Vec<String> = r.alpha_order.iter().map(|u| g.word_string(u)).collect();
                let _ = writeln!(s, "alpha order: {}", order.join(" "));
                for (d, c) in &r.cells_by_dim {
                    let _ = writeln!(s, "dim {d}: {c}");
                }
            }
            s
        }
        Format::Dot => return Err(unsupported("cellular reports", f)),
    })
}

/// A list of Weyl group elements.
pub fn elements(g: &WeylGroup, list: &[Element], f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => json(&list.iter().map(|u| g.reduced_word(u)).collect::<Vec<_>>()),
        Format::Csv => csv_table(
            &["w", "length"],
            list.iter().map(|u| vec![g.word_string(u), u.length().to_string()]),
        ),
        Format::Text => list.iter().map(|u| format!("{}\n", g.word_string(u))).collect(),
        Format::Dot => return Err(unsupported("element lists", f)),
    })
}

#[derive(Serialize)]
struct BruhatDoc {
    elements: Vec<Vec<usize>>,
    rows: Vec<String>,
}

/// The Bruhat order; DOT shows covering relations only.
pub fn bruhat(g: &WeylGroup, m: &BruhatMatrix, f: Format) -> Result<String> {
    let els = g.elements();
    Ok(match f {
        Format::Json => json(&BruhatDoc {
            elements: els.iter().map(|u| g.reduced_word(u)).collect(),
            rows: m.to_rows(),
        }),
        Format::Csv => {
            let mut header = vec!["w".to_string()];
            header.extend(els.iter().map(|u| g.word_string(u)));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_table(
                &header,
                els.iter().enumerate().map(|(a, u)| {
                    let mut row = vec![g.word_string(u)];
                    row.extend((0..els.len()).map(|b| if m.leq(a, b) { "1" } else { "0" }.to_string()));
                    row
                }),
            )
        }
        Format::Text => els
            .iter()
            .zip(m.to_rows())
            .map(|(u, row)| format!("{}\t{row}\n", g.word_string(u)))
            .collect(),
        Format::Dot => {
            let mut s = String::from("digraph bruhat {\n  rankdir=BT;\n");
            for (k, u) in els.iter().enumerate() {
                let _ = writeln!(s, "  n{k} [label=\"{}\"];", g.word_string(u));
            }
            for (a, u) in els.iter().enumerate() {
                for (b, v) in els.iter().enumerate() {
                    if v.length() == u.length() + 1 && m.leq(a, b) {
                        let _ = writeln!(s, "  n{a} -> n{b};");
                    }
                }
            }
            s.push_str("}\n");
            s
        }
    })
}

#[derive(Serialize)]
struct OutcomeDoc<'a> {
    setting: &'a str,
    check: &'a str,
    name: &'a str,
    cases: usize,
    passed: bool,
    failure: Option<&'a str>,
}

/// One row per (setting, check).
pub fn verification(outcomes: &[Outcome], f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => json(
            &outcomes
                .iter()
                .map(|o| OutcomeDoc {
                    setting: &o.setting,
                    check: o.check.slug(),
                    name: o.check.name(),
                    cases: o.cases,
                    passed: o.passed(),
                    failure: o.failure.as_deref(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_table(
            &["setting", "check", "cases", "result", "failure"],
            outcomes.iter().map(|o| {
                vec![
                    o.setting.clone(),
                    o.check.slug().to_string(),
                    o.cases.to_string(),
                    if o.passed() { "PASS" } else { "FAIL" }.to_string(),
                    o.failure.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            let width = outcomes.iter().map(|o| o.setting.len()).max().unwrap_or(0);
            let mut s = String::new();
            for o in outcomes {
                let _ = write!(
                    s,
                    "{}  {:width$}  {:16} {:>8} cases  {}",
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.setting,
                    o.check.slug(),
                    o.cases,
                    o.check.name(),
                );
                if let Some(msg) = &o.failure {
                    let _ = write!(s, "\n      {msg}");
                }
                s.push('\n');
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            let _ = writeln!(s, "{} checks, {failed} failed", outcomes.len());
            s
        }
        Format::Dot => return Err(unsupported("verification tables", f)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::cellular_report;
    use crate::closure::hasse_diagram;
    use crate::piece::enumerate_pieces;

    fn a1() -> (WeylGroup, Automorphism) {
        let g = WeylGroup::from_type("A1").unwrap();
        let d = Automorphism::identity(g.system());
        (g, d)
    }

    #[test]
    fn piece_listings() {
        let (g, d) = a1();
        let ps = enumerate_pieces(&g, &d);
        let j = pieces(&g, &d, &ps, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v[0], serde_json::json!({"J": [1], "w": [], "dim": 3, "j_inf": [1]}));
        assert_eq!(v[2], serde_json::json!({"J": [], "w": [1], "dim": 1, "j_inf": []}));
        let c = pieces(&g, &d, &ps, Format::Csv).unwrap();
        assert_eq!(c, "J,w,j_inf,dim\n1,e,1,3\n,e,,2\n,1,,1\n");
        let t = pieces(&g, &d, &ps, Format::Text).unwrap();
        assert_eq!(t.lines().next(), Some("({1},e)\tJ_inf={1}\tdim=3"));
        assert!(pieces(&g, &d, &ps, Format::Dot).is_err());
    }

    #[test]
    fn hasse_dot_and_edges() {
        let (g, d) = a1();
        let (nodes, edges) = hasse_diagram(&g, &d, &enumerate_pieces(&g, &d));
        let dot = relation(&g, &nodes, &edges, Format::Dot).unwrap();
        assert!(dot.contains("n0 [label=\"J:{1}|w:e\"];"));
        assert!(dot.contains("n2 -> n1;") && dot.contains("n1 -> n0;"));
        let v: serde_json::Value = serde_json::from_str(&relation(&g, &nodes, &edges, Format::Json).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert!(v[0].get("from").is_some() && v[0].get("to").is_some());
    }

    #[test]
    fn report_schema() {
        let (g, d) = a1();
        let p = PieceIndex::parse("J=;w=", &g, &d).unwrap();
        let v: serde_json::Value = serde_json::from_str(&cells(&g, &cellular_report(&g, &d, &p), Format::Json).unwrap()).unwrap();
        assert_eq!(v["finite"], true);
        assert_eq!(v["violator"], serde_json::Value::Null);
        assert_eq!(v["cells_by_dim"], serde_json::json!({"0": 1, "1": 2, "2": 1}));
        assert!(v["alpha_order"].is_array());
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("yaml".parse::<Format>().is_err());
    }
}
