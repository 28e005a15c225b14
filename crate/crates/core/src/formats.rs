//! Text formats read and written by the command-line tool.
//!
//! Graphs:
//!
//! ```text
//! # path on three vertices
//! n 3
//! e 0 1
//! e 1 2
//! ```
//!
//! Words are comma-separated vertex indices (`()` or an empty string is the
//! empty word). Polynomials are `;`-separated `COEF:WORD` terms, where `COEF`
//! is a complex number such as `2`, `-0.5i` or `1+2i`. Group specs are
//! `cyclic:k` or `sym:3`, comma-separated when given per vertex. Matrices
//! are `;`-separated rows of `,`-separated entries.

use thiserror::Error;

use crate::dilate::Polynomial;
use crate::graphwords::{format_word, SimplicialGraph, Vertex, WordError, MAX_VERTICES};
use crate::groups::{FiniteGroup, GroupError};
use crate::mathcore::{CMatrix, C64};
use crate::staralg::{StarError, ThetaSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Graph { line: usize, msg: String },
    #[error("bad word `{0}`")]
    Word(String),
    #[error("bad polynomial term `{0}`")]
    Term(String),
    #[error("bad matrix `{0}`")]
    Matrix(String),
    #[error("bad list `{0}`")]
    List(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Words(#[from] WordError),
    #[error(transparent)]
    Spec(#[from] StarError),
    #[error("json: {0}")]
    Json(String),
}

fn graph_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Graph { line, msg: msg.into() }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| graph_err(line, format!("`{tok}` is not an index")))
}

pub fn parse_graph(text: &str) -> Result<SimplicialGraph, FormatError> {
    let mut graph: Option<SimplicialGraph> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match (toks[0], &mut graph) {
            ("n", None) => {
                if toks.len() != 2 {
                    return Err(graph_err(line, "expected `n <count>`"));
                }
                let n = parse_index(toks[1], line)?;
                if n == 0 || n > MAX_VERTICES {
                    return Err(graph_err(line, format!("vertex count must be in 1..={MAX_VERTICES}")));
                }
                graph = Some(SimplicialGraph::edgeless(n)?);
            }
            ("n", Some(_)) => return Err(graph_err(line, "vertex count given twice")),
            ("e", None) => return Err(graph_err(line, "edge before `n`")),
            ("e", Some(g)) => {
                if toks.len() != 3 {
                    return Err(graph_err(line, "expected `e <i> <j>`"));
                }
                let (i, j) = (parse_index(toks[1], line)?, parse_index(toks[2], line)?);
                g.add_edge(i, j).map_err(|e| graph_err(line, e.to_string()))?;
            }
            (t, _) => return Err(graph_err(line, format!("unknown directive `{t}`"))),
        }
    }
    graph.ok_or_else(|| graph_err(0, "missing `n <count>`"))
}

pub fn write_graph(g: &SimplicialGraph) -> String {
    let mut out = format!("n {}\n", g.n_vertices());
    for (i, j) in g.edges() {
        out.push_str(&format!("e {i} {j}\n"));
    }
    out
}

pub fn parse_word(text: &str) -> Result<Vec<Vertex>, FormatError> {
    let t = text.trim();
    if t.is_empty() || t == "()" {
        return Ok(Vec::new());
    }
    t.split(',').map(|s| s.trim().parse().map_err(|_| FormatError::Word(text.to_string()))).collect()
}

/// Word parsed and checked against the graph.
pub fn parse_word_on(g: &SimplicialGraph, text: &str) -> Result<Vec<Vertex>, FormatError> {
    let w = parse_word(text)?;
    g.check_word(&w)?;
    Ok(w)
}

pub fn write_word(w: &[Vertex]) -> String {
    format_word(w)
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, FormatError> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| FormatError::List(text.to_string())))
        .collect()
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, FormatError> {
    Ok(FiniteGroup::from_spec(text)?)
}

pub fn parse_groups(text: &str) -> Result<Vec<FiniteGroup>, FormatError> {
    text.split(',').map(parse_group).collect()
}

fn parse_coef(s: &str) -> Option<C64> {
    let s = s.trim();
    let z: C64 = match s {
        "i" | "+i" => C64::new(0.0, 1.0),
        "-i" => C64::new(0.0, -1.0),
        _ => s.parse().ok()?,
    };
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, FormatError> {
    let mut terms = Vec::new();
    for term in text.split(';') {
        if term.trim().is_empty() {
            continue;
        }
        let (c, w) = term.split_once(':').ok_or_else(|| FormatError::Term(term.to_string()))?;
        let coef = parse_coef(c).ok_or_else(|| FormatError::Term(term.to_string()))?;
        terms.push((coef, parse_word(w)?));
    }
    if terms.is_empty() {
        return Err(FormatError::Term(text.to_string()));
    }
    Ok(Polynomial { terms })
}

fn write_coef(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub fn write_polynomial(p: &Polynomial) -> String {
    p.terms.iter().map(|(c, w)| format!("{}:{}", write_coef(*c), format_word(w))).collect::<Vec<_>>().join(";")
}

/// Rows separated by `;`, entries by `,`; entries as in polynomial
/// coefficients.
pub fn parse_matrix(text: &str) -> Result<CMatrix, FormatError> {
    let bad = || FormatError::Matrix(text.to_string());
    let rows: Vec<Vec<C64>> = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|e| parse_coef(e).ok_or_else(bad)).collect())
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(bad());
    }
    let n = rows.len();
    CMatrix::new(n, cols, rows.into_iter().flatten().collect()).map_err(|_| bad())
}

pub fn write_matrix(m: &CMatrix) -> String {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| write_coef(m[(i, j)])).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Deserializes and validates a spec document.
pub fn parse_theta_spec(json: &str) -> Result<ThetaSpec, FormatError> {
    serde_json::from_str(json).map_err(|e| FormatError::Json(e.to_string()))
}

pub fn write_theta_spec(spec: &ThetaSpec) -> String {
    serde_json::to_string_pretty(spec).expect("specs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_with_comments() {
        let g = parse_graph("# p3\nn 3\ne 0 1 # first\n\ne 1 2\n").unwrap();
        assert_eq!(g, SimplicialGraph::path(3).unwrap());
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("e 0 1\n"), Err(FormatError::Graph { line: 1, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 0\n"), Err(FormatError::Graph { line: 2, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 2\n"), Err(FormatError::Graph { line: 2, .. })));
        assert!(parse_graph("n 0\n").is_err());
        assert!(parse_graph("n 2\nn 3\n").is_err());
        assert!(parse_graph("# nothing\n").is_err());
        assert!(parse_graph("n 2\nx 1\n").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_word("()").unwrap(), Vec::<usize>::new());
        assert!(parse_word("1,,2").is_err());
        let g = SimplicialGraph::edgeless(2).unwrap();
        assert!(parse_word_on(&g, "0,2").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_polynomial("1:0;-0.5i:0,1;2+1i:()").unwrap();
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[1], (C64::new(0.0, -0.5), vec![0, 1]));
        assert_eq!(p.terms[2], (C64::new(2.0, 1.0), vec![]));
        assert_eq!(parse_polynomial(&write_polynomial(&p)).unwrap(), p);
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x:0").is_err());
        assert!(parse_polynomial("NaN:0").is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("0.5,0;1i,-2").unwrap();
        assert_eq!(m[(1, 0)], C64::new(0.0, 1.0));
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("1,2;3").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn groups() {
        let gs = parse_groups("cyclic:2,sym:3").unwrap();
        assert_eq!(gs[1].order(), 6);
        assert!(parse_group("cyclic:0").is_err());
    }
}
