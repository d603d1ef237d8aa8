//! Text formats: edge lists, tree-cograph expressions, matchings,
//! colorings and gadget maps.
//!
//! Edge list:
//! ```text
//! # comment
//! p 4 3
//! e 0 1
//! e 1 2
//! e 2 3
//! ```
//! Tree-cograph expressions are s-expressions such as
//! `(join (tree 1) (union (tree 2 0 1) (cotree 4 0 1 1 2 2 3)))`, where a
//! leaf lists its vertex count followed by edge pairs, or names an edge-list
//! file. Leaves take consecutive vertex ids from left to right.

use std::fmt::Write as _;
use std::path::Path;

use crate::bcoloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::reduction::Gadget;
use crate::tcexpr::{Leaf, TcExpr};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| {
        perr(
            line,
            format!("expected a non-negative integer, got `{tok}`"),
        )
    })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| perr(0, "missing `p <n> <m>` header"))?;
    let (n, m) = match header.as_slice() {
        ["p", n, m] => (num(n, hl)?, num(m, hl)?),
        _ => return Err(perr(hl, "expected `p <n> <m>`")),
    };
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (ln, toks) in lines {
        let (u, v) = match toks.as_slice() {
            ["e", u, v] => (num(u, ln)?, num(v, ln)?),
            _ => return Err(perr(ln, "expected `e <u> <v>`")),
        };
        if u >= v || v >= n {
            return Err(perr(
                ln,
                format!("edge {u} {v} must satisfy 0 <= u < v < {n}"),
            ));
        }
        g.add_edge(u, v).map_err(|e| perr(ln, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(perr(
            hl,
            format!("header declares {m} edges, found {count}"),
        ));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

#[derive(Debug)]
enum Tok<'a> {
    Open(usize),
    Close(usize),
    Atom(&'a str, usize),
}

fn tokenize(text: &str) -> Vec<Tok<'_>> {
    let mut toks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = line.split('#').next().unwrap();
        let mut start = None;
        for (j, ch) in code.char_indices() {
            let delim = ch == '(' || ch == ')' || ch.is_whitespace();
            if delim {
                if let Some(s) = start.take() {
                    toks.push(Tok::Atom(&code[s..j], line_no));
                }
                match ch {
                    '(' => toks.push(Tok::Open(line_no)),
                    ')' => toks.push(Tok::Close(line_no)),
                    _ => {}
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if let Some(s) = start {
            toks.push(Tok::Atom(&code[s..], line_no));
        }
    }
    toks
}

struct TcxParser<'a, 'p> {
    toks: Vec<Tok<'a>>,
    pos: usize,
    offset: usize,
    base: Option<&'p Path>,
}

impl TcxParser<'_, '_> {
    fn line(&self) -> usize {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(Tok::Open(l) | Tok::Close(l) | Tok::Atom(_, l)) => *l,
            None => 0,
        }
    }

    fn expr(&mut self) -> Result<TcExpr> {
        let line = self.line();
        match self.toks.get(self.pos) {
            Some(Tok::Open(_)) => self.pos += 1,
            _ => return Err(perr(line, "expected `(`")),
        }
        let kind = match self.toks.get(self.pos) {
            Some(Tok::Atom(a, _)) => *a,
            _ => return Err(perr(line, "expected tree, cotree, union or join")),
        };
        self.pos += 1;
        let e = match kind {
            "tree" | "cotree" => {
                let t = self.leaf_graph(line)?;
                if !t.is_tree() {
                    return Err(perr(line, "leaf graph is not a tree"));
                }
                let leaf = Leaf::with_offset(t, self.offset);
                self.offset += leaf.labels.len();
                if kind == "tree" {
                    TcExpr::Tree(leaf)
                } else {
                    TcExpr::CoTree(leaf)
                }
            }
            "union" | "join" => {
                let mut cs = Vec::new();
                while matches!(self.toks.get(self.pos), Some(Tok::Open(_))) {
                    cs.push(self.expr()?);
                }
                if cs.len() < 2 {
                    return Err(perr(line, format!("{kind} needs at least two children")));
                }
                if kind == "union" {
                    TcExpr::Union(cs)
                } else {
                    TcExpr::Join(cs)
                }
            }
            other => return Err(perr(line, format!("unknown node `{other}`"))),
        };
        match self.toks.get(self.pos) {
            Some(Tok::Close(_)) => self.pos += 1,
            _ => return Err(perr(self.line(), "expected `)`")),
        }
        Ok(e)
    }

    fn leaf_graph(&mut self, line: usize) -> Result<Graph> {
        let mut atoms = Vec::new();
        while let Some(Tok::Atom(a, l)) = self.toks.get(self.pos) {
            atoms.push((*a, *l));
            self.pos += 1;
        }
        match atoms.as_slice() {
            [] => Err(perr(line, "empty leaf")),
            [(path, l)] if path.parse::<usize>().is_err() => {
                let full = match self.base {
                    Some(b) => b.join(path),
                    None => Path::new(path).to_path_buf(),
                };
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| perr(*l, format!("cannot read {}: {e}", full.display())))?;
                parse_edge_list(&text)
            }
            [(n, l), rest @ ..] => {
                let n = num(n, *l)?;
                if rest.len() % 2 == 1 {
                    return Err(perr(*l, "odd number of endpoints in inline leaf"));
                }
                let mut g = Graph::empty(n);
                for pair in rest.chunks(2) {
                    let (u, v) = (num(pair[0].0, pair[0].1)?, num(pair[1].0, pair[1].1)?);
                    g.add_edge(u, v)
                        .map_err(|e| perr(pair[0].1, e.to_string()))?;
                }
                Ok(g)
            }
        }
    }
}

/// Parses a tree-cograph expression; file leaves are resolved against
/// `base` when given.
pub fn parse_tcx(text: &str, base: Option<&Path>) -> Result<TcExpr> {
    let mut p = TcxParser {
        toks: tokenize(text),
        pos: 0,
        offset: 0,
        base,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(p.line(), "trailing input after expression"));
    }
    Ok(e)
}

/// Inline s-expression. Vertex ids are re-derived from leaf order when the
/// text is parsed back.
pub fn write_tcx(e: &TcExpr) -> String {
    match e {
        TcExpr::Tree(l) | TcExpr::CoTree(l) => {
            let kind = if matches!(e, TcExpr::Tree(_)) {
                "tree"
            } else {
                "cotree"
            };
            let mut s = format!("({kind} {}", l.tree.n());
            for (u, v) in l.tree.edges() {
                write!(s, " {u} {v}").unwrap();
            }
            s.push(')');
            s
        }
        TcExpr::Union(cs) | TcExpr::Join(cs) => {
            let kind = if matches!(e, TcExpr::Union(_)) {
                "union"
            } else {
                "join"
            };
            let parts: Vec<String> = cs.iter().map(write_tcx).collect();
            format!("({kind} {})", parts.join(" "))
        }
    }
}

/// One edge `u v` per line.
pub fn parse_matching(text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for (ln, toks) in content_lines(text) {
        match toks.as_slice() {
            [u, v] => edges.push((num(u, ln)?, num(v, ln)?)),
            _ => return Err(perr(ln, "expected `<u> <v>`")),
        }
    }
    Matching::new(edges)
}

pub fn write_matching(m: &Matching) -> String {
    m.edges().map(|(u, v)| format!("{u} {v}\n")).collect()
}

/// One `<vertex> <class>` line per vertex of an `n`-vertex graph. The class
/// count is one more than the largest class index.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let mut colors = vec![None; n];
    for (ln, toks) in content_lines(text) {
        let (v, c) = match toks.as_slice() {
            [v, c] => (num(v, ln)?, num(c, ln)?),
            _ => return Err(perr(ln, "expected `<vertex> <class>`")),
        };
        if v >= n {
            return Err(perr(
                ln,
                format!("vertex {v} out of range for {n} vertices"),
            ));
        }
        if colors[v].replace(c).is_some() {
            return Err(perr(ln, format!("vertex {v} colored twice")));
        }
    }
    let colors: Vec<usize> = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| perr(0, format!("vertex {v} has no class"))))
        .collect::<Result<_>>()?;
    let t = colors.iter().max().map_or(0, |&c| c + 1);
    Coloring::new(colors, t)
}

pub fn write_coloring(c: &Coloring) -> String {
    c.colors
        .iter()
        .enumerate()
        .map(|(v, x)| format!("{v} {x}\n"))
        .collect()
}

/// `map: <u> <v> -> <8 ids>` per source edge.
pub fn write_gadget_map(g: &Gadget) -> String {
    let mut out = String::new();
    for &((u, v), x) in &g.edge_map {
        let ids: Vec<String> = x.iter().map(usize::to_string).collect();
        writeln!(out, "map: {u} {v} -> {}", ids.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        let text = "# a comment\np 3 2\ne 0 1\n\ne 1 2\n";
        assert_eq!(parse_edge_list(text).unwrap(), Graph::path(3));
    }

    #[test]
    fn edge_list_rejections() {
        for bad in [
            "p 3 1\ne 1 0\n",
            "p 3 1\ne 0 3\n",
            "p 3 2\ne 0 1\ne 0 1\n",
            "p 3 2\ne 0 1\n",
            "e 0 1\n",
            "p 3 1\nx 0 1\n",
        ] {
            assert!(
                matches!(parse_edge_list(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
        match parse_edge_list("p 3 1\ne 0 9\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tcx_parsing_assigns_offsets() {
        let e = parse_tcx(
            "(join (tree 1) (union (tree 2 0 1) (cotree 4 0 1 1 2 2 3)))",
            None,
        )
        .unwrap();
        e.validate().unwrap();
        assert_eq!(e.vertex_count(), 7);
        let g = e.to_graph();
        // Vertex 0 is joined to everything else.
        assert_eq!(g.degree(0), 6);
        assert_eq!(parse_tcx(&write_tcx(&e), None).unwrap(), e);
    }

    #[test]
    fn tcx_rejections() {
        for bad in [
            "(tree 3 0 1 1 2",
            "(union (tree 1))",
            "(forest 1)",
            "(tree 3 0 1)",
            "(tree 1) x",
        ] {
            assert!(parse_tcx(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn tcx_file_leaf() {
        let dir = std::env::temp_dir().join(format!("bchrom-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("p3.g"), write_edge_list(&Graph::path(3))).unwrap();
        let e = parse_tcx("(join (tree p3.g) (tree 1))", Some(&dir)).unwrap();
        assert_eq!(e.vertex_count(), 4);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn matching_and_coloring_round_trip() {
        let m = Matching::new([(3, 4), (0, 1)]).unwrap();
        assert_eq!(write_matching(&m), "0 1\n3 4\n");
        assert_eq!(parse_matching(&write_matching(&m)).unwrap(), m);
        let c = Coloring::new(vec![0, 1, 0, 2], 3).unwrap();
        assert_eq!(parse_coloring(&write_coloring(&c), 4).unwrap(), c);
        assert!(parse_coloring("0 0\n", 2).is_err());
        assert!(parse_coloring("0 0\n0 1\n", 1).is_err());
    }
}
