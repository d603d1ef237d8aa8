//! Colorings, b-coloring verification, and the correspondence between
//! colorings of a graph with stability number at most two and matchings of
//! its complement.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{self, Matching};
use crate::oracle::{self, OracleBudget};
use crate::tree_dp;

/// A vertex coloring with `t` declared classes `0..t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub t: usize,
}

/// Outcome of [`verify_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVerdict {
    pub is_b_coloring: bool,
    /// Classes containing a dominating vertex, ascending.
    pub dominant_classes: Vec<usize>,
    /// `(class, lowest-indexed dominating vertex)` per dominant class.
    pub witnesses: Vec<(usize, usize)>,
}

impl Coloring {
    /// Rejects colors outside `0..t`.
    pub fn new(colors: Vec<usize>, t: usize) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|&(_, &c)| c >= t) {
            return Err(Error::MalformedColoring(format!(
                "vertex {v} has color {c} but only {t} classes are declared"
            )));
        }
        Ok(Coloring { colors, t })
    }

    /// Coloring whose classes are given explicitly; they must partition
    /// `0..n`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut colors = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                if v >= n || colors[v] != usize::MAX {
                    return Err(Error::MalformedColoring(format!(
                        "vertex {v} is out of range or listed twice"
                    )));
                }
                colors[v] = c;
            }
        }
        if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
            return Err(Error::MalformedColoring(format!("vertex {v} has no color")));
        }
        Ok(Coloring {
            colors,
            t: classes.len(),
        })
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.t];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Renumbers classes by their smallest vertex and drops empty ones.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.t];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { colors, t: next }
    }
}

fn check_proper(g: &Graph, c: &Coloring) -> Result<()> {
    if c.colors.len() != g.n() {
        return Err(Error::MalformedColoring(format!(
            "{} colors given for {} vertices",
            c.colors.len(),
            g.n()
        )));
    }
    if c.colors.iter().any(|&x| x >= c.t) {
        return Err(Error::MalformedColoring(
            "color outside declared range".into(),
        ));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| c.colors[u] == c.colors[v]) {
        return Err(Error::ImproperColoring(u, v));
    }
    Ok(())
}

/// Checks properness and non-empty classes, then finds the dominant
/// classes.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<BVerdict> {
    check_proper(g, c)?;
    let mut size = vec![0usize; c.t];
    for &x in &c.colors {
        size[x] += 1;
    }
    if let Some(empty) = size.iter().position(|&s| s == 0) {
        return Err(Error::EmptyClass(empty));
    }
    let mut witness = vec![None; c.t];
    let mut mark = vec![usize::MAX; c.t];
    for v in 0..g.n() {
        let own = c.colors[v];
        if witness[own].is_some() {
            continue;
        }
        let mut seen = 0;
        for &u in g.neighbors(v) {
            let x = c.colors[u];
            if mark[x] != v {
                mark[x] = v;
                seen += 1;
            }
        }
        if seen == c.t - 1 {
            witness[own] = Some(v);
        }
    }
    let witnesses: Vec<(usize, usize)> = witness
        .iter()
        .enumerate()
        .filter_map(|(cl, w)| w.map(|v| (cl, v)))
        .collect();
    Ok(BVerdict {
        is_b_coloring: witnesses.len() == c.t,
        dominant_classes: witnesses.iter().map(|&(cl, _)| cl).collect(),
        witnesses,
    })
}

fn require_stability2(g: &Graph) -> Result<()> {
    if g.stability_at_most_two() {
        Ok(())
    } else {
        Err(Error::StabilityTooLarge)
    }
}

/// Pairs of vertices sharing a class, as a matching of the complement.
pub fn coloring_to_matching(g: &Graph, c: &Coloring) -> Result<Matching> {
    require_stability2(g)?;
    check_proper(g, c)?;
    let mut edges = Vec::new();
    for (cl, class) in c.classes().iter().enumerate() {
        match class.as_slice() {
            [] | [_] => {}
            [u, v] => edges.push((*u, *v)),
            _ => return Err(Error::ClassTooLarge(cl)),
        }
    }
    Ok(Matching::new(edges).expect("classes are disjoint"))
}

/// Matched pairs become two-vertex classes, everything else singletons;
/// classes are ordered by their smallest vertex.
pub fn matching_to_coloring(g: &Graph, m: &Matching) -> Result<Coloring> {
    require_stability2(g)?;
    m.validate(&g.complement())?;
    let mate = m.mates(g.n());
    let mut colors = vec![usize::MAX; g.n()];
    let mut t = 0;
    for v in 0..g.n() {
        if colors[v] == usize::MAX {
            colors[v] = t;
            if let Some(u) = mate[v] {
                colors[u] = t;
            }
            t += 1;
        }
    }
    Ok(Coloring { colors, t })
}

/// Default vertex limit for the exhaustive route of
/// [`b_chromatic_stability2`].
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// b-chromatic number and a maximum b-coloring of a graph with stability
/// number at most two, as `n` minus a minimum strongly maximal matching of
/// the complement.
///
/// The matching comes from the tree program when the complement is a
/// forest, from exhaustive search when `n <= oracle_cap`, and otherwise the
/// instance is refused.
pub fn b_chromatic_stability2(g: &Graph, oracle_cap: usize) -> Result<(usize, Coloring)> {
    require_stability2(g)?;
    let co = g.complement();
    let m = if co.is_forest() && g.n() > 0 {
        tree_dp::min_smm_forest(&co)?.1
    } else if g.n() <= oracle_cap {
        let budget = OracleBudget {
            max_n: oracle_cap,
            ..OracleBudget::default()
        };
        oracle::oracle_min_smm(&co, budget)?.1
    } else {
        return Err(Error::InstanceTooLargeForExactSearch {
            n: g.n(),
            cap: oracle_cap,
        });
    };
    let c = matching_to_coloring(g, &m)?;
    Ok((c.t, c))
}

/// b-colorings with `t, t - 1, ..., chi(g)` classes, each obtained from the
/// previous one by augmenting the complement matching along a shortest
/// augmenting path.
pub fn continuity_chain(g: &Graph, c: &Coloring) -> Result<Vec<Coloring>> {
    require_stability2(g)?;
    if !verify_coloring(g, c)?.is_b_coloring {
        return Err(Error::NotABColoring);
    }
    let co = g.complement();
    let mut m = coloring_to_matching(g, c)?;
    let mut chain = vec![c.clone()];
    while let Some(p) = matching::min_length_augmenting_path(&co, &m)? {
        m = matching::augment(&m, &p)?;
        let next = matching_to_coloring(g, &m)?;
        if !verify_coloring(g, &next)?.is_b_coloring {
            return Err(Error::NotABColoring);
        }
        chain.push(next);
    }
    Ok(chain)
}
