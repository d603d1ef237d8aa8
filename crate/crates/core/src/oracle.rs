//! Exhaustive reference implementations. Kept deliberately plain: every
//! polynomial routine in the crate is tested against these.

use crate::cost::Cost;
use crate::dominance::DominanceVector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{self, Matching};

/// Limits on exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_states: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 16,
            max_states: 100_000_000,
        }
    }
}

impl OracleBudget {
    fn check(&self, g: &Graph) -> Result<Meter> {
        if g.n() > self.max_n {
            return Err(Error::TooManyVertices {
                n: g.n(),
                max_n: self.max_n,
            });
        }
        Ok(Meter {
            used: 0,
            max: self.max_states,
        })
    }
}

struct Meter {
    used: u64,
    max: u64,
}

impl Meter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::BudgetExceeded(self.max))
        } else {
            Ok(())
        }
    }
}

/// Calls `f` on every matching of `g`, built by including or excluding
/// edges in `(u, v)` order.
pub fn for_each_matching<F>(g: &Graph, budget: OracleBudget, mut f: F) -> Result<()>
where
    F: FnMut(&Matching),
{
    let mut meter = budget.check(g)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut used = vec![false; g.n()];
    let mut current = Matching::empty();
    rec_matchings(&edges, 0, &mut used, &mut current, &mut meter, &mut f)
}

fn rec_matchings<F: FnMut(&Matching)>(
    edges: &[(usize, usize)],
    i: usize,
    used: &mut [bool],
    current: &mut Matching,
    meter: &mut Meter,
    f: &mut F,
) -> Result<()> {
    meter.tick()?;
    if i == edges.len() {
        f(current);
        return Ok(());
    }
    rec_matchings(edges, i + 1, used, current, meter, f)?;
    let (u, v) = edges[i];
    if !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        current.insert(u, v);
        rec_matchings(edges, i + 1, used, current, meter, f)?;
        current.remove(u, v);
        used[u] = false;
        used[v] = false;
    }
    Ok(())
}

/// Calls `f(colors, t)` on every proper coloring of `g`, each partition
/// visited once (classes numbered by first occurrence).
pub fn for_each_coloring<F>(g: &Graph, budget: OracleBudget, mut f: F) -> Result<()>
where
    F: FnMut(&[usize], usize),
{
    let mut meter = budget.check(g)?;
    let mut colors = vec![usize::MAX; g.n()];
    rec_colorings(g, 0, 0, &mut colors, &mut meter, &mut f)
}

fn rec_colorings<F: FnMut(&[usize], usize)>(
    g: &Graph,
    v: usize,
    used: usize,
    colors: &mut [usize],
    meter: &mut Meter,
    f: &mut F,
) -> Result<()> {
    meter.tick()?;
    if v == g.n() {
        f(colors, used);
        return Ok(());
    }
    for c in 0..=used {
        if g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
            continue;
        }
        colors[v] = c;
        rec_colorings(g, v + 1, used.max(c + 1), colors, meter, f)?;
    }
    colors[v] = usize::MAX;
    Ok(())
}

/// Number of classes of `colors` (with `t` classes) that contain a vertex
/// adjacent to every other class.
pub fn dominant_class_count(g: &Graph, colors: &[usize], t: usize) -> usize {
    let mut dominant = vec![false; t];
    let mut seen = vec![usize::MAX; t];
    for v in 0..g.n() {
        if dominant[colors[v]] {
            continue;
        }
        let mut count = 0;
        for &u in g.neighbors(v) {
            let c = colors[u];
            if seen[c] != v {
                seen[c] = v;
                count += 1;
            }
        }
        if count == t - 1 {
            dominant[colors[v]] = true;
        }
    }
    dominant.iter().filter(|&&d| d).count()
}

pub fn oracle_min_smm(g: &Graph, budget: OracleBudget) -> Result<(usize, Matching)> {
    let mut best: Option<Matching> = None;
    for_each_matching(g, budget, |m| {
        if best.as_ref().is_some_and(|b| b.len() <= m.len()) {
            return;
        }
        if matching::is_strongly_maximal(g, m).unwrap() {
            best = Some(m.clone());
        }
    })?;
    let m = best.expect("a maximum matching is strongly maximal");
    Ok((m.len(), m))
}

pub fn oracle_min_maximal_matching(g: &Graph, budget: OracleBudget) -> Result<(usize, Matching)> {
    let mut best: Option<Matching> = None;
    for_each_matching(g, budget, |m| {
        if best.as_ref().is_some_and(|b| b.len() <= m.len()) {
            return;
        }
        if matching::is_maximal(g, m).unwrap() {
            best = Some(m.clone());
        }
    })?;
    let m = best.expect("a maximum matching is maximal");
    Ok((m.len(), m))
}

/// Dominance vector: for each `t` from `chi` to `n`, the largest number of
/// dominant classes over proper colorings with exactly `t` classes.
pub fn oracle_dominance(g: &Graph, budget: OracleBudget) -> Result<DominanceVector> {
    let n = g.n();
    let mut best: Vec<Option<usize>> = vec![None; n + 1];
    for_each_coloring(g, budget, |colors, t| {
        let d = dominant_class_count(g, colors, t);
        if best[t].is_none_or(|b| d > b) {
            best[t] = Some(d);
        }
    })?;
    let chi = best.iter().position(Option::is_some).unwrap_or(0);
    let values = best[chi..]
        .iter()
        .map(|b| b.expect("every t >= chi is colorable"))
        .collect();
    Ok(DominanceVector::new(chi, values))
}

pub fn oracle_chi_b(g: &Graph, budget: OracleBudget) -> Result<usize> {
    Ok(oracle_dominance(g, budget)?.b_chromatic())
}

pub fn oracle_chromatic(g: &Graph, budget: OracleBudget) -> Result<usize> {
    let mut chi = usize::MAX;
    for_each_coloring(g, budget, |_, t| chi = chi.min(t))?;
    Ok(chi)
}

/// Minimum of `S1 + S2` over matchings with exactly `k` edges.
pub fn oracle_f_t_k(g: &Graph, k: usize, budget: OracleBudget) -> Result<Cost> {
    let mut best = Cost::INF;
    for_each_matching(g, budget, |m| {
        if m.len() == k {
            let (s1, s2) = matching::s1_s2(g, m).unwrap();
            best = best.min(Cost::new(s1 + s2));
        }
    })?;
    Ok(best)
}

/// Size of a maximum matching, by enumeration.
pub fn matching_number(g: &Graph) -> usize {
    let mut best = 0;
    for_each_matching(g, OracleBudget::default(), |m| best = best.max(m.len())).unwrap();
    best
}

/// All maximal matchings, in enumeration order.
pub fn maximal_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching(g, OracleBudget::default(), |m| {
        if matching::is_maximal(g, m).unwrap() {
            out.push(m.clone());
        }
    })
    .unwrap();
    out
}

/// Edge count of a shortest augmenting path, by depth-first search over
/// all simple alternating paths.
pub fn shortest_augmenting_length(g: &Graph, m: &Matching) -> Option<usize> {
    let mate = m.mates(g.n());
    let mut best = None;
    let mut visited = vec![false; g.n()];
    for s in (0..g.n()).filter(|&v| mate[v].is_none()) {
        visited[s] = true;
        alt_dfs(g, &mate, s, 0, &mut visited, &mut best);
        visited[s] = false;
    }
    best
}

fn alt_dfs(
    g: &Graph,
    mate: &[Option<usize>],
    x: usize,
    len: usize,
    visited: &mut [bool],
    best: &mut Option<usize>,
) {
    if best.is_some_and(|b| len + 1 >= b) {
        return;
    }
    for &y in g.neighbors(x) {
        if visited[y] {
            continue;
        }
        match mate[y] {
            None => *best = Some(len + 1),
            Some(z) if !visited[z] => {
                visited[y] = true;
                visited[z] = true;
                alt_dfs(g, mate, z, len + 2, visited, best);
                visited[y] = false;
                visited[z] = false;
            }
            Some(_) => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    fn pivoted_tree() -> Graph {
        Graph::from_edges(
            11,
            [
                (0, 1),
                (1, 2),
                (1, 3),
                (0, 4),
                (2, 5),
                (2, 6),
                (3, 7),
                (3, 8),
                (4, 9),
                (4, 10),
            ],
        )
        .unwrap()
    }

    #[test]
    fn min_smm_examples() {
        assert_eq!(oracle_min_smm(&Graph::path(6), b()).unwrap().0, 2);
        assert_eq!(oracle_min_smm(&Graph::path(5), b()).unwrap().0, 2);
        assert_eq!(oracle_min_smm(&Graph::complete(2), b()).unwrap().0, 1);
    }

    #[test]
    fn chi_b_examples() {
        assert_eq!(oracle_chi_b(&Graph::complete(4), b()).unwrap(), 4);
        assert_eq!(oracle_chi_b(&pivoted_tree(), b()).unwrap(), 3);
        assert_eq!(oracle_chi_b(&Graph::path(5), b()).unwrap(), 3);
    }

    #[test]
    fn dominance_examples() {
        let d = oracle_dominance(&Graph::path(6).complement(), b()).unwrap();
        assert_eq!((d.chi, d.values.clone()), (3, vec![3, 4, 1, 0]));
        let d = oracle_dominance(&Graph::complete(3), b()).unwrap();
        assert_eq!((d.chi, d.values.clone()), (3, vec![3]));
        let d = oracle_dominance(&Graph::star(4), b()).unwrap();
        assert_eq!((d.chi, d.values.clone()), (2, vec![2, 1, 1, 1]));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(oracle_chromatic(&Graph::cycle(5), b()).unwrap(), 3);
        assert_eq!(
            oracle_chromatic(&Graph::path(6).complement(), b()).unwrap(),
            3
        );
        assert_eq!(oracle_chromatic(&Graph::empty(1), b()).unwrap(), 1);
    }

    #[test]
    fn f_t_k_examples() {
        assert_eq!(oracle_f_t_k(&Graph::path(6), 1, b()).unwrap(), Cost::new(4));
        assert_eq!(oracle_f_t_k(&Graph::path(6), 3, b()).unwrap(), Cost::ZERO);
        assert_eq!(oracle_f_t_k(&Graph::path(3), 0, b()).unwrap(), Cost::new(3));
        assert_eq!(oracle_f_t_k(&Graph::path(3), 2, b()).unwrap(), Cost::INF);
    }

    #[test]
    fn budget_errors_are_distinct() {
        let tight = OracleBudget {
            max_n: 4,
            max_states: 1_000_000,
        };
        assert_eq!(
            oracle_chromatic(&Graph::path(5), tight),
            Err(Error::TooManyVertices { n: 5, max_n: 4 })
        );
        let starved = OracleBudget {
            max_n: 16,
            max_states: 3,
        };
        assert_eq!(
            oracle_chromatic(&Graph::path(5), starved),
            Err(Error::BudgetExceeded(3))
        );
    }

    #[test]
    fn lemma_two_at_oracle_level() {
        // chi_b(G) = n - minSMM(complement G) for stability-2 graphs.
        for g in [
            Graph::path(6),
            Graph::cycle(5),
            Graph::star(3),
            Graph::cycle(6),
        ] {
            let co = g.complement();
            assert!(co.stability_at_most_two());
            let lhs = oracle_chi_b(&co, b()).unwrap();
            let rhs = co.n() - oracle_min_smm(&g, b()).unwrap().0;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shortest_augmenting_examples() {
        let g = Graph::path(6);
        let m = Matching::new([(1, 2), (3, 4)]).unwrap();
        assert_eq!(shortest_augmenting_length(&g, &m), Some(5));
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(shortest_augmenting_length(&g, &m), None);
    }
}
