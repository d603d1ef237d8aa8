//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matching;

/// Simple undirected graph with sorted adjacency lists.
///
/// Two graphs are equal iff they have the same vertex count and edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidEdge(u, v, "endpoint out of range"));
        }
        if u == v {
            return Err(Error::InvalidEdge(u, v, "self-loop"));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidEdge(u, v, "duplicate edge")),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| {
                let mut out = Vec::with_capacity(n - 1 - self.degree(u));
                let mut it = self.adj[u].iter().peekable();
                for v in 0..n {
                    if v == u {
                        continue;
                    }
                    if it.peek() == Some(&&v) {
                        it.next();
                    } else {
                        out.push(v);
                    }
                }
                out
            })
            .collect();
        Graph { adj }
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut ns: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        Graph { adj }
    }

    /// `G - v`, with vertices above `v` shifted down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&w| w + off).collect()),
        );
        Graph { adj }
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        self.complement()
            .disjoint_union(&other.complement())
            .complement()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    pub fn is_triangle_free(&self) -> bool {
        // Sorted lists make each neighbourhood intersection a merge.
        self.edges().all(|(u, v)| {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    /// Every independent set has at most two vertices.
    pub fn stability_at_most_two(&self) -> bool {
        self.complement().is_triangle_free()
    }

    /// Side assignment of a proper 2-coloring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut side = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    fn degrees_descending(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `m(G)`: the largest `i` such that at least `i` vertices have degree
    /// at least `i - 1`. Zero for the empty graph.
    pub fn m_degree_bound(&self) -> usize {
        self.degrees_descending()
            .iter()
            .enumerate()
            .take_while(|&(i, &d)| d >= i)
            .count()
    }

    /// Number of vertices of degree at least `i - 1`, for a tree and
    /// `m(T) < i <= Δ(T) + 1`.
    pub fn m_i_count(&self, i: usize) -> Result<usize> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let (lo, hi) = (self.m_degree_bound() + 1, self.max_degree() + 1);
        if i < lo || i > hi {
            return Err(Error::OutOfRange {
                what: "i",
                value: i,
                lo,
                hi,
            });
        }
        Ok(self.count_degree_at_least(i - 1))
    }

    pub(crate) fn count_degree_at_least(&self, d: usize) -> usize {
        self.adj.iter().filter(|ns| ns.len() >= d).count()
    }
}

/// Chromatic number of a graph of stability at most two: every color class
/// has at most two vertices, so the classes are a matching of the
/// complement plus singletons.
pub fn chromatic_stability2(g: &Graph) -> Result<usize> {
    let co = g.complement();
    if !co.is_triangle_free() {
        return Err(Error::StabilityTooLarge);
    }
    Ok(g.n() - matching::maximum_matching(&co).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_vec(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 0)]),
            Err(Error::InvalidEdge(0, 0, _))
        ));
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(1).complement(), Graph::empty(1));
        let co_p4 = Graph::path(4).complement();
        assert_eq!(edge_vec(&co_p4), vec![(0, 2), (0, 3), (1, 3)]);
        // co-P4 is again a path: 2-0-3-1.
        assert!(co_p4.is_tree());
    }

    #[test]
    fn triangle_free_examples() {
        assert!(Graph::cycle(5).is_triangle_free());
        assert!(!Graph::complete(3).is_triangle_free());
        assert!(Graph::path(6).is_triangle_free());
    }

    #[test]
    fn stability_examples() {
        assert!(Graph::complete(4).stability_at_most_two());
        assert!(Graph::path(6).complement().stability_at_most_two());
        assert!(!Graph::empty(3).stability_at_most_two());
    }

    #[test]
    fn m_degree_bound_examples() {
        assert_eq!(Graph::path(5).m_degree_bound(), 3);
        assert_eq!(Graph::complete(4).m_degree_bound(), 4);
        assert_eq!(Graph::star(4).m_degree_bound(), 2);
        assert_eq!(Graph::empty(1).m_degree_bound(), 1);
    }

    #[test]
    fn m_i_count_examples() {
        let k14 = Graph::star(4);
        assert_eq!(k14.m_i_count(3), Ok(1));
        assert_eq!(k14.m_i_count(5), Ok(1));
        assert!(matches!(k14.m_i_count(2), Err(Error::OutOfRange { .. })));
        assert!(matches!(k14.m_i_count(6), Err(Error::OutOfRange { .. })));
        assert_eq!(Graph::cycle(4).m_i_count(3), Err(Error::NotATree));
    }

    #[test]
    fn tree_examples() {
        assert!(Graph::path(6).is_tree());
        assert!(!Graph::cycle(5).is_tree());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_tree());
        assert!(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_forest());
        assert!(Graph::empty(1).is_tree());
        assert!(!Graph::empty(0).is_tree());
    }

    #[test]
    fn chromatic_of_stability_two_graphs() {
        assert_eq!(chromatic_stability2(&Graph::path(6).complement()), Ok(3));
        assert_eq!(chromatic_stability2(&Graph::complete(5)), Ok(5));
        assert_eq!(chromatic_stability2(&Graph::path(5).complement()), Ok(3));
        assert_eq!(
            chromatic_stability2(&Graph::empty(3)),
            Err(Error::StabilityTooLarge)
        );
    }

    #[test]
    fn union_and_join() {
        let k2 = Graph::complete(2);
        let u = k2.disjoint_union(&Graph::empty(1));
        assert_eq!(edge_vec(&u), vec![(0, 1)]);
        let j = Graph::empty(1).join(&Graph::empty(1));
        assert_eq!(j, k2);
        let p3k1 = Graph::path(3).join(&Graph::empty(1));
        assert_eq!(p3k1.edge_count(), 5);
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(Graph::cycle(6).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        assert!(Graph::complete_bipartite(2, 3).is_bipartite());
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = Graph::path(5).induced(&[4, 3, 1]);
        assert_eq!(edge_vec(&g), vec![(0, 1)]);
    }
}
