//! Tree-cograph expressions: trees and co-trees combined by disjoint union
//! and join.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A tree (or the underlying tree of a co-tree) placed on concrete vertex
/// ids of the denoted graph: local vertex `i` is `labels[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub tree: Graph,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcExpr {
    Tree(Leaf),
    /// Complement of the stored tree.
    CoTree(Leaf),
    Union(Vec<TcExpr>),
    Join(Vec<TcExpr>),
}

impl Leaf {
    pub fn new(tree: Graph, labels: Vec<usize>) -> Self {
        Leaf { tree, labels }
    }

    /// Leaf on ids `offset..offset + n`.
    pub fn with_offset(tree: Graph, offset: usize) -> Self {
        let labels = (offset..offset + tree.n()).collect();
        Leaf { tree, labels }
    }
}

impl TcExpr {
    pub fn vertex_count(&self) -> usize {
        match self {
            TcExpr::Tree(l) | TcExpr::CoTree(l) => l.tree.n(),
            TcExpr::Union(cs) | TcExpr::Join(cs) => cs.iter().map(TcExpr::vertex_count).sum(),
        }
    }

    pub fn children(&self) -> &[TcExpr] {
        match self {
            TcExpr::Union(cs) | TcExpr::Join(cs) => cs,
            _ => &[],
        }
    }

    /// All vertex ids of the denoted graph covered by this expression.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            TcExpr::Tree(l) | TcExpr::CoTree(l) => out.extend_from_slice(&l.labels),
            TcExpr::Union(cs) | TcExpr::Join(cs) => cs.iter().for_each(|c| c.collect_labels(out)),
        }
    }

    /// Structural check: leaves are trees with matching label counts,
    /// inner nodes have at least two children, labels form `0..n`.
    pub fn validate(&self) -> Result<()> {
        self.validate_node()?;
        let mut labels = self.labels();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| i != l) {
            return Err(Error::Parse {
                line: 0,
                msg: "leaf labels do not form a permutation of 0..n".into(),
            });
        }
        Ok(())
    }

    fn validate_node(&self) -> Result<()> {
        match self {
            TcExpr::Tree(l) | TcExpr::CoTree(l) => {
                if !l.tree.is_tree() {
                    return Err(Error::NotATree);
                }
                if l.labels.len() != l.tree.n() {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "leaf label count differs from its vertex count".into(),
                    });
                }
                Ok(())
            }
            TcExpr::Union(cs) | TcExpr::Join(cs) => {
                if cs.len() < 2 {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "union/join needs at least two children".into(),
                    });
                }
                cs.iter().try_for_each(TcExpr::validate_node)
            }
        }
    }

    /// The graph this expression denotes, on vertex ids `0..vertex_count()`.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        self.emit_edges(&mut g);
        g
    }

    fn emit_edges(&self, g: &mut Graph) {
        match self {
            TcExpr::Tree(l) => {
                for (u, v) in l.tree.edges() {
                    g.add_edge(l.labels[u], l.labels[v]).unwrap();
                }
            }
            TcExpr::CoTree(l) => {
                for (u, v) in l.tree.complement().edges() {
                    g.add_edge(l.labels[u], l.labels[v]).unwrap();
                }
            }
            TcExpr::Union(cs) => cs.iter().for_each(|c| c.emit_edges(g)),
            TcExpr::Join(cs) => {
                cs.iter().for_each(|c| c.emit_edges(g));
                let parts: Vec<Vec<usize>> = cs.iter().map(TcExpr::labels).collect();
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        for &u in a {
                            for &v in b {
                                g.add_edge(u, v).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }

    /// The graph with its own local ids, used when evaluating a subexpression
    /// in isolation.
    pub fn local_graph(&self) -> Graph {
        let mut labels = self.labels();
        labels.sort_unstable();
        let mut relabelled = self.clone();
        relabelled.relabel(&|l| labels.binary_search(&l).unwrap());
        relabelled.to_graph()
    }

    fn relabel(&mut self, f: &dyn Fn(usize) -> usize) {
        match self {
            TcExpr::Tree(l) | TcExpr::CoTree(l) => l.labels.iter_mut().for_each(|x| *x = f(*x)),
            TcExpr::Union(cs) | TcExpr::Join(cs) => cs.iter_mut().for_each(|c| c.relabel(f)),
        }
    }
}

/// Four-case tree-cograph recursion: tree, co-tree, disconnected (union of
/// components) or co-disconnected (join of co-components).
///
/// A leaf that is both a tree and a co-tree (`K1`, `K2`) is reported as a
/// tree. Children are ordered by their smallest vertex id.
pub fn decompose_tree_cograph(g: &Graph) -> Result<TcExpr> {
    let labels: Vec<usize> = (0..g.n()).collect();
    decompose_on(g, &labels)
}

fn decompose_on(g: &Graph, labels: &[usize]) -> Result<TcExpr> {
    if g.n() == 0 {
        return Err(Error::NotTreeCograph);
    }
    if g.is_tree() {
        return Ok(TcExpr::Tree(Leaf::new(g.clone(), labels.to_vec())));
    }
    let co = g.complement();
    if co.is_tree() {
        return Ok(TcExpr::CoTree(Leaf::new(co, labels.to_vec())));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return split(g, labels, comps).map(TcExpr::Union);
    }
    let co_comps = co.components();
    if co_comps.len() > 1 {
        return split(g, labels, co_comps).map(TcExpr::Join);
    }
    Err(Error::NotTreeCograph)
}

fn split(g: &Graph, labels: &[usize], parts: Vec<Vec<usize>>) -> Result<Vec<TcExpr>> {
    // components() lists parts by smallest local vertex, and local order
    // follows label order, so children come out sorted by smallest label.
    parts
        .into_iter()
        .map(|part| {
            let sub = g.induced(&part);
            let sub_labels: Vec<usize> = part.iter().map(|&v| labels[v]).collect();
            decompose_on(&sub, &sub_labels)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> Graph {
        Graph::empty(1)
    }

    #[test]
    fn path_is_a_tree_leaf() {
        let e = decompose_tree_cograph(&Graph::path(6)).unwrap();
        assert!(matches!(&e, TcExpr::Tree(l) if l.tree == Graph::path(6)));
    }

    #[test]
    fn two_triangles_are_a_union_of_joins() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let e = decompose_tree_cograph(&g).unwrap();
        let TcExpr::Union(parts) = &e else {
            panic!("expected union, got {e:?}")
        };
        assert_eq!(parts.len(), 2);
        for (p, base) in parts.iter().zip([0, 3]) {
            let TcExpr::Join(leaves) = p else {
                panic!("expected join")
            };
            assert_eq!(leaves.len(), 3);
            for (i, leaf) in leaves.iter().enumerate() {
                assert_eq!(leaf, &TcExpr::Tree(Leaf::new(k1(), vec![base + i])));
            }
        }
        assert_eq!(e.to_graph(), g);
    }

    #[test]
    fn c5_is_not_a_tree_cograph() {
        assert_eq!(
            decompose_tree_cograph(&Graph::cycle(5)),
            Err(Error::NotTreeCograph)
        );
    }

    #[test]
    fn k2_prefers_tree_leaf() {
        let e = decompose_tree_cograph(&Graph::complete(2)).unwrap();
        assert!(matches!(e, TcExpr::Tree(_)));
    }

    #[test]
    fn co_tree_leaf() {
        let g = Graph::path(6).complement();
        let e = decompose_tree_cograph(&g).unwrap();
        assert!(matches!(&e, TcExpr::CoTree(l) if l.tree == Graph::path(6)));
        assert_eq!(e.to_graph(), g);
    }

    #[test]
    fn round_trip_of_a_mixed_expression() {
        // (P3 ∪ K1) ∨ co-P4-ish pieces, relabelled through a permutation.
        let a = Graph::path(3).disjoint_union(&k1());
        let b = Graph::star(3).complement();
        let g = a.join(&b);
        let e = decompose_tree_cograph(&g).unwrap();
        e.validate().unwrap();
        assert_eq!(e.to_graph(), g);
        assert_eq!(e.vertex_count(), 8);
    }

    #[test]
    fn local_graph_of_subexpression() {
        let g = Graph::path(3).disjoint_union(&Graph::complete(2));
        let e = decompose_tree_cograph(&g).unwrap();
        let second = &e.children()[1];
        assert_eq!(second.labels(), vec![3, 4]);
        assert_eq!(second.local_graph(), Graph::complete(2));
    }

    #[test]
    fn validate_rejects_singleton_union() {
        let e = TcExpr::Union(vec![TcExpr::Tree(Leaf::with_offset(k1(), 0))]);
        assert!(e.validate().is_err());
    }
}
