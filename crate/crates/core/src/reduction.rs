//! The gadget graph used to reduce minimum maximal matching in bipartite
//! graphs to minimum strongly maximal matching.
//!
//! Every edge `uv` of the source graph is replaced by nine edges on eight new
//! vertices: two pendant paths `u - x1 - x2 - x3 - x4` and
//! `v - x1' - x2' - x3' - x4'` joined by the edge `x1 x1'`. A minimum
//! strongly maximal matching of the gadget has exactly `3m` more edges than
//! a minimum maximal matching of the source.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{self, Matching};
use crate::oracle::{self, OracleBudget};
use crate::tree_dp;

/// Gadget host graph plus the vertex block of every source edge.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub source: Graph,
    pub host: Graph,
    pub origin_n: usize,
    /// Per source edge `(u, v)` with `u < v`, in ascending order: the ids of
    /// `x1..x4` on `u`'s side followed by `x1..x4` on `v`'s side.
    pub edge_map: Vec<((usize, usize), [usize; 8])>,
}

/// Edges of one source edge's gadget piece that belong to the matching, or
/// the canonical forms it is compared with.
type EdgeSet = BTreeSet<(usize, usize)>;

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// The nine gadget edges of source edge `(u, v)`.
fn piece(u: usize, v: usize, x: &[usize; 8]) -> [(usize, usize); 9] {
    [
        (u, x[0]),
        (x[0], x[1]),
        (x[1], x[2]),
        (x[2], x[3]),
        (x[0], x[4]),
        (x[4], x[5]),
        (x[5], x[6]),
        (x[6], x[7]),
        (v, x[4]),
    ]
}

pub fn build_gadget(g: &Graph) -> Result<Gadget> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut host = Graph::empty(n + 8 * edges.len());
    let mut edge_map = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        let base = n + 8 * i;
        let x: [usize; 8] = std::array::from_fn(|j| base + j);
        for (a, b) in piece(u, v, &x) {
            host.add_edge(a, b)?;
        }
        edge_map.push(((u, v), x));
    }
    Ok(Gadget {
        source: g.clone(),
        host,
        origin_n: n,
        edge_map,
    })
}

impl Gadget {
    fn block(&self, u: usize, v: usize) -> Result<[usize; 8]> {
        let key = norm(u, v);
        self.edge_map
            .binary_search_by_key(&key, |&(e, _)| e)
            .map(|i| self.edge_map[i].1)
            .map_err(|_| Error::UnknownEdge(u, v))
    }

    fn piece_set(&self, e: (usize, usize), x: &[usize; 8]) -> EdgeSet {
        piece(e.0, e.1, x)
            .iter()
            .map(|&(a, b)| norm(a, b))
            .collect()
    }

    fn in_out(&self, e: (usize, usize), x: &[usize; 8]) -> (EdgeSet, EdgeSet) {
        let (u, v) = e;
        let inside = [(u, x[0]), (x[1], x[2]), (x[5], x[6]), (v, x[4])];
        let outside = [(x[0], x[4]), (x[1], x[2]), (x[5], x[6])];
        (
            inside.iter().map(|&(a, b)| norm(a, b)).collect(),
            outside.iter().map(|&(a, b)| norm(a, b)).collect(),
        )
    }

    fn restrict(&self, m: &Matching, e: (usize, usize), x: &[usize; 8]) -> EdgeSet {
        let all = self.piece_set(e, x);
        m.edges().filter(|p| all.contains(p)).collect()
    }
}

/// `(F_in, F_out)` for source edge `(u, v)`: the gadget edges kept when `uv`
/// is in the source matching, and when it is not.
pub fn f_sets(gadget: &Gadget, u: usize, v: usize) -> Result<(EdgeSet, EdgeSet)> {
    let x = gadget.block(u, v)?;
    Ok(gadget.in_out(norm(u, v), &x))
}

/// Rewrites a minimum strongly maximal matching of the gadget so that every
/// piece meets it in exactly `F_in` or `F_out`, without changing its size.
///
/// Local swaps remove `x3 x4` edges first; any that survive are handled by
/// replacing their piece with `F_out` and repairing the single short
/// augmenting path this creates.
pub fn normalize_smm(gadget: &Gadget, m: &Matching) -> Result<Matching> {
    let host = &gadget.host;
    m.validate(host)?;
    if !matching::is_strongly_maximal(host, m)? {
        return Err(Error::NotStronglyMaximal);
    }
    let before = m.len();
    let mut m = m.clone();
    loop {
        local_swaps(gadget, &mut m);
        let Some(&(e, x)) = gadget
            .edge_map
            .iter()
            .find(|(_, x)| m.contains(x[2], x[3]) || m.contains(x[6], x[7]))
        else {
            break;
        };
        let (_, out) = gadget.in_out(e, &x);
        for p in gadget.restrict(&m, e, &x) {
            m.remove(p.0, p.1);
        }
        for &(a, b) in &out {
            m.insert(a, b);
        }
        let Some(path) = matching::find_short_augmenting(host, &m)? else {
            return Err(Error::CardinalityChanged {
                before,
                after: m.len(),
            });
        };
        let (a, d) = (path.vertices[0], *path.vertices.last().unwrap());
        if path.len() != 3 || a >= gadget.origin_n || d >= gadget.origin_n {
            return Err(Error::NotCanonical);
        }
        let y = gadget.block(a, d).map_err(|_| Error::NotCanonical)?;
        let f = norm(a, d);
        let (inside, outside) = gadget.in_out(f, &y);
        if gadget.restrict(&m, f, &y) != outside {
            return Err(Error::NotCanonical);
        }
        for p in &outside {
            m.remove(p.0, p.1);
        }
        for &(p, q) in &inside {
            m.insert(p, q);
        }
    }
    if m.len() != before {
        return Err(Error::CardinalityChanged {
            before,
            after: m.len(),
        });
    }
    if !matching::is_strongly_maximal(host, &m)? || !is_canonical(gadget, &m) {
        return Err(Error::NotCanonical);
    }
    Ok(m)
}

/// Applies until stable: `x3 x4` without `x1 x2` becomes `x2 x3`; both
/// `x1 x2` and `x3 x4` become `x2 x3` plus `x1` matched to its free outer
/// neighbour (`u` or the other side's `x1`).
fn local_swaps(gadget: &Gadget, m: &mut Matching) {
    let n = gadget.host.n();
    loop {
        let mut changed = false;
        for &((u, v), x) in &gadget.edge_map {
            for (outer, h, other) in [
                (u, [x[0], x[1], x[2], x[3]], x[4]),
                (v, [x[4], x[5], x[6], x[7]], x[0]),
            ] {
                if !m.contains(h[2], h[3]) {
                    continue;
                }
                let mate = m.mates(n);
                if !m.contains(h[0], h[1]) {
                    m.remove(h[2], h[3]);
                    m.insert(h[1], h[2]);
                    changed = true;
                } else if let Some(free) = [outer, other].into_iter().find(|&w| mate[w].is_none()) {
                    m.remove(h[0], h[1]);
                    m.remove(h[2], h[3]);
                    m.insert(h[1], h[2]);
                    m.insert(h[0], free);
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Every piece meets `m` in exactly `F_in` or `F_out`.
pub fn is_canonical(gadget: &Gadget, m: &Matching) -> bool {
    gadget.edge_map.iter().all(|&(e, x)| {
        let (inside, outside) = gadget.in_out(e, &x);
        let got = gadget.restrict(m, e, &x);
        got == inside || got == outside
    })
}

/// Source edges whose piece meets `m` in `F_in`.
pub fn project_matching(gadget: &Gadget, m: &Matching) -> Result<Matching> {
    m.validate(&gadget.host)?;
    let mut out = Vec::new();
    for &(e, x) in &gadget.edge_map {
        let (inside, outside) = gadget.in_out(e, &x);
        let got = gadget.restrict(m, e, &x);
        if got == inside {
            out.push(e);
        } else if got != outside {
            return Err(Error::NotCanonical);
        }
    }
    Matching::new(out).map_err(|_| Error::NotCanonical)
}

/// `F_in` for every matched source edge, `F_out` for every other one.
pub fn lift_matching(gadget: &Gadget, m: &Matching) -> Result<Matching> {
    if !matching::is_maximal(&gadget.source, m)? {
        return Err(Error::NotMaximal);
    }
    let mut out = Matching::empty();
    for &(e, x) in &gadget.edge_map {
        let (inside, outside) = gadget.in_out(e, &x);
        let chosen = if m.contains(e.0, e.1) {
            inside
        } else {
            outside
        };
        for (a, b) in chosen {
            out.insert(a, b);
        }
    }
    Ok(out)
}

/// Outcome of [`certify_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub source_edges: usize,
    pub min_maximal: usize,
    pub min_smm_gadget: usize,
    /// `"tree-dp"` when the gadget is a forest, `"branch-and-bound"`
    /// otherwise.
    pub method: &'static str,
    pub holds: bool,
}

/// Computes both sides of `minSMM(H) = minMM(G) + 3m` exactly.
pub fn certify_reduction(g: &Graph, search_budget: u64) -> Result<ReductionReport> {
    let gadget = build_gadget(g)?;
    let budget = OracleBudget {
        max_n: usize::MAX,
        max_states: search_budget,
    };
    let (min_maximal, _) = oracle::oracle_min_maximal_matching(g, budget)?;
    let (min_smm_gadget, method) = if gadget.host.is_forest() {
        (tree_dp::min_smm_forest(&gadget.host)?.0, "tree-dp")
    } else {
        (
            exact_min_smm(&gadget.host, search_budget)?.0,
            "branch-and-bound",
        )
    };
    let m = g.edge_count();
    Ok(ReductionReport {
        source_edges: m,
        min_maximal,
        min_smm_gadget,
        method,
        holds: min_smm_gadget == min_maximal + 3 * m,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Open,
    Free,
    Taken(usize),
}

/// Minimum strongly maximal matching by branch and bound over vertices in
/// breadth-first order: each vertex is left unmatched or matched to an
/// undecided neighbour. Partial assignments that already break maximality
/// or contain an augmenting path of length 3 are cut, as are those whose
/// size plus half the number of vertices forced to be matched reaches the
/// incumbent.
pub fn exact_min_smm(g: &Graph, budget: u64) -> Result<(usize, Matching)> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let best = matching::maximum_matching(g);
    let mut bb = BranchAndBound {
        g,
        order,
        slot: vec![Slot::Open; n],
        size: 0,
        best_size: best.len(),
        best,
        nodes: 0,
        budget,
    };
    bb.search(0)?;
    Ok((bb.best_size, bb.best))
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    slot: Vec<Slot>,
    size: usize,
    best_size: usize,
    best: Matching,
    nodes: u64,
    budget: u64,
}

impl BranchAndBound<'_> {
    fn free_nbrs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.slot[u] == Slot::Free)
    }

    /// Leaving `v` unmatched keeps the partial assignment admissible.
    fn can_free(&self, v: usize) -> bool {
        if self.free_nbrs(v).next().is_some() {
            return false;
        }
        self.g.neighbors(v).iter().all(|&b| match self.slot[b] {
            Slot::Taken(c) => self.free_nbrs(c).all(|d| d == v),
            _ => true,
        })
    }

    /// Matching `v w` keeps the partial assignment admissible.
    fn can_match(&self, v: usize, w: usize) -> bool {
        let a: Vec<usize> = self.free_nbrs(v).collect();
        a.is_empty() || self.free_nbrs(w).all(|d| a.iter().all(|&x| x == d))
    }

    fn lower_bound(&self) -> usize {
        let forced = self
            .g
            .edges()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .filter(|&(u, v)| self.slot[u] == Slot::Open && self.slot[v] == Slot::Free)
            .map(|(u, _)| u)
            .collect::<BTreeSet<_>>()
            .len();
        self.size + forced.div_ceil(2)
    }

    fn search(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if self.lower_bound() >= self.best_size {
            return Ok(());
        }
        let Some(&v) = self.order[i..]
            .iter()
            .find(|&&v| self.slot[v] == Slot::Open)
        else {
            self.best_size = self.size;
            self.best = Matching::from_mates(
                &self
                    .slot
                    .iter()
                    .map(|s| match s {
                        Slot::Taken(c) => Some(*c),
                        _ => None,
                    })
                    .collect::<Vec<_>>(),
            );
            return Ok(());
        };
        let next = i + 1;
        if self.can_free(v) {
            self.slot[v] = Slot::Free;
            self.search(next)?;
            self.slot[v] = Slot::Open;
        }
        let nbrs: Vec<usize> = self.g.neighbors(v).to_vec();
        for w in nbrs {
            if self.slot[w] == Slot::Open && self.can_match(v, w) {
                self.slot[v] = Slot::Taken(w);
                self.slot[w] = Slot::Taken(v);
                self.size += 1;
                self.search(next)?;
                self.size -= 1;
                self.slot[v] = Slot::Open;
                self.slot[w] = Slot::Open;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_counts() {
        let k2 = build_gadget(&Graph::complete(2)).unwrap();
        assert_eq!((k2.host.n(), k2.host.edge_count()), (10, 9));
        let p3 = build_gadget(&Graph::path(3)).unwrap();
        assert_eq!((p3.host.n(), p3.host.edge_count()), (19, 18));
        let c4 = build_gadget(&Graph::cycle(4)).unwrap();
        assert_eq!((c4.host.n(), c4.host.edge_count()), (36, 36));
        assert!(c4.host.is_bipartite());
        assert!(matches!(
            build_gadget(&Graph::cycle(3)),
            Err(Error::NotBipartite)
        ));
    }

    #[test]
    fn f_set_shapes() {
        let k2 = build_gadget(&Graph::complete(2)).unwrap();
        let (i, o) = f_sets(&k2, 0, 1).unwrap();
        assert_eq!((i.len(), o.len(), i.intersection(&o).count()), (4, 3, 2));
        let p3 = build_gadget(&Graph::path(3)).unwrap();
        let (i1, o1) = f_sets(&p3, 1, 2).unwrap();
        let (i0, o0) = f_sets(&p3, 0, 1).unwrap();
        let a: EdgeSet = i1.union(&o1).copied().collect();
        let b: EdgeSet = i0.union(&o0).copied().collect();
        assert!(a.is_disjoint(&b));
        assert_eq!(f_sets(&p3, 0, 2), Err(Error::UnknownEdge(0, 2)));
    }

    #[test]
    fn normalize_examples() {
        let k2 = build_gadget(&Graph::complete(2)).unwrap();
        let (inside, _) = f_sets(&k2, 0, 1).unwrap();
        let canon: Matching = inside.iter().copied().collect();
        assert_eq!(normalize_smm(&k2, &canon).unwrap(), canon);

        let x = k2.edge_map[0].1;
        let tails =
            Matching::new([(x[0], x[1]), (x[2], x[3]), (x[4], x[5]), (x[6], x[7])]).unwrap();
        assert!(matching::is_strongly_maximal(&k2.host, &tails).unwrap());
        let out = normalize_smm(&k2, &tails).unwrap();
        assert_eq!(out, canon);
    }

    #[test]
    fn project_and_lift() {
        let k2 = build_gadget(&Graph::complete(2)).unwrap();
        let (inside, _) = f_sets(&k2, 0, 1).unwrap();
        let canon: Matching = inside.iter().copied().collect();
        assert_eq!(
            project_matching(&k2, &canon).unwrap(),
            Matching::new([(0, 1)]).unwrap()
        );

        let lifted = lift_matching(&k2, &Matching::new([(0, 1)]).unwrap()).unwrap();
        assert_eq!(lifted.len(), 4);
        assert!(matching::is_strongly_maximal(&k2.host, &lifted).unwrap());

        let p3 = build_gadget(&Graph::path(3)).unwrap();
        let m = Matching::new([(1, 2)]).unwrap();
        let lifted = lift_matching(&p3, &m).unwrap();
        assert_eq!(lifted.len(), 7);
        assert!(matching::is_strongly_maximal(&p3.host, &lifted).unwrap());
        assert_eq!(project_matching(&p3, &lifted).unwrap(), m);
        assert_eq!(
            lift_matching(&p3, &Matching::empty()),
            Err(Error::NotMaximal)
        );

        let c4 = build_gadget(&Graph::cycle(4)).unwrap();
        let pm = Matching::new([(0, 1), (2, 3)]).unwrap();
        let lifted = lift_matching(&c4, &pm).unwrap();
        assert_eq!(lifted.len(), 14);
        assert_eq!(project_matching(&c4, &lifted).unwrap(), pm);
    }

    #[test]
    fn certify_examples() {
        let r = certify_reduction(&Graph::complete(2), 1_000_000).unwrap();
        assert_eq!((r.min_maximal, r.min_smm_gadget, r.holds), (1, 4, true));
        let r = certify_reduction(&Graph::path(3), 1_000_000).unwrap();
        assert_eq!((r.min_maximal, r.min_smm_gadget, r.holds), (1, 7, true));
        assert_eq!(r.method, "tree-dp");
        let r = certify_reduction(&Graph::cycle(4), 10_000_000).unwrap();
        assert_eq!((r.min_maximal, r.min_smm_gadget, r.holds), (2, 14, true));
        assert_eq!(r.method, "branch-and-bound");
    }

    #[test]
    fn exact_search_agrees_with_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.random_range(1..=9);
            let g = crate::generate::random_graph(n, rng.random_range(0.2..0.7), &mut rng);
            let (k, m) = exact_min_smm(&g, 10_000_000).unwrap();
            assert!(matching::is_strongly_maximal(&g, &m).unwrap());
            assert_eq!(k, m.len());
            assert_eq!(
                k,
                oracle::oracle_min_smm(&g, OracleBudget::default())
                    .unwrap()
                    .0
            );
        }
    }

    #[test]
    fn normalization_of_exact_minimum() {
        for g in [
            Graph::cycle(4),
            Graph::path(4),
            Graph::complete_bipartite(2, 3),
        ] {
            let gadget = build_gadget(&g).unwrap();
            let (_, m) = exact_min_smm(&gadget.host, 50_000_000).unwrap();
            let canon = normalize_smm(&gadget, &m).unwrap();
            assert_eq!(canon.len(), m.len());
            let proj = project_matching(&gadget, &canon).unwrap();
            assert!(matching::is_maximal(&g, &proj).unwrap());
            assert_eq!(proj.len() + 3 * g.edge_count(), m.len());
        }
    }
}
