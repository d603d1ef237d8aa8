//! Matchings, augmenting paths, strong maximality and the S1/S2 statistics.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weighted::max_weight_matching;

/// A set of pairwise vertex-disjoint edges, each stored as `(u, v)` with
/// `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: BTreeSet<(usize, usize)>,
}

/// An alternating path given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltPath {
    pub vertices: Vec<usize>,
}

impl AltPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        AltPath { vertices }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Rejects self-loops and edges sharing a vertex.
    pub fn new<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Matching::empty();
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidMatching(format!("self-loop at {u}")));
            }
            for x in [u, v] {
                if !seen.insert(x) {
                    return Err(Error::InvalidMatching(format!(
                        "vertex {x} is covered twice"
                    )));
                }
            }
            m.edges.insert(norm(u, v));
        }
        Ok(m)
    }

    /// Builds a matching from a symmetric partner array.
    pub fn from_mates(mates: &[Option<usize>]) -> Self {
        let edges = mates
            .iter()
            .enumerate()
            .filter_map(|(u, &p)| p.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&norm(u, v))
    }

    /// Edges in `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Covered vertices, ascending.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Partner of each vertex in `0..n`.
    pub fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    /// Checks that every edge belongs to `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &(u, v) in &self.edges {
            if v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
        }
        Ok(())
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        self.edges.insert(norm(u, v));
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&norm(u, v))
    }
}

impl FromIterator<(usize, usize)> for Matching {
    /// Panics if the edges are not vertex-disjoint.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Matching::new(iter).expect("edges are not a matching")
    }
}

/// No edge joins two unmatched vertices.
pub fn is_maximal(g: &Graph, m: &Matching) -> Result<bool> {
    m.validate(g)?;
    let mate = m.mates(g.n());
    Ok(!g
        .edges()
        .any(|(u, v)| mate[u].is_none() && mate[v].is_none()))
}

pub fn is_strongly_maximal(g: &Graph, m: &Matching) -> Result<bool> {
    Ok(find_short_augmenting(g, m)?.is_none())
}

/// The lexicographically smallest augmenting path of length 1, or failing
/// that of length 3, oriented so that it starts at its smaller endpoint.
pub fn find_short_augmenting(g: &Graph, m: &Matching) -> Result<Option<AltPath>> {
    m.validate(g)?;
    let mate = m.mates(g.n());
    Ok(short_scan(g, &mate))
}

fn short_scan(g: &Graph, mate: &[Option<usize>]) -> Option<AltPath> {
    let free = |v: usize| mate[v].is_none();
    if let Some((u, v)) = g.edges().find(|&(u, v)| free(u) && free(v)) {
        return Some(AltPath::new(vec![u, v]));
    }
    for a in (0..g.n()).filter(|&a| free(a)) {
        for &b in g.neighbors(a) {
            let Some(c) = mate[b] else { continue };
            if let Some(&d) = g.neighbors(c).iter().find(|&&d| d > a && free(d)) {
                return Some(AltPath::new(vec![a, b, c, d]));
            }
        }
    }
    None
}

/// Maximum-cardinality matching by Edmonds' blossom algorithm, O(n^3).
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy start keeps the number of searches small.
    for (u, v) in g.edges() {
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root].is_none() {
            if let Some(end) = search.find_path(g, &mate, root) {
                search.augment(&mut mate, end);
            }
        }
    }
    Matching::from_mates(&mate)
}

struct BlossomSearch {
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mate: &[Option<usize>], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("outer vertex has a tree parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = mate[b].expect("walk stays inside the tree");
            b = self.parent[m].expect("outer vertex has a tree parent");
        }
    }

    fn mark_path(&mut self, mate: &[Option<usize>], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = mate[v].unwrap();
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].unwrap();
        }
    }

    fn find_path(&mut self, g: &Graph, mate: &[Option<usize>], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == Some(to) {
                    continue;
                }
                let to_outer = to == root || mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_outer {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&self, mate: &mut [Option<usize>], end: usize) {
        let mut v = Some(end);
        while let Some(x) = v {
            let pv = self.parent[x].unwrap();
            let next = mate[pv];
            mate[x] = Some(pv);
            mate[pv] = Some(x);
            v = next;
        }
    }
}

/// A shortest augmenting path, or `None` iff `m` is maximum.
///
/// Among shortest paths the lexicographically smallest vertex sequence is
/// returned, oriented to start at its smaller endpoint.
pub fn min_length_augmenting_path(g: &Graph, m: &Matching) -> Result<Option<AltPath>> {
    m.validate(g)?;
    let n = g.n();
    let mate = m.mates(n);
    if let Some(p) = short_scan(g, &mate) {
        return Ok(Some(p));
    }
    let frees: Vec<usize> = (0..n).filter(|&v| mate[v].is_none()).collect();
    let mut alive = vec![true; n];
    let mut best: Option<(usize, usize)> = None;
    for &s in &frees {
        if let Some(len) = shortest_from(g, &mate, &alive, s) {
            if best.is_none_or(|(l, _)| len < l) {
                best = Some((len, s));
            }
        }
    }
    let Some((total, v0)) = best else {
        return Ok(None);
    };
    // Free vertices below the start cannot occur: the path would then be
    // oriented from them.
    for &f in frees.iter().filter(|&&f| f < v0) {
        alive[f] = false;
    }

    let mut path = vec![v0];
    let mut x = v0;
    let mut remaining = total;
    while remaining > 0 {
        alive[x] = false;
        let mut step = None;
        for &y in g.neighbors(x) {
            if !alive[y] || mate[x] == Some(y) {
                continue;
            }
            match mate[y] {
                None if remaining == 1 => {
                    step = Some((y, None));
                    break;
                }
                None => {}
                Some(z) if remaining > 1 => {
                    alive[y] = false;
                    let rest = shortest_from_detached(g, &mate, &alive, z);
                    if rest == Some(remaining - 2) {
                        step = Some((y, Some(z)));
                        break;
                    }
                    alive[y] = true;
                }
                Some(_) => {}
            }
        }
        let (y, z) = step.expect("a completion of the chosen length exists");
        path.push(y);
        match z {
            None => remaining = 0,
            Some(z) => {
                path.push(z);
                x = z;
                remaining -= 2;
            }
        }
    }
    Ok(Some(AltPath::new(path)))
}

/// Length of a shortest augmenting path starting at the free vertex `s`,
/// using only alive vertices.
fn shortest_from(g: &Graph, mate: &[Option<usize>], alive: &[bool], s: usize) -> Option<usize> {
    shortest_from_detached(g, mate, alive, s)
}

/// As [`shortest_from`], but `s` may have a dead partner, in which case it is
/// treated as free.
///
/// Reduction to maximum-weight perfect matching: matched edges weigh 2,
/// unmatched edges 1, and every free vertex other than `s` may instead be
/// absorbed by one of `f - 1` slot vertices. A perfect matching leaves
/// exactly `s` and one other free vertex to be joined by an alternating path
/// (plus alternating cycles); maximum weight keeps as many matched edges as
/// possible, so the path is shortest and no cycle appears.
fn shortest_from_detached(
    g: &Graph,
    mate: &[Option<usize>],
    alive: &[bool],
    s: usize,
) -> Option<usize> {
    let is_free = |v: usize| mate[v].is_none_or(|p| !alive[p]);
    let mut local = vec![usize::MAX; g.n()];
    let mut verts = Vec::new();
    for v in (0..g.n()).filter(|&v| alive[v] || v == s) {
        local[v] = verts.len();
        verts.push(v);
    }
    let others: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| v != s && is_free(v))
        .collect();
    if others.is_empty() {
        return None;
    }
    let mut edges = Vec::new();
    for &u in &verts {
        for &v in g.neighbors(u) {
            if u < v && local[v] != usize::MAX {
                let w = if mate[u] == Some(v) { 2 } else { 1 };
                edges.push((local[u], local[v], w));
            }
        }
    }
    let base = verts.len();
    for slot in 0..others.len() - 1 {
        for &f in &others {
            edges.push((local[f], base + slot, 2));
        }
    }
    let total = base + others.len() - 1;
    if total % 2 == 1 {
        return None;
    }
    let res = max_weight_matching(total, &edges, true);
    if res.iter().any(Option::is_none) {
        return None;
    }
    let unmatched_edges = verts
        .iter()
        .filter_map(|&u| {
            let p = res[local[u]]?;
            (p < base && local[u] < p && mate[u] != Some(verts[p])).then_some(())
        })
        .count();
    Some(2 * unmatched_edges - 1)
}

/// `M' = (M \ E(P)) ∪ (E(P) \ M)`.
pub fn augment(m: &Matching, p: &AltPath) -> Result<Matching> {
    let vs = &p.vertices;
    if vs.len() < 2 || vs.len() % 2 == 1 {
        return Err(Error::NotAugmenting);
    }
    let covered = m.vertices();
    if covered.contains(&vs[0]) || covered.contains(&vs[vs.len() - 1]) {
        return Err(Error::NotAugmenting);
    }
    let distinct: BTreeSet<usize> = vs.iter().copied().collect();
    if distinct.len() != vs.len() {
        return Err(Error::NotAugmenting);
    }
    let mut out = m.clone();
    for (i, (u, v)) in p.edges().enumerate() {
        if i % 2 == 1 {
            if !out.remove(u, v) {
                return Err(Error::NotAugmenting);
            }
        } else if m.contains(u, v) {
            return Err(Error::NotAugmenting);
        }
    }
    for (u, v) in p.edges().step_by(2) {
        out.insert(u, v);
    }
    Ok(out)
}

/// `(S1, S2)`: unmatched vertices with an unmatched neighbour, and matched
/// edges that are the centre of an augmenting path of length 3.
pub fn s1_s2(g: &Graph, m: &Matching) -> Result<(usize, usize)> {
    m.validate(g)?;
    let mate = m.mates(g.n());
    let free_nbrs = |v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| mate[u].is_none())
            .collect()
    };
    let s1 = (0..g.n())
        .filter(|&v| mate[v].is_none() && g.neighbors(v).iter().any(|&u| mate[u].is_none()))
        .count();
    let s2 = m
        .edges()
        .filter(|&(b, c)| {
            let (fa, fd) = (free_nbrs(b), free_nbrs(c));
            fa.iter().any(|a| fd.iter().any(|d| a != d))
        })
        .count();
    Ok((s1, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn mm(edges: &[(usize, usize)]) -> Matching {
        Matching::new(edges.iter().copied()).unwrap()
    }

    #[test]
    fn strong_maximality_on_p6() {
        let g = Graph::path(6);
        assert!(is_strongly_maximal(&g, &mm(&[(1, 2), (3, 4)])).unwrap());
        assert!(!is_strongly_maximal(&g, &mm(&[(2, 3)])).unwrap());
        assert!(!is_strongly_maximal(&Graph::complete(2), &Matching::empty()).unwrap());
    }

    #[test]
    fn short_paths() {
        let g = Graph::path(6);
        assert_eq!(
            find_short_augmenting(&g, &mm(&[(2, 3)])).unwrap(),
            Some(AltPath::new(vec![0, 1]))
        );
        assert_eq!(
            find_short_augmenting(&Graph::path(4), &mm(&[(1, 2)])).unwrap(),
            Some(AltPath::new(vec![0, 1, 2, 3]))
        );
        assert_eq!(
            find_short_augmenting(&g, &mm(&[(1, 2), (3, 4)])).unwrap(),
            None
        );
        assert_eq!(
            find_short_augmenting(&Graph::complete(2), &Matching::empty()).unwrap(),
            Some(AltPath::new(vec![0, 1]))
        );
    }

    #[test]
    fn invalid_matching_is_rejected() {
        let g = Graph::path(3);
        assert!(matches!(
            is_strongly_maximal(&g, &mm(&[(0, 2)])),
            Err(Error::InvalidMatching(_))
        ));
        assert!(Matching::new([(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn maximum_matching_sizes() {
        assert_eq!(maximum_matching(&Graph::path(6)).len(), 3);
        assert_eq!(maximum_matching(&Graph::cycle(5)).len(), 2);
        assert!(maximum_matching(&Graph::empty(4)).is_empty());
        // Petersen graph has a perfect matching.
        let mut pet = Graph::empty(10);
        for i in 0..5 {
            pet.add_edge(i, (i + 1) % 5).unwrap();
            pet.add_edge(i, i + 5).unwrap();
            pet.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert_eq!(maximum_matching(&pet).len(), 5);
    }

    #[test]
    fn min_length_paths() {
        let g = Graph::path(6);
        assert_eq!(
            min_length_augmenting_path(&g, &mm(&[(1, 2), (3, 4)])).unwrap(),
            Some(AltPath::new(vec![0, 1, 2, 3, 4, 5]))
        );
        assert_eq!(
            min_length_augmenting_path(&g, &mm(&[(2, 3)])).unwrap(),
            Some(AltPath::new(vec![0, 1]))
        );
        assert_eq!(
            min_length_augmenting_path(&Graph::complete(2), &mm(&[(0, 1)])).unwrap(),
            None
        );
    }

    #[test]
    fn min_length_through_a_blossom() {
        // Free 0 - 1=2 triangle with 3; 3=4; 4 - 5 free. Shortest path must
        // leave the odd cycle 1-2-3 on the correct side.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4), (4, 5)]).unwrap();
        let m = mm(&[(1, 2), (3, 4)]);
        let p = min_length_augmenting_path(&g, &m).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn augment_examples() {
        let m = mm(&[(1, 2), (3, 4)]);
        let r = augment(&m, &AltPath::new(vec![0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(r, mm(&[(0, 1), (2, 3), (4, 5)]));
        let r = augment(&Matching::empty(), &AltPath::new(vec![0, 1])).unwrap();
        assert_eq!(r, mm(&[(0, 1)]));
        assert_eq!(
            augment(&m, &AltPath::new(vec![0, 1])),
            Err(Error::NotAugmenting)
        );
    }

    #[test]
    fn s1_s2_examples() {
        let g = Graph::path(6);
        assert_eq!(s1_s2(&g, &mm(&[(2, 3)])).unwrap(), (4, 1));
        assert_eq!(s1_s2(&g, &mm(&[(1, 2), (3, 4)])).unwrap(), (0, 0));
        assert_eq!(s1_s2(&g, &Matching::empty()).unwrap(), (6, 0));
    }

    #[test]
    fn agrees_with_oracles_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=10);
            let p = rng.random_range(0.15..0.6);
            let g = crate::generate::random_graph(n, p, &mut rng);
            assert_eq!(maximum_matching(&g).len(), oracle::matching_number(&g));
            for m in oracle::maximal_matchings(&g).into_iter().take(12) {
                let got = min_length_augmenting_path(&g, &m).unwrap();
                let want = oracle::shortest_augmenting_length(&g, &m);
                assert_eq!(got.as_ref().map(AltPath::len), want);
                if let Some(p) = &got {
                    let bigger = augment(&m, p).unwrap();
                    assert_eq!(bigger.len(), m.len() + 1);
                    bigger.validate(&g).unwrap();
                    if is_strongly_maximal(&g, &m).unwrap() {
                        assert!(is_strongly_maximal(&g, &bigger).unwrap());
                    }
                }
                let (s1, s2) = s1_s2(&g, &m).unwrap();
                assert_eq!(s1 + s2 == 0, is_strongly_maximal(&g, &m).unwrap());
            }
        }
    }
}
