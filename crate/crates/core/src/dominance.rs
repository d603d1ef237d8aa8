//! Dominance vectors: for each number of colors `t`, the largest number of
//! classes with a dominating vertex over proper colorings with exactly `t`
//! classes. A b-coloring with `t` colors exists iff `dom[t] = t`.

use crate::bcoloring::{verify_coloring, Coloring};
use crate::error::{Error, Result};
use crate::graph::{chromatic_stability2, Graph};
use crate::tcexpr::TcExpr;
use crate::tree_dp;

/// `values[j] = dom[chi + j]` for `t` from `chi` to `n`; `dom[t] = 0` above
/// `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceVector {
    pub chi: usize,
    pub values: Vec<usize>,
}

impl DominanceVector {
    pub fn new(chi: usize, values: Vec<usize>) -> Self {
        DominanceVector { chi, values }
    }

    /// Vertex count of the graph the vector describes.
    pub fn n(&self) -> usize {
        self.chi + self.values.len() - 1
    }

    /// `dom[t]`; zero above `n`. Panics below `chi`, where the vector is
    /// undefined.
    pub fn get(&self, t: usize) -> usize {
        assert!(t >= self.chi, "dom[{t}] read below chi = {}", self.chi);
        self.values.get(t - self.chi).copied().unwrap_or(0)
    }

    /// `(t, dom[t])` pairs, `t` ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(j, &d)| (self.chi + j, d))
    }

    /// All `t` with `dom[t] = t`.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.entries()
            .filter(|&(t, d)| t == d)
            .map(|(t, _)| t)
            .collect()
    }

    /// Largest `t` with `dom[t] = t`.
    pub fn b_chromatic(&self) -> usize {
        self.fixed_points().last().copied().unwrap_or(self.chi)
    }
}

/// Dense vertices (degree at least `m(T) - 1`) and the pivot, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotReport {
    pub m_value: usize,
    pub dense: Vec<usize>,
    pub pivot: Option<usize>,
}

/// A pivot is a non-dense vertex `v` of a tree with exactly `m(T)` dense
/// vertices such that every dense vertex is adjacent to `v` or to a dense
/// neighbour of `v`, and every dense neighbour of `v` that has another
/// dense neighbour has degree exactly `m(T) - 1`.
pub fn find_pivot(t: &Graph) -> Result<PivotReport> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let m = t.m_degree_bound();
    let dense: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) + 1 >= m).collect();
    let mut is_dense = vec![false; t.n()];
    dense.iter().for_each(|&v| is_dense[v] = true);
    let pivot = if dense.len() != m {
        None
    } else {
        (0..t.n()).filter(|&v| !is_dense[v]).find(|&v| {
            let dense_nbrs: Vec<usize> = t
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&x| is_dense[x])
                .collect();
            let covered = dense
                .iter()
                .all(|&d| t.has_edge(d, v) || dense_nbrs.iter().any(|&x| t.has_edge(x, d)));
            let tight = dense_nbrs.iter().all(|&d| {
                let has_dense_nbr = t.neighbors(d).iter().any(|&x| is_dense[x]);
                !has_dense_nbr || t.degree(d) + 1 == m
            });
            covered && tight
        })
    };
    Ok(PivotReport {
        m_value: m,
        dense,
        pivot,
    })
}

/// `m(T) - 1` for pivoted trees, `m(T)` otherwise.
pub fn b_chromatic_tree(t: &Graph) -> Result<usize> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.n() == 1 {
        return Ok(1);
    }
    let r = find_pivot(t)?;
    Ok(if r.pivot.is_some() {
        r.m_value - 1
    } else {
        r.m_value
    })
}

/// Identity up to the b-chromatic number, `m(T) - 1` at `m(T)` for pivoted
/// trees, the count of vertices of degree at least `t - 1` up to `Δ + 1`,
/// and zero beyond.
pub fn dominance_vector_tree(t: &Graph) -> Result<DominanceVector> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.n();
    if n == 1 {
        return Ok(DominanceVector::new(1, vec![1]));
    }
    let report = find_pivot(t)?;
    let m = report.m_value;
    let chi_b = if report.pivot.is_some() { m - 1 } else { m };
    let top = t.max_degree() + 1;
    let values = (2..=n)
        .map(|i| {
            if i <= chi_b {
                i
            } else if i == m {
                m - 1
            } else if i <= top {
                t.count_degree_at_least(i - 1)
            } else {
                0
            }
        })
        .collect();
    Ok(DominanceVector::new(2, values))
}

/// Search budget for [`b_coloring_tree`].
const TREE_COLORING_BUDGET: u64 = 1_000_000;

/// A proper coloring of the tree with exactly `k` classes, `dom_T[k]` of
/// which contain a dominating vertex.
pub fn b_coloring_tree(t: &Graph, k: usize) -> Result<Coloring> {
    let dom = dominance_vector_tree(t)?;
    let n = t.n();
    if k < dom.chi || k > n {
        return Err(Error::k_out_of_range(k, dom.chi, n));
    }
    let want = dom.get(k);
    let c = if n == 1 {
        Coloring::new(vec![0], 1)?
    } else if k == 2 {
        bipartition_coloring(t)
    } else if want == 0 {
        padded_bipartition(t, k)
    } else {
        dominant_search(t, k, want)?
    };
    let verdict = verify_coloring(t, &c)?;
    assert_eq!(verdict.dominant_classes.len(), want);
    Ok(c)
}

fn bipartition_coloring(t: &Graph) -> Coloring {
    let side = t.bipartition().expect("trees are bipartite");
    let colors = side.iter().map(|&s| usize::from(s)).collect();
    Coloring { colors, t: 2 }.canonical()
}

/// Two colors, then fresh singleton colors for `k - 2` vertices while both
/// original classes stay nonempty.
fn padded_bipartition(t: &Graph, k: usize) -> Coloring {
    let mut c = bipartition_coloring(t);
    let keep = [
        c.colors.iter().position(|&x| x == 0).unwrap(),
        c.colors.iter().position(|&x| x == 1).unwrap(),
    ];
    let mut next = 2;
    for v in 0..t.n() {
        if next == k {
            break;
        }
        if !keep.contains(&v) {
            c.colors[v] = next;
            next += 1;
        }
    }
    c.t = k;
    c
}

/// Picks `want` vertices of degree at least `k - 1` to be dominating with
/// colors `0..want`, colors their neighbourhoods by backtracking so each
/// sees every other color, and finishes the rest by list coloring.
fn dominant_search(t: &Graph, k: usize, want: usize) -> Result<Coloring> {
    let mut cands: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) + 1 >= k).collect();
    cands.sort_by_key(|&v| (std::cmp::Reverse(t.degree(v)), v));
    let mut search = Search {
        t,
        k,
        colors: vec![None; t.n()],
        steps: 0,
    };
    let mut found = None;
    for_each_subset(&cands, want, &mut |d| {
        if found.is_some() {
            return Ok(false);
        }
        if let Some(c) = search.try_dominators(d)? {
            found = Some(c);
            return Ok(false);
        }
        Ok(true)
    })?;
    found.ok_or(Error::BudgetExceeded(TREE_COLORING_BUDGET))
}

/// Calls `f` on the `size`-subsets of `items` in lexicographic position
/// order until it returns `false`.
fn for_each_subset(
    items: &[usize],
    size: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            let go = rec(items, size, i + 1, cur, f)?;
            cur.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(items, size, 0, &mut Vec::new(), f).map(|_| ())
}

struct Search<'a> {
    t: &'a Graph,
    k: usize,
    colors: Vec<Option<usize>>,
    steps: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > TREE_COLORING_BUDGET {
            Err(Error::BudgetExceeded(TREE_COLORING_BUDGET))
        } else {
            Ok(())
        }
    }

    fn try_dominators(&mut self, d: &[usize]) -> Result<Option<Coloring>> {
        let t = self.t;
        self.colors.iter_mut().for_each(|c| *c = None);
        for (i, &v) in d.iter().enumerate() {
            self.colors[v] = Some(i);
        }
        let mut is_dom = vec![false; t.n()];
        d.iter().for_each(|&v| is_dom[v] = true);
        let mut order = Vec::new();
        let mut queued = vec![false; t.n()];
        for &v in d {
            for &u in t.neighbors(v) {
                if !is_dom[u] && !queued[u] {
                    queued[u] = true;
                    order.push(u);
                }
            }
        }
        self.assign(d, &order, 0)
    }

    fn missing(&self, v: usize) -> (Vec<bool>, usize) {
        let mut seen = vec![false; self.k];
        seen[self.colors[v].unwrap()] = true;
        let mut free = 0;
        for &u in self.t.neighbors(v) {
            match self.colors[u] {
                Some(c) => seen[c] = true,
                None => free += 1,
            }
        }
        (seen, free)
    }

    fn feasible(&self, d: &[usize]) -> bool {
        d.iter().all(|&v| {
            let (seen, free) = self.missing(v);
            seen.iter().filter(|&&s| !s).count() <= free
        })
    }

    fn assign(&mut self, d: &[usize], order: &[usize], i: usize) -> Result<Option<Coloring>> {
        self.tick()?;
        if !self.feasible(d) {
            return Ok(None);
        }
        if i == order.len() {
            return Ok(self.finish());
        }
        let u = order[i];
        let t = self.t;
        let mut blocked = vec![false; self.k];
        for &x in t.neighbors(u) {
            if let Some(c) = self.colors[x] {
                blocked[c] = true;
            }
        }
        // Colors still missing at an adjacent dominator come first.
        let mut wanted = vec![false; self.k];
        for &x in t.neighbors(u) {
            if d.contains(&x) {
                let (seen, _) = self.missing(x);
                for c in 0..self.k {
                    if !seen[c] {
                        wanted[c] = true;
                    }
                }
            }
        }
        let mut tries: Vec<usize> = (0..self.k).filter(|&c| !blocked[c]).collect();
        tries.sort_by_key(|&c| (!wanted[c], c));
        for c in tries {
            self.colors[u] = Some(c);
            if let Some(done) = self.assign(d, order, i + 1)? {
                return Ok(Some(done));
            }
        }
        self.colors[u] = None;
        Ok(None)
    }

    /// Completes the partial coloring of the remaining forest, each vertex
    /// avoiding the colors of its colored neighbours.
    fn finish(&self) -> Option<Coloring> {
        let t = self.t;
        let k = self.k;
        let mut colors = self.colors.clone();
        let mut visited = vec![false; t.n()];
        for start in 0..t.n() {
            if colors[start].is_some() || visited[start] {
                continue;
            }
            // Root the uncolored component at `start`.
            let mut order = vec![start];
            let mut parent = vec![usize::MAX; t.n()];
            visited[start] = true;
            let mut i = 0;
            while i < order.len() {
                let v = order[i];
                i += 1;
                for &u in t.neighbors(v) {
                    if colors[u].is_none() && !visited[u] {
                        visited[u] = true;
                        parent[u] = v;
                        order.push(u);
                    }
                }
            }
            // ok[v][c]: the subtree below v can be colored with v taking c.
            let mut ok = vec![Vec::new(); t.n()];
            for &v in order.iter().rev() {
                let mut row = vec![true; k];
                for &u in t.neighbors(v) {
                    if let Some(c) = colors[u] {
                        row[c] = false;
                    }
                }
                for &u in t.neighbors(v) {
                    if colors[u].is_none() && parent[u] == v {
                        let good: Vec<usize> = (0..k).filter(|&c| ok[u][c]).collect();
                        for (c, r) in row.iter_mut().enumerate() {
                            if good.iter().all(|&g| g == c) {
                                *r = false;
                            }
                        }
                    }
                }
                ok[v] = row;
            }
            for &v in &order {
                let banned = if v == start { None } else { colors[parent[v]] };
                let c = (0..k).find(|&c| ok[v][c] && Some(c) != banned)?;
                colors[v] = Some(c);
            }
        }
        Some(Coloring {
            colors: colors.into_iter().map(Option::unwrap).collect(),
            t: k,
        })
    }
}

/// `dom[i] = i - F(T, n - i)` where `T` is the complement tree.
pub fn dominance_vector_cotree(ct: &Graph) -> Result<DominanceVector> {
    let t = ct.complement();
    if !t.is_tree() {
        return Err(Error::NotACoTree);
    }
    cotree_from_tree(&t)
}

fn cotree_from_tree(t: &Graph) -> Result<DominanceVector> {
    let n = t.n();
    let f = tree_dp::f_tree_vector(t)?;
    let chi = chromatic_stability2(&t.complement())?;
    let values = (chi..=n)
        .map(|i| {
            i - f[n - i]
                .value()
                .expect("sizes up to the matching number are feasible")
        })
        .collect();
    Ok(DominanceVector::new(chi, values))
}

/// Disjoint union: `dom[t] = min{t, dom_a[t] + dom_b[t]}` from
/// `max(chi_a, chi_b)` up to `n_a + n_b`.
pub fn dominance_union(a: &DominanceVector, b: &DominanceVector) -> DominanceVector {
    let chi = a.chi.max(b.chi);
    let values = (chi..=a.n() + b.n())
        .map(|t| t.min(a.get(t) + b.get(t)))
        .collect();
    DominanceVector::new(chi, values)
}

/// Join: `dom[t] = max over j in [max(chi_a, t - n_b), min(n_a, t - chi_b)]
/// of dom_a[j] + dom_b[t - j]`.
pub fn dominance_join(a: &DominanceVector, b: &DominanceVector) -> Result<DominanceVector> {
    let chi = a.chi + b.chi;
    let (na, nb) = (a.n(), b.n());
    let values = (chi..=na + nb)
        .map(|t| {
            let lo = a.chi.max(t.saturating_sub(nb));
            let hi = na.min(t - b.chi);
            if lo > hi {
                return Err(Error::WindowEmpty { t, a: lo, b: hi });
            }
            Ok((lo..=hi).map(|j| a.get(j) + b.get(t - j)).max().unwrap())
        })
        .collect::<Result<_>>()?;
    Ok(DominanceVector::new(chi, values))
}

/// Dominance vector of a tree-cograph, evaluated bottom-up.
pub fn dominance_tc(e: &TcExpr) -> Result<DominanceVector> {
    match e {
        TcExpr::Tree(l) => dominance_vector_tree(&l.tree),
        TcExpr::CoTree(l) => cotree_from_tree(&l.tree),
        TcExpr::Union(cs) => {
            let mut it = cs.iter().map(dominance_tc);
            let first = it.next().expect("union has children")?;
            it.try_fold(first, |acc, d| Ok(dominance_union(&acc, &d?)))
        }
        TcExpr::Join(cs) => {
            let mut it = cs.iter().map(dominance_tc);
            let first = it.next().expect("join has children")?;
            it.try_fold(first, |acc, d| dominance_join(&acc, &d?))
        }
    }
}

pub fn b_chromatic_tc(e: &TcExpr) -> Result<usize> {
    Ok(dominance_tc(e)?.b_chromatic())
}

/// Union takes the maximum, join the sum; trees need two colors (one for
/// `K1`) and co-trees `n - ν(T)`.
pub fn chromatic_tc(e: &TcExpr) -> Result<usize> {
    match e {
        TcExpr::Tree(l) => Ok(if l.tree.n() == 1 { 1 } else { 2 }),
        TcExpr::CoTree(l) => chromatic_stability2(&l.tree.complement()),
        TcExpr::Union(cs) => cs
            .iter()
            .map(chromatic_tc)
            .try_fold(0, |a, c| Ok(a.max(c?))),
        TcExpr::Join(cs) => cs.iter().map(chromatic_tc).try_fold(0, |a, c| Ok(a + c?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tcexpr::{decompose_tree_cograph, Leaf};

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

    fn dv(chi: usize, values: &[usize]) -> DominanceVector {
        DominanceVector::new(chi, values.to_vec())
    }

    #[test]
    fn pivot_examples() {
        let r = find_pivot(&pivoted_tree()).unwrap();
        assert_eq!(r.m_value, 4);
        assert_eq!(r.dense, vec![1, 2, 3, 4]);
        assert_eq!(r.pivot, Some(0));
        assert_eq!(find_pivot(&Graph::path(5)).unwrap().pivot, None);
        assert_eq!(find_pivot(&Graph::star(3)).unwrap().pivot, None);
        assert_eq!(find_pivot(&Graph::cycle(4)), Err(Error::NotATree));
    }

    #[test]
    fn b_chromatic_tree_examples() {
        assert_eq!(b_chromatic_tree(&pivoted_tree()).unwrap(), 3);
        assert_eq!(b_chromatic_tree(&Graph::path(5)).unwrap(), 3);
        assert_eq!(b_chromatic_tree(&Graph::complete(2)).unwrap(), 2);
    }

    #[test]
    fn tree_vectors() {
        assert_eq!(
            dominance_vector_tree(&Graph::star(4)).unwrap(),
            dv(2, &[2, 1, 1, 1])
        );
        let p = dominance_vector_tree(&pivoted_tree()).unwrap();
        assert_eq!(&p.values[..3], &[2, 3, 3]);
        assert!(p.values[3..].iter().all(|&x| x == 0));
        assert_eq!(
            dominance_vector_tree(&Graph::path(5)).unwrap(),
            dv(2, &[2, 3, 0, 0])
        );
        assert_eq!(
            dominance_vector_tree(&Graph::empty(1)).unwrap(),
            dv(1, &[1])
        );
    }

    #[test]
    fn tree_colorings() {
        let c = b_coloring_tree(&Graph::path(5), 3).unwrap();
        assert!(verify_coloring(&Graph::path(5), &c).unwrap().is_b_coloring);
        let c = b_coloring_tree(&pivoted_tree(), 4).unwrap();
        assert_eq!(
            verify_coloring(&pivoted_tree(), &c)
                .unwrap()
                .dominant_classes
                .len(),
            3
        );
        let star = Graph::star(4);
        let c = b_coloring_tree(&star, 2).unwrap();
        assert!(verify_coloring(&star, &c).unwrap().is_b_coloring);
        for k in 2..=5 {
            let c = b_coloring_tree(&star, k).unwrap();
            assert_eq!(c.t, k);
        }
        assert!(b_coloring_tree(&star, 6).is_err());
        assert!(b_coloring_tree(&star, 1).is_err());
    }

    #[test]
    fn cotree_vectors() {
        let cp6 = Graph::path(6).complement();
        assert_eq!(dominance_vector_cotree(&cp6).unwrap(), dv(3, &[3, 4, 1, 0]));
        let cp3 = Graph::path(3).complement();
        assert_eq!(dominance_vector_cotree(&cp3).unwrap(), dv(2, &[2, 0]));
        let cp5 = Graph::path(5).complement();
        let d = dominance_vector_cotree(&cp5).unwrap();
        assert_eq!(d.chi, 3);
        assert_eq!(d.get(3), 3);
        assert_eq!(d.get(5), 0);
        assert_eq!(
            dominance_vector_cotree(&Graph::cycle(4)),
            Err(Error::NotACoTree)
        );
    }

    #[test]
    fn union_and_join_examples() {
        let k3 = dv(3, &[3]);
        let u = dominance_union(&k3, &k3);
        assert_eq!(u.get(3), 3);
        assert_eq!(u.get(4), 0);
        let cp6 = dv(3, &[3, 4, 1, 0]);
        assert_eq!(dominance_union(&cp6, &cp6).get(5), 2);

        assert_eq!(dominance_join(&k3, &k3).unwrap(), dv(6, &[6]));
        let k1 = dv(1, &[1]);
        assert_eq!(dominance_join(&k1, &k1).unwrap(), dv(2, &[2]));
        let p3 = dominance_vector_tree(&Graph::path(3)).unwrap();
        assert_eq!(dominance_join(&p3, &k1).unwrap().get(3), 3);
    }

    #[test]
    fn tc_evaluation() {
        let piv = TcExpr::Tree(Leaf::with_offset(pivoted_tree(), 0));
        assert_eq!(b_chromatic_tc(&piv).unwrap(), 3);
        let cot = TcExpr::CoTree(Leaf::with_offset(Graph::path(6), 0));
        assert_eq!(b_chromatic_tc(&cot).unwrap(), 4);
        let k1 = |o| TcExpr::Tree(Leaf::with_offset(Graph::empty(1), o));
        let k2 = TcExpr::Join(vec![k1(0), k1(1)]);
        assert_eq!(dominance_tc(&k2).unwrap(), dv(2, &[2]));
        assert_eq!(b_chromatic_tc(&k2).unwrap(), 2);

        assert_eq!(
            chromatic_tc(&TcExpr::Tree(Leaf::with_offset(Graph::path(6), 0))).unwrap(),
            2
        );
        assert_eq!(chromatic_tc(&cot).unwrap(), 3);
        let g = Graph::path(6).join(&Graph::path(6).complement());
        assert_eq!(
            chromatic_tc(&decompose_tree_cograph(&g).unwrap()).unwrap(),
            5
        );
    }

    #[test]
    fn tc_matches_oracle_on_small_mixed_graph() {
        use crate::oracle::{oracle_dominance, OracleBudget};
        let g = Graph::path(3).join(&Graph::path(3).complement());
        let e = decompose_tree_cograph(&g).unwrap();
        assert_eq!(
            dominance_tc(&e).unwrap(),
            oracle_dominance(&g, OracleBudget::default()).unwrap()
        );
    }
}
