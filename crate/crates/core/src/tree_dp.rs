//! Dynamic programs on trees rooted at a leaf: minimum strongly maximal
//! matchings, and the minimum of `S1 + S2` over matchings of each size.
//!
//! Every non-root vertex `v` with parent `p` owns the values for the edge
//! `(p, v)`, where `p` plays the role of the outer endpoint and the subtree
//! hangs below `v`.

use std::fmt::Write as _;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::knapsack::{combine, split_all, split_one_distinguished, Mode};
use crate::matching::Matching;

/// A tree rooted at a leaf `root`; `anchor` is the root's only neighbour.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub tree: Graph,
    pub root: usize,
    pub anchor: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Non-root vertices, children before parents.
    pub postorder: Vec<usize>,
    /// Vertex count of the subtree hanging below each vertex (itself
    /// included).
    pub size: Vec<usize>,
}

impl RootedTree {
    /// Rooted at the lowest-indexed leaf.
    pub fn new(t: &Graph) -> Result<Self> {
        if !t.is_tree() {
            return Err(Error::NotATree);
        }
        let root = (0..t.n())
            .find(|&v| t.degree(v) == 1)
            .ok_or(Error::OutOfRange {
                what: "n",
                value: t.n(),
                lo: 2,
                hi: usize::MAX,
            })?;
        Self::with_root(t, root)
    }

    pub fn with_root(t: &Graph, root: usize) -> Result<Self> {
        if !t.is_tree() {
            return Err(Error::NotATree);
        }
        if root >= t.n() || t.degree(root) != 1 {
            return Err(Error::OutOfRange {
                what: "root degree",
                value: if root < t.n() { t.degree(root) } else { 0 },
                lo: 1,
                hi: 1,
            });
        }
        let n = t.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &w in t.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    children[v].push(w);
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1; n];
        for &v in preorder.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let postorder = preorder.into_iter().rev().filter(|&v| v != root).collect();
        Ok(RootedTree {
            tree: t.clone(),
            root,
            anchor: t.neighbors(root)[0],
            parent,
            children,
            postorder,
            size,
        })
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    /// Largest matching size the DP tracks below `v` (including the edge to
    /// its parent).
    fn cap(&self, v: usize) -> usize {
        self.size[v].div_ceil(2)
    }
}

/// `F1..F5` per edge `(parent(v), v)`.
#[derive(Clone, Debug)]
pub struct SmmTable {
    pub f: Vec<[Cost; 5]>,
}

impl SmmTable {
    pub fn build(rt: &RootedTree) -> Self {
        let mut f = vec![[Cost::INF; 5]; rt.n()];
        for &v in &rt.postorder {
            let cs = &rt.children[v];
            if cs.is_empty() {
                f[v] = [Cost::INF, Cost::new(1), Cost::new(1), Cost::INF, Cost::ZERO];
                continue;
            }
            let a: Vec<Cost> = cs.iter().map(|&c| f[c][3].min(f[c][4])).collect();
            let f2s: Vec<Cost> = cs.iter().map(|&c| f[c][1]).collect();
            let f3s: Vec<Cost> = cs.iter().map(|&c| f[c][2]).collect();
            let f4s: Vec<Cost> = cs.iter().map(|&c| f[c][3]).collect();
            let sum = |xs: &[Cost]| xs.iter().fold(Cost::ZERO, |acc, &x| acc + x);
            let f1 = best_one(&f3s, &a).0;
            let f4 = best_one(&f2s, &f4s).0.min(best_one(&f3s, &a).0);
            let f5 = cs.iter().fold(Cost::ZERO, |acc, &c| acc + f[c][0]);
            f[v] = [f1, sum(&a) + 1, sum(&f4s) + 1, f4, f5];
        }
        SmmTable { f }
    }

    /// `min{F1, F2}` at the anchor edge.
    pub fn value(&self, rt: &RootedTree) -> Cost {
        let top = self.f[rt.anchor];
        top[0].min(top[1])
    }
}

/// `min_i dist_i + sum_{j != i} rest_j` with the lowest minimising `i`.
fn best_one(dist: &[Cost], rest: &[Cost]) -> (Cost, usize) {
    let l = rest.len();
    let mut suffix = vec![Cost::ZERO; l + 1];
    for i in (0..l).rev() {
        suffix[i] = suffix[i + 1] + rest[i];
    }
    let mut prefix = Cost::ZERO;
    let mut best = (Cost::INF, 0);
    for i in 0..l {
        let c = prefix + dist[i] + suffix[i + 1];
        if c < best.0 {
            best = (c, i);
        }
        prefix = prefix + rest[i];
    }
    best
}

/// Minimum strongly maximal matching of a tree and its size.
pub fn min_smm_tree(t: &Graph) -> Result<(usize, Matching)> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.n() == 1 {
        return Ok((0, Matching::empty()));
    }
    let rt = RootedTree::new(t)?;
    let table = SmmTable::build(&rt);
    let m = reconstruct_smm(&table, &rt);
    Ok((m.len(), m))
}

/// [`min_smm_tree`] summed over the components of a forest.
pub fn min_smm_forest(g: &Graph) -> Result<(usize, Matching)> {
    if !g.is_forest() {
        return Err(Error::NotATree);
    }
    let mut edges = Vec::new();
    for comp in g.components() {
        let (_, m) = min_smm_tree(&g.induced(&comp))?;
        edges.extend(m.edges().map(|(u, v)| (comp[u], comp[v])));
    }
    let m = Matching::new(edges).expect("components are disjoint");
    Ok((m.len(), m))
}

/// Witness for [`SmmTable::value`]. Ties prefer the lowest-indexed
/// distinguished child, the first alternative of `F4`, and `F4` over `F5`.
pub fn reconstruct_smm(table: &SmmTable, rt: &RootedTree) -> Matching {
    let f = &table.f;
    let mut m = Matching::empty();
    let top = f[rt.anchor];
    let start = if top[0] <= top[1] { 0 } else { 1 };
    let mut stack = vec![(rt.anchor, start)];
    let a_state = |c: usize| if f[c][3] <= f[c][4] { 3 } else { 4 };
    while let Some((v, state)) = stack.pop() {
        debug_assert!(f[v][state].is_finite());
        let p = rt.parent[v].unwrap();
        let cs = &rt.children[v];
        let a: Vec<Cost> = cs.iter().map(|&c| f[c][3].min(f[c][4])).collect();
        let col = |i: usize| -> Vec<Cost> { cs.iter().map(|&c| f[c][i]).collect() };
        match state {
            0 => {
                let (_, i) = best_one(&col(2), &a);
                m.insert(v, cs[i]);
                for (j, &c) in cs.iter().enumerate() {
                    stack.push((c, if j == i { 2 } else { a_state(c) }));
                }
            }
            1 => {
                m.insert(p, v);
                stack.extend(cs.iter().map(|&c| (c, a_state(c))));
            }
            2 => {
                m.insert(p, v);
                stack.extend(cs.iter().map(|&c| (c, 3)));
            }
            3 => {
                let (va, ia) = best_one(&col(1), &col(3));
                let (vb, ib) = best_one(&col(2), &a);
                if va <= vb {
                    m.insert(v, cs[ia]);
                    for (j, &c) in cs.iter().enumerate() {
                        stack.push((c, if j == ia { 1 } else { 3 }));
                    }
                } else {
                    m.insert(v, cs[ib]);
                    for (j, &c) in cs.iter().enumerate() {
                        stack.push((c, if j == ib { 2 } else { a_state(c) }));
                    }
                }
            }
            _ => stack.extend(cs.iter().map(|&c| (c, 0))),
        }
    }
    m
}

/// `F1..F7` per edge `(parent(v), v)`, each indexed by matching size.
#[derive(Clone, Debug)]
pub struct DomTable {
    pub f: Vec<[Vec<Cost>; 7]>,
}

fn at(v: &[Cost], k: usize) -> Cost {
    v.get(k).copied().unwrap_or(Cost::INF)
}

fn vmin(a: &[Cost], b: &[Cost], len: usize) -> Vec<Cost> {
    (0..len).map(|k| at(a, k).min(at(b, k))).collect()
}

fn shift_add(v: &[Cost], shift: usize, add: usize, len: usize) -> Vec<Cost> {
    (0..len)
        .map(|k| {
            if k < shift {
                Cost::INF
            } else {
                at(v, k - shift) + add
            }
        })
        .collect()
}

fn pad(v: Vec<Cost>, len: usize) -> Vec<Cost> {
    (0..len).map(|k| at(&v, k)).collect()
}

/// Child vectors gathered for one node of the deficiency DP.
struct Gathered {
    cap: usize,
    col: [Vec<Vec<Cost>>; 7],
    a: Vec<Vec<Cost>>,
    b: Vec<Vec<Cost>>,
}

impl Gathered {
    fn new(f: &[[Vec<Cost>; 7]], cs: &[usize], cap: usize) -> Self {
        let col = std::array::from_fn(|i| cs.iter().map(|&c| f[c][i].clone()).collect());
        let a = cs
            .iter()
            .map(|&c| vmin(&f[c][3], &f[c][4], f[c][3].len()))
            .collect();
        let b = cs
            .iter()
            .map(|&c| vmin(&f[c][0], &f[c][6], f[c][0].len()))
            .collect();
        Gathered { cap, col, a, b }
    }

    fn all(&self, vs: &[Vec<Cost>]) -> Vec<Cost> {
        combine(vs, Mode::All, self.cap)
    }

    fn one(&self, dist: &[Vec<Cost>], rest: &[Vec<Cost>]) -> Vec<Cost> {
        combine(rest, Mode::OneDistinguished(dist), self.cap)
    }
}

impl DomTable {
    pub fn build(rt: &RootedTree) -> Self {
        let n = rt.n();
        let mut f: Vec<[Vec<Cost>; 7]> = vec![Default::default(); n];
        let inf = Cost::INF;
        for &v in &rt.postorder {
            let cap = rt.cap(v);
            let len = cap + 1;
            let cs = &rt.children[v];
            if cs.is_empty() {
                f[v] = [
                    vec![inf, inf],
                    vec![inf, Cost::ZERO],
                    vec![inf, Cost::ZERO],
                    vec![inf, inf],
                    vec![Cost::ZERO, inf],
                    vec![Cost::new(2), inf],
                    vec![Cost::new(1), inf],
                ];
                continue;
            }
            let g = Gathered::new(&f, cs, cap);
            let [f1s, f2s, f3s, f4s, _, f6s, _] = &g.col;
            let all_a = g.all(&g.a);
            let all_f4 = g.all(f4s);
            let all_b = g.all(&g.b);
            let mut f1 = pad(g.one(f3s, &g.a), len);
            let f2 = shift_add(&all_a, 1, 0, len);
            let f3 = vmin(
                &shift_add(&all_f4, 1, 0, len),
                &shift_add(&all_a, 1, 1, len),
                len,
            );
            let mut f4 = vmin(&g.one(f2s, f4s), &g.one(f3s, &g.a), len);
            f1[0] = inf;
            f4[0] = inf;
            let f5 = vmin(
                &vmin(&g.all(f1s), &g.one(f6s, f1s), len),
                &shift_add(&all_b, 0, 1, len),
                len,
            );
            let f6 = shift_add(&all_b, 0, 2, len);
            let f7 = shift_add(&all_b, 0, 1, len);
            f[v] = [f1, f2, f3, f4, f5, f6, f7];
        }
        DomTable { f }
    }

    /// `F(T, k) = min{F1, F2, F6}` at the anchor edge, for `k = 0..=n/2`.
    pub fn deficiencies(&self, rt: &RootedTree) -> Vec<Cost> {
        let top = &self.f[rt.anchor];
        (0..=rt.n() / 2)
            .map(|k| at(&top[0], k).min(at(&top[1], k)).min(at(&top[5], k)))
            .collect()
    }
}

/// `F(t, k)` for every `k = 0..=n/2`: the minimum of `S1 + S2` over
/// matchings with exactly `k` edges, infinite when none exists.
pub fn f_tree_vector(t: &Graph) -> Result<Vec<Cost>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.n() == 1 {
        return Ok(vec![Cost::ZERO]);
    }
    let rt = RootedTree::new(t)?;
    Ok(DomTable::build(&rt).deficiencies(&rt))
}

pub fn f_tree_k(t: &Graph, k: usize) -> Result<Cost> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if k > t.n() / 2 {
        return Err(Error::k_out_of_range(k, 0, t.n() / 2));
    }
    Ok(f_tree_vector(t)?[k])
}

/// A size-`k` matching of `t` attaining `F(t, k)`.
pub fn deficiency_matching(t: &Graph, k: usize) -> Result<Matching> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.n() == 1 {
        return if k == 0 {
            Ok(Matching::empty())
        } else {
            Err(Error::k_out_of_range(k, 0, 0))
        };
    }
    let rt = RootedTree::new(t)?;
    reconstruct_deficiency_matching(&DomTable::build(&rt), &rt, k)
}

/// Witness for [`DomTable::deficiencies`] at `k`. Ties prefer `F2`, then
/// `F1`, then `F6` at the top; `F4` over `F5` and `F1` over `F7` below; the
/// lowest-indexed distinguished child.
pub fn reconstruct_deficiency_matching(
    table: &DomTable,
    rt: &RootedTree,
    k: usize,
) -> Result<Matching> {
    let defs = table.deficiencies(rt);
    let hi = defs.iter().rposition(|c| c.is_finite()).unwrap_or(0);
    if k > hi {
        return Err(Error::k_out_of_range(k, 0, hi));
    }
    let f = &table.f;
    let top = &f[rt.anchor];
    let start = [1, 0, 5]
        .into_iter()
        .find(|&i| at(&top[i], k) == defs[k])
        .unwrap();
    let mut m = Matching::empty();
    let mut stack = vec![(rt.anchor, start, k)];
    let a_state = |c: usize, k: usize| {
        if at(&f[c][3], k) <= at(&f[c][4], k) {
            3
        } else {
            4
        }
    };
    let b_state = |c: usize, k: usize| {
        if at(&f[c][0], k) <= at(&f[c][6], k) {
            0
        } else {
            6
        }
    };
    while let Some((v, state, k)) = stack.pop() {
        debug_assert!(
            at(&f[v][state], k).is_finite(),
            "state {state} at {v}, k={k}"
        );
        let p = rt.parent[v].unwrap();
        let cs = &rt.children[v];
        if cs.is_empty() {
            if state == 1 || state == 2 {
                m.insert(p, v);
            }
            continue;
        }
        let g = Gathered::new(f, cs, rt.cap(v));
        let cap = g.cap;
        let [f1s, f2s, f3s, f4s, _, f6s, _] = &g.col;
        let mut push_all = |ks: Vec<usize>, st: &dyn Fn(usize, usize) -> usize| {
            for (&c, kc) in cs.iter().zip(ks) {
                stack.push((c, st(c, kc), kc));
            }
        };
        match state {
            0 => {
                let (i, ks) = split_one_distinguished(f3s, &g.a, cap, k).unwrap();
                m.insert(v, cs[i]);
                let ci = cs[i];
                push_all(ks, &|c, kc| if c == ci { 2 } else { a_state(c, kc) });
            }
            1 => {
                m.insert(p, v);
                push_all(split_all(&g.a, cap, k - 1).unwrap(), &a_state);
            }
            2 => {
                m.insert(p, v);
                let plain = at(&g.all(f4s), k - 1);
                if plain <= at(&g.all(&g.a), k - 1) + 1 {
                    push_all(split_all(f4s, cap, k - 1).unwrap(), &|_, _| 3);
                } else {
                    push_all(split_all(&g.a, cap, k - 1).unwrap(), &a_state);
                }
            }
            3 => {
                let va = at(&g.one(f2s, f4s), k);
                let vb = at(&g.one(f3s, &g.a), k);
                if va <= vb {
                    let (i, ks) = split_one_distinguished(f2s, f4s, cap, k).unwrap();
                    m.insert(v, cs[i]);
                    let ci = cs[i];
                    push_all(ks, &|c, _| if c == ci { 1 } else { 3 });
                } else {
                    let (i, ks) = split_one_distinguished(f3s, &g.a, cap, k).unwrap();
                    m.insert(v, cs[i]);
                    let ci = cs[i];
                    push_all(ks, &|c, kc| if c == ci { 2 } else { a_state(c, kc) });
                }
            }
            4 => {
                let target = at(&f[v][4], k);
                if at(&g.all(f1s), k) == target {
                    push_all(split_all(f1s, cap, k).unwrap(), &|_, _| 0);
                } else if at(&g.one(f6s, f1s), k) == target {
                    let (i, ks) = split_one_distinguished(f6s, f1s, cap, k).unwrap();
                    let ci = cs[i];
                    push_all(ks, &|c, _| if c == ci { 5 } else { 0 });
                } else {
                    push_all(split_all(&g.b, cap, k).unwrap(), &b_state);
                }
            }
            _ => push_all(split_all(&g.b, cap, k).unwrap(), &b_state),
        }
    }
    Ok(m)
}

const SMM_NAMES: [&str; 5] = ["F1", "F2", "F3", "F4", "F5"];
const DOM_NAMES: [&str; 7] = ["F1", "F2", "F3", "F4", "F5", "F6", "F7"];

/// Tab-separated dump of both tables: `edge function k value`, one row per
/// entry, `INF` for infinity and `-` as `k` for the size-free table.
pub fn dump_tables(rt: &RootedTree, smm: &SmmTable, dom: &DomTable) -> String {
    let mut out = String::from("edge\tfunction\tk\tvalue\n");
    for &v in rt.postorder.iter().rev() {
        let p = rt.parent[v].unwrap();
        for (name, c) in SMM_NAMES.iter().zip(smm.f[v]) {
            writeln!(out, "{p}-{v}\tsmm.{name}\t-\t{c}").unwrap();
        }
    }
    for &v in rt.postorder.iter().rev() {
        let p = rt.parent[v].unwrap();
        for (name, vals) in DOM_NAMES.iter().zip(&dom.f[v]) {
            for (k, c) in vals.iter().enumerate() {
                writeln!(out, "{p}-{v}\tdom.{name}\t{k}\t{c}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{is_strongly_maximal, s1_s2};

    fn mm(edges: &[(usize, usize)]) -> Matching {
        Matching::new(edges.iter().copied()).unwrap()
    }

    #[test]
    fn min_smm_examples() {
        assert_eq!(
            min_smm_tree(&Graph::path(6)).unwrap(),
            (2, mm(&[(1, 2), (3, 4)]))
        );
        let (k, m) = min_smm_tree(&Graph::path(5)).unwrap();
        assert_eq!(k, 2);
        assert!(is_strongly_maximal(&Graph::path(5), &m).unwrap());
        assert_eq!(
            min_smm_tree(&Graph::complete(2)).unwrap(),
            (1, mm(&[(0, 1)]))
        );
        assert_eq!(
            min_smm_tree(&Graph::empty(1)).unwrap(),
            (0, Matching::empty())
        );
        assert_eq!(min_smm_tree(&Graph::cycle(4)), Err(Error::NotATree));
    }

    #[test]
    fn star_rooted_at_leaf_takes_one_centre_edge() {
        let (k, m) = min_smm_tree(&Graph::star(3)).unwrap();
        assert_eq!(k, 1);
        assert!(m.vertices().contains(&0));
    }

    #[test]
    fn f_tree_examples() {
        let p6 = Graph::path(6);
        assert_eq!(f_tree_k(&p6, 2).unwrap(), Cost::ZERO);
        assert_eq!(f_tree_k(&p6, 1).unwrap(), Cost::new(4));
        assert_eq!(f_tree_k(&p6, 0).unwrap(), Cost::new(6));
        assert!(f_tree_k(&p6, 4).is_err());
        assert_eq!(f_tree_k(&Graph::empty(1), 0).unwrap(), Cost::ZERO);
        // P5 has no perfect matching; index 2 is the last.
        assert_eq!(f_tree_vector(&Graph::path(5)).unwrap().len(), 3);
    }

    #[test]
    fn deficiency_witnesses() {
        let p6 = Graph::path(6);
        assert_eq!(deficiency_matching(&p6, 1).unwrap(), mm(&[(0, 1)]));
        assert_eq!(
            deficiency_matching(&p6, 3).unwrap(),
            mm(&[(0, 1), (2, 3), (4, 5)])
        );
        assert_eq!(deficiency_matching(&p6, 2).unwrap(), mm(&[(1, 2), (3, 4)]));
        let star = Graph::star(4);
        assert!(deficiency_matching(&star, 2).is_err());
    }

    #[test]
    fn dom_table_invariant_f7_is_f6_minus_one() {
        let t = Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let rt = RootedTree::new(&t).unwrap();
        let dom = DomTable::build(&rt);
        for &v in &rt.postorder {
            for (a, b) in dom.f[v][5].iter().zip(&dom.f[v][6]) {
                assert_eq!(a.value().map(|x| x - 1), b.value());
            }
        }
    }

    #[test]
    fn dump_contains_every_entry() {
        let rt = RootedTree::new(&Graph::path(4)).unwrap();
        let smm = SmmTable::build(&rt);
        let dom = DomTable::build(&rt);
        let text = dump_tables(&rt, &smm, &dom);
        assert!(text.starts_with("edge\tfunction\tk\tvalue\n"));
        assert!(text.contains("0-1\tsmm.F1\t-\t"));
        assert!(text.contains("INF"));
    }

    #[test]
    fn witnesses_match_values_on_random_trees() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let t = crate::generate::random_tree(12, &mut rng);
            let defs = f_tree_vector(&t).unwrap();
            for (k, d) in defs.iter().enumerate() {
                if let Some(d) = d.value() {
                    let m = deficiency_matching(&t, k).unwrap();
                    assert_eq!(m.len(), k);
                    let (s1, s2) = s1_s2(&t, &m).unwrap();
                    assert_eq!(s1 + s2, d);
                }
            }
            let (k, m) = min_smm_tree(&t).unwrap();
            assert!(is_strongly_maximal(&t, &m).unwrap());
            assert_eq!(defs.iter().position(|d| *d == Cost::ZERO), Some(k));
        }
    }
}
