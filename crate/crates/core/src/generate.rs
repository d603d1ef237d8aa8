//! Deterministic instance generators: random labeled trees and graphs, and
//! a catalog of structured trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::tcexpr::{Leaf, TcExpr};

/// Seeded generator used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labeled tree on `n` vertices, decoded from a random Prüfer
/// sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// Tree with the given Prüfer sequence (length `n - 2`), decoded in linear
/// time.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::empty(n);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        g.add_edge(leaf, x).unwrap();
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    g.add_edge(leaf, n - 1).unwrap();
    g
}

/// `G(n, p)` random graph.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random triangle-free graph: edges are proposed in random order and kept
/// when they close no triangle.
pub fn random_triangle_free<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.random_range(0..=i));
    }
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        if rng.random_bool(p) && !g.neighbors(u).iter().any(|&w| g.has_edge(w, v)) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Spider: a centre (vertex 0) with legs of the given lengths.
pub fn spider(legs: &[usize]) -> Graph {
    let n = 1 + legs.iter().sum::<usize>();
    let mut g = Graph::empty(n);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
    }
    g
}

/// Partitions of `total` into non-increasing parts.
fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Paths, stars and spiders with `1..=max_n` vertices, followed by
/// `random` uniform random trees with sizes cycling through `2..=max_n`.
pub fn tree_catalog(max_n: usize, random: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Graph::path(n));
        if n >= 4 {
            out.push(Graph::star(n - 1));
        }
        if n >= 5 {
            for legs in partitions(n - 1)
                .into_iter()
                .filter(|p| p.len() >= 3 && p[0] >= 2)
            {
                out.push(spider(&legs));
            }
        }
    }
    let mut rng = rng_from_seed(seed);
    if max_n >= 2 {
        for i in 0..random {
            let n = 2 + i % (max_n - 1);
            out.push(random_tree(n, &mut rng));
        }
    }
    out
}

/// Random tree-cograph expression on `n` vertices (ids `0..n`): leaves are
/// random trees or co-trees, inner nodes unions or joins of two parts.
pub fn random_tree_cograph<R: Rng>(n: usize, rng: &mut R) -> TcExpr {
    fn build<R: Rng>(n: usize, offset: usize, rng: &mut R) -> TcExpr {
        if n == 1 || rng.random_bool(0.35) {
            let t = random_tree(n, rng);
            let leaf = Leaf::with_offset(t, offset);
            return if n > 2 && rng.random_bool(0.5) {
                TcExpr::CoTree(leaf)
            } else {
                TcExpr::Tree(leaf)
            };
        }
        let left = rng.random_range(1..n);
        let parts = vec![
            build(left, offset, rng),
            build(n - left, offset + left, rng),
        ];
        if rng.random_bool(0.5) {
            TcExpr::Union(parts)
        } else {
            TcExpr::Join(parts)
        }
    }
    build(n, 0, rng)
}
