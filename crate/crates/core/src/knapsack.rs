//! Min-plus combination of per-child cost vectors indexed by matching size.
//!
//! A cost vector `g` maps `k` (position) to the cheapest cost with exactly
//! `k` edges; missing positions are infinite.

use crate::cost::Cost;

/// How children are combined.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    /// `h(k) = min over k_1 + ... + k_l = k of sum g_j(k_j)`.
    All,
    /// One child `i` uses `dist[i]`, every other child its own vector:
    /// `h(k) = min_i min over splits of dist_i(k_i) + sum_{j != i} g_j(k_j)`.
    OneDistinguished(&'a [Vec<Cost>]),
}

fn at(v: &[Cost], k: usize) -> Cost {
    v.get(k).copied().unwrap_or(Cost::INF)
}

/// Min-plus convolution truncated to indices `0..=cap`.
pub fn min_plus(a: &[Cost], b: &[Cost], cap: usize) -> Vec<Cost> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = (a.len() + b.len() - 1).min(cap + 1);
    let mut out = vec![Cost::INF; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if !x.is_finite() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            let c = x + y;
            if c < out[i + j] {
                out[i + j] = c;
            }
        }
    }
    out
}

fn pointwise_min(a: &[Cost], b: &[Cost]) -> Vec<Cost> {
    (0..a.len().max(b.len()))
        .map(|k| at(a, k).min(at(b, k)))
        .collect()
}

/// Combines `children` under `mode`, keeping indices `0..=cap`.
pub fn combine(children: &[Vec<Cost>], mode: Mode<'_>, cap: usize) -> Vec<Cost> {
    match mode {
        Mode::All => prefix_all(children, cap).pop().unwrap(),
        Mode::OneDistinguished(dist) => prefix_one(dist, children, cap).1.pop().unwrap(),
    }
}

/// [`combine`] without truncation.
pub fn knapsack_combine(children: &[Vec<Cost>], mode: Mode<'_>) -> Vec<Cost> {
    let cap = children
        .iter()
        .map(|c| c.len().saturating_sub(1))
        .sum::<usize>();
    let cap = match mode {
        Mode::All => cap,
        Mode::OneDistinguished(dist) => {
            cap + dist
                .iter()
                .map(|c| c.len().saturating_sub(1))
                .max()
                .unwrap_or(0)
        }
    };
    combine(children, mode, cap)
}

fn prefix_all(children: &[Vec<Cost>], cap: usize) -> Vec<Vec<Cost>> {
    let mut out = Vec::with_capacity(children.len() + 1);
    out.push(vec![Cost::ZERO]);
    for c in children {
        let next = min_plus(out.last().unwrap(), c, cap);
        out.push(next);
    }
    out
}

/// Running folds: `h0[i]` combines the first `i` children with none
/// distinguished, `h1[i]` with exactly one distinguished.
fn prefix_one(
    dist: &[Vec<Cost>],
    rest: &[Vec<Cost>],
    cap: usize,
) -> (Vec<Vec<Cost>>, Vec<Vec<Cost>>) {
    assert_eq!(dist.len(), rest.len());
    let mut h0 = vec![vec![Cost::ZERO]];
    let mut h1 = vec![Vec::new()];
    for (d, r) in dist.iter().zip(rest) {
        let a = min_plus(h1.last().unwrap(), r, cap);
        let b = min_plus(h0.last().unwrap(), d, cap);
        h1.push(pointwise_min(&a, &b));
        let next = min_plus(h0.last().unwrap(), r, cap);
        h0.push(next);
    }
    (h0, h1)
}

/// Smallest `j` with `prev(k - j) + child(j) == target`.
fn pick(prev: &[Cost], child: &[Cost], k: usize, target: Cost) -> Option<usize> {
    (0..=k).find(|&j| at(prev, k - j) + at(child, j) == target)
}

/// Per-child sizes attaining [`Mode::All`] at `k`, or `None` if infinite.
pub fn split_all(children: &[Vec<Cost>], cap: usize, k: usize) -> Option<Vec<usize>> {
    let pre = prefix_all(children, cap);
    let mut target = at(pre.last().unwrap(), k);
    if !target.is_finite() {
        return None;
    }
    let mut ks = vec![0; children.len()];
    let mut k = k;
    for i in (0..children.len()).rev() {
        let j = pick(&pre[i], &children[i], k, target).expect("prefix table is consistent");
        ks[i] = j;
        k -= j;
        target = at(&pre[i], k);
    }
    Some(ks)
}

/// The distinguished child and per-child sizes attaining
/// [`Mode::OneDistinguished`] at `k`. Ties go to the lowest distinguished
/// index.
pub fn split_one_distinguished(
    dist: &[Vec<Cost>],
    rest: &[Vec<Cost>],
    cap: usize,
    k: usize,
) -> Option<(usize, Vec<usize>)> {
    let (h0, h1) = prefix_one(dist, rest, cap);
    let mut target = at(h1.last().unwrap(), k);
    if !target.is_finite() {
        return None;
    }
    let mut ks = vec![0; rest.len()];
    let mut k = k;
    let mut chosen = None;
    for i in (0..rest.len()).rev() {
        let j = if chosen.is_none() {
            // Prefer keeping the distinguished child among earlier ones.
            match pick(&h1[i], &rest[i], k, target) {
                Some(j) => j,
                None => {
                    chosen = Some(i);
                    pick(&h0[i], &dist[i], k, target).expect("prefix table is consistent")
                }
            }
        } else {
            pick(&h0[i], &rest[i], k, target).expect("prefix table is consistent")
        };
        ks[i] = j;
        k -= j;
        target = if chosen.is_none() {
            at(&h1[i], k)
        } else {
            at(&h0[i], k)
        };
    }
    Some((chosen.expect("one child is distinguished"), ks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[u32]) -> Vec<Cost> {
        xs.iter()
            .map(|&x| {
                if x == u32::MAX {
                    Cost::INF
                } else {
                    Cost::new(x as usize)
                }
            })
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(knapsack_combine(&[v(&[0, 5])], Mode::All)[1], Cost::new(5));
        assert_eq!(
            knapsack_combine(&[v(&[0, 1]), v(&[0, 2])], Mode::All)[1],
            Cost::new(1)
        );
        assert_eq!(knapsack_combine(&[], Mode::All), v(&[0]));
        assert!(knapsack_combine(&[], Mode::OneDistinguished(&[])).is_empty());
    }

    fn brute_all(children: &[Vec<Cost>], k: usize) -> Cost {
        if children.is_empty() {
            return if k == 0 { Cost::ZERO } else { Cost::INF };
        }
        let (last, init) = children.split_last().unwrap();
        (0..=k)
            .map(|j| brute_all(init, k - j) + at(last, j))
            .min()
            .unwrap()
    }

    fn brute_one(dist: &[Vec<Cost>], rest: &[Vec<Cost>], k: usize) -> Cost {
        (0..rest.len())
            .map(|i| {
                let mut cs = rest.to_vec();
                cs[i] = dist[i].clone();
                brute_all(&cs, k)
            })
            .min()
            .unwrap_or(Cost::INF)
    }

    fn cost_vec() -> impl Strategy<Value = Vec<Cost>> {
        prop::collection::vec(
            prop_oneof![3 => (0usize..8).prop_map(Cost::new), 1 => Just(Cost::INF)],
            1..=6,
        )
    }

    proptest! {
        #[test]
        fn all_mode_matches_exhaustive_splits(children in prop::collection::vec(cost_vec(), 0..=4)) {
            let h = knapsack_combine(&children, Mode::All);
            for k in 0..=8 {
                prop_assert_eq!(at(&h, k), brute_all(&children, k));
                match split_all(&children, 8, k) {
                    None => prop_assert!(!brute_all(&children, k).is_finite()),
                    Some(ks) => {
                        prop_assert_eq!(ks.iter().sum::<usize>(), k);
                        let total = ks.iter().zip(&children).fold(Cost::ZERO, |acc, (&j, c)| acc + at(c, j));
                        prop_assert_eq!(total, brute_all(&children, k));
                    }
                }
            }
        }

        #[test]
        fn one_distinguished_matches_exhaustive(pairs in prop::collection::vec((cost_vec(), cost_vec()), 1..=4)) {
            let (dist, rest): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            let h = combine(&rest, Mode::OneDistinguished(&dist), 10);
            for k in 0..=10 {
                let want = brute_one(&dist, &rest, k);
                prop_assert_eq!(at(&h, k), want);
                match split_one_distinguished(&dist, &rest, 10, k) {
                    None => prop_assert!(!want.is_finite()),
                    Some((i, ks)) => {
                        prop_assert_eq!(ks.iter().sum::<usize>(), k);
                        let total = (0..rest.len()).fold(Cost::ZERO, |acc, j| {
                            acc + at(if j == i { &dist[j] } else { &rest[j] }, ks[j])
                        });
                        prop_assert_eq!(total, want);
                    }
                }
            }
        }
    }
}
