//! Oracles shared by the integration tests. Nothing here calls the
//! library's distance or resolution code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use metricdim::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Queue BFS from every vertex; `u32::MAX` marks unreachable pairs.
pub fn distances(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    (0..n)
        .map(|s| {
            let mut d = vec![u32::MAX; n];
            d[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in 0..n {
                    if g.has_edge(v, w) && d[w] == u32::MAX {
                        d[w] = d[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

fn edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| g.has_edge(a, b)).collect()
}

pub fn resolves_vertices(d: &[Vec<u32>], s: &[usize]) -> bool {
    let mut seen = HashSet::new();
    (0..d.len()).all(|v| seen.insert(s.iter().map(|&x| d[x][v]).collect::<Vec<_>>()))
}

pub fn resolves_edges(g: &Graph, d: &[Vec<u32>], s: &[usize]) -> bool {
    let mut seen = HashSet::new();
    edges(g).into_iter().all(|(a, b)| seen.insert(s.iter().map(|&x| d[x][a].min(d[x][b])).collect::<Vec<_>>()))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Smallest resolving set by trying every subset in order of size, then
/// lexicographically. Returns the size and the first set found.
pub fn naive_dimension(g: &Graph, edges_target: bool) -> (usize, Vec<usize>) {
    let d = distances(g);
    for k in 0..=g.n() {
        for s in combinations(g.n(), k) {
            let ok = if edges_target { resolves_edges(g, &d, &s) } else { resolves_vertices(&d, &s) };
            if ok {
                return (k, s);
            }
        }
    }
    unreachable!("the full vertex set resolves a connected graph")
}

/// Random spanning tree plus independent extra edges, randomly relabeled.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::empty(n).unwrap();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(perm[v], perm[parent]).unwrap();
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// The fixed pseudorandom corpus: `count` connected graphs, `2 <= n <= n_max`.
pub fn random_corpus(seed: u64, count: usize, n_max: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=n_max);
            let p = rng.gen_range(0.05..0.7);
            random_connected(&mut rng, n, p)
        })
        .collect()
}
