#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use graphdesign::spectral::WeightedGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// 0-based labels from 1-based ones.
pub fn labels(one_based: &[usize]) -> Vec<usize> {
    one_based.iter().map(|i| i - 1).collect()
}

pub fn set_of_sets(v: &[&[usize]]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = v.iter().map(|s| labels(s)).collect();
    out.sort();
    out
}

/// A connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `p`, weights uniform in `[lo, hi]`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, lo: f64, hi: f64) -> WeightedGraph {
    let tree: BTreeSet<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if tree.contains(&(i, j)) || rng.gen_bool(p) {
                edges.push((i, j, rng.gen_range(lo..=hi)));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// `n` points uniformly on the unit sphere in `R^d`.
pub fn sphere_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| loop {
            let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x: &f64| x * x).sum::<f64>().sqrt();
            if norm > 1e-3 {
                break v.iter().map(|x| x / norm).collect();
            }
        })
        .collect()
}
