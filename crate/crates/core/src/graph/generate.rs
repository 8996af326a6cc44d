use rand::Rng;

use super::{Edge, Graph};
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Full restarts allowed before [`gen_random_regular`] gives up.
const MAX_RESTARTS: usize = 1000;
/// Random point pairs tried before falling back to enumerating valid pairs.
const PAIR_TRIES: usize = 64;

/// `G(n, p)`: each unordered pair is an edge independently with probability
/// `p`, oriented from the smaller to the larger index.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("Erdős–Rényi graph needs n ≥ 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push(Edge::new(i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniformly-ish random simple `d`-regular graph on `n` vertices.
///
/// Pairing model: `d` points per vertex are matched two at a time, rejecting
/// only the pair that would create a loop or a repeated edge; when no valid
/// pair remains the whole pairing restarts.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d < 2 || d >= n {
        return Err(Error::param(format!("random regular graph needs 2 ≤ d < n (got n = {n}, d = {d})")));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::param(format!("n·d must be even (got n = {n}, d = {d})")));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_RESTARTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::RetryExhausted { attempts: MAX_RESTARTS })
}

fn try_pairing<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<Vec<Edge>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let valid = |adj: &[Vec<usize>], a: usize, b: usize| a != b && !adj[a].contains(&b);

    while !points.is_empty() {
        let mut chosen = None;
        for _ in 0..PAIR_TRIES {
            let i = rng.random_range(0..points.len());
            let j = rng.random_range(0..points.len());
            if i != j && valid(&adj, points[i], points[j]) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            let candidates: Vec<(usize, usize)> = (0..points.len())
                .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| valid(&adj, points[i], points[j]))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            chosen = Some(candidates[rng.random_range(0..candidates.len())]);
        }
        let (i, j) = chosen?;
        let (a, b) = (points[i], points[j]);
        // remove the higher position first so the lower stays valid
        points.swap_remove(i.max(j));
        points.swap_remove(i.min(j));
        adj[a].push(b);
        adj[b].push(a);
        edges.push(Edge::new(a.min(b), a.max(b)));
    }
    Some(edges)
}
