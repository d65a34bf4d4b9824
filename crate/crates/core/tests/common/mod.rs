//! Graph generators and independent reference implementations shared by the
//! integration tests. Nothing here calls the library's measure code.

#![allow(dead_code)]

use groupcent::measures::Measure;
use groupcent::{Graph, VertexSet};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX;

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`. Weights are uniform in (0, 2] when `weighted`.
pub fn random_connected(n: usize, density: f64, weighted: bool, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut present = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.random_range(0..i)];
        present[a][b] = true;
        present[b][a] = true;
        pairs.push((a, b));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !present[a][b] && rng.random_bool(density) {
                pairs.push((a, b));
            }
        }
    }
    let edges: Vec<(usize, usize, f64)> = pairs
        .into_iter()
        .map(|(a, b)| {
            let w = if weighted { 2.0 * (1.0 - rng.random::<f64>()) } else { 1.0 };
            (a, b, w)
        })
        .collect();
    Graph::from_weighted_edges(n, edges).unwrap()
}

/// Random nonempty proper subset of `0..n`.
pub fn random_proper_set(n: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let size = rng.random_range(1..n);
    let mut ids: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        ids.swap(i, rng.random_range(0..=i));
    }
    VertexSet::new(n, ids[..size].iter().copied()).unwrap()
}

/// Every connected labeled graph on `n` vertices.
pub fn all_connected(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            let g = Graph::from_edges(n, edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Small-graph corpus: every connected graph with up to 5 vertices plus
/// `per_size` random graphs for each size in `6..=max_n`.
pub fn corpus(max_n: usize, per_size: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=max_n.min(5)).flat_map(all_connected).collect();
    for n in 6..=max_n {
        for i in 0..per_size {
            let density = [0.1, 0.3, 0.5, 0.8][i % 4];
            out.push(random_connected(n, density, false, (n * 1000 + i) as u64));
        }
    }
    out
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for e in g.edges() {
        a[e.u][e.v] = true;
        a[e.v][e.u] = true;
    }
    a
}

/// Hop distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = 1;
        d[e.v][e.u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn is_dominating(g: &Graph, s: &[usize]) -> bool {
    let a = adjacency_matrix(g);
    (0..g.n()).all(|v| s.contains(&v) || s.iter().any(|&u| a[u][v]))
}

pub fn is_vertex_cover(g: &Graph, s: &[usize]) -> bool {
    g.edges().iter().all(|e| s.contains(&e.u) || s.contains(&e.v))
}

pub fn degree_oracle(g: &Graph, s: &[usize]) -> Ratio<u64> {
    let a = adjacency_matrix(g);
    let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
    let hit = outside.iter().filter(|&&v| s.iter().any(|&u| a[u][v])).count();
    Ratio::new(hit as u64, outside.len() as u64)
}

pub fn closeness_oracle(g: &Graph, s: &[usize]) -> Ratio<u64> {
    let d = floyd_warshall(g);
    let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
    let total: usize = outside
        .iter()
        .map(|&v| s.iter().map(|&u| d[u][v]).min().unwrap())
        .sum();
    Ratio::new(total as u64, outside.len() as u64)
}

/// Every shortest `u`-`v` path, by depth-first search along distance layers.
pub fn all_shortest_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let d = floyd_warshall(g);
    let a = adjacency_matrix(g);
    let mut out = Vec::new();
    let mut path = vec![u];
    fn walk(
        at: usize,
        v: usize,
        d: &[Vec<usize>],
        a: &[Vec<bool>],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == v {
            out.push(path.clone());
            return;
        }
        for next in 0..a.len() {
            if a[at][next] && d[next][v] != INF && d[next][v] + 1 == d[at][v] {
                path.push(next);
                walk(next, v, d, a, path, out);
                path.pop();
            }
        }
    }
    if d[u][v] != INF {
        walk(u, v, &d, &a, &mut path, &mut out);
    }
    out
}

/// (paths through `s`, all shortest paths) for the pair, by enumeration.
pub fn sigma_oracle(g: &Graph, u: usize, v: usize, s: &[usize]) -> (u64, u64) {
    let paths = all_shortest_paths(g, u, v);
    let through = paths.iter().filter(|p| p.iter().any(|x| s.contains(x))).count();
    (through as u64, paths.len() as u64)
}

pub fn betweenness_oracle(g: &Graph, s: &[usize]) -> f64 {
    let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
    let c = outside.len();
    let mut sum = 0.0;
    for (i, &u) in outside.iter().enumerate() {
        for &v in &outside[i + 1..] {
            let (t, total) = sigma_oracle(g, u, v, s);
            sum += t as f64 / total as f64;
        }
    }
    2.0 * sum / (c * (c - 1)) as f64
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

/// Hitting times to `s` for every vertex, from the first-step equations.
pub fn hitting_oracle(g: &Graph, s: &[usize]) -> Vec<f64> {
    let n = g.n();
    let outside: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let pos = |v: usize| outside.iter().position(|&x| x == v);
    let c = outside.len();
    let mut a = vec![vec![0.0; c]; c];
    for (i, &v) in outside.iter().enumerate() {
        a[i][i] = 1.0;
        let wv: f64 = g.adjacency(v).iter().map(|&(_, w)| w).sum();
        for &(u, w) in g.adjacency(v) {
            if let Some(j) = pos(u) {
                a[i][j] -= w / wv;
            }
        }
    }
    let x = gauss_solve(a, vec![1.0; c]);
    let mut h = vec![0.0; n];
    for (i, &v) in outside.iter().enumerate() {
        h[v] = x[i];
    }
    h
}

pub fn randomwalk_oracle(g: &Graph, s: &[usize]) -> f64 {
    let h = hitting_oracle(g, s);
    let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
    outside.iter().map(|&v| h[v]).sum::<f64>() / outside.len() as f64
}

/// Classical per-vertex betweenness (unnormalized, each unordered pair once)
/// by Brandes' dependency accumulation.
pub fn brandes(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut cb = vec![0.0; n];
    for s in 0..n {
        let mut stack = Vec::new();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for w in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                cb[w] += delta[w];
            }
        }
    }
    cb.iter().map(|x| x / 2.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleScore {
    Exact(Ratio<u64>),
    Real(f64),
}

pub fn oracle_score(g: &Graph, s: &[usize], m: Measure) -> OracleScore {
    match m {
        Measure::Degree => OracleScore::Exact(degree_oracle(g, s)),
        Measure::Closeness => OracleScore::Exact(closeness_oracle(g, s)),
        Measure::Betweenness => OracleScore::Real(betweenness_oracle(g, s)),
        Measure::RandomWalk => OracleScore::Real(randomwalk_oracle(g, s)),
    }
}

/// Sequential brute force: every `k`-subset scored by the oracles above, then
/// all sets tying the most extreme score.
pub fn naive_optimum(g: &Graph, k: usize, m: Measure, tolerance: f64) -> Vec<Vec<usize>> {
    let maximize = matches!(m, Measure::Degree | Measure::Betweenness);
    let scored: Vec<(Vec<usize>, OracleScore)> = subsets(g.n(), k)
        .into_iter()
        .map(|s| {
            let score = oracle_score(g, &s, m);
            (s, score)
        })
        .collect();
    let better = |a: &OracleScore, b: &OracleScore| match (a, b) {
        (OracleScore::Exact(x), OracleScore::Exact(y)) => {
            if maximize { x > y } else { x < y }
        }
        (OracleScore::Real(x), OracleScore::Real(y)) => {
            if maximize { x > y } else { x < y }
        }
        _ => unreachable!(),
    };
    let mut best = scored[0].1;
    for (_, sc) in &scored {
        if better(sc, &best) {
            best = *sc;
        }
    }
    scored
        .into_iter()
        .filter(|(_, sc)| match (sc, &best) {
            (OracleScore::Exact(x), OracleScore::Exact(y)) => x == y,
            (OracleScore::Real(x), OracleScore::Real(y)) => {
                (x - y).abs() <= tolerance * 1f64.max(x.abs()).max(y.abs())
            }
            _ => unreachable!(),
        })
        .map(|(s, _)| s)
        .collect()
}
