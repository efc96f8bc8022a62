//! Dense simple graphs with bit-row adjacency and exact pair statistics.
//!
//! All counting (degrees, common neighbors, the `(v, k, λ̄, μ̄; σ)`
//! statistics) is exact; means and variances are rationals built from
//! integer pair sums, so identity tests never see float drift.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::{rat_to_real, Rat, Real};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0}, {0})")]
    LoopEdge(usize),
    #[error("vertex index {index} out of range for order {v}")]
    IndexOutOfRange { index: usize, v: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not regular (degrees {0} and {1} both occur)")]
    NotRegular(usize, usize),
    #[error("graph is complete or edgeless; pair statistics are undefined")]
    Degenerate,
    #[error("the given vertex set is not a clique")]
    NotAClique,
    #[error("clique search exceeded its node budget of {0}")]
    LimitExceeded(u64),
    #[error("invalid graph file: {0}")]
    Parse(String),
}

/// Dense undirected simple graph; `v` bit rows, symmetric, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    v: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(v: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let words = v.div_ceil(64);
        let mut g = Graph {
            v,
            words,
            rows: vec![0u64; v * words],
        };
        for &(i, j) in edges {
            if i == j {
                return Err(GraphError::LoopEdge(i));
            }
            let hi = i.max(j);
            if hi >= v {
                return Err(GraphError::IndexOutOfRange { index: hi, v });
            }
            if g.is_adjacent(i, j) {
                return Err(GraphError::DuplicateEdge(i.min(j), hi));
            }
            g.set_edge(i, j);
        }
        Ok(g)
    }

    fn set_edge(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.v).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.v {
            for j in i + 1..self.v {
                if self.is_adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.v).filter(|&j| self.is_adjacent(i, j)).collect()
    }

    /// Number of common neighbors of two vertices.
    pub fn common_count(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// The common degree, or an error naming two differing degrees.
    pub fn regular_degree(&self) -> Result<usize, GraphError> {
        let degs = self.degrees();
        let k = degs[0];
        match degs.iter().find(|&&d| d != k) {
            None => Ok(k),
            Some(&d) => Err(GraphError::NotRegular(k, d)),
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            v: self.v,
            words: self.words,
            rows: vec![0u64; self.v * self.words],
        };
        for i in 0..self.v {
            for j in i + 1..self.v {
                if !self.is_adjacent(i, j) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep` (in the given order) plus the map
    /// from new indices back to original vertices.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut g = Graph {
            v: keep.len(),
            words: keep.len().div_ceil(64),
            rows: vec![0u64; keep.len() * keep.len().div_ceil(64)],
        };
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.is_adjacent(i, j) {
                    g.set_edge(a, b);
                }
            }
        }
        (g, keep.to_vec())
    }

    pub fn is_connected(&self) -> bool {
        if self.v == 0 {
            return true;
        }
        let mut seen = vec![false; self.v];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.v
    }

    // ----- named fixtures -----

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    /// Kneser graph K(5, 2): vertices are the 2-subsets of a 5-set,
    /// adjacent when disjoint.
    pub fn petersen() -> Graph {
        let mut subsets = Vec::new();
        for a in 0..5u8 {
            for b in a + 1..5 {
                subsets.push((a, b));
            }
        }
        let mut edges = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                let (a, b) = subsets[i];
                let (c, d) = subsets[j];
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(10, &edges).unwrap()
    }
}

/// Random k-regular simple graph via the pairing model with rejection.
/// Deterministic in the seed; `None` if no simple pairing was found.
pub fn random_regular(v: usize, k: usize, seed: u64) -> Option<Graph> {
    if v * k % 2 != 0 || k >= v {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut stubs: Vec<usize> = (0..v).flat_map(|i| std::iter::repeat(i).take(k)).collect();
        stubs.shuffle(&mut rng);
        let mut edges = HashSet::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !edges.insert((a, b)) {
                continue 'attempt;
            }
        }
        let edges: Vec<_> = edges.into_iter().collect();
        return Some(Graph::new(v, &edges).unwrap());
    }
    None
}

/// The `(v, k, λ̄, μ̄; σ)` statistics of a regular graph, with exact
/// rational means and variances over ordered pairs.
#[derive(Debug, Clone)]
pub struct AsrgStats {
    pub v: usize,
    pub k: usize,
    pub lambda_mean: Rat,
    pub lambda_var: Rat,
    pub mu_mean: Rat,
    pub mu_var: Rat,
    /// `sqrt(max(lambda_var, mu_var))`; the least σ admitting the graph.
    pub sigma: Real,
    /// Ordered adjacent pair count, `v * k`.
    pub lambda_pairs: u128,
    /// Ordered distinct nonadjacent pair count, `v(v-1) - v*k`.
    pub mu_pairs: u128,
    lambda_sum: u128,
    lambda_sq_sum: u128,
    mu_sum: u128,
    mu_sq_sum: u128,
}

fn rat_u128(n: u128) -> Rat {
    Rat::from(BigInt::from(n))
}

impl AsrgStats {
    /// `Σ_{a~b} (λ_ab - λ̄)² + Σ_{a≁b} (μ_ab - μ̄)²` over ordered pairs,
    /// by direct pair counting. This is the exact rational side of the
    /// trace identity `tr(E²) = Σ ν_i²`.
    pub fn trace_rhs_exact(&self) -> Rat {
        let l = rat_u128(self.lambda_sq_sum)
            - rat_u128(self.lambda_sum) * rat_u128(self.lambda_sum) / rat_u128(self.lambda_pairs);
        let m = rat_u128(self.mu_sq_sum)
            - rat_u128(self.mu_sum) * rat_u128(self.mu_sum) / rat_u128(self.mu_pairs);
        l + m
    }

    /// `v (v-1) σ²` as an exact rational (σ² = max of the variances).
    pub fn bound_rhs(&self) -> Rat {
        let var = if self.lambda_var >= self.mu_var {
            self.lambda_var.clone()
        } else {
            self.mu_var.clone()
        };
        rat_u128(self.v as u128) * rat_u128(self.v as u128 - 1) * var
    }

    /// σ² as an exact rational.
    pub fn sigma_sq(&self) -> Rat {
        if self.lambda_var >= self.mu_var {
            self.lambda_var.clone()
        } else {
            self.mu_var.clone()
        }
    }
}

/// Exact pair statistics of a regular, non-complete, non-edgeless graph.
pub fn asrg_stats(g: &Graph) -> Result<AsrgStats, GraphError> {
    let v = g.order();
    if v < 2 {
        return Err(GraphError::Degenerate);
    }
    let k = g.regular_degree()?;
    if k == 0 || k == v - 1 {
        return Err(GraphError::Degenerate);
    }
    let mut lambda_sum = 0u128;
    let mut lambda_sq = 0u128;
    let mut mu_sum = 0u128;
    let mut mu_sq = 0u128;
    for a in 0..v {
        for b in 0..v {
            if a == b {
                continue;
            }
            let c = g.common_count(a, b) as u128;
            if g.is_adjacent(a, b) {
                lambda_sum += c;
                lambda_sq += c * c;
            } else {
                mu_sum += c;
                mu_sq += c * c;
            }
        }
    }
    let lambda_pairs = (v * k) as u128;
    let mu_pairs = (v * (v - 1) - v * k) as u128;
    let lambda_mean = rat_u128(lambda_sum) / rat_u128(lambda_pairs);
    let mu_mean = rat_u128(mu_sum) / rat_u128(mu_pairs);
    let lambda_var = rat_u128(lambda_sq) / rat_u128(lambda_pairs)
        - lambda_mean.clone() * lambda_mean.clone();
    let mu_var = rat_u128(mu_sq) / rat_u128(mu_pairs) - mu_mean.clone() * mu_mean.clone();
    let max_var = if lambda_var >= mu_var {
        lambda_var.clone()
    } else {
        mu_var.clone()
    };
    let sigma = rat_to_real(&max_var).sqrt();
    Ok(AsrgStats {
        v,
        k,
        lambda_mean,
        lambda_var,
        mu_mean,
        mu_var,
        sigma,
        lambda_pairs,
        mu_pairs,
        lambda_sum,
        lambda_sq_sum: lambda_sq,
        mu_sum,
        mu_sq_sum: mu_sq,
    })
}

/// Strongest regularity class of a graph, with exact parameters.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Regularity {
    Irregular,
    Regular { k: usize },
    EdgeRegular { v: usize, k: usize, lambda: usize },
    Srg { v: usize, k: usize, lambda: usize, mu: usize },
}

pub fn regularity_classify(g: &Graph) -> Regularity {
    let v = g.order();
    let k = match g.regular_degree() {
        Ok(k) => k,
        Err(_) => return Regularity::Irregular,
    };
    if k == 0 {
        return Regularity::Regular { k };
    }
    let mut lambda = None;
    for a in 0..v {
        for b in a + 1..v {
            if g.is_adjacent(a, b) {
                let c = g.common_count(a, b);
                match lambda {
                    None => lambda = Some(c),
                    Some(l) if l != c => return Regularity::Regular { k },
                    _ => {}
                }
            }
        }
    }
    let lambda = lambda.expect("k > 0 implies an edge");
    if k == v - 1 {
        // Complete graphs are edge-regular but never SRGs.
        return Regularity::EdgeRegular { v, k, lambda };
    }
    let mut mu = None;
    for a in 0..v {
        for b in a + 1..v {
            if !g.is_adjacent(a, b) {
                let c = g.common_count(a, b);
                match mu {
                    None => mu = Some(c),
                    Some(m) if m != c => return Regularity::EdgeRegular { v, k, lambda },
                    _ => {}
                }
            }
        }
    }
    Regularity::Srg {
        v,
        k,
        lambda,
        mu: mu.expect("non-complete graph has a nonadjacent pair"),
    }
}

/// Induced subgraph on the common neighborhood of a clique, plus the
/// map from new indices to original vertices. An empty clique yields
/// the whole graph.
pub fn common_neighborhood(g: &Graph, clique: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    for (i, &a) in clique.iter().enumerate() {
        if a >= g.order() {
            return Err(GraphError::IndexOutOfRange { index: a, v: g.order() });
        }
        for &b in &clique[i + 1..] {
            if !g.is_adjacent(a, b) {
                return Err(GraphError::NotAClique);
            }
        }
    }
    if clique.is_empty() {
        return Ok((g.clone(), (0..g.order()).collect()));
    }
    let keep: Vec<usize> = (0..g.order())
        .filter(|&x| clique.iter().all(|&c| g.is_adjacent(c, x)))
        .collect();
    Ok(g.induced(&keep))
}

pub const DEFAULT_CLIQUE_BUDGET: u64 = 100_000_000;

/// Exact clique number by branch and bound with bit-row candidate
/// intersection and a greedy-coloring upper bound. Deterministic.
pub fn clique_number(g: &Graph, budget: u64) -> Result<usize, GraphError> {
    let v = g.order();
    if v == 0 {
        return Ok(0);
    }
    let words = v.div_ceil(64);
    let mut cand = vec![0u64; words];
    for i in 0..v {
        cand[i / 64] |= 1 << (i % 64);
    }
    let mut state = CliqueSearch {
        g,
        best: 0,
        nodes: 0,
        budget,
    };
    state.expand(&cand, 0)?;
    Ok(state.best)
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: usize,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, cand: &[u64], depth: usize) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::LimitExceeded(self.budget));
        }
        let verts: Vec<usize> = bits(cand, self.g.order());
        if verts.is_empty() {
            self.best = self.best.max(depth);
            return Ok(());
        }
        // Greedy coloring bound: vertices colored in index order; a
        // vertex in color class c can extend the clique by at most c+1.
        let mut colors: Vec<Vec<u64>> = Vec::new();
        let mut color_of = vec![0usize; verts.len()];
        for (vi, &u) in verts.iter().enumerate() {
            let mut c = 0;
            loop {
                if c == colors.len() {
                    colors.push(vec![0u64; cand.len()]);
                }
                if self.g.row(u).iter().zip(&colors[c]).all(|(a, b)| a & b == 0) {
                    colors[c][u / 64] |= 1 << (u % 64);
                    color_of[vi] = c;
                    break;
                }
                c += 1;
            }
        }
        // Branch in descending color order so the bound prunes early.
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.sort_by(|&a, &b| color_of[b].cmp(&color_of[a]).then(verts[a].cmp(&verts[b])));
        let mut remaining = cand.to_vec();
        for vi in order {
            let u = verts[vi];
            if depth + color_of[vi] + 1 <= self.best {
                return Ok(());
            }
            let next: Vec<u64> = remaining
                .iter()
                .zip(self.g.row(u))
                .map(|(c, r)| c & r)
                .collect();
            self.expand(&next, depth + 1)?;
            remaining[u / 64] &= !(1 << (u % 64));
        }
        Ok(())
    }
}

fn bits(words: &[u64], v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            let idx = wi * 64 + b;
            if idx < v {
                out.push(idx);
            }
            w &= w - 1;
        }
    }
    out
}

/// The expander-mixing window `(lo, hi, e)` for a vertex subset of a
/// k-regular graph, with `r` and `s` supplied by the caller.
pub fn mixing_window(
    g: &Graph,
    subset: &[usize],
    r: Real,
    s: Real,
) -> Result<(Real, Real, usize), GraphError> {
    let k = g.regular_degree()? as Real;
    let v = g.order() as Real;
    let y = subset.len() as Real;
    let mut e = 0usize;
    for (i, &a) in subset.iter().enumerate() {
        for &b in &subset[i + 1..] {
            if g.is_adjacent(a, b) {
                e += 1;
            }
        }
    }
    let lo = 0.5 * y * (y * (k - s) / v + s);
    let hi = 0.5 * y * (y * (k - r) / v + r);
    Ok((lo, hi, e))
}

/// Parses the graph text format: line 1 `v`, then `i j` edge lines with
/// `0 <= i < j < v`; `#` starts a comment line.
pub fn graph_from_str(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let v: usize = lines
        .next()
        .and_then(|l| l.parse().ok())
        .ok_or_else(|| GraphError::Parse("missing order line".into()))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let i: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
        let j: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
        edges.push((i, j));
    }
    Graph::new(v, &edges)
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}
