//! Simple graphs and proper edge colorings of the graph families walked on.
//!
//! Bipartite graphs `K_{n1,n2}` use `V1 = {0, ..., n1 − 1}` and
//! `V2 = {n1, ..., n1 + n2 − 1}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected graph without loops or multi-edges. Edges are stored as
/// `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for SimpleGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        SimpleGraph::new(r.vertex_count, r.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<SimpleGraph> for GraphRepr {
    fn from(g: SimpleGraph) -> Self {
        GraphRepr {
            vertex_count: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    /// Repeated edges collapse; loops and out-of-range endpoints are errors.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) outside {vertex_count} vertices"
                )));
            }
            set.insert(ordered(u, v));
        }
        Ok(Self {
            vertex_count,
            edges: set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&ordered(u, v))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn complete_bipartite(n1: usize, n2: usize) -> Result<SimpleGraph> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidGraph("partitions must be nonempty".into()));
    }
    SimpleGraph::new(
        n1 + n2,
        (0..n1).flat_map(|u| (0..n2).map(move |v| (u, n1 + v))),
    )
}

pub fn complete_graph(n: usize) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::InvalidGraph("complete graph needs n >= 1".into()));
    }
    SimpleGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// A `d`-regular graph with a color in `[0, d)` on every edge. The coloring
/// is not required to be proper; see [`is_properly_colored`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoredRepr", into = "ColoredRepr")]
pub struct ColoredGraph {
    graph: SimpleGraph,
    degree: usize,
    colors: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoredRepr {
    vertex_count: usize,
    degree: usize,
    /// `[u, v, color]`
    edges: Vec<[usize; 3]>,
}

impl TryFrom<ColoredRepr> for ColoredGraph {
    type Error = Error;

    fn try_from(r: ColoredRepr) -> Result<Self> {
        let graph = SimpleGraph::new(r.vertex_count, r.edges.iter().map(|e| (e[0], e[1])))?;
        let colors = r.edges.iter().map(|e| ((e[0], e[1]), e[2]));
        let cg = ColoredGraph::new(graph, colors)?;
        if cg.degree != r.degree {
            return Err(Error::InvalidGraph(format!(
                "declared degree {} but graph is {}-regular",
                r.degree, cg.degree
            )));
        }
        Ok(cg)
    }
}

impl From<ColoredGraph> for ColoredRepr {
    fn from(g: ColoredGraph) -> Self {
        ColoredRepr {
            vertex_count: g.graph.vertex_count,
            degree: g.degree,
            edges: g.colors.iter().map(|(&(u, v), &c)| [u, v, c]).collect(),
        }
    }
}

impl ColoredGraph {
    /// Every edge must receive exactly one color and the graph must be
    /// regular with an even number of vertices.
    pub fn new(
        graph: SimpleGraph,
        colors: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self> {
        let degree = graph
            .regular_degree()
            .ok_or_else(|| Error::InvalidGraph("graph is not regular".into()))?;
        if !graph.vertex_count.is_multiple_of(2) {
            return Err(Error::InvalidGraph(format!(
                "odd vertex count {}",
                graph.vertex_count
            )));
        }
        let mut map = BTreeMap::new();
        for ((u, v), c) in colors {
            let e = ordered(u, v);
            if !graph.edges.contains(&e) {
                return Err(Error::InvalidGraph(format!("colored pair {e:?} is not an edge")));
            }
            if map.insert(e, c).is_some_and(|old| old != c) {
                return Err(Error::InvalidGraph(format!("edge {e:?} colored twice")));
            }
        }
        if map.len() != graph.edge_count() {
            return Err(Error::InvalidGraph("some edges are uncolored".into()));
        }
        Ok(Self {
            graph,
            degree,
            colors: map,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn color(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&ordered(u, v)).copied()
    }

    pub fn colored_edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    /// `table[v][c]` is the neighbour `e_c(v)` reached along color `c`.
    /// Fails unless the coloring is proper.
    pub fn neighbor_table(&self) -> Result<Vec<Vec<usize>>> {
        if !is_properly_colored(self) {
            return Err(Error::InvalidGraph("edge coloring is not proper".into()));
        }
        let mut table = vec![vec![usize::MAX; self.degree]; self.vertex_count()];
        for (&(u, v), &c) in &self.colors {
            table[u][c] = v;
            table[v][c] = u;
        }
        Ok(table)
    }
}

/// Every color is below `d` and no vertex has two incident edges of the
/// same color.
pub fn is_properly_colored(cg: &ColoredGraph) -> bool {
    let mut seen = vec![BTreeSet::new(); cg.vertex_count()];
    cg.colors.iter().all(|(&(u, v), &c)| {
        c < cg.degree && seen[u].insert(c) && seen[v].insert(c)
    })
}

/// Round-robin coloring `color(u, n + v) = (u + v) mod n` of `K_{n,n}`.
pub fn edge_color_bipartite(g: &SimpleGraph) -> Result<ColoredGraph> {
    let total = g.vertex_count();
    let n = total / 2;
    if !total.is_multiple_of(2) || n == 0 || *g != complete_bipartite(n, n)? {
        return Err(Error::InvalidGraph(
            "expected K_{n,n} with parts {0..n-1} and {n..2n-1}".into(),
        ));
    }
    let colors: Vec<_> = g.edges().map(|(u, w)| ((u, w), (u + w - n) % n)).collect();
    ColoredGraph::new(g.clone(), colors)
}

/// Circle-method 1-factorization of `K_n` for even `n` into `n − 1`
/// perfect matchings.
pub fn edge_color_complete_even(g: &SimpleGraph) -> Result<ColoredGraph> {
    let n = g.vertex_count();
    if n == 0 || *g != complete_graph(n)? {
        return Err(Error::InvalidGraph("expected a complete graph".into()));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidGraph(format!(
            "K_{n} has odd order and chromatic index n"
        )));
    }
    let m = n - 1;
    let half = n / 2;
    let colors: Vec<_> = g
        .edges()
        .map(|(u, v)| {
            // v == n − 1 is the hub; otherwise u, v sit on a circle of size n − 1
            let c = if v == m { u } else { (u + v) * half % m };
            ((u, v), c)
        })
        .collect();
    ColoredGraph::new(g.clone(), colors)
}
