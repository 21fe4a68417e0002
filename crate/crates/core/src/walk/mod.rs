//! Discrete-time coined walks `U_w = S (I ⊗ C)` on properly edge-colored
//! regular graphs, with the flip-flop shift `S|v,c> = |e_c(v), c>` and the
//! Grover coin.
//!
//! The walk space is `H^N ⊗ H^d` with the position register first, so
//! `|v, c>` has flat index `v d + c`.

mod counting;
mod reduced;

pub use counting::{
    bipartite_count, bipartite_error_bound, monte_carlo_count, success_probability_bound,
    BipartiteCounter, ErrorBounds, WalkCountRun, WalkCountTrial,
};
pub use reduced::{
    edge_superposition, reduced_basis, reduced_edge_state, reduced_operator, u_block,
    verify_reduction, BipartiteMarking, EigenLabel, EigenPair, ReducedWalkSystem, ReductionCheck,
    WalkAngles, BASIS_LABELS,
};

use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, edge_color_bipartite, ColoredGraph};
use crate::qstate::{DenseUnitary, HilbertDims};
use crate::scalar::{re, Real};

/// Position and coin spaces of a walk on a properly colored regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSpace {
    graph: ColoredGraph,
    table: Vec<Vec<usize>>,
}

impl WalkSpace {
    pub fn new(graph: ColoredGraph) -> Result<Self> {
        if graph.degree() == 0 {
            return Err(Error::InvalidGraph("walk needs degree >= 1".into()));
        }
        let table = graph.neighbor_table()?;
        Ok(Self { graph, table })
    }

    /// `K_{n,n}` with the round-robin coloring.
    pub fn complete_bipartite(n: usize) -> Result<Self> {
        Self::new(edge_color_bipartite(&complete_bipartite(n, n)?)?)
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    /// `N`
    pub fn position_dim(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `d`
    pub fn coin_dim(&self) -> usize {
        self.graph.degree()
    }

    pub fn dims(&self) -> HilbertDims {
        HilbertDims::new(vec![self.position_dim(), self.coin_dim()]).expect("nonzero dims")
    }

    pub fn total_dim(&self) -> usize {
        self.position_dim() * self.coin_dim()
    }

    /// `e_c(v)`
    pub fn neighbor(&self, v: usize, c: usize) -> usize {
        self.table[v][c]
    }

    /// Flat index of `|v, c>`.
    pub fn index(&self, v: usize, c: usize) -> usize {
        v * self.coin_dim() + c
    }
}

/// `S|v, c> = |e_c(v), c>`
pub fn flip_flop_shift<T: Real>(ws: &WalkSpace) -> DenseUnitary<T> {
    let d = ws.coin_dim();
    let image: Vec<usize> = (0..ws.total_dim())
        .map(|i| ws.index(ws.neighbor(i / d, i % d), i % d))
        .collect();
    DenseUnitary::permutation(ws.dims(), &image).expect("proper coloring gives a permutation")
}

/// `C = (2/d) Σ_{a,b} |a><b| − I`
pub fn grover_coin<T: Real>(d: usize) -> Result<DenseUnitary<T>> {
    if d == 0 {
        return Err(Error::InvalidArgument("coin dimension must be >= 1".into()));
    }
    let off = T::lit(2.0) / T::count(d);
    Ok(DenseUnitary::from_fn_unchecked(HilbertDims::single(d)?, |r, c| {
        re(if r == c { off - T::one() } else { off })
    }))
}

/// `U_w = S (I ⊗ C)`
pub fn walk_operator<T: Real>(ws: &WalkSpace) -> DenseUnitary<T> {
    let coin = grover_coin::<T>(ws.coin_dim()).expect("degree >= 1");
    let id = DenseUnitary::identity(HilbertDims::single(ws.position_dim()).expect("N >= 1"));
    let local = id.tensor(&coin).with_dims(ws.dims()).expect("same size");
    flip_flop_shift::<T>(ws).compose(&local).expect("same size")
}

/// `O = (I − 2 Σ_{j ∈ K} |j><j|) ⊗ I`
pub fn position_oracle<T: Real>(ws: &WalkSpace, marked: impl Fn(usize) -> bool) -> DenseUnitary<T> {
    let d = ws.coin_dim();
    let diag: Vec<_> = (0..ws.total_dim())
        .map(|i| re(if marked(i / d) { -T::one() } else { T::one() }))
        .collect();
    DenseUnitary::diagonal(ws.dims(), &diag).expect("unit diagonal")
}

/// `U = U_w O` for the vertices marked by `bm`.
pub fn search_operator<T: Real>(ws: &WalkSpace, bm: &BipartiteMarking) -> Result<DenseUnitary<T>> {
    bm.check_space(ws)?;
    walk_operator::<T>(ws).compose(&position_oracle(ws, |v| bm.is_marked(v)))
}
