//! Tanner graphs and girth.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::lift::{PreLiftGrid, QcLiftSpec};
use crate::matrix::{BaseMatrix, ParityCheck};

/// Girth reported when a check and a variable share more than one edge.
pub const PARALLEL_EDGE_GIRTH: usize = 4;

/// Shortest cycle length, or infinite for a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => x >= g,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Bipartite graph in compressed adjacency form. Variables are vertices
/// `0..n_vars`, checks follow.
#[derive(Clone)]
pub struct TannerGraph {
    n_checks: usize,
    n_vars: usize,
    offsets: Vec<usize>,
    adj: Vec<u32>,
    parallel: bool,
}

impl fmt::Debug for TannerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TannerGraph({} checks, {} variables, {} edges)",
            self.n_checks,
            self.n_vars,
            self.edge_count()
        )
    }
}

impl TannerGraph {
    pub fn from_parity_check(h: &ParityCheck) -> Result<Self> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let edges = h
            .row_supports()
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&j| (i, j, 1)));
        Ok(Self::build(h.rows(), h.cols(), edges))
    }

    /// Multigraph of a base matrix; entries above one are parallel edges.
    pub fn from_base(b: &BaseMatrix) -> Result<Self> {
        if b.n_c() == 0 || b.n_v() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let edges = (0..b.n_c())
            .flat_map(|i| (0..b.n_v()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, b.get(i, j)));
        Ok(Self::build(b.n_c(), b.n_v(), edges))
    }

    fn build(n_checks: usize, n_vars: usize, edges: impl Iterator<Item = (usize, usize, u32)>) -> Self {
        let n = n_checks + n_vars;
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut parallel = false;
        for (c, v, mult) in edges {
            if mult > 1 {
                parallel = true;
            }
            for _ in 0..mult.min(2) {
                lists[v].push((n_vars + c) as u32);
                lists[n_vars + c].push(v as u32);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut adj = Vec::new();
        offsets.push(0);
        for l in lists {
            adj.extend(l);
            offsets.push(adj.len());
        }
        TannerGraph {
            n_checks,
            n_vars,
            offsets,
            adj,
            parallel,
        }
    }

    pub fn checks(&self) -> usize {
        self.n_checks
    }

    pub fn variables(&self) -> usize {
        self.n_vars
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.parallel
    }

    #[inline]
    fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn girth(&self) -> Girth {
        self.girth_from_roots(0..self.n_vars, usize::MAX)
    }

    /// Shortest cycle through any of `roots` (variable indices), looking
    /// only for cycles shorter than `limit`. The result is exact whenever
    /// the roots meet every shortest cycle; a result of `Infinite` with a
    /// finite limit means no cycle shorter than `limit` passes through a root.
    pub fn girth_from_roots(&self, roots: impl IntoIterator<Item = usize>, limit: usize) -> Girth {
        if self.parallel {
            return Girth::Finite(PARALLEL_EDGE_GIRTH);
        }
        let n = self.n_checks + self.n_vars;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        let mut best = limit;
        for root in roots {
            for &t in &touched {
                dist[t as usize] = u32::MAX;
            }
            touched.clear();
            queue.clear();
            dist[root] = 0;
            parent[root] = u32::MAX;
            touched.push(root as u32);
            queue.push_back(root as u32);
            'bfs: while let Some(u) = queue.pop_front() {
                let u = u as usize;
                let du = dist[u] as usize;
                if 2 * du >= best {
                    break;
                }
                for &w in self.neighbours(u) {
                    if w == parent[u] {
                        continue;
                    }
                    let w = w as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = (du + 1) as u32;
                        parent[w] = u as u32;
                        touched.push(w as u32);
                        queue.push_back(w as u32);
                    } else {
                        let len = du + dist[w] as usize + 1;
                        if len < best {
                            best = len;
                            if best <= 4 {
                                break 'bfs;
                            }
                        }
                    }
                }
            }
            if best <= 4 {
                break;
            }
        }
        if best < limit {
            Girth::Finite(best)
        } else {
            Girth::Infinite
        }
    }

    /// Connected components as (check indices, variable indices).
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.n_checks + self.n_vars;
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut checks = Vec::new();
            let mut vars = Vec::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(u) = stack.pop() {
                if u < self.n_vars {
                    vars.push(u);
                } else {
                    checks.push(u - self.n_vars);
                }
                for &w in self.neighbours(u) {
                    let w = w as usize;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            checks.sort_unstable();
            vars.sort_unstable();
            out.push((checks, vars));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Girth of an expanded parity-check matrix.
pub fn compute_girth(h: &ParityCheck) -> Result<Girth> {
    Ok(TannerGraph::from_parity_check(h)?.girth())
}

/// Girth of a QC code, using one root per circulant orbit. Cycles of
/// length `limit` or more are not searched for; pass `usize::MAX` for the
/// exact value.
pub fn spec_girth(spec: &QcLiftSpec, limit: usize) -> Result<Girth> {
    let h = spec.expand()?;
    let g = TannerGraph::from_parity_check(&h)?;
    Ok(qc_girth(&g, spec.r(), limit))
}

/// Girth of a graph whose variables fall into cyclic orbits of size `r`.
pub fn qc_girth(g: &TannerGraph, r: usize, limit: usize) -> Girth {
    g.girth_from_roots((0..g.variables()).step_by(r.max(1)), limit)
}

/// Girth of the pre-lifted protograph, a floor for the girth of every
/// circulant lift of it.
pub fn girth_lower_bound_inheritance(grid: &PreLiftGrid) -> Result<Girth> {
    Ok(TannerGraph::from_base(&grid.matrix())?.girth())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_a_forest() {
        let h = ParityCheck::from_dense(&[vec![1]]).unwrap();
        let g = TannerGraph::from_parity_check(&h).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.girth(), Girth::Infinite);
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(TannerGraph::from_parity_check(&ParityCheck::zeros(0, 3)).is_err());
    }

    #[test]
    fn tree_is_infinite() {
        let h = ParityCheck::from_dense(&[vec![1, 1, 0, 0], vec![0, 1, 1, 1]]).unwrap();
        assert_eq!(compute_girth(&h).unwrap(), Girth::Infinite);
    }

    #[test]
    fn small_cycles() {
        let h = ParityCheck::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(compute_girth(&h).unwrap(), Girth::Finite(4));
        // hexagon
        let h = ParityCheck::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(compute_girth(&h).unwrap(), Girth::Finite(6));
        let g = TannerGraph::from_parity_check(&h).unwrap();
        assert_eq!(g.girth_from_roots(0..3, 6), Girth::Infinite);
    }

    #[test]
    fn all_ones_base_has_girth_four() {
        let g = TannerGraph::from_base(&BaseMatrix::ones(2, 3)).unwrap();
        assert_eq!(g.girth(), Girth::Finite(4));
    }

    #[test]
    fn parallel_edges() {
        let b = BaseMatrix::from_rows(&[vec![2, 1]]).unwrap();
        let g = TannerGraph::from_base(&b).unwrap();
        assert!(g.has_parallel_edges());
        assert_eq!(g.girth(), Girth::Finite(PARALLEL_EDGE_GIRTH));
    }

    #[test]
    fn components_split() {
        let h = ParityCheck::from_dense(&[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let g = TannerGraph::from_parity_check(&h).unwrap();
        let c = g.components();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], (vec![0], vec![0, 1]));
        assert!(!g.is_connected());
    }
}
