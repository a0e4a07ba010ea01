//! Small-graph machinery: incidence matrices, exhaustive max-weight
//! matching, and maximal-clique enumeration.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

/// A simple undirected graph; per-edge weights ride separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidInstance(format!("loop edge at vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) out of range for {n_vertices} vertices"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(WeightedGraph { n_vertices, edges })
    }

    pub fn complete(n_vertices: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n_vertices {
            for v in (u + 1)..n_vertices {
                edges.push((u, v));
            }
        }
        WeightedGraph { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex-by-edge 0/1 incidence matrix.
    pub fn incidence(&self) -> RatMatrix {
        let mut a = RatMatrix::zero(self.n_vertices, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            *a.get_mut(u, j) = num::one();
            *a.get_mut(v, j) = num::one();
        }
        a
    }
}

/// Maximum-weight matching restricted to `allowed` edges, by exhaustive
/// branch with a positive-weight suffix bound. The empty matching always
/// counts, so the result is at least zero.
pub fn max_weight_matching(
    graph: &WeightedGraph,
    weights: &[Rational],
    allowed: &[bool],
) -> Rational {
    assert_eq!(weights.len(), graph.n_edges());
    assert_eq!(allowed.len(), graph.n_edges());
    let m = graph.n_edges();
    let mut suffix_positive = vec![Rational::zero(); m + 1];
    for j in (0..m).rev() {
        suffix_positive[j] = &suffix_positive[j + 1]
            + if allowed[j] && weights[j].is_positive() {
                weights[j].clone()
            } else {
                Rational::zero()
            };
    }
    let mut best = Rational::zero();
    let mut used = vec![false; graph.n_vertices()];
    branch_matching(graph, weights, allowed, &suffix_positive, 0, &Rational::zero(), &mut used, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn branch_matching(
    graph: &WeightedGraph,
    weights: &[Rational],
    allowed: &[bool],
    suffix_positive: &[Rational],
    idx: usize,
    current: &Rational,
    used: &mut Vec<bool>,
    best: &mut Rational,
) {
    if current > best {
        *best = current.clone();
    }
    if idx == graph.n_edges() || current + &suffix_positive[idx] <= *best {
        return;
    }
    // Exclude edge idx.
    branch_matching(graph, weights, allowed, suffix_positive, idx + 1, current, used, best);
    // Include edge idx if allowed and endpoints free.
    let (u, v) = graph.edges()[idx];
    if allowed[idx] && !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        let value = current + &weights[idx];
        branch_matching(graph, weights, allowed, suffix_positive, idx + 1, &value, used, best);
        used[u] = false;
        used[v] = false;
    }
}

/// Visit every matching (as an edge-index slice) and fold with `f`.
pub fn fold_matchings<T>(
    graph: &WeightedGraph,
    init: T,
    mut f: impl FnMut(T, &[usize]) -> T,
) -> T {
    let mut used = vec![false; graph.n_vertices()];
    let mut chosen = Vec::new();
    fn rec<T>(
        graph: &WeightedGraph,
        idx: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        acc: T,
        f: &mut impl FnMut(T, &[usize]) -> T,
    ) -> T {
        if idx == graph.n_edges() {
            return f(acc, chosen);
        }
        let acc = rec(graph, idx + 1, used, chosen, acc, f);
        let (u, v) = graph.edges()[idx];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            chosen.push(idx);
            let acc = rec(graph, idx + 1, used, chosen, acc, f);
            chosen.pop();
            used[u] = false;
            used[v] = false;
            acc
        } else {
            acc
        }
    }
    rec(graph, 0, &mut used, &mut chosen, init, &mut f)
}

/// Maximal cliques of an adjacency matrix, Bron-Kerbosch with pivoting.
/// Every vertex appears in at least one clique (isolated ones as
/// singletons).
pub fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<usize> = (0..n).collect();
    let x = Vec::new();
    bron_kerbosch(adj, &mut r, p, x, &mut out);
    out
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    // Pivot on the vertex covering the most of p.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.push(v);
        let p_next: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x_next: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r, p_next, x_next, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn incidence_shape() {
        let g = WeightedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let a = g.incidence();
        assert_eq!((a.rows(), a.cols()), (3, 2));
        assert_eq!(a.col(0), vec![rat_int(1), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn path_matching_takes_heavier_edge() {
        let g = WeightedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let w = vec![rat_int(1), rat_int(5)];
        let allowed = vec![true, true];
        assert_eq!(max_weight_matching(&g, &w, &allowed), rat_int(5));
    }

    #[test]
    fn square_matching_uses_opposite_edges() {
        let g = WeightedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let w = vec![rat_int(3), rat_int(2), rat_int(3), rat_int(2)];
        let allowed = vec![true; 4];
        assert_eq!(max_weight_matching(&g, &w, &allowed), rat_int(6));
    }

    #[test]
    fn negative_weights_admit_empty_matching() {
        let g = WeightedGraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(
            max_weight_matching(&g, &[rat_int(-4)], &[true]),
            rat_int(0)
        );
    }

    #[test]
    fn disallowed_edges_are_skipped() {
        let g = WeightedGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let w = vec![rat_int(10), rat_int(1)];
        assert_eq!(max_weight_matching(&g, &w, &[false, true]), rat_int(1));
    }

    #[test]
    fn fold_visits_all_matchings_of_a_triangle() {
        let g = WeightedGraph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        // Matchings of a triangle: empty + three single edges.
        let count = fold_matchings(&g, 0usize, |acc, _| acc + 1);
        assert_eq!(count, 4);
    }

    #[test]
    fn cliques_of_a_path() {
        // 0-1-2 path: maximal cliques {0,1}, {1,2}.
        let adj = vec![
            vec![false, true, false],
            vec![true, false, true],
            vec![false, true, false],
        ];
        let mut cliques = maximal_cliques(&adj);
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort();
        assert_eq!(cliques, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn cliques_cover_isolated_vertices() {
        let adj = vec![vec![false; 2]; 2];
        let mut cliques = maximal_cliques(&adj);
        cliques.sort();
        assert_eq!(cliques, vec![vec![0], vec![1]]);
    }

    #[test]
    fn cliques_of_complement_of_perfect_matching() {
        // Four vertices, conflicts {0,1} and {2,3}; compatibility graph is
        // the complement, whose maximal cliques pick one per pair.
        let mut adj = vec![vec![true; 4]; 4];
        for i in 0..4 {
            adj[i][i] = false;
        }
        adj[0][1] = false;
        adj[1][0] = false;
        adj[2][3] = false;
        adj[3][2] = false;
        let mut cliques = maximal_cliques(&adj);
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort();
        assert_eq!(cliques, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    }
}
