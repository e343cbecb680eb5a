//! Enumeration of the connected multigraphs (with multiedges of index >= 2
//! and optional valence-one leaves) indexing the closed graph-sum formulas,
//! together with their automorphism orders, and of connected simple graphs.

use std::collections::BTreeMap;

/// A connected labeled multigraph. Vertex ids `0..m_leaves` are leaves
/// (valence exactly one); ids `m_leaves..m_leaves+n_vertices` are regular
/// vertices. Each multiedge is a sorted multiset of vertex ids, and the edge
/// list itself is sorted, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n_vertices: usize,
    pub m_leaves: usize,
    pub edges: Vec<Vec<usize>>,
    pub betti: u32,
    pub aut_order: u64,
}

fn factorial_u64(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

/// `|Aut|` for labeled vertices: identical multiedges may be permuted, and
/// within a multiedge the legs attached to the same vertex may be permuted.
fn aut_order(edges: &[Vec<usize>]) -> u64 {
    let mut classes: BTreeMap<&Vec<usize>, u64> = BTreeMap::new();
    for e in edges {
        *classes.entry(e).or_insert(0) += 1;
    }
    let mut aut = 1u64;
    for (edge, count) in &classes {
        aut *= factorial_u64(*count);
        // per copy of the edge, leg permutations within each vertex
        let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
        for &v in edge.iter() {
            *mult.entry(v).or_insert(0) += 1;
        }
        let per_edge: u64 = mult.values().map(|&k| factorial_u64(k)).product();
        for _ in 0..*count {
            aut *= per_edge;
        }
    }
    aut
}

fn is_connected(total: usize, edges: &[Vec<usize>]) -> bool {
    if total == 0 {
        return false;
    }
    if total == 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for e in edges {
        for w in e.windows(2) {
            let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    let r0 = find(&mut parent, 0);
    (1..total).all(|v| find(&mut parent, v) == r0)
}

/// All connected multigraphs with `n_vertices` regular vertices, `m_leaves`
/// leaves of valence exactly one, multiedges of index >= 2, and first Betti
/// number at most `betti_cap`.
pub fn enumerate_graphs(n_vertices: usize, m_leaves: usize, betti_cap: u32) -> Vec<Graph> {
    let total = n_vertices + m_leaves;
    if total == 0 {
        return Vec::new();
    }
    // sum (|e| - 1) = betti + total - 1 for connected graphs.
    let max_weight = betti_cap as usize + total - 1;
    // Candidate multiedges: sorted multisets of size >= 2, each leaf at most
    // once per edge (leaves have total valence one anyway).
    fn gen_multisets(
        total: usize,
        m_leaves: usize,
        max_size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() >= 2 {
            out.push(current.clone());
        }
        if current.len() == max_size {
            return;
        }
        for v in start..total {
            if v < m_leaves && current.contains(&v) {
                continue;
            }
            current.push(v);
            gen_multisets(total, m_leaves, max_size, v, current, out);
            current.pop();
        }
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut buf = Vec::new();
    gen_multisets(total, m_leaves, max_weight + 1, 0, &mut buf, &mut candidates);
    candidates.sort();

    fn dfs(
        candidates: &[Vec<usize>],
        from: usize,
        weight_left: usize,
        chosen: &mut Vec<Vec<usize>>,
        ctx: &(usize, usize, u32),
        out: &mut Vec<Graph>,
    ) {
        let (n_vertices, m_leaves, betti_cap) = *ctx;
        let total = n_vertices + m_leaves;
        let leaf_deg_ok = (0..m_leaves).all(|l| {
            chosen
                .iter()
                .map(|e| e.iter().filter(|&&v| v == l).count())
                .sum::<usize>()
                == 1
        });
        if leaf_deg_ok && is_connected(total, chosen) {
            let weight: usize = chosen.iter().map(|e| e.len() - 1).sum();
            let betti = weight as i64 + 1 - total as i64;
            if betti >= 0 && betti <= betti_cap as i64 {
                out.push(Graph {
                    n_vertices,
                    m_leaves,
                    edges: chosen.clone(),
                    betti: betti as u32,
                    aut_order: aut_order(chosen),
                });
            }
        }
        for idx in from..candidates.len() {
            let w = candidates[idx].len() - 1;
            if w > weight_left {
                continue;
            }
            let leaf_overflow = (0..m_leaves).any(|l| {
                let cur: usize = chosen
                    .iter()
                    .map(|e| e.iter().filter(|&&v| v == l).count())
                    .sum();
                let add = candidates[idx].iter().filter(|&&v| v == l).count();
                cur + add > 1
            });
            if leaf_overflow {
                continue;
            }
            chosen.push(candidates[idx].clone());
            dfs(candidates, idx, weight_left - w, chosen, ctx, out);
            chosen.pop();
        }
    }
    let mut out: Vec<Graph> = Vec::new();
    let mut chosen = Vec::new();
    let ctx = (n_vertices, m_leaves, betti_cap);
    dfs(&candidates, 0, max_weight, &mut chosen, &ctx, &mut out);
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out.dedup_by(|a, b| a.edges == b.edges);
    out
}

/// Connected simple graphs on `m` labeled vertices (no loops, no multiple
/// edges) with `|E| - m + 1 <= betti_cap`. Edges as sorted pairs.
pub fn enumerate_simple_graphs(m: usize, betti_cap: u32) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            pairs.push((i, j));
        }
    }
    let max_edges = (betti_cap as usize + m).saturating_sub(1);
    let mut out = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() > max_edges {
            continue;
        }
        let as_multi: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
        if !is_connected(m, &as_multi) {
            continue;
        }
        if edges.len() + 1 < m {
            continue;
        }
        let betti = edges.len() as i64 - m as i64 + 1;
        if betti < 0 || betti > betti_cap as i64 {
            continue;
        }
        out.push(edges);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aut_orders_spec_examples() {
        // n=2, single 2-edge {1,2}: aut 1
        let g = enumerate_graphs(2, 0, 0);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].edges, vec![vec![0, 1]]);
        assert_eq!(g[0].aut_order, 1);
        assert_eq!(g[0].betti, 0);

        // n=1: the empty graph (betti 0) and the loop 2-edge {1,1} (betti 1, aut 2)
        let g1 = enumerate_graphs(1, 0, 1);
        assert!(g1.iter().any(|g| g.edges.is_empty() && g.betti == 0));
        let l = g1.iter().find(|g| g.edges == vec![vec![0, 0]]).unwrap();
        assert_eq!(l.aut_order, 2);
        assert_eq!(l.betti, 1);

        // two parallel 2-edges {1,2}: aut 2, betti 1
        let g2 = enumerate_graphs(2, 0, 1);
        let par = g2
            .iter()
            .find(|g| g.edges == vec![vec![0, 1], vec![0, 1]])
            .unwrap();
        assert_eq!(par.aut_order, 2);
        assert_eq!(par.betti, 1);
    }

    #[test]
    fn betti_formula_and_counts() {
        // Trees on 3 labeled vertices with only 2-edges: 3 of them; at betti 0
        // also the single 3-edge {1,2,3} and the pairs {i,j},{i,k} sharing i.
        let g = enumerate_graphs(3, 0, 0);
        let two_edge_trees = g
            .iter()
            .filter(|g| g.edges.len() == 2 && g.edges.iter().all(|e| e.len() == 2))
            .count();
        assert_eq!(two_edge_trees, 3);
        assert!(g.iter().any(|g| g.edges == vec![vec![0, 1, 2]]));
        for gr in &g {
            let weight: usize = gr.edges.iter().map(|e| e.len() - 1).sum();
            assert_eq!(weight + 1 - 3, gr.betti as usize);
        }
    }

    #[test]
    fn leaves_have_valence_one() {
        // One leaf (id 0), one regular vertex (id 1).
        let g = enumerate_graphs(1, 1, 1);
        for gr in &g {
            let deg: usize = gr
                .edges
                .iter()
                .map(|e| e.iter().filter(|&&v| v == 0).count())
                .sum();
            assert_eq!(deg, 1, "leaf valence in {:?}", gr.edges);
        }
        assert!(g.iter().any(|gr| gr.edges == vec![vec![0, 1]]));
        assert!(g.iter().any(|gr| gr.edges == vec![vec![0, 1, 1]]));
    }

    #[test]
    fn mixed_two_leaves_one_vertex() {
        // Leaves 0,1; regular vertex 2: betti 0 graphs are the 3-edge {0,1,2}
        // and the pair {0,2},{1,2}.
        let g = enumerate_graphs(1, 2, 0);
        let shapes: Vec<Vec<Vec<usize>>> = g.iter().map(|g| g.edges.clone()).collect();
        assert!(shapes.contains(&vec![vec![0, 1, 2]]));
        assert!(shapes.contains(&vec![vec![0, 2], vec![1, 2]]));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn simple_graphs() {
        // Connected simple graphs on 3 vertices: 3 paths + 1 triangle.
        let g0 = enumerate_simple_graphs(3, 0);
        assert_eq!(g0.len(), 3);
        let g1 = enumerate_simple_graphs(3, 1);
        assert_eq!(g1.len(), 4);
        // Single vertex: one empty graph.
        assert_eq!(enumerate_simple_graphs(1, 2).len(), 1);
    }
}
