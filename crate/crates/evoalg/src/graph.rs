//! Directed-graph kernel: strong connectivity, components, period (gcd of
//! closed-path lengths), categorical products, small-graph isomorphism and
//! DOT export.
//!
//! Graphs are simple digraphs (at most one edge per ordered pair, loops
//! allowed) on vertices 0..n. Text output (DOT, reports) prints 1-based
//! labels; the API is 0-based throughout.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::algebra::EvolutionAlgebra;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Edge i -> j iff the j-th coordinate of e_i^2 is nonzero, i.e. iff the
/// structure-matrix entry in row j, column i is nonzero.
pub fn graph_of(a: &EvolutionAlgebra) -> DiGraph {
    let n = a.dim();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if !a.entry(j, i).is_zero() {
                edges.insert((i, j));
            }
        }
    }
    DiGraph { n, edges }
}

impl DiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<DiGraph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v), n));
            }
            set.insert((u, v));
        }
        Ok(DiGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        adj
    }

    /// Strongly connected components by Tarjan's algorithm, each sorted
    /// ascending, the list ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.successors();
        let mut state = Tarjan {
            index: 0,
            stack: Vec::new(),
            on_stack: vec![false; self.n],
            idx: vec![None; self.n],
            low: vec![0; self.n],
            comps: Vec::new(),
        };
        for v in 0..self.n {
            if state.idx[v].is_none() {
                state.connect(v, &adj);
            }
        }
        let mut comps = state.comps;
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Period d(G) = gcd of the lengths of all closed paths, for a strongly
    /// connected graph with at least one edge. Computed by BFS level
    /// labelling from vertex 0 and folding gcd(level(u) + 1 - level(v))
    /// over all edges u -> v.
    pub fn period(&self) -> Result<u64> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        if self.edges.is_empty() {
            return Err(Error::NoClosedPath);
        }
        let adj = self.successors();
        let mut level = vec![i64::MIN; self.n];
        level[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if level[v] == i64::MIN {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut g: i64 = 0;
        for &(u, v) in &self.edges {
            g = g.gcd(&(level[u] + 1 - level[v]));
        }
        debug_assert!(g > 0, "strongly connected with an edge has a closed path");
        Ok(g as u64)
    }

    /// Categorical product: vertex (i, p) becomes i*m + p where m is the
    /// vertex count of `other`; edge ((i,p),(j,q)) iff i->j and p->q.
    /// The flattening matches the Kronecker convention of the tensor module.
    pub fn categorical_product(&self, other: &DiGraph) -> DiGraph {
        let m = other.n;
        let mut edges = BTreeSet::new();
        for &(i, j) in &self.edges {
            for &(p, q) in &other.edges {
                edges.insert((i * m + p, j * m + q));
            }
        }
        DiGraph { n: self.n * m, edges }
    }

    fn degree_signature(&self) -> Vec<(usize, usize, bool)> {
        let mut out_deg = vec![0usize; self.n];
        let mut in_deg = vec![0usize; self.n];
        let mut has_loop = vec![false; self.n];
        for &(u, v) in &self.edges {
            out_deg[u] += 1;
            in_deg[v] += 1;
            if u == v {
                has_loop[u] = true;
            }
        }
        (0..self.n).map(|v| (out_deg[v], in_deg[v], has_loop[v])).collect()
    }

    /// All vertex bijections sigma with sigma(u) -> sigma(v) an edge of
    /// `other` iff u -> v is an edge of self. Exhaustive permutation search
    /// with degree-signature pruning; intended for n <= 6.
    pub fn isomorphisms_onto(&self, other: &DiGraph) -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return found;
        }
        let sig_a = self.degree_signature();
        let sig_b = other.degree_signature();
        {
            let mut sa = sig_a.clone();
            let mut sb = sig_b.clone();
            sa.sort_unstable();
            sb.sort_unstable();
            if sa != sb {
                return found;
            }
        }
        let mut sigma = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_isomorphism(other, &sig_a, &sig_b, &mut sigma, &mut used, 0, &mut found);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &DiGraph,
        sig_a: &[(usize, usize, bool)],
        sig_b: &[(usize, usize, bool)],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        found: &mut Vec<Vec<usize>>,
    ) {
        if v == self.n {
            found.push(sigma.clone());
            return;
        }
        for w in 0..self.n {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                self.has_edge(u, v) == other.has_edge(sigma[u], w)
                    && self.has_edge(v, u) == other.has_edge(w, sigma[u])
            }) && self.has_edge(v, v) == other.has_edge(w, w);
            if !consistent {
                continue;
            }
            sigma[v] = w;
            used[w] = true;
            self.extend_isomorphism(other, sig_a, sig_b, sigma, used, v + 1, found);
            used[w] = false;
            sigma[v] = usize::MAX;
        }
    }

    /// Some edge-preserving vertex bijection onto `other`, or None.
    pub fn isomorphic_to(&self, other: &DiGraph) -> Option<Vec<usize>> {
        self.isomorphisms_onto(other).into_iter().next()
    }

    /// DOT text with 1-based vertex labels, vertices in ascending order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in 0..self.n {
            writeln!(out, "  {};", v + 1).unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {} -> {};", u + 1, v + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

struct Tarjan {
    index: usize,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

impl Tarjan {
    fn connect(&mut self, v: usize, adj: &[Vec<usize>]) {
        self.idx[v] = Some(self.index);
        self.low[v] = self.index;
        self.index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for &w in &adj[v] {
            if self.idx[w].is_none() {
                self.connect(w, adj);
                self.low[v] = self.low[v].min(self.low[w]);
            } else if self.on_stack[w] {
                self.low[v] = self.low[v].min(self.idx[w].unwrap());
            }
        }
        if self.low[v] == self.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("stack underflow");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            self.comps.push(comp);
        }
    }
}
