//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::{Error, Result};

/// Bitmask over vertex ids, used by the exponential enumerators.
pub(crate) type Mask = u128;

/// Largest vertex count accepted by the enumeration routines.
pub const MAX_ENUMERATION_VERTICES: usize = Mask::BITS as usize;

/// A finite simple loopless undirected graph.
///
/// Edges are stored normalized as `(u, v)` with `u < v` in lexicographic
/// order, and every neighbor list is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopRejected(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Normalized edges `(u, v)`, `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Partition of the vertices into connected components, ordered by their
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `|E| - |V| + #components`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.connected_components().len() - self.n
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }

    /// Two-colors the graph, or returns an odd cycle.
    pub fn is_bipartite(&self) -> Bipartition {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Bipartition::OddCycle(odd_cycle(v, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Coloring(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Induced subgraph on the vertices outside `removed`. The returned map
    /// sends each new vertex id to its id in `self`.
    pub fn delete_vertices(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n).filter(|&v| !removed.contains(v)).collect();
        (self.induced(&kept), kept)
    }

    /// Induced subgraph on `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let pairs = self.edges.iter().filter_map(|&(u, v)| {
            let (a, b) = (index[u], index[v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b))
        });
        Graph::from_edge_list(vertices.len(), pairs).expect("induced subgraph of a simple graph")
    }

    /// Graph on the same vertex set keeping only `keep` edges.
    pub fn spanning_subgraph(&self, keep: impl Fn(usize, usize) -> bool) -> Graph {
        let pairs: Vec<_> = self.edges.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Graph::from_edge_list(self.n, pairs).expect("subgraph of a simple graph")
    }

    /// Disjoint union, `other` relabeled to `self.n..`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let pairs = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edge_list(self.n + other.n, pairs).expect("union of simple graphs")
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// # Panics
    ///
    /// Panics if the graph has more than [`MAX_ENUMERATION_VERTICES`] vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<Mask> {
        assert!(
            self.n <= MAX_ENUMERATION_VERTICES,
            "enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices, got {}",
            self.n
        );
        self.adj.iter().map(|list| list.iter().fold(0, |m, &w| m | bit(w))).collect()
    }

    pub(crate) fn full_mask(&self) -> Mask {
        full_mask(self.n)
    }
}

pub(crate) fn bit(v: usize) -> Mask {
    1 << v
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        Mask::MAX >> (Mask::BITS as usize - n)
    }
}

pub(crate) fn mask_vertices(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn odd_cycle(v: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (v, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// A subgraph together with the host id of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertices[i]` is the host id of subgraph vertex `i`; sorted ascending.
    pub vertices: Vec<usize>,
}

impl Subgraph {
    pub fn of_host(host: &Graph, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Subgraph { graph: host.induced(&vertices), vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn host_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().iter().map(|&(u, v)| (self.vertices[u], self.vertices[v])).collect()
    }

    /// Subgraph id of a host vertex.
    pub fn local(&self, host_vertex: usize) -> Option<usize> {
        self.vertices.binary_search(&host_vertex).ok()
    }
}

/// Certificate returned by [`Graph::is_bipartite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// Proper 2-coloring, one flag per vertex.
    Coloring(Vec<bool>),
    /// Vertex sequence of an odd cycle (closing edge implied).
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Coloring(_))
    }
}

/// A subset of the vertices `0..capacity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet { members: vec![false; capacity], len: 0 }
    }

    pub fn from_vertices(capacity: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(capacity);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.members[v];
        if fresh {
            self.members[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter_map(|(v, &m)| m.then_some(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}
