//! Finite simple undirected graphs with dense integer vertices, shortest-path
//! distances, and the distance-based graph transforms used everywhere else in
//! the crate.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// The adjacency structure is kept symmetric and loop-free by construction:
/// `add_edge` rejects loops, out-of-range endpoints, and duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::input(format!("loop at vertex {u}")));
        }
        if !self.adj[u].insert(v) {
            return Err(Error::input(format!("duplicate edge ({u}, {v})")));
        }
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.vertex_count() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == k).then_some(k)
    }

    /// Shortest-path distance from `source` to every vertex; `None` marks
    /// unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        let n = self.vertex_count();
        if source >= n {
            return Err(Error::input(format!(
                "source {source} out of range for {n} vertices"
            )));
        }
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Partition of the vertex set into connected components, classes ordered
    /// by minimum element and sorted internally.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut class = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                class.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Counts of vertices at each distance from `source`. Errors on a
    /// disconnected graph; the count sequence of a fragment would be
    /// meaningless for the callers that consume it.
    pub fn distance_sequence(&self, source: usize) -> Result<DistanceSequence> {
        let dist = self.bfs_distances(source)?;
        let mut counts = Vec::new();
        for d in &dist {
            let d = d.ok_or(Error::Disconnected)?;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        Ok(DistanceSequence {
            counts,
            complete: true,
        })
    }

    /// Maximum distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize> {
        if self.vertex_count() == 0 {
            return Err(Error::input("diameter of the empty graph is undefined"));
        }
        let mut diam = 0;
        for v in 0..self.vertex_count() {
            let dist = self.bfs_distances(v)?;
            for d in dist {
                diam = diam.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(diam)
    }

    /// Graph on the same vertices with the edge set inverted.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edge is valid");
                }
            }
        }
        g
    }

    /// Two-color the graph or exhibit an odd closed walk. Works per component;
    /// no connectivity requirement.
    pub fn check_bipartite(&self) -> Bipartiteness {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            parent[w] = u;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Bipartiteness::OddClosedWalk(odd_walk(&parent, u, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartiteness::TwoColoring(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.check_bipartite(), Bipartiteness::TwoColoring(_))
    }

    /// Antipodality: for every vertex `u`, all distinct vertices of
    /// `{u} ∪ Γ_m(u)` are at mutual distance `m`, where `m` is the diameter.
    /// Diameter ≤ 1 is vacuously antipodal.
    pub fn is_antipodal(&self) -> Result<bool> {
        let dm = DistanceMatrix::compute(self)?;
        let m = dm.diameter();
        let n = self.vertex_count();
        for u in 0..n {
            let mut far: Vec<usize> = vec![u];
            far.extend((0..n).filter(|&v| v != u && dm.get(u, v) == Some(m)));
            for i in 0..far.len() {
                for j in (i + 1)..far.len() {
                    if dm.get(far[i], far[j]) != Some(m) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Graph on the same vertices joining exactly the pairs at distance `m`.
    pub fn distance_relation_graph(&self, m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(Error::input("distance relation requires m >= 1"));
        }
        let dm = DistanceMatrix::compute(self)?;
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if dm.get(u, v) == Some(m) {
                    g.add_edge(u, v).expect("relation edge is valid");
                }
            }
        }
        Ok(g)
    }

    /// Graph joining the pairs whose distance d satisfies d > 1 and
    /// d ≡ 1 (mod m).
    pub fn mod_distance_graph(&self, m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(Error::input("mod-distance relation requires m >= 1"));
        }
        let dm = DistanceMatrix::compute(self)?;
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if let Some(d) = dm.get(u, v) {
                    if d > 1 && d % m == 1 % m {
                        g.add_edge(u, v).expect("relation edge is valid");
                    }
                }
            }
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.vertex_count(),
            self.edges()
        )
    }
}

/// Closed walk reconstruction for the non-bipartite witness: walk from `u` up
/// to the BFS root, back down to `w`, then across the offending edge `(w, u)`.
fn odd_walk(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let up = path_to_root(u);
    let mut down = path_to_root(w);
    down.reverse();
    let mut walk = up;
    walk.extend_from_slice(&down[1..]);
    walk.push(u);
    walk
}

/// Result of the bipartiteness check: a valid 2-coloring, or a closed walk of
/// odd length (first vertex repeated at the end).
#[derive(Clone, Debug)]
pub enum Bipartiteness {
    TwoColoring(Vec<bool>),
    OddClosedWalk(Vec<usize>),
}

/// All-pairs shortest-path distances. `None` is the explicit unreachable
/// marker; it never collides with a real distance.
#[derive(Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Option<usize>>,
}

impl DistanceMatrix {
    /// Runs one BFS per vertex. Errors with `Disconnected` if any pair is
    /// unreachable, which is what every caller in this crate wants.
    pub fn compute(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for v in 0..n {
            let row = g.bfs_distances(v)?;
            if row.iter().any(|d| d.is_none()) {
                return Err(Error::Disconnected);
            }
            dist.extend(row);
        }
        Ok(DistanceMatrix { n, dist })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u * self.n + v]
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().map(|d| d.unwrap_or(0)).max().unwrap_or(0)
    }

    /// Ordered pairs `(u, v)` with `u != v` at distance exactly `d`,
    /// lexicographically sorted.
    pub fn ordered_pairs_at(&self, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.get(u, v) == Some(d) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Per-radius vertex counts around a vertex. `complete` is false when the
/// graph is a truncated surrogate of an infinite construction and the counts
/// are only trusted up to the listed radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceSequence {
    pub counts: Vec<usize>,
    pub complete: bool,
}

impl DistanceSequence {
    /// Keep only radii `0..=radius` and drop the completeness claim.
    pub fn truncated(&self, radius: usize) -> DistanceSequence {
        DistanceSequence {
            counts: self
                .counts
                .iter()
                .take(radius + 1)
                .copied()
                .collect(),
            complete: false,
        }
    }

    /// Last entry of the sequence (the α of a diameter-m sequence).
    pub fn last(&self) -> Option<usize> {
        self.counts.last().copied()
    }
}
