//! Graph family constructors: Johnson-style subset graphs, truncated trees of
//! cliques, and the classical test corpus.
//!
//! Every constructor checks its projected vertex count against a budget and
//! fails fast with the computed size instead of building partially. Output is
//! byte-stable: vertex order is fixed by the construction (lexicographic
//! subsets, creation order for trees).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on generated vertex counts.
pub const DEFAULT_VERTEX_BUDGET: usize = 100_000;

/// Subset graph on all `subset_size`-subsets of `{0..ground_size}`, edges
/// between subsets whose symmetric difference has exactly two elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonConfig {
    pub ground_size: usize,
    pub subset_size: usize,
}

/// Truncated tree of cliques: start from one clique of `clique_size`, then for
/// `depth` steps attach `cliques_per_vertex - 1` fresh cliques at every vertex
/// created in the previous step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTreeConfig {
    pub cliques_per_vertex: usize,
    pub clique_size: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicFamily {
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Hypercube { dim: usize },
    Kneser { ground_size: usize, subset_size: usize },
    Petersen,
}

/// A generated graph plus the construction metadata the analysis side needs:
/// human-readable vertex labels, and for truncated families the radius up to
/// which distance counts from vertex 0 match the untruncated construction.
#[derive(Clone, Debug)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub name: String,
    pub labels: Vec<String>,
    /// `Some(r)`: counts from a step-0 vertex are only trusted up to radius r.
    pub trusted_radius: Option<usize>,
    /// Construction step at which each vertex appeared (clique trees only).
    pub creation_step: Option<Vec<usize>>,
}

impl GeneratedGraph {
    fn plain(graph: Graph, name: String, labels: Vec<String>) -> Self {
        GeneratedGraph {
            graph,
            name,
            labels,
            trusted_radius: None,
            creation_step: None,
        }
    }

    /// Vertices created at the final step of a truncated construction; their
    /// neighborhoods are incomplete relative to the infinite object.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        match (&self.creation_step, self.trusted_radius) {
            (Some(steps), Some(depth)) => {
                (0..steps.len()).filter(|&v| steps[v] == depth).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// C(n, k) with overflow reported as `None`.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut res: usize = 1;
    for i in 1..=k {
        // running product of i consecutive integers is divisible by i
        res = res.checked_mul(n - k + i)? / i;
    }
    Some(res)
}

fn check_budget(required: Option<usize>, budget: usize) -> Result<usize> {
    let required = required.unwrap_or(usize::MAX);
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(required)
    }
}

fn subset_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// All k-subsets of {0..n} in lexicographic order.
fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn johnson_graph(cfg: &JohnsonConfig, budget: usize) -> Result<GeneratedGraph> {
    let (n, k) = (cfg.ground_size, cfg.subset_size);
    if k == 0 || k > n {
        return Err(Error::input(format!(
            "johnson requires 1 <= k <= n, got n={n} k={k}"
        )));
    }
    check_budget(binomial(n, k), budget)?;

    let subsets = subsets_lex(n, k);
    let ranker = SubsetRanker::new(n, k);

    // Adjacent subsets share exactly one (k-1)-subset, their intersection.
    // Group vertices by the ranks of their k one-element removals; each group
    // is a clique and every edge appears in exactly one group.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(subsets.len() * k);
    for (i, s) in subsets.iter().enumerate() {
        for key in ranker.removal_ranks(s) {
            pairs.push((key, i));
        }
    }
    pairs.sort_unstable();

    let mut g = Graph::empty(subsets.len());
    let mut start = 0;
    while start < pairs.len() {
        let key = pairs[start].0;
        let mut end = start;
        while end < pairs.len() && pairs[end].0 == key {
            end += 1;
        }
        let group = &pairs[start..end];
        for (a, &(_, u)) in group.iter().enumerate() {
            for &(_, v) in &group[a + 1..] {
                g.add_edge(u, v)?;
            }
        }
        start = end;
    }

    let labels = subsets.iter().map(|s| subset_label(s)).collect();
    Ok(GeneratedGraph::plain(g, format!("J({n},{k})"), labels))
}

/// Lexicographic rank of sorted k-subsets of {0..n}, O(k) per query after a
/// one-time Pascal table. Table entries can saturate, but every value the
/// rank formula reads is bounded by C(n, k), which fits (budget-checked).
struct SubsetRanker {
    n: usize,
    choose: Vec<Vec<usize>>,
}

impl SubsetRanker {
    fn new(n: usize, k: usize) -> Self {
        let mut choose = vec![vec![0usize; k + 2]; n + 1];
        choose[0][0] = 1;
        for m in 1..=n {
            choose[m][0] = 1;
            for r in 1..(k + 2).min(m + 1) {
                let (a, b) = (choose[m - 1][r - 1], choose[m - 1][r]);
                choose[m][r] = a.saturating_add(b);
            }
        }
        SubsetRanker { n, choose }
    }

    /// Lexicographic rank of a sorted subset, among subsets of its size.
    fn rank(&self, subset: &[usize]) -> usize {
        let k = subset.len();
        let mut rank = 0usize;
        let mut lo = 0usize;
        for (i, &a) in subset.iter().enumerate() {
            let r = k - i;
            rank += self.choose[self.n - lo][r] - self.choose[self.n - a][r];
            lo = a + 1;
        }
        rank
    }

    /// Ranks of all k subsets obtained by deleting one element, among
    /// (k-1)-subsets, in O(k) total. Removing position p keeps the rank
    /// terms before p (with the size shifted down), bridges over the removed
    /// element, and reuses the original terms after it.
    fn removal_ranks(&self, subset: &[usize]) -> Vec<usize> {
        let k = subset.len();
        let n = self.n;
        let lo_of = |p: usize| if p == 0 { 0 } else { subset[p - 1] + 1 };

        // prefix[p] = sum over i < p of the (k-1)-sized rank terms
        let mut prefix = vec![0usize; k + 1];
        for i in 0..k {
            let r = (k - 1) - i;
            let term = self.choose[n - lo_of(i)][r] - self.choose[n - subset[i]][r];
            prefix[i + 1] = prefix[i] + term;
        }
        // suffix[m] = sum over j >= m of the original terms at old index j
        // (those keep both their r = k - j and their low bound)
        let mut suffix = vec![0usize; k + 1];
        for m in (1..k).rev() {
            let r = k - m;
            let term = self.choose[n - lo_of(m)][r] - self.choose[n - subset[m]][r];
            suffix[m] = suffix[m + 1] + term;
        }

        (0..k)
            .map(|p| {
                let mut rank = prefix[p];
                if p + 1 < k {
                    let r = k - 1 - p;
                    rank += self.choose[n - lo_of(p)][r] - self.choose[n - subset[p + 1]][r];
                    rank += suffix[p + 2];
                }
                rank
            })
            .collect()
    }
}

pub fn clique_tree(cfg: &CliqueTreeConfig, budget: usize) -> Result<GeneratedGraph> {
    let (a, b, depth) = (cfg.cliques_per_vertex, cfg.clique_size, cfg.depth);
    if a < 2 {
        return Err(Error::input(format!(
            "clique tree requires cliques_per_vertex >= 2, got {a}"
        )));
    }
    if b < 3 {
        return Err(Error::input(format!(
            "clique tree requires clique_size >= 3, got {b}"
        )));
    }

    // expected size: b * (1 + sum of ((a-1)(b-1))^s for s in 1..=depth)
    let expected = (|| {
        let growth = (a - 1).checked_mul(b - 1)?;
        let mut total: usize = b;
        let mut frontier: usize = b;
        for _ in 0..depth {
            frontier = frontier.checked_mul(growth)?;
            total = total.checked_add(frontier)?;
        }
        Some(total)
    })();
    let expected = check_budget(expected, budget)?;

    let mut g = Graph::empty(expected);
    let mut creation_step = vec![0usize; b];
    // step 0: one b-clique
    for u in 0..b {
        for v in (u + 1)..b {
            g.add_edge(u, v)?;
        }
    }
    let mut next = b;
    let mut frontier: Vec<usize> = (0..b).collect();
    for step in 1..=depth {
        let mut new_frontier = Vec::new();
        for &v in &frontier {
            for _ in 0..(a - 1) {
                let fresh: Vec<usize> = (next..next + (b - 1)).collect();
                next += b - 1;
                for &u in &fresh {
                    creation_step.push(step);
                    g.add_edge(v, u)?;
                }
                for i in 0..fresh.len() {
                    for j in (i + 1)..fresh.len() {
                        g.add_edge(fresh[i], fresh[j])?;
                    }
                }
                new_frontier.extend_from_slice(&fresh);
            }
        }
        frontier = new_frontier;
    }
    debug_assert_eq!(next, expected);

    let labels = creation_step.iter().map(|s| s.to_string()).collect();
    Ok(GeneratedGraph {
        graph: g,
        name: format!("T({a},{b},{depth})"),
        labels,
        trusted_radius: Some(depth),
        creation_step: Some(creation_step),
    })
}

pub fn classic(family: &ClassicFamily, budget: usize) -> Result<GeneratedGraph> {
    match *family {
        ClassicFamily::Complete { n } => {
            if n == 0 {
                return Err(Error::input("complete graph requires n >= 1"));
            }
            check_budget(Some(n), budget)?;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(GeneratedGraph::plain(g, format!("K{n}"), index_labels(n)))
        }
        ClassicFamily::Cycle { n } => {
            if n < 3 {
                return Err(Error::input("cycle requires n >= 3"));
            }
            check_budget(Some(n), budget)?;
            let mut g = Graph::empty(n);
            for v in 0..n {
                let w = (v + 1) % n;
                g.add_edge(v.min(w), v.max(w))?;
            }
            Ok(GeneratedGraph::plain(g, format!("C{n}"), index_labels(n)))
        }
        ClassicFamily::Path { n } => {
            if n == 0 {
                return Err(Error::input("path requires n >= 1"));
            }
            check_budget(Some(n), budget)?;
            let mut g = Graph::empty(n);
            for v in 0..n.saturating_sub(1) {
                g.add_edge(v, v + 1)?;
            }
            Ok(GeneratedGraph::plain(g, format!("P{n}"), index_labels(n)))
        }
        ClassicFamily::Hypercube { dim } => {
            if dim == 0 {
                return Err(Error::input("hypercube requires d >= 1"));
            }
            let size = 1usize.checked_shl(dim as u32).filter(|_| dim < 63);
            let n = check_budget(size, budget)?;
            let mut g = Graph::empty(n);
            for v in 0..n {
                for i in 0..dim {
                    let w = v ^ (1 << i);
                    if w > v {
                        g.add_edge(v, w)?;
                    }
                }
            }
            let labels = (0..n)
                .map(|v| {
                    (0..dim)
                        .map(|i| if v & (1 << i) != 0 { '1' } else { '0' })
                        .collect()
                })
                .collect();
            Ok(GeneratedGraph::plain(g, format!("Q{dim}"), labels))
        }
        ClassicFamily::Kneser {
            ground_size: n,
            subset_size: k,
        } => {
            let gen = kneser(n, k, budget)?;
            Ok(gen)
        }
        ClassicFamily::Petersen => {
            let mut gen = kneser(5, 2, budget)?;
            gen.name = "Petersen".into();
            Ok(gen)
        }
    }
}

fn kneser(n: usize, k: usize, budget: usize) -> Result<GeneratedGraph> {
    if k == 0 || k > n {
        return Err(Error::input(format!(
            "kneser requires 1 <= k <= n, got n={n} k={k}"
        )));
    }
    check_budget(binomial(n, k), budget)?;
    let subsets = subsets_lex(n, k);
    let ranker = SubsetRanker::new(n, k);

    let mut g = Graph::empty(subsets.len());
    for (i, s) in subsets.iter().enumerate() {
        let mut member = vec![false; n];
        for &x in s {
            member[x] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&y| !member[y]).collect();
        // edges join disjoint subsets: enumerate k-subsets of the complement
        for t in subsets_lex(rest.len(), k) {
            let mapped: Vec<usize> = t.iter().map(|&p| rest[p]).collect();
            let j = ranker.rank(&mapped);
            if j > i {
                g.add_edge(i, j)?;
            }
        }
    }
    let labels = subsets.iter().map(|s| subset_label(s)).collect();
    Ok(GeneratedGraph::plain(g, format!("Kneser({n},{k})"), labels))
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}
