//! Automorphism-group computation by backtracking over paired ordered
//! partitions with iterated equitable refinement.
//!
//! The search walks a stabilizer chain: at each level it fixes the minimum
//! vertex `b` of the first smallest non-singleton cell, recursively generates
//! the stabilizer of the prefix extended by `b`, then finds one coset
//! representative mapping `b` to each other candidate in the cell that is not
//! yet in the orbit of `b` under the generators found so far. Orbit-stabilizer
//! gives that the collected generators generate the full stabilizer at every
//! level, hence the full automorphism group at the root.
//!
//! Soundness does not depend on the refinement: every discrete leaf candidate
//! is verified edge-for-edge before being accepted.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::perm::{is_automorphism, PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct AutConfig {
    /// Refuse graphs larger than this.
    pub vertex_budget: usize,
    /// Wall-clock limit for one search.
    pub timeout: Duration,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig {
            vertex_budget: 2000,
            timeout: Duration::from_secs(30),
        }
    }
}

/// Generators of the automorphism group of `g`.
pub fn automorphism_generators(g: &Graph) -> Result<PermGroup> {
    automorphism_generators_with(g, &AutConfig::default())
}

pub fn automorphism_generators_with(g: &Graph, cfg: &AutConfig) -> Result<PermGroup> {
    let n = g.vertex_count();
    if n > cfg.vertex_budget {
        return Err(Error::BudgetExceeded {
            required: n,
            budget: cfg.vertex_budget,
        });
    }
    let start = Instant::now();
    let mut search = AutSearch {
        g,
        deadline: start + cfg.timeout,
        found: Vec::new(),
    };
    let mut pi = signature_cells(g);
    refine_self(g, &mut pi);
    match search.stab_search(&pi) {
        Ok(()) => PermGroup::new(n, search.found),
        Err(SearchTimeout) => Err(Error::Timeout {
            elapsed: start.elapsed(),
            partial_generators: search.found,
        }),
    }
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    let aut = automorphism_generators(g)?;
    Ok(aut.is_transitive())
}

pub fn is_distance_transitive(g: &Graph) -> Result<bool> {
    let aut = automorphism_generators(g)?;
    is_distance_transitive_with(g, &aut)
}

/// Distance-transitivity against a precomputed automorphism group: for every
/// distance d, the ordered pairs at distance d form a single orbit of the
/// componentwise action.
pub fn is_distance_transitive_with(g: &Graph, aut: &PermGroup) -> Result<bool> {
    let dm = DistanceMatrix::compute(g)?;
    if g.vertex_count() == 0 {
        return Ok(true);
    }
    // distance 0: the diagonal is one orbit exactly when the group is transitive
    if !aut.is_transitive() {
        return Ok(false);
    }
    for d in 1..=dm.diameter() {
        let pairs = dm.ordered_pairs_at(d);
        if pairs.is_empty() {
            continue;
        }
        let closure = aut.pair_orbit(pairs[0]);
        // the closure stays within pairs at distance d, so sizes decide
        debug_assert!(closure.iter().all(|&(a, b)| dm.get(a, b) == Some(d)));
        if closure.len() != pairs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ordered partition of the vertex set; cells hold ascending vertex lists.
type Cells = Vec<Vec<usize>>;

struct SearchTimeout;

/// Mismatch between the two sides of a paired refinement: no automorphism is
/// consistent with the current forced assignments.
struct Prune;

struct AutSearch<'a> {
    g: &'a Graph,
    deadline: Instant,
    found: Vec<Permutation>,
}

impl AutSearch<'_> {
    fn check_deadline(&self) -> std::result::Result<(), SearchTimeout> {
        if Instant::now() >= self.deadline {
            Err(SearchTimeout)
        } else {
            Ok(())
        }
    }

    fn stab_search(&mut self, pi: &Cells) -> std::result::Result<(), SearchTimeout> {
        self.check_deadline()?;
        let Some(c) = target_cell(pi) else {
            return Ok(()); // discrete partition: trivial stabilizer
        };
        let b = pi[c][0];

        let mut deeper = pi.clone();
        individualize(&mut deeper, c, b);
        refine_self(self.g, &mut deeper);
        let level_start = self.found.len();
        self.stab_search(&deeper)?;

        for idx in 1..pi[c].len() {
            let w = pi[c][idx];
            if self.in_level_orbit(level_start, b, w) {
                continue;
            }
            let mut p2 = pi.clone();
            individualize(&mut p2, c, b);
            let mut s2 = pi.clone();
            individualize(&mut s2, c, w);
            if refine_pair(self.g, &mut p2, &mut s2).is_ok() {
                if let Some(phi) = self.find_one(&p2, &s2)? {
                    self.found.push(phi);
                }
            }
        }
        Ok(())
    }

    /// One automorphism consistent with the aligned partitions, if any.
    fn find_one(
        &mut self,
        pi: &Cells,
        sigma: &Cells,
    ) -> std::result::Result<Option<Permutation>, SearchTimeout> {
        self.check_deadline()?;
        let Some(c) = target_cell(pi) else {
            let mut images = vec![0; self.g.vertex_count()];
            for (pc, sc) in pi.iter().zip(sigma) {
                images[pc[0]] = sc[0];
            }
            let cand = Permutation::from_images(images).expect("aligned partitions give a bijection");
            return Ok(if is_automorphism(self.g, &cand).expect("degrees match") {
                Some(cand)
            } else {
                None
            });
        };
        let u = pi[c][0];
        for &w in &sigma[c] {
            let mut p2 = pi.clone();
            individualize(&mut p2, c, u);
            let mut s2 = sigma.clone();
            individualize(&mut s2, c, w);
            if refine_pair(self.g, &mut p2, &mut s2).is_ok() {
                if let Some(phi) = self.find_one(&p2, &s2)? {
                    return Ok(Some(phi));
                }
            }
        }
        Ok(None)
    }

    /// Is `w` in the orbit of `b` under the generators found at this level or
    /// deeper? Forward closure suffices: inverses of finite-order permutations
    /// are positive powers.
    fn in_level_orbit(&self, level_start: usize, b: usize, w: usize) -> bool {
        let gens = &self.found[level_start..];
        if gens.is_empty() {
            return false;
        }
        let mut seen = BTreeSet::from([b]);
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            if v == w {
                return true;
            }
            for g in gens {
                let x = g.apply(v);
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.contains(&w)
    }
}

/// Index of the first smallest non-singleton cell, or None when discrete.
fn target_cell(cells: &Cells) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (i, cell) in cells.iter().enumerate() {
        if cell.len() > 1 && best.is_none_or(|(len, _)| cell.len() < len) {
            best = Some((cell.len(), i));
        }
    }
    best.map(|(_, i)| i)
}

/// Move `v` into a fresh singleton cell placed directly before the remainder
/// of its cell.
fn individualize(cells: &mut Cells, cell_idx: usize, v: usize) {
    let pos = cells[cell_idx]
        .iter()
        .position(|&x| x == v)
        .expect("vertex in cell");
    cells[cell_idx].remove(pos);
    cells.insert(cell_idx, vec![v]);
}

fn neighbor_counts(g: &Graph, cell: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; g.vertex_count()];
    for &v in cell {
        for &w in g.neighbors(v) {
            counts[w] += 1;
        }
    }
    counts
}

fn split_cell(cell: &[usize], counts: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in cell {
        groups.entry(counts[v]).or_default().push(v);
    }
    groups.into_iter().collect()
}

/// Refine two aligned partitions in lockstep until both are equitable.
/// Splits are keyed by neighbor counts toward splitter cells; the two sides
/// must produce identical key sequences with identical fragment sizes, else
/// the branch is pruned.
fn refine_pair(g: &Graph, pi: &mut Cells, sigma: &mut Cells) -> std::result::Result<(), Prune> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < pi.len() {
            let cnt_pi = neighbor_counts(g, &pi[s]);
            let cnt_sigma = neighbor_counts(g, &sigma[s]);
            let mut c = 0;
            while c < pi.len() {
                if pi[c].len() > 1 {
                    let frags_pi = split_cell(&pi[c], &cnt_pi);
                    let frags_sigma = split_cell(&sigma[c], &cnt_sigma);
                    if frags_pi.len() > 1 || frags_sigma.len() > 1 {
                        if frags_pi.len() != frags_sigma.len() {
                            return Err(Prune);
                        }
                        for (a, b) in frags_pi.iter().zip(&frags_sigma) {
                            if a.0 != b.0 || a.1.len() != b.1.len() {
                                return Err(Prune);
                            }
                        }
                        let k = frags_pi.len();
                        pi.splice(c..=c, frags_pi.into_iter().map(|(_, f)| f));
                        sigma.splice(c..=c, frags_sigma.into_iter().map(|(_, f)| f));
                        changed = true;
                        if s > c {
                            s += k - 1;
                        }
                        c += k;
                        continue;
                    }
                }
                c += 1;
            }
            s += 1;
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Refinement of a single partition (paired with itself, which cannot prune).
fn refine_self(g: &Graph, pi: &mut Cells) {
    let mut copy = pi.clone();
    refine_pair(g, pi, &mut copy)
        .unwrap_or_else(|_| unreachable!("self-paired refinement cannot diverge"));
}

/// Initial automorphism-invariant partition: vertices grouped by their
/// distance histogram (counts of vertices at each distance, plus a bucket for
/// unreachable vertices).
fn signature_cells(g: &Graph) -> Cells {
    let n = g.vertex_count();
    let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let dist = g.bfs_distances(v).expect("source in range");
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        let mut unreachable = 0usize;
        for d in dist {
            match d {
                Some(d) => *hist.entry(d).or_default() += 1,
                None => unreachable += 1,
            }
        }
        let mut sig: Vec<(usize, usize)> = hist.into_iter().collect();
        sig.push((usize::MAX, unreachable));
        groups.entry(sig).or_default().push(v);
    }
    groups.into_values().collect()
}
