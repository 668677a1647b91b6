//! Permutations of `0..n` and finitely generated permutation groups.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A bijection on `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::input(format!("not a bijection on 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint-cycle notation; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for i in 0..cycle.len() {
                let from = cycle[i];
                let to = cycle[(i + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(Error::input(format!("cycle point out of range 0..{n}")));
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: maps `v` to `self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::input(format!(
                "degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Single-line serialization: `p: 2 0 1 3`.
    pub fn to_text(&self) -> String {
        let imgs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("p: {}", imgs.join(" "))
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A permutation group given by generators. The identity is never stored.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(PermGroup {
            degree,
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Closure of `seed` under the generators.
    pub fn orbit(&self, seed: usize) -> BTreeSet<usize> {
        assert!(seed < self.degree, "orbit seed out of range");
        let mut seen = BTreeSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let w = g.apply(v);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Orbit partition of `0..degree`, classes ordered by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for v in 0..self.degree {
            if assigned[v] {
                continue;
            }
            let orbit: Vec<usize> = self.orbit(v).into_iter().collect();
            for &w in &orbit {
                assigned[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Closure of an ordered pair under the componentwise action.
    pub fn pair_orbit(&self, seed: (usize, usize)) -> BTreeSet<(usize, usize)> {
        assert!(
            seed.0 < self.degree && seed.1 < self.degree,
            "pair orbit seed out of range"
        );
        let mut seen = BTreeSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.generators {
                let next = (g.apply(a), g.apply(b));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Enumerate every group element by product closure, or `None` once more
    /// than `cap` elements exist. Intended for small groups.
    pub fn element_closure(&self, cap: usize) -> Option<BTreeSet<Permutation>> {
        let mut elements = BTreeSet::from([Permutation::identity(self.degree)]);
        let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.compose(&p).expect("degrees match");
                if !elements.contains(&q) {
                    if elements.len() >= cap {
                        return None;
                    }
                    elements.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Some(elements)
    }

    /// `generators:` header followed by one permutation per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("generators:\n");
        for g in &self.generators {
            out.push_str(&g.to_text());
            out.push('\n');
        }
        out
    }
}

/// Does `p` preserve the edge set of `g`?
pub fn is_automorphism(g: &Graph, p: &Permutation) -> Result<bool> {
    if p.degree() != g.vertex_count() {
        return Err(Error::input(format!(
            "permutation degree {} does not match vertex count {}",
            p.degree(),
            g.vertex_count()
        )));
    }
    // a bijection mapping every edge to an edge is onto the edge set
    for u in 0..g.vertex_count() {
        let pu = p.apply(u);
        for &v in g.neighbors(u) {
            if v > u && !g.has_edge(pu, p.apply(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
