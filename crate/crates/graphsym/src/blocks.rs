//! Block systems (group-invariant partitions), the minimal-block algorithm,
//! and primitivity verdicts for groups and graphs.

use std::collections::HashSet;

use crate::aut::automorphism_generators;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::PermGroup;

/// A partition of `0..degree` into disjoint nonempty classes, canonicalized:
/// classes sorted by minimum element, members ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    classes: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(degree: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(classes.len());
        for mut class in classes {
            if class.is_empty() {
                return Err(Error::input("empty class in block system"));
            }
            class.sort_unstable();
            for &v in &class {
                if v >= degree {
                    return Err(Error::input(format!(
                        "vertex {v} out of range for degree {degree}"
                    )));
                }
                if seen[v] {
                    return Err(Error::input(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
            canonical.push(class);
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::input("classes do not cover the whole set"));
        }
        canonical.sort_by_key(|c| c[0]);
        Ok(BlockSystem {
            degree,
            classes: canonical,
        })
    }

    pub fn singletons(degree: usize) -> Self {
        BlockSystem {
            degree,
            classes: (0..degree).map(|v| vec![v]).collect(),
        }
    }

    pub fn whole(degree: usize) -> Self {
        BlockSystem {
            degree,
            classes: if degree == 0 {
                Vec::new()
            } else {
                vec![(0..degree).collect()]
            },
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Some class has size strictly between 1 and the degree.
    pub fn is_nontrivial(&self) -> bool {
        self.classes
            .iter()
            .any(|c| c.len() > 1 && c.len() < self.degree)
    }

    /// Index of the class containing `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
            .expect("classes cover the domain")
    }

    /// One class per line, members space-separated, classes ordered by
    /// minimum element.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            let row: Vec<String> = class.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// True iff every generator maps every class onto a class (setwise).
pub fn verify_block_system(grp: &PermGroup, bs: &BlockSystem) -> Result<bool> {
    if grp.degree() != bs.degree() {
        return Err(Error::input(format!(
            "degree mismatch: group {} vs block system {}",
            grp.degree(),
            bs.degree()
        )));
    }
    let class_set: HashSet<&[usize]> = bs.classes().iter().map(|c| c.as_slice()).collect();
    for g in grp.generators() {
        for class in bs.classes() {
            let mut image: Vec<usize> = class.iter().map(|&v| g.apply(v)).collect();
            image.sort_unstable();
            if !class_set.contains(image.as_slice()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// The finest block system of the transitive group `grp` in which `a` and `b`
/// share a class: seed-merge `{a, b}`, then propagate every merge through
/// every generator until stable.
pub fn minimal_block(grp: &PermGroup, a: usize, b: usize) -> Result<BlockSystem> {
    let n = grp.degree();
    if a >= n || b >= n {
        return Err(Error::input(format!("points ({a}, {b}) out of range 0..{n}")));
    }
    if a == b {
        return Err(Error::input("minimal block requires two distinct points"));
    }
    if !grp.is_transitive() {
        return Err(Error::input("minimal block requires a transitive group"));
    }

    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut pending = vec![(a, b)];
    while let Some((u, v)) = pending.pop() {
        for g in grp.generators() {
            let (x, y) = (g.apply(u), g.apply(v));
            if uf.union(x, y) {
                pending.push((x, y));
            }
        }
    }

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let root = uf.find(v);
        buckets[root].push(v);
    }
    BlockSystem::new(n, buckets.into_iter().filter(|c| !c.is_empty()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupPrimitivity {
    Primitive,
    Imprimitive(BlockSystem),
}

/// Scan minimal blocks over all pairs `(0, b)`. The witness, when one exists,
/// is the system for the smallest such `b`, which keeps output stable.
pub fn is_primitive_group(grp: &PermGroup) -> Result<GroupPrimitivity> {
    let n = grp.degree();
    if n == 0 {
        return Err(Error::input("primitivity of the empty action is undefined"));
    }
    if !grp.is_transitive() {
        return Err(Error::input("primitivity requires a transitive group"));
    }
    for b in 1..n {
        let bs = minimal_block(grp, 0, b)?;
        if bs.is_nontrivial() {
            return Ok(GroupPrimitivity::Imprimitive(bs));
        }
    }
    Ok(GroupPrimitivity::Primitive)
}

/// All distinct nontrivial block systems arising as minimal blocks over the
/// pairs `(0, b)`, in order of first discovery.
pub fn nontrivial_block_systems(grp: &PermGroup) -> Result<Vec<BlockSystem>> {
    let mut out: Vec<BlockSystem> = Vec::new();
    for b in 1..grp.degree() {
        let bs = minimal_block(grp, 0, b)?;
        if bs.is_nontrivial() && !out.contains(&bs) {
            out.push(bs);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphPrimitivity {
    Primitive,
    /// Carries a verified nontrivial block system.
    Imprimitive(BlockSystem),
    /// Carries the orbit partition, itself a block system.
    NotVertexTransitive(BlockSystem),
}

pub fn is_primitive_graph(g: &Graph) -> Result<GraphPrimitivity> {
    let aut = automorphism_generators(g)?;
    is_primitive_graph_with(g, &aut)
}

/// Three-way verdict. Disconnected graphs do not error: a vertex-transitive
/// disconnected graph with at least one edge is imprimitive with the component
/// partition as witness; without edges the components are singletons and the
/// group scan decides.
pub fn is_primitive_graph_with(g: &Graph, aut: &PermGroup) -> Result<GraphPrimitivity> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("primitivity of the empty graph is undefined"));
    }
    let orbits = aut.orbits();
    if orbits.len() > 1 {
        return Ok(GraphPrimitivity::NotVertexTransitive(BlockSystem::new(
            n, orbits,
        )?));
    }
    if !g.is_connected() && g.edge_count() > 0 {
        let components = BlockSystem::new(n, g.connected_components())?;
        debug_assert!(components.is_nontrivial());
        return Ok(GraphPrimitivity::Imprimitive(components));
    }
    match is_primitive_group(aut)? {
        GroupPrimitivity::Primitive => Ok(GraphPrimitivity::Primitive),
        GroupPrimitivity::Imprimitive(bs) => Ok(GraphPrimitivity::Imprimitive(bs)),
    }
}

/// Connected components of `relation` as a block system, verified against
/// the automorphism group of `g`.
pub fn components_as_blocks(g: &Graph, relation: &Graph) -> Result<(BlockSystem, bool)> {
    let aut = automorphism_generators(g)?;
    components_as_blocks_with(g, &aut, relation)
}

pub fn components_as_blocks_with(
    g: &Graph,
    aut: &PermGroup,
    relation: &Graph,
) -> Result<(BlockSystem, bool)> {
    if relation.vertex_count() != g.vertex_count() {
        return Err(Error::input(format!(
            "vertex set mismatch: {} vs {}",
            g.vertex_count(),
            relation.vertex_count()
        )));
    }
    let bs = BlockSystem::new(g.vertex_count(), relation.connected_components())?;
    let verified = verify_block_system(aut, &bs)?;
    Ok((bs, verified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{classic, ClassicFamily, DEFAULT_VERTEX_BUDGET};
    use crate::perm::Permutation;

    fn family(f: ClassicFamily) -> Graph {
        classic(&f, DEFAULT_VERTEX_BUDGET).unwrap().graph
    }

    fn cyclic4() -> PermGroup {
        let c = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        PermGroup::new(4, vec![c]).unwrap()
    }

    #[test]
    fn block_system_validation() {
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2, 3]]).is_ok());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2]]).is_err()); // misses 3
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err()); // overlap
        assert!(BlockSystem::new(2, vec![vec![0, 1], vec![]]).is_err()); // empty class
        assert!(BlockSystem::new(2, vec![vec![0, 5]]).is_err()); // out of range
    }

    #[test]
    fn triviality() {
        assert!(!BlockSystem::singletons(4).is_nontrivial());
        assert!(!BlockSystem::whole(4).is_nontrivial());
        assert!(BlockSystem::new(4, vec![vec![0, 2], vec![1, 3]])
            .unwrap()
            .is_nontrivial());
    }

    #[test]
    fn verify_trivial_systems() {
        let grp = cyclic4();
        assert!(verify_block_system(&grp, &BlockSystem::singletons(4)).unwrap());
        assert!(verify_block_system(&grp, &BlockSystem::whole(4)).unwrap());
    }

    #[test]
    fn verify_cyclic4_partitions() {
        let grp = cyclic4();
        let good = BlockSystem::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let bad = BlockSystem::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(verify_block_system(&grp, &good).unwrap());
        assert!(!verify_block_system(&grp, &bad).unwrap());
    }

    #[test]
    fn verify_degree_mismatch() {
        let grp = cyclic4();
        assert!(verify_block_system(&grp, &BlockSystem::singletons(3)).is_err());
    }

    #[test]
    fn minimal_block_cyclic4() {
        let grp = cyclic4();
        let bs = minimal_block(&grp, 0, 2).unwrap();
        assert_eq!(bs.classes(), &[vec![0, 2], vec![1, 3]]);
        assert!(verify_block_system(&grp, &bs).unwrap());
    }

    #[test]
    fn minimal_block_complete_graph_is_whole() {
        let aut = automorphism_generators(&family(ClassicFamily::Complete { n: 4 })).unwrap();
        for b in 1..4 {
            assert_eq!(minimal_block(&aut, 0, b).unwrap(), BlockSystem::whole(4));
        }
    }

    #[test]
    fn minimal_block_q3_antipodes() {
        let q3 = family(ClassicFamily::Hypercube { dim: 3 });
        let aut = automorphism_generators(&q3).unwrap();
        let bs = minimal_block(&aut, 0, 7).unwrap();
        assert_eq!(bs.classes().len(), 4);
        assert!(bs.classes().iter().all(|c| c.len() == 2));
        assert_eq!(bs.classes()[0], vec![0, 7]);
        assert!(verify_block_system(&aut, &bs).unwrap());
    }

    #[test]
    fn minimal_block_preconditions() {
        let grp = cyclic4();
        assert!(minimal_block(&grp, 1, 1).is_err());
        assert!(minimal_block(&grp, 0, 9).is_err());
        let intransitive = PermGroup::new(
            4,
            vec![Permutation::from_cycles(4, &[vec![0, 1]]).unwrap()],
        )
        .unwrap();
        assert!(minimal_block(&intransitive, 0, 1).is_err());
    }

    #[test]
    fn symmetric_group_is_primitive() {
        let gens = vec![
            Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        ];
        let s4 = PermGroup::new(4, gens).unwrap();
        assert_eq!(is_primitive_group(&s4).unwrap(), GroupPrimitivity::Primitive);
    }

    #[test]
    fn cyclic4_is_imprimitive_with_witness() {
        match is_primitive_group(&cyclic4()).unwrap() {
            GroupPrimitivity::Imprimitive(bs) => {
                assert_eq!(bs.classes(), &[vec![0, 2], vec![1, 3]]);
            }
            GroupPrimitivity::Primitive => panic!("C4 rotation group is imprimitive"),
        }
    }

    #[test]
    fn c6_has_two_nontrivial_systems() {
        let c6 = family(ClassicFamily::Cycle { n: 6 });
        let aut = automorphism_generators(&c6).unwrap();
        let bipartition = minimal_block(&aut, 0, 2).unwrap();
        assert_eq!(bipartition.classes(), &[vec![0, 2, 4], vec![1, 3, 5]]);
        let antipodes = minimal_block(&aut, 0, 3).unwrap();
        assert_eq!(antipodes.classes(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);
        for bs in [&bipartition, &antipodes] {
            assert!(verify_block_system(&aut, bs).unwrap());
        }
        assert!(matches!(
            is_primitive_graph(&c6).unwrap(),
            GraphPrimitivity::Imprimitive(_)
        ));
    }

    #[test]
    fn graph_primitivity_verdicts() {
        let j52 = crate::generators::johnson_graph(
            &crate::generators::JohnsonConfig {
                ground_size: 5,
                subset_size: 2,
            },
            DEFAULT_VERTEX_BUDGET,
        )
        .unwrap();
        assert_eq!(
            is_primitive_graph(&j52.graph).unwrap(),
            GraphPrimitivity::Primitive
        );

        let q3 = family(ClassicFamily::Hypercube { dim: 3 });
        match is_primitive_graph(&q3).unwrap() {
            GraphPrimitivity::Imprimitive(bs) => {
                let aut = automorphism_generators(&q3).unwrap();
                assert!(bs.is_nontrivial());
                assert!(verify_block_system(&aut, &bs).unwrap());
            }
            other => panic!("Q3 should be imprimitive, got {other:?}"),
        }

        let p3 = family(ClassicFamily::Path { n: 3 });
        match is_primitive_graph(&p3).unwrap() {
            GraphPrimitivity::NotVertexTransitive(bs) => {
                assert_eq!(bs.classes(), &[vec![0, 2], vec![1]]);
            }
            other => panic!("P3 is not vertex-transitive, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_graph_verdicts() {
        // two disjoint edges: vertex-transitive, components are blocks
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        match is_primitive_graph(&g).unwrap() {
            GraphPrimitivity::Imprimitive(bs) => {
                assert_eq!(bs.classes(), &[vec![0, 1], vec![2, 3]]);
            }
            other => panic!("expected component blocks, got {other:?}"),
        }

        // edgeless: singleton components are trivial, full symmetric group
        let e3 = Graph::empty(3);
        assert_eq!(
            is_primitive_graph(&e3).unwrap(),
            GraphPrimitivity::Primitive
        );

        // K1 + K2: not vertex-transitive
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            is_primitive_graph(&g).unwrap(),
            GraphPrimitivity::NotVertexTransitive(_)
        ));
    }

    #[test]
    fn components_as_blocks_q3() {
        let q3 = family(ClassicFamily::Hypercube { dim: 3 });
        let rel = q3.distance_relation_graph(3).unwrap();
        let (bs, verified) = components_as_blocks(&q3, &rel).unwrap();
        assert!(verified);
        assert_eq!(bs.classes().len(), 4);
        assert!(bs.classes().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn components_as_blocks_edge_cases() {
        let q3 = family(ClassicFamily::Hypercube { dim: 3 });
        // relation with no edges: singleton partition, trivially invariant
        let (bs, verified) = components_as_blocks(&q3, &Graph::empty(8)).unwrap();
        assert!(verified);
        assert_eq!(bs, BlockSystem::singletons(8));
        // mismatched vertex sets
        assert!(components_as_blocks(&q3, &Graph::empty(5)).is_err());
    }
}
