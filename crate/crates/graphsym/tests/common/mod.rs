//! Test-side oracles, independent of the library's implementation paths:
//! Floyd-Warshall distances, exhaustive automorphism enumeration, exhaustive
//! invariant-partition search, and a small JSON-schema checker.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use graphsym::generators::{GeneratedGraph, DEFAULT_VERTEX_BUDGET};
use graphsym::harness::default_corpus;
use graphsym::{Graph, PermGroup};

/// All-pairs shortest paths by Floyd-Warshall; `None` for unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut d: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for v in 0..n {
        d[v][v] = Some(0);
        for &w in g.neighbors(v) {
            d[v][w] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = d[i][k] else { continue };
            for j in 0..n {
                let Some(dkj) = d[k][j] else { continue };
                let cand = dik + dkj;
                if d[i][j].map_or(true, |cur| cand < cur) {
                    d[i][j] = Some(cand);
                }
            }
        }
    }
    d
}

/// Every permutation of 0..n, via Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut out = vec![items.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Edge preservation checked directly against an edge set, bypassing the
/// library's own `is_automorphism`.
pub fn preserves_edges(edges: &HashSet<(usize, usize)>, p: &[usize]) -> bool {
    edges.iter().all(|&(u, v)| {
        let (a, b) = (p[u], p[v]);
        edges.contains(&(a.min(b), a.max(b)))
    })
}

/// The full automorphism group of `g` by filtering all n! bijections.
pub fn brute_force_automorphism_group(g: &Graph) -> BTreeSet<Vec<usize>> {
    let edges: HashSet<(usize, usize)> = g.edges().into_iter().collect();
    all_permutations(g.vertex_count())
        .into_iter()
        .filter(|p| preserves_edges(&edges, p))
        .collect()
}

/// Product closure of a set of image lists, test-side.
pub fn closure_of(n: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut elements = BTreeSet::from([identity.clone()]);
    let mut queue = vec![identity];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&v| g[v]).collect();
            if elements.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    elements
}

/// All set partitions of 0..n via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let classes = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut partition: Vec<Vec<usize>> = vec![Vec::new(); classes.max(usize::from(n > 0))];
        for (v, &c) in rgs.iter().enumerate() {
            partition[c].push(v);
        }
        out.push(partition);

        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Is the partition invariant under every generator (classes map onto
/// classes, setwise)? Checked without the library's verifier.
pub fn partition_invariant(partition: &[Vec<usize>], grp: &PermGroup) -> bool {
    let classes: HashSet<BTreeSet<usize>> = partition
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    for g in grp.generators() {
        for class in partition {
            let image: BTreeSet<usize> = class.iter().map(|&v| g.apply(v)).collect();
            if !classes.contains(&image) {
                return false;
            }
        }
    }
    true
}

/// Every partition of the domain invariant under the group's generators.
pub fn invariant_partitions(grp: &PermGroup) -> Vec<Vec<Vec<usize>>> {
    all_partitions(grp.degree())
        .into_iter()
        .filter(|p| partition_invariant(p, grp))
        .collect()
}

/// The finest partition among `candidates` joining `a` and `b`: the common
/// refinement of every candidate whose classes join them. For candidates
/// closed under common refinement this is itself a candidate.
pub fn finest_joining(candidates: &[Vec<Vec<usize>>], n: usize, a: usize, b: usize) -> Vec<Vec<usize>> {
    let joining: Vec<&Vec<Vec<usize>>> = candidates
        .iter()
        .filter(|p| p.iter().any(|c| c.contains(&a) && c.contains(&b)))
        .collect();
    assert!(!joining.is_empty(), "whole-set partition always qualifies");

    // class-id vectors across all joining candidates; equal vectors share a
    // class in every candidate
    let mut key: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in &joining {
        for (ci, class) in p.iter().enumerate() {
            for &v in class {
                key[v].push(ci);
            }
        }
    }
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..n {
        match classes.iter_mut().find(|(k, _)| *k == key[v]) {
            Some((_, members)) => members.push(v),
            None => classes.push((key[v].clone(), vec![v])),
        }
    }
    let mut out: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// The finest invariant partition joining `a` and `b`, from exhaustive
/// enumeration of all partitions.
pub fn exhaustive_minimal_block(grp: &PermGroup, a: usize, b: usize) -> Vec<Vec<usize>> {
    finest_joining(&invariant_partitions(grp), grp.degree(), a, b)
}

/// Deterministic pseudo-random graph stream used for micro-scale oracle
/// comparisons. Fixed seed; changing it invalidates frozen expectations.
pub struct PinnedGraphs {
    state: u64,
    index: usize,
}

impl PinnedGraphs {
    pub fn new() -> Self {
        PinnedGraphs {
            state: 0x677261706873796d,
            index: 0,
        }
    }

    fn next_u64(&mut self) -> u64 {
        // splitmix64
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

impl Iterator for PinnedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let n = 4 + (self.index % 4); // 4..=7 vertices
        let threshold = match self.index % 3 {
            0 => u64::MAX / 4,
            1 => u64::MAX / 2,
            _ => u64::MAX / 4 * 3,
        };
        self.index += 1;
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if self.next_u64() < threshold {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        Some(g)
    }
}

/// Every graph of the pinned default corpus, generated.
pub fn corpus_graphs() -> Vec<GeneratedGraph> {
    default_corpus()
        .iter()
        .map(|e| {
            e.generate(DEFAULT_VERTEX_BUDGET)
                .unwrap_or_else(|err| panic!("corpus entry {} failed: {err}", e.name()))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// minimal JSON-schema checker (type/properties/required/additionalProperties/
// items/enum/oneOf), enough for the checked-in report schemas
// ---------------------------------------------------------------------------

use serde_json::Value;

pub fn validate_schema(schema: &Value, instance: &Value) -> Result<(), String> {
    if let Some(one_of) = schema.get("oneOf") {
        let branches = one_of.as_array().expect("oneOf is an array");
        let matching = branches
            .iter()
            .filter(|b| validate_schema(b, instance).is_ok())
            .count();
        return if matching == 1 {
            Ok(())
        } else {
            Err(format!("oneOf matched {matching} branches"))
        };
    }

    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|t| t.as_str().unwrap()).collect(),
            _ => return Err("bad type clause".into()),
        };
        let actual = match instance {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(x) => {
                if x.is_u64() || x.is_i64() {
                    "integer"
                } else {
                    "number"
                }
            }
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        if !allowed.contains(&actual) && !(actual == "integer" && allowed.contains(&"number")) {
            return Err(format!("expected type {allowed:?}, got {actual}"));
        }
    }

    if let Some(choices) = schema.get("enum") {
        if !choices.as_array().unwrap().contains(instance) {
            return Err(format!("{instance} not in enum"));
        }
    }

    if let Value::Object(obj) = instance {
        if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate_schema(sub, v).map_err(|e| format!("{key}: {e}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("unexpected key {key:?}"));
                    }
                }
            }
        }
        if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("missing required key {key:?}"));
                }
            }
        }
    }

    if let Value::Array(items) = instance {
        if let Some(item_schema) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate_schema(item_schema, item).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
    }

    Ok(())
}
