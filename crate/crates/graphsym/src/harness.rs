//! Theorem-level regression harness: per-graph structural verdicts and the
//! corpus report that cross-checks them over a pinned set of generated graphs.
//!
//! The central consistency oracle: a regular distance-transitive graph with
//! valency > 2 and diameter > 2 is imprimitive exactly when it is bipartite
//! or antipodal. Any applicable corpus row violating that equivalence is an
//! implementation bug somewhere in the pipeline, which is what makes the
//! corpus run a strong end-to-end test.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::aut::{automorphism_generators, is_distance_transitive_with, AutConfig,
    automorphism_generators_with};
use crate::blocks::{
    is_primitive_graph_with, nontrivial_block_systems, BlockSystem, GraphPrimitivity,
};
use crate::error::{Error, Result};
use crate::generators::{
    classic, clique_tree, johnson_graph, ClassicFamily, CliqueTreeConfig, GeneratedGraph,
    JohnsonConfig,
};
use crate::graph::{DistanceMatrix, DistanceSequence, Graph};
use crate::perm::PermGroup;

/// The checked-in JSON schema the analysis report serializes against.
pub fn analysis_report_schema() -> &'static str {
    include_str!("../schemas/analysis_report.schema.json")
}

/// The checked-in JSON schema the corpus report serializes against.
pub fn corpus_report_schema() -> &'static str {
    include_str!("../schemas/corpus_report.schema.json")
}

/// Smith-style structural verdict for one connected graph.
///
/// `applicable` gates the theorem: regular with valency > 2, diameter > 2,
/// and distance-transitive. `consistent` is only defined for applicable
/// graphs. `valency` is `None` for non-regular graphs, which are never
/// applicable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithVerdict {
    pub applicable: bool,
    pub valency: Option<usize>,
    pub diameter: usize,
    pub distance_transitive: bool,
    pub bipartite: bool,
    pub antipodal: bool,
    pub primitive: bool,
    pub consistent: Option<bool>,
}

pub fn smith_check(g: &Graph) -> Result<SmithVerdict> {
    let aut = automorphism_generators(g)?;
    smith_check_with(g, &aut)
}

pub fn smith_check_with(g: &Graph, aut: &PermGroup) -> Result<SmithVerdict> {
    if g.vertex_count() == 0 {
        return Err(Error::input("cannot analyze the empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let valency = g.regular_valency();
    let diameter = g.diameter()?;
    let distance_transitive = is_distance_transitive_with(g, aut)?;
    let bipartite = g.is_bipartite();
    let antipodal = g.is_antipodal()?;
    let primitive = matches!(
        is_primitive_graph_with(g, aut)?,
        GraphPrimitivity::Primitive
    );
    let applicable = distance_transitive && valency.is_some_and(|k| k > 2) && diameter > 2;
    let consistent = if applicable {
        Some(!primitive == (bipartite || antipodal))
    } else {
        None
    };
    Ok(SmithVerdict {
        applicable,
        valency,
        diameter,
        distance_transitive,
        bipartite,
        antipodal,
        primitive,
        consistent,
    })
}

/// One entry of a corpus manifest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusEntry {
    Johnson(JohnsonConfig),
    CliqueTree(CliqueTreeConfig),
    Classic(ClassicFamily),
}

impl CorpusEntry {
    pub fn generate(&self, budget: usize) -> Result<GeneratedGraph> {
        match self {
            CorpusEntry::Johnson(cfg) => johnson_graph(cfg, budget),
            CorpusEntry::CliqueTree(cfg) => clique_tree(cfg, budget),
            CorpusEntry::Classic(fam) => classic(fam, budget),
        }
    }

    /// Display name, derivable without generating.
    pub fn name(&self) -> String {
        match self {
            CorpusEntry::Johnson(c) => format!("J({},{})", c.ground_size, c.subset_size),
            CorpusEntry::CliqueTree(c) => format!(
                "T({},{},{})",
                c.cliques_per_vertex, c.clique_size, c.depth
            ),
            CorpusEntry::Classic(f) => match f {
                ClassicFamily::Complete { n } => format!("K{n}"),
                ClassicFamily::Cycle { n } => format!("C{n}"),
                ClassicFamily::Path { n } => format!("P{n}"),
                ClassicFamily::Hypercube { dim } => format!("Q{dim}"),
                ClassicFamily::Kneser {
                    ground_size,
                    subset_size,
                } => format!("Kneser({ground_size},{subset_size})"),
                ClassicFamily::Petersen => "Petersen".to_string(),
            },
        }
    }
}

/// The checked-in default corpus manifest.
pub fn default_manifest() -> &'static str {
    include_str!("../corpus/default.txt")
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_manifest(default_manifest()).expect("pinned manifest parses")
}

/// Manifest grammar: one entry per line, `#` starts a comment, blank lines
/// skipped. See the default manifest for the line forms.
pub fn parse_manifest(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_entry(idx + 1, line)?);
    }
    Ok(out)
}

fn parse_entry(lineno: usize, line: &str) -> Result<CorpusEntry> {
    let mut tokens = line.split_whitespace();
    let family = tokens.next().expect("line is nonempty");
    let rest: Vec<&str> = tokens.collect();
    match family {
        "johnson" => {
            let kv = parse_kv(lineno, &rest, &["n", "k"])?;
            Ok(CorpusEntry::Johnson(JohnsonConfig {
                ground_size: kv["n"],
                subset_size: kv["k"],
            }))
        }
        "clique-tree" => {
            let kv = parse_kv(lineno, &rest, &["a", "b", "depth"])?;
            Ok(CorpusEntry::CliqueTree(CliqueTreeConfig {
                cliques_per_vertex: kv["a"],
                clique_size: kv["b"],
                depth: kv["depth"],
            }))
        }
        "classic" => {
            let (name, params) = rest
                .split_first()
                .ok_or_else(|| Error::parse(lineno, "classic requires a family name"))?;
            let fam = match *name {
                "complete" => ClassicFamily::Complete {
                    n: parse_kv(lineno, params, &["n"])?["n"],
                },
                "cycle" => ClassicFamily::Cycle {
                    n: parse_kv(lineno, params, &["n"])?["n"],
                },
                "path" => ClassicFamily::Path {
                    n: parse_kv(lineno, params, &["n"])?["n"],
                },
                "hypercube" => ClassicFamily::Hypercube {
                    dim: parse_kv(lineno, params, &["d"])?["d"],
                },
                "kneser" => {
                    let kv = parse_kv(lineno, params, &["n", "k"])?;
                    ClassicFamily::Kneser {
                        ground_size: kv["n"],
                        subset_size: kv["k"],
                    }
                }
                "petersen" => {
                    parse_kv(lineno, params, &[])?;
                    ClassicFamily::Petersen
                }
                other => {
                    return Err(Error::parse(
                        lineno,
                        format!("unknown classic family {other:?}"),
                    ))
                }
            };
            Ok(CorpusEntry::Classic(fam))
        }
        other => Err(Error::parse(lineno, format!("unknown family {other:?}"))),
    }
}

fn parse_kv(
    lineno: usize,
    tokens: &[&str],
    expected: &[&str],
) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected key=value, got {tok:?}")))?;
        if !expected.contains(&key) {
            return Err(Error::parse(lineno, format!("unexpected key {key:?}")));
        }
        let value = value
            .parse()
            .map_err(|_| Error::parse(lineno, format!("not an integer: {value:?}")))?;
        if out.insert(key.to_string(), value).is_some() {
            return Err(Error::parse(lineno, format!("duplicate key {key:?}")));
        }
    }
    for key in expected {
        if !out.contains_key(*key) {
            return Err(Error::parse(lineno, format!("missing key {key:?}")));
        }
    }
    Ok(out)
}

/// One successfully analyzed corpus row. Field order is the serialization
/// contract for JSON reports.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusRow {
    pub name: String,
    pub n: usize,
    pub valency: Option<usize>,
    pub diameter: usize,
    pub distance_transitive: bool,
    pub bipartite: bool,
    pub antipodal: bool,
    pub primitive: bool,
    pub applicable: bool,
    pub consistent: Option<bool>,
    pub distance_sequence: DistanceSequence,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailedRow {
    pub name: String,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RowResult {
    Row(CorpusRow),
    Failed(FailedRow),
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct CorpusReport {
    pub rows: Vec<RowResult>,
}

impl CorpusReport {
    /// No row errored and every applicable row is consistent.
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| match r {
            RowResult::Row(row) => row.consistent.unwrap_or(true),
            RowResult::Failed(_) => false,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("report serializes")
    }

    /// Aligned plain-text table, one row per corpus entry in manifest order.
    pub fn to_table(&self) -> String {
        const HEADERS: [&str; 11] = [
            "name", "n", "val", "diam", "dt", "bip", "anti", "prim", "appl", "cons", "sequence",
        ];
        let fmt_bool = |b: bool| if b { "yes" } else { "no" }.to_string();
        let fmt_opt_bool =
            |b: Option<bool>| b.map_or_else(|| "-".to_string(), fmt_bool);
        let mut grid: Vec<Vec<String>> = vec![HEADERS.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            match r {
                RowResult::Row(row) => {
                    let seq_body = row
                        .distance_sequence
                        .counts
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let seq = if row.distance_sequence.complete {
                        format!("[{seq_body}]")
                    } else {
                        format!("[{seq_body} ..]")
                    };
                    grid.push(vec![
                        row.name.clone(),
                        row.n.to_string(),
                        row.valency.map_or("-".to_string(), |v| v.to_string()),
                        row.diameter.to_string(),
                        fmt_bool(row.distance_transitive),
                        fmt_bool(row.bipartite),
                        fmt_bool(row.antipodal),
                        fmt_bool(row.primitive),
                        fmt_bool(row.applicable),
                        fmt_opt_bool(row.consistent),
                        seq,
                    ]);
                }
                RowResult::Failed(f) => {
                    let mut cells = vec![f.name.clone()];
                    cells.resize(10, "-".to_string());
                    cells.push(format!("ERROR: {}", f.error));
                    grid.push(cells);
                }
            }
        }
        render_table(&grid)
    }
}

fn render_table(grid: &[Vec<String>]) -> String {
    let cols = grid.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in grid {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Analyze every entry; per-row failures become error rows instead of
/// aborting the run.
pub fn corpus_report(entries: &[CorpusEntry], budget: usize) -> CorpusReport {
    let rows = entries
        .iter()
        .map(|entry| match corpus_row(entry, budget) {
            Ok(row) => RowResult::Row(row),
            Err(err) => RowResult::Failed(FailedRow {
                name: entry.name(),
                error: err.to_string(),
            }),
        })
        .collect();
    CorpusReport { rows }
}

fn corpus_row(entry: &CorpusEntry, budget: usize) -> Result<CorpusRow> {
    let gen = entry.generate(budget)?;
    let g = &gen.graph;
    let mut seq = g.distance_sequence(0)?;
    if let Some(radius) = gen.trusted_radius {
        seq = seq.truncated(radius);
    }
    let aut = automorphism_generators(g)?;
    let verdict = smith_check_with(g, &aut)?;
    Ok(CorpusRow {
        name: gen.name,
        n: g.vertex_count(),
        valency: verdict.valency,
        diameter: verdict.diameter,
        distance_transitive: verdict.distance_transitive,
        bipartite: verdict.bipartite,
        antipodal: verdict.antipodal,
        primitive: verdict.primitive,
        applicable: verdict.applicable,
        consistent: verdict.consistent,
        distance_sequence: seq,
    })
}

/// What `analyze_graph` should compute beyond the always-on core.
#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub include_smith: bool,
    pub include_blocks: bool,
    pub include_generators: bool,
    pub aut: AutConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitivityReport {
    pub verdict: String,
    /// Block classes: the imprimitivity witness, or the orbit partition for a
    /// graph that is not vertex-transitive. Null when primitive.
    pub witness: Option<Vec<Vec<usize>>>,
}

/// Full per-graph analysis. Field order is the JSON serialization contract.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub distance_sequence: DistanceSequence,
    pub vertex_transitive: bool,
    pub distance_transitive: bool,
    pub primitivity: PrimitivityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smith: Option<SmithVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_systems: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism_generators: Option<Vec<Vec<usize>>>,
}

pub fn analyze_graph(g: &Graph, name: &str, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    if g.vertex_count() == 0 {
        return Err(Error::input("cannot analyze the empty graph"));
    }
    let distance_sequence = g.distance_sequence(0)?;
    let aut = automorphism_generators_with(g, &opts.aut)?;
    let vertex_transitive = aut.is_transitive();
    let distance_transitive = is_distance_transitive_with(g, &aut)?;
    let primitivity = match is_primitive_graph_with(g, &aut)? {
        GraphPrimitivity::Primitive => PrimitivityReport {
            verdict: "primitive".into(),
            witness: None,
        },
        GraphPrimitivity::Imprimitive(bs) => PrimitivityReport {
            verdict: "imprimitive".into(),
            witness: Some(bs.classes().to_vec()),
        },
        GraphPrimitivity::NotVertexTransitive(bs) => PrimitivityReport {
            verdict: "not_vertex_transitive".into(),
            witness: Some(bs.classes().to_vec()),
        },
    };
    let smith = if opts.include_smith {
        Some(smith_check_with(g, &aut)?)
    } else {
        None
    };
    let block_systems = if opts.include_blocks {
        // minimal blocks only exist under a transitive action
        let systems = if vertex_transitive {
            nontrivial_block_systems(&aut)?
                .into_iter()
                .map(|bs| bs.classes().to_vec())
                .collect()
        } else {
            Vec::new()
        };
        Some(systems)
    } else {
        None
    };
    let automorphism_generators = if opts.include_generators {
        Some(
            aut.generators()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
        )
    } else {
        None
    };
    Ok(AnalysisReport {
        name: name.to_string(),
        n: g.vertex_count(),
        edges: g.edge_count(),
        distance_sequence,
        vertex_transitive,
        distance_transitive,
        primitivity,
        smith,
        block_systems,
        automorphism_generators,
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(&format!("{k:<21}{v}\n"));
        };
        kv("name:", self.name.clone());
        kv("vertices:", self.n.to_string());
        kv("edges:", self.edges.to_string());
        let seq_body = self
            .distance_sequence
            .counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let seq = if self.distance_sequence.complete {
            format!("[{seq_body}]")
        } else {
            format!("[{seq_body} ..]")
        };
        kv("distance sequence:", seq);
        let yesno = |b: bool| if b { "yes" } else { "no" }.to_string();
        kv("vertex-transitive:", yesno(self.vertex_transitive));
        kv("distance-transitive:", yesno(self.distance_transitive));
        kv("primitivity:", self.primitivity.verdict.clone());
        if let Some(witness) = &self.primitivity.witness {
            out.push_str("witness blocks:\n");
            out.push_str(&classes_text(witness));
        }
        if let Some(s) = &self.smith {
            out.push_str("smith:\n");
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
            let optb = |v: Option<bool>| v.map_or("-".to_string(), yesno);
            out.push_str(&format!("  applicable:        {}\n", yesno(s.applicable)));
            out.push_str(&format!("  valency:           {}\n", opt(s.valency)));
            out.push_str(&format!("  diameter:          {}\n", s.diameter));
            out.push_str(&format!("  bipartite:         {}\n", yesno(s.bipartite)));
            out.push_str(&format!("  antipodal:         {}\n", yesno(s.antipodal)));
            out.push_str(&format!("  primitive:         {}\n", yesno(s.primitive)));
            out.push_str(&format!("  consistent:        {}\n", optb(s.consistent)));
        }
        if let Some(systems) = &self.block_systems {
            out.push_str(&format!("block systems:       {}\n", systems.len()));
            for classes in systems {
                out.push_str(&classes_text(classes));
                out.push('\n');
            }
        }
        if let Some(gens) = &self.automorphism_generators {
            out.push_str("generators:\n");
            for images in gens {
                let imgs: Vec<String> = images.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("p: {}\n", imgs.join(" ")));
            }
        }
        out
    }
}

fn classes_text(classes: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for class in classes {
        let row: Vec<String> = class.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Layer containment: for every class B, every u in B, and every radius i,
/// if B meets the distance-i layer around u then that layer lies inside B.
pub fn block_respects_layers(g: &Graph, bs: &BlockSystem) -> Result<bool> {
    let dm = DistanceMatrix::compute(g)?;
    let n = g.vertex_count();
    for class in bs.classes() {
        let mut inside = vec![false; n];
        for &v in class {
            inside[v] = true;
        }
        for &u in class {
            // (meets, escapes) per radius
            let mut radii: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
            for (v, &in_class) in inside.iter().enumerate() {
                if v == u {
                    continue;
                }
                let d = dm.get(u, v).expect("connected");
                let entry = radii.entry(d).or_insert((false, false));
                if in_class {
                    entry.0 = true;
                } else {
                    entry.1 = true;
                }
            }
            if radii.values().any(|&(meets, escapes)| meets && escapes) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No class with 1 < |B| < n contains two adjacent vertices.
pub fn no_adjacent_pair_in_proper_blocks(g: &Graph, bs: &BlockSystem) -> bool {
    for class in bs.classes() {
        if class.len() <= 1 || class.len() >= bs.degree() {
            continue;
        }
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                if g.has_edge(u, v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Weakened distance-transitivity surrogate for truncated clique trees, which
/// are never vertex-transitive. Checks that (a) the initial-clique vertices
/// form a single orbit, and (b) for each radius within the trusted ball
/// around vertex 0, the pairs (0, v) with v at that radius and a fixed
/// creation step form a single pair orbit. Creation step is a truncation
/// artifact; in the untruncated tree the radius alone would decide the orbit.
pub fn clique_tree_layer_orbit_check(gen: &GeneratedGraph, aut: &PermGroup) -> Result<bool> {
    let steps = gen
        .creation_step
        .as_ref()
        .ok_or_else(|| Error::input("graph has no creation-step metadata"))?;
    let depth = gen
        .trusted_radius
        .ok_or_else(|| Error::input("graph has no trusted radius"))?;
    let g = &gen.graph;
    let n = g.vertex_count();

    let root_orbit = aut.orbit(0);
    if (0..n).any(|v| steps[v] == 0 && !root_orbit.contains(&v)) {
        return Ok(false);
    }

    let dist = g.bfs_distances(0)?;
    for radius in 1..=depth {
        let mut by_step: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            if dist[v] == Some(radius) {
                by_step.entry(steps[v]).or_default().push(v);
            }
        }
        for members in by_step.values() {
            let closure = aut.pair_orbit((0, members[0]));
            if !members.iter().all(|&v| closure.contains(&(0, v))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
