//! The on-disk edge-list format.
//!
//! Line 1 is `n m` (vertex count, edge count); the next `m` lines are `u v`
//! in ASCII decimal with a single separating space, newline-terminated.
//! Writers emit `u < v` sorted lexicographically. Readers accept edges in any
//! order and either endpoint order, but reject duplicates, loops, and
//! out-of-range indices.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn read_edge_list<R: Read>(input: R) -> Result<Graph> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines().enumerate();

    let (n, m) = loop {
        match lines.next() {
            None => return Err(Error::parse(1, "missing `n m` header")),
            Some((idx, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break parse_pair(idx + 1, &line)?;
            }
        }
    };

    let mut g = Graph::empty(n);
    let mut read = 0usize;
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if read == m {
            return Err(Error::parse(
                lineno,
                format!("expected {m} edges, found more"),
            ));
        }
        let (a, b) = parse_pair(lineno, &line)?;
        let (u, v) = (a.min(b), a.max(b));
        if u == v {
            return Err(Error::parse(lineno, format!("loop at vertex {u}")));
        }
        if v >= n {
            return Err(Error::parse(
                lineno,
                format!("vertex {v} out of range for {n} vertices"),
            ));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(lineno, format!("duplicate edge ({u}, {v})")));
        }
        g.add_edge(u, v)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        read += 1;
    }
    if read != m {
        return Err(Error::parse(
            0,
            format!("header promised {m} edges, file has {read}"),
        ));
    }
    Ok(g)
}

pub fn read_edge_list_path(path: &Path) -> Result<Graph> {
    read_edge_list(File::open(path)?)
}

pub fn write_edge_list_path(g: &Graph, path: &Path) -> Result<()> {
    let mut f = File::create(path)?;
    write_edge_list(g, &mut f)?;
    Ok(())
}

/// Label sidecar: one `index label` line per vertex.
pub fn write_labels<W: Write>(labels: &[String], mut out: W) -> std::io::Result<()> {
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "{i} {label}")?;
    }
    Ok(())
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it
        .next()
        .ok_or_else(|| Error::parse(lineno, "expected two integers"))?;
    let b = it
        .next()
        .ok_or_else(|| Error::parse(lineno, "expected two integers"))?;
    if it.next().is_some() {
        return Err(Error::parse(lineno, "trailing tokens on line"));
    }
    let a = a
        .parse()
        .map_err(|_| Error::parse(lineno, format!("not an integer: {a:?}")))?;
    let b = b
        .parse()
        .map_err(|_| Error::parse(lineno, format!("not an integer: {b:?}")))?;
    Ok((a, b))
}
