//! The plain-text graph format and DOT export.
//!
//! A graph file is UTF-8 text: `#` starts a comment line, an optional
//! `name <word>` line comes first, a mandatory `vertices N` header follows,
//! then optional `label <u> <text>` lines and one `u v` arc line per arc,
//! all 0-based. Serialization is normalized: no comments, single spaces,
//! labels and arcs in ascending order, trailing newline. Parsing a
//! normalized file and serializing it again reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A digraph together with the optional metadata the text format carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub name: Option<String>,
    pub labels: BTreeMap<usize, String>,
    pub graph: Digraph,
}

impl GraphFile {
    /// Wraps a bare digraph with no name and no labels.
    pub fn bare(graph: Digraph) -> Self {
        GraphFile {
            name: None,
            labels: BTreeMap::new(),
            graph,
        }
    }

    /// Parses the text format. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name: Option<String> = None;
        let mut vertices: Option<usize> = None;
        let mut labels = BTreeMap::new();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let head = tokens.next().expect("nonempty after trim");
            match head {
                "name" => {
                    if vertices.is_some() || name.is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: "name must appear once, before the vertices header".into(),
                        });
                    }
                    let value = tokens.next().ok_or_else(|| Error::Parse {
                        line,
                        reason: "name needs a value".into(),
                    })?;
                    if tokens.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: "name takes a single word".into(),
                        });
                    }
                    name = Some(value.to_string());
                }
                "vertices" => {
                    if vertices.is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: "duplicate vertices header".into(),
                        });
                    }
                    let value = tokens.next().ok_or_else(|| Error::Parse {
                        line,
                        reason: "vertices needs a count".into(),
                    })?;
                    if tokens.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: "vertices takes a single count".into(),
                        });
                    }
                    vertices = Some(value.parse().map_err(|_| Error::Parse {
                        line,
                        reason: format!("invalid vertex count {value:?}"),
                    })?);
                }
                "label" => {
                    let n = vertices.ok_or_else(|| Error::Parse {
                        line,
                        reason: "label before the vertices header".into(),
                    })?;
                    let vertex: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::Parse {
                            line,
                            reason: "label needs a vertex index".into(),
                        })?;
                    if vertex >= n {
                        return Err(Error::Parse {
                            line,
                            reason: format!("label vertex {vertex} out of range (n = {n})"),
                        });
                    }
                    let text = tokens.collect::<Vec<_>>().join(" ");
                    if text.is_empty() {
                        return Err(Error::Parse {
                            line,
                            reason: "label needs text".into(),
                        });
                    }
                    if labels.insert(vertex, text).is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: format!("duplicate label for vertex {vertex}"),
                        });
                    }
                }
                token => {
                    let n = vertices.ok_or_else(|| Error::Parse {
                        line,
                        reason: "arc before the vertices header".into(),
                    })?;
                    let u: usize = token.parse().map_err(|_| Error::Parse {
                        line,
                        reason: format!("expected an arc line, got {trimmed:?}"),
                    })?;
                    let v: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::Parse {
                            line,
                            reason: "an arc line is two vertex indices".into(),
                        })?;
                    if tokens.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            reason: "an arc line is exactly two vertex indices".into(),
                        });
                    }
                    if u >= n || v >= n {
                        return Err(Error::Parse {
                            line,
                            reason: format!("arc {u} {v} out of range (n = {n})"),
                        });
                    }
                    if arcs.contains(&(u, v)) {
                        return Err(Error::Parse {
                            line,
                            reason: format!("duplicate arc {u} {v}"),
                        });
                    }
                    arcs.push((u, v));
                }
            }
        }
        let n = vertices.ok_or_else(|| Error::Parse {
            line: text.lines().count() + 1,
            reason: "missing vertices header".into(),
        })?;
        Ok(GraphFile {
            name,
            labels,
            graph: Digraph::from_arcs(n, arcs)?,
        })
    }

    /// Emits the normalized text form.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {name}");
        }
        let _ = writeln!(out, "vertices {}", self.graph.vertex_count());
        for (v, text) in &self.labels {
            let _ = writeln!(out, "label {v} {text}");
        }
        for (u, v) in self.graph.arcs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses the text format, discarding name and labels.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    GraphFile::parse(text).map(|f| f.graph)
}

/// Serializes a bare digraph to normalized text.
pub fn serialize_graph(d: &Digraph) -> String {
    GraphFile::bare(d.clone()).serialize()
}

/// Reads and parses a graph file from disk.
pub fn read_graph_file(path: &Path) -> Result<GraphFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    GraphFile::parse(&text)
}

/// Writes normalized text to disk.
pub fn write_graph_file(path: &Path, file: &GraphFile) -> Result<()> {
    std::fs::write(path, file.serialize()).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Renders a digraph in DOT syntax. `notes[v]`, when provided, is appended
/// to vertex `v`'s label; useful for provenance annotations.
pub fn to_dot(d: &Digraph, name: Option<&str>, notes: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", name.unwrap_or("g"));
    for v in 0..d.vertex_count() {
        match notes.and_then(|ns| ns.get(v)) {
            Some(note) => {
                let _ = writeln!(out, "  {v} [label=\"{v}: {}\"];", escape_dot(note));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

fn escape_dot(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}
